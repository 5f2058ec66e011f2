#include "fixtures.hpp"

#include <doctest.h>

using namespace pzc;

namespace {

OracleSolution<double> oracle(const KernelTable<double>& k, const LoadSpec<double>& loads,
                              double h, double f_hi = 40) {
  OracleConfig<double> cfg;
  cfg.h = h;
  cfg.f_hi = f_hi;
  Rigidity<double> rig;
  rig.h0 = loads.h0;
  return solve_collocation(assemble_collocation(k, loads, rig, cfg), loads);
}

const OracleSolution<double>& reference_oracle() {
  static const auto os = oracle(fixture::reference().k, fixture::reference().loads, 0.25);
  return os;
}

}  // namespace

TEST_SUITE("collocation_oracle") {

TEST_CASE("sinc Cauchy matrix reproduces principal values") {
  SUBCASE("unit interval, f = 1") {
    const auto m = make_sinc_map<double>(SincKind::Unit, -40, 40, 0.2);
    const Vec<double> rho = m.Tp;
    const Vec<double> pv = m.cauchy_matrix() * rho;
    for (int j = 0; j < m.size(); j += 37) {
      if (m.t(j) < 1e-6 || m.tc(j) < 1e-6) continue;
      CHECK(pv(j) == doctest::Approx(std::log(m.tc(j) / m.t(j))).epsilon(1e-6).scale(1.0));
    }
  }
  SUBCASE("half line, f = 1/(1+t)^2") {
    const auto m = make_sinc_map<double>(SincKind::Exp, -40, 40, 0.2);
    const Vec<double> rho = m.Tp.array() / (1 + m.t.array()).square();
    const Vec<double> pv = m.cauchy_matrix() * rho;
    for (int j = 0; j < m.size(); j += 37) {
      const double y = m.t(j);
      if (y < 1e-6 || y > 1e6) continue;
      const double ref = -std::log(y) / ((1 + y) * (1 + y)) - 1 / (1 + y);
      CHECK(pv(j) == doctest::Approx(ref).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("closed-form and quadrature rigidity agree") {
  Rigidity<double> a, b;
  a.h0 = b.h0 = 3.0;
  b.D = [](double x) { return 3.0 * x * x * x; };
  for (double x : {0.05, 0.3, 0.8})
    for (double s : {0.1, 0.5, 0.95}) CHECK(b.W(x, 1 - x, s, 1 - s) ==
                                            doctest::Approx(a.W(x, 1 - x, s, 1 - s)).epsilon(1e-10));
  const std::vector<double> p0{1.0, -0.5};
  CHECK(b.load_integral(p0, 0.4) == doctest::Approx(a.load_integral(p0, 0.4)).epsilon(1e-10));
}

TEST_CASE("rigid decoupled inclusion gives the inverse square-root density") {
  // Only the Cauchy operator: lambda1 PV int p/(t-x) = C with int p = 1 has
  // p = 1/(pi sqrt(x (1-x))).
  LoadSpec<double> loads;
  loads.h0 = 1e17;
  const auto os = oracle(fixture::reference().k.cauchy_only(), loads, 0.25);
  double worst = 0;
  for (int j = 0; j < os.P.size(); ++j) {
    const double x = os.P.t(j), xc = os.P.tc(j);
    if (x < 0.01 || xc < 0.01) continue;
    const double ref = 1 / (kPi<double> * std::sqrt(x * xc));
    worst = std::max(worst, std::abs(os.p(j) - ref) / ref);
  }
  CHECK(worst < 1e-4);
  CHECK(os.psi.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("zero loads give the zero solution") {
  LoadSpec<double> loads;
  loads.p0 = {};
  const auto os = oracle(fixture::reference().k, loads, 0.5);
  CHECK(os.p.cwiseAbs().maxCoeff() == 0.0);
  CHECK(os.psi.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reference oracle: conditioning, equilibrium and agreement") {
  const auto& ref = fixture::reference();
  const auto& os = reference_oracle();
  CHECK(os.residual < 1e-8);
  CHECK(os.condition < 1e6);
  CHECK(std::abs(os.eq_residual_0) < 1e-8);
  CHECK(std::abs(os.eq_residual_1) < 1e-8);
  const auto cmp = compare_with_fields(os, ref.fe, 10.0);
  CHECK(cmp.p_l2 < 0.02);
  CHECK(cmp.f_l2 < 0.02);
  CHECK(cmp.p_points > 20);
  CHECK(cmp.f_points > 20);
}

TEST_CASE("self-convergence under step halving") {
  const auto& ref = fixture::reference();
  const auto fine = oracle(ref.k, ref.loads, 0.125);
  const auto cmp = compare_oracles(reference_oracle(), fine, 10.0);
  CHECK(cmp.p_l2 < 0.005);
  CHECK(cmp.f_l2 < 0.005);
  const auto same = compare_oracles(reference_oracle(), reference_oracle(), 10.0);
  CHECK(same.p_l2 == 0.0);
  CHECK(same.f_l2 == 0.0);
}

TEST_CASE("truncation of the crack is immaterial") {
  const auto& ref = fixture::reference();
  const auto shorter = oracle(ref.k, ref.loads, 0.25, 20);
  const auto cmp = compare_oracles(shorter, reference_oracle(), 10.0);
  CHECK(cmp.p_l2 < 1e-4);
  CHECK(cmp.f_l2 < 1e-4);
}

TEST_CASE("a corrupted kernel is detected by the comparison") {
  const auto& ref = fixture::reference();
  auto bad = ref.k;
  bad.lambda[1] *= 3;
  bad.alpha *= -1;
  const auto os = oracle(bad, ref.loads, 0.25);
  const auto cmp = compare_with_fields(os, ref.fe, 10.0);
  CHECK(std::max(cmp.p_l2, cmp.f_l2) > 0.1);
}

TEST_CASE("transform fields satisfy the governing system") {
  const auto& ref = fixture::reference();
  Rigidity<double> rig;
  rig.h0 = ref.loads.h0;
  const auto sr = system_residual<double>(
      ref.k, ref.loads, rig, [&](double s) { return ref.fe.p_sigma(s); },
      [&](double y) { return ref.fe.psi(y); });
  CHECK(sr.inclusion < 0.01);
  CHECK(sr.crack < 0.01);
  CHECK(sr.points == 20);
  CHECK(sr.C == doctest::Approx(reference_oracle().C).epsilon(1e-3));
}

}  // TEST_SUITE
