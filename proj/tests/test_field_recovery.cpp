#include "fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace pzc;
using Cd = std::complex<double>;

namespace {

MellinInverter<double> invert(const std::function<Cd(Cd)>& U, int model_terms) {
  const SinhPanelGrid<double> grid(1e6);
  CVec<double> samples(grid.size());
  for (int i = 0; i < grid.size(); ++i) samples(i) = U(Cd(0.75, grid.t()(i)));
  return MellinInverter<double>(grid, 0.75, samples, InversionConfig<double>{}, model_terms);
}

}  // namespace

TEST_SUITE("field_recovery") {

TEST_CASE("power-law fit recovers a known exponent") {
  std::vector<double> x, v;
  for (int i = 0; i < 16; ++i) {
    x.push_back(1e-4 * std::pow(500.0, i / 15.0));
    v.push_back(2.5 * std::pow(x.back(), -0.3));
  }
  const auto f = fit_power_law(x, v);
  CHECK(f.slope == doctest::Approx(-0.3).epsilon(1e-10));
  CHECK(f.stderr_ < 1e-10);
  CHECK(f.n == 16);
  std::vector<double> bounded(16, 1.0);
  CHECK(fit_power_law(x, bounded).slope == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  v[3] = 0;
  CHECK_THROWS_WITH_AS(fit_power_law(x, v), doctest::Contains("FitDegenerate"), Error);
}

TEST_CASE("inverse transform of known pairs") {
  // x^2 on (0, 1) <-> 1/(w + 2); 1 on (0, 1) <-> 1/w.
  const auto a = invert([](Cd w) { return 1.0 / (w + 2.0); }, 7);
  const auto b = invert([](Cd w) { return 1.0 / w; }, 7);
  for (double x : {1e-4, 0.01, 0.3, 0.9}) {
    CHECK(a(x) == doctest::Approx(x * x).epsilon(1e-6).scale(1.0));
    CHECK(b(x) == doctest::Approx(1.0).epsilon(1e-6));
  }
  // Square-root singularity at x = 1: x (-ln x)^(-1/2) / Gamma(1/2) <-> (w + 1)^(-1/2).
  const auto c = invert([](Cd w) { return 1.0 / std::sqrt(w + 1.0); }, 7);
  for (double x : {0.2, 0.9, 0.999}) {
    const double ref = x / std::sqrt(-std::log(x)) / std::sqrt(kPi<double>);
    CHECK(c(x) == doctest::Approx(ref).epsilon(1e-6));
  }
  // Beyond the support the inverse vanishes.
  CHECK(std::abs(a(1.5)) < 1e-6);
}

TEST_CASE("zero loads give identically zero fields") {
  LoadSpec<double> loads;
  loads.p0 = {};
  const auto rs = solve_riemann(build_riemann_data(fixture::reference().k, loads));
  const auto fs = recover_fields(make_field_evaluator(rs, loads));
  double mx = 0;
  for (double v : fs.p_vals) mx = std::max(mx, std::abs(v));
  for (double v : fs.f_vals) mx = std::max(mx, std::abs(v));
  CHECK(mx == 0.0);
  CHECK(fs.eq_residual_0 == 0.0);
  CHECK(fs.eq_residual_1 == 0.0);
  CHECK(!fs.exponents_available);
}

TEST_CASE("reference run: equilibrium, grids and fits") {
  const auto& ref = fixture::reference();
  const auto fs = recover_fields(ref.fe);
  CHECK(std::abs(fs.eq_residual_0) < 1e-3 * ref.loads.p0_l1());
  CHECK(std::abs(fs.eq_residual_1) < 1e-3 * ref.loads.p0_l1());
  CHECK(fs.x_nodes.size() == 281);
  CHECK(fs.crack_nodes.size() == 241);
  CHECK(fs.crack_nodes.front() < fs.crack_nodes.back());
  CHECK(fs.crack_nodes.back() < 0);
  CHECK(fs.exponents_available);
  CHECK(fs.exp_at_0.stderr_ < 0.05);
  CHECK(fs.exp_crack.stderr_ < 0.05);
  // p_sigma agrees with p away from x = 1 and resolves x next to 1.
  CHECK(ref.fe.p_sigma(0.0) == doctest::Approx(ref.fe.p(0.5)).epsilon(1e-12));
  CHECK(std::isfinite(ref.fe.p_sigma(25.0)));
}

TEST_CASE("equilibrium residual is linear in p") {
  // r0 = int (p - p0) = -int u; scaling the load scales the residuals.
  const auto& ref = fixture::reference();
  LoadSpec<double> loads = ref.loads;
  loads.p0 = {2.0};
  const auto rs = solve_riemann(build_riemann_data(ref.k, loads));
  const auto r2 = equilibrium_residuals(make_field_evaluator(rs, loads));
  const auto r1 = equilibrium_residuals(ref.fe);
  CHECK(r2.first == doctest::Approx(2 * r1.first).epsilon(1e-6));
  CHECK(r2.second == doctest::Approx(2 * r1.second).epsilon(1e-6));
}

}  // TEST_SUITE
