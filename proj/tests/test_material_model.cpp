#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>

using namespace pzc;

TEST_SUITE("material_model") {

TEST_CASE("decoupled input has no piezoelectric operator terms") {
  auto m = material_preset("PZT4");
  m.d13 = m.d15 = m.d33 = 0;
  const auto c = derive_coefficients(m);
  CHECK(c.a21 == 0.0);
  CHECK(c.a23 == 0.0);
  const auto b = modal_basis(m);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(b.lambda(k)) == 0.0);
}

TEST_CASE("s12 = s13 = 0 reduces the elastic coefficients") {
  auto m = material_preset("PZT4");
  m.s12 = m.s13 = 0;
  const auto c = derive_coefficients(m);
  CHECK(c.a10 == doctest::Approx(m.s33).epsilon(1e-15));
  CHECK(c.a14 == doctest::Approx(m.s11).epsilon(1e-15));
  CHECK(c.a12 == doctest::Approx(m.s44).epsilon(1e-15));
}

TEST_CASE("coefficients agree with an independent long double evaluation") {
  for (const auto& name : material_preset_names()) {
    const auto m = material_preset(name);
    const auto c = derive_coefficients(m);
    using L = long double;
    const L s11 = m.s11, s12 = m.s12, s13 = m.s13, s33 = m.s33, s44 = m.s44;
    const L d13 = m.d13, d15 = m.d15, d33 = m.d33, e11 = m.eps11, e33 = m.eps33;
    const L a10 = s33 - s13 * s13 / s11, a12 = s44 + 2 * s13 * (1 - s12 / s11);
    const L a14 = s11 - s12 * s12 / s11, a21 = s13 * d13 / s11 - d33 + d15;
    const L a23 = d13 * (s12 / s11 - 1), a20 = e11, a22 = e33 - d13 * d13 / s11;
    auto rel = [](double x, L y) { return double(std::abs((L(x) - y) / y)); };
    CHECK(rel(c.a10, a10) < 1e-13);
    CHECK(rel(c.a12, a12) < 1e-13);
    CHECK(rel(c.a14, a14) < 1e-13);
    CHECK(rel(c.a21, a21) < 1e-12);
    CHECK(rel(c.a23, a23) < 1e-13);
    CHECK(rel(c.a20, a20) < 1e-15);
    CHECK(rel(c.a22, a22) < 1e-13);
    CHECK(rel(c.c0, a14 * a22 - a23 * a23) < 1e-12);
    CHECK(rel(c.c1, a12 * a22 + a14 * a20 - 2 * a21 * a23) < 1e-12);
    CHECK(rel(c.c2, a10 * a22 + a12 * a20 - a21 * a21) < 1e-12);
    CHECK(c.c3 == c.a10 * c.a20);
  }
}

TEST_CASE("factored sextic gives beta = 1, 2, 3") {
  OperatorCoefficients<double> c;
  c.a21 = c.a23 = 0;
  c.a14 = 1;
  c.a12 = 5;
  c.a10 = 4;
  c.a22 = 1;
  c.a20 = 9;
  c.c0 = c.a14 * c.a22;
  c.c1 = c.a12 * c.a22 + c.a14 * c.a20;
  c.c2 = c.a10 * c.a22 + c.a12 * c.a20;
  c.c3 = c.a10 * c.a20;
  const auto r = solve_characteristic(c);
  CHECK(r.beta(0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(r.beta(1) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(r.beta(2) == doctest::Approx(3.0).epsilon(1e-13));

  auto scaled = c;
  for (double* v : {&scaled.c0, &scaled.c1, &scaled.c2, &scaled.c3}) *v *= 7.5e-3;
  const auto r2 = solve_characteristic(scaled);
  CHECK((r2.beta - r.beta).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("complex and repeated roots are rejected") {
  OperatorCoefficients<double> c;
  // (mu^2 - 1)(mu^2 + 4)(mu^2 + 9): one mu^2 positive.
  c.c0 = 1, c.c1 = 12, c.c2 = 23, c.c3 = -36;
  CHECK_THROWS_WITH_AS(solve_characteristic(c), doctest::Contains("ComplexRoots"), Error);
  // (mu^2 + 1)^2 (mu^2 + 4): repeated beta = 1.
  c.c0 = 1, c.c1 = 6, c.c2 = 9, c.c3 = 4;
  CHECK_THROWS_WITH_AS(solve_characteristic(c), doctest::Contains("RepeatedRoots"), Error);
}

TEST_CASE("invalid constants are rejected naming the inequality") {
  auto m = material_preset("PZT4");
  m.s44 = -1;
  CHECK_THROWS_WITH_AS(derive_coefficients(m), doctest::Contains("s44 > 0"), Error);
  m = material_preset("PZT4");
  m.eps11 = 0;
  CHECK_THROWS_WITH_AS(derive_coefficients(m), doctest::Contains("eps11 > 0"), Error);
}

TEST_CASE("root finders agree and roots satisfy the sextic") {
  for (const auto& name : {"PZT4", "PZT7A"}) {
    const auto m = scale_piezo(material_preset(name), 0.25);
    const auto c = derive_coefficients(m);
    const auto r = solve_characteristic(c);
    CHECK(r.max_residual < 1e-10);
    CHECK(((r.beta - r.beta_companion).cwiseAbs().maxCoeff() / r.beta.maxCoeff()) < 1e-12);
    CHECK(r.beta(0) < r.beta(1));
    CHECK(r.beta(1) < r.beta(2));
  }
}

TEST_CASE("modal vectors reproduce their definitions") {
  const auto m = fixture::reference().m1;
  const auto c = derive_coefficients(m);
  const auto b = modal_basis(m);
  for (int k = 0; k < 3; ++k) {
    const std::complex<double> mu(0, b.beta(k));
    const auto g = c.a20 + c.a22 * mu * mu;
    const auto l = c.a21 * mu + c.a23 * mu * mu * mu;
    CHECK(std::abs(b.gamma(k) - g) <= 1e-13 * std::abs(g));
    CHECK(std::abs(b.lambda(k) - l) <= 1e-13 * std::abs(l));
    const auto p = c.a14 * g * mu * mu + 0.5 * (c.a12 - m.s44) * g - c.a23 * l * mu;
    const auto q = 0.5 * (c.a12 - m.s44) * g * mu + c.a10 * g / mu - (c.a21 - m.d15) * l;
    const auto r = c.a20 * l / mu - m.d15 * g;
    CHECK(std::abs(b.p(k) - p) <= 1e-12 * std::abs(p));
    CHECK(std::abs(b.q(k) - q) <= 1e-12 * std::abs(q));
    CHECK(std::abs(b.r(k) - r) <= 1e-12 * std::abs(r));
    if (b.beta(k) * b.beta(k) > c.a20 / c.a22) CHECK(b.gamma(k).real() < 0);
  }
}

TEST_CASE("uniform scaling of all constants leaves beta unchanged") {
  const auto m = fixture::reference().m2;
  auto s = m;
  for (double* v : {&s.s11, &s.s12, &s.s13, &s.s33, &s.s44, &s.d13, &s.d15, &s.d33, &s.eps11,
                    &s.eps33})
    *v *= 3.7;
  const auto b = modal_basis(m), bs = modal_basis(s);
  CHECK((b.beta - bs.beta).cwiseAbs().maxCoeff() < 1e-12);
}

}  // TEST_SUITE
