#include "pzc/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace pzc;
using Cd = std::complex<double>;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  const auto g = gauss_legendre<double>(8);
  double s = 0, w = 0;
  for (int i = 0; i < 8; ++i) {
    s += g.w(i) * std::pow(g.x(i), 14);
    w += g.w(i);
  }
  CHECK(s == doctest::Approx(2.0 / 15.0).epsilon(1e-14));
  CHECK(w == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(gauss_legendre<double>(0), Error);
}

TEST_CASE("sinh panel grid integrates, differentiates and interpolates") {
  const SinhPanelGrid<double> g(1e4);
  CVec<double> f(g.size()), df(g.size());
  double integral = 0;
  for (int i = 0; i < g.size(); ++i) {
    const double t = g.t()(i);
    f(i) = 1.0 / (1.0 + t * t);
    df(i) = -2.0 * t / ((1.0 + t * t) * (1.0 + t * t));
    integral += g.w()(i) * f(i).real();
  }
  CHECK(integral == doctest::Approx(2 * std::atan(1e4)).epsilon(1e-12));
  CHECK((g.derivative(f) - df).cwiseAbs().maxCoeff() < 1e-9);
  const auto coef = g.panel_coefficients(f);
  for (double t : {-37.3, -0.013, 0.0, 0.77, 1234.5})
    CHECK(std::abs(g.interpolate(coef, t) - 1.0 / (1.0 + t * t)) < 1e-10);
}

TEST_CASE("principal values and off-axis Cauchy integrals of 1/(1+t^2)") {
  const SinhPanelGrid<double> g(1e5);
  CVec<double> f(g.size());
  for (int i = 0; i < g.size(); ++i) f(i) = 1.0 / (1.0 + g.t()(i) * g.t()(i));
  const auto pv = g.principal_value(f);
  double worst = 0;
  for (int i = 0; i < g.size(); ++i) {
    const double x = g.t()(i);
    if (std::abs(x) > 100) continue;
    worst = std::max(worst, std::abs(pv(i) - Cd(-kPi<double> * x / (1 + x * x))));
  }
  CHECK(worst < 1e-8);
  const auto coef = g.panel_coefficients(f);
  const Cd I(0, 1);
  for (Cd z : {Cd(0.3, 0.5), Cd(-2.0, 1e-9), Cd(7.0, 3.0)}) {
    CHECK(std::abs(g.cauchy(f, coef, z) - (-kPi<double> / (z + I))) < 1e-8);
    const Cd zc = std::conj(z);
    CHECK(std::abs(g.cauchy(f, coef, zc) - kPi<double> / (I - zc)) < 1e-8);
  }
}

}  // TEST_SUITE
