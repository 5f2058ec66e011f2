#include "pzc/quadrature.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace pzc {

template <typename Real>
GaussRule<Real> gauss_legendre(int n) {
  if (n < 1) throw Error("quadrature", "InvalidRule", "Gauss-Legendre order must be positive");
  GaussRule<Real> g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < n; ++i) {
    Real x = std::cos(kPi<Real> * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    Real dp = 0;
    for (int it = 0; it < 100; ++it) {
      Real p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Real pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const Real dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 4 * std::numeric_limits<Real>::epsilon()) break;
    }
    // Recompute the derivative at the converged node for the weight.
    Real p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const Real pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    if (n == 1) p0 = 1;
    dp = n * (x * p1 - p0) / (x * x - 1);
    g.x(n - 1 - i) = x;
    g.w(n - 1 - i) = 2 / ((1 - x * x) * dp * dp);
  }
  return g;
}

template <typename Real>
Mat<Real> legendre_vandermonde(const Vec<Real>& x, int n) {
  Mat<Real> V(x.size(), n);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Real p0 = 1, p1 = x(i);
    V(i, 0) = 1;
    if (n > 1) V(i, 1) = p1;
    for (int k = 2; k < n; ++k) {
      const Real pk = ((2 * k - 1) * x(i) * p1 - (k - 1) * p0) / k;
      V(i, k) = pk;
      p0 = p1;
      p1 = pk;
    }
  }
  return V;
}

template <typename Real>
SinhPanelGrid<Real>::SinhPanelGrid(Real S, Real du, int ng, Real a)
    : S_(S), a_(a), ng_(ng) {
  if (!(S > 0) || !(du > 0) || ng < 2 || !(a > 0))
    throw Error("quadrature", "InvalidGrid", "sinh grid needs S > 0, du > 0, ng >= 2, a > 0");
  U_ = std::asinh(S / a);
  npan_ = int(std::ceil(2 * U_ / du));
  hpan_ = U_ / npan_;  // half-width of each panel in u
  const auto g = gauss_legendre<Real>(ng);
  const int n = npan_ * ng;
  u_.resize(n);
  t_.resize(n);
  w_.resize(n);
  for (int p = 0; p < npan_; ++p) {
    const Real mid = -U_ + (2 * p + 1) * hpan_;
    for (int k = 0; k < ng; ++k) {
      const int i = p * ng + k;
      u_(i) = mid + hpan_ * g.x(k);
      t_(i) = a * std::sinh(u_(i));
      w_(i) = hpan_ * g.w(k) * a * std::cosh(u_(i));
    }
  }
  const Mat<Real> V = legendre_vandermonde<Real>(g.x, ng);
  Vinv_ = V.inverse();
  Mat<Real> dV(ng, ng);
  for (int i = 0; i < ng; ++i) {
    const Real x = g.x(i);
    Real p0 = 1, p1 = x;
    dV(i, 0) = 0;
    if (ng > 1) dV(i, 1) = 1;
    for (int k = 2; k < ng; ++k) {
      const Real pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      dV(i, k) = k * (p1 - x * pk) / (1 - x * x);
      p0 = p1;
      p1 = pk;
    }
  }
  Dref_ = dV * Vinv_;
}

template <typename Real>
CVec<Real> SinhPanelGrid<Real>::derivative(const CVec<Real>& f) const {
  CVec<Real> d(f.size());
  const CMat<Real> D = Dref_.template cast<Complex<Real>>();
  for (int p = 0; p < npan_; ++p) d.segment(p * ng_, ng_) = D * f.segment(p * ng_, ng_) / hpan_;
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) /= a_ * std::cosh(u_(i));
  return d;
}

template <typename Real>
CVec<Real> SinhPanelGrid<Real>::principal_value(const CVec<Real>& f) const {
  const int n = size();
  const CVec<Real> df = derivative(f);
  CVec<Real> out(n);
  for (int i = 0; i < n; ++i) {
    Complex<Real> acc(0);
    const Real ti = t_(i);
    const Complex<Real> fi = f(i);
    for (int k = 0; k < n; ++k) {
      if (k == i) {
        acc += w_(k) * df(i);
      } else {
        acc += w_(k) * (f(k) - fi) / (t_(k) - ti);
      }
    }
    out(i) = acc + fi * std::log((S_ - ti) / (S_ + ti));
  }
  return out;
}

template <typename Real>
CMat<Real> SinhPanelGrid<Real>::panel_coefficients(const CVec<Real>& f) const {
  CMat<Real> c(npan_, ng_);
  const CMat<Real> Vi = Vinv_.template cast<Complex<Real>>();
  for (int p = 0; p < npan_; ++p) c.row(p) = (Vi * f.segment(p * ng_, ng_)).transpose();
  return c;
}

template <typename Real>
Complex<Real> SinhPanelGrid<Real>::interpolate(const CMat<Real>& coef, Real t) const {
  const Real u = std::asinh(t / a_);
  int p = int(std::floor((u + U_) / (2 * hpan_)));
  p = std::clamp(p, 0, npan_ - 1);
  const Real mid = -U_ + (2 * p + 1) * hpan_;
  const Real x = (u - mid) / hpan_;
  Complex<Real> acc = coef(p, 0);
  Real p0 = 1, p1 = x;
  if (ng_ > 1) acc += coef(p, 1) * p1;
  for (int k = 2; k < ng_; ++k) {
    const Real pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    acc += coef(p, k) * pk;
    p0 = p1;
    p1 = pk;
  }
  return acc;
}

template <typename Real>
Complex<Real> SinhPanelGrid<Real>::cauchy(const CVec<Real>& f, const CMat<Real>& coef,
                                          Complex<Real> z) const {
  const Real s = std::clamp(z.real(), -S_, S_);
  const Complex<Real> fs = interpolate(coef, s);
  Complex<Real> acc(0);
  for (int k = 0; k < size(); ++k) acc += w_(k) * (f(k) - fs) / (t_(k) - z);
  return acc + fs * (std::log(Complex<Real>(S_) - z) - std::log(Complex<Real>(-S_) - z));
}

template struct GaussRule<double>;
template GaussRule<double> gauss_legendre(int);
template GaussRule<long double> gauss_legendre(int);
template Mat<double> legendre_vandermonde(const Vec<double>&, int);
template Mat<long double> legendre_vandermonde(const Vec<long double>&, int);
template class SinhPanelGrid<double>;

}  // namespace pzc
