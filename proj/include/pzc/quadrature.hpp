// Quadrature building blocks: Gauss-Legendre rules, the sinh-graded panel
// grid on [-S, S] used for all transform-domain integrals, principal-value
// Cauchy integrals on that grid, and per-panel Legendre interpolation.
#pragma once

#include "pzc/common.hpp"

namespace pzc {

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
template <typename Real>
struct GaussRule {
  Vec<Real> x, w;
};

template <typename Real>
GaussRule<Real> gauss_legendre(int n);

/// Legendre polynomials P_0..P_{n-1} at the points x (rows = points).
template <typename Real>
Mat<Real> legendre_vandermonde(const Vec<Real>& x, int n);

/// Composite Gauss-Legendre grid on [-S, S] after the substitution
/// t = a sinh(u): equal panels of width 2 hpan in u, `ng` nodes per panel.
/// Nodes cluster near t = 0 and spread geometrically towards +-S.
template <typename Real>
class SinhPanelGrid {
 public:
  SinhPanelGrid() = default;
  SinhPanelGrid(Real S, Real du = Real(0.2), int ng = 16, Real a = Real(1));

  Real S() const { return S_; }
  int size() const { return int(t_.size()); }
  int panels() const { return npan_; }
  int nodes_per_panel() const { return ng_; }
  const Vec<Real>& t() const { return t_; }  ///< nodes
  const Vec<Real>& w() const { return w_; }  ///< weights in t

  /// Derivative of a smooth function sampled at the nodes (panelwise spectral).
  CVec<Real> derivative(const CVec<Real>& f) const;

  /// PV int_{-S}^{S} f(t) / (t - t_i) dt at every node t_i, by singularity
  /// subtraction; the diagonal uses the panel derivative.
  CVec<Real> principal_value(const CVec<Real>& f) const;

  /// int_{-S}^{S} f(t) / (t - z) dt for z off the real axis.  The value f(Re z),
  /// taken from the panel interpolant `coef` of f, is subtracted so the result
  /// stays accurate as Im z -> 0.  Accuracy degrades (to ~1e-4) when Im z is
  /// comparable to a small fraction of the local node spacing; use Im z of
  /// order one spacing or more, or below ~1e-6 of it for boundary limits.
  Complex<Real> cauchy(const CVec<Real>& f, const CMat<Real>& coef, Complex<Real> z) const;

  /// Per-panel Legendre coefficients of sampled data (npan x ng, row = panel).
  CMat<Real> panel_coefficients(const CVec<Real>& f) const;

  /// Evaluate the panel interpolant at t in [-S, S].
  Complex<Real> interpolate(const CMat<Real>& coef, Real t) const;

 private:
  Real S_{}, a_{}, U_{}, hpan_{};
  int ng_{}, npan_{};
  Vec<Real> u_, t_, w_;
  Mat<Real> Dref_, Vinv_;
};

}  // namespace pzc
