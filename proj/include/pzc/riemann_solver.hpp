// Scalar Riemann problem on the line w = c + i t:
//
//   Y(t) = G_Phi(t) F(t) + H(t),
//
// with F analytic to the right of the line (transform of a function supported
// on (0, 1)) and Y analytic to the left.  In the variable t the right side of
// the line is the lower half-plane, so F is the "minus" and Y the "plus"
// function.  With G_Phi = pi lambda1 N+ N- G0, G0 -> 1 and index 0:
//
//   X(z)   = exp( (2 pi i)^-1 int ln G0(t) / (t - z) dt ),      X+ = G0 X-,
//   h      = H / (pi lambda1 N+ X+),
//   Phi(z) = (2 pi i)^-1 int h(t) / (t - z) dt,                  Phi+ - Phi- = h,
//   F      = X- Phi- / N-,       Y = pi lambda1 N+ X+ Phi+.
//
// The pressure transform is U = (w-1)(w-2) F and the crack transform
// psi_hat = (Q - G3 U) / G4.
#pragma once

#include "pzc/symbol_transform.hpp"

#include <functional>

namespace pzc {

template <typename Real>
struct RiemannSolution {
  SymbolGrid<Real> data;
  CVec<Real> L;                ///< ln G0 (principal branch, checked continuous)
  CMat<Real> L_coef;           ///< panel interpolant of L
  CVec<Real> Xplus, Xminus;    ///< boundary values of X
  CVec<Real> h;                ///< density of the second Cauchy integral
  CMat<Real> h_coef;
  CVec<Real> Phiplus, Phiminus;
  CVec<Real> F, Y, U, psihat;
  Real boundary_residual{};    ///< max|Y - G_Phi F - H| / max|H| (0 for zero loads)
  Real tail_ratio{};           ///< |h| at the grid ends relative to max|h|

  /// X(z) in the t-plane (Im z != 0).
  Complex<Real> X(Complex<Real> z) const;
  /// Phi(z) in the t-plane (Im z != 0).
  Complex<Real> Phi(Complex<Real> z) const;
  /// F(z) for Im z < 0 (right of the line in w) and Y(z) for Im z > 0.
  Complex<Real> F_at(Complex<Real> z) const;
  Complex<Real> Y_at(Complex<Real> z) const;
};

/// ln G0, X+, X- on the grid.  Errors: BranchJump (ln G0 not continuous along
/// the line, i.e. the index-0 assumption is violated).
template <typename Real>
void factorize(const SymbolGrid<Real>& data, RiemannSolution<Real>& out);

/// Full solution.  Errors: BranchJump, QuadratureFailure (density not decayed
/// at the truncation: tail_ratio above `tail_tol`).
template <typename Real>
RiemannSolution<Real> solve_riemann(SymbolGrid<Real> data, Real tail_tol = Real(1e-6));

/// Plemelj jump check: max over `n` points t_k in [-T, T] of
/// |X+ - G0 X-| / |X-| with X+- evaluated off the axis at t_k +- i eta and G0
/// evaluated directly from the symbols.
template <typename Real>
Real plemelj_check(const RiemannSolution<Real>& rs, const KernelTable<Real>& k, int n = 50,
                   Real T = Real(40), Real eta = Real(1e-9));

/// Argument-principle winding of f along the counter-clockwise boundary of
/// [re_lo, re_hi] x [-R, R] (zeros minus poles inside).  Steps are refined
/// until every argument increment is below 0.2 rad.  Error ContourThroughZero
/// if min|f| / max|f| on the contour drops below `zero_tol`, after one retry
/// on a rectangle moved inward by 1% of its width and 10% taller.
struct WindingReport {
  int winding{};
  double min_abs{};
  int evaluations{};
  double R{};
};

WindingReport rectangle_winding(const std::function<std::complex<double>(std::complex<double>)>& f,
                                double re_lo, double re_hi, double R, double zero_tol = 1e-14);

/// Winding of G_Phi over the strip re_lo < Re w < re_hi, |Im w| < R.
template <typename Real>
WindingReport strip_winding(const KernelTable<Real>& k, Real h0, Real re_lo = Real(0.55),
                            Real re_hi = Real(1.95), Real R = Real(200));

}  // namespace pzc
