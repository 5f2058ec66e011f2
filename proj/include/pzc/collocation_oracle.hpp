// Independent direct solver for the coupled singular integral system.
//
// Both unknown densities are discretised with sinc (Nystrom) quadrature after
// a conformal change of variable that pushes the endpoints to infinity:
//   inclusion  x = 1 / (1 + e^-sigma)   on (0, 1),
//   crack      y = e^sigma              on (0, inf),
// so that endpoint singularities of any exponent are integrated with
// exponential accuracy and no endpoint weights need to be guessed.  The
// unknowns are rho = density * dx/dsigma at the nodes plus the integration
// constant C of the inclusion equation.  Cauchy principal values use the
// sinc-Hilbert weights ((-1)^m - 1)/m plus a smooth correction of the map.
//
// Inclusion rows (integrated form, 0 < x < 1):
//   int K1(t,x) p dt + int R2(y,x) psi dy - int W(x,t) p dt - C = -int W(x,t) p0 dt
// with the beam kernel W(x, s) = int_{max(x,s)}^1 (tau - s) / D(tau) dtau;
// crack rows (y > 0):
//   -int K2(t,y) psi dt + int R3(t,y) p dt = q0(y);
// and the two equilibrium conditions int p = int p0, int x p = int x p0.
#pragma once

#include "pzc/field_recovery.hpp"

#include <functional>

namespace pzc {

enum class SincKind { Unit, Exp };

/// Sinc nodes sigma_k = k h on [smin, smax] and the map values.
template <typename Real>
struct SincMap {
  SincKind kind{};
  Real h{};
  Vec<Real> sigma, t, tc, Tp, Tpp;  ///< tc = 1 - t (Unit map only)

  /// A(j, k) with PV int f(t)/(t - t_j) dt ~ sum_k A(j, k) rho_k.
  Mat<Real> cauchy_matrix() const;
  int size() const { return int(t.size()); }
};

template <typename Real>
SincMap<Real> make_sinc_map(SincKind kind, Real smin, Real smax, Real h);

/// Rigidity D(x) of the inclusion.  An empty `D` selects the closed-form case
/// D(x) = h0 x^3; otherwise D is integrated numerically.
template <typename Real>
struct Rigidity {
  Real h0 = Real(1e10);
  std::function<Real(Real)> D;

  /// int_a^1 tau^m / D(tau) dtau for m = 0, 1; ac = 1 - a supplied separately
  /// for accuracy next to 1.
  Real moment(int m, Real a, Real ac) const;
  /// int_0^1 p0(s) W(x, s) ds for a polynomial p0.
  Real load_integral(const std::vector<Real>& p0, Real x) const;
  /// W(x, s) with complements xc = 1 - x, sc = 1 - s.
  Real W(Real x, Real xc, Real s, Real sc) const;
};

template <typename Real>
struct OracleConfig {
  Real h = Real(0.25);
  Real p_lo = Real(-45), p_hi = Real(40);  ///< sigma range on the inclusion
  Real f_lo = Real(-45), f_hi = Real(40);  ///< sigma range on the crack
  Real cond_fail = Real(1e12);
};

template <typename Real>
struct CollocationProblem {
  SincMap<Real> P, F;
  Mat<Real> A;             ///< scaled system matrix
  Vec<Real> r;             ///< scaled right-hand side
  Vec<Real> col_scale;     ///< unknown = scaled unknown / col_scale
  int Np{}, Nf{};
  Real lambda1{}, lambda3{};
};

template <typename Real>
struct OracleSolution {
  SincMap<Real> P, F;
  Vec<Real> p, psi;        ///< densities at the nodes
  Real C{};
  Real residual{};         ///< ||A x - r|| / ||r|| of the scaled system
  Real condition{};        ///< |R_00| / |R_nn| of the pivoted QR factor
  Real eq_residual_0{}, eq_residual_1{};
};

/// Assemble the sinc-Nystrom system.
template <typename Real>
CollocationProblem<Real> assemble_collocation(const KernelTable<Real>& k,
                                              const LoadSpec<Real>& loads,
                                              const Rigidity<Real>& rig,
                                              const OracleConfig<Real>& cfg = {});

/// Error: IllConditioned when the condition estimate exceeds cfg.cond_fail.
template <typename Real>
OracleSolution<Real> solve_collocation(const CollocationProblem<Real>& cp,
                                       const LoadSpec<Real>& loads,
                                       Real cond_fail = Real(1e12));

/// Relative L2 and max differences on interior windows.
template <typename Real>
struct OracleComparison {
  Real p_l2{}, p_max{}, f_l2{}, f_max{};
  int p_points{}, f_points{};
};

/// Compare the oracle with the transform solution on x in [margin, 1 - margin]
/// and y in [margin, (1 - margin) L].
template <typename Real>
OracleComparison<Real> compare_with_fields(const OracleSolution<Real>& os,
                                           const FieldEvaluator<Real>& fe, Real L,
                                           Real margin = Real(0.02));

/// Compare two oracle solutions whose nodes share sigma = k h (the coarse
/// spacing must be an integer multiple of the fine one).
template <typename Real>
OracleComparison<Real> compare_oracles(const OracleSolution<Real>& coarse,
                                       const OracleSolution<Real>& fine, Real L,
                                       Real margin = Real(0.02));

/// Residual of the governing system for given fields: the fields are sampled
/// on sinc grids, the discrete operators are applied, and the residual is
/// evaluated at `n_each` inclusion nodes in [0.05, 0.95] and `n_each`
/// log-spaced crack nodes in [0.05, 5].  The unknown constant C is fitted by least squares.
/// Each residual is divided by the largest individual term of its equation.
template <typename Real>
struct SystemResidual {
  Real inclusion{}, crack{};
  Real C{};
  int points{};
};

template <typename Real>
SystemResidual<Real> system_residual(const KernelTable<Real>& k, const LoadSpec<Real>& loads,
                                     const Rigidity<Real>& rig,
                                     const std::function<Real(Real)>& p_of_sigma,
                                     const std::function<Real(Real)>& psi_of_y,
                                     int n_each = 10, Real h = Real(0.2));

}  // namespace pzc
