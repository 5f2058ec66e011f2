// Inverse transforms back to the physical line, equilibrium residuals of the
// inclusion and endpoint exponent fits.
//
// u(x) = p0(x) - p(x) is recovered from U(w) by
//   u(x) = (2 pi)^-1 int U(c + i s) x^-(c + i s) ds.
// The slowly decaying part of U (the square-root singularity of u at x = 1) is
// removed first by a least-squares fit of sum_k a_k (w+1)^(-k/2), whose
// inverse x (-ln x)^(k/2-1) / Gamma(k/2) is added back in closed form.  The
// remainder is interpolated from the panel grid onto a fine uniform grid and
// integrated with the trapezoid rule, which stays accurate for small x where
// x^(-i s) oscillates rapidly.  The crack density psi(y), y = -x > 0, is
// recovered the same way from psi_hat without a model part.
#pragma once

#include "pzc/riemann_solver.hpp"

#include <vector>

namespace pzc {

template <typename Real>
struct InversionConfig {
  int model_terms = 7;           ///< terms of the (w+1)^(-k/2) model for U
  Real fit_min = Real(200);      ///< |s| window of the model fit: [fit_min, fit_max_frac * S]
  Real fit_max_frac = Real(0.05);
  Real fine_T = Real(2000);      ///< truncation of the fine inversion grid
  Real fine_ds = Real(0.01);     ///< step of the fine inversion grid
  Real crack_length = Real(10);  ///< crack reporting length L
  int p_nodes = 281;             ///< output nodes on (0, 1)
  int f_nodes = 241;             ///< output nodes on (-L, 0)
  Real fit_lo = Real(1e-4);      ///< exponent fit window [fit_lo, fit_hi]
  Real fit_hi = Real(0.05);
  int fit_nodes = 16;
};

/// Inverse Mellin transform of samples on the line Re w = c.
template <typename Real>
class MellinInverter {
 public:
  MellinInverter() = default;
  MellinInverter(const SinhPanelGrid<Real>& grid, Real c, const CVec<Real>& samples,
                 const InversionConfig<Real>& cfg, int model_terms);

  /// Value at x = exp(log_x).
  Real at_log(Real log_x) const;
  Real operator()(Real x) const { return at_log(std::log(x)); }

  const CVec<Real>& model_coefficients() const { return coef_; }
  Real remainder_at_cutoff() const { return tail_; }

 private:
  Real c_{};
  Real T_{}, ds_{};
  CVec<Real> fine_;  ///< trapezoid-weighted remainder on the fine grid
  CVec<Real> coef_;
  Real tail_{};
  std::vector<Real> inv_gamma_;
};

/// Pointwise evaluators of u = p0 - p and of psi.
template <typename Real>
struct FieldEvaluator {
  LoadSpec<Real> loads;
  MellinInverter<Real> u, psi;

  Real p(Real x) const { return loads.p0_at(x) - u(x); }
  /// p at x = logistic(sigma), accurate for x next to 1.
  Real p_sigma(Real sigma) const;
  Real f(Real x_neg) const { return psi(-x_neg); }
};

template <typename Real>
FieldEvaluator<Real> make_field_evaluator(const RiemannSolution<Real>& rs,
                                          const LoadSpec<Real>& loads,
                                          const InversionConfig<Real>& cfg = {});

/// Log-log regression of |v| against |x|.
struct ExponentFit {
  double slope{}, stderr_{}, intercept{};
  int n{};
};

/// Error: FitDegenerate when some |v| is zero or non-finite.
ExponentFit fit_power_law(const std::vector<double>& x, const std::vector<double>& v);

template <typename Real>
struct FieldSolution {
  std::vector<Real> x_nodes, p_vals, p0_vals;  ///< inclusion line (0, 1)
  std::vector<Real> crack_nodes, f_vals;       ///< crack (-L, 0), crack_nodes negative
  Real eq_residual_0{}, eq_residual_1{};       ///< int (p - p0), int x (p - p0)
  bool exponents_available{};
  ExponentFit exp_at_0, exp_at_1, exp_crack;
  CVec<Real> model_coefficients;
};

/// r0 = int_0^1 (p - p0) dx, r1 = int_0^1 x (p - p0) dx by the logistic
/// substitution x = 1/(1 + e^-sigma), sigma in [-20, 30], step 0.1.
template <typename Real>
std::pair<Real, Real> equilibrium_residuals(const FieldEvaluator<Real>& fe);

/// Exponents of |p0 - p| at 0+ and 1- and of |f| at the crack tip, fitted on
/// cfg.fit_nodes log-spaced points of [fit_lo, fit_hi].
template <typename Real>
void fit_asymptotics(const FieldEvaluator<Real>& fe, const InversionConfig<Real>& cfg,
                     FieldSolution<Real>& out);

/// Sample p and f on the output grids, compute residuals and (for nonzero
/// loads) exponents.
template <typename Real>
FieldSolution<Real> recover_fields(const FieldEvaluator<Real>& fe,
                                   const InversionConfig<Real>& cfg = {});

}  // namespace pzc
