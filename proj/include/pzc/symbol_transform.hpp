// Transform-domain layer.  Under the Mellin transform
//   F(w) = int_0^inf f(x) x^(w-1) dx,      w = c + i s,
// every degree -1 kernel k(t, x) of the integral system becomes multiplication
// by its symbol  int_0^inf u^(w-1) k(1, u) du.  This module evaluates those
// symbols in closed form, transforms the loads, and assembles the scalar
// Riemann data G0, H on a graded grid of the line Re w = c.
#pragma once

#include "pzc/kernel_assembly.hpp"
#include "pzc/quadrature.hpp"

#include <functional>
#include <vector>

namespace pzc {

/// cot(pi w) and csc(pi w) evaluated with exponentials of non-positive real
/// part only, so they stay finite for any |Im w|.
template <typename Real>
struct TrigPair {
  Complex<Real> cot, csc;
};

template <typename Real>
TrigPair<Real> stable_cot_csc(Complex<Real> w);

/// Kernel symbols and the combined symbols G1..G4 at one point w.
///   K1s, K2s: symbols of K1, K2 (Cauchy part pi*lambda*cot(pi w));
///   R2s, R3s: symbols of the coupling kernels R2, R3;
///   G1 = w K1s - 1/(h0 (w-1)(w-2)),  G2 = -w R2s,  G3 = R3s,  G4 = K2s.
template <typename Real>
struct Symbols {
  Complex<Real> K1s, R2s, K2s, R3s;
  Complex<Real> G1, G2, G3, G4;
};

template <typename Real>
Symbols<Real> eval_symbols(const KernelTable<Real>& k, Real h0, Complex<Real> w);

/// G_Phi(w) = (w-1)(w-2) (G1 - G2 G3 / G4): coefficient of the reduced
/// scalar problem after eliminating the crack unknown.
template <typename Real>
Complex<Real> g_phi(const Symbols<Real>& s, Complex<Real> w);

/// Normalising factors N+(w) = (w-2) sqrt(-i(w-5)), N-(w) = (w+1) sqrt(-i(w+1))
/// (principal square roots).  pi lambda1 N+ N- has the same growth as G_Phi,
/// so G0 = G_Phi / (pi lambda1 N+ N-) tends to 1 at both ends of the line.
template <typename Real>
Complex<Real> normalizer_plus(Complex<Real> w);
template <typename Real>
Complex<Real> normalizer_minus(Complex<Real> w);

template <typename Real>
Complex<Real> g0_symbol(const KernelTable<Real>& k, Real h0, Complex<Real> w);

/// Loads of the problem.
///   p0(x) = sum_k p0[k] x^k on the inclusion 0 < x < 1;
///   q0 = sum_k q0[k] y^k on the crack segment 0 < y = -x < q0_length, zero beyond;
///   rigidity D(x) = h0 x^3.
template <typename Real>
struct LoadSpec {
  std::vector<Real> p0{Real(1)};
  std::vector<Real> q0{};
  Real q0_length = Real(1);
  Real h0 = Real(1e10);

  Real p0_at(Real x) const;
  Real q0_at(Real y) const;
  Real p0_integral() const;  ///< int_0^1 p0
  Real p0_moment() const;    ///< int_0^1 x p0
  Real p0_l1() const;        ///< int_0^1 |p0| (Gauss-Legendre, 64 nodes)
  bool zero() const;
};

/// Transformed loads at w.
///   p0hat = sum p0[k]/(w+k),  q0hat = sum q0[k] l^(w+k)/(w+k),
///   P = w K1s p0hat,  Q = R3s p0hat - q0hat.
template <typename Real>
struct LoadTransforms {
  Complex<Real> p0hat, q0hat, P, Q;
};

/// Error: DivergentTransform when Re w <= 0 (the transforms need Re w > 0) or
/// the crack-load support length is not positive.
template <typename Real>
LoadTransforms<Real> transform_loads(const LoadSpec<Real>& loads, const Symbols<Real>& s,
                                     Complex<Real> w);

/// Grid and tolerances for the Riemann data.
template <typename Real>
struct SymbolGridConfig {
  Real contour = Real(0.75);     ///< Re w of the integration line
  Real S0 = Real(40);            ///< initial truncation, doubled until the tail rule holds
  Real S_min = Real(1e6);        ///< lower bound on the truncation used for quadrature
  Real tail_tol = Real(1e-6);    ///< |G0(c +- iS) - 1| required at the truncation
  Real du = Real(0.2);           ///< panel width in the sinh variable
  int ng = 16;                   ///< Gauss nodes per panel
};

/// Riemann data sampled on the line w = c + i t, t in [-S, S].
template <typename Real>
struct SymbolGrid {
  SinhPanelGrid<Real> grid;
  Real contour{};
  Real S_tail{};                  ///< truncation where the tail rule first held
  CVec<Real> w, K1s, G1, G2, G3, G4, GPhi, Nplus, Nminus, G0, P, Q, H, p0hat;
  int index{};                    ///< winding number of G0 along the line
  Real re_g0_min{};               ///< min Re G0 over the nodes
  Real tail_deviation{};          ///< max |G0(c +- iS) - 1| at the grid ends
  Real hermitian_deviation{};     ///< max |G0(c - it) - conj G0(c + it)|
  Real lambda1{};
  Real h0{};
};

/// Errors: G4Zero (with location), IndexNonzero, TailNotReached.
template <typename Real>
SymbolGrid<Real> build_riemann_data(const KernelTable<Real>& k, const LoadSpec<Real>& loads,
                                    const SymbolGridConfig<Real>& cfg = {});

/// Winding number (in turns, rounded) of samples of a nonvanishing function
/// along an ordered path; `max_step` receives the largest argument increment.
template <typename Real>
int winding_number(const CVec<Real>& values, Real* max_step = nullptr);

/// Numerical Mellin symbol int_0^inf u^(w-1) k(u) du of a kernel slice
/// k(u) = k(1, u), computed under u = e^zeta with the trapezoid rule on the
/// offset nodes zeta = (j + 1/2) h.  A Cauchy pole a/(1 - u) at u = 1 (the
/// integrand behaves like -a/zeta) is removed by adding a exp(-zeta^2)/zeta,
/// an odd function whose principal value vanishes; `cauchy_coefficient` = a.
/// The kernel slice must decay like 1/u at infinity.  Requires 0 < Re w < 1.
template <typename Real>
Complex<Real> numeric_symbol(const std::function<Real(Real)>& k_of_u, Real cauchy_coefficient,
                             Complex<Real> w, Real h = Real(0.05), Real tail_eps = Real(1e-12));

}  // namespace pzc
