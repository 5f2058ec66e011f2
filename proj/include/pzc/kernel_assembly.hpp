// Kernel coefficients of the coupled singular integral system and pointwise
// evaluation of the kernels.
//
// All kernels are written in positive variables: t, x in (0, 1) on the
// inclusion and y = -x > 0 along the crack.  The governing system reads
//
//   d/dx-integrated inclusion equation:
//     int_0^1 K1(t, x) p(t) dt + int_0^inf R2(y, x) psi(y) dy
//       - int_0^1 W(x, t) (p(t) - p0(t)) dt = C,              0 < x < 1,
//   crack equation:
//     -int_0^inf K2(y, eta) psi(y) dy + int_0^1 R3(t, eta) p(t) dt = q0(eta),
//
// where W is the beam-compliance kernel built from the rigidity D(x).
#pragma once

#include "pzc/interface_solver.hpp"

#include <array>

namespace pzc {

/// Real kernel coefficients.  Diagonal entries of the 3x3 tables are zero and
/// never read.
template <typename Real>
struct KernelTable {
  std::array<Real, 4> lambda{};      ///< lambda1..lambda4
  Mat3<Real> omega, alpha, rr, qq;   ///< (m, n) tables, m != n
  Vec3<Real> beta1, beta2;           ///< modal roots of half-planes 1 and 2
  Real max_imag_ratio{};             ///< worst |Im|/|Re| scale seen during assembly

  KernelTable() {
    omega.setZero();
    alpha.setZero();
    rr.setZero();
    qq.setZero();
    beta1.setOnes();
    beta2.setOnes();
  }

  /// Table with only lambda1 retained (the dominant Cauchy operator).
  KernelTable cauchy_only() const {
    KernelTable k;
    k.lambda = {lambda[0], Real(0), lambda[2], Real(0)};
    k.beta1 = beta1;
    k.beta2 = beta2;
    return k;
  }
};

/// Errors: RealnessViolation naming the offending entry.
template <typename Real>
KernelTable<Real> assemble_kernel_table(const ModalBasis<Real>& mb1, const ModalBasis<Real>& mb2,
                                        const JumpFactors<Real>& jf,
                                        const CouplingSolution<Real>& cs,
                                        Real realness_tol = Real(1e-9));

/// Regular part of K1: sum_{m != n} omega_mn / (beta1_m t + beta1_n x).
template <typename Real>
Real eval_R1(const KernelTable<Real>& k, Real t, Real x);
/// Crack-to-inclusion coupling: -sum alpha_mn / (beta1_m y + beta2_n x).
template <typename Real>
Real eval_R2(const KernelTable<Real>& k, Real y, Real x);
/// Inclusion-to-crack coupling: sum rr_mn / (beta2_m t + beta1_n eta).
template <typename Real>
Real eval_R3(const KernelTable<Real>& k, Real t, Real eta);
/// Regular part of K2: sum qq_mn / (beta2_m y + beta2_n eta).
template <typename Real>
Real eval_R4(const KernelTable<Real>& k, Real y, Real eta);

/// K1(t, x) = lambda1/(t - x) + lambda2/(t + x) + R1(t, x).
/// Errors: DomainError for non-positive arguments, SingularPoint when
/// |t - x| is at round-off level.  The regular parts R1..R4 are unguarded.
template <typename Real>
Real eval_K1(const KernelTable<Real>& k, Real t, Real x);
/// K2(y, eta) = lambda3/(y - eta) + lambda4/(y + eta) + R4(y, eta); same errors.
template <typename Real>
Real eval_K2(const KernelTable<Real>& k, Real y, Real eta);

}  // namespace pzc
