// Linear-algebraic layer: jump-factor determinants and cofactors of the two
// half-plane systems, and the 6x6 interface system whose solution gives the
// coupling tables A..F.
#pragma once

#include "pzc/material_model.hpp"

namespace pzc {

/// Determinants and cofactors of the two 3x3 half-plane systems.
///
/// Half-plane 1 uses the rows [r; gamma; p] and the cofactors of the gamma row.
/// Half-plane 2 uses the rows [i beta gamma; lambda; q] and the cofactors of the
/// q row; its determinant is stored with the factor i, delta0_2 = i det S2.
template <typename Real>
struct JumpFactors {
  CMat3<Real> S1, S2;
  Complex<Real> delta0_1;
  CVec3<Real> delta2k_1;
  Complex<Real> delta0_2;
  CVec3<Real> delta3k_2;
  Real cramer_residual{};  ///< max deviation of the cofactor expansions from (det * unit row)
};

/// Solution of the 6x6 interface system M X = C.
///
/// Rows 0..5 of X are the coupling tables A..F.  Column k + 3 j (k = 0..2,
/// j = 0..1) holds the coefficient of mode k of the half-plane j+1 boundary
/// function, so `table(0)(k, j)` is A_k^(j+1).
template <typename Real>
struct CouplingSolution {
  CMat6<Real> M, C;
  CMat6<Real> X_lu;          ///< authoritative dense LU solution
  CMat6<Real> X_cofactor;    ///< Cramer / cofactor solution (validation path)
  CMat6<Real> cofactors;     ///< cofactor matrix of M
  Complex<Real> delta_tilde; ///< det M by Laplace expansion
  Mat6<Real> X;              ///< real part of X_lu after the realness check
  Real condition{};          ///< 2-norm condition number of the row-equilibrated M
  bool condition_warning{};  ///< condition above the warning threshold
  Real backsub_residual{};   ///< max|M X - C| / max|C|
  Real path_agreement{};     ///< max|X_lu - X_cofactor| / max|X_lu|
  Real imag_ratio{};         ///< max|Im X| / max|X|

  /// Table `row` (0 = A, ..., 5 = F) as a 3x2 real matrix indexed (k, j).
  Eigen::Matrix<Real, 3, 2> table(int row) const;
};

/// Thresholds of the interface layer.
template <typename Real>
struct InterfaceTolerances {
  Real singular = Real(1e-12);      ///< relative determinant threshold
  Real cond_warn = Real(1e10);
  Real cond_fail = Real(1e13);
  Real realness = Real(1e-9);
  Real path_agreement = Real(1e-9);
};

/// Determinant of a square complex matrix by cofactor (Laplace) expansion.
template <typename Real>
Complex<Real> laplace_determinant(const CMat<Real>& a);

/// Signed cofactor (-1)^(i+j) det(minor_ij) by Laplace expansion.
template <typename Real>
Complex<Real> laplace_cofactor(const CMat<Real>& a, int i, int j);

/// Errors: SingularSystem.
template <typename Real>
JumpFactors<Real> compute_jump_factors(const ModalBasis<Real>& mb1, const ModalBasis<Real>& mb2,
                                       const InterfaceTolerances<Real>& tol = {});

/// Assemble the interface matrices M and C for two modal bases.
template <typename Real>
void interface_matrices(const ModalBasis<Real>& mb1, const ModalBasis<Real>& mb2, CMat6<Real>& M,
                        CMat6<Real>& C);

/// Errors: SingularInterface, IllConditioned, RealnessViolation, PathDisagreement.
template <typename Real>
CouplingSolution<Real> solve_interface_system(const ModalBasis<Real>& mb1,
                                              const ModalBasis<Real>& mb2,
                                              const InterfaceTolerances<Real>& tol = {});

}  // namespace pzc
