#include "pzc/interface_solver.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <sstream>

namespace pzc {

namespace {

template <typename Real>
CMat<Real> drop_row_col(const CMat<Real>& a, int i, int j) {
  const int n = int(a.rows());
  CMat<Real> m(n - 1, n - 1);
  for (int r = 0, rr = 0; r < n; ++r) {
    if (r == i) continue;
    for (int c = 0, cc = 0; c < n; ++c) {
      if (c == j) continue;
      m(rr, cc++) = a(r, c);
    }
    ++rr;
  }
  return m;
}

}  // namespace

template <typename Real>
Complex<Real> laplace_determinant(const CMat<Real>& a) {
  const int n = int(a.rows());
  if (n == 0) return Complex<Real>(1);
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  Complex<Real> det(0);
  for (int j = 0; j < n; ++j) {
    if (a(0, j) == Complex<Real>(0)) continue;
    const Real sign = (j % 2 == 0) ? Real(1) : Real(-1);
    det += sign * a(0, j) * laplace_determinant<Real>(drop_row_col<Real>(a, 0, j));
  }
  return det;
}

template <typename Real>
Complex<Real> laplace_cofactor(const CMat<Real>& a, int i, int j) {
  const Real sign = ((i + j) % 2 == 0) ? Real(1) : Real(-1);
  return sign * laplace_determinant<Real>(drop_row_col<Real>(a, i, j));
}

template <typename Real>
JumpFactors<Real> compute_jump_factors(const ModalBasis<Real>& mb1, const ModalBasis<Real>& mb2,
                                       const InterfaceTolerances<Real>& tol) {
  const Complex<Real> I(0, 1);
  JumpFactors<Real> jf;
  jf.S1.row(0) = mb1.r.transpose();
  jf.S1.row(1) = mb1.gamma.transpose();
  jf.S1.row(2) = mb1.p.transpose();
  for (int k = 0; k < 3; ++k) jf.S2(0, k) = I * mb2.beta(k) * mb2.gamma(k);
  jf.S2.row(1) = mb2.lambda.transpose();
  jf.S2.row(2) = mb2.q.transpose();

  const CMat<Real> S1 = jf.S1, S2 = jf.S2;
  const Complex<Real> det1 = laplace_determinant<Real>(S1);
  const Complex<Real> det2 = laplace_determinant<Real>(S2);
  jf.delta0_1 = det1;
  jf.delta0_2 = I * det2;
  for (int k = 0; k < 3; ++k) {
    jf.delta2k_1(k) = laplace_cofactor<Real>(S1, 1, k);
    jf.delta3k_2(k) = laplace_cofactor<Real>(S2, 2, k);
  }

  auto check = [&](const CMat<Real>& S, Complex<Real> det, const char* name) {
    // Hadamard-type scale: the rows carry different physical units.
    Real scale = 1;
    for (int i = 0; i < 3; ++i) scale *= S.row(i).norm();
    if (!(std::abs(det) > tol.singular * scale)) {
      std::ostringstream os;
      os << name << " determinant " << double(std::abs(det)) << " is numerically zero";
      throw Error("interface_solver", "SingularSystem", os.str());
    }
  };
  check(S1, det1, "half-plane 1");
  check(S2, det2, "half-plane 2");

  // Cramer consistency: expanding each row against the cofactors of the chosen
  // row reproduces det on that row and zero elsewhere (relative to the size of
  // the individual products, since the rows carry different units).
  Real worst = 0;
  for (int i = 0; i < 3; ++i) {
    const Complex<Real> e1 = (jf.S1.row(i).transpose().array() * jf.delta2k_1.array()).sum();
    const Complex<Real> e2 = (jf.S2.row(i).transpose().array() * jf.delta3k_2.array()).sum();
    const Complex<Real> t1 = (i == 1) ? det1 : Complex<Real>(0);
    const Complex<Real> t2 = (i == 2) ? det2 : Complex<Real>(0);
    const Real n1 = (jf.S1.row(i).transpose().array() * jf.delta2k_1.array()).abs().sum();
    const Real n2 = (jf.S2.row(i).transpose().array() * jf.delta3k_2.array()).abs().sum();
    worst = std::max(worst, std::abs(e1 - t1) / n1);
    worst = std::max(worst, std::abs(e2 - t2) / n2);
  }
  jf.cramer_residual = worst;
  return jf;
}

template <typename Real>
void interface_matrices(const ModalBasis<Real>& mb1, const ModalBasis<Real>& mb2, CMat6<Real>& M,
                        CMat6<Real>& C) {
  const Complex<Real> I(0, 1);
  for (int k = 0; k < 3; ++k) {
    const Real b1 = mb1.beta(k), b2 = mb2.beta(k);
    // Continuity rows with opposite signs in M for the two half-planes
    // (rows 0, 2, 4) and equal signs (rows 1, 3, 5).
    M(0, k) = mb1.gamma(k) * b1 * b1;
    M(0, 3 + k) = -mb2.gamma(k) * b2 * b2;
    M(1, k) = I * mb1.gamma(k) * b1;
    M(1, 3 + k) = I * mb2.gamma(k) * b2;
    M(2, k) = I * mb1.lambda(k) * b1;
    M(2, 3 + k) = -I * mb2.lambda(k) * b2;
    M(3, k) = I * mb1.p(k) * b1;
    M(3, 3 + k) = I * mb2.p(k) * b2;
    M(4, k) = I * mb1.q(k) * b1;
    M(4, 3 + k) = -I * mb2.q(k) * b2;
    M(5, k) = I * mb1.r(k) * b1;
    M(5, 3 + k) = I * mb2.r(k) * b2;
  }
  C = M;
  for (int row : {0, 2, 4}) C.row(row) = -M.row(row);
}

template <typename Real>
Eigen::Matrix<Real, 3, 2> CouplingSolution<Real>::table(int row) const {
  Eigen::Matrix<Real, 3, 2> t;
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 2; ++j) t(k, j) = X(row, k + 3 * j);
  return t;
}

template <typename Real>
CouplingSolution<Real> solve_interface_system(const ModalBasis<Real>& mb1,
                                              const ModalBasis<Real>& mb2,
                                              const InterfaceTolerances<Real>& tol) {
  CouplingSolution<Real> cs;
  interface_matrices(mb1, mb2, cs.M, cs.C);

  // Cofactor path: Laplace determinant and adjugate.
  const CMat<Real> Md = cs.M;
  cs.delta_tilde = laplace_determinant<Real>(Md);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) cs.cofactors(i, j) = laplace_cofactor<Real>(Md, i, j);

  // Row-equilibrated condition number (rows carry different physical units).
  CMat6<Real> Ms = cs.M;
  for (int i = 0; i < 6; ++i) Ms.row(i) /= Ms.row(i).cwiseAbs().maxCoeff();
  Eigen::JacobiSVD<CMat6<Real>> svd(Ms);
  const auto& sv = svd.singularValues();
  cs.condition = sv(5) > 0 ? sv(0) / sv(5) : std::numeric_limits<Real>::infinity();

  Real det_scale = 1;
  for (int i = 0; i < 6; ++i) det_scale *= cs.M.row(i).cwiseAbs().maxCoeff();
  if (!(std::abs(cs.delta_tilde) > tol.singular * det_scale) || !(cs.condition < tol.cond_fail)) {
    std::ostringstream os;
    os << "interface determinant |det| = " << double(std::abs(cs.delta_tilde))
       << ", condition = " << double(cs.condition) << " (fail above " << double(tol.cond_fail) << ")";
    throw Error("interface_solver",
                cs.condition < tol.cond_fail ? "SingularInterface" : "IllConditioned", os.str());
  }
  cs.condition_warning = cs.condition > tol.cond_warn;

  cs.X_lu = cs.M.partialPivLu().solve(cs.C);
  cs.X_cofactor = cs.cofactors.transpose() * cs.C / cs.delta_tilde;

  const Real xmax = cs.X_lu.cwiseAbs().maxCoeff();
  cs.path_agreement = (cs.X_lu - cs.X_cofactor).cwiseAbs().maxCoeff() / xmax;
  cs.backsub_residual =
      (cs.M * cs.X_lu - cs.C).cwiseAbs().maxCoeff() / cs.C.cwiseAbs().maxCoeff();
  cs.imag_ratio = cs.X_lu.imag().cwiseAbs().maxCoeff() / xmax;

  if (!(cs.path_agreement < tol.path_agreement)) {
    std::ostringstream os;
    os << "cofactor and LU solutions differ by " << double(cs.path_agreement);
    throw Error("interface_solver", "PathDisagreement", os.str());
  }
  if (!(cs.imag_ratio < tol.realness)) {
    std::ostringstream os;
    os << "coupling coefficients not real: max|Im X|/max|X| = " << double(cs.imag_ratio);
    throw Error("interface_solver", "RealnessViolation", os.str());
  }
  cs.X = cs.X_lu.real();
  return cs;
}

#define PZC_INSTANTIATE(Real)                                                                     \
  template Complex<Real> laplace_determinant(const CMat<Real>&);                                  \
  template Complex<Real> laplace_cofactor(const CMat<Real>&, int, int);                           \
  template JumpFactors<Real> compute_jump_factors(const ModalBasis<Real>&, const ModalBasis<Real>&, \
                                                  const InterfaceTolerances<Real>&);              \
  template void interface_matrices(const ModalBasis<Real>&, const ModalBasis<Real>&,              \
                                   CMat6<Real>&, CMat6<Real>&);                                   \
  template struct CouplingSolution<Real>;                                                         \
  template CouplingSolution<Real> solve_interface_system(                                         \
      const ModalBasis<Real>&, const ModalBasis<Real>&, const InterfaceTolerances<Real>&);

PZC_INSTANTIATE(double)
PZC_INSTANTIATE(long double)
#undef PZC_INSTANTIATE

}  // namespace pzc
