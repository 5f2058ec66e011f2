#include "pzc/kernel_assembly.hpp"

#include <cmath>
#include <sstream>

namespace pzc {

namespace {

template <typename Real>
void check_singular(Real t, Real x, const char* name) {
  using std::abs;
  if (!(t > 0) || !(x > 0))
    throw Error("kernel_assembly", "DomainError",
                std::string(name) + " requires positive arguments");
  if (abs(t - x) <= 8 * std::numeric_limits<Real>::epsilon() * (abs(t) + abs(x))) {
    std::ostringstream os;
    os << name << " evaluated on its Cauchy singularity t = x = " << double(t);
    throw Error("kernel_assembly", "SingularPoint", os.str());
  }
}

}  // namespace

template <typename Real>
KernelTable<Real> assemble_kernel_table(const ModalBasis<Real>& mb1, const ModalBasis<Real>& mb2,
                                        const JumpFactors<Real>& jf,
                                        const CouplingSolution<Real>& cs, Real realness_tol) {
  using C = Complex<Real>;
  const C I(0, 1);
  const Real pi = kPi<Real>;
  const CMat6<Real>& X = cs.X_lu;
  const CVec3<Real>& q1 = mb1.q;
  const CVec3<Real>& g2 = mb2.gamma;
  const CVec3<Real>& D1 = jf.delta2k_1;
  const CVec3<Real>& D2 = jf.delta3k_2;
  const C d01 = jf.delta0_1, d02 = jf.delta0_2;
  const Vec3<Real>& b1 = mb1.beta;
  const Vec3<Real>& b2 = mb2.beta;

  C lam1(0), lam2(0), lam3(0), lam4(0);
  for (int m = 0; m < 3; ++m) {
    lam1 += I * q1(m) * D1(m);
    lam2 += q1(m) * X(m, m) * D1(m);
    lam3 += g2(m) * D2(m);
    lam4 += g2(m) * X(3 + m, 3 + m) * D2(m);
  }
  lam1 /= 2 * pi * d01;
  lam2 = I * lam2 / (2 * pi * d01);
  lam3 = -Real(2) * lam3 / (pi * d02);
  lam4 = -Real(2) * lam4 / (pi * d02);

  CMat3<Real> om = CMat3<Real>::Zero(), al = om, rr = om, qq = om;
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) {
      if (m == n) continue;
      om(m, n) = b1(m) * I * q1(m) * X(m, n) * D1(n) / (2 * pi * d01);
      al(m, n) = -Real(2) * I * q1(m) * X(m, 3 + n) * D2(n) * b1(m) / (pi * d02);
      rr(m, n) = g2(m) * X(3 + m, n) * D1(n) * b2(m) / (2 * pi * d01);
      qq(m, n) = -Real(2) * b2(m) * g2(m) * X(3 + m, 3 + n) * D2(n) / (pi * d02);
    }

  KernelTable<Real> k;
  k.beta1 = b1;
  k.beta2 = b2;
  Real worst = 0;
  auto take = [&](C v, Real scale, const std::string& name) {
    const Real ratio = std::abs(v.imag()) / scale;
    worst = std::max(worst, ratio);
    if (!(ratio <= realness_tol)) {
      std::ostringstream os;
      os << name << " = " << double(v.real()) << (v.imag() >= 0 ? "+" : "") << double(v.imag())
         << "i is not real (|Im|/scale = " << double(ratio) << ")";
      throw Error("kernel_assembly", "RealnessViolation", os.str());
    }
    return v.real();
  };
  const std::array<C, 4> lams{lam1, lam2, lam3, lam4};
  for (int i = 0; i < 4; ++i) {
    // lambda1/lambda2 and lambda3/lambda4 share a physical scale.
    const Real scale = i < 2 ? std::max(std::abs(lam1), std::abs(lam2))
                             : std::max(std::abs(lam3), std::abs(lam4));
    k.lambda[i] = take(lams[i], scale, "lambda" + std::to_string(i + 1));
  }
  auto fill = [&](const CMat3<Real>& src, Mat3<Real>& dst, const char* name) {
    const Real scale = std::max(src.cwiseAbs().maxCoeff(), std::numeric_limits<Real>::min());
    dst.setZero();
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n)
        if (m != n)
          dst(m, n) = take(src(m, n), scale,
                           std::string(name) + "(" + std::to_string(m + 1) + "," +
                               std::to_string(n + 1) + ")");
  };
  fill(om, k.omega, "omega");
  fill(al, k.alpha, "alpha");
  fill(rr, k.rr, "r");
  fill(qq, k.qq, "q");
  k.max_imag_ratio = worst;
  return k;
}

template <typename Real>
Real eval_R1(const KernelTable<Real>& k, Real t, Real x) {
  Real s = 0;
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n)
      if (m != n) s += k.omega(m, n) / (k.beta1(m) * t + k.beta1(n) * x);
  return s;
}

template <typename Real>
Real eval_R2(const KernelTable<Real>& k, Real y, Real x) {
  Real s = 0;
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n)
      if (m != n) s -= k.alpha(m, n) / (k.beta1(m) * y + k.beta2(n) * x);
  return s;
}

template <typename Real>
Real eval_R3(const KernelTable<Real>& k, Real t, Real eta) {
  Real s = 0;
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n)
      if (m != n) s += k.rr(m, n) / (k.beta2(m) * t + k.beta1(n) * eta);
  return s;
}

template <typename Real>
Real eval_R4(const KernelTable<Real>& k, Real y, Real eta) {
  Real s = 0;
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n)
      if (m != n) s += k.qq(m, n) / (k.beta2(m) * y + k.beta2(n) * eta);
  return s;
}

template <typename Real>
Real eval_K1(const KernelTable<Real>& k, Real t, Real x) {
  check_singular(t, x, "K1");
  return k.lambda[0] / (t - x) + k.lambda[1] / (t + x) + eval_R1(k, t, x);
}

template <typename Real>
Real eval_K2(const KernelTable<Real>& k, Real y, Real eta) {
  check_singular(y, eta, "K2");
  return k.lambda[2] / (y - eta) + k.lambda[3] / (y + eta) + eval_R4(k, y, eta);
}

#define PZC_INSTANTIATE(Real)                                                                   \
  template KernelTable<Real> assemble_kernel_table(                                             \
      const ModalBasis<Real>&, const ModalBasis<Real>&, const JumpFactors<Real>&,               \
      const CouplingSolution<Real>&, Real);                                                     \
  template Real eval_R1(const KernelTable<Real>&, Real, Real);                                  \
  template Real eval_R2(const KernelTable<Real>&, Real, Real);                                  \
  template Real eval_R3(const KernelTable<Real>&, Real, Real);                                  \
  template Real eval_R4(const KernelTable<Real>&, Real, Real);                                  \
  template Real eval_K1(const KernelTable<Real>&, Real, Real);                                  \
  template Real eval_K2(const KernelTable<Real>&, Real, Real);

PZC_INSTANTIATE(double)
PZC_INSTANTIATE(long double)
#undef PZC_INSTANTIATE

}  // namespace pzc
