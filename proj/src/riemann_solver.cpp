#include "pzc/riemann_solver.hpp"

#include <cmath>
#include <sstream>

namespace pzc {

template <typename Real>
void factorize(const SymbolGrid<Real>& data, RiemannSolution<Real>& out) {
  using C = Complex<Real>;
  const C I(0, 1);
  const Real pi = kPi<Real>;
  const int n = data.grid.size();
  out.L.resize(n);
  for (int i = 0; i < n; ++i) out.L(i) = std::log(data.G0(i));
  for (int i = 1; i < n; ++i) {
    if (std::abs(out.L(i).imag() - out.L(i - 1).imag()) > pi / 2) {
      std::ostringstream os;
      os << "ln G0 jumps by " << double(out.L(i).imag() - out.L(i - 1).imag())
         << " rad between t = " << double(data.grid.t()(i - 1)) << " and "
         << double(data.grid.t()(i));
      throw Error("riemann_solver", "BranchJump", os.str());
    }
  }
  out.L_coef = data.grid.panel_coefficients(out.L);
  const CVec<Real> CL = data.grid.principal_value(out.L) / (Real(2) * pi * I);
  out.Xplus = (Real(0.5) * out.L + CL).array().exp();
  out.Xminus = (Real(-0.5) * out.L + CL).array().exp();
}

template <typename Real>
RiemannSolution<Real> solve_riemann(SymbolGrid<Real> data, Real tail_tol) {
  using C = Complex<Real>;
  const C I(0, 1);
  const Real pi = kPi<Real>;
  RiemannSolution<Real> rs;
  factorize(data, rs);
  const int n = data.grid.size();
  const Real l1 = data.lambda1;

  rs.h.resize(n);
  for (int i = 0; i < n; ++i) rs.h(i) = data.H(i) / (pi * l1 * data.Nplus(i) * rs.Xplus(i));
  rs.h_coef = data.grid.panel_coefficients(rs.h);
  const CVec<Real> Ch = data.grid.principal_value(rs.h) / (Real(2) * pi * I);
  rs.Phiplus = Real(0.5) * rs.h + Ch;
  rs.Phiminus = Real(-0.5) * rs.h + Ch;

  rs.F.resize(n);
  rs.Y.resize(n);
  rs.U.resize(n);
  rs.psihat.resize(n);
  for (int i = 0; i < n; ++i) {
    const C w = data.w(i);
    rs.F(i) = rs.Xminus(i) * rs.Phiminus(i) / data.Nminus(i);
    rs.Y(i) = pi * l1 * data.Nplus(i) * rs.Xplus(i) * rs.Phiplus(i);
    rs.U(i) = (w - Real(1)) * (w - Real(2)) * rs.F(i);
    rs.psihat(i) = (data.Q(i) - data.G3(i) * rs.U(i)) / data.G4(i);
  }
  const Real Hmax = data.H.cwiseAbs().maxCoeff();
  rs.boundary_residual =
      Hmax > 0 ? (rs.Y - data.GPhi.cwiseProduct(rs.F) - data.H).cwiseAbs().maxCoeff() / Hmax
               : Real(0);
  const Real hmax = rs.h.cwiseAbs().maxCoeff();
  rs.tail_ratio = hmax > 0 ? std::max(std::abs(rs.h(0)), std::abs(rs.h(n - 1))) / hmax : Real(0);
  if (!(rs.tail_ratio <= tail_tol)) {
    std::ostringstream os;
    os << "Cauchy density has not decayed at the truncation: |h(+-S)|/max|h| = "
       << double(rs.tail_ratio);
    throw Error("riemann_solver", "QuadratureFailure", os.str());
  }
  rs.data = std::move(data);
  return rs;
}

template <typename Real>
Complex<Real> RiemannSolution<Real>::X(Complex<Real> z) const {
  const Complex<Real> I(0, 1);
  return std::exp(data.grid.cauchy(L, L_coef, z) / (Real(2) * kPi<Real> * I));
}

template <typename Real>
Complex<Real> RiemannSolution<Real>::Phi(Complex<Real> z) const {
  const Complex<Real> I(0, 1);
  return data.grid.cauchy(h, h_coef, z) / (Real(2) * kPi<Real> * I);
}

template <typename Real>
Complex<Real> RiemannSolution<Real>::F_at(Complex<Real> z) const {
  const Complex<Real> I(0, 1);
  const Complex<Real> w = data.contour + I * z;
  return X(z) * Phi(z) / normalizer_minus(w);
}

template <typename Real>
Complex<Real> RiemannSolution<Real>::Y_at(Complex<Real> z) const {
  const Complex<Real> I(0, 1);
  const Complex<Real> w = data.contour + I * z;
  return kPi<Real> * data.lambda1 * normalizer_plus(w) * X(z) * Phi(z);
}

template <typename Real>
Real plemelj_check(const RiemannSolution<Real>& rs, const KernelTable<Real>& k, int n, Real T,
                   Real eta) {
  using C = Complex<Real>;
  Real worst = 0;
  for (int i = 0; i < n; ++i) {
    // Sample points offset from the symmetric grid so they never hit a node.
    const Real t = -T + (2 * T) * (Real(i) + Real(0.37)) / Real(n);
    const Real e = eta * std::max(Real(1), std::abs(t));
    const C Xp = rs.X(C(t, e));
    const C Xm = rs.X(C(t, -e));
    const C g0 = g0_symbol(k, rs.data.h0, C(rs.data.contour, t));
    worst = std::max(worst, std::abs(Xp - g0 * Xm) / std::abs(Xm));
  }
  return worst;
}

namespace {

using Cd = std::complex<double>;

struct EdgeWalk {
  double total_arg = 0;
  double min_abs = std::numeric_limits<double>::infinity();
  double max_abs = 0;
  int evaluations = 0;
};

// Accumulate arg f along the segment a -> b with adaptive steps.
void walk_edge(const std::function<Cd(Cd)>& f, Cd a, Cd b, EdgeWalk& acc) {
  const double max_step = 1.0 / 64, min_step = 1e-12;
  double s = 0, ds = max_step;
  Cd fa = f(a);
  ++acc.evaluations;
  acc.min_abs = std::min(acc.min_abs, std::abs(fa));
  acc.max_abs = std::max(acc.max_abs, std::abs(fa));
  while (s < 1) {
    const double step = std::min(ds, 1 - s);
    const Cd fb = f(a + (b - a) * (s + step));
    ++acc.evaluations;
    const double d = std::arg(fb / fa);
    if (std::abs(d) > 0.2 && step > min_step) {
      ds = step / 2;
      continue;
    }
    acc.total_arg += d;
    acc.min_abs = std::min(acc.min_abs, std::abs(fb));
    acc.max_abs = std::max(acc.max_abs, std::abs(fb));
    s += step;
    fa = fb;
    ds = std::min(2 * step, max_step);
  }
}

}  // namespace

WindingReport rectangle_winding(const std::function<std::complex<double>(std::complex<double>)>& f,
                                double re_lo, double re_hi, double R, double zero_tol) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    EdgeWalk acc;
    const Cd c1(re_lo, -R), c2(re_hi, -R), c3(re_hi, R), c4(re_lo, R);
    walk_edge(f, c1, c2, acc);
    walk_edge(f, c2, c3, acc);
    walk_edge(f, c3, c4, acc);
    walk_edge(f, c4, c1, acc);
    const double rel = acc.min_abs / acc.max_abs;
    if (std::isfinite(rel) && rel > zero_tol) {
      WindingReport r;
      r.winding = int(std::lround(acc.total_arg / (2 * kPi<double>)));
      r.min_abs = acc.min_abs;
      r.evaluations = acc.evaluations;
      r.R = R;
      return r;
    }
    const double shift = 0.01 * (re_hi - re_lo);
    re_lo += shift;
    re_hi -= shift;
    R *= 1.1;
  }
  throw Error("riemann_solver", "ContourThroughZero",
              "the symbol vanishes on the winding contour (also after one retry)");
}

template <typename Real>
WindingReport strip_winding(const KernelTable<Real>& k, Real h0, Real re_lo, Real re_hi, Real R) {
  const KernelTable<double> kd = [&] {
    KernelTable<double> o;
    for (int i = 0; i < 4; ++i) o.lambda[i] = double(k.lambda[i]);
    o.omega = k.omega.template cast<double>();
    o.alpha = k.alpha.template cast<double>();
    o.rr = k.rr.template cast<double>();
    o.qq = k.qq.template cast<double>();
    o.beta1 = k.beta1.template cast<double>();
    o.beta2 = k.beta2.template cast<double>();
    return o;
  }();
  const double hd = double(h0);
  auto f = [&kd, hd](Cd w) { return g_phi(eval_symbols(kd, hd, w), w); };
  return rectangle_winding(f, double(re_lo), double(re_hi), double(R));
}

template struct RiemannSolution<double>;
template void factorize(const SymbolGrid<double>&, RiemannSolution<double>&);
template RiemannSolution<double> solve_riemann(SymbolGrid<double>, double);
template double plemelj_check(const RiemannSolution<double>&, const KernelTable<double>&, int,
                              double, double);
template WindingReport strip_winding(const KernelTable<double>&, double, double, double, double);

}  // namespace pzc
