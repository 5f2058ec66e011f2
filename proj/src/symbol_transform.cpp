#include "pzc/symbol_transform.hpp"

#include <cmath>
#include <sstream>

namespace pzc {

template <typename Real>
TrigPair<Real> stable_cot_csc(Complex<Real> w) {
  using C = Complex<Real>;
  const C I(0, 1);
  const Real pi = kPi<Real>;
  // In the upper half-plane exp(2 pi i w) is small; in the lower one its
  // reciprocal is.  Both formulas are exact identities.
  const bool up = w.imag() >= 0;
  const C e = up ? std::exp(C(2) * pi * I * w) : std::exp(C(-2) * pi * I * w);
  const C h = up ? std::exp(pi * I * w) : std::exp(-pi * I * w);
  TrigPair<Real> r;
  r.cot = (up ? I : -I) * (e + Real(1)) / (e - Real(1));
  r.csc = (up ? Real(2) * I : Real(-2) * I) * h / (e - Real(1));
  return r;
}

template <typename Real>
Symbols<Real> eval_symbols(const KernelTable<Real>& k, Real h0, Complex<Real> w) {
  using C = Complex<Real>;
  const Real pi = kPi<Real>;
  const auto tr = stable_cot_csc(w);
  Symbols<Real> s;
  s.K1s = pi * (k.lambda[0] * tr.cot + k.lambda[1] * tr.csc);
  s.K2s = pi * (k.lambda[2] * tr.cot + k.lambda[3] * tr.csc);
  s.R2s = C(0);
  s.R3s = C(0);
  // Mellin symbol of 1/(a + b u) is (pi/a) (a/b)^w csc(pi w).
  auto term = [&](Real a, Real b) { return (pi / a) * std::exp(w * std::log(a / b)) * tr.csc; };
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) {
      if (m == n) continue;
      s.K1s += k.omega(m, n) * term(k.beta1(m), k.beta1(n));
      s.R2s -= k.alpha(m, n) * term(k.beta1(m), k.beta2(n));
      s.K2s += k.qq(m, n) * term(k.beta2(m), k.beta2(n));
      s.R3s += k.rr(m, n) * term(k.beta2(m), k.beta1(n));
    }
  s.G1 = w * s.K1s - Real(1) / (h0 * (w - Real(1)) * (w - Real(2)));
  s.G2 = -w * s.R2s;
  s.G3 = s.R3s;
  s.G4 = s.K2s;
  return s;
}

template <typename Real>
Complex<Real> g_phi(const Symbols<Real>& s, Complex<Real> w) {
  return (w - Real(1)) * (w - Real(2)) * (s.G1 - s.G2 * s.G3 / s.G4);
}

template <typename Real>
Complex<Real> normalizer_plus(Complex<Real> w) {
  const Complex<Real> I(0, 1);
  return (w - Real(2)) * std::sqrt(-I * (w - Real(5)));
}

template <typename Real>
Complex<Real> normalizer_minus(Complex<Real> w) {
  const Complex<Real> I(0, 1);
  return (w + Real(1)) * std::sqrt(-I * (w + Real(1)));
}

template <typename Real>
Complex<Real> g0_symbol(const KernelTable<Real>& k, Real h0, Complex<Real> w) {
  const auto s = eval_symbols(k, h0, w);
  return g_phi(s, w) /
         (kPi<Real> * k.lambda[0] * normalizer_plus(w) * normalizer_minus(w));
}

template <typename Real>
Real LoadSpec<Real>::p0_at(Real x) const {
  Real v = 0;
  for (auto it = p0.rbegin(); it != p0.rend(); ++it) v = v * x + *it;
  return v;
}

template <typename Real>
Real LoadSpec<Real>::q0_at(Real y) const {
  if (!(y < q0_length)) return 0;
  Real v = 0;
  for (auto it = q0.rbegin(); it != q0.rend(); ++it) v = v * y + *it;
  return v;
}

template <typename Real>
Real LoadSpec<Real>::p0_integral() const {
  Real v = 0;
  for (size_t k = 0; k < p0.size(); ++k) v += p0[k] / Real(k + 1);
  return v;
}

template <typename Real>
Real LoadSpec<Real>::p0_moment() const {
  Real v = 0;
  for (size_t k = 0; k < p0.size(); ++k) v += p0[k] / Real(k + 2);
  return v;
}

template <typename Real>
Real LoadSpec<Real>::p0_l1() const {
  const auto g = gauss_legendre<Real>(64);
  Real v = 0;
  for (int i = 0; i < 64; ++i) v += g.w(i) / 2 * std::abs(p0_at((g.x(i) + 1) / 2));
  return v;
}

template <typename Real>
bool LoadSpec<Real>::zero() const {
  for (Real c : p0)
    if (c != 0) return false;
  for (Real c : q0)
    if (c != 0) return false;
  return true;
}

template <typename Real>
LoadTransforms<Real> transform_loads(const LoadSpec<Real>& loads, const Symbols<Real>& s,
                                     Complex<Real> w) {
  using C = Complex<Real>;
  if (!(w.real() > 0)) {
    std::ostringstream os;
    os << "load transforms need Re w > 0, got " << double(w.real());
    throw Error("symbol_transform", "DivergentTransform", os.str());
  }
  if (!loads.q0.empty() && !(loads.q0_length > 0))
    throw Error("symbol_transform", "DivergentTransform",
                "crack load support length must be positive");
  LoadTransforms<Real> t;
  t.p0hat = C(0);
  for (size_t k = 0; k < loads.p0.size(); ++k) t.p0hat += loads.p0[k] / (w + Real(k));
  t.q0hat = C(0);
  if (!loads.q0.empty()) {
    const Real ll = std::log(loads.q0_length);
    for (size_t k = 0; k < loads.q0.size(); ++k)
      t.q0hat += loads.q0[k] * std::exp((w + Real(k)) * ll) / (w + Real(k));
  }
  t.P = w * s.K1s * t.p0hat;
  t.Q = s.R3s * t.p0hat - t.q0hat;
  return t;
}

template <typename Real>
int winding_number(const CVec<Real>& values, Real* max_step) {
  Real total = 0, worst = 0;
  for (Eigen::Index i = 1; i < values.size(); ++i) {
    const Real d = std::arg(values(i) / values(i - 1));
    total += d;
    worst = std::max(worst, std::abs(d));
  }
  if (max_step) *max_step = worst;
  return int(std::lround(total / (2 * kPi<Real>)));
}

template <typename Real>
SymbolGrid<Real> build_riemann_data(const KernelTable<Real>& k, const LoadSpec<Real>& loads,
                                    const SymbolGridConfig<Real>& cfg) {
  using C = Complex<Real>;
  const Real c = cfg.contour;
  if (!(c > 0 && c < 1))
    throw Error("symbol_transform", "InvalidContour", "the line Re w = c needs 0 < c < 1");
  if (!(loads.h0 > 0))
    throw Error("symbol_transform", "InvalidLoad", "rigidity scale h0 must be positive");

  auto tail_dev = [&](Real S) {
    return std::max(std::abs(g0_symbol(k, loads.h0, C(c, S)) - Real(1)),
                    std::abs(g0_symbol(k, loads.h0, C(c, -S)) - Real(1)));
  };
  Real S = cfg.S0;
  int doublings = 0;
  while (!(tail_dev(S) < cfg.tail_tol)) {
    S *= 2;
    if (++doublings > 60) {
      std::ostringstream os;
      os << "|G0 - 1| stays above " << double(cfg.tail_tol) << " up to S = " << double(S);
      throw Error("symbol_transform", "TailNotReached", os.str());
    }
  }

  SymbolGrid<Real> g;
  g.contour = c;
  g.S_tail = S;
  g.lambda1 = k.lambda[0];
  g.h0 = loads.h0;
  g.grid = SinhPanelGrid<Real>(std::max(S, cfg.S_min), cfg.du, cfg.ng);
  const int n = g.grid.size();
  for (auto* v : {&g.w, &g.K1s, &g.G1, &g.G2, &g.G3, &g.G4, &g.GPhi, &g.Nplus, &g.Nminus, &g.G0,
                  &g.P, &g.Q, &g.H, &g.p0hat})
    v->resize(n);
  const Real g4_scale = kPi<Real> * (std::abs(k.lambda[2]) + std::abs(k.lambda[3]));
  for (int i = 0; i < n; ++i) {
    const C w(c, g.grid.t()(i));
    const auto s = eval_symbols(k, loads.h0, w);
    if (!(std::abs(s.G4) > Real(1e-12) * g4_scale)) {
      std::ostringstream os;
      os << "G4 vanishes at w = " << double(c) << (w.imag() >= 0 ? "+" : "") << double(w.imag())
         << "i";
      throw Error("symbol_transform", "G4Zero", os.str());
    }
    const auto lt = transform_loads(loads, s, w);
    g.w(i) = w;
    g.K1s(i) = s.K1s;
    g.G1(i) = s.G1;
    g.G2(i) = s.G2;
    g.G3(i) = s.G3;
    g.G4(i) = s.G4;
    g.GPhi(i) = g_phi(s, w);
    g.Nplus(i) = normalizer_plus(w);
    g.Nminus(i) = normalizer_minus(w);
    g.G0(i) = g.GPhi(i) / (kPi<Real> * k.lambda[0] * g.Nplus(i) * g.Nminus(i));
    g.P(i) = lt.P;
    g.Q(i) = lt.Q;
    g.H(i) = (lt.Q * s.G2 - lt.P * s.G4) / s.G4;
    g.p0hat(i) = lt.p0hat;
  }
  g.re_g0_min = g.G0.real().minCoeff();
  g.tail_deviation = std::max(std::abs(g.G0(0) - Real(1)), std::abs(g.G0(n - 1) - Real(1)));
  g.hermitian_deviation = 0;
  for (int i = 0; i < n; ++i)
    g.hermitian_deviation =
        std::max(g.hermitian_deviation, std::abs(g.G0(n - 1 - i) - std::conj(g.G0(i))));
  g.index = winding_number<Real>(g.G0);
  if (g.index != 0) {
    std::ostringstream os;
    os << "winding number of G0 along Re w = " << double(c) << " is " << g.index
       << " (min Re G0 = " << double(g.re_g0_min) << ")";
    throw Error("symbol_transform", "IndexNonzero", os.str());
  }
  return g;
}

template <typename Real>
Complex<Real> numeric_symbol(const std::function<Real(Real)>& k_of_u, Real cauchy_coefficient,
                             Complex<Real> w, Real h, Real tail_eps) {
  using C = Complex<Real>;
  const Real c = w.real();
  if (!(c > 0 && c < 1))
    throw Error("symbol_transform", "InvalidContour", "numeric symbol needs 0 < Re w < 1");
  const Real L = std::log(1 / tail_eps);
  const Real zmax = L / (1 - c), zmin = -L / c;
  C acc(0);
  const long j0 = long(std::floor(zmin / h - Real(0.5)));
  const long j1 = long(std::ceil(zmax / h - Real(0.5)));
  for (long j = j0; j <= j1; ++j) {
    const Real z = (Real(j) + Real(0.5)) * h;
    C f = std::exp(w * z) * k_of_u(std::exp(z));
    f += cauchy_coefficient * std::exp(-z * z) / z;
    acc += f;
  }
  return acc * h;
}

#define PZC_INSTANTIATE(Real)                                                                  \
  template TrigPair<Real> stable_cot_csc(Complex<Real>);                                       \
  template Symbols<Real> eval_symbols(const KernelTable<Real>&, Real, Complex<Real>);          \
  template Complex<Real> g_phi(const Symbols<Real>&, Complex<Real>);                           \
  template Complex<Real> normalizer_plus(Complex<Real>);                                       \
  template Complex<Real> normalizer_minus(Complex<Real>);                                      \
  template Complex<Real> g0_symbol(const KernelTable<Real>&, Real, Complex<Real>);             \
  template struct LoadSpec<Real>;                                                              \
  template LoadTransforms<Real> transform_loads(const LoadSpec<Real>&, const Symbols<Real>&,   \
                                                Complex<Real>);                                \
  template int winding_number(const CVec<Real>&, Real*);                                       \
  template Complex<Real> numeric_symbol(const std::function<Real(Real)>&, Real, Complex<Real>, \
                                        Real, Real);

PZC_INSTANTIATE(double)
#undef PZC_INSTANTIATE
template SymbolGrid<double> build_riemann_data(const KernelTable<double>&, const LoadSpec<double>&,
                                               const SymbolGridConfig<double>&);

}  // namespace pzc
