#include "pzc/collocation_oracle.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pzc {

template <typename Real>
SincMap<Real> make_sinc_map(SincKind kind, Real smin, Real smax, Real h) {
  if (!(h > 0) || !(smax > smin))
    throw Error("collocation_oracle", "InvalidGrid", "sinc grid needs h > 0 and smax > smin");
  SincMap<Real> m;
  m.kind = kind;
  m.h = h;
  const long k0 = long(std::floor(smin / h + Real(1e-9)));
  const long k1 = long(std::ceil(smax / h - Real(1e-9)));
  const int n = int(k1 - k0 + 1);
  for (auto* v : {&m.sigma, &m.t, &m.tc, &m.Tp, &m.Tpp}) v->resize(n);
  for (int i = 0; i < n; ++i) {
    const Real s = Real(k0 + i) * h;
    m.sigma(i) = s;
    if (kind == SincKind::Unit) {
      m.t(i) = 1 / (1 + std::exp(-s));
      m.tc(i) = 1 / (1 + std::exp(s));
      m.Tp(i) = m.t(i) * m.tc(i);
      m.Tpp(i) = m.Tp(i) * (m.tc(i) - m.t(i));
    } else {
      m.t(i) = std::exp(s);
      m.tc(i) = 1 - m.t(i);
      m.Tp(i) = m.t(i);
      m.Tpp(i) = m.t(i);
    }
  }
  return m;
}

template <typename Real>
Mat<Real> SincMap<Real>::cauchy_matrix() const {
  const int n = size();
  Mat<Real> A(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) {
        A(j, k) = -h * Tpp(j) / (2 * Tp(j) * Tp(j));
        continue;
      }
      // t_k - t_j without cancellation next to t = 1.
      const Real d = (kind == SincKind::Unit && t(j) > Real(0.5) && t(k) > Real(0.5))
                         ? tc(j) - tc(k)
                         : t(k) - t(j);
      const int m = j - k;
      const Real hilbert = (m % 2 == 0) ? Real(0) : Real(-2) / Real(m);
      A(j, k) = h * (1 / d - 1 / (Tp(j) * (sigma(k) - sigma(j)))) + hilbert / Tp(j);
    }
  }
  return A;
}

namespace {

// int_a^1 f(tau) dtau by composite Gauss-Legendre, logarithmic below 1/2.
template <typename Real>
Real integrate_to_one(const std::function<Real(Real)>& f, Real a, Real ac) {
  static const auto g = gauss_legendre<Real>(16);
  Real total = 0;
  auto panel_lin = [&](Real lo, Real hi) {
    Real s = 0;
    for (int i = 0; i < 16; ++i) s += g.w(i) * f((lo + hi) / 2 + (hi - lo) / 2 * g.x(i));
    return s * (hi - lo) / 2;
  };
  if (a >= Real(0.5)) {
    const int np = std::max(1, int(std::ceil(ac / Real(0.05))));
    for (int p = 0; p < np; ++p) total += panel_lin(1 - ac + ac * p / np, 1 - ac + ac * (p + 1) / np);
    return total;
  }
  for (int p = 0; p < 10; ++p) total += panel_lin(Real(0.5) + Real(0.05) * p, Real(0.5) + Real(0.05) * (p + 1));
  const Real la = std::log(a), lb = std::log(Real(0.5));
  const int np = std::max(1, int(std::ceil((lb - la) / Real(0.5))));
  for (int p = 0; p < np; ++p) {
    const Real lo = la + (lb - la) * p / np, hi = la + (lb - la) * (p + 1) / np;
    Real s = 0;
    for (int i = 0; i < 16; ++i) {
      const Real v = (lo + hi) / 2 + (hi - lo) / 2 * g.x(i);
      const Real tau = std::exp(v);
      s += g.w(i) * f(tau) * tau;
    }
    total += s * (hi - lo) / 2;
  }
  return total;
}

}  // namespace

template <typename Real>
Real Rigidity<Real>::moment(int m, Real a, Real ac) const {
  if (!D) {
    if (m == 0) return ac * (1 + a) / (2 * a * a * h0);
    return ac / (a * h0);
  }
  return integrate_to_one<Real>([&](Real t) { return (m == 0 ? Real(1) : t) / D(t); }, a, ac);
}

template <typename Real>
Real Rigidity<Real>::W(Real x, Real xc, Real s, Real sc) const {
  const bool xs = x >= s;
  const Real M = xs ? x : s, Mc = xs ? xc : sc;
  if (!D) {
    // (1/h0) [(1/M - 1) - s (1/(2 M^2) - 1/2)] rewritten without cancellation.
    return (Mc / M) * ((sc - Mc) + M * sc) / (2 * M * h0);
  }
  return moment(1, M, Mc) - s * moment(0, M, Mc);
}

template <typename Real>
Real Rigidity<Real>::load_integral(const std::vector<Real>& p0, Real x) const {
  if (!D) {
    Real v = 0;
    for (size_t k = 0; k < p0.size(); ++k) {
      const Real base = k == 0 ? -std::log(x) : (1 - std::pow(x, Real(k))) / Real(k);
      v += p0[k] * base / (Real((k + 1) * (k + 2)) * h0);
    }
    return v;
  }
  // int_x^1 Pi(tau) / D(tau) dtau with Pi(tau) = int_0^tau (tau - s) p0(s) ds.
  auto Pi = [&](Real tau) {
    Real v = 0;
    for (size_t k = 0; k < p0.size(); ++k)
      v += p0[k] * std::pow(tau, Real(k + 2)) / Real((k + 1) * (k + 2));
    return v;
  };
  return integrate_to_one<Real>([&](Real t) { return Pi(t) / D(t); }, x, 1 - x);
}

namespace {

template <typename Real>
struct Blocks {
  Mat<Real> K1, Wb, R2, K2, R3;
};

template <typename Real>
Blocks<Real> build_blocks(const KernelTable<Real>& k, const Rigidity<Real>& rig,
                          const SincMap<Real>& P, const SincMap<Real>& F) {
  const int np = P.size(), nf = F.size();
  const Real hp = P.h, hf = F.h;
  Blocks<Real> b;
  b.K1 = k.lambda[0] * P.cauchy_matrix();
  b.Wb.resize(np, np);
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < np; ++i) {
      b.K1(j, i) += hp * (k.lambda[1] / (P.t(i) + P.t(j)) + eval_R1(k, P.t(i), P.t(j)));
      b.Wb(j, i) = hp * rig.W(P.t(j), P.tc(j), P.t(i), P.tc(i));
    }
  b.R2.resize(np, nf);
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < nf; ++i) b.R2(j, i) = hf * eval_R2(k, F.t(i), P.t(j));
  b.K2 = k.lambda[2] * F.cauchy_matrix();
  for (int j = 0; j < nf; ++j)
    for (int i = 0; i < nf; ++i)
      b.K2(j, i) += hf * (k.lambda[3] / (F.t(i) + F.t(j)) + eval_R4(k, F.t(i), F.t(j)));
  b.R3.resize(nf, np);
  for (int j = 0; j < nf; ++j)
    for (int i = 0; i < np; ++i) b.R3(j, i) = hp * eval_R3(k, P.t(i), F.t(j));
  return b;
}

}  // namespace

template <typename Real>
CollocationProblem<Real> assemble_collocation(const KernelTable<Real>& k,
                                              const LoadSpec<Real>& loads,
                                              const Rigidity<Real>& rig,
                                              const OracleConfig<Real>& cfg) {
  CollocationProblem<Real> cp;
  cp.P = make_sinc_map(SincKind::Unit, cfg.p_lo, cfg.p_hi, cfg.h);
  cp.F = make_sinc_map(SincKind::Exp, cfg.f_lo, cfg.f_hi, cfg.h);
  const int np = cp.P.size(), nf = cp.F.size();
  cp.Np = np;
  cp.Nf = nf;
  cp.lambda1 = std::abs(k.lambda[0]);
  cp.lambda3 = std::abs(k.lambda[2]);
  const Blocks<Real> b = build_blocks(k, rig, cp.P, cp.F);

  const int rows = np + nf + 2, cols = np + nf + 1;
  cp.A = Mat<Real>::Zero(rows, cols);
  cp.r = Vec<Real>::Zero(rows);
  cp.A.block(0, 0, np, np) = b.K1 - b.Wb;
  cp.A.block(0, np, np, nf) = b.R2;
  cp.A.col(cols - 1).head(np).setConstant(-1);
  for (int j = 0; j < np; ++j) cp.r(j) = -rig.load_integral(loads.p0, cp.P.t(j));
  cp.A.block(np, np, nf, nf) = -b.K2;
  cp.A.block(np, 0, nf, np) = b.R3;
  for (int j = 0; j < nf; ++j) cp.r(np + j) = loads.q0_at(cp.F.t(j));
  cp.A.row(rows - 2).head(np).setConstant(cp.P.h);
  cp.r(rows - 2) = loads.p0_integral();
  cp.A.row(rows - 1).head(np) = cp.P.h * cp.P.t.transpose();
  cp.r(rows - 1) = loads.p0_moment();

  // Scaling: rows by the map derivative (sinc error is uniform in sigma), the
  // crack and constant unknowns in units of lambda1, and each equation block
  // by its kernel scale.
  Vec<Real> row_scale = Vec<Real>::Ones(rows);
  for (int j = 0; j < np; ++j) row_scale(j) = cp.P.Tp(j) / cp.lambda1;
  for (int j = 0; j < nf; ++j) row_scale(np + j) = cp.F.Tp(j) / (cp.lambda1 * cp.lambda3);
  cp.col_scale = Vec<Real>::Ones(cols);
  cp.col_scale.tail(nf + 1).setConstant(1 / cp.lambda1);
  cp.A = row_scale.asDiagonal() * cp.A * cp.col_scale.cwiseInverse().asDiagonal();
  cp.r = row_scale.asDiagonal() * cp.r;
  return cp;
}

template <typename Real>
OracleSolution<Real> solve_collocation(const CollocationProblem<Real>& cp,
                                       const LoadSpec<Real>& loads, Real cond_fail) {
  OracleSolution<Real> os;
  os.P = cp.P;
  os.F = cp.F;
  const Eigen::ColPivHouseholderQR<Mat<Real>> qr(cp.A);
  const auto d = qr.matrixR().diagonal().cwiseAbs();
  os.condition = d.maxCoeff() / d.minCoeff();
  if (!(os.condition < cond_fail)) {
    std::ostringstream os_;
    os_ << "collocation matrix condition estimate " << double(os.condition) << " exceeds "
        << double(cond_fail);
    throw Error("collocation_oracle", "IllConditioned", os_.str());
  }
  Vec<Real> sol = qr.solve(cp.r);
  const Real rn = cp.r.norm();
  os.residual = rn > 0 ? (cp.A * sol - cp.r).norm() / rn : (cp.A * sol).norm();
  sol = sol.cwiseQuotient(cp.col_scale);
  const Vec<Real> rho = sol.head(cp.Np), rhof = sol.segment(cp.Np, cp.Nf);
  os.p = rho.cwiseQuotient(cp.P.Tp);
  os.psi = rhof.cwiseQuotient(cp.F.Tp);
  os.C = sol(cp.Np + cp.Nf);
  os.eq_residual_0 = cp.P.h * rho.sum() - loads.p0_integral();
  os.eq_residual_1 = cp.P.h * rho.dot(cp.P.t) - loads.p0_moment();
  return os;
}

namespace {

template <typename Real>
void accumulate(Real w, Real a, Real b, Real& num, Real& den, Real& mx, Real& bmax) {
  num += w * (a - b) * (a - b);
  den += w * b * b;
  mx = std::max(mx, std::abs(a - b));
  bmax = std::max(bmax, std::abs(b));
}

template <typename Real>
Real ratio(Real num, Real den) {
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

template <typename Real>
OracleComparison<Real> compare_with_fields(const OracleSolution<Real>& os,
                                           const FieldEvaluator<Real>& fe, Real L, Real margin) {
  OracleComparison<Real> c;
  Real num = 0, den = 0, mx = 0, bmax = 0;
  for (int i = 0; i < os.P.size(); ++i) {
    if (os.P.t(i) < margin || os.P.t(i) > 1 - margin) continue;
    accumulate(os.P.Tp(i), os.p(i), fe.p_sigma(os.P.sigma(i)), num, den, mx, bmax);
    ++c.p_points;
  }
  c.p_l2 = ratio(num, den);
  c.p_max = bmax > 0 ? mx / bmax : mx;
  num = den = mx = bmax = 0;
  for (int i = 0; i < os.F.size(); ++i) {
    if (os.F.t(i) < margin || os.F.t(i) > (1 - margin) * L) continue;
    accumulate(os.F.Tp(i), os.psi(i), fe.psi(os.F.t(i)), num, den, mx, bmax);
    ++c.f_points;
  }
  c.f_l2 = ratio(num, den);
  c.f_max = bmax > 0 ? mx / bmax : mx;
  return c;
}

template <typename Real>
OracleComparison<Real> compare_oracles(const OracleSolution<Real>& coarse,
                                       const OracleSolution<Real>& fine, Real L, Real margin) {
  OracleComparison<Real> c;
  auto match = [](const SincMap<Real>& f, Real sigma) {
    const long k = std::lround(sigma / f.h) - std::lround(f.sigma(0) / f.h);
    if (k < 0 || k >= f.size() || std::abs(f.sigma(k) - sigma) > Real(1e-9))
      throw Error("collocation_oracle", "GridMismatch",
                  "coarse oracle node missing from the refined grid");
    return int(k);
  };
  Real num = 0, den = 0, mx = 0, bmax = 0;
  for (int i = 0; i < coarse.P.size(); ++i) {
    if (coarse.P.t(i) < margin || coarse.P.t(i) > 1 - margin) continue;
    const int k = match(fine.P, coarse.P.sigma(i));
    accumulate(coarse.P.Tp(i), coarse.p(i), fine.p(k), num, den, mx, bmax);
    ++c.p_points;
  }
  c.p_l2 = ratio(num, den);
  c.p_max = bmax > 0 ? mx / bmax : mx;
  num = den = mx = bmax = 0;
  for (int i = 0; i < coarse.F.size(); ++i) {
    if (coarse.F.t(i) < margin || coarse.F.t(i) > (1 - margin) * L) continue;
    const int k = match(fine.F, coarse.F.sigma(i));
    accumulate(coarse.F.Tp(i), coarse.psi(i), fine.psi(k), num, den, mx, bmax);
    ++c.f_points;
  }
  c.f_l2 = ratio(num, den);
  c.f_max = bmax > 0 ? mx / bmax : mx;
  return c;
}

template <typename Real>
SystemResidual<Real> system_residual(const KernelTable<Real>& k, const LoadSpec<Real>& loads,
                                     const Rigidity<Real>& rig,
                                     const std::function<Real(Real)>& p_of_sigma,
                                     const std::function<Real(Real)>& psi_of_y, int n_each,
                                     Real h) {
  const auto P = make_sinc_map(SincKind::Unit, Real(-20), Real(30), h);
  const auto F = make_sinc_map(SincKind::Exp, Real(-20), Real(12), h);
  const Blocks<Real> b = build_blocks(k, rig, P, F);
  Vec<Real> rho(P.size()), rhof(F.size());
  for (int i = 0; i < P.size(); ++i) rho(i) = p_of_sigma(P.sigma(i)) * P.Tp(i);
  for (int i = 0; i < F.size(); ++i) rhof(i) = psi_of_y(F.t(i)) * F.Tp(i);

  auto nearest = [](const Vec<Real>& t, Real target) {
    Eigen::Index best = 0;
    (t.array() - target).abs().minCoeff(&best);
    return int(best);
  };
  std::vector<int> prow, frow;
  for (int i = 0; i < n_each; ++i) {
    const Real fr = n_each > 1 ? Real(i) / Real(n_each - 1) : Real(0);
    const int jp = nearest(P.t, Real(0.05) + Real(0.9) * fr);
    const int jf = nearest(F.t, Real(0.05) * std::pow(Real(100), fr));
    if (std::find(prow.begin(), prow.end(), jp) == prow.end()) prow.push_back(jp);
    if (std::find(frow.begin(), frow.end(), jf) == frow.end()) frow.push_back(jf);
  }

  SystemResidual<Real> out;
  std::vector<Real> lhs(prow.size()), scale(prow.size());
  Real csum = 0;
  for (size_t r = 0; r < prow.size(); ++r) {
    const int j = prow[r];
    const Real a = b.K1.row(j).dot(rho), bb = b.R2.row(j).dot(rhof), c = -b.Wb.row(j).dot(rho);
    const Real d = -rig.load_integral(loads.p0, P.t(j));
    lhs[r] = a + bb + c - d;
    scale[r] = std::max({std::abs(a), std::abs(bb), std::abs(c), std::abs(d)});
    csum += lhs[r];
  }
  out.C = csum / Real(prow.size());
  for (size_t r = 0; r < prow.size(); ++r) {
    const Real s = std::max(scale[r], std::abs(out.C));
    if (s > 0) out.inclusion = std::max(out.inclusion, std::abs(lhs[r] - out.C) / s);
  }
  for (int j : frow) {
    const Real e = -b.K2.row(j).dot(rhof), g = b.R3.row(j).dot(rho), q = loads.q0_at(F.t(j));
    const Real s = std::max({std::abs(e), std::abs(g), std::abs(q)});
    if (s > 0) out.crack = std::max(out.crack, std::abs(e + g - q) / s);
  }
  out.points = int(prow.size() + frow.size());
  return out;
}

template struct SincMap<double>;
template SincMap<double> make_sinc_map(SincKind, double, double, double);
template struct Rigidity<double>;
template CollocationProblem<double> assemble_collocation(const KernelTable<double>&,
                                                         const LoadSpec<double>&,
                                                         const Rigidity<double>&,
                                                         const OracleConfig<double>&);
template OracleSolution<double> solve_collocation(const CollocationProblem<double>&,
                                                  const LoadSpec<double>&, double);
template OracleComparison<double> compare_with_fields(const OracleSolution<double>&,
                                                      const FieldEvaluator<double>&, double,
                                                      double);
template OracleComparison<double> compare_oracles(const OracleSolution<double>&,
                                                  const OracleSolution<double>&, double, double);
template SystemResidual<double> system_residual(const KernelTable<double>&,
                                                const LoadSpec<double>&, const Rigidity<double>&,
                                                const std::function<double(double)>&,
                                                const std::function<double(double)>&, int,
                                                double);

}  // namespace pzc
