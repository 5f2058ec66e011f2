#include "pzc/field_recovery.hpp"

#include <Eigen/QR>

#include <cmath>
#include <sstream>

namespace pzc {

template <typename Real>
MellinInverter<Real>::MellinInverter(const SinhPanelGrid<Real>& grid, Real c,
                                     const CVec<Real>& samples, const InversionConfig<Real>& cfg,
                                     int model_terms)
    : c_(c) {
  using C = Complex<Real>;
  const int n = grid.size();
  const Vec<Real>& t = grid.t();
  const Real S = grid.S();

  // Model fit on the window fit_min < |t| < fit_max_frac * S.
  std::vector<int> sel;
  for (int i = 0; i < n; ++i) {
    const Real a = std::abs(t(i));
    if (a > cfg.fit_min && a < cfg.fit_max_frac * S) sel.push_back(i);
  }
  if (model_terms > 0 && int(sel.size()) < 4 * model_terms)
    throw Error("field_recovery", "InversionSetup",
                "too few grid nodes in the model-fit window; increase the truncation S");
  coef_ = CVec<Real>::Zero(std::max(model_terms, 0));
  CVec<Real> rem = samples;
  if (model_terms > 0 && samples.cwiseAbs().maxCoeff() > 0) {
    CMat<Real> B(sel.size(), model_terms);
    for (size_t r = 0; r < sel.size(); ++r) {
      const C w(c, t(sel[r]));
      for (int k = 1; k <= model_terms; ++k) B(r, k - 1) = std::pow(w + Real(1), -Real(k) / 2);
    }
    Vec<Real> scale(model_terms);
    for (int k = 0; k < model_terms; ++k) {
      scale(k) = B.col(k).norm();
      B.col(k) /= scale(k);
    }
    CVec<Real> rhs(sel.size());
    for (size_t r = 0; r < sel.size(); ++r) rhs(r) = samples(sel[r]);
    coef_ = B.colPivHouseholderQr().solve(rhs);
    for (int k = 0; k < model_terms; ++k) coef_(k) /= scale(k);
    for (int i = 0; i < n; ++i) {
      const C w(c, t(i));
      C m(0);
      for (int k = 1; k <= model_terms; ++k) m += coef_(k - 1) * std::pow(w + Real(1), -Real(k) / 2);
      rem(i) -= m;
    }
  }
  inv_gamma_.resize(std::max(model_terms, 0));
  for (int k = 1; k <= model_terms; ++k) inv_gamma_[k - 1] = 1 / std::tgamma(Real(k) / 2);

  // Remainder on the fine uniform grid, trapezoid weights folded in.
  T_ = std::min(cfg.fine_T, S);
  const long m = long(std::llround(2 * T_ / cfg.fine_ds));
  ds_ = 2 * T_ / Real(m);
  const CMat<Real> pc = grid.panel_coefficients(rem);
  fine_.resize(m + 1);
  for (long j = 0; j <= m; ++j) {
    const Real s = -T_ + Real(j) * ds_;
    fine_(j) = grid.interpolate(pc, s) * ((j == 0 || j == m) ? ds_ / 2 : ds_);
  }
  tail_ = std::max(std::abs(grid.interpolate(pc, -T_)), std::abs(grid.interpolate(pc, T_)));
}

template <typename Real>
Real MellinInverter<Real>::at_log(Real lx) const {
  using C = Complex<Real>;
  if (fine_.size() == 0) return 0;
  // sum_j fine_j exp(-i s_j lx), s_j = -T + j ds, by a rotation recurrence
  // re-anchored every 256 steps.
  const C rot = std::polar(Real(1), -ds_ * lx);
  C acc(0), z;
  const Eigen::Index m = fine_.size();
  for (Eigen::Index j = 0; j < m; ++j) {
    if (j % 256 == 0) z = std::polar(Real(1), -(-T_ + Real(j) * ds_) * lx);
    acc += fine_(j) * z;
    z *= rot;
  }
  Real val = (std::exp(-c_ * lx) * acc).real() / (2 * kPi<Real>);
  if (lx < 0) {
    const Real x = std::exp(lx), v = -lx;
    C model(0);
    for (size_t k = 1; k <= inv_gamma_.size(); ++k)
      model += coef_(k - 1) * std::pow(v, Real(k) / 2 - 1) * inv_gamma_[k - 1];
    val += (x * model).real();
  }
  return val;
}

template <typename Real>
Real FieldEvaluator<Real>::p_sigma(Real sigma) const {
  const Real x = 1 / (1 + std::exp(-sigma));
  const Real lx = -std::log1p(std::exp(-sigma));
  return loads.p0_at(x) - u.at_log(lx);
}

template <typename Real>
FieldEvaluator<Real> make_field_evaluator(const RiemannSolution<Real>& rs,
                                          const LoadSpec<Real>& loads,
                                          const InversionConfig<Real>& cfg) {
  FieldEvaluator<Real> fe;
  fe.loads = loads;
  fe.u = MellinInverter<Real>(rs.data.grid, rs.data.contour, rs.U, cfg, cfg.model_terms);
  fe.psi = MellinInverter<Real>(rs.data.grid, rs.data.contour, rs.psihat, cfg, 0);
  return fe;
}

ExponentFit fit_power_law(const std::vector<double>& x, const std::vector<double>& v) {
  const int n = int(x.size());
  if (n < 3 || int(v.size()) != n)
    throw Error("field_recovery", "FitDegenerate", "need at least three samples for a fit");
  double sx = 0, sy = 0;
  std::vector<double> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(v[i]);
    if (!(a > 0) || !std::isfinite(a)) {
      std::ostringstream os;
      os << "field is zero or non-finite at " << x[i] << " inside the fit window";
      throw Error("field_recovery", "FitDegenerate", os.str());
    }
    lx[i] = std::log(std::abs(x[i]));
    ly[i] = std::log(a);
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  ExponentFit f;
  f.n = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0;
  for (int i = 0; i < n; ++i) {
    const double r = ly[i] - f.intercept - f.slope * lx[i];
    rss += r * r;
  }
  f.stderr_ = std::sqrt(rss / (n - 2) / sxx);
  return f;
}

template <typename Real>
std::pair<Real, Real> equilibrium_residuals(const FieldEvaluator<Real>& fe) {
  const Real h = Real(0.1);
  Real r0 = 0, r1 = 0;
  for (int j = -200; j <= 300; ++j) {
    const Real sigma = h * j;
    const Real x = 1 / (1 + std::exp(-sigma));
    const Real jac = x / (1 + std::exp(sigma));  // x (1 - x)
    const Real lx = -std::log1p(std::exp(-sigma));
    const Real d = -fe.u.at_log(lx);  // p - p0
    r0 += h * jac * d;
    r1 += h * jac * x * d;
  }
  return {r0, r1};
}

template <typename Real>
void fit_asymptotics(const FieldEvaluator<Real>& fe, const InversionConfig<Real>& cfg,
                     FieldSolution<Real>& out) {
  const int n = cfg.fit_nodes;
  std::vector<double> d(n), v0(n), v1(n), vc(n);
  const double a = std::log(double(cfg.fit_lo)), b = std::log(double(cfg.fit_hi));
  for (int i = 0; i < n; ++i) {
    d[i] = std::exp(a + (b - a) * i / (n - 1));
    v0[i] = double(fe.u(Real(d[i])));
    v1[i] = double(fe.u.at_log(std::log1p(-Real(d[i]))));
    vc[i] = double(fe.psi(Real(d[i])));
  }
  out.exp_at_0 = fit_power_law(d, v0);
  out.exp_at_1 = fit_power_law(d, v1);
  out.exp_crack = fit_power_law(d, vc);
  out.exponents_available = true;
}

template <typename Real>
FieldSolution<Real> recover_fields(const FieldEvaluator<Real>& fe,
                                   const InversionConfig<Real>& cfg) {
  FieldSolution<Real> fs;
  const int np = cfg.p_nodes;
  for (int i = 0; i < np; ++i) {
    const Real sigma = Real(-14) + Real(28) * i / Real(np - 1);
    const Real x = 1 / (1 + std::exp(-sigma));
    fs.x_nodes.push_back(x);
    fs.p_vals.push_back(fe.p_sigma(sigma));
    fs.p0_vals.push_back(fe.loads.p0_at(x));
  }
  const int nf = cfg.f_nodes;
  const Real la = std::log(Real(1e-6)), lb = std::log(cfg.crack_length);
  for (int i = nf - 1; i >= 0; --i) {
    const Real y = std::exp(la + (lb - la) * i / Real(nf - 1));
    fs.crack_nodes.push_back(-y);
    fs.f_vals.push_back(fe.psi(y));
  }
  const auto [r0, r1] = equilibrium_residuals(fe);
  fs.eq_residual_0 = r0;
  fs.eq_residual_1 = r1;
  fs.model_coefficients = fe.u.model_coefficients();
  if (!fe.loads.zero()) fit_asymptotics(fe, cfg, fs);
  return fs;
}

template class MellinInverter<double>;
template struct FieldEvaluator<double>;
template FieldEvaluator<double> make_field_evaluator(const RiemannSolution<double>&,
                                                    const LoadSpec<double>&,
                                                    const InversionConfig<double>&);
template std::pair<double, double> equilibrium_residuals(const FieldEvaluator<double>&);
template void fit_asymptotics(const FieldEvaluator<double>&, const InversionConfig<double>&,
                              FieldSolution<double>&);
template FieldSolution<double> recover_fields(const FieldEvaluator<double>&,
                                              const InversionConfig<double>&);

}  // namespace pzc
