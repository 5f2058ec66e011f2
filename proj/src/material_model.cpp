#include "pzc/material_model.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace pzc {

template <typename Real>
std::vector<std::string> check_material(const MaterialConstants<Real>& m) {
  std::vector<std::string> v;
  auto need = [&v](bool ok, const char* what) {
    if (!ok) v.emplace_back(what);
  };
  need(std::isfinite(double(m.s11 + m.s12 + m.s13 + m.s33 + m.s44 + m.d13 + m.d15 + m.d33 +
                            m.eps11 + m.eps33)),
       "all constants must be finite");
  need(m.s11 > 0, "s11 > 0");
  need(m.s33 > 0, "s33 > 0");
  need(m.s44 > 0, "s44 > 0");
  need(m.s11 * m.s33 - m.s13 * m.s13 > 0, "s11*s33 - s13^2 > 0");
  need(m.eps11 > 0, "eps11 > 0");
  need(m.eps33 > 0, "eps33 > 0");
  return v;
}

template <typename Real>
OperatorCoefficients<Real> derive_coefficients(const MaterialConstants<Real>& m, C2Form form) {
  const auto violations = check_material(m);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "material invariant violated:";
    for (const auto& s : violations) os << " [" << s << "]";
    throw Error("material_model", "InvalidMaterial", os.str());
  }
  OperatorCoefficients<Real> c;
  c.a10 = m.s33 - m.s13 * m.s13 / m.s11;
  c.a12 = m.s44 + 2 * m.s13 * (1 - m.s12 / m.s11);
  c.a14 = m.s11 - m.s12 * m.s12 / m.s11;
  c.a21 = m.s13 * m.d13 / m.s11 - m.d33 + m.d15;
  c.a23 = m.d13 * (m.s12 / m.s11 - 1);
  c.a20 = m.eps11;
  c.a22 = m.eps33 - m.d13 * m.d13 / m.s11;

  c.c0 = c.a14 * c.a22 - c.a23 * c.a23;
  c.c1 = c.a12 * c.a22 + c.a14 * c.a20 - 2 * c.a21 * c.a23;
  c.c2 = c.a10 * c.a22 + c.a12 * c.a20 - (form == C2Form::Squared ? c.a21 * c.a21 : c.a21);
  c.c3 = c.a10 * c.a20;
  return c;
}

template <typename Real>
Complex<Real> characteristic_polynomial(const OperatorCoefficients<Real>& c, Complex<Real> mu) {
  const Complex<Real> w = mu * mu;
  return ((c.c0 * w + c.c1) * w + c.c2) * w + c.c3;
}

template <typename Real>
CharacteristicRoots<Real> solve_characteristic(const OperatorCoefficients<Real>& c,
                                               Real distinct_tol) {
  using std::abs;
  const Real cmax = std::max({abs(c.c0), abs(c.c1), abs(c.c2), abs(c.c3)});
  if (!(abs(c.c0) > cmax * Real(1e-14)))
    throw Error("material_model", "DegenerateCharacteristic", "leading coefficient c0 vanishes");

  // Companion matrix of w^3 + (c1/c0) w^2 + (c2/c0) w + c3/c0.
  Mat3<Real> comp = Mat3<Real>::Zero();
  comp(0, 0) = -c.c1 / c.c0;
  comp(0, 1) = -c.c2 / c.c0;
  comp(0, 2) = -c.c3 / c.c0;
  comp(1, 0) = 1;
  comp(2, 1) = 1;
  Eigen::EigenSolver<Mat3<Real>> es(comp, false);
  const auto w = es.eigenvalues();

  CharacteristicRoots<Real> out;
  for (int k = 0; k < 3; ++k) {
    const Real re = w(k).real(), im = w(k).imag();
    if (!(re < 0) || abs(im) > Real(1e-8) * abs(w(k))) {
      std::ostringstream os;
      os << "root mu^2 = " << double(re) << (im >= 0 ? "+" : "") << double(im)
         << "i is not real negative; only purely imaginary mu = i*beta is supported";
      throw Error("material_model", "ComplexRoots", os.str());
    }
    out.beta_companion(k) = std::sqrt(-re);
  }
  std::sort(out.beta_companion.data(), out.beta_companion.data() + 3);

  // Newton polish on the sextic restricted to mu = i beta:
  // f(beta) = -c0 beta^6 + c1 beta^4 - c2 beta^2 + c3.
  out.beta = out.beta_companion;
  auto f = [&c](Real b) {
    const Real b2 = b * b;
    return ((-c.c0 * b2 + c.c1) * b2 - c.c2) * b2 + c.c3;
  };
  auto df = [&c](Real b) {
    const Real b2 = b * b;
    return ((-6 * c.c0 * b2 + 4 * c.c1) * b2 - 2 * c.c2) * b;
  };
  for (int k = 0; k < 3; ++k) {
    Real b = out.beta(k);
    for (int it = 0; it < 8; ++it) {
      const Real d = df(b);
      if (d == 0) break;
      const Real step = f(b) / d;
      b -= step;
      if (abs(step) <= std::numeric_limits<Real>::epsilon() * abs(b)) break;
    }
    out.beta(k) = b;
  }
  std::sort(out.beta.data(), out.beta.data() + 3);

  out.max_residual = 0;
  for (int k = 0; k < 3; ++k)
    out.max_residual = std::max(out.max_residual, abs(f(out.beta(k))) / cmax);

  const Real bmax = out.beta(2);
  for (int k = 0; k < 2; ++k) {
    if (out.beta(k + 1) - out.beta(k) < distinct_tol * bmax) {
      std::ostringstream os;
      os << "beta_" << k + 1 << " = " << double(out.beta(k)) << " and beta_" << k + 2 << " = "
         << double(out.beta(k + 1)) << " are not distinct";
      throw Error("material_model", "RepeatedRoots", os.str());
    }
  }
  return out;
}

template <typename Real>
ModalBasis<Real> build_modal_basis(const MaterialConstants<Real>& m,
                                   const OperatorCoefficients<Real>& c, const Vec3<Real>& beta) {
  ModalBasis<Real> mb;
  mb.beta = beta;
  const Real half_a = (c.a12 - m.s44) / 2;
  for (int k = 0; k < 3; ++k) {
    if (!(beta(k) > std::numeric_limits<Real>::epsilon() * 1e3))
      throw Error("material_model", "DegenerateRoot",
                  "beta_" + std::to_string(k + 1) + " is not positive; 1/mu terms undefined");
    const Complex<Real> mu(0, beta(k));
    const Complex<Real> g = c.a20 + c.a22 * mu * mu;
    const Complex<Real> lam = c.a21 * mu + c.a23 * mu * mu * mu;
    mb.gamma(k) = g;
    mb.lambda(k) = lam;
    mb.p(k) = c.a14 * g * mu * mu + half_a * g - c.a23 * lam * mu;
    mb.q(k) = half_a * g * mu + c.a10 * g / mu - (c.a21 - m.d15) * lam;
    mb.r(k) = c.a20 * lam / mu - m.d15 * g;
  }
  return mb;
}

template <typename Real>
ModalBasis<Real> modal_basis(const MaterialConstants<Real>& m, C2Form form) {
  const auto c = derive_coefficients(m, form);
  const auto roots = solve_characteristic(c);
  return build_modal_basis(m, c, roots.beta);
}

namespace {
struct PresetRow {
  double s11, s12, s13, s33, s44, d13, d33, d15, k11, k33;
};
const std::map<std::string, PresetRow>& preset_table() {
  // Compliances in 1e-12 1/Pa, moduli in 1e-12 m/V, relative permittivities.
  static const std::map<std::string, PresetRow> table = {
      {"PZT4", {12.3, -4.05, -5.31, 15.5, 39.0, -123, 289, 496, 1475, 1300}},
      {"PZT5H", {16.5, -4.78, -8.45, 20.7, 43.5, -274, 593, 741, 3130, 3400}},
      {"PZT5A", {16.4, -5.74, -7.22, 18.8, 47.5, -171, 374, 584, 1730, 1700}},
      {"BaTiO3", {8.05, -2.35, -5.24, 15.7, 18.4, -78, 190, 260, 1970, 1700}},
      {"PZT7A", {10.7, -3.2, -4.6, 13.9, 39.5, -60, 150, 360, 840, 425}},
      {"PZT6B", {9.0, -2.7, -3.3, 9.9, 23.6, -27, 71, 130, 475, 460}},
  };
  return table;
}
}  // namespace

MaterialConstants<double> material_preset(const std::string& name) {
  const auto& t = preset_table();
  const auto it = t.find(name);
  if (it == t.end()) throw Error("material_model", "UnknownPreset", "no preset named '" + name + "'");
  const PresetRow& r = it->second;
  MaterialConstants<double> m;
  m.s11 = r.s11 * 1e-12;
  m.s12 = r.s12 * 1e-12;
  m.s13 = r.s13 * 1e-12;
  m.s33 = r.s33 * 1e-12;
  m.s44 = r.s44 * 1e-12;
  m.d13 = r.d13 * 1e-12;
  m.d33 = r.d33 * 1e-12;
  m.d15 = r.d15 * 1e-12;
  m.eps11 = r.k11 * kEps0;
  m.eps33 = r.k33 * kEps0;
  return m;
}

std::vector<std::string> material_preset_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : preset_table()) names.push_back(k);
  return names;
}

#define PZC_INSTANTIATE(Real)                                                                    \
  template std::vector<std::string> check_material(const MaterialConstants<Real>&);              \
  template OperatorCoefficients<Real> derive_coefficients(const MaterialConstants<Real>&, C2Form); \
  template Complex<Real> characteristic_polynomial(const OperatorCoefficients<Real>&,             \
                                                   Complex<Real>);                               \
  template CharacteristicRoots<Real> solve_characteristic(const OperatorCoefficients<Real>&, Real); \
  template ModalBasis<Real> build_modal_basis(const MaterialConstants<Real>&,                    \
                                              const OperatorCoefficients<Real>&,                 \
                                              const Vec3<Real>&);                                \
  template ModalBasis<Real> modal_basis(const MaterialConstants<Real>&, C2Form);

PZC_INSTANTIATE(double)
PZC_INSTANTIATE(long double)
#undef PZC_INSTANTIATE

}  // namespace pzc
