// Piezoelectric material constants, operator coefficients, characteristic
// roots and modal coefficient vectors of one half-plane.
#pragma once

#include "pzc/common.hpp"

#include <string>
#include <vector>

namespace pzc {

/// Raw constants of a transversely isotropic piezoelectric (poling along y).
/// Compliances in 1/Pa, piezoelectric moduli in m/V, permittivities in F/m.
template <typename Real>
struct MaterialConstants {
  Real s11{}, s12{}, s13{}, s33{}, s44{};
  Real d13{}, d15{}, d33{};
  Real eps11{}, eps33{};

  template <typename Other>
  MaterialConstants<Other> cast() const {
    return {Other(s11), Other(s12), Other(s13), Other(s33), Other(s44),
            Other(d13), Other(d15), Other(d33), Other(eps11), Other(eps33)};
  }
};

/// Which form of the c2 characteristic coefficient to use.
///
/// `Squared` uses a10 a22 + a12 a20 - a21^2, which is dimensionally consistent
/// with c0 and c1.  `Literal` reproduces the printed a10 a22 + a12 a20 - a21.
enum class C2Form { Squared, Literal };

/// Derived operator coefficients and the characteristic-polynomial
/// coefficients.  The characteristic polynomial in mu is
/// c0 mu^6 + c1 mu^4 + c2 mu^2 + c3.
template <typename Real>
struct OperatorCoefficients {
  Real a10{}, a12{}, a14{}, a20{}, a21{}, a22{}, a23{};
  Real c0{}, c1{}, c2{}, c3{};
};

/// Roots mu_k = i beta_k together with the two independent root finders'
/// results (companion-matrix eigenvalues and Newton-polished values).
template <typename Real>
struct CharacteristicRoots {
  Vec3<Real> beta;             ///< Newton-polished, ascending
  Vec3<Real> beta_companion;   ///< raw companion-matrix estimate, ascending
  Real max_residual{};         ///< max |P(i beta_k)| / max|c_i|
};

/// Modal coefficients per root: gamma, lambda, p, q, r.
template <typename Real>
struct ModalBasis {
  Vec3<Real> beta;
  CVec3<Real> gamma, lambda, p, q, r;
};

/// Violations of the MaterialConstants invariants; empty when valid.
template <typename Real>
std::vector<std::string> check_material(const MaterialConstants<Real>& m);

/// Operator coefficients a.. and characteristic coefficients c0..c3.
/// Throws Error{"material_model", "InvalidMaterial"} when invariants fail.
template <typename Real>
OperatorCoefficients<Real> derive_coefficients(const MaterialConstants<Real>& m,
                                               C2Form form = C2Form::Squared);

/// Characteristic polynomial c0 mu^6 + c1 mu^4 + c2 mu^2 + c3 at complex mu.
template <typename Real>
Complex<Real> characteristic_polynomial(const OperatorCoefficients<Real>& c, Complex<Real> mu);

/// Solve the cubic in w = mu^2 by companion-matrix eigenvalues and polish each
/// beta by Newton iteration on the sextic.
/// Errors: ComplexRoots (some mu^2 not real negative), RepeatedRoots (two beta
/// closer than distinct_tol * max beta).
template <typename Real>
CharacteristicRoots<Real> solve_characteristic(const OperatorCoefficients<Real>& c,
                                               Real distinct_tol = Real(1e-6));

/// Modal vectors gamma, lambda, p, q, r for the given roots.
/// Error: DegenerateRoot if some beta is not safely positive.
template <typename Real>
ModalBasis<Real> build_modal_basis(const MaterialConstants<Real>& m,
                                   const OperatorCoefficients<Real>& c,
                                   const Vec3<Real>& beta);

/// derive_coefficients + solve_characteristic + build_modal_basis.
template <typename Real>
ModalBasis<Real> modal_basis(const MaterialConstants<Real>& m, C2Form form = C2Form::Squared);

/// Handbook constants for a few common piezoceramics (PZT4, PZT5A, PZT5H,
/// PZT6B, PZT7A, BaTiO3).  Throws Error{"material_model","UnknownPreset"}.
MaterialConstants<double> material_preset(const std::string& name);

/// Names accepted by material_preset.
std::vector<std::string> material_preset_names();

/// Copy of `m` with all three piezoelectric moduli multiplied by `factor`.
template <typename Real>
MaterialConstants<Real> scale_piezo(MaterialConstants<Real> m, Real factor) {
  m.d13 *= factor;
  m.d15 *= factor;
  m.d33 *= factor;
  return m;
}

}  // namespace pzc
