// Shared type aliases, constants and the error type used by every module.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pzc {

template <typename Real> using Complex = std::complex<Real>;

template <typename Real> using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <typename Real> using CVec = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real> using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real> using CMat = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real> using Vec3 = Eigen::Matrix<Real, 3, 1>;
template <typename Real> using CVec3 = Eigen::Matrix<std::complex<Real>, 3, 1>;
template <typename Real> using Mat3 = Eigen::Matrix<Real, 3, 3>;
template <typename Real> using CMat3 = Eigen::Matrix<std::complex<Real>, 3, 3>;
template <typename Real> using Mat6 = Eigen::Matrix<Real, 6, 6>;
template <typename Real> using CMat6 = Eigen::Matrix<std::complex<Real>, 6, 6>;

template <typename Real> inline constexpr Real kPi = std::numbers::pi_v<Real>;

/// Vacuum permittivity (F/m), used by the material presets.
inline constexpr double kEps0 = 8.854e-12;

/// Error raised by any module.
///
/// `module()` names the pipeline stage and `category()` is a stable,
/// machine-readable tag (for example "ComplexRoots" or "IndexNonzero") that the
/// command-line runner copies into diagnostics.json.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string category, const std::string& detail)
      : std::runtime_error(module + "/" + category + ": " + detail),
        module_(std::move(module)),
        category_(std::move(category)),
        detail_(detail) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& category() const noexcept { return category_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string module_;
  std::string category_;
  std::string detail_;
};

}  // namespace pzc
