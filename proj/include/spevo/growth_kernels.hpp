#pragma once

#include "spevo/spectral.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace spevo {

/// A spectral transformation X f(Lambda) X^T.
///
///  - triangle closing: f(l) = l^2 (counts 2-paths, A^2)
///  - exponential:      f(l) = exp(alpha l), alpha >= 0
///  - Neumann:          f(l) = 1 / (1 - alpha l), 0 < alpha < 1/|l_1|
///
/// An unset alpha is resolved against the spectrum it is applied to:
/// 1/|l_1| for the exponential kernel and 0.5/|l_1| for Neumann.
struct SpectralTransform {
  enum class Kind { triangle_closing, exponential, neumann };

  Kind kind = Kind::triangle_closing;
  std::optional<double> alpha;

  static SpectralTransform triangle() { return {Kind::triangle_closing, std::nullopt}; }
  static SpectralTransform exponential(std::optional<double> alpha = std::nullopt) {
    return {Kind::exponential, alpha};
  }
  static SpectralTransform neumann(std::optional<double> alpha = std::nullopt) {
    return {Kind::neumann, alpha};
  }

  /// Parses `triangle`, `exp:<alpha|auto>` or `neumann:<alpha|auto>`.
  static SpectralTransform parse(std::string_view spec);
  std::string to_string() const;

  // Alpha that apply() will use for this spectrum. Throws DomainError when
  // the spectrum is zero and alpha is auto.
  double resolved_alpha(const SpectralDecomposition& d) const;

  friend bool operator==(const SpectralTransform&, const SpectralTransform&) = default;
};

/// True iff 0 < alpha and alpha * max|lambda| < 1.
bool validate_neumann_alpha(const SpectralDecomposition& d, double alpha);

/// Transformed spectrum f(Lambda), checked against the kernel's domain.
/// Throws DomainError for a negative alpha or a Neumann alpha with
/// alpha * |l_1| >= 1 (alpha = 0 is accepted and yields the identity), and
/// NumericalError when alpha * l_1 > 700 for the exponential kernel.
Vector transform_spectrum(const SpectralDecomposition& d, const SpectralTransform& f);

/// X f(Lambda) X^T.
Matrix apply_transform(const SpectralDecomposition& d, const SpectralTransform& f);

}  // namespace spevo
