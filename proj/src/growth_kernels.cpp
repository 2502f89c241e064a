#include "spevo/growth_kernels.hpp"

#include "spevo/error.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace spevo {

namespace {

std::optional<double> parse_alpha(std::string_view text, std::string_view spec) {
  if (text == "auto") return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw DomainError("bad alpha in transform spec '" + std::string(spec) + "'");
  }
  if (value < 0.0) {
    throw DomainError("negative alpha in transform spec '" + std::string(spec) + "'");
  }
  return value;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

SpectralTransform SpectralTransform::parse(std::string_view spec) {
  if (spec == "triangle") return triangle();
  const auto colon = spec.find(':');
  const auto head = spec.substr(0, colon);
  const auto tail = colon == std::string_view::npos ? std::string_view("auto") : spec.substr(colon + 1);
  if (head == "exp") return exponential(parse_alpha(tail, spec));
  if (head == "neumann") return neumann(parse_alpha(tail, spec));
  throw DomainError("unknown transform '" + std::string(spec) +
                    "' (expected triangle, exp:<alpha|auto>, neumann:<alpha|auto>)");
}

std::string SpectralTransform::to_string() const {
  switch (kind) {
    case Kind::triangle_closing:
      return "triangle";
    case Kind::exponential:
      return "exp:" + (alpha ? format_double(*alpha) : std::string("auto"));
    case Kind::neumann:
      return "neumann:" + (alpha ? format_double(*alpha) : std::string("auto"));
  }
  return {};
}

double SpectralTransform::resolved_alpha(const SpectralDecomposition& d) const {
  if (kind == Kind::triangle_closing) return 0.0;
  if (alpha) return *alpha;
  const double radius = d.spectral_radius();
  if (radius <= kZeroTolerance) {
    throw DomainError("automatic alpha is undefined for a zero spectrum");
  }
  return kind == Kind::exponential ? 1.0 / radius : 0.5 / radius;
}

bool validate_neumann_alpha(const SpectralDecomposition& d, double alpha) {
  return alpha > 0.0 && alpha * d.spectral_radius() < 1.0;
}

Vector transform_spectrum(const SpectralDecomposition& d, const SpectralTransform& f) {
  const Vector& lambda = d.eigenvalues;
  switch (f.kind) {
    case SpectralTransform::Kind::triangle_closing:
      return lambda.array().square();
    case SpectralTransform::Kind::exponential: {
      const double alpha = f.resolved_alpha(d);
      if (alpha < 0.0) throw DomainError("exponential kernel needs alpha >= 0");
      const double top = lambda.size() == 0 ? 0.0 : lambda.maxCoeff();
      if (alpha * top > 700.0) {
        throw NumericalError("exponential kernel overflows: alpha * lambda_max = " +
                             format_double(alpha * top) + " > 700");
      }
      return (alpha * lambda.array()).exp();
    }
    case SpectralTransform::Kind::neumann: {
      const double alpha = f.resolved_alpha(d);
      const double radius = d.spectral_radius();
      if (alpha < 0.0 || alpha * radius >= 1.0) {
        throw DomainError("Neumann kernel needs 0 < alpha < 1/|lambda_1| = " +
                          format_double(radius > 0.0 ? 1.0 / radius : INFINITY) + ", got " +
                          format_double(alpha));
      }
      return (1.0 - alpha * lambda.array()).inverse();
    }
  }
  return lambda;
}

Matrix apply_transform(const SpectralDecomposition& d, const SpectralTransform& f) {
  return reconstruct(d.eigenvectors, transform_spectrum(d, f));
}

}  // namespace spevo
