#pragma once

#include <cmath>
#include <complex>
#include <string_view>

#include "dyft/error.hpp"

namespace dyft {

using Complex = std::complex<double>;

/// Fractal order alpha in (0, 1].
class FractalOrder {
 public:
  explicit FractalOrder(double alpha);

  [[nodiscard]] double value() const noexcept { return alpha_; }

  friend bool operator==(FractalOrder, FractalOrder) = default;

 private:
  double alpha_;
};

/// Reading of the fractal imaginary unit in the oscillatory kernel.
///
/// ConjugatePair: forward argument (-i)^a t^a = e^{-i pi a/2} t^a, inverse
/// e^{+i pi a/2} t^a, so the two kernels are complex conjugates.
/// NegatedPrincipal: forward argument -(i^a) t^a = -e^{+i pi a/2} t^a, inverse
/// as in ConjugatePair. Both reduce to exp(-/+ i t) at a = 1.
enum class KernelConvention { ConjugatePair, NegatedPrincipal };

enum class Direction { Forward, Inverse };

[[nodiscard]] std::string_view to_string(KernelConvention c) noexcept;
[[nodiscard]] std::string_view to_string(Direction d) noexcept;

/// Parses "conjugate-pair" / "negated-principal". Throws DomainError otherwise.
[[nodiscard]] KernelConvention parse_convention(std::string_view text);

/// Controls Mittag-Leffler series evaluation.
struct MLConfig {
  /// Relative termination tolerance on the current term.
  double rel_tol = 1e-15;
  int max_terms = 4000;
  /// Largest admissible |z|.
  double magnitude_guard = 400.0;
  /// Largest working precision the cancellation control may request.
  int max_precision_bits = 4096;

  /// Throws DomainError when a field violates its constraint.
  void validate() const;

  friend bool operator==(const MLConfig&, const MLConfig&) = default;
};

/// True when both components are finite.
[[nodiscard]] inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace dyft
