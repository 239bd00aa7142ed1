#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "dyft/types.hpp"

namespace dyft::specfun {

/// Gamma function for 0 < x <= 171, relative error below 1e-12.
/// Throws DomainError for x <= 0 or non-finite x, OverflowError above 171.
[[nodiscard]] double gamma_pos(double x);

/// One-parameter Mittag-Leffler function E_a(z) = sum_j z^j / Gamma(1 + j a).
///
/// The series is summed in compensated double precision when the predicted
/// rounding error is small relative to the result; otherwise the sum is
/// redone in MPFR at a precision covering the peak term, and re-checked
/// against the magnitude of the result it produced.
///
/// Throws GuardExceeded when |z| > cfg.magnitude_guard or the required
/// precision exceeds cfg.max_precision_bits, NonConvergence when
/// cfg.max_terms is reached first.
[[nodiscard]] Complex mittag_leffler(FractalOrder order, Complex z,
                                     const MLConfig& cfg = {});

/// Argument angle of the kernel ray for a direction and convention.
[[nodiscard]] double kernel_phase(FractalOrder order, Direction direction,
                                  KernelConvention convention) noexcept;

/// E_a(e^{i phase} theta^a) with phase from kernel_phase().
/// Requires theta >= 0 and theta^a <= cfg.magnitude_guard.
[[nodiscard]] Complex fractal_kernel(
    FractalOrder order, Direction direction, double theta,
    KernelConvention convention = KernelConvention::ConjugatePair,
    const MLConfig& cfg = {});

/// Evaluates many kernel values along one ray with shared coefficient tables.
///
/// Construction fixes the working precision from max_theta and precomputes
/// 1/Gamma(1 + j a) and the phase factors e^{i j phase}; each evaluation is
/// then a real-power recurrence. Instances are immutable after construction
/// and may be shared between threads.
class KernelEvaluator {
 public:
  KernelEvaluator(FractalOrder order, Direction direction,
                  KernelConvention convention, double max_theta,
                  const MLConfig& cfg = {});
  ~KernelEvaluator();
  KernelEvaluator(KernelEvaluator&&) noexcept;
  KernelEvaluator& operator=(KernelEvaluator&&) noexcept;

  /// Kernel at a double-valued angle, 0 <= theta <= max_theta.
  [[nodiscard]] Complex operator()(double theta) const;

  /// Kernel at theta = 2 pi m / n with theta formed in working precision.
  [[nodiscard]] Complex at_fraction(std::uint64_t m, std::uint64_t n) const;

  [[nodiscard]] int precision_bits() const noexcept;
  [[nodiscard]] int table_terms() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// High-precision reference for E_a(z), carrying at least `digits`
/// significant digits. Intended for tests and diagnostics only.
/// Throws DomainError for digits < 30, NonConvergence past 10 * 4000 terms.
[[nodiscard]] Complex mittag_leffler_oracle(FractalOrder order, Complex z,
                                            int digits);

/// As mittag_leffler_oracle, returning decimal strings with `digits`
/// significant digits.
struct OracleDecimal {
  std::string re;
  std::string im;
  Complex value;
};
[[nodiscard]] OracleDecimal mittag_leffler_oracle_decimal(FractalOrder order,
                                                          Complex z,
                                                          int digits);

}  // namespace dyft::specfun
