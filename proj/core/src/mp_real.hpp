#pragma once

#include <mpfr.h>

#include <cmath>
#include <limits>
#include <utility>

namespace dyft::detail {

/// Owning MPFR value with a fixed precision.
class MpReal {
 public:
  explicit MpReal(mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
  }

  MpReal(mpfr_prec_t precision, double x) : MpReal(precision) {
    mpfr_set_d(value_, x, MPFR_RNDN);
  }

  MpReal(const MpReal& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }

  MpReal(MpReal&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
  }

  MpReal& operator=(const MpReal& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }

  MpReal& operator=(MpReal&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }

  ~MpReal() { mpfr_clear(value_); }

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }

  [[nodiscard]] double to_double() const noexcept {
    return mpfr_get_d(value_, MPFR_RNDN);
  }

  /// log2 |x|, -inf for zero. Never overflows.
  [[nodiscard]] double log2_abs() const noexcept { return log2_abs(value_); }

  static double log2_abs(mpfr_srcptr x) noexcept {
    if (mpfr_zero_p(x)) return -std::numeric_limits<double>::infinity();
    long exponent = 0;
    const double mantissa = mpfr_get_d_2exp(&exponent, x, MPFR_RNDN);
    return static_cast<double>(exponent) + std::log2(std::abs(mantissa));
  }

 private:
  mpfr_t value_;
};

/// log2 |re + i im| without overflow.
inline double log2_hypot(const MpReal& re, const MpReal& im) noexcept {
  const double a = re.log2_abs();
  const double b = im.log2_abs();
  const double hi = std::max(a, b);
  if (hi == -std::numeric_limits<double>::infinity()) return hi;
  const double lo = std::min(a, b);
  return hi + 0.5 * std::log2(1.0 + std::exp2(2.0 * (lo - hi)));
}

}  // namespace dyft::detail
