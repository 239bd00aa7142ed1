#pragma once

#include <cmath>
#include <complex>

namespace dyft {

/// Neumaier-compensated accumulator. Unlike plain Kahan it stays accurate
/// when an addend is larger in magnitude than the running sum.
template <typename T>
class BasicNeumaierSum {
 public:
  void add(T value) noexcept {
    const T t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  BasicNeumaierSum& operator+=(T value) noexcept {
    add(value);
    return *this;
  }

  [[nodiscard]] T value() const noexcept { return sum_ + compensation_; }

 private:
  T sum_ = 0;
  T compensation_ = 0;
};

/// Componentwise compensated sum of complex values.
template <typename T>
class BasicComplexNeumaierSum {
 public:
  BasicComplexNeumaierSum& operator+=(std::complex<T> value) noexcept {
    re_.add(value.real());
    im_.add(value.imag());
    return *this;
  }

  [[nodiscard]] std::complex<T> value() const noexcept {
    return {re_.value(), im_.value()};
  }

 private:
  BasicNeumaierSum<T> re_;
  BasicNeumaierSum<T> im_;
};

using NeumaierSum = BasicNeumaierSum<double>;
using ComplexNeumaierSum = BasicComplexNeumaierSum<double>;

}  // namespace dyft
