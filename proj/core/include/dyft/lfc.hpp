#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dyft/types.hpp"

/// Local fractional integral sums and the sampled discrete-approximation
/// model: coefficients f_k (dt)^a on a natural window with zero or periodic
/// extension.
namespace dyft::lfc {

/// Strictly increasing, finite points t_0 < ... < t_N (N >= 1 intervals).
class Partition {
 public:
  explicit Partition(std::vector<double> points);

  /// n equal intervals on [a, b].
  [[nodiscard]] static Partition uniform(double a, double b, std::size_t n);

  [[nodiscard]] std::span<const double> points() const noexcept {
    return points_;
  }
  [[nodiscard]] std::size_t interval_count() const noexcept {
    return points_.size() - 1;
  }
  [[nodiscard]] double width(std::size_t j) const {
    return points_.at(j + 1) - points_.at(j);
  }

 private:
  std::vector<double> points_;
};

/// N >= 1 finite complex samples with uniform spacing dt > 0.
class SampledSignal {
 public:
  SampledSignal(std::vector<Complex> values, double dt);

  [[nodiscard]] std::span<const Complex> values() const noexcept {
    return values_;
  }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double dt() const noexcept { return dt_; }

 private:
  std::vector<Complex> values_;
  double dt_;
};

enum class Extension { Zero, Periodic };

/// Coefficients f~_k = f_k (dt)^a of a sampled signal.
class DiscreteApproximation {
 public:
  [[nodiscard]] std::span<const Complex> coeffs() const noexcept {
    return coeffs_;
  }
  [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
  [[nodiscard]] double dt() const noexcept { return dt_; }
  [[nodiscard]] FractalOrder order() const noexcept { return order_; }
  [[nodiscard]] Extension extension() const noexcept { return extension_; }

 private:
  friend DiscreteApproximation build_discrete_approximation(
      const SampledSignal&, FractalOrder, Extension);

  DiscreteApproximation(std::vector<Complex> coeffs, double dt,
                        FractalOrder order, Extension extension)
      : coeffs_(std::move(coeffs)),
        dt_(dt),
        order_(order),
        extension_(extension) {}

  std::vector<Complex> coeffs_;
  double dt_;
  FractalOrder order_;
  Extension extension_;
};

/// The window (-dt/2, (2N-1)dt/2) holding one period T = N dt.
struct NaturalWindow {
  double lo;
  double hi;
  double period;
};

/// (1 / Gamma(1 + a)) * sum_j values[j] * (t_{j+1} - t_j)^a over a fixed
/// partition, sampling at left endpoints. No refinement limit is taken.
/// Throws MismatchError unless values.size() == partition.interval_count().
[[nodiscard]] Complex lfi_quadrature(std::span<const Complex> values,
                                     const Partition& partition,
                                     FractalOrder order);

[[nodiscard]] DiscreteApproximation build_discrete_approximation(
    const SampledSignal& signal, FractalOrder order,
    Extension extension = Extension::Periodic);

/// Zero extension: coeffs[k] inside [0, N), else 0. Periodic: coeffs[k mod N]
/// with a nonnegative modulus.
[[nodiscard]] Complex coefficient_at(const DiscreteApproximation& approx,
                                     std::int64_t k) noexcept;

[[nodiscard]] NaturalWindow natural_window(std::size_t n, double dt);

/// Pairing of the approximation against a test function sampled at the
/// nodes k dt: (1 / Gamma(1 + a)) * sum_k coeffs[k] * phi[k].
[[nodiscard]] Complex windowed_pairing(const DiscreteApproximation& approx,
                                       std::span<const Complex> phi_at_nodes,
                                       FractalOrder order);

}  // namespace dyft::lfc
