#include "dyft/lfc.hpp"

#include <cmath>
#include <string>

#include "dyft/specfun.hpp"
#include "dyft/summation.hpp"

namespace dyft::lfc {

Partition::Partition(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw DomainError("partition needs at least two points");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) {
      throw DomainError("partition point " + std::to_string(i) +
                        " is not finite");
    }
    if (i > 0 && !(points_[i] > points_[i - 1])) {
      throw DomainError("partition points must be strictly increasing (at " +
                        std::to_string(i) + ")");
    }
  }
}

Partition Partition::uniform(double a, double b, std::size_t n) {
  if (n == 0) throw DomainError("uniform partition needs n >= 1");
  std::vector<double> points(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    points[j] = a + (b - a) * static_cast<double>(j) / static_cast<double>(n);
  }
  points[n] = b;
  return Partition(std::move(points));
}

SampledSignal::SampledSignal(std::vector<Complex> values, double dt)
    : values_(std::move(values)), dt_(dt) {
  if (values_.empty()) throw DomainError("sampled signal is empty");
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw DomainError("sample spacing must be positive and finite");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!is_finite(values_[k])) {
      throw DomainError("sample " + std::to_string(k) + " is not finite");
    }
  }
}

Complex lfi_quadrature(std::span<const Complex> values,
                       const Partition& partition, FractalOrder order) {
  if (values.size() != partition.interval_count()) {
    throw MismatchError("quadrature has " + std::to_string(values.size()) +
                        " values for " +
                        std::to_string(partition.interval_count()) +
                        " intervals");
  }
  const double alpha = order.value();
  ComplexNeumaierSum sum;
  for (std::size_t j = 0; j < values.size(); ++j) {
    sum += values[j] * std::pow(partition.width(j), alpha);
  }
  return sum.value() / specfun::gamma_pos(1.0 + alpha);
}

DiscreteApproximation build_discrete_approximation(const SampledSignal& signal,
                                                   FractalOrder order,
                                                   Extension extension) {
  const double scale = std::pow(signal.dt(), order.value());
  std::vector<Complex> coeffs;
  coeffs.reserve(signal.size());
  for (const Complex& f : signal.values()) coeffs.push_back(f * scale);
  return {std::move(coeffs), signal.dt(), order, extension};
}

Complex coefficient_at(const DiscreteApproximation& approx,
                       std::int64_t k) noexcept {
  const auto n = static_cast<std::int64_t>(approx.size());
  if (approx.extension() == Extension::Zero) {
    return (k >= 0 && k < n) ? approx.coeffs()[static_cast<std::size_t>(k)]
                             : Complex{};
  }
  const std::int64_t wrapped = ((k % n) + n) % n;
  return approx.coeffs()[static_cast<std::size_t>(wrapped)];
}

NaturalWindow natural_window(std::size_t n, double dt) {
  if (n == 0) throw DomainError("natural window needs N >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw DomainError("sample spacing must be positive and finite");
  }
  const double count = static_cast<double>(n);
  return {-dt / 2.0, (2.0 * count - 1.0) * dt / 2.0, count * dt};
}

Complex windowed_pairing(const DiscreteApproximation& approx,
                         std::span<const Complex> phi_at_nodes,
                         FractalOrder order) {
  if (!(order == approx.order())) {
    throw MismatchError("pairing order differs from the approximation order");
  }
  if (phi_at_nodes.size() != approx.size()) {
    throw MismatchError("test function has " +
                        std::to_string(phi_at_nodes.size()) +
                        " node values for " + std::to_string(approx.size()) +
                        " coefficients");
  }
  ComplexNeumaierSum sum;
  for (std::size_t k = 0; k < approx.size(); ++k) {
    sum += approx.coeffs()[k] * phi_at_nodes[k];
  }
  return sum.value() / specfun::gamma_pos(1.0 + order.value());
}

}  // namespace dyft::lfc
