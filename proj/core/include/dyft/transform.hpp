#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

#include "dyft/lfc.hpp"
#include "dyft/types.hpp"

namespace dyft {

/// Largest transform size admitted for an order: 64 for a >= 0.8, 32 for
/// a in [0.5, 0.8), 16 below.
[[nodiscard]] std::size_t envelope_max_size(FractalOrder order) noexcept;

/// Throws EnvelopeExceeded when n is outside the envelope for `order`.
void check_envelope(std::size_t n, FractalOrder order);

struct PlanOptions {
  bool enforce_envelope = true;
  /// Worker threads for kernel construction; 0 means hardware concurrency.
  /// Output is bit-identical for every value.
  unsigned threads = 1;
};

/// Precomputed N x N kernel table kernel[n][k] = E_a(e^{i phase} (2 pi n k / N)^a)
/// for one (N, order, direction, convention). Immutable; share freely.
class TransformPlan {
 public:
  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] FractalOrder order() const noexcept { return order_; }
  [[nodiscard]] Direction direction() const noexcept { return direction_; }
  [[nodiscard]] KernelConvention convention() const noexcept {
    return convention_;
  }
  [[nodiscard]] const MLConfig& config() const noexcept { return config_; }

  [[nodiscard]] Complex at(std::size_t n, std::size_t k) const {
    return kernel_.at(n * size_ + k);
  }
  [[nodiscard]] std::span<const Complex> row(std::size_t n) const {
    return std::span<const Complex>(kernel_).subspan(n * size_, size_);
  }

 private:
  friend TransformPlan make_plan(std::size_t, FractalOrder, Direction,
                                 KernelConvention, const MLConfig&,
                                 const PlanOptions&);
  TransformPlan(std::size_t size, FractalOrder order, Direction direction,
                KernelConvention convention, MLConfig config)
      : size_(size),
        order_(order),
        direction_(direction),
        convention_(convention),
        config_(config) {}

  std::size_t size_;
  FractalOrder order_;
  Direction direction_;
  KernelConvention convention_;
  MLConfig config_;
  std::vector<Complex> kernel_;
};

/// Builds the kernel table. Each distinct product n*k is evaluated once,
/// with theta = 2 pi n k / N formed in the evaluator's working precision.
///
/// Throws EnvelopeExceeded (when enforced) or GuardExceeded naming the
/// offending entry when (2 pi (N-1)^2 / N)^a > cfg.magnitude_guard.
[[nodiscard]] TransformPlan make_plan(
    std::size_t n, FractalOrder order, Direction direction,
    KernelConvention convention = KernelConvention::ConjugatePair,
    const MLConfig& cfg = {}, const PlanOptions& options = {});

/// DYFT coefficients F(k) with frequency spacing domega = 2 pi / (N dt).
class Spectrum {
 public:
  Spectrum(std::vector<Complex> coeffs, FractalOrder order, double dt_origin,
           KernelConvention convention);

  [[nodiscard]] std::span<const Complex> coeffs() const noexcept {
    return coeffs_;
  }
  [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
  [[nodiscard]] FractalOrder order() const noexcept { return order_; }
  [[nodiscard]] double domega() const noexcept { return domega_; }
  [[nodiscard]] double dt_origin() const noexcept { return dt_origin_; }
  [[nodiscard]] KernelConvention convention() const noexcept {
    return convention_;
  }

 private:
  std::vector<Complex> coeffs_;
  FractalOrder order_;
  double domega_;
  double dt_origin_;
  KernelConvention convention_;
};

/// F(k) = 1 / (Gamma(1 + a) N^a) * sum_n f(n) kernel[n][k], summed in
/// ascending n. Throws MismatchError on size or direction mismatch.
[[nodiscard]] Spectrum forward(std::span<const Complex> signal, double dt,
                               const TransformPlan& plan);

/// f(n) = sum_k F(k) kernel[n][k], summed in ascending k, no prefactor.
/// Throws MismatchError unless the plan is an Inverse plan matching the
/// spectrum's size, order and convention.
[[nodiscard]] std::vector<Complex> inverse(const Spectrum& spectrum,
                                           const TransformPlan& plan);

/// Spectrum of the sampled function at angular frequency omega:
/// (1 / Gamma(1 + a)) * sum_k coeffs[k] * E_a((-i)^a (omega k dt)^a).
/// At omega = n * domega this equals T^a F(n) with T = N dt.
[[nodiscard]] Complex approximate_spectrum(
    const lfc::DiscreteApproximation& approx, double omega,
    const MLConfig& cfg = {},
    KernelConvention convention = KernelConvention::ConjugatePair);

struct Residual {
  double max_abs = 0.0;
  double rms = 0.0;
};

[[nodiscard]] Residual residual(std::span<const Complex> reference,
                                std::span<const Complex> candidate);

struct RoundTrip {
  std::vector<Complex> reconstructed;
  Residual residual;
};

/// inverse(forward(signal)) and its deviation from the input. Reports only;
/// exactness holds at a = 1.
[[nodiscard]] RoundTrip roundtrip(std::span<const Complex> signal, double dt,
                                  const TransformPlan& forward_plan,
                                  const TransformPlan& inverse_plan);

/// Thread-safe memo of plans keyed by (N, order, direction, convention,
/// config, envelope enforcement).
class PlanCache {
 public:
  explicit PlanCache(PlanOptions options = {}) : options_(options) {}

  [[nodiscard]] std::shared_ptr<const TransformPlan> get(
      std::size_t n, FractalOrder order, Direction direction,
      KernelConvention convention = KernelConvention::ConjugatePair,
      const MLConfig& cfg = {});

  [[nodiscard]] std::size_t size() const;

 private:
  using Key = std::tuple<std::size_t, double, int, int, double, int, double,
                         int>;
  PlanOptions options_;
  mutable std::mutex mutex_;
  std::map<Key, std::shared_ptr<const TransformPlan>> plans_;
};

}  // namespace dyft
