#include "dyft/transform.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dyft/specfun.hpp"
#include "dyft/summation.hpp"
#include "parallel.hpp"

namespace dyft {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_plan_angle(std::size_t n) {
  const double count = static_cast<double>(n);
  return kTwoPi * (count - 1.0) * (count - 1.0) / count;
}

}  // namespace

std::size_t envelope_max_size(FractalOrder order) noexcept {
  const double alpha = order.value();
  if (alpha >= 0.8) return 64;
  if (alpha >= 0.5) return 32;
  return 16;
}

void check_envelope(std::size_t n, FractalOrder order) {
  const std::size_t limit = envelope_max_size(order);
  if (n > limit) {
    std::ostringstream os;
    os << "N = " << n << " exceeds the desk-scale envelope N <= " << limit
       << " for alpha = " << order.value();
    throw EnvelopeExceeded(os.str());
  }
}

TransformPlan make_plan(std::size_t n, FractalOrder order, Direction direction,
                        KernelConvention convention, const MLConfig& cfg,
                        const PlanOptions& options) {
  if (n == 0) throw DomainError("transform size must be at least 1");
  cfg.validate();
  if (options.enforce_envelope) check_envelope(n, order);

  const double max_theta = max_plan_angle(n);
  const double max_radius = std::pow(max_theta, order.value());
  if (max_radius > cfg.magnitude_guard) {
    std::ostringstream os;
    os << "kernel entry (n = " << n - 1 << ", k = " << n - 1
       << ") has theta^alpha = " << max_radius << " above magnitude_guard = "
       << cfg.magnitude_guard << " (N = " << n << ", alpha = " << order.value()
       << "); reduce N or raise the guard";
    throw GuardExceeded(os.str());
  }

  TransformPlan plan(n, order, direction, convention, cfg);
  plan.kernel_.assign(n * n, Complex{1.0, 0.0});
  if (n == 1) return plan;

  // Entries depend on n*k only; evaluate each distinct product once.
  const std::size_t max_product = (n - 1) * (n - 1);
  std::vector<char> used(max_product + 1, 0);
  for (std::size_t a = 1; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) used[a * b] = 1;
  }
  std::vector<std::size_t> products;
  for (std::size_t m = 1; m <= max_product; ++m) {
    if (used[m]) products.push_back(m);
  }

  const specfun::KernelEvaluator evaluator(order, direction, convention,
                                           max_theta, cfg);
  std::vector<Complex> values(products.size());
  detail::parallel_for(products.size(), options.threads, [&](std::size_t i) {
    values[i] = evaluator.at_fraction(products[i], n);
  });

  std::vector<Complex> by_product(max_product + 1, Complex{1.0, 0.0});
  for (std::size_t i = 0; i < products.size(); ++i) {
    by_product[products[i]] = values[i];
  }
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      plan.kernel_[row * n + col] = by_product[row * col];
    }
  }
  return plan;
}

Spectrum::Spectrum(std::vector<Complex> coeffs, FractalOrder order,
                   double dt_origin, KernelConvention convention)
    : coeffs_(std::move(coeffs)),
      order_(order),
      domega_(0.0),
      dt_origin_(dt_origin),
      convention_(convention) {
  if (coeffs_.empty()) throw DomainError("spectrum is empty");
  if (!(dt_origin > 0.0) || !std::isfinite(dt_origin)) {
    throw DomainError("spectrum sample spacing must be positive and finite");
  }
  domega_ = kTwoPi / (static_cast<double>(coeffs_.size()) * dt_origin);
}

Spectrum forward(std::span<const Complex> signal, double dt,
                 const TransformPlan& plan) {
  if (plan.direction() != Direction::Forward) {
    throw MismatchError("forward transform needs a Forward plan");
  }
  if (signal.size() != plan.size()) {
    throw MismatchError("signal length " + std::to_string(signal.size()) +
                        " does not match plan size " +
                        std::to_string(plan.size()));
  }
  const std::size_t n = plan.size();
  const double alpha = plan.order().value();
  const double prefactor =
      1.0 / (specfun::gamma_pos(1.0 + alpha) *
             std::pow(static_cast<double>(n), alpha));
  std::vector<Complex> coeffs(n);
  for (std::size_t k = 0; k < n; ++k) {
    ComplexNeumaierSum sum;
    for (std::size_t i = 0; i < n; ++i) sum += signal[i] * plan.at(i, k);
    coeffs[k] = prefactor * sum.value();
  }
  return Spectrum(std::move(coeffs), plan.order(), dt, plan.convention());
}

std::vector<Complex> inverse(const Spectrum& spectrum,
                             const TransformPlan& plan) {
  if (plan.direction() != Direction::Inverse) {
    throw MismatchError("inverse transform needs an Inverse plan");
  }
  if (spectrum.size() != plan.size()) {
    throw MismatchError("spectrum length " + std::to_string(spectrum.size()) +
                        " does not match plan size " +
                        std::to_string(plan.size()));
  }
  if (!(spectrum.order() == plan.order())) {
    throw MismatchError("spectrum order differs from the plan order");
  }
  if (spectrum.convention() != plan.convention()) {
    throw MismatchError("spectrum was produced under a different kernel "
                        "convention than the inverse plan");
  }
  const std::size_t n = plan.size();
  std::vector<Complex> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexNeumaierSum sum;
    const auto row = plan.row(i);
    for (std::size_t k = 0; k < n; ++k) sum += spectrum.coeffs()[k] * row[k];
    values[i] = sum.value();
  }
  return values;
}

Complex approximate_spectrum(const lfc::DiscreteApproximation& approx,
                             double omega, const MLConfig& cfg,
                             KernelConvention convention) {
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw DomainError("omega must be finite and nonnegative");
  }
  const std::size_t n = approx.size();
  const double dt = approx.dt();
  const double max_theta = omega * static_cast<double>(n - 1) * dt;
  const specfun::KernelEvaluator evaluator(approx.order(), Direction::Forward,
                                           convention, max_theta, cfg);
  ComplexNeumaierSum sum;
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = omega * static_cast<double>(k) * dt;
    sum += approx.coeffs()[k] * evaluator(theta);
  }
  return sum.value() / specfun::gamma_pos(1.0 + approx.order().value());
}

Residual residual(std::span<const Complex> reference,
                  std::span<const Complex> candidate) {
  if (reference.size() != candidate.size()) {
    throw MismatchError("residual of sequences with different lengths");
  }
  Residual out;
  NeumaierSum squares;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double d = std::abs(candidate[i] - reference[i]);
    out.max_abs = std::max(out.max_abs, d);
    squares += d * d;
  }
  if (!reference.empty()) {
    out.rms = std::sqrt(squares.value() / static_cast<double>(reference.size()));
  }
  return out;
}

RoundTrip roundtrip(std::span<const Complex> signal, double dt,
                    const TransformPlan& forward_plan,
                    const TransformPlan& inverse_plan) {
  if (forward_plan.size() != inverse_plan.size() ||
      !(forward_plan.order() == inverse_plan.order()) ||
      forward_plan.convention() != inverse_plan.convention()) {
    throw MismatchError("round-trip plans differ in size, order or convention");
  }
  RoundTrip out;
  out.reconstructed = inverse(forward(signal, dt, forward_plan), inverse_plan);
  out.residual = residual(signal, out.reconstructed);
  return out;
}

std::shared_ptr<const TransformPlan> PlanCache::get(std::size_t n,
                                                    FractalOrder order,
                                                    Direction direction,
                                                    KernelConvention convention,
                                                    const MLConfig& cfg) {
  const Key key{n,
                order.value(),
                static_cast<int>(direction),
                static_cast<int>(convention),
                cfg.rel_tol,
                cfg.max_terms,
                cfg.magnitude_guard,
                cfg.max_precision_bits};
  std::lock_guard lock(mutex_);
  if (const auto it = plans_.find(key); it != plans_.end()) return it->second;
  auto plan = std::make_shared<const TransformPlan>(
      make_plan(n, order, direction, convention, cfg, options_));
  plans_.emplace(key, plan);
  return plan;
}

std::size_t PlanCache::size() const {
  std::lock_guard lock(mutex_);
  return plans_.size();
}

}  // namespace dyft
