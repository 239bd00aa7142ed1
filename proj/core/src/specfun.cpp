#include "dyft/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "dyft/summation.hpp"
#include "mp_real.hpp"

namespace dyft::specfun {
namespace {

using detail::MpReal;

constexpr double kLn2 = std::numbers::ln2;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long double kExtEps = std::numeric_limits<long double>::epsilon();

// Relative error the compensated fast path must certify before its result is
// accepted.
constexpr long double kFastTarget = 1e-14L;
// Bits kept beyond double precision on top of the predicted cancellation.
constexpr int kGuardBits = 64;

double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

// Natural log of r^j / Gamma(1 + j a).
double log_term(double alpha, double log_r, int j) {
  return j == 0 ? 0.0 : j * log_r - log_gamma(1.0 + j * alpha);
}

struct SeriesShape {
  double log_peak = 0.0;  // nats
  int peak_index = 0;
  int tail_index = 1;  // first index past the peak below the floor
};

// Magnitudes r^j / Gamma(1 + j a) are unimodal in j (log-concave), so a
// single forward scan finds both the peak and the point where the tail drops
// below exp(log_floor).
SeriesShape predict_shape(double alpha, double r, double log_floor,
                          int max_terms, int max_bits) {
  SeriesShape shape;
  if (r == 0.0) return shape;
  const double log_r = std::log(r);
  if (r > 1.0) {
    // log E_a(r) ~ r^(1/a) bounds the peak from above.
    const double crude = std::exp(log_r / alpha);
    if (!std::isfinite(crude) || crude / kLn2 > max_bits) {
      std::ostringstream os;
      os << "series cancellation for |z| = " << r << " at alpha = " << alpha
         << " needs ~" << crude / kLn2 << " bits, above the "
         << max_bits << "-bit precision limit";
      throw GuardExceeded(os.str());
    }
  }
  for (int j = 1;; ++j) {
    if (j > max_terms) {
      std::ostringstream os;
      os << "Mittag-Leffler series for |z| = " << r << " at alpha = " << alpha
         << " needs more than max_terms = " << max_terms << " terms";
      throw NonConvergence(os.str());
    }
    const double lt = log_term(alpha, log_r, j);
    if (lt > shape.log_peak) {
      shape.log_peak = lt;
      shape.peak_index = j;
    } else if (lt < log_floor) {
      shape.tail_index = j;
      return shape;
    }
  }
}

// Compensated extended-precision summation with a running rounding-error
// bound. Returns nullopt when the bound cannot certify kFastTarget relative
// accuracy.
std::optional<Complex> sum_extended(double alpha, Complex z,
                                    const MLConfig& cfg) {
  using Ext = long double;
  const Ext log_r = std::log(std::abs(std::complex<Ext>(z)));
  const Ext phase = std::arg(std::complex<Ext>(z));
  BasicComplexNeumaierSum<Ext> sum;
  Ext error_bound = 0;
  Ext previous = std::numeric_limits<Ext>::infinity();
  for (int j = 0; j < cfg.max_terms; ++j) {
    int sign = 0;
    const Ext lg = j == 0 ? 0 : ::lgammal_r(1 + j * static_cast<Ext>(alpha), &sign);
    const Ext log_mag = j == 0 ? 0 : j * log_r - lg;
    const Ext mag = std::exp(log_mag);
    const Ext angle = j * phase;
    if (!std::isfinite(mag)) return std::nullopt;
    sum += std::polar(mag, angle);
    // exp() and sin/cos amplify the absolute rounding of their arguments.
    error_bound += mag * kExtEps *
                   (4 + std::abs(j * log_r) + std::abs(lg) + std::abs(angle));
    const Ext current = std::abs(sum.value());
    if (j > 0 && mag < previous && mag < cfg.rel_tol * current) {
      if (error_bound > kFastTarget * current) return std::nullopt;
      const auto value = sum.value();
      return Complex{static_cast<double>(value.real()),
                     static_cast<double>(value.imag())};
    }
    previous = mag;
  }
  throw NonConvergence("Mittag-Leffler series did not terminate within " +
                       std::to_string(cfg.max_terms) + " terms");
}

// Fills `out` (already at the working precision).
using MpFill = std::function<void(mpfr_ptr out)>;

// Sum of c_j r^j e^{i j phase} for a fixed order and phase, with
// c_j = 1 / Gamma(1 + j a) and the phase factors folded into a table.
class RaySeries {
 public:
  struct Result {
    Complex value;
    double log2_peak = -kInf;
    double log2_abs = -kInf;
    bool exhausted = false;
  };

  RaySeries(double alpha, mpfr_srcptr phase, mpfr_prec_t precision,
            int terms)
      : precision_(precision) {
    weights_re_.reserve(terms);
    weights_im_.reserve(terms);
    log2_coeff_.reserve(terms);
    MpReal coeff(precision, 1.0);
    MpReal arg(precision);
    MpReal gamma(precision);
    MpReal angle(precision);
    MpReal sine(precision);
    MpReal cosine(precision);
    for (int j = 0; j < terms; ++j) {
      if (j > 0) {
        if (alpha == 1.0) {
          mpfr_div_ui(coeff.get(), coeff.get(), static_cast<unsigned long>(j),
                      MPFR_RNDN);
        } else {
          // 1 + j a is exact at this precision.
          mpfr_set_d(arg.get(), alpha, MPFR_RNDN);
          mpfr_mul_ui(arg.get(), arg.get(), static_cast<unsigned long>(j),
                      MPFR_RNDN);
          mpfr_add_ui(arg.get(), arg.get(), 1, MPFR_RNDN);
          mpfr_gamma(gamma.get(), arg.get(), MPFR_RNDN);
          mpfr_ui_div(coeff.get(), 1, gamma.get(), MPFR_RNDN);
        }
      }
      mpfr_mul_ui(angle.get(), phase, static_cast<unsigned long>(j), MPFR_RNDN);
      mpfr_sin_cos(sine.get(), cosine.get(), angle.get(), MPFR_RNDN);
      MpReal re(precision);
      MpReal im(precision);
      mpfr_mul(re.get(), coeff.get(), cosine.get(), MPFR_RNDN);
      mpfr_mul(im.get(), coeff.get(), sine.get(), MPFR_RNDN);
      weights_re_.push_back(std::move(re));
      weights_im_.push_back(std::move(im));
      log2_coeff_.push_back(coeff.log2_abs());
    }
  }

  [[nodiscard]] mpfr_prec_t precision() const noexcept { return precision_; }
  [[nodiscard]] int terms() const noexcept {
    return static_cast<int>(log2_coeff_.size());
  }

  // Termination: the current term is below rel_tol times the partial sum and
  // smaller than its predecessor.
  [[nodiscard]] Result evaluate(mpfr_srcptr radius, double rel_tol) const {
    Result result;
    MpReal power(precision_, 1.0);
    MpReal re(precision_);
    MpReal im(precision_);
    const double log2_r = MpReal::log2_abs(radius);
    const double log2_tol = std::log2(rel_tol);
    double previous = kInf;
    for (int j = 0; j < terms(); ++j) {
      mpfr_fma(re.get(), power.get(), weights_re_[j].get(), re.get(), MPFR_RNDN);
      mpfr_fma(im.get(), power.get(), weights_im_[j].get(), im.get(), MPFR_RNDN);
      const double log2_term = (j == 0 ? 0.0 : j * log2_r) + log2_coeff_[j];
      result.log2_peak = std::max(result.log2_peak, log2_term);
      if (j > 0 && log2_term < previous) {
        const double log2_sum = detail::log2_hypot(re, im);
        if (log2_term < log2_tol + log2_sum) {
          result.value = {re.to_double(), im.to_double()};
          result.log2_abs = log2_sum;
          return result;
        }
      }
      previous = log2_term;
      mpfr_mul(power.get(), power.get(), radius, MPFR_RNDN);
    }
    result.exhausted = true;
    return result;
  }

  // Bits the evaluation needed to resolve `result` to double precision.
  [[nodiscard]] static double needed_bits(const Result& result) {
    return result.log2_peak - result.log2_abs + 53.0 + 16.0;
  }

 private:
  mpfr_prec_t precision_;
  std::vector<MpReal> weights_re_;
  std::vector<MpReal> weights_im_;
  std::vector<double> log2_coeff_;
};

mpfr_prec_t round_precision(double bits) {
  const auto b = static_cast<mpfr_prec_t>(std::ceil(bits));
  return std::max<mpfr_prec_t>(128, (b + 63) / 64 * 64);
}

void check_precision(mpfr_prec_t bits, const MLConfig& cfg) {
  if (bits > cfg.max_precision_bits) {
    throw GuardExceeded("series cancellation needs " + std::to_string(bits) +
                        " bits of working precision, above max_precision_bits = " +
                        std::to_string(cfg.max_precision_bits));
  }
}

// MPFR evaluation with precision and table length escalated until the
// result certifies itself.
Complex evaluate_adaptive(double alpha, double radius_estimate,
                          const MpFill& radius, const MpFill& phase,
                          const MLConfig& cfg) {
  double log_floor = std::log(cfg.rel_tol) - kGuardBits * kLn2;
  SeriesShape shape = predict_shape(alpha, radius_estimate, log_floor,
                                    cfg.max_terms, cfg.max_precision_bits);
  mpfr_prec_t bits = round_precision(shape.log_peak / kLn2 + 53 + kGuardBits);
  int terms = shape.tail_index + 8;
  for (int attempt = 0; attempt < 16; ++attempt) {
    check_precision(bits, cfg);
    if (terms > cfg.max_terms + 8) {
      throw NonConvergence("Mittag-Leffler series did not terminate within " +
                           std::to_string(cfg.max_terms) + " terms");
    }
    MpReal r(bits);
    MpReal angle(bits);
    radius(r.get());
    phase(angle.get());
    const RaySeries series(alpha, angle.get(), bits, terms);
    const auto result = series.evaluate(r.get(), cfg.rel_tol);
    if (result.exhausted) {
      terms = std::min(2 * terms, cfg.max_terms + 8);
      if (terms == series.terms()) {
        throw NonConvergence("Mittag-Leffler series did not terminate within " +
                             std::to_string(cfg.max_terms) + " terms");
      }
      continue;
    }
    const double needed = RaySeries::needed_bits(result);
    if (needed > static_cast<double>(bits)) {
      bits = std::isfinite(needed) ? round_precision(needed + 32) : bits * 2;
      // A smaller result than planned also pushes the termination point out.
      if (std::isfinite(result.log2_abs)) {
        log_floor = std::log(cfg.rel_tol) + (result.log2_abs - 16) * kLn2;
        shape = predict_shape(alpha, radius_estimate, log_floor,
                              cfg.max_terms, cfg.max_precision_bits);
        terms = std::max(terms, shape.tail_index + 8);
      }
      continue;
    }
    return result.value;
  }
  throw NonConvergence("Mittag-Leffler evaluation did not stabilise");
}

void fill_kernel_phase(mpfr_ptr out, double alpha, Direction direction,
                       KernelConvention convention) {
  MpReal pi(mpfr_get_prec(out));
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  mpfr_mul_d(out, pi.get(), alpha, MPFR_RNDN);
  mpfr_div_2ui(out, out, 1, MPFR_RNDN);
  if (direction == Direction::Forward) {
    if (convention == KernelConvention::ConjugatePair) {
      mpfr_neg(out, out, MPFR_RNDN);
    } else {
      mpfr_sub(out, out, pi.get(), MPFR_RNDN);
    }
  }
}

void fill_radius_from_angle(mpfr_ptr out, mpfr_srcptr theta, double alpha) {
  if (alpha == 1.0) {
    mpfr_set(out, theta, MPFR_RNDN);
    return;
  }
  MpReal exponent(mpfr_get_prec(out), alpha);
  mpfr_pow(out, theta, exponent.get(), MPFR_RNDN);
}

Complex checked(Complex value) {
  if (!is_finite(value)) {
    throw OverflowError("Mittag-Leffler value is not representable in double");
  }
  return value;
}

}  // namespace

double gamma_pos(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("gamma_pos requires finite x > 0, got " +
                      std::to_string(x));
  }
  if (x > 171.0) {
    throw OverflowError("gamma_pos overflows double for x > 171, got " +
                        std::to_string(x));
  }
  return std::tgamma(x);
}

Complex mittag_leffler(FractalOrder order, Complex z, const MLConfig& cfg) {
  cfg.validate();
  if (!is_finite(z)) throw DomainError("mittag_leffler argument is not finite");
  const double r = std::abs(z);
  if (r > cfg.magnitude_guard) {
    std::ostringstream os;
    os << "|z| = " << r << " exceeds magnitude_guard = " << cfg.magnitude_guard;
    throw GuardExceeded(os.str());
  }
  if (r == 0.0) return {1.0, 0.0};
  const double alpha = order.value();
  // Every series coefficient is real, so a real argument has a real sum.
  const auto real_if = [real_axis = z.imag() == 0.0](Complex v) {
    return real_axis ? Complex{v.real(), 0.0} : v;
  };
  // Rejects hopeless inputs before any summation.
  const auto shape =
      predict_shape(alpha, r, std::log(cfg.rel_tol) - kGuardBits * kLn2,
                    cfg.max_terms, cfg.max_precision_bits);
  if (shape.log_peak / kLn2 < 40.0) {
    if (const auto fast = sum_extended(alpha, z, cfg)) {
      return checked(real_if(*fast));
    }
  }
  const double x = z.real();
  const double y = z.imag();
  return checked(real_if(evaluate_adaptive(
      alpha, r,
      [x, y](mpfr_ptr out) {
        MpReal re(mpfr_get_prec(out), x);
        MpReal im(mpfr_get_prec(out), y);
        mpfr_hypot(out, re.get(), im.get(), MPFR_RNDN);
      },
      [x, y](mpfr_ptr out) {
        MpReal re(mpfr_get_prec(out), x);
        MpReal im(mpfr_get_prec(out), y);
        mpfr_atan2(out, im.get(), re.get(), MPFR_RNDN);
      },
      cfg)));
}

double kernel_phase(FractalOrder order, Direction direction,
                    KernelConvention convention) noexcept {
  const double half = std::numbers::pi * order.value() / 2.0;
  if (direction == Direction::Inverse) return half;
  return convention == KernelConvention::ConjugatePair ? -half
                                                       : half - std::numbers::pi;
}

struct KernelEvaluator::Impl {
  double alpha;
  Direction direction;
  KernelConvention convention;
  double max_theta;
  MLConfig cfg;
  mpfr_prec_t bits;
  std::optional<RaySeries> series;

  [[nodiscard]] Complex evaluate(const MpFill& theta,
                                 double theta_estimate) const {
    if (theta_estimate == 0.0) return {1.0, 0.0};
    MpReal t(bits);
    theta(t.get());
    MpReal r(bits);
    fill_radius_from_angle(r.get(), t.get(), alpha);
    const auto result = series->evaluate(r.get(), cfg.rel_tol);
    if (!result.exhausted && RaySeries::needed_bits(result) <= bits) {
      return checked(result.value);
    }
    // Rare: the value is much smaller than the table was planned for.
    const double a = alpha;
    return checked(evaluate_adaptive(
        a, std::pow(theta_estimate, a),
        [&theta, a](mpfr_ptr out) {
          MpReal angle(mpfr_get_prec(out));
          theta(angle.get());
          fill_radius_from_angle(out, angle.get(), a);
        },
        [this](mpfr_ptr out) {
          fill_kernel_phase(out, alpha, direction, convention);
        },
        cfg));
  }
};

KernelEvaluator::KernelEvaluator(FractalOrder order, Direction direction,
                                 KernelConvention convention, double max_theta,
                                 const MLConfig& cfg)
    : impl_(std::make_unique<Impl>()) {
  cfg.validate();
  if (!(max_theta >= 0.0) || !std::isfinite(max_theta)) {
    throw DomainError("kernel angle must be finite and nonnegative");
  }
  const double alpha = order.value();
  const double max_radius = std::pow(max_theta, alpha);
  if (max_radius > cfg.magnitude_guard) {
    std::ostringstream os;
    os << "kernel argument theta^alpha = " << max_radius << " (theta = "
       << max_theta << ", alpha = " << alpha
       << ") exceeds magnitude_guard = " << cfg.magnitude_guard;
    throw GuardExceeded(os.str());
  }
  const auto shape = predict_shape(
      alpha, max_radius, std::log(cfg.rel_tol) - kGuardBits * kLn2,
      cfg.max_terms, cfg.max_precision_bits);
  const mpfr_prec_t bits =
      round_precision(shape.log_peak / kLn2 + 53 + kGuardBits);
  check_precision(bits, cfg);

  impl_->alpha = alpha;
  impl_->direction = direction;
  impl_->convention = convention;
  impl_->max_theta = max_theta;
  impl_->cfg = cfg;
  impl_->bits = bits;
  MpReal phase(bits);
  fill_kernel_phase(phase.get(), alpha, direction, convention);
  impl_->series.emplace(alpha, phase.get(), bits, shape.tail_index + 8);
}

KernelEvaluator::~KernelEvaluator() = default;
KernelEvaluator::KernelEvaluator(KernelEvaluator&&) noexcept = default;
KernelEvaluator& KernelEvaluator::operator=(KernelEvaluator&&) noexcept =
    default;

Complex KernelEvaluator::operator()(double theta) const {
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw DomainError("kernel angle must be finite and nonnegative");
  }
  if (theta > impl_->max_theta) {
    throw DomainError("kernel angle " + std::to_string(theta) +
                      " exceeds the evaluator range " +
                      std::to_string(impl_->max_theta));
  }
  return impl_->evaluate(
      [theta](mpfr_ptr out) { mpfr_set_d(out, theta, MPFR_RNDN); }, theta);
}

Complex KernelEvaluator::at_fraction(std::uint64_t m, std::uint64_t n) const {
  if (n == 0) throw DomainError("kernel fraction denominator is zero");
  const double estimate =
      2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
  if (estimate > impl_->max_theta * (1.0 + 1e-12)) {
    throw DomainError("kernel angle 2*pi*" + std::to_string(m) + "/" +
                      std::to_string(n) + " exceeds the evaluator range");
  }
  return impl_->evaluate(
      [m, n](mpfr_ptr out) {
        mpfr_const_pi(out, MPFR_RNDN);
        mpfr_mul_ui(out, out, 2UL * static_cast<unsigned long>(m), MPFR_RNDN);
        mpfr_div_ui(out, out, static_cast<unsigned long>(n), MPFR_RNDN);
      },
      estimate);
}

int KernelEvaluator::precision_bits() const noexcept {
  return static_cast<int>(impl_->bits);
}

int KernelEvaluator::table_terms() const noexcept {
  return impl_->series->terms();
}

Complex fractal_kernel(FractalOrder order, Direction direction, double theta,
                       KernelConvention convention, const MLConfig& cfg) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw DomainError("kernel angle must be finite and nonnegative");
  }
  return KernelEvaluator(order, direction, convention, theta, cfg)(theta);
}

}  // namespace dyft::specfun
