// Reference Mittag-Leffler evaluation. Deliberately shares no code with the
// production evaluator: the series is summed from direct complex powers z^j
// with a fresh Gamma(1 + j a) per term, in Boost.Multiprecision arithmetic of
// a fixed decimal tier large enough to absorb the cancellation.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <ios>
#include <limits>
#include <optional>
#include <string>

#include "dyft/specfun.hpp"

namespace dyft::specfun {
namespace {

namespace mp = boost::multiprecision;

template <unsigned Digits>
using OracleReal = mp::number<mp::mpfr_float_backend<Digits>, mp::et_off>;

constexpr int kOracleMaxTerms = 10 * 4000;

struct OracleSum {
  std::string re;
  std::string im;
  Complex value;
  double log10_peak = 0.0;
  double log10_abs = 0.0;
};

template <unsigned Digits>
OracleSum oracle_series(double alpha, Complex z, int digits) {
  using Real = OracleReal<Digits>;
  const Real a(alpha);
  const Real x(z.real());
  const Real y(z.imag());
  Real power_re(1);
  Real power_im(0);
  Real sum_re(0);
  Real sum_im(0);
  // Relative stopping threshold, squared to compare squared magnitudes.
  const Real tol2 = mp::pow(Real(10), -2 * (digits + 3));
  Real previous2 = -1;
  double log10_peak = 0.0;
  for (int j = 0; j < kOracleMaxTerms; ++j) {
    const Real gamma = j == 0 ? Real(1) : mp::tgamma(Real(1) + a * j);
    const Real term_re = power_re / gamma;
    const Real term_im = power_im / gamma;
    sum_re += term_re;
    sum_im += term_im;
    const Real mag2 = term_re * term_re + term_im * term_im;
    if (mag2 > 0) {
      log10_peak =
          std::max(log10_peak, 0.5 * static_cast<double>(mp::log10(mag2)));
    }
    const Real sum2 = sum_re * sum_re + sum_im * sum_im;
    if (j > 0 && previous2 >= 0 && mag2 < previous2 && mag2 < tol2 * sum2) {
      OracleSum out;
      out.re = sum_re.str(digits, std::ios_base::scientific);
      out.im = sum_im.str(digits, std::ios_base::scientific);
      out.value = {static_cast<double>(sum_re), static_cast<double>(sum_im)};
      out.log10_peak = log10_peak;
      out.log10_abs = sum2 > 0 ? 0.5 * static_cast<double>(mp::log10(sum2))
                               : -std::numeric_limits<double>::infinity();
      return out;
    }
    previous2 = mag2;
    const Real next_re = power_re * x - power_im * y;
    const Real next_im = power_re * y + power_im * x;
    power_re = next_re;
    power_im = next_im;
  }
  throw NonConvergence("oracle series did not terminate within " +
                       std::to_string(kOracleMaxTerms) + " terms");
}

std::optional<OracleSum> oracle_at_tier(unsigned tier, double alpha, Complex z,
                                        int digits) {
  switch (tier) {
    case 60:
      return oracle_series<60>(alpha, z, digits);
    case 120:
      return oracle_series<120>(alpha, z, digits);
    case 240:
      return oracle_series<240>(alpha, z, digits);
    case 480:
      return oracle_series<480>(alpha, z, digits);
    case 960:
      return oracle_series<960>(alpha, z, digits);
    default:
      return std::nullopt;
  }
}

OracleSum oracle(FractalOrder order, Complex z, int digits) {
  if (digits < 30) {
    throw DomainError("oracle needs at least 30 digits, got " +
                      std::to_string(digits));
  }
  if (!is_finite(z)) throw DomainError("oracle argument is not finite");
  if (z == Complex{0.0, 0.0}) {
    return {"1", "0", {1.0, 0.0}, 0.0, 0.0};
  }
  // Guess the cancellation from the largest term r^j / Gamma(1 + j a).
  const double alpha = order.value();
  const double log_r = std::log(std::abs(z));
  double log10_peak = 0.0;
  for (int j = 1; j < kOracleMaxTerms; ++j) {
    int sign = 0;
    const double lt = j * log_r - ::lgamma_r(1.0 + j * alpha, &sign);
    if (lt < log10_peak * std::log(10.0) - 50.0) break;
    log10_peak = std::max(log10_peak, lt / std::log(10.0));
  }
  double wanted = digits + log10_peak + 10.0;
  for (unsigned tier = 60; tier <= 960; tier *= 2) {
    if (tier < wanted) continue;
    auto sum = oracle_at_tier(tier, alpha, z, digits);
    const double needed = digits + sum->log10_peak - sum->log10_abs + 5.0;
    if (needed <= static_cast<double>(tier)) return *sum;
    wanted = needed;
  }
  throw NonConvergence("oracle cancellation exceeds the 960-digit tier");
}

}  // namespace

Complex mittag_leffler_oracle(FractalOrder order, Complex z, int digits) {
  return oracle(order, z, digits).value;
}

OracleDecimal mittag_leffler_oracle_decimal(FractalOrder order, Complex z,
                                            int digits) {
  auto sum = oracle(order, z, digits);
  return {std::move(sum.re), std::move(sum.im), sum.value};
}

}  // namespace dyft::specfun
