#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dyft/random.hpp"
#include "dyft/specfun.hpp"
#include "golden/golden_values.inc"

namespace {

using dyft::Complex;
using dyft::FractalOrder;
using namespace dyft::specfun;

TEST(Oracle, Examples) {
  const Complex e = mittag_leffler_oracle(FractalOrder(1.0), {1.0, 0.0}, 50);
  EXPECT_DOUBLE_EQ(e.real(), std::numbers::e);
  EXPECT_EQ(mittag_leffler_oracle(FractalOrder(0.3), {0.0, 0.0}, 50),
            Complex(1.0, 0.0));
  const auto half = mittag_leffler_oracle_decimal(FractalOrder(0.5), {1.0, 0.0}, 50);
  EXPECT_EQ(half.re.substr(0, 22), "5.00898008076228346630");
  EXPECT_NEAR(half.value.real(), kHalfOrderAtOne, 1e-15);
}

TEST(Oracle, DigitFloor) {
  EXPECT_THROW((void)mittag_leffler_oracle(FractalOrder(0.5), {1.0, 0.0}, 10),
               dyft::DomainError);
}

TEST(Oracle, AgreesWithEvaluatorUnderCancellation) {
  dyft::SeededRng rng(29);
  for (int i = 0; i < 20; ++i) {
    const double alpha = rng.uniform(0.3, 1.0);
    const double r = std::pow(rng.uniform(10.0, 120.0), alpha);
    const Complex z = std::polar(r, rng.uniform(-std::numbers::pi, std::numbers::pi));
    const Complex ref = mittag_leffler_oracle(FractalOrder(alpha), z, 40);
    const Complex got = mittag_leffler(FractalOrder(alpha), z);
    EXPECT_LE(std::abs(got - ref) / std::abs(ref), 1e-12) << alpha << " " << z;
  }
}

}  // namespace
