#include <gtest/gtest.h>

#include <cmath>

#include "dyft/analysis.hpp"
#include "dyft/random.hpp"

namespace {

using dyft::Complex;
using dyft::Direction;
using dyft::FractalOrder;
using namespace dyft::analysis;

TEST(CheckLinearity, Examples) {
  dyft::SeededRng rng(1);
  const auto plan = dyft::make_plan(8, FractalOrder(0.5), Direction::Forward);
  const auto f1 = rng.signal(8);
  const auto f2 = rng.signal(8);

  const auto identity = check_linearity(f1, f2, 1.0, 0.0, plan);
  EXPECT_TRUE(identity.passed.value());
  EXPECT_LE(identity.max_deviation, 1e-15);

  std::vector<Complex> neg(8);
  for (int i = 0; i < 8; ++i) neg[i] = -f1[i];
  EXPECT_LE(check_linearity(f1, neg, 1.0, 1.0, plan).max_deviation, 1e-12);

  const auto mixed = check_linearity(f1, f2, {2.0, 1.0}, -3.0, plan);
  EXPECT_TRUE(mixed.passed.value());
  EXPECT_LE(mixed.max_deviation, 1e-10);
  EXPECT_EQ(mixed.tolerance, 1e-10);
  EXPECT_EQ(mixed.details["n"], 8);

  EXPECT_THROW((void)check_linearity(f1, std::vector<Complex>(7), 1.0, 1.0, plan),
               dyft::MismatchError);
}

TEST(CheckPeriodicSum, Examples) {
  using namespace dyft::lfc;
  const auto approx = build_discrete_approximation(
      SampledSignal({1.0, 2.0, 3.0, 4.0}, 1.0), FractalOrder(0.5));
  const auto r = check_periodic_sum(approx, 2);
  EXPECT_TRUE(r.passed.value());
  EXPECT_EQ(r.max_deviation, 0.0);
  EXPECT_EQ(r.details["window_sum"][0], 10.0);
  EXPECT_TRUE(check_periodic_sum(approx, 0).passed.value());
  EXPECT_TRUE(check_periodic_sum(approx, -4).passed.value());

  const auto zero = build_discrete_approximation(SampledSignal({1.0, 2.0}, 1.0),
                                                 FractalOrder(0.5), Extension::Zero);
  EXPECT_THROW((void)check_periodic_sum(zero, 1), dyft::MismatchError);
}

TEST(CheckPeriodicSum, AllShifts) {
  using namespace dyft::lfc;
  dyft::SeededRng rng(2);
  for (std::size_t n : {1u, 4u, 7u, 16u}) {
    const auto approx =
        build_discrete_approximation(SampledSignal(rng.signal(n), 0.37), FractalOrder(0.6));
    const auto span = static_cast<std::int64_t>(3 * n);
    for (std::int64_t j = -span; j <= span; ++j) {
      const auto r = check_periodic_sum(approx, j);
      EXPECT_TRUE(r.passed.value()) << n << " " << j;
      EXPECT_LE(r.max_deviation, r.tolerance);
    }
  }
}

TEST(CheckDftEquivalence, Examples) {
  for (std::size_t n : {1u, 4u, 16u, 64u}) {
    const auto r = check_dft_equivalence(n);
    EXPECT_TRUE(r.passed.value()) << n;
    EXPECT_LE(r.max_deviation, 1e-12);
  }
}

TEST(ResidualSweep, UnitOrderRowsAreExactAndErrorsArePerRow) {
  const std::vector<double> alphas{1.0, 0.5, 0.3};
  const std::vector<std::size_t> ns{8, 4, 32};
  const std::vector<SignalFamily> families{SignalFamily::Constant, SignalFamily::Impulse,
                                           SignalFamily::Random};
  const std::vector<dyft::KernelConvention> conventions{dyft::KernelConvention::ConjugatePair};
  const auto table = residual_sweep(alphas, ns, families, conventions, {}, 42);
  ASSERT_EQ(table.rows.size(), 27u);
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const auto& a = table.rows[i - 1];
    const auto& b = table.rows[i];
    EXPECT_TRUE(a.alpha < b.alpha || (a.alpha == b.alpha && a.n <= b.n));
  }
  for (const auto& row : table.rows) {
    if (row.alpha == 0.3 && row.n == 32) {
      EXPECT_FALSE(row.error.empty());
      EXPECT_TRUE(std::isnan(row.roundtrip_max_abs));
      continue;
    }
    ASSERT_TRUE(row.error.empty()) << row.error;
    EXPECT_GE(row.roundtrip_max_abs, 0.0);
    EXPECT_GE(row.roundtrip_rms, 0.0);
    if (row.alpha == 1.0) EXPECT_LE(row.roundtrip_max_abs, 1e-9);
    if (row.alpha == 0.5 && row.n == 4 && row.signal_family == "impulse") {
      EXPECT_NEAR(row.roundtrip_max_abs, 1.2567583341910251, 1e-12);
    }
  }
  const std::string csv = table.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "alpha,n,signal_family,convention,roundtrip_max_abs,roundtrip_rms,status");
}

TEST(RefinementStudy, Examples) {
  const std::vector<std::size_t> levels{4, 8, 16};
  const auto unit = refinement_study(TestFunction::One, 0.0, 1.0, FractalOrder(1.0), levels);
  EXPECT_TRUE(unit.passed.value());
  for (const auto& v : unit.details["values"]) EXPECT_DOUBLE_EQ(v.get<double>(), 1.0);
  EXPECT_NEAR(unit.details["exponent"].get<double>(), 0.0, 1e-12);

  const auto half = refinement_study(TestFunction::One, 0.0, 1.0, FractalOrder(0.5), levels);
  EXPECT_TRUE(half.passed.value());
  EXPECT_NEAR(half.details["values"][0].get<double>(), 2.2567583, 1e-7);
  EXPECT_NEAR(half.details["values"][1].get<double>(), 3.1915382, 1e-7);
  EXPECT_NEAR(half.details["values"][2].get<double>(), 4.5135166, 1e-7);
  EXPECT_NEAR(half.details["exponent"].get<double>(), 0.5, 1e-6);

  const std::vector<std::size_t> fine{8, 16, 32};
  const auto ramp = refinement_study(TestFunction::Identity, 0.0, 1.0, FractalOrder(1.0), fine);
  EXPECT_FALSE(ramp.passed.has_value());
  const auto& errors = ramp.details["errors"];
  for (std::size_t i = 1; i < errors.size(); ++i) {
    EXPECT_NEAR(errors[i - 1].get<double>() / errors[i].get<double>(), 2.0, 1e-12);
  }
  EXPECT_NEAR(ramp.details["values"][2].get<double>(), 0.484375, 1e-15);
}

TEST(CheckReportJson, RoundTripsLosslessly) {
  CheckReport r;
  r.name = "linearity";
  r.passed = false;
  r.max_deviation = 1.0 / 3.0;
  r.tolerance = 1e-10;
  r.details["alpha"] = 0.3;
  r.details["seed"] = 99;
  EXPECT_EQ(report_from_json(to_json(r)), r);
  EXPECT_EQ(report_from_json(nlohmann::ordered_json::parse(to_json(r).dump())), r);

  CheckReport na;
  na.name = "refinement";
  const auto j = to_json(na);
  EXPECT_TRUE(j["passed"].is_null());
  EXPECT_EQ(report_from_json(j), na);
}

TEST(Suite, AllPassesAndIsDeterministic) {
  SuiteOptions options;
  options.linearity_draws = 3;
  const auto a = run_suite(Suite::All, options);
  EXPECT_TRUE(a.passed());
  EXPECT_TRUE(a.failures().empty());
  const auto b = run_suite(Suite::All, options);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(parse_suite("dft"), Suite::Dft);
  EXPECT_THROW((void)parse_suite("bogus"), dyft::DomainError);
}

TEST(Signals, Families) {
  EXPECT_EQ(make_signal(SignalFamily::Impulse, 3, 0),
            (std::vector<Complex>{1.0, 0.0, 0.0}));
  EXPECT_EQ(make_signal(SignalFamily::Constant, 2, 0), (std::vector<Complex>{1.0, 1.0}));
  EXPECT_EQ(make_signal(SignalFamily::Random, 5, 9), make_signal(SignalFamily::Random, 5, 9));
  EXPECT_NE(make_signal(SignalFamily::Random, 5, 9), make_signal(SignalFamily::Random, 5, 10));
  EXPECT_EQ(parse_family("random"), SignalFamily::Random);
}

}  // namespace
