#include <gtest/gtest.h>

#include <cmath>

#include "rpgne/builtin_games.hpp"
#include "rpgne/graph.hpp"
#include "rpgne/schedules.hpp"
#include "support/property_checks.hpp"

using namespace rpgne;

TEST(ParamSchedule, Evaluations) {
  EXPECT_DOUBLE_EQ(ParamSchedule::power(0.1, -0.5).eval(0.0), 0.1);
  EXPECT_DOUBLE_EQ(ParamSchedule::power(0.1, -0.5).eval(3.0), 0.05);
  EXPECT_EQ(ParamSchedule::constant(4.0).derivative(7.0), 0.0);
  EXPECT_NEAR(ParamSchedule::exponential(1.0, -1.0).eval(1.0), std::exp(-1.0), 1e-15);
  const auto w = ParamSchedule::sum({ParamSchedule::constant(500.0), ParamSchedule::power(500.0, 9.0)});
  EXPECT_DOUBLE_EQ(w.eval(0.0), 1000.0);
  EXPECT_DOUBLE_EQ(w.eval(1.0), 500.0 + 500.0 * 512.0);
}

TEST(ParamSchedule, RejectsBadConstants) {
  EXPECT_THROW(ParamSchedule::power(-1.0, 1.0), InvalidArgument);
  EXPECT_THROW(ParamSchedule::exponential(0.0, 1.0), InvalidArgument);
  EXPECT_THROW(ParamSchedule::constant(-2.0), InvalidArgument);
  EXPECT_THROW(ParamSchedule::sum({}), InvalidArgument);
}

TEST(ParamSchedule, DerivativeMatchesFiniteDifference) {
  const auto d = ParamSchedule::power(0.1, -0.5), e = ParamSchedule::power(20.0, 1.2);
  const std::vector<ParamSchedule> all = {
      d, e, ParamSchedule::exponential(2.0, -0.3),
      ParamSchedule::sum({ParamSchedule::constant(1.0), ParamSchedule::power(3.0, 2.0)}),
      derive_gamma(5, 5.0, 5.0, d, e, GammaVariant::kPartial),
      derive_gamma(3, 1.0, 0.0, d, e, GammaVariant::kFull)};
  for (size_t k = 0; k < all.size(); ++k) {
    for (double t : {0.0, 0.5, 2.0, 9.0}) {
      const double h = 1e-5 * (1.0 + t);
      const double fd = (all[k].eval(t + h) - all[k].eval(t - h + (t == 0.0 ? h : 0.0))) /
                        (t == 0.0 ? h : 2.0 * h);
      const double tol = t == 0.0 ? 1e-4 : 1e-8;
      EXPECT_NEAR(all[k].derivative(t), fd, tol * std::max(1.0, std::abs(fd)))
          << "schedule " << k << " at t=" << t;
    }
  }
}

TEST(DeriveGamma, Denominators) {
  const auto d = ParamSchedule::power(0.1, -0.5), e = ParamSchedule::power(20.0, 1.2);
  const auto g5 = derive_gamma(5, 5.0, 5.0, d, e, GammaVariant::kPartial);
  const auto g8 = derive_gamma(8, 5.0, 5.0, d, e, GammaVariant::kPartial);
  for (double t : {0.0, 1.0, 4.0}) {
    const double dv = d.eval(t), ev = e.eval(t);
    EXPECT_NEAR(g5.eval(t), dv / (126.0 + dv * dv + 125.0 * ev * ev), 1e-18);
    EXPECT_NEAR(g8.eval(t), dv / (201.0 + dv * dv + 200.0 * ev * ev), 1e-18);
  }
  const auto one = ParamSchedule::constant(1.0);
  const auto g1 = derive_gamma(1, 1.0, 1.0, one, one, GammaVariant::kFull);
  EXPECT_DOUBLE_EQ(g1.eval(0.0), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(g1.eval(100.0), 1.0 / 3.0);
}

TEST(DeriveGamma, RejectsBadBounds) {
  const auto one = ParamSchedule::constant(1.0);
  EXPECT_THROW(derive_gamma(0, 1.0, 1.0, one, one, GammaVariant::kFull), InvalidArgument);
  EXPECT_THROW(derive_gamma(2, 0.0, 1.0, one, one, GammaVariant::kFull), InvalidArgument);
  EXPECT_THROW(derive_gamma(2, 1.0, -1.0, one, one, GammaVariant::kFull), InvalidArgument);
}

TEST(ValidateAt, RejectsNonPositiveGamma) {
  ScheduleSet s;
  s.delta = s.epsilon = s.sigma = s.w = ParamSchedule::constant(1.0);
  s.gamma = ParamSchedule::constant(0.0);
  EXPECT_THROW(validate_at(s, 0.0), InvalidArgument);
}

TEST(CheckFull, PowerFamilyPasses) {
  const double b1 = std::sqrt(12.0), b2 = 2.0 * std::sqrt(5.0);
  const auto r = check_full_decision_conditions(props::slow_power_family(b1, b2), 5, b1, b2,
                                           props::kSlowPowerHorizon, 400);
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(CheckFull, ExponentialFamilyPasses) {
  const double b1 = std::sqrt(12.0), b2 = 2.0 * std::sqrt(5.0);
  const auto r = check_full_decision_conditions(props::exp_family(b1, b2), 5, b1, b2,
                                           props::kExpHorizon, 400);
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_GT(r.c0_empirical, 0.0);
  EXPECT_TRUE(std::isfinite(r.c0_empirical));
}

TEST(CheckFull, ConstantDeltaFailsDecay) {
  const double b1 = std::sqrt(12.0), b2 = 2.0 * std::sqrt(5.0);
  auto s = props::slow_power_family(b1, b2);
  s.delta = ParamSchedule::constant(0.1);
  s.gamma = derive_gamma(5, b1, b2, s.delta, s.epsilon, GammaVariant::kFull);
  const auto r = check_full_decision_conditions(s, 5, b1, b2, 1e6, 400);
  const auto* d = r.find("delta -> 0");
  ASSERT_NE(d, nullptr);
  EXPECT_FALSE(d->passed);
  EXPECT_FALSE(r.all_passed());
}

TEST(CheckFull, Deterministic) {
  const double b1 = std::sqrt(12.0), b2 = 2.0 * std::sqrt(5.0);
  const auto a = check_full_decision_conditions(props::exp_family(b1, b2), 5, b1, b2, 50.0, 400);
  const auto b = check_full_decision_conditions(props::exp_family(b1, b2), 5, b1, b2, 50.0, 400);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (size_t k = 0; k < a.checks.size(); ++k) {
    EXPECT_EQ(a.checks[k].passed, b.checks[k].passed);
    EXPECT_EQ(a.checks[k].detail, b.checks[k].detail);
  }
  EXPECT_EQ(a.c0_empirical, b.c0_empirical);
}

TEST(CheckFull, BadArguments) {
  const auto s = props::exp_family(1.0, 1.0);
  EXPECT_THROW(check_full_decision_conditions(s, 5, 1.0, 1.0, 0.0, 400), InvalidArgument);
  EXPECT_THROW(check_full_decision_conditions(s, 5, 1.0, 1.0, 10.0, 10), InvalidArgument);
}

namespace {

// Partial-decision power family with a large power-law consensus gain.
ScheduleSet partial_family(double w_scale) {
  const double b1 = std::sqrt(12.0), b2 = 2.0 * std::sqrt(5.0);
  const double k = std::sqrt(5.0 * b1 * b1 + 1.0);
  ScheduleSet s;
  s.sigma = ParamSchedule::power(1.0, 6.0);
  s.delta = ParamSchedule::power(k, -0.5);
  s.epsilon = ParamSchedule::power(k / b2, 1.2);
  s.gamma = derive_gamma(5, b1, b2, s.delta, s.epsilon, GammaVariant::kPartial);
  s.w = w_scale > 0.0 ? ParamSchedule::power(w_scale, 9.5) : ParamSchedule::constant(0.0);
  return s;
}

}  // namespace

TEST(CheckPartial, LargePowerGainPasses) {
  const double b1 = std::sqrt(12.0), b2 = 2.0 * std::sqrt(5.0);
  const double lmin = lambda_min_all(CommGraph::ring(5));
  const auto r = check_partial_decision_conditions(partial_family(700.0), 5, b1, b2, b1, lmin, 1e5, 400);
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  ASSERT_TRUE(r.min_theta_margin.has_value());
  EXPECT_GT(*r.min_theta_margin, 0.0);
}

TEST(CheckPartial, ZeroGainFailsTheta) {
  const double b1 = std::sqrt(12.0), b2 = 2.0 * std::sqrt(5.0);
  const double lmin = lambda_min_all(CommGraph::ring(5));
  const auto r = check_partial_decision_conditions(partial_family(0.0), 5, b1, b2, b1, lmin, 1e5, 400);
  const auto* th = r.find("theta >= u1*sigma/4");
  ASSERT_NE(th, nullptr);
  EXPECT_FALSE(th->passed);
  EXPECT_TRUE(th->witness_t.has_value());
}

// The five-player schedules with w = 500 + 500(1+t)^9 on the ring: the report
// is produced over [0, 10]; the outcome is recorded, not asserted.
TEST(CheckPartial, ExampleSchedulesReportOverTen) {
  ScheduleSet s;
  s.delta = ParamSchedule::power(0.1, -0.5);
  s.epsilon = ParamSchedule::power(20.0, 1.2);
  s.gamma = derive_gamma(5, 5.0, 5.0, s.delta, s.epsilon, GammaVariant::kPartial);
  s.sigma = ParamSchedule::power(1.0, 5.0);
  s.w = ParamSchedule::sum({ParamSchedule::constant(500.0), ParamSchedule::power(500.0, 9.0)});
  const auto r = check_partial_decision_conditions(s, 5, 5.0, 5.0, 5.0, lambda_min_all(CommGraph::ring(5)),
                                           10.0, 400);
  EXPECT_EQ(r.horizon, 10.0);
  EXPECT_NE(r.find("theta >= u1*sigma/4"), nullptr);
  EXPECT_NE(r.find("r2/(u1*sigma) -> 0"), nullptr);
  RecordProperty("all_passed", r.all_passed() ? "true" : "false");
}

TEST(CheckUnconstrained, ConsensusSchedulesPass) {
  const double lmin = lambda_min_all(CommGraph::ring(5));
  const auto r = check_unconstrained_conditions(ParamSchedule::power(1.0, -0.5),
                                                ParamSchedule::power(4000.0, 0.5), 5, 4.0, 4.0,
                                                lmin, 10.0, 10.0, 1e6, 400);
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(CheckUnconstrained, ConstantDeltaAndSmallGainFail) {
  const double lmin = lambda_min_all(CommGraph::ring(5));
  const auto r = check_unconstrained_conditions(ParamSchedule::constant(0.5),
                                                ParamSchedule::constant(1.0), 5, 4.0, 4.0, lmin,
                                                10.0, 10.0, 1e6, 400);
  EXPECT_FALSE(r.find("delta -> 0")->passed);
  EXPECT_FALSE(r.find("consensus gain")->passed);
}

TEST(Property, ScheduleCheckerFamilies) {
  const auto r = props::schedule_checker_families();
  EXPECT_TRUE(r.passed) << r.detail;
}
