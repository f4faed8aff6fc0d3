#include "ctes/planner.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ctes/errors.hpp"
#include "oracle.hpp"

namespace ctes {
namespace {

// [trial range of N] inside [N o_min / x, N o_max / x], checked directly.
bool single_covers(Method method, std::uint64_t n, const SpectralWindow& w, double x) {
  const double nd = static_cast<double>(n);
  const double lo = nd * w.o_min() / x, hi = nd * w.o_max() / x;
  const double root = std::sqrt(nd);
  const double a = method == Method::method1 ? 3.0 : root;
  const double b = method == Method::method1 ? root : nd;
  const double eps = 1e-12 * std::max(1.0, hi);
  return lo <= a + eps && b <= hi + eps;
}

std::size_t containing_count(const std::vector<CoverageInterval>& iv, double v) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < iv.size(); ++i) {
    const double lo = i == 0 ? iv[i].lo * (1 - 1e-9) : iv[i].lo;
    const bool last = i + 1 == iv.size();
    if (v >= lo && (v < iv[i].hi || (last && v <= iv[i].hi * (1 + 1e-9)))) ++count;
  }
  return count;
}

TEST(Method, NumberRoundTrip) {
  EXPECT_EQ(method_from_number(1), Method::method1);
  EXPECT_EQ(method_from_number(2), Method::method2);
  EXPECT_EQ(method_number(Method::method2), 2);
  EXPECT_THROW(method_from_number(3), ParameterError);
}

TEST(SinglePlanMethod1, OctaveWindow) {
  const SpectralWindow w(1.0, 2.0);
  const auto plan = single_plan_method1(w);
  EXPECT_DOUBLE_EQ(plan.x_cap, 12.0);
  ASSERT_TRUE(plan.single_n.has_value());
  EXPECT_EQ(*plan.single_n, 36u);
  const auto r = plan.range_at(plan.x_cap);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.n_min, 36u);
  EXPECT_EQ(r.n_max, 36u);
  // Brute force: ell = 3..6 all fit for N = 36, and 35/37 do not.
  EXPECT_TRUE(single_covers(Method::method1, 36, w, 12.0));
  EXPECT_FALSE(single_covers(Method::method1, 35, w, 12.0));
  EXPECT_FALSE(single_covers(Method::method1, 37, w, 12.0));
}

TEST(SinglePlanMethod1, NonIntegerRatioHasNoSingleN) {
  const auto plan = single_plan_method1(SpectralWindow(1.0, 2.5));
  EXPECT_FALSE(plan.single_n.has_value());
  EXPECT_DOUBLE_EQ(plan.x_cap, 3.0 * 6.25);
}

TEST(SinglePlanMethod2, OctaveWindow) {
  const SpectralWindow w(1.0, 2.0);
  const auto plan = single_plan_method2(w);
  EXPECT_DOUBLE_EQ(plan.x_cap, 2.0);
  const auto r = plan.range_at(2.0);
  EXPECT_EQ(r.n_min, 1u);
  EXPECT_EQ(r.n_max, 4u);
  for (std::uint64_t n = 1; n <= 4; ++n) EXPECT_TRUE(single_covers(Method::method2, n, w, 2.0)) << n;
  EXPECT_FALSE(single_covers(Method::method2, 5, w, 2.0));
  EXPECT_FALSE(plan.range_at(2.5).feasible);
}

TEST(SinglePlan, RangesMatchBruteForce) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> cdist(1.2, 6.0), frac(0.05, 1.0);
  for (int t = 0; t < 300; ++t) {
    const SpectralWindow w(1.0, cdist(rng));
    for (Method m : {Method::method1, Method::method2}) {
      const auto plan = m == Method::method1 ? single_plan_method1(w) : single_plan_method2(w);
      const double x = plan.x_cap * frac(rng);
      const auto r = plan.range_at(x);
      if (!r.feasible) continue;
      for (std::uint64_t n = r.n_min; n <= std::min<std::uint64_t>(r.n_max, r.n_min + 200); ++n) {
        EXPECT_TRUE(single_covers(m, n, w, x)) << "N=" << n;
      }
      EXPECT_FALSE(single_covers(m, r.n_max + 1, w, x));
      if (r.n_min > 1 && m == Method::method1 && r.n_min - 1 >= 9) {
        EXPECT_FALSE(single_covers(m, r.n_min - 1, w, x));
      }
    }
  }
}

TEST(SequencePlanSingleN, Examples) {
  const SpectralWindow w(1.0, 2.0);
  const auto p1 = sequence_plan_single_n(64, w, Method::method1);
  EXPECT_EQ(p1.n(), 2u);
  EXPECT_DOUBLE_EQ(p1.x_values()[0], 64.0 / 3.0);
  EXPECT_TRUE(covers(coverage_intervals(p1, 64), trial_bounds(Method::method1, 64)));

  const auto p2 = sequence_plan_single_n(64, w, Method::method2);
  EXPECT_EQ(p2.n(), 3u);
  EXPECT_DOUBLE_EQ(p2.x_values()[0], 8.0);
  EXPECT_TRUE(covers(coverage_intervals(p2, 64), trial_bounds(Method::method2, 64)));

  EXPECT_EQ(sequence_plan_single_n(4, w, Method::method1).n(), 1u);
  EXPECT_THROW(sequence_plan_single_n(3, w, Method::method1), DomainError);
  EXPECT_THROW(sequence_plan_single_n(1, w, Method::method2), DomainError);
}

TEST(SequencePlanRange, Method1WorkedExample) {
  const auto plan = sequence_plan_range(8, 64, SpectralWindow(1.0, 2.0), Method::method1);
  ASSERT_EQ(plan.n(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(plan.x_values()[i], 64.0 / 3.0 * std::ldexp(1.0, -static_cast<int>(i)));
  for (std::uint64_t n = 8; n <= 64; ++n) {
    EXPECT_TRUE(covers(coverage_intervals(plan, n), trial_bounds(Method::method1, n))) << n;
  }
}

TEST(SequencePlanRange, Method2WorkedExample) {
  const auto plan = sequence_plan_range(1, 64, SpectralWindow(1.0, 2.0), Method::method2);
  ASSERT_EQ(plan.n(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(plan.x_values()[i], 8.0 * std::ldexp(1.0, -static_cast<int>(i)));
  for (std::uint64_t n = 1; n <= 64; ++n) {
    EXPECT_TRUE(covers(coverage_intervals(plan, n), trial_bounds(Method::method2, n))) << n;
  }
}

TEST(SequencePlanRange, SScalingTriplesXWithSameTrialCoverage) {
  const SpectralWindow w(1.0, 2.0);
  const auto base = sequence_plan_range(1, 64, w, Method::method2, 1);
  const auto scaled = sequence_plan_range(1, 64, w, Method::method2, 3);
  EXPECT_EQ(scaled.s(), 3u);
  ASSERT_EQ(scaled.n(), base.n());
  for (std::size_t i = 0; i < base.n(); ++i) EXPECT_DOUBLE_EQ(scaled.x_values()[i], 3.0 * base.x_values()[i]);
  for (std::uint64_t n = 1; n <= 64; ++n) {
    const auto a = coverage_intervals(base, n);
    const auto b = coverage_intervals(scaled, n);
    EXPECT_TRUE(covers(b, trial_bounds(Method::method2, n)));
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_NEAR(b[i].lo, a[i].lo, 1e-12 * a[i].lo);
      EXPECT_NEAR(b[i].hi, a[i].hi, 1e-12 * a[i].hi);
    }
  }
}

TEST(SequencePlanRange, RejectsBadRange) {
  const SpectralWindow w(1.0, 2.0);
  EXPECT_THROW(sequence_plan_range(10, 9, w, Method::method1), DomainError);
  EXPECT_THROW(sequence_plan_range(0, 9, w, Method::method2), DomainError);
  EXPECT_THROW(sequence_plan_range(1, 9, w, Method::method2, 0), DomainError);
}

TEST(SequencePlanRange, X0OverrideRecomputesRunCount) {
  const SpectralWindow w(1.0, 2.0);
  PlanOptions po;
  po.x0 = 32.0;  // tight is 8: log2(32) = 5
  const auto plan = sequence_plan_range(1, 64, w, Method::method2, 1, po);
  EXPECT_EQ(plan.n(), 5u);
  EXPECT_EQ(plan.x_values()[0], 32.0);
  for (std::uint64_t n = 1; n <= 64; ++n) EXPECT_TRUE(covers(coverage_intervals(plan, n), trial_bounds(Method::method2, n)));
  po.x0 = 7.0;
  EXPECT_THROW(sequence_plan_range(1, 64, w, Method::method2, 1, po), DomainError);
}

TEST(SequencePlanRange, XCeilingMarksPlanInfeasible) {
  const SpectralWindow w(1.0, 2.0);
  PlanOptions po;
  po.x_max = 4.0;
  const auto p2 = sequence_plan_range(1, 64, w, Method::method2, 1, po);
  EXPECT_FALSE(p2.feasible());
  EXPECT_EQ(p2.feasible_n_max().value(), 16u);
  const auto p1 = sequence_plan_range(8, 64, w, Method::method1, 1, po);
  EXPECT_FALSE(p1.feasible());
  EXPECT_EQ(p1.feasible_n_max().value(), 12u);
  po.x_max = 100.0;
  EXPECT_TRUE(sequence_plan_range(8, 64, w, Method::method1, 1, po).feasible());
}

TEST(CoverageIntervals, WorkedExampleAssignments) {
  const SpectralWindow w(1.0, 2.0);
  const auto p1 = sequence_plan_range(8, 64, w, Method::method1);
  const auto iv63 = coverage_intervals(p1, 63);
  EXPECT_EQ(locate(iv63, 3.0), 0u);
  EXPECT_EQ(locate(iv63, 7.0), 1u);
  EXPECT_EQ(locate(iv63, 9.0), 1u);
  const auto iv15 = coverage_intervals(p1, 15);
  EXPECT_EQ(locate(iv15, 3.0), 2u);
  EXPECT_EQ(locate(iv15, 5.0), 2u);

  const auto p2 = sequence_plan_range(1, 64, w, Method::method2);
  const auto m2_15 = coverage_intervals(p2, 15);
  EXPECT_EQ(locate(m2_15, 3.0), 0u);
  EXPECT_EQ(locate(m2_15, 5.0), 1u);
  EXPECT_EQ(locate(coverage_intervals(p2, 63), 9.0), 0u);

  EXPECT_THROW(coverage_intervals(p1, 7), DomainError);
  EXPECT_THROW(coverage_intervals(p1, 65), DomainError);
}

TEST(CoverageIntervals, BoundsFollowTheScalingRelation) {
  const auto plan = sequence_plan_range(100, 5000, SpectralWindow(0.7, 1.9), Method::method1, 5);
  for (const auto& iv : coverage_intervals(plan, 777)) {
    const double x = plan.x_values()[iv.index];
    EXPECT_NEAR(iv.lo, 5.0 * 777 * 0.7 / x, 1e-9 * iv.lo);
    EXPECT_NEAR(iv.hi, 5.0 * 777 * 1.9 / x, 1e-9 * iv.hi);
    EXPECT_NEAR(iv.hi / iv.lo, plan.c(), 1e-9);
  }
}

TEST(PlanProperties, GeometricProgression) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> cdist(1.1, 5.0);
  for (int t = 0; t < 200; ++t) {
    const SpectralWindow w(2.0, 2.0 * cdist(rng));
    const auto plan = sequence_plan_range(9, 1000000 + t, w, t % 2 ? Method::method1 : Method::method2);
    for (std::size_t i = 0; i + 1 < plan.n(); ++i) {
      const double ratio = plan.x_values()[i] / plan.x_values()[i + 1];
      EXPECT_NEAR(ratio, plan.c(), 2 * std::numeric_limits<double>::epsilon() * plan.c());
    }
  }
}

TEST(PlanProperties, RandomTiling) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> cdist(1.05, 8.0), odist(0.1, 100.0);
  std::uniform_int_distribution<std::uint64_t> ndist(9, 100000000);
  for (int t = 0; t < 500; ++t) {
    const double o_min = odist(rng);
    const SpectralWindow w(o_min, o_min * cdist(rng));
    const Method m = t % 2 ? Method::method1 : Method::method2;
    const std::uint64_t n = ndist(rng);
    const auto plan = sequence_plan_single_n(n, w, m);
    const auto iv = coverage_intervals(plan, n);
    for (std::size_t i = 0; i + 1 < iv.size(); ++i) {
      const double recomputed_lo = static_cast<double>(n) * w.o_min() / plan.x_values()[i + 1];
      EXPECT_NEAR(iv[i].hi, recomputed_lo, 1e-9 * iv[i].hi);
    }
    EXPECT_TRUE(covers(iv, trial_bounds(m, n)));
  }
}

TEST(PlanProperties, LogarithmicRunCount) {
  for (int k = 2; k <= 20; ++k) {
    const auto plan = sequence_plan_range(1, std::uint64_t{1} << k, SpectralWindow(1.0, 2.0), Method::method2);
    EXPECT_EQ(plan.n(), static_cast<std::size_t>((k + 1) / 2)) << "k=" << k;
  }
}

TEST(PlanProperties, EveryDivisorInExactlyOneInterval) {
  const SpectralWindow w(1.0, 2.0);
  for (std::uint64_t n = 4; n <= 2000; ++n) {
    for (Method m : {Method::method1, Method::method2}) {
      const auto iv = coverage_intervals(sequence_plan_single_n(n, w, m), n);
      const auto tb = trial_bounds(m, n);
      const auto lo = static_cast<std::uint64_t>(std::ceil(tb.lo));
      const auto hi = m == Method::method1 ? testing::isqrt(n) : n;
      for (auto d : testing::trial_division(n, lo, hi)) {
        EXPECT_EQ(containing_count(iv, static_cast<double>(d)), 1u) << "N=" << n << " d=" << d;
        EXPECT_TRUE(locate(iv, static_cast<double>(d)).has_value());
      }
    }
  }
}

}  // namespace
}  // namespace ctes
