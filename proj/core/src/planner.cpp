#include "ctes/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ctes/errors.hpp"
#include "numeric.hpp"

namespace ctes {
namespace {

// Abutment and containment checks on real-valued interval ends.
constexpr double kCoverTol = 1e-9;

std::uint64_t to_count(double v) {
  if (!(v >= 0.0)) return 0;
  if (v >= 18446744073709551615.0) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(v);
}

std::vector<double> geometric_sequence(double x0, double c, std::uint32_t n) {
  std::vector<double> xs;
  xs.reserve(n);
  double x = x0;
  for (std::uint32_t i = 0; i < n; ++i) {
    xs.push_back(x);
    x /= c;
  }
  return xs;
}

}  // namespace

int method_number(Method m) noexcept { return m == Method::method1 ? 1 : 2; }

Method method_from_number(int number) {
  if (number == 1) return Method::method1;
  if (number == 2) return Method::method2;
  throw ParameterError("method must be 1 or 2, got " + std::to_string(number));
}

TrialBounds trial_bounds(Method method, std::uint64_t n) {
  const double nd = static_cast<double>(n);
  const double root = std::sqrt(nd);
  if (method == Method::method1) return {3.0, root};
  return {root, nd};
}

FactorableRange SingleInterferogramPlan::range_at(double x) const {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("single plan: x must be finite and > 0");
  if (x > x_cap * (1.0 + detail::kRelTol)) return {};
  const double o_min = window.o_min();
  const double o_max = window.o_max();
  FactorableRange r;
  if (method == Method::method1) {
    r.n_max = to_count(detail::tolerant_floor(3.0 * x / o_min));
    r.n_min = std::max<std::uint64_t>(1, to_count(detail::tolerant_ceil(x * x / (o_max * o_max))));
  } else {
    r.n_max = to_count(detail::tolerant_floor(x * x / (o_min * o_min)));
    r.n_min = 1;
  }
  r.feasible = r.n_min <= r.n_max;
  return r;
}

SingleInterferogramPlan single_plan_method1(const SpectralWindow& window) {
  SingleInterferogramPlan plan{Method::method1, window, 3.0 * window.o_max() * window.o_max() / window.o_min(),
                               std::nullopt};
  const double c = window.ratio();
  const double rc = std::round(c);
  if (std::abs(c - rc) <= detail::kRelTol * c) {
    const auto ci = to_count(rc);
    plan.single_n = detail::checked_mul(9, detail::checked_mul(ci, ci, "single_plan_method1"), "single_plan_method1");
  }
  return plan;
}

SingleInterferogramPlan single_plan_method2(const SpectralWindow& window) {
  return {Method::method2, window, window.o_max(), std::nullopt};
}

InterferogramPlan::InterferogramPlan(Method method, SpectralWindow window, std::uint64_t s,
                                     std::vector<double> x_values, std::uint64_t n_min, std::uint64_t n_max)
    : method_(method), window_(window), s_(s), x_values_(std::move(x_values)), n_min_(n_min), n_max_(n_max) {
  if (s_ == 0) throw DomainError("plan: s must be >= 1");
  if (x_values_.empty()) throw DomainError("plan: needs at least one interferogram");
  if (n_min_ == 0 || n_min_ > n_max_) throw DomainError("plan: need 1 <= N_min <= N_max");
}

void InterferogramPlan::apply_x_max(double x_max) {
  if (!(x_max > 0.0)) throw DomainError("plan: x_max must be > 0");
  x_max_ = x_max;
  const double unit = static_cast<double>(s_) * window_.o_min();
  const double ratio = x_max / unit;
  feasible_n_max_ = method_ == Method::method1 ? to_count(detail::tolerant_floor(3.0 * ratio))
                                               : to_count(detail::tolerant_floor(ratio * ratio));
  feasible_ = x_values_.front() <= x_max * (1.0 + detail::kRelTol);
}

InterferogramPlan sequence_plan_single_n(std::uint64_t n, const SpectralWindow& window, Method method,
                                         const PlanOptions& options) {
  if (method == Method::method1 && n < 4) throw DomainError("plan: method1 needs N >= 4");
  if (method == Method::method2 && n < 2) throw DomainError("plan: method2 needs N >= 2");
  return sequence_plan_range(n, n, window, method, 1, options);
}

InterferogramPlan sequence_plan_range(std::uint64_t n_min, std::uint64_t n_max, const SpectralWindow& window,
                                      Method method, std::uint64_t s, const PlanOptions& options) {
  if (n_min == 0 || n_min > n_max) throw DomainError("plan: need 1 <= N_min <= N_max");
  if (s == 0) throw DomainError("plan: s must be >= 1");

  const double c = window.ratio();
  const double unit = static_cast<double>(s) * window.o_min();
  const double root_min = std::sqrt(static_cast<double>(n_min));
  const double root_max = std::sqrt(static_cast<double>(n_max));

  const double tight_x0 =
      method == Method::method1 ? unit * static_cast<double>(n_max) / 3.0 : unit * root_max;
  double x0 = tight_x0;
  if (options.x0) {
    if (!(*options.x0 >= tight_x0 * (1.0 - detail::kRelTol))) {
      throw DomainError("plan: x0 override is below the minimal admissible value");
    }
    x0 = *options.x0;
  }

  // Smallest n with the last interval reaching the top of every trial range.
  const double reach = method == Method::method1 ? x0 / (unit * root_min) : x0 / unit;
  const std::uint32_t n = std::max<std::uint32_t>(1, detail::ceil_log(reach, c));

  InterferogramPlan plan(method, window, s, geometric_sequence(x0, c, n), n_min, n_max);
  if (options.x_max) plan.apply_x_max(*options.x_max);
  return plan;
}

std::vector<CoverageInterval> coverage_intervals(const InterferogramPlan& plan, std::uint64_t n) {
  if (n < plan.n_min() || n > plan.n_max()) {
    throw DomainError("coverage: N=" + std::to_string(n) + " outside plan range [" + std::to_string(plan.n_min()) +
                      ", " + std::to_string(plan.n_max()) + "]");
  }
  const double scaled = static_cast<double>(plan.s()) * static_cast<double>(n);
  std::vector<CoverageInterval> out;
  out.reserve(plan.n());
  for (std::size_t i = 0; i < plan.n(); ++i) {
    const double x = plan.x_values()[i];
    const double lo = i == 0 ? scaled * plan.window().o_min() / x : out.back().hi;
    out.push_back({n, i, lo, scaled * plan.window().o_max() / x});
  }
  return out;
}

std::optional<std::size_t> locate(const std::vector<CoverageInterval>& intervals, double value) {
  // Outer ends get the cover tolerance; inner boundaries are shared exactly.
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    const bool first = i == 0;
    const bool last = i + 1 == intervals.size();
    const double lo = first ? iv.lo * (1.0 - kCoverTol) : iv.lo;
    if (value >= lo && (value < iv.hi || (last && value <= iv.hi * (1.0 + kCoverTol)))) return i;
  }
  return std::nullopt;
}

bool covers(const std::vector<CoverageInterval>& intervals, const TrialBounds& bounds) {
  if (bounds.empty()) return true;
  if (intervals.empty()) return false;
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    const double gap = intervals[i].lo - intervals[i - 1].hi;
    if (std::abs(gap) > kCoverTol * intervals[i - 1].hi) return false;
  }
  return intervals.front().lo <= bounds.lo * (1.0 + kCoverTol) &&
         intervals.back().hi >= bounds.hi * (1.0 - kCoverTol);
}

}  // namespace ctes
