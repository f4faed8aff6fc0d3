#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ctes/interferogram.hpp"

namespace ctes {

/// method1 checks trial factors in [3, sqrt(N)], method2 in [sqrt(N), N].
enum class Method { method1, method2 };

int method_number(Method m) noexcept;
/// Accepts 1 or 2; throws ParameterError otherwise.
Method method_from_number(int number);

struct TrialBounds {
  double lo;
  double hi;
  bool empty() const noexcept { return hi < lo; }
};

/// [3, sqrt(N)] for method1, [sqrt(N), N] for method2.
TrialBounds trial_bounds(Method method, std::uint64_t n);

/// Integers factorable with a single interferogram at a given x.
struct FactorableRange {
  std::uint64_t n_min = 0;
  std::uint64_t n_max = 0;
  bool feasible = false;
};

/// Single-interferogram limits for one method and window.
struct SingleInterferogramPlan {
  Method method;
  SpectralWindow window;
  double x_cap;
  /// 9 c^2 for method1 when c = o_max/o_min is an integer; unset otherwise.
  std::optional<std::uint64_t> single_n;

  /// Range of N whose whole trial range fits one interferogram recorded at x.
  /// Infeasible (empty) when x exceeds x_cap.
  FactorableRange range_at(double x) const;
};

SingleInterferogramPlan single_plan_method1(const SpectralWindow& window);
SingleInterferogramPlan single_plan_method2(const SpectralWindow& window);

struct PlanOptions {
  /// Larger admissible first unit parameter; n is recomputed for it.
  std::optional<double> x0;
  /// Physical ceiling on x. Plans with x0 above it come back infeasible.
  std::optional<double> x_max;
};

/// Geometric sequence x_0 > x_1 = x_0/c > ... of unit parameters whose
/// interferograms together cover every trial factor of every N in
/// [n_min, n_max].
class InterferogramPlan {
 public:
  InterferogramPlan(Method method, SpectralWindow window, std::uint64_t s, std::vector<double> x_values,
                    std::uint64_t n_min, std::uint64_t n_max);

  Method method() const noexcept { return method_; }
  const SpectralWindow& window() const noexcept { return window_; }
  std::uint64_t s() const noexcept { return s_; }
  double c() const noexcept { return window_.ratio(); }
  const std::vector<double>& x_values() const noexcept { return x_values_; }
  std::size_t n() const noexcept { return x_values_.size(); }
  std::uint64_t n_min() const noexcept { return n_min_; }
  std::uint64_t n_max() const noexcept { return n_max_; }

  bool feasible() const noexcept { return feasible_; }
  const std::optional<double>& x_max() const noexcept { return x_max_; }
  /// Largest N_max reachable under x_max; set only when x_max is.
  const std::optional<std::uint64_t>& feasible_n_max() const noexcept { return feasible_n_max_; }

  void apply_x_max(double x_max);

 private:
  Method method_;
  SpectralWindow window_;
  std::uint64_t s_;
  std::vector<double> x_values_;
  std::uint64_t n_min_;
  std::uint64_t n_max_;
  bool feasible_ = true;
  std::optional<double> x_max_;
  std::optional<std::uint64_t> feasible_n_max_;
};

/// Minimal plan for one integer: x_0 = N o_min / 3 (method1, N >= 4) or
/// x_0 = sqrt(N) o_min (method2, N >= 2).
InterferogramPlan sequence_plan_single_n(std::uint64_t n, const SpectralWindow& window, Method method,
                                         const PlanOptions& options = {});

/// Minimal plan for every N in [n_min, n_max], optionally on the s-scaled
/// axis xi_{N,s} = s N o_xi / x (which multiplies every x_i by s).
InterferogramPlan sequence_plan_range(std::uint64_t n_min, std::uint64_t n_max, const SpectralWindow& window,
                                      Method method, std::uint64_t s = 1, const PlanOptions& options = {});

/// Trial factors checkable for N by interferogram `index`.
struct CoverageInterval {
  std::uint64_t n;
  std::size_t index;
  double lo;
  double hi;
};

/// One interval per interferogram of the plan, lo_i = s N o_min / x_i and
/// hi_i = s N o_max / x_i. Consecutive intervals share their boundary value
/// exactly (lo_{i+1} is set to hi_i).
std::vector<CoverageInterval> coverage_intervals(const InterferogramPlan& plan, std::uint64_t n);

/// Index of the interval holding `value`, treating intervals as [lo, hi)
/// except the last, which is closed.
std::optional<std::size_t> locate(const std::vector<CoverageInterval>& intervals, double value);

/// True when the union of the intervals contains `bounds` (always true for
/// an empty trial range).
bool covers(const std::vector<CoverageInterval>& intervals, const TrialBounds& bounds);

}  // namespace ctes
