#include "ctes/interferogram.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ctes/errors.hpp"
#include "numeric.hpp"

namespace ctes {
namespace {

constexpr std::size_t kMaxGridPoints = std::size_t{1} << 26;

void require_positive_x(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("interferogram: x must be finite and > 0");
}

// Snapped o_xi positions of the integer trial points inside the window.
std::vector<double> integer_points(const SpectralWindow& window, double x, std::uint64_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  const double nd = static_cast<double>(n);
  const double lo = nd * window.o_min() / x;
  const double hi = nd * window.o_max() / x;
  const double first = std::max(1.0, detail::tolerant_ceil(lo));
  const double last = detail::tolerant_floor(hi);
  if (last < first) return out;
  if (last - first + 1.0 > static_cast<double>(kMaxGridPoints)) {
    throw DomainError("build_grid: too many integer trial points in window");
  }
  out.reserve(static_cast<std::size_t>(last - first + 1.0));
  for (double ell = first; ell <= last; ell += 1.0) {
    out.push_back(std::clamp(ell * x / nd, window.o_min(), window.o_max()));
  }
  return out;
}

}  // namespace

SpectralWindow::SpectralWindow(double o_min, double o_max) : o_min_(o_min), o_max_(o_max) {
  if (!std::isfinite(o_min) || !std::isfinite(o_max) || !(o_min > 0.0)) {
    throw ParameterError("window: o_min must be finite and > 0");
  }
  if (!(o_max > o_min)) throw ParameterError("window: o_max must exceed o_min");
}

void SamplingConfig::validate() const {
  if (samples_per_unit < 2) throw ParameterError("sampling: samples_per_unit must be >= 2");
}

double safe_step(std::uint64_t n, TrialRange range) {
  if (n < 2) throw DomainError("safe_step: N must be >= 2");
  const double nd = static_cast<double>(n);
  const double lower = range == TrialRange::low ? 1.0 / (nd * nd) : 1.0 / (nd * std::sqrt(nd));
  const double step = 10.0 * lower;
  return step < 1.0 ? step : 0.5 * (lower + 1.0);
}

std::vector<double> build_grid(const SpectralWindow& window, double x, std::uint64_t n, const SamplingConfig& cfg) {
  require_positive_x(x);
  cfg.validate();
  const double span = static_cast<double>(n) * window.length() / x;
  const double units = std::ceil(span * cfg.samples_per_unit);
  if (!(units < static_cast<double>(kMaxGridPoints))) {
    throw DomainError("build_grid: grid would exceed " + std::to_string(kMaxGridPoints) + " points");
  }
  const auto intervals = std::max<std::size_t>(2, static_cast<std::size_t>(units));

  std::vector<double> uniform(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    uniform[i] = window.o_min() + window.length() * static_cast<double>(i) / static_cast<double>(intervals);
  }
  uniform.back() = window.o_max();
  if (!cfg.snap_to_integers) return uniform;

  const auto snapped = integer_points(window, x, n);
  const double near = detail::kRelTol * window.o_max();
  std::vector<double> grid;
  grid.reserve(uniform.size() + snapped.size());
  std::size_t k = 0;
  for (double u : uniform) {
    while (k < snapped.size() && snapped[k] < u - near) grid.push_back(snapped[k++]);
    if (k < snapped.size() && std::abs(snapped[k] - u) <= near) {
      grid.push_back(snapped[k++]);
    } else {
      grid.push_back(u);
    }
  }
  while (k < snapped.size()) grid.push_back(snapped[k++]);
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<double> build_trial_grid(const SpectralWindow& window, double x, std::uint64_t n) {
  require_positive_x(x);
  auto grid = integer_points(window, x, n);
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

Interferogram::Interferogram(double x, SpectralWindow window, CurlicueParams params, std::vector<Sample> samples)
    : x_(x), window_(window), params_(params), samples_(std::move(samples)) {
  require_positive_x(x);
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!window_.contains(samples_[i].o_xi)) throw DomainError("interferogram: sample outside window");
    if (i > 0 && !(samples_[i].o_xi > samples_[i - 1].o_xi)) {
      throw DomainError("interferogram: samples must be strictly increasing in o_xi");
    }
  }
}

Interferogram record(const CurlicueParams& params, const SpectralWindow& window, double x,
                     const std::vector<double>& grid) {
  require_positive_x(x);
  std::vector<Sample> samples;
  samples.reserve(grid.size());
  for (double o : grid) {
    if (!(o > 0.0)) throw DomainError("record: o_xi must be > 0");
    samples.push_back({o, ctes_intensity(o / x, params)});
  }
  return Interferogram(x, window, params, std::move(samples));
}

RescaledView::RescaledView(Interferogram source, std::uint64_t n, std::uint64_t s)
    : source_(std::move(source)), n_(n), s_(s) {
  if (n == 0) throw DomainError("rescale: N must be >= 1");
  if (s == 0) throw DomainError("rescale: s must be >= 1");
  slope_ = static_cast<double>(detail::checked_mul(s, n, "rescale")) / source_.x();
  span_lo_ = slope_ * source_.window().o_min();
  span_hi_ = slope_ * source_.window().o_max();
  samples_.reserve(source_.samples().size());
  for (const auto& smp : source_.samples()) samples_.push_back({slope_ * smp.o_xi, smp.intensity});
}

RescaledView rescale(const Interferogram& ig, std::uint64_t n, std::uint64_t s) {
  return RescaledView(ig, n, s);
}

}  // namespace ctes
