#pragma once

#include <cstdint>
#include <vector>

#include "ctes/curlicue.hpp"

namespace ctes {

/// Available range [o_min, o_max] of the continuous observable. Values are
/// in arbitrary units; only the ratio c = o_max / o_min matters downstream.
class SpectralWindow {
 public:
  SpectralWindow(double o_min, double o_max);

  double o_min() const noexcept { return o_min_; }
  double o_max() const noexcept { return o_max_; }
  double ratio() const noexcept { return o_max_ / o_min_; }
  double length() const noexcept { return o_max_ - o_min_; }
  bool contains(double o) const noexcept { return o >= o_min_ && o <= o_max_; }

  friend bool operator==(const SpectralWindow&, const SpectralWindow&) = default;

 private:
  double o_min_;
  double o_max_;
};

enum class SamplingMode {
  direct,   // trial points evaluated exactly, grid restricted to integer trials
  sampled,  // dense continuous grid, trial intensities read from snapped samples
};

struct SamplingConfig {
  std::uint32_t samples_per_unit = 32;  // grid points per unit of xi_N
  bool snap_to_integers = true;
  SamplingMode mode = SamplingMode::direct;

  void validate() const;
};

enum class TrialRange {
  low,   // xi_N in [1, sqrt(N)]
  high,  // xi_N in [sqrt(N), N]
};

/// Conservative xi step inside the admissible interval for the given trial
/// range: 10/N^2 for `low`, 10/N^1.5 for `high`. When that is not below 1 the
/// midpoint of (lower bound, 1) is returned instead.
double safe_step(std::uint64_t n, TrialRange range);

/// Grid of o_xi values over `window` for unit parameter x, uniform with
/// `cfg.samples_per_unit` points per unit of xi_N = (n / x) o_xi. With
/// snapping, every integer xi_N inside the window maps to an exact grid point
/// ell * x / n. For s-scaled axes pass n = s * N. Returns a strictly
/// increasing, duplicate-free list that includes both window ends.
std::vector<double> build_grid(const SpectralWindow& window, double x, std::uint64_t n, const SamplingConfig& cfg);

/// Only the snapped integer trial points of build_grid; used by the direct
/// mode pipeline where the continuous curve is not needed.
std::vector<double> build_trial_grid(const SpectralWindow& window, double x, std::uint64_t n);

struct Sample {
  double o_xi;
  double intensity;
};

/// Intensity curve I(o_xi; x) recorded at a fixed unit parameter x.
class Interferogram {
 public:
  Interferogram(double x, SpectralWindow window, CurlicueParams params, std::vector<Sample> samples);

  double x() const noexcept { return x_; }
  const SpectralWindow& window() const noexcept { return window_; }
  const CurlicueParams& params() const noexcept { return params_; }
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  bool empty() const noexcept { return samples_.empty(); }

 private:
  double x_;
  SpectralWindow window_;
  CurlicueParams params_;
  std::vector<Sample> samples_;
};

/// Evaluates I(o_xi; x) = ctes_intensity(o_xi / x) at every grid point. The
/// grid must be strictly increasing and inside the window.
Interferogram record(const CurlicueParams& params, const SpectralWindow& window, double x,
                     const std::vector<double>& grid);

struct RescaledSample {
  double xi_n;
  double intensity;
};

/// An interferogram viewed on the trial-factor axis xi_{N,s} = (s N / x) o_xi.
class RescaledView {
 public:
  const Interferogram& source() const noexcept { return source_; }
  std::uint64_t n() const noexcept { return n_; }
  std::uint64_t s() const noexcept { return s_; }
  /// s * N / x
  double slope() const noexcept { return slope_; }
  double span_lo() const noexcept { return span_lo_; }
  double span_hi() const noexcept { return span_hi_; }
  const std::vector<RescaledSample>& samples() const noexcept { return samples_; }

 private:
  friend RescaledView rescale(const Interferogram&, std::uint64_t, std::uint64_t);
  RescaledView(Interferogram source, std::uint64_t n, std::uint64_t s);

  Interferogram source_;
  std::uint64_t n_;
  std::uint64_t s_;
  double slope_;
  double span_lo_;
  double span_hi_;
  std::vector<RescaledSample> samples_;
};

RescaledView rescale(const Interferogram& ig, std::uint64_t n, std::uint64_t s = 1);

}  // namespace ctes
