#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctes/curlicue.hpp"
#include "ctes/interferogram.hpp"
#include "ctes/planner.hpp"

namespace ctes {

enum class Verdict { factor, non_factor, s_artifact };

std::string_view verdict_name(Verdict v) noexcept;

/// Flagging threshold used when none is given: 1 - 1e-9 in direct mode
/// (divisors evaluate to exactly 1), 0.99 in sampled mode.
double default_threshold(SamplingMode mode) noexcept;

/// Index used for candidates reported by the s pre-check rather than by an
/// interferogram.
inline constexpr int kPrecheckIndex = -1;

struct Candidate {
  std::uint64_t ell = 0;
  double intensity = 0.0;
  int interferogram_index = 0;
  bool flagged = false;
  Verdict verdict = Verdict::non_factor;
  /// For s artifacts: ell / gcd(ell, s), which always divides N.
  std::optional<std::uint64_t> recovered;
};

struct TrialOptions {
  SamplingMode mode = SamplingMode::direct;
  std::optional<double> threshold;
  int interferogram_index = 0;
};

/// Every integer trial point inside the view's xi_{N,s} span, with its
/// intensity and whether it reaches the threshold. Direct mode evaluates each
/// point exactly; sampled mode reads the nearest recorded sample.
std::vector<Candidate> candidate_trials(const RescaledView& view, const TrialOptions& options = {});

/// Verifies flagged candidates by exact division. Prime factors of s that
/// divide N are prepended as factors with index kPrecheckIndex.
std::vector<Candidate> classify(std::uint64_t n, std::uint64_t s, std::vector<Candidate> raw);

/// Brute-force divisors of n in [lo, hi].
std::vector<std::uint64_t> oracle_divisors(std::uint64_t n, double lo, double hi);

/// Distinct prime factors of s by trial division.
std::vector<std::uint64_t> prime_divisors(std::uint64_t s);

struct FactorOptions {
  /// Plan to run on instead of the minimal single-N plan (for example a
  /// range plan shared by many N). Its method and s must match the call.
  std::optional<InterferogramPlan> plan;
  std::optional<double> threshold;
  std::optional<double> x_max;
  /// Keep the trivial trial points 1 and N.
  bool include_trivial = false;
  /// Also decompose N fully into primes by re-running on cofactors.
  bool recursive = false;
};

struct FactorReport {
  std::uint64_t n = 0;
  Method method = Method::method1;
  std::uint64_t s = 1;
  /// N with powers of two removed (method1); N otherwise.
  std::uint64_t reduced_n = 0;
  unsigned stripped_twos = 0;
  TrialBounds trial{};
  std::vector<double> x_values;
  std::vector<Candidate> candidates;
  std::vector<std::uint64_t> confirmed_factors;
  bool complete = false;
  /// method1 only: complete coverage of [3, sqrt(N')] found no factor, so the
  /// odd part N' > 1 is prime.
  bool probable_prime = false;
  std::optional<std::uint64_t> feasible_n_max;
  std::vector<std::uint64_t> prime_factors;
  std::string note;
};

/// Full pipeline: strip twos (method1), plan, record each interferogram,
/// rescale, read trial points, verify, merge.
FactorReport factor(std::uint64_t n, const SpectralWindow& window, Method method, std::uint64_t s,
                    const CurlicueParams& params, const SamplingConfig& cfg, const FactorOptions& options = {});

}  // namespace ctes
