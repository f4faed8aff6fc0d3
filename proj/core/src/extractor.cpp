#include "ctes/extractor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

#include "ctes/errors.hpp"
#include "numeric.hpp"

namespace ctes {
namespace {

// Relative slack on view span ends when enumerating integer trial points.
constexpr double kSpanTol = 1e-9;

double nearest_sample_intensity(const RescaledView& view, double ell) {
  const auto& samples = view.samples();
  auto it = std::lower_bound(samples.begin(), samples.end(), ell,
                             [](const RescaledSample& s, double v) { return s.xi_n < v; });
  if (it == samples.end()) return samples.back().intensity;
  if (it == samples.begin()) return it->intensity;
  const auto prev = std::prev(it);
  return (ell - prev->xi_n) <= (it->xi_n - ell) ? prev->intensity : it->intensity;
}

// Smallest-first prime decomposition using repeated method1 runs.
std::vector<std::uint64_t> decompose(std::uint64_t n, const SpectralWindow& window, const CurlicueParams& params) {
  std::vector<std::uint64_t> primes;
  const auto twos = static_cast<unsigned>(std::countr_zero(n));
  primes.insert(primes.end(), twos, 2);
  std::uint64_t m = n >> twos;
  while (m > 1) {
    if (m < 9) {  // 3, 5 and 7 are prime
      primes.push_back(m);
      break;
    }
    const auto report = factor(m, window, Method::method1, 1, params, SamplingConfig{});
    if (report.confirmed_factors.empty()) {
      primes.push_back(m);
      break;
    }
    const std::uint64_t p = report.confirmed_factors.front();
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  }
  return primes;
}

}  // namespace

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::factor:
      return "factor";
    case Verdict::s_artifact:
      return "s_artifact";
    case Verdict::non_factor:
      break;
  }
  return "non_factor";
}

double default_threshold(SamplingMode mode) noexcept { return mode == SamplingMode::direct ? 1.0 - 1e-9 : 0.99; }

std::vector<Candidate> candidate_trials(const RescaledView& view, const TrialOptions& options) {
  const double threshold = options.threshold.value_or(default_threshold(options.mode));
  const std::uint64_t scaled = detail::checked_mul(view.s(), view.n(), "candidate_trials");

  const double first = std::max(1.0, std::ceil(view.span_lo() * (1.0 - kSpanTol)));
  const double last = std::floor(view.span_hi() * (1.0 + kSpanTol));
  std::vector<Candidate> out;
  if (last < first) return out;
  if (options.mode == SamplingMode::sampled && view.samples().empty()) return out;

  for (double v = first; v <= last; v += 1.0) {
    const auto ell = static_cast<std::uint64_t>(v);
    Candidate c;
    c.ell = ell;
    c.interferogram_index = options.interferogram_index;
    c.intensity = options.mode == SamplingMode::direct ? exact_intensity_at_trial(scaled, ell, view.source().params())
                                                       : nearest_sample_intensity(view, v);
    c.flagged = c.intensity >= threshold;
    out.push_back(c);
  }
  return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t s) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p <= s / p; ++p) {
    if (s % p == 0) {
      primes.push_back(p);
      while (s % p == 0) s /= p;
    }
  }
  if (s > 1) primes.push_back(s);
  return primes;
}

std::vector<Candidate> classify(std::uint64_t n, std::uint64_t s, std::vector<Candidate> raw) {
  if (n == 0 || s == 0) throw DomainError("classify: N and s must be >= 1");
  std::vector<Candidate> out;
  if (s > 1) {
    for (std::uint64_t p : prime_divisors(s)) {
      if (n % p == 0) {
        out.push_back({p, 1.0, kPrecheckIndex, true, Verdict::factor, std::nullopt});
      }
    }
  }
  const auto scaled = static_cast<detail::u128>(s) * n;
  for (auto& c : raw) {
    c.recovered.reset();
    if (!c.flagged) {
      c.verdict = Verdict::non_factor;
    } else if (n % c.ell == 0) {
      c.verdict = Verdict::factor;
    } else if (s > 1 && scaled % c.ell == 0) {
      c.verdict = Verdict::s_artifact;
      c.recovered = c.ell / std::gcd(c.ell, s);
    } else {
      c.verdict = Verdict::non_factor;
    }
    out.push_back(c);
  }
  return out;
}

std::vector<std::uint64_t> oracle_divisors(std::uint64_t n, double lo, double hi) {
  if (n == 0) throw DomainError("oracle_divisors: N must be >= 1");
  std::vector<std::uint64_t> out;
  const double first = std::max(1.0, detail::tolerant_ceil(lo));
  const double last = std::min(static_cast<double>(n), detail::tolerant_floor(hi));
  for (double v = first; v <= last; v += 1.0) {
    const auto ell = static_cast<std::uint64_t>(v);
    if (n % ell == 0) out.push_back(ell);
  }
  return out;
}

FactorReport factor(std::uint64_t n, const SpectralWindow& window, Method method, std::uint64_t s,
                    const CurlicueParams& params, const SamplingConfig& cfg, const FactorOptions& options) {
  if (n < 2) throw DomainError("factor: N must be >= 2");
  if (s == 0) throw DomainError("factor: s must be >= 1");
  cfg.validate();

  FactorReport report;
  report.n = n;
  report.method = method;
  report.s = s;
  report.stripped_twos = method == Method::method1 ? static_cast<unsigned>(std::countr_zero(n)) : 0;
  report.reduced_n = n >> report.stripped_twos;
  const std::uint64_t target = report.reduced_n;
  report.trial = trial_bounds(method, target);

  auto finish = [&](FactorReport& r) -> FactorReport& {
    std::vector<std::uint64_t> confirmed;
    if (r.stripped_twos > 0) confirmed.push_back(2);
    for (const auto& c : r.candidates) {
      if (c.verdict == Verdict::factor) confirmed.push_back(c.ell);
    }
    std::sort(confirmed.begin(), confirmed.end());
    confirmed.erase(std::unique(confirmed.begin(), confirmed.end()), confirmed.end());
    r.confirmed_factors = std::move(confirmed);
    if (method == Method::method1 && r.complete && target > 1) {
      r.probable_prime = std::none_of(r.confirmed_factors.begin(), r.confirmed_factors.end(), [&](std::uint64_t f) {
        return f >= 3 && static_cast<double>(f) <= r.trial.hi;
      });
    }
    if (options.recursive) r.prime_factors = decompose(n, window, params);
    return r;
  };

  // Nothing left to scan: a power of two, or an odd part below 9.
  if (report.trial.empty()) {
    report.complete = true;
    return finish(report);
  }

  if (s > 1) {
    auto pre = classify(target, s, {});
    if (!pre.empty()) {
      report.candidates = std::move(pre);
      report.note = "prime factor of s divides N; trial scan skipped";
      return finish(report);
    }
  }

  InterferogramPlan plan = [&] {
    if (options.plan) {
      if (options.plan->method() != method || options.plan->s() != s) {
        throw DomainError("factor: supplied plan does not match method and s");
      }
      InterferogramPlan p = *options.plan;
      if (options.x_max) p.apply_x_max(*options.x_max);
      return p;
    }
    PlanOptions po;
    po.x_max = options.x_max;
    return sequence_plan_range(target, target, window, method, s, po);
  }();
  report.x_values = plan.x_values();
  report.feasible_n_max = plan.feasible_n_max();

  const auto intervals = coverage_intervals(plan, target);
  const std::uint64_t scaled = detail::checked_mul(s, target, "factor");
  const double threshold = options.threshold.value_or(default_threshold(cfg.mode));

  // ell -> chosen candidate; on shared boundaries the interval given by
  // locate() wins, otherwise the lowest index.
  std::map<std::uint64_t, Candidate> merged;
  bool skipped = false;
  for (std::size_t i = 0; i < plan.n(); ++i) {
    const double x = plan.x_values()[i];
    if (plan.x_max() && x > *plan.x_max() * (1.0 + detail::kRelTol)) {
      skipped = true;
      continue;
    }
    const auto grid = cfg.mode == SamplingMode::direct ? build_trial_grid(window, x, scaled)
                                                       : build_grid(window, x, scaled, cfg);
    const auto view = rescale(record(params, window, x, grid), target, s);
    TrialOptions to;
    to.mode = cfg.mode;
    to.threshold = threshold;
    to.interferogram_index = static_cast<int>(i);
    for (auto& c : candidate_trials(view, to)) {
      if (!options.include_trivial && (c.ell == 1 || c.ell == target)) continue;
      auto [it, inserted] = merged.try_emplace(c.ell, c);
      if (!inserted) {
        const auto home = locate(intervals, static_cast<double>(c.ell));
        if (home && *home == i) it->second = c;
      }
    }
  }

  std::vector<Candidate> raw;
  raw.reserve(merged.size());
  for (auto& [ell, c] : merged) raw.push_back(c);
  report.candidates = classify(target, s, std::move(raw));

  report.complete = !skipped && plan.feasible() && covers(intervals, report.trial);
  if (!plan.feasible()) {
    report.note = "x_max below x_0; only interferograms with x <= x_max recorded";
    if (plan.feasible_n_max()) report.note += ", feasible N_max = " + std::to_string(*plan.feasible_n_max());
  }
  return finish(report);
}

}  // namespace ctes
