#include "ctes/curlicue.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ctes/errors.hpp"
#include "numeric.hpp"

namespace ctes {
namespace {

// Fractional part of a * r, where a is an exactly representable integer
// weight. The rounding error of the product is recovered with an FMA so the
// result stays accurate even when a * r is large.
double frac_product(double a, double r) {
  const double p = a * r;
  const double e = std::fma(a, r, -p);
  const double f = (p - std::floor(p)) + (e - std::floor(e));
  return f - std::floor(f);
}

// Fractional part of w * r for a 64-bit weight w and r in [0, 1).
double weighted_phase(std::uint64_t w, double r) {
  constexpr double two32 = 4294967296.0;
  const double hi = static_cast<double>(w >> 32) * two32;
  const double lo = static_cast<double>(w & 0xffffffffULL);
  double f = frac_product(lo, r);
  if (hi != 0.0) f += frac_product(hi, r);
  return f - std::floor(f);
}

// Sum of unit phasors exp(2 pi i phase_m) / M, phases given in turns in [0, 1).
template <typename PhaseFn>
std::complex<double> phasor_mean(const CurlicueParams& params, PhaseFn&& phase_of) {
  double re = 0.0;
  double im = 0.0;
  for (std::uint32_t m = 1; m <= params.terms(); ++m) {
    double turns = phase_of(m);
    if (turns == 0.0) {
      re += 1.0;
      continue;
    }
    if (turns >= 0.5) turns -= 1.0;
    const double angle = 2.0 * std::numbers::pi * turns;
    re += std::cos(angle);
    im += std::sin(angle);
  }
  const double inv = 1.0 / static_cast<double>(params.terms());
  return {re * inv, im * inv};
}

}  // namespace

CurlicueParams::CurlicueParams(std::uint32_t terms, std::uint32_t order) : terms_(terms), order_(order) {
  if (terms < 2) throw ParameterError("curlicue: M must be >= 2, got " + std::to_string(terms));
  if (order < 1) throw ParameterError("curlicue: j must be >= 1, got " + std::to_string(order));
  // (M-1)^j has to fit in 64 bits.
  detail::u128 w = 1;
  for (std::uint32_t k = 0; k < order; ++k) {
    w *= (terms - 1);
    if (w > static_cast<detail::u128>(UINT64_MAX)) {
      throw ParameterError("curlicue: (M-1)^j overflows 64 bits for M=" + std::to_string(terms) +
                           ", j=" + std::to_string(order));
    }
  }
}

std::uint64_t CurlicueParams::weight(std::uint32_t m) const noexcept {
  std::uint64_t w = 1;
  for (std::uint32_t k = 0; k < order_; ++k) w *= (m - 1);
  return w;
}

double reduce_phase(double zeta) {
  if (!std::isfinite(zeta)) throw DomainError("curlicue: phase argument must be finite");
  const double f = zeta - std::floor(zeta);
  // zeta slightly below an integer can round up to exactly 1.
  return f >= 1.0 ? 0.0 : f;
}

std::complex<double> curlicue_amplitude(double zeta, const CurlicueParams& params) {
  const double r = reduce_phase(zeta);
  if (r == 0.0) return {1.0, 0.0};
  return phasor_mean(params, [&](std::uint32_t m) { return weighted_phase(params.weight(m), r); });
}

double curlicue_intensity(double zeta, const CurlicueParams& params) {
  return std::norm(curlicue_amplitude(zeta, params));
}

double hyperbolic(double xi) {
  if (!(xi > 0.0) || !std::isfinite(xi)) throw DomainError("hyperbolic: xi must be finite and > 0");
  return 1.0 / xi;
}

double ctes_intensity(double xi, const CurlicueParams& params) {
  return curlicue_intensity(hyperbolic(xi), params);
}

double exact_intensity_at_trial(std::uint64_t n, std::uint64_t ell, const CurlicueParams& params) {
  if (ell == 0) throw DomainError("exact_intensity_at_trial: trial factor must be >= 1");
  if (n == 0) throw DomainError("exact_intensity_at_trial: N must be >= 1");
  const std::uint64_t residue = n % ell;
  if (residue == 0) return 1.0;

  using detail::u128;
  const double scale = 1.0 / static_cast<double>(ell);
  const auto amp = phasor_mean(params, [&](std::uint32_t m) {
    const std::uint64_t w = params.weight(m) % ell;
    const auto num = static_cast<std::uint64_t>(static_cast<u128>(w) * residue % ell);
    return static_cast<double>(num) * scale;
  });
  // The m = 2 phase is residue/ell != 0, so the true value is below 1.
  const double v = std::norm(amp);
  return v < 1.0 ? v : std::nextafter(1.0, 0.0);
}

}  // namespace ctes
