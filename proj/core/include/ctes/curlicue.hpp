#pragma once

#include <complex>
#include <cstdint>

namespace ctes {

/// Truncation and phase order of the generalized curlicue sum
///
///   s(zeta) = (1/M) * sum_{m=1..M} exp(2 pi i (m-1)^j zeta).
///
/// Construction throws ParameterError unless M >= 2 and j >= 1. The phase
/// weights (m-1)^j must fit in 64 bits, which bounds M^j.
class CurlicueParams {
 public:
  CurlicueParams(std::uint32_t terms, std::uint32_t order);

  std::uint32_t terms() const noexcept { return terms_; }
  std::uint32_t order() const noexcept { return order_; }

  /// (m-1)^j for m in [1, M].
  std::uint64_t weight(std::uint32_t m) const noexcept;

  friend bool operator==(const CurlicueParams&, const CurlicueParams&) = default;

 private:
  std::uint32_t terms_;
  std::uint32_t order_;
};

/// Fractional part of zeta in [0, 1). Throws DomainError for non-finite input.
double reduce_phase(double zeta);

/// Complex curlicue amplitude. Magnitude never exceeds 1 (up to rounding).
std::complex<double> curlicue_amplitude(double zeta, const CurlicueParams& params);

/// |curlicue_amplitude|^2. Exactly 1.0 at integer zeta.
double curlicue_intensity(double zeta, const CurlicueParams& params);

/// f(xi) = 1/xi; throws DomainError for xi <= 0.
double hyperbolic(double xi);

/// CTES intensity |s(1/xi)|^2, with 1/xi reduced modulo 1 before the phase
/// multiplication.
double ctes_intensity(double xi, const CurlicueParams& params);

/// CTES intensity at the integer trial point xi_N = ell for target N. The
/// fractional part of N/ell is formed exactly as (N mod ell)/ell and every
/// phase (m-1)^j * N mod ell is reduced in 128-bit integer arithmetic, so the
/// result is exactly 1.0 if and only if ell divides N.
double exact_intensity_at_trial(std::uint64_t n, std::uint64_t ell, const CurlicueParams& params);

}  // namespace ctes
