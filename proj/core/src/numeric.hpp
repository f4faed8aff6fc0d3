#pragma once

// Internal numeric helpers shared by the core translation units.

#include <cmath>
#include <cstdint>
#include <string>

#include "ctes/errors.hpp"

namespace ctes::detail {

__extension__ typedef unsigned __int128 u128;

inline constexpr double kRelTol = 1e-12;

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  const auto p = static_cast<u128>(a) * b;
  if (p > UINT64_MAX) throw DomainError(std::string(what) + ": product overflows 64 bits");
  return static_cast<std::uint64_t>(p);
}

// floor/ceil that absorb relative rounding noise, so 35.999999999999993
// floors to 36 and 36.000000000000007 ceils to 36.
inline double tolerant_floor(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= kRelTol * std::max(1.0, std::abs(v))) return r;
  return std::floor(v);
}

inline double tolerant_ceil(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= kRelTol * std::max(1.0, std::abs(v))) return r;
  return std::ceil(v);
}

// ceil(log_c(ratio)) computed by repeated multiplication, immune to the
// log(8)/log(2) = 2.9999999999999996 class of errors. Returns 0 for ratio <= 1.
inline std::uint32_t ceil_log(double ratio, double c) {
  std::uint32_t n = 0;
  double reach = 1.0;
  while (reach * (1.0 + kRelTol) < ratio) {
    reach *= c;
    ++n;
  }
  return n;
}

}  // namespace ctes::detail
