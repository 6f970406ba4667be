#pragma once

#include <cmath>
#include <string>

#include "nodom/errors.hpp"

// Phi(x) = x^{2x^2} |1-x|^{-(1-x)^2} (1+x)^{-(1+x)^2}
// Psi(x) = x^2 Phi(x) = x^{2x^2+2} |1-x|^{-(1-x)^2} (1+x)^{-(1+x)^2}
//
// Everything is evaluated in log space; the power terms have exponents that
// grow quadratically in x.

namespace nodom::specfun {

/// Below this distance from x = 1 the term (1-x)^2 ln|1-x| is replaced by its
/// limit 0.
inline constexpr double kSingularGap = 1e-12;

namespace detail {

inline void require_positive(double x, const char* fn) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw DomainError(std::string(fn) + ": argument must be finite and > 0, got " +
                      std::to_string(x));
  }
}

inline void require_regular(double x, const char* fn) {
  require_positive(x, fn);
  if (std::abs(1.0 - x) < kSingularGap) {
    throw DomainError(std::string(fn) + ": undefined at x = 1");
  }
}

// (1-x)^2 ln|1-x|, continuous at x = 1.
inline double near_one_term(double x) {
  const double d = 1.0 - x;
  if (std::abs(d) < kSingularGap) return 0.0;
  return d * d * std::log(std::abs(d));
}

inline double far_term(double x) {
  const double s = 1.0 + x;
  return s * s * std::log1p(x);
}

}  // namespace detail

inline double log_phi(double x) {
  detail::require_positive(x, "log_phi");
  return 2.0 * x * x * std::log(x) - detail::near_one_term(x) - detail::far_term(x);
}

inline double phi(double x) { return std::exp(log_phi(x)); }

inline double log_psi(double x) {
  detail::require_positive(x, "log_psi");
  return (2.0 * x * x + 2.0) * std::log(x) - detail::near_one_term(x) - detail::far_term(x);
}

/// Psi(0) = 0 by continuity.
inline double psi(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError("psi: argument must be finite and >= 0, got " + std::to_string(x));
  }
  if (x == 0.0) return 0.0;
  return std::exp(log_psi(x));
}

/// d/dx log Psi(x). Refuses x = 1, where the derivative is singular.
inline double dlog_psi(double x) {
  detail::require_regular(x, "dlog_psi");
  const double lx = std::log(x);
  const double l1 = std::log(std::abs(1.0 - x));
  const double l2 = std::log1p(x);
  return 4.0 * x * lx + (2.0 * x * x + 2.0) / x + 2.0 * (1.0 - x) * l1 + (1.0 - x) -
         2.0 * (1.0 + x) * l2 - (1.0 + x);
}

/// d^2/dx^2 log Psi(x) = 4 ln x - 2/x^2 - 2 ln|1 - x^2|.
inline double d2log_psi(double x) {
  detail::require_regular(x, "d2log_psi");
  return 4.0 * std::log(x) - 2.0 / (x * x) - 2.0 * std::log(std::abs(1.0 - x)) -
         2.0 * std::log1p(x);
}

}  // namespace nodom::specfun
