#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "nodom/errors.hpp"
#include "nodom/specfun.hpp"

namespace nodom {

/// Result of a bracketing root search. On return lo < root < hi,
/// f_lo * f_hi < 0 and hi - lo <= tolerance.
struct BracketedRoot {
  double lo = 0.0;
  double hi = 0.0;
  double root = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
  int iterations = 0;
  double tolerance = 0.0;
};

/// Hybrid false-position / bisection root search.
///
/// Each iteration takes a false-position step; whenever that step fails to at
/// least halve the bracket, a bisection step follows. The bracket therefore
/// shrinks geometrically no matter how f behaves near the ends, and the
/// result depends only on (f, lo, hi, tol).
///
/// If f vanishes exactly at an evaluated point x the bracket is re-centred on
/// [x - tol/4, x + tol/4]; should f also vanish there the sign invariant
/// cannot be restored and the degenerate bracket is returned as is.
template <class F>
BracketedRoot bracketed_root(F&& f, double lo, double hi, double tol, int max_iterations = 400) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw DomainError("bracketed_root: tolerance must be positive");
  }
  if (!(lo < hi)) throw DomainError("bracketed_root: need lo < hi");

  auto eval = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      throw NumericError("bracketed_root: non-finite f(" + std::to_string(x) + ")");
    }
    return v;
  };

  BracketedRoot r;
  r.tolerance = tol;
  r.lo = lo;
  r.hi = hi;
  r.f_lo = eval(lo);
  r.f_hi = eval(hi);
  if (!(r.f_lo * r.f_hi < 0.0)) {
    throw BracketError("bracketed_root: no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }

  // Returns true when x is an exact zero and the bracket was re-centred.
  auto absorb = [&](double x, double fx) {
    if (fx == 0.0) {
      const double a = std::max(r.lo, x - 0.25 * tol);
      const double b = std::min(r.hi, x + 0.25 * tol);
      const double fa = eval(a);
      const double fb = eval(b);
      r.lo = a;
      r.hi = b;
      r.f_lo = fa;
      r.f_hi = fb;
      r.root = x;
      return true;
    }
    if ((fx < 0.0) == (r.f_lo < 0.0)) {
      r.lo = x;
      r.f_lo = fx;
    } else {
      r.hi = x;
      r.f_hi = fx;
    }
    return false;
  };

  while (r.hi - r.lo > tol) {
    if (r.iterations >= max_iterations) {
      throw NumericError("bracketed_root: iteration cap reached");
    }
    ++r.iterations;
    const double width = r.hi - r.lo;
    double x = r.lo - r.f_lo * (r.hi - r.lo) / (r.f_hi - r.f_lo);
    if (!(x > r.lo && x < r.hi)) x = r.lo + 0.5 * (r.hi - r.lo);
    if (absorb(x, eval(x))) return r;
    if (r.hi - r.lo > 0.5 * width) {
      const double m = r.lo + 0.5 * (r.hi - r.lo);
      if (!(m > r.lo && m < r.hi)) break;  // bracket is a pair of adjacent doubles
      if (absorb(m, eval(m))) return r;
    }
  }

  double x = r.lo - r.f_lo * (r.hi - r.lo) / (r.f_hi - r.f_lo);
  if (!(x > r.lo && x < r.hi)) x = r.lo + 0.5 * (r.hi - r.lo);
  r.root = x;
  return r;
}

struct CriticalPoint {
  double x = 0.0;
  double psi = 0.0;
  BracketedRoot bracket;
};

// Fixed search brackets. Both exclude the singular points 0 and 1.
inline constexpr double kMaxBracketLo = 0.3;
inline constexpr double kMaxBracketHi = 0.8;
inline constexpr double kCurvatureBracketLo = 0.6;
inline constexpr double kCurvatureBracketHi = 0.99;

/// Maximiser x1 of Psi: the zero of (log Psi)' in [0.3, 0.8].
inline CriticalPoint locate_psi_max(double tol) {
  if (!(tol >= 1e-12)) throw DomainError("locate_psi_max: tol must be >= 1e-12");
  CriticalPoint cp;
  try {
    cp.bracket = bracketed_root([](double x) { return specfun::dlog_psi(x); }, kMaxBracketLo,
                                kMaxBracketHi, tol);
  } catch (const BracketError& e) {
    throw InternalError(std::string("locate_psi_max: ") + e.what());
  }
  cp.x = cp.bracket.root;
  cp.psi = specfun::psi(cp.x);
  if (!(specfun::d2log_psi(cp.x) < 0.0)) {
    throw InternalError("locate_psi_max: second-order condition fails at the located root");
  }
  return cp;
}

/// Zero x0 of (log Psi)'' in [0.6, 0.99], where the curvature of log Psi
/// changes sign.
inline CriticalPoint locate_curvature_zero(double tol) {
  if (!(tol >= 1e-10)) throw DomainError("locate_curvature_zero: tol must be >= 1e-10");
  CriticalPoint cp;
  try {
    cp.bracket = bracketed_root([](double x) { return specfun::d2log_psi(x); },
                                kCurvatureBracketLo, kCurvatureBracketHi, tol);
  } catch (const BracketError& e) {
    throw InternalError(std::string("locate_curvature_zero: ") + e.what());
  }
  cp.x = cp.bracket.root;
  cp.psi = specfun::psi(cp.x);
  return cp;
}

struct PsiSample {
  double x = 0.0;
  double psi = 0.0;
  double log_psi = 0.0;
};

struct PsiProfile {
  std::vector<PsiSample> eval_grid;
  double x1 = 0.0;
  double psi_x1 = 0.0;
  double x0 = 0.0;
  double psi_x0 = 0.0;
};

/// Samples Psi on `points` equispaced nodes of (0, x_max] and attaches the
/// located critical data.
inline PsiProfile psi_profile(int points, double x_max, double tol = 1e-10) {
  if (points < 1 || !(x_max > 0.0)) throw DomainError("psi_profile: bad grid");
  PsiProfile p;
  p.eval_grid.reserve(static_cast<std::size_t>(points));
  for (int i = 1; i <= points; ++i) {
    const double x = x_max * i / points;
    p.eval_grid.push_back({x, specfun::psi(x), specfun::log_psi(x)});
  }
  const auto mx = locate_psi_max(tol);
  const auto cz = locate_curvature_zero(tol);
  p.x1 = mx.x;
  p.psi_x1 = mx.psi;
  p.x0 = cz.x;
  p.psi_x0 = cz.psi;
  return p;
}

}  // namespace nodom
