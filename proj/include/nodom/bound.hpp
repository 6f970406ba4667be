#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "nodom/configuration.hpp"
#include "nodom/errors.hpp"
#include "nodom/specfun.hpp"

// The two-point bound chain:
//
//   K_tau = [r(B0,0) r(Binf,inf)]^{tau^2} r(B1,a1) r(B2,a2) / |a1 - a2|^2 <= Phi(tau)
//   J_2(gamma) <= 4 a1 a2 [Phi(t1) Phi(t2)]^{1/2} = (4/gamma) [Psi(t1) Psi(t2)]^{1/2},
//   t_k = sqrt(gamma) alpha_k, alpha_1 + alpha_2 = 2.

namespace nodom::bound {

/// Relative tolerance under which an asymmetric maximum still counts as a
/// tie with the symmetric point.
inline constexpr double kTieTolerance = 1e-14;

inline double evaluate_K(double tau, const Configuration& config) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw DomainError("evaluate_K: tau must be >= 0");
  if (config.ray.n() != 2) throw ConfigurationError("evaluate_K: needs exactly two ray points");
  validate(config);
  const auto pts = config.ray.points();
  const double r0 = inner_radius_analytic(config.at_zero, Complex(0.0, 0.0));
  const double rinf = inner_radius_at_infinity(config.at_infinity);
  const double r1 = inner_radius_analytic(config.domains[0], pts[0]);
  const double r2 = inner_radius_analytic(config.domains[1], pts[1]);
  return std::pow(r0 * rinf, tau * tau) * r1 * r2 / std::norm(pts[0] - pts[1]);
}

namespace detail {

inline void check_chain_args(double gamma, double alpha1, const char* fn) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError(std::string(fn) + ": gamma must be > 0");
  }
  if (!(alpha1 > 0.0 && alpha1 < 2.0)) {
    throw DomainError(std::string(fn) + ": alpha1 must lie in (0, 2)");
  }
}

// Canonical split {2 - hi, hi} with hi in [1, 2). alpha1 and fl(2 - alpha1)
// map to the same pair bit for bit, which makes every quantity below exactly
// symmetric under alpha1 -> 2 - alpha1.
struct Split {
  double lo;
  double hi;
};

inline Split canonical_split(double alpha1) {
  const double hi = alpha1 >= 1.0 ? alpha1 : 2.0 - alpha1;
  return {2.0 - hi, hi};
}

}  // namespace detail

/// (4/gamma) [Psi(sqrt(gamma) a1) Psi(sqrt(gamma) a2)]^{1/2}.
inline double chain_bound(double gamma, double alpha1) {
  detail::check_chain_args(gamma, alpha1, "chain_bound");
  const auto s = detail::canonical_split(alpha1);
  const double g = std::sqrt(gamma);
  const double lp = specfun::log_psi(g * s.lo) + specfun::log_psi(g * s.hi);
  return 4.0 / gamma * std::exp(0.5 * lp);
}

/// The Phi form of the same bound, 4 a1 a2 [Phi(t1) Phi(t2)]^{1/2}.
inline double chain_bound_phi_form(double gamma, double alpha1) {
  detail::check_chain_args(gamma, alpha1, "chain_bound_phi_form");
  const auto s = detail::canonical_split(alpha1);
  const double g = std::sqrt(gamma);
  const double lp = specfun::log_phi(g * s.lo) + specfun::log_phi(g * s.hi);
  return 4.0 * s.lo * s.hi * std::exp(0.5 * lp);
}

/// E(gamma) = (4/gamma) Psi(sqrt(gamma)): the chain at the symmetric point,
/// where equality is attained by the extremal configuration.
inline double symmetric_value(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("symmetric_value: gamma must be > 0");
  }
  return 4.0 / gamma * std::exp(specfun::log_psi(std::sqrt(gamma)));
}

/// Psi(t1) Psi(t2) - Psi(sqrt(gamma))^2. Non-positive for every alpha1 exactly
/// when the symmetric split maximises the chain bound.
inline double excess(double gamma, double alpha1) {
  detail::check_chain_args(gamma, alpha1, "excess");
  const auto s = detail::canonical_split(alpha1);
  const double g = std::sqrt(gamma);
  const double p = specfun::psi(g);
  return specfun::psi(g * s.lo) * specfun::psi(g * s.hi) - p * p;
}

/// Golden-section search for a maximum of f on [a, b].
template <class F>
std::pair<double, double> golden_section_max(F&& f, double a, double b, double tol = 1e-13,
                                             int max_iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iterations && (b - a) > tol; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

struct AlphaScan {
  double gamma = 0.0;
  double best_alpha = 1.0;    // reported in (0, 1] by symmetry
  double max_excess = 0.0;    // over grid and both refinements
  double symmetric_psi2 = 0.0;
  bool symmetric_wins = true;
};

/// Grid of `grid_size` interior nodes 2 (i+1)/(grid_size+1).
inline double alpha_grid_node(int i, int grid_size) {
  return 2.0 * (i + 1) / (grid_size + 1);
}

/// Maximises excess(gamma, .) over a uniform alpha1 grid, then refines by
/// golden section around the best node and around alpha1 = 1.
inline AlphaScan scan_alpha(double gamma, int grid_size) {
  if (grid_size < 3) throw DomainError("scan_alpha: grid too small");
  AlphaScan s;
  s.gamma = gamma;
  int best = 0;
  double best_val = -1.0;
  for (int i = 0; i < grid_size; ++i) {
    const double v = excess(gamma, alpha_grid_node(i, grid_size));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double h = 2.0 / (grid_size + 1);
  const auto f = [gamma](double a) { return excess(gamma, a); };
  const double a0 = std::max(alpha_grid_node(best, grid_size) - h, 0.5 * h);
  const double b0 = std::min(alpha_grid_node(best, grid_size) + h, 2.0 - 0.5 * h);
  auto around_best = golden_section_max(f, a0, b0);
  auto around_one = golden_section_max(f, 1.0 - h, 1.0 + h);
  double alpha = alpha_grid_node(best, grid_size);
  double value = best_val;
  for (const auto& cand : {around_best, around_one}) {
    if (cand.second > value) {
      value = cand.second;
      alpha = cand.first;
    }
  }
  const double p = specfun::psi(std::sqrt(gamma));
  s.symmetric_psi2 = p * p;
  s.max_excess = value;
  s.best_alpha = std::min(alpha, 2.0 - alpha);
  s.symmetric_wins = value <= kTieTolerance * s.symmetric_psi2;
  if (s.symmetric_wins) s.best_alpha = 1.0;
  return s;
}

struct ThresholdReport {
  double gamma_hat = 0.0;
  int grid_size = 0;
  double refine_tol = 0.0;
  double witness_alpha = 1.0;  // asymmetric maximiser just above gamma_hat
  double witness_excess = 0.0;
  bool upper_end_reached = false;  // predicate held on all of [lo, hi]
  bool lower_end_failed = false;   // predicate already false at lo
  double search_lo = 0.5;
  double search_hi = 1.5;
  std::vector<std::pair<double, bool>> comparisons;  // (gamma, symmetric_wins), sorted
};

/// Bisects on gamma in [0.5, 1.5] for the largest gamma at which the
/// symmetric split maximises the chain bound.
inline ThresholdReport gamma_threshold(int grid_size, double refine_tol) {
  if (grid_size < 1000) throw DomainError("gamma_threshold: grid_size must be >= 1000");
  if (!(refine_tol > 0.0 && refine_tol <= 1e-4)) {
    throw DomainError("gamma_threshold: refine_tol must lie in (0, 1e-4]");
  }
  ThresholdReport rep;
  rep.grid_size = grid_size;
  rep.refine_tol = refine_tol;
  double lo = rep.search_lo;
  double hi = rep.search_hi;

  auto probe = [&](double g) {
    auto s = scan_alpha(g, grid_size);
    rep.comparisons.emplace_back(g, s.symmetric_wins);
    return s;
  };

  const auto at_lo = probe(lo);
  if (!at_lo.symmetric_wins) {
    rep.lower_end_failed = true;
    rep.gamma_hat = lo;
    rep.witness_alpha = at_lo.best_alpha;
    rep.witness_excess = at_lo.max_excess;
    return rep;
  }
  auto at_hi = probe(hi);
  if (at_hi.symmetric_wins) {
    rep.upper_end_reached = true;
    rep.gamma_hat = hi;
    return rep;
  }
  while (hi - lo > refine_tol) {
    const double mid = 0.5 * (lo + hi);
    auto s = probe(mid);
    if (s.symmetric_wins) {
      lo = mid;
    } else {
      hi = mid;
      at_hi = s;
    }
  }
  rep.gamma_hat = lo;
  rep.witness_alpha = at_hi.best_alpha;
  rep.witness_excess = at_hi.max_excess;
  std::sort(rep.comparisons.begin(), rep.comparisons.end());
  return rep;
}

}  // namespace nodom::bound
