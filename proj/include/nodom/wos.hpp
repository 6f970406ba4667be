#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <exception>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nodom/configuration.hpp"
#include "nodom/errors.hpp"
#include "nodom/philox.hpp"
#include "nodom/polyline.hpp"

// Walk-on-spheres estimation of inner radii.
//
// With g(., a) the Green's function of B with pole a, g(z, a) = -log|z - a| + h(z)
// where h is harmonic with boundary values log|z - a|, and log r(B, a) = h(a).
// Hence log r(B, a) = E[log |W - a|] with W the Brownian exit point from a,
// which walk-on-spheres samples exactly up to the epsilon shell.

namespace nodom {

/// A domain as seen by the walker: nearest boundary point and distance,
/// containment, and a radius enclosing the (possibly truncated) domain.
template <class D>
concept DomainOracle = requires(const D& d, Complex z) {
  { d.query(z) } -> std::same_as<SegmentHit>;
  { d.contains(z) } -> std::convertible_to<bool>;
  { d.bounding_radius() } -> std::convertible_to<double>;
  { d.truncated() } -> std::convertible_to<bool>;
};

/// Oracle for an elementary domain. Unbounded domains are cut off by the
/// circle |z - truncation_center| = truncation_radius; the estimate is then
/// biased, and r(., inf) must go through the inversion path instead.
class ElementaryOracle {
 public:
  explicit ElementaryOracle(ElementaryDomain d, double truncation_radius = 1e3,
                            Complex truncation_center = {})
      : domain_(d), radius_(truncation_radius), center_(truncation_center) {
    if (!(truncation_radius > 0.0)) throw DomainError("ElementaryOracle: bad truncation radius");
  }

  bool truncated() const { return !std::holds_alternative<Disk>(domain_); }

  SegmentHit query(Complex z) const {
    SegmentHit h{distance_to_boundary(domain_, z), nearest_boundary_point(domain_, z)};
    if (truncated()) {
      const Complex v = z - center_;
      const double m = std::abs(v);
      const double dt = radius_ - m;
      if (dt < h.distance) {
        h.distance = std::abs(dt);
        h.point = m > 0.0 ? center_ + v * (radius_ / m) : center_ + radius_;
      }
    }
    return h;
  }

  double distance(Complex z) const { return query(z).distance; }

  bool contains(Complex z) const {
    return nodom::contains(domain_, z) && (!truncated() || std::abs(z - center_) < radius_);
  }

  double bounding_radius() const {
    if (const auto* disk = std::get_if<Disk>(&domain_)) return std::abs(disk->center) + disk->radius;
    return std::abs(center_) + radius_;
  }

  const ElementaryDomain& domain() const { return domain_; }

 private:
  ElementaryDomain domain_;
  double radius_;
  Complex center_;
};

/// Oracle for a domain bounded by closed polylines, with even-odd
/// containment. An exterior oracle is the complement (containing infinity),
/// truncated at |z| = truncation_radius for direct walks.
class PolylineOracle {
 public:
  explicit PolylineOracle(std::vector<Polyline> loops, bool exterior = false,
                          double truncation_radius = 1e3)
      : loops_(std::move(loops)), index_(loops_), exterior_(exterior), trunc_(truncation_radius) {
    if (index_.size() == 0) throw DomainError("PolylineOracle: empty boundary");
    for (const auto& l : loops_) extent_ = std::max(extent_, max_modulus(l));
    if (exterior_ && !(trunc_ > extent_)) {
      throw DomainError("PolylineOracle: truncation radius must enclose the boundary");
    }
  }

  bool truncated() const { return exterior_; }
  bool exterior() const { return exterior_; }

  SegmentHit query(Complex z) const {
    SegmentHit h = index_.nearest(z);
    if (exterior_) {
      const double m = std::abs(z);
      const double dt = trunc_ - m;
      if (dt < h.distance) {
        h.distance = std::abs(dt);
        h.point = m > 0.0 ? z * (trunc_ / m) : Complex(trunc_, 0.0);
      }
    }
    return h;
  }

  double distance(Complex z) const { return query(z).distance; }

  bool contains(Complex z) const {
    const bool in = inside_even_odd(loops_, z);
    return exterior_ ? (!in && std::abs(z) < trunc_) : in;
  }

  double bounding_radius() const { return exterior_ ? trunc_ : extent_; }

  const std::vector<Polyline>& loops() const { return loops_; }
  std::size_t segments() const { return index_.size(); }

 private:
  std::vector<Polyline> loops_;
  SegmentIndex index_;
  bool exterior_;
  double trunc_;
  double extent_ = 0.0;
};

struct WosExit {
  Complex point;
  std::int64_t steps = 0;
};

inline constexpr std::int64_t kWosStepCap = 1'000'000;

/// Walks from `start` by jumping to a uniform point on the largest inscribed
/// circle until the walker is within `epsilon` of the boundary, then returns
/// the nearest boundary point.
template <DomainOracle D, class Rng>
WosExit wos_exit(const D& oracle, Complex start, double epsilon, Rng& rng,
                 std::int64_t max_steps = kWosStepCap) {
  Complex z = start;
  for (std::int64_t s = 0; s < max_steps; ++s) {
    const SegmentHit h = oracle.query(z);
    if (h.distance < epsilon) return {h.point, s};
    z += std::polar(h.distance, kTwoPi * rng.uniform());
  }
  throw NonConvergenceError("wos_exit: step cap exceeded");
}

struct WosParams {
  std::int64_t walks = 100'000;
  double epsilon = 1e-4;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;  // delta method: value * log_std_error
  std::int64_t walks = 0;
  double epsilon_shell = 0.0;
  std::uint64_t seed = 0;
  double log_mean = 0.0;
  double log_std_error = 0.0;
  double mean_steps = 0.0;
  bool truncated = false;
};

namespace detail {

inline constexpr std::int64_t kWalkBlock = 1024;

// Runs fn(walk_index) -> (log term, steps) for every walk. Walks are dealt out
// in fixed blocks and the reduction runs in walk order afterwards, so the
// result is bit-identical for every thread count.
template <class Fn>
McEstimate run_walks(std::int64_t walks, unsigned threads, Fn&& fn) {
  std::vector<double> logs(static_cast<std::size_t>(walks));
  const std::int64_t blocks = (walks + kWalkBlock - 1) / kWalkBlock;
  std::vector<std::int64_t> block_steps(static_cast<std::size_t>(blocks), 0);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(blocks));

  auto worker = [&](std::int64_t first) {
    const std::int64_t stride = std::max<std::int64_t>(1, threads);
    for (std::int64_t b = first; b < blocks; b += stride) {
      try {
        const std::int64_t end = std::min(walks, (b + 1) * kWalkBlock);
        for (std::int64_t i = b * kWalkBlock; i < end; ++i) {
          const auto [lg, steps] = fn(i);
          logs[static_cast<std::size_t>(i)] = lg;
          block_steps[static_cast<std::size_t>(b)] += steps;
        }
      } catch (...) {
        errors[static_cast<std::size_t>(b)] = std::current_exception();
      }
    }
  };

  const unsigned t = std::max(1u, threads);
  if (t == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(t);
    for (unsigned k = 0; k < t; ++k) pool.emplace_back(worker, static_cast<std::int64_t>(k));
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  McEstimate m;
  m.walks = walks;
  double sum = 0.0;
  for (double v : logs) sum += v;
  const double mean = sum / static_cast<double>(walks);
  double ss = 0.0;
  for (double v : logs) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(walks - 1);
  std::int64_t steps = 0;
  for (auto s : block_steps) steps += s;
  m.log_mean = mean;
  m.log_std_error = std::sqrt(var / static_cast<double>(walks));
  m.value = std::exp(mean);
  m.std_error = m.value * m.log_std_error;
  m.mean_steps = static_cast<double>(steps) / static_cast<double>(walks);
  return m;
}

}  // namespace detail

/// Monte Carlo r(B, a) = exp E[log |W_exit - a|].
template <DomainOracle D>
McEstimate estimate_inner_radius(const D& oracle, Complex point, const WosParams& p) {
  if (p.walks < 1000) throw DomainError("estimate_inner_radius: need at least 1000 walks");
  if (!(p.epsilon > 0.0)) throw DomainError("estimate_inner_radius: epsilon must be > 0");
  if (!oracle.contains(point) || !(oracle.query(point).distance > p.epsilon)) {
    throw DomainError("estimate_inner_radius: point must lie strictly inside, beyond the shell");
  }
  auto m = detail::run_walks(p.walks, p.threads, [&](std::int64_t i) {
    PhiloxStream rng(p.seed, static_cast<std::uint64_t>(i));
    const WosExit e = wos_exit(oracle, point, p.epsilon, rng);
    return std::pair{std::log(std::abs(e.point - point)), e.steps};
  });
  m.epsilon_shell = p.epsilon;
  m.seed = p.seed;
  m.truncated = oracle.truncated();
  return m;
}

/// Image of an exterior polyline domain under w -> 1/w. Segments are first
/// subdivided so that each maps to a nearly straight chord.
inline PolylineOracle invert_exterior(const PolylineOracle& ext) {
  if (!ext.exterior()) throw DomainError("invert_exterior: domain does not contain infinity");
  std::vector<Polyline> out;
  for (const auto& loop : ext.loops()) {
    Polyline img;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Complex a = loop[i];
      const Complex b = loop[(i + 1) % loop.size()];
      const double scale = std::min(std::abs(a), std::abs(b));
      if (!(scale > 0.0)) throw DomainError("invert_exterior: boundary passes through 0");
      const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / (1e-3 * scale))));
      for (int j = 0; j < pieces; ++j) {
        img.push_back(1.0 / (a + (b - a) * (static_cast<double>(j) / pieces)));
      }
    }
    out.push_back(std::move(img));
  }
  return PolylineOracle(std::move(out));
}

/// r(B, inf) = r(1/B, 0) for an exterior disk, estimated on the image disk.
inline McEstimate estimate_inner_radius_at_infinity(const ElementaryDomain& d, const WosParams& p) {
  const auto* e = std::get_if<ExteriorDisk>(&d);
  if (e == nullptr) {
    throw DomainError(std::string("estimate_inner_radius_at_infinity: ") + kind_name(d) +
                      " does not contain infinity");
  }
  if (contains(d, Complex(0.0, 0.0))) {
    throw DomainError("estimate_inner_radius_at_infinity: 0 lies in the domain");
  }
  return estimate_inner_radius(ElementaryOracle(invert_exterior_disk(*e)), Complex(0.0, 0.0), p);
}

inline McEstimate estimate_inner_radius_at_infinity(const PolylineOracle& d, const WosParams& p) {
  if (d.contains(Complex(0.0, 0.0))) {
    throw DomainError("estimate_inner_radius_at_infinity: 0 lies in the domain");
  }
  return estimate_inner_radius(invert_exterior(d), Complex(0.0, 0.0), p);
}

}  // namespace nodom
