#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "nodom/errors.hpp"

namespace nodom {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Minimum clearance between sampled domains.
inline constexpr double kDisjointGap = 1e-6;

// ---------------------------------------------------------------------------
// Elementary domains
// ---------------------------------------------------------------------------

struct Disk {
  Complex center;
  double radius = 1.0;
};

/// {w : Re((w - point) * conj(normal)) > 0}; `normal` is the unit inward normal.
struct HalfPlane {
  Complex point;
  Complex normal{1.0, 0.0};
};

/// {w : |w - center| > radius} together with the point at infinity.
struct ExteriorDisk {
  Complex center;
  double radius = 1.0;
};

using ElementaryDomain = std::variant<Disk, HalfPlane, ExteriorDisk>;

inline Disk make_disk(Complex center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("disk: radius must be > 0");
  return {center, radius};
}

inline ExteriorDisk make_exterior_disk(Complex center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("exterior_disk: radius must be > 0");
  }
  return {center, radius};
}

inline HalfPlane make_half_plane(Complex point, Complex normal) {
  if (std::abs(std::abs(normal) - 1.0) > 1e-12) {
    throw DomainError("half_plane: inward normal must have unit modulus");
  }
  return {point, normal};
}

inline const char* kind_name(const ElementaryDomain& d) {
  return std::visit(
      [](const auto& x) -> const char* {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Disk>) return "disk";
        else if constexpr (std::is_same_v<T, HalfPlane>) return "half_plane";
        else return "exterior_disk";
      },
      d);
}

namespace detail {
inline double signed_depth(const HalfPlane& h, Complex z) {
  return std::real((z - h.point) * std::conj(h.normal));
}
}  // namespace detail

/// Euclidean distance from z to the boundary curve (also valid outside).
inline double distance_to_boundary(const ElementaryDomain& d, Complex z) {
  return std::visit(
      [z](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, HalfPlane>) return std::abs(detail::signed_depth(x, z));
        else return std::abs(std::abs(z - x.center) - x.radius);
      },
      d);
}

inline Complex nearest_boundary_point(const ElementaryDomain& d, Complex z) {
  return std::visit(
      [z](const auto& x) -> Complex {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, HalfPlane>) {
          return z - detail::signed_depth(x, z) * x.normal;
        } else {
          const Complex v = z - x.center;
          const double m = std::abs(v);
          if (m == 0.0) return x.center + x.radius;
          return x.center + v * (x.radius / m);
        }
      },
      d);
}

/// Strict containment of a finite point.
inline bool contains(const ElementaryDomain& d, Complex z) {
  return std::visit(
      [z](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Disk>) return std::abs(z - x.center) < x.radius;
        else if constexpr (std::is_same_v<T, HalfPlane>) return detail::signed_depth(x, z) > 0.0;
        else return std::abs(z - x.center) > x.radius;
      },
      d);
}

inline bool contains_infinity(const ElementaryDomain& d) {
  return std::holds_alternative<ExteriorDisk>(d);
}

/// Inner (conformal) radius r(B, a) for a finite point a in B.
///
///   disk(c, rho):          (rho^2 - |a - c|^2) / rho
///   half-plane:            2 dist(a, boundary line)
///   exterior_disk(c, rho): (|a - c|^2 - rho^2) / rho
///
/// The last one follows from the Moebius map rho / (w - c) onto the unit disk.
inline double inner_radius_analytic(const ElementaryDomain& d, Complex a) {
  if (!contains(d, a)) {
    throw DomainError(std::string("inner_radius: point not inside ") + kind_name(d));
  }
  return std::visit(
      [a](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return (x.radius * x.radius - std::norm(a - x.center)) / x.radius;
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          return 2.0 * detail::signed_depth(x, a);
        } else {
          return (std::norm(a - x.center) - x.radius * x.radius) / x.radius;
        }
      },
      d);
}

/// Reduced radius at infinity, r(B, inf) := r(1/B, 0). For exterior_disk(c, rho)
/// this is 1/rho, independent of c.
inline double inner_radius_at_infinity(const ElementaryDomain& d) {
  const auto* e = std::get_if<ExteriorDisk>(&d);
  if (e == nullptr) {
    throw DomainError(std::string("inner_radius_at_infinity: ") + kind_name(d) +
                      " does not contain infinity");
  }
  return 1.0 / e->radius;
}

/// Image of an exterior disk not containing 0 under w -> 1/w; it is a disk
/// around 0.
inline Disk invert_exterior_disk(const ExteriorDisk& e) {
  const double c2 = std::norm(e.center);
  const double r2 = e.radius * e.radius;
  if (!(c2 < r2)) throw DomainError("invert_exterior_disk: 0 lies in the domain");
  return {std::conj(e.center) / (c2 - r2), e.radius / (r2 - c2)};
}

/// Clearance between two closed elementary domains: positive iff their
/// closures are disjoint; a negative value means they overlap (or one is
/// unbounded in every direction relative to the other).
inline double clearance(const ElementaryDomain& a, const ElementaryDomain& b) {
  constexpr double kOverlap = -1.0;
  return std::visit(
      [](const auto& x, const auto& y) -> double {
        using X = std::decay_t<decltype(x)>;
        using Y = std::decay_t<decltype(y)>;
        if constexpr (std::is_same_v<X, Disk> && std::is_same_v<Y, Disk>) {
          return std::abs(x.center - y.center) - x.radius - y.radius;
        } else if constexpr (std::is_same_v<X, Disk> && std::is_same_v<Y, ExteriorDisk>) {
          return y.radius - std::abs(x.center - y.center) - x.radius;
        } else if constexpr (std::is_same_v<X, ExteriorDisk> && std::is_same_v<Y, Disk>) {
          return x.radius - std::abs(x.center - y.center) - y.radius;
        } else if constexpr (std::is_same_v<X, Disk> && std::is_same_v<Y, HalfPlane>) {
          return -detail::signed_depth(y, x.center) - x.radius;
        } else if constexpr (std::is_same_v<X, HalfPlane> && std::is_same_v<Y, Disk>) {
          return -detail::signed_depth(x, y.center) - y.radius;
        } else if constexpr (std::is_same_v<X, HalfPlane> && std::is_same_v<Y, HalfPlane>) {
          if (std::abs(x.normal + y.normal) > 1e-12) return kOverlap;
          return -detail::signed_depth(x, y.point);
        } else {
          // An exterior disk meets every half-plane and every other exterior disk.
          return kOverlap;
        }
      },
      a, b);
}

// ---------------------------------------------------------------------------
// Ray systems
// ---------------------------------------------------------------------------

/// n points on the unit circle with 0 = theta_1 < ... < theta_n < 2 pi.
/// alpha_k = (theta_{k+1} - theta_k) / pi with theta_{n+1} = 2 pi, so the
/// alphas sum to 2. Sector k (0-based) is theta_k < arg w < theta_{k+1}.
class RaySystem {
 public:
  static RaySystem from_angles(std::vector<double> angles) {
    if (angles.size() < 2) throw DomainError("RaySystem: need n >= 2 points");
    if (angles.front() != 0.0) throw DomainError("RaySystem: first angle must be 0");
    for (std::size_t k = 1; k < angles.size(); ++k) {
      if (!(angles[k] > angles[k - 1])) {
        throw DomainError("RaySystem: angles must increase strictly");
      }
    }
    if (!(angles.back() < kTwoPi)) throw DomainError("RaySystem: angles must be < 2 pi");
    RaySystem r;
    r.angles_ = std::move(angles);
    const std::size_t n = r.angles_.size();
    r.points_.reserve(n);
    r.alphas_.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      r.points_.push_back(k == 0 ? Complex(1.0, 0.0) : std::polar(1.0, r.angles_[k]));
      const double next = (k + 1 < n) ? r.angles_[k + 1] : kTwoPi;
      r.alphas_.push_back((next - r.angles_[k]) / std::numbers::pi);
    }
    return r;
  }

  /// Two-point system a_1 = 1, a_2 = e^{i theta}.
  static RaySystem two_point(double theta) { return from_angles({0.0, theta}); }

  std::size_t n() const { return angles_.size(); }
  std::span<const double> angles() const { return angles_; }
  std::span<const Complex> points() const { return points_; }
  std::span<const double> alphas() const { return alphas_; }

  double sector_start(std::size_t k) const { return angles_.at(k); }
  double sector_end(std::size_t k) const { return k + 1 < n() ? angles_.at(k + 1) : kTwoPi; }

 private:
  std::vector<double> angles_;
  std::vector<Complex> points_;
  std::vector<double> alphas_;
};

// ---------------------------------------------------------------------------
// Configurations
// ---------------------------------------------------------------------------

/// Domains B_0 (around 0), B_inf (around infinity) and B_k (around a_k).
struct Configuration {
  RaySystem ray;
  ElementaryDomain at_zero;
  ExteriorDisk at_infinity;
  std::vector<ElementaryDomain> domains;
};

/// Slack for rounding in clearance arithmetic.
inline constexpr double kClearanceSlack = 1e-12;

/// Throws ConfigurationError unless every marked point lies strictly inside
/// its domain and every pairwise clearance is at least `gap`. Domains are
/// open, so with gap = 0 closures may touch.
inline void validate(const Configuration& c, double gap = 0.0) {
  const auto pts = c.ray.points();
  if (c.domains.size() != pts.size()) {
    throw ConfigurationError("configuration: expected one domain per ray point");
  }
  if (!contains(c.at_zero, Complex(0.0, 0.0))) {
    throw ConfigurationError("configuration: 0 is not inside domain_at_zero");
  }
  if (std::abs(c.at_infinity.center) >= c.at_infinity.radius) {
    throw ConfigurationError("configuration: domain_at_infinity contains 0");
  }
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!contains(c.domains[k], pts[k])) {
      throw ConfigurationError("configuration: a_" + std::to_string(k + 1) +
                               " is not inside its domain");
    }
  }
  std::vector<ElementaryDomain> all;
  all.reserve(pts.size() + 2);
  all.push_back(c.at_zero);
  all.push_back(c.at_infinity);
  all.insert(all.end(), c.domains.begin(), c.domains.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (!(clearance(all[i], all[j]) >= gap - kClearanceSlack)) {
        throw ConfigurationError("configuration: domains " + std::to_string(i) + " and " +
                                 std::to_string(j) + " are not disjoint");
      }
    }
  }
}

inline bool is_valid(const Configuration& c, double gap = 0.0) {
  try {
    validate(c, gap);
    return true;
  } catch (const ConfigurationError&) {
    return false;
  }
}

}  // namespace nodom
