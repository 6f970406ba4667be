#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "nodom/bound.hpp"
#include "nodom/configuration.hpp"
#include "nodom/errors.hpp"
#include "nodom/philox.hpp"
#include "nodom/polyline.hpp"
#include "nodom/wos.hpp"

namespace nodom {

// ---------------------------------------------------------------------------
// The functional J_n(gamma)
// ---------------------------------------------------------------------------

/// [r(B0,0) r(Binf,inf)]^gamma prod_k r(B_k, a_k), from analytic radii.
/// Takes the pieces separately so rotated copies (which break the ray
/// normalisation theta_1 = 0) can be evaluated too.
inline double functional_value(double gamma, const ElementaryDomain& at_zero,
                               const ElementaryDomain& at_infinity,
                               std::span<const ElementaryDomain> domains,
                               std::span<const Complex> points) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("evaluate_J: gamma must be >= 0");
  if (domains.size() != points.size()) throw ConfigurationError("evaluate_J: size mismatch");
  const double r0 = inner_radius_analytic(at_zero, Complex(0.0, 0.0));
  const double rinf = inner_radius_at_infinity(at_infinity);
  double prod = std::pow(r0 * rinf, gamma);
  for (std::size_t k = 0; k < domains.size(); ++k) prod *= inner_radius_analytic(domains[k], points[k]);
  return prod;
}

inline double evaluate_J(double gamma, const Configuration& config) {
  validate(config);
  return functional_value(gamma, config.at_zero, config.at_infinity, config.domains,
                          config.ray.points());
}

// ---------------------------------------------------------------------------
// Random two-point configurations
// ---------------------------------------------------------------------------

struct SampleParams {
  double min_radius = 0.02;
  double max_radius = 1.0;
  double max_offset = 0.9;    // centre offset as a fraction of the radius
  double outer_min = 1.05;
  double outer_max = 3.0;
  double outer_offset = 0.3;
  bool inflate = true;        // grow disks until they (almost) touch
  int max_attempts = 10'000;
};

/// Disks around 0, a_1 = 1, a_2 = e^{i theta} (theta uniform in [pi/2, 3pi/2])
/// inside the complement of an exterior disk. Deterministic in (seed, stream).
inline Configuration sample_configuration(std::uint64_t seed, const SampleParams& p = {},
                                          std::uint64_t stream = 0) {
  constexpr double kPi = std::numbers::pi;
  const double gap = 2.0 * kDisjointGap;
  PhiloxStream rng(seed, stream);
  for (int attempt = 0; attempt < p.max_attempts; ++attempt) {
    const double theta = kPi / 2.0 + kPi * rng.uniform();
    const RaySystem ray = RaySystem::two_point(theta);
    const std::array<Complex, 3> marks{Complex(0.0, 0.0), ray.points()[0], ray.points()[1]};
    std::array<Complex, 3> centers;
    std::array<double, 3> radii;
    for (int j = 0; j < 3; ++j) {
      radii[j] = rng.uniform(p.min_radius, p.max_radius);
      const double off = radii[j] * p.max_offset * rng.uniform();
      centers[j] = marks[j] + std::polar(off, kTwoPi * rng.uniform());
    }
    double outer = rng.uniform(p.outer_min, p.outer_max);
    const Complex outer_c = std::polar(p.outer_offset * rng.uniform(), kTwoPi * rng.uniform());

    if (p.inflate) {
      std::array<int, 3> order{0, 1, 2};
      for (int i = 2; i > 0; --i) {
        const int j = static_cast<int>(rng.uniform() * (i + 1));
        std::swap(order[i], order[std::min(j, i)]);
      }
      for (int j : order) {
        double limit = outer - std::abs(centers[j] - outer_c);
        for (int i = 0; i < 3; ++i) {
          if (i != j) limit = std::min(limit, std::abs(centers[j] - centers[i]) - radii[i]);
        }
        limit -= gap;
        if (limit > radii[j]) radii[j] = limit;
      }
      double need = 0.0;
      for (int j = 0; j < 3; ++j) need = std::max(need, std::abs(centers[j] - outer_c) + radii[j]);
      outer = need + gap;
    }

    Configuration c{ray, Disk{centers[0], radii[0]}, ExteriorDisk{outer_c, outer},
                    {Disk{centers[1], radii[1]}, Disk{centers[2], radii[2]}}};
    if (is_valid(c, kDisjointGap)) return c;
  }
  throw SamplingError("sample_configuration: rejection cap exceeded");
}

/// a_2 = -1 with equal disks of radius 0.45 around 0, 1, -1 and B_inf = {|w| > 1.6}.
inline Configuration symmetric_configuration() {
  return {RaySystem::two_point(std::numbers::pi), Disk{{0.0, 0.0}, 0.45},
          ExteriorDisk{{0.0, 0.0}, 1.6}, {Disk{{1.0, 0.0}, 0.45}, Disk{{-1.0, 0.0}, 0.45}}};
}

struct VerifyReport {
  double gamma = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::int64_t violations = 0;
  double bound = 0.0;      // symmetric_value(gamma)
  double max_value = 0.0;  // largest J over the samples
  double max_ratio = 0.0;  // max J / bound
  std::int64_t argmax_sample = -1;
};

/// Randomised check of J_2(gamma) <= (4/gamma) Psi(sqrt gamma) on sampled
/// configurations. Sample i uses substream i of `seed`.
inline VerifyReport verify_inequality(double gamma, std::int64_t samples, std::uint64_t seed,
                                   unsigned threads = 1, const SampleParams& params = {}) {
  if (samples < 1) throw DomainError("verify: samples must be >= 1");
  VerifyReport rep;
  rep.gamma = gamma;
  rep.samples = samples;
  rep.seed = seed;
  rep.bound = bound::symmetric_value(gamma);
  std::vector<double> values(static_cast<std::size_t>(samples));
  std::vector<std::exception_ptr> errors(std::max(1u, threads));
  auto worker = [&](unsigned t) {
    try {
      for (std::int64_t i = t; i < samples; i += std::max(1u, threads)) {
        const auto c = sample_configuration(seed, params, static_cast<std::uint64_t>(i));
        values[static_cast<std::size_t>(i)] = evaluate_J(gamma, c);
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (std::int64_t i = 0; i < samples; ++i) {
    const double v = values[static_cast<std::size_t>(i)];
    if (v > rep.bound) ++rep.violations;
    if (v > rep.max_value) {
      rep.max_value = v;
      rep.argmax_sample = i;
    }
  }
  rep.max_ratio = rep.max_value / rep.bound;
  return rep;
}

// ---------------------------------------------------------------------------
// Separating transformation
// ---------------------------------------------------------------------------

inline constexpr double kSectorAngleTol = 1e-12;

namespace detail {

// Argument of e^{-i theta_k} w folded into [0, pi alpha_k]; NaN when w lies
// outside the closed sector.
inline double sector_argument(Complex w, const RaySystem& ray, std::size_t k) {
  const double opening = ray.sector_end(k) - ray.sector_start(k);
  double phi = std::arg(w * std::polar(1.0, -ray.sector_start(k)));
  if (phi < -kSectorAngleTol) phi += kTwoPi;
  if (phi < 0.0) phi = 0.0;
  if (phi > opening) {
    if (phi > opening + kSectorAngleTol) return std::numeric_limits<double>::quiet_NaN();
    phi = opening;
  }
  return phi;
}

}  // namespace detail

/// zeta = pi_k(w) = -i (e^{-i theta_k} w)^{1/alpha_k}, with the argument of
/// e^{-i theta_k} w taken in [0, pi alpha_k]. Opens the closed sector k onto
/// the closed right half-plane; |pi_k(w)| = |w|^{1/alpha_k}.
inline Complex separating_map(Complex w, std::size_t k, const RaySystem& ray) {
  if (k >= ray.n()) throw DomainError("separating_map: sector index out of range");
  if (w == Complex(0.0, 0.0)) throw DomainError("separating_map: w must be nonzero");
  const double phi = detail::sector_argument(w, ray, k);
  if (std::isnan(phi)) throw DomainError("separating_map: w outside the closed sector");
  const double inv_alpha = 1.0 / ray.alphas()[k];
  return Complex(0.0, -1.0) * std::polar(std::pow(std::abs(w), inv_alpha), phi * inv_alpha);
}

/// Which marked point of the sector a transformed domain belongs to.
enum class Owner { origin, sector_start, sector_end, infinity };

inline const char* owner_name(Owner o) {
  switch (o) {
    case Owner::origin: return "origin";
    case Owner::sector_start: return "sector_start";
    case Owner::sector_end: return "sector_end";
    case Owner::infinity: return "infinity";
  }
  return "?";
}

/// Boundary of Omega = (component of pi_k(B n closed P_k) around the owner's
/// image) united with its mirror image in the imaginary axis. Loops are
/// explicitly closed (front == back) and use the even-odd rule.
struct TransformedBoundary {
  Owner owner = Owner::origin;
  std::vector<Polyline> loops;  // zeta plane
  Complex marked;               // 0, omega_k^(1) or omega_k^(2); 0 for infinity (see below)
  // For Owner::infinity: boundary of conj(1/Omega), a bounded domain around 0
  // with r(conj(1/Omega), 0) = r(Omega, inf). Equal to `loops` otherwise.
  std::vector<Polyline> radius_loops;
  double max_chord_deviation = 0.0;  // in radius_loops coordinates
};

namespace detail {

struct ArcPiece {
  double s_from;
  double s_to;
  Complex p_from;  // exact ray points at the ends
  Complex p_to;
};

// Arcs of the circle |w - c| = rho bounding the component of
// disk n closed-sector that contains the owner.
inline std::vector<ArcPiece> component_arcs(const Disk& d, double th0, double th1, Owner owner) {
  const Complex c = d.center;
  const double rho = d.radius;
  const double cm = std::abs(c);
  if (std::abs(cm - rho) <= 1e-12 * rho) {
    throw GeometryError("transform_boundary: circle passes through the origin");
  }
  const bool has_origin = cm < rho;
  const double q = std::norm(c) - rho * rho;

  struct Crossing {
    double s;
    int ray;
    double t;
    Complex p;
  };
  std::vector<Crossing> xs;
  std::array<std::array<double, 2>, 2> seg{};  // [ray] -> (t_lo, t_hi)
  std::array<bool, 2> has_seg{false, false};
  const std::array<double, 2> th{th0, th1};
  for (int r = 0; r < 2; ++r) {
    const Complex u = std::polar(1.0, th[r]);
    const double b = std::real(c * std::conj(u));
    const double disc = b * b - q;
    if (!(disc > 0.0)) continue;
    const double sq = std::sqrt(disc);
    const double t_hi = b + sq;
    const double t_lo = q / t_hi;  // = b - sq without cancellation
    if (has_origin) {
      seg[r] = {0.0, t_hi};
      has_seg[r] = true;
      xs.push_back({0.0, r, t_hi, t_hi * u});
    } else if (t_lo > 0.0) {
      seg[r] = {t_lo, t_hi};
      has_seg[r] = true;
      xs.push_back({0.0, r, t_lo, t_lo * u});
      xs.push_back({0.0, r, t_hi, t_hi * u});
    }
  }
  if (xs.empty()) {
    throw GeometryError("transform_boundary: domain does not meet the sector rays at its owner");
  }
  for (auto& x : xs) {
    x.s = std::arg(x.p - c);
    if (x.s < 0.0) x.s += kTwoPi;
  }
  std::sort(xs.begin(), xs.end(), [](const Crossing& a, const Crossing& b) { return a.s < b.s; });
  const int n = static_cast<int>(xs.size());

  auto in_open_sector = [&](Complex w) {
    double phi = std::arg(w * std::polar(1.0, -th0));
    if (phi < 0.0) phi += kTwoPi;
    return phi > 0.0 && phi < th1 - th0;
  };
  // arc i runs counter-clockwise from crossing i to crossing i+1
  std::vector<bool> arc_inside(n);
  for (int i = 0; i < n; ++i) {
    double s0 = xs[i].s;
    double s1 = xs[(i + 1) % n].s;
    if (i + 1 == n) s1 += kTwoPi;
    arc_inside[i] = in_open_sector(c + std::polar(rho, 0.5 * (s0 + s1)));
  }

  // Partner of a crossing along its ray segment (through the origin when the
  // disk contains it).
  auto partner = [&](int i) -> int {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (has_origin ? xs[j].ray != xs[i].ray : xs[j].ray == xs[i].ray) return j;
    }
    throw GeometryError("transform_boundary: unpaired ray crossing");
  };

  int start = -1;
  if (owner == Owner::origin) {
    if (!has_origin) throw GeometryError("transform_boundary: origin not inside the domain");
    start = 0;
  } else {
    const int r = owner == Owner::sector_start ? 0 : 1;
    if (!has_seg[r] || !(seg[r][0] < 1.0 && 1.0 < seg[r][1])) {
      throw GeometryError("transform_boundary: owner point not enclosed by the domain");
    }
    for (int i = 0; i < n; ++i) {
      if (xs[i].ray == r) {
        start = i;
        break;
      }
    }
  }

  std::vector<ArcPiece> arcs;
  int cur = start;
  for (int guard = 0; guard <= n; ++guard) {
    int other;
    ArcPiece a;
    if (arc_inside[cur]) {
      other = (cur + 1) % n;
      a = {xs[cur].s, other == 0 ? xs[0].s + kTwoPi : xs[other].s, xs[cur].p, xs[other].p};
      if (other != 0 && xs[other].s < xs[cur].s) a.s_to += kTwoPi;
    } else {
      other = (cur + n - 1) % n;
      if (!arc_inside[other]) throw GeometryError("transform_boundary: crossing without arc");
      double s_from = xs[cur].s;
      if (cur == 0) s_from += kTwoPi;
      a = {s_from, xs[other].s, xs[cur].p, xs[other].p};
    }
    arcs.push_back(a);
    const int next = partner(other);
    if (next == start) return arcs;
    cur = next;
  }
  throw GeometryError("transform_boundary: boundary cycle did not close");
}

// Samples the image of one arc, refining until consecutive image points are
// closer than diam/512; reports the largest chord-to-curve deviation.
template <class Map>
Polyline sample_arc_image(const Disk& d, const ArcPiece& arc, int samples, Map&& map,
                          double& max_dev) {
  auto point_at = [&](double s) { return d.center + std::polar(d.radius, s); };
  auto image_at = [&](double s, int end) -> Complex {
    if (end == 0) return map(arc.p_from);
    if (end == 1) return map(arc.p_to);
    return map(point_at(s));
  };
  const int n0 = std::max(samples, 16);
  std::vector<double> s(n0 + 1);
  Polyline img(n0 + 1);
  for (int i = 0; i <= n0; ++i) {
    s[i] = arc.s_from + (arc.s_to - arc.s_from) * (static_cast<double>(i) / n0);
    img[i] = image_at(s[i], i == 0 ? 0 : (i == n0 ? 1 : -1));
  }
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (auto z : img) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  }
  const double limit = std::hypot(x1 - x0, y1 - y0) / 512.0;
  Polyline ri{img[0]};
  for (int i = 0; i < n0; ++i) {
    // depth-first refinement of (s[i], s[i+1])
    struct Item {
      double a, b;
      Complex za, zb;
      int depth;
    };
    std::vector<Item> stack{{s[i], s[i + 1], img[i], img[i + 1], 0}};
    while (!stack.empty()) {
      Item it = stack.back();
      stack.pop_back();
      if (std::abs(it.zb - it.za) > limit && it.depth < 24) {
        const double m = 0.5 * (it.a + it.b);
        const Complex zm = map(point_at(m));
        stack.push_back({m, it.b, zm, it.zb, it.depth + 1});
        stack.push_back({it.a, m, it.za, zm, it.depth + 1});
        continue;
      }
      const Complex mid = map(point_at(0.5 * (it.a + it.b)));
      max_dev = std::max(max_dev, closest_on_segment(mid, it.za, it.zb).distance);
      ri.push_back(it.zb);
    }
  }
  return ri;
}

// Closed loop: image arc followed by its mirror image traversed backwards.
inline Polyline symmetrize(Polyline arc) {
  for (Complex* e : {&arc.front(), &arc.back()}) {
    if (std::abs(e->real()) < 1e-9) *e = Complex(0.0, e->imag());
  }
  Polyline loop = arc;
  for (std::size_t j = arc.size() - 1; j-- > 0;) loop.push_back(-std::conj(arc[j]));
  return loop;
}

inline std::vector<Polyline> transform_disk(const Disk& d, Owner owner, std::size_t k,
                                            const RaySystem& ray, int samples, double& max_dev) {
  const auto arcs = component_arcs(d, ray.sector_start(k), ray.sector_end(k), owner);
  const double total = [&] {
    double t = 0.0;
    for (const auto& a : arcs) t += std::abs(a.s_to - a.s_from);
    return t;
  }();
  std::vector<Polyline> loops;
  for (const auto& a : arcs) {
    const int n = std::max(16, static_cast<int>(std::ceil(samples * std::abs(a.s_to - a.s_from) / total)));
    auto img = sample_arc_image(d, a, n, [&](Complex w) { return separating_map(w, k, ray); }, max_dev);
    loops.push_back(symmetrize(std::move(img)));
  }
  return loops;
}

}  // namespace detail

/// Transformed boundary of `domain` in sector k for the given owner.
/// Disks serve the finite owners; an exterior disk serves Owner::infinity via
/// the reflection w -> 1/conj(w), which fixes every sector and satisfies
/// pi_k(1/conj w) = conj(1 / pi_k(w)).
inline TransformedBoundary transform_boundary(const ElementaryDomain& domain, Owner owner,
                                              std::size_t k, const RaySystem& ray,
                                              int samples = 1024) {
  if (k >= ray.n()) throw DomainError("transform_boundary: sector index out of range");
  if (samples < 16) throw DomainError("transform_boundary: need at least 16 samples");
  TransformedBoundary tb;
  tb.owner = owner;
  if (owner == Owner::infinity) {
    const auto* e = std::get_if<ExteriorDisk>(&domain);
    if (e == nullptr) throw GeometryError("transform_boundary: infinity needs an exterior disk");
    const double c2 = std::norm(e->center);
    const double r2 = e->radius * e->radius;
    if (!(c2 < r2)) throw GeometryError("transform_boundary: exterior disk contains 0");
    const Disk reflected{e->center / (c2 - r2), e->radius / (r2 - c2)};
    tb.radius_loops = detail::transform_disk(reflected, Owner::origin, k, ray, samples,
                                             tb.max_chord_deviation);
    for (const auto& l : tb.radius_loops) {
      tb.loops.push_back(map_polyline(l, [](Complex z) { return 1.0 / std::conj(z); }));
    }
    tb.marked = Complex(0.0, 0.0);
    return tb;
  }
  const auto* d = std::get_if<Disk>(&domain);
  if (d == nullptr) {
    throw GeometryError(std::string("transform_boundary: unsupported domain kind ") +
                        kind_name(domain));
  }
  tb.loops = detail::transform_disk(*d, owner, k, ray, samples, tb.max_chord_deviation);
  tb.radius_loops = tb.loops;
  switch (owner) {
    case Owner::origin: tb.marked = Complex(0.0, 0.0); break;
    case Owner::sector_start: tb.marked = separating_map(ray.points()[k], k, ray); break;
    case Owner::sector_end:
      tb.marked = separating_map(ray.points()[(k + 1) % ray.n()], k, ray);
      break;
    default: break;
  }
  if (winding_number(tb.radius_loops.front(), tb.marked) == 0 &&
      !inside_even_odd(tb.radius_loops, tb.marked)) {
    throw GeometryError("transform_boundary: owner image not enclosed");
  }
  return tb;
}

/// All transformed domains of sector k: Omega^(0), Omega^(1) (from B_k),
/// Omega^(2) (from B_{k+1}, indices mod n) and Omega^(inf).
struct SeparatedSystem {
  std::size_t k = 0;
  Complex omega1;
  Complex omega2;
  TransformedBoundary zero;
  TransformedBoundary first;
  TransformedBoundary second;
  TransformedBoundary infinity;
};

inline SeparatedSystem separate(const Configuration& c, std::size_t k, int samples = 1024) {
  validate(c);
  const std::size_t n = c.ray.n();
  SeparatedSystem s;
  s.k = k;
  s.zero = transform_boundary(c.at_zero, Owner::origin, k, c.ray, samples);
  s.first = transform_boundary(c.domains[k], Owner::sector_start, k, c.ray, samples);
  s.second = transform_boundary(c.domains[(k + 1) % n], Owner::sector_end, k, c.ray, samples);
  s.infinity = transform_boundary(c.at_infinity, Owner::infinity, k, c.ray, samples);
  s.omega1 = s.first.marked;
  s.omega2 = s.second.marked;
  return s;
}

// ---------------------------------------------------------------------------
// Separation inequalities, checked with Monte Carlo radii
// ---------------------------------------------------------------------------

enum class CheckStatus { holds, inconclusive, violated };

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::holds: return "holds";
    case CheckStatus::inconclusive: return "inconclusive";
    case CheckStatus::violated: return "violated";
  }
  return "?";
}

/// One inequality lhs <= rhs, compared in log space. `tolerance` is
/// sigmas * mc_std_error + systematic, where the systematic part bounds the
/// polyline and epsilon-shell bias of the Monte Carlo radii.
struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double log_margin = 0.0;  // log rhs - log lhs
  double mc_std_error = 0.0;
  double systematic = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::holds;
};

struct RadiusRecord {
  std::string name;
  McEstimate estimate;
  double systematic = 0.0;  // relative (log-space) bias bound
};

struct SeparationReport {
  std::vector<InequalityCheck> checks;
  std::vector<RadiusRecord> radii;
  bool violated = false;
  bool inconclusive = false;
};

struct SeparationParams {
  WosParams wos{20'000, 1e-4, 0, 1};  // epsilon is relative to the start distance
  int samples = 1024;
  double sigmas = 3.0;
};

namespace detail {

inline RadiusRecord estimate_transformed(const TransformedBoundary& tb, const SeparationParams& p,
                                         std::uint64_t seed, std::string name) {
  const PolylineOracle oracle(tb.radius_loops);
  const double d0 = oracle.query(tb.marked).distance;
  WosParams w = p.wos;
  w.seed = seed;
  w.epsilon = p.wos.epsilon * d0;
  RadiusRecord r{std::move(name), estimate_inner_radius(oracle, tb.marked, w), 0.0};
  r.systematic = (tb.max_chord_deviation + w.epsilon) / d0;
  return r;
}

inline InequalityCheck make_check(std::string name, double log_lhs, double log_rhs, double se,
                                  double sys, double sigmas) {
  InequalityCheck c;
  c.name = std::move(name);
  c.lhs = std::exp(log_lhs);
  c.rhs = std::exp(log_rhs);
  c.log_margin = log_rhs - log_lhs;
  c.mc_std_error = se;
  c.systematic = sys;
  c.tolerance = sigmas * se + sys;
  if (c.log_margin < -c.tolerance) c.status = CheckStatus::violated;
  else if (c.log_margin < c.tolerance) c.status = CheckStatus::inconclusive;
  else c.status = CheckStatus::holds;
  return c;
}

}  // namespace detail

/// Checks, for every sector k,
///   r(B_k, a_k) <= [r(Omega_k^(1), w_k^(1)) r(Omega_{k-1}^(2), w_{k-1}^(2)) alpha_k alpha_{k-1}]^{1/2}
/// and
///   r(B_0, 0)     <= [prod_k r(Omega_k^(0), 0)^{alpha_k^2}]^{1/2},
///   r(B_inf, inf) <= [prod_k r(Omega_k^(inf), inf)^{alpha_k^2}]^{1/2},
/// for points on the unit circle. Left sides are analytic, right sides are
/// walk-on-spheres estimates on the transformed polylines.
inline SeparationReport check_separation_bounds(const Configuration& c,
                                                const SeparationParams& p = {}) {
  validate(c);
  const std::size_t n = c.ray.n();
  const auto alphas = c.ray.alphas();
  SeparationReport rep;

  std::vector<RadiusRecord> r0(n), r1(n), r2(n), rinf(n);
  for (std::size_t k = 0; k < n; ++k) {
    const SeparatedSystem s = separate(c, k, p.samples);
    const std::string tag = "[k=" + std::to_string(k + 1) + "]";
    const std::uint64_t base = 4 * k;
    r0[k] = detail::estimate_transformed(s.zero, p, derive_seed(p.wos.seed, base), "Omega0" + tag);
    r1[k] = detail::estimate_transformed(s.first, p, derive_seed(p.wos.seed, base + 1), "Omega1" + tag);
    r2[k] = detail::estimate_transformed(s.second, p, derive_seed(p.wos.seed, base + 2), "Omega2" + tag);
    rinf[k] = detail::estimate_transformed(s.infinity, p, derive_seed(p.wos.seed, base + 3), "OmegaInf" + tag);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (auto* r : {&r0[k], &r1[k], &r2[k], &rinf[k]}) rep.radii.push_back(*r);
  }

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t km1 = (k + n - 1) % n;
    const double lhs = std::log(inner_radius_analytic(c.domains[k], c.ray.points()[k]));
    const auto& a = r1[k];
    const auto& b = r2[km1];
    const double rhs = 0.5 * (a.estimate.log_mean + b.estimate.log_mean + std::log(alphas[k]) +
                              std::log(alphas[km1]));
    const double se = 0.5 * std::hypot(a.estimate.log_std_error, b.estimate.log_std_error);
    rep.checks.push_back(detail::make_check("point[k=" + std::to_string(k + 1) + "]", lhs, rhs, se,
                                            0.5 * (a.systematic + b.systematic), p.sigmas));
  }
  auto weighted = [&](const std::vector<RadiusRecord>& rs, double lhs, const char* name) {
    double rhs = 0.0, var = 0.0, sys = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double w = alphas[k] * alphas[k];
      rhs += 0.5 * w * rs[k].estimate.log_mean;
      var += 0.25 * w * w * rs[k].estimate.log_std_error * rs[k].estimate.log_std_error;
      sys += 0.5 * w * rs[k].systematic;
    }
    rep.checks.push_back(detail::make_check(name, lhs, rhs, std::sqrt(var), sys, p.sigmas));
  };
  weighted(r0, std::log(inner_radius_analytic(c.at_zero, Complex(0.0, 0.0))), "zero");
  weighted(rinf, std::log(inner_radius_at_infinity(c.at_infinity)), "infinity");

  for (const auto& ch : rep.checks) {
    rep.violated |= ch.status == CheckStatus::violated;
    rep.inconclusive |= ch.status == CheckStatus::inconclusive;
  }
  return rep;
}

}  // namespace nodom
