#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "nodom/configuration.hpp"
#include "nodom/errors.hpp"
#include "nodom/philox.hpp"
#include "nodom/polyline.hpp"
#include "nodom/wos.hpp"

// Q(w) dw^2 = -(g w^4 + (4 - 2g) w^2 + g) / (w^2 (w^2 - 1)^2) dw^2.
// Trajectories are the arcs with Q dw^2 > 0. Double poles sit at 0, +1, -1
// and infinity; Q is invariant under w -> -w, w -> conj(w) and w -> 1/w.

namespace nodom::qd {

inline void require_gamma(double gamma, const char* fn) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError(std::string(fn) + ": gamma must be positive and finite");
  }
}

inline Complex numerator(Complex w, double gamma) {
  const Complex u = w * w;
  return (gamma * u + (4.0 - 2.0 * gamma)) * u + gamma;
}

inline Complex numerator_derivative(Complex w, double gamma) {
  return w * (4.0 * gamma * w * w + 2.0 * (4.0 - 2.0 * gamma));
}

inline Complex denominator(Complex w) {
  const Complex u = w * w;
  return u * (u - 1.0) * (u - 1.0);
}

inline Complex q_eval(Complex w, double gamma) {
  require_gamma(gamma, "q_eval");
  const Complex d = denominator(w);
  if (d == Complex(0.0, 0.0)) throw PoleError("q_eval: w is a pole");
  return -numerator(w, gamma) / d;
}

/// The same differential in zeta = 1/w: Q(1/zeta) / zeta^4.
inline Complex q_eval_inverted(Complex zeta, double gamma) {
  if (zeta == Complex(0.0, 0.0)) throw PoleError("q_eval_inverted: zeta = 0 is the pole at infinity");
  const Complex z2 = zeta * zeta;
  return q_eval(1.0 / zeta, gamma) / (z2 * z2);
}

struct QZero {
  Complex z;
  int multiplicity = 1;
};

/// Roots of g w^4 + (4 - 2g) w^2 + g, sorted by (re, im), with multiplicity.
inline std::array<QZero, 4> q_zeros(double gamma) {
  require_gamma(gamma, "q_zeros");
  const double b = 4.0 - 2.0 * gamma;
  const double disc = b * b - 4.0 * gamma * gamma;
  std::array<Complex, 2> u;
  if (disc > 0.0) {
    // real roots; the larger one first, the other from u1 u2 = 1
    const double u1 = (-b - std::copysign(std::sqrt(disc), b)) / (2.0 * gamma);
    u = {Complex(u1, 0.0), Complex(1.0 / u1, 0.0)};
  } else {
    const double im = std::sqrt(-disc) / (2.0 * gamma);
    u = {Complex(-b / (2.0 * gamma), im), Complex(-b / (2.0 * gamma), -im)};
  }
  auto root = [](Complex v) {
    if (v.imag() == 0.0 && v.real() < 0.0) return Complex(0.0, std::sqrt(-v.real()));
    return std::sqrt(v);
  };
  std::array<Complex, 4> w{root(u[0]), -root(u[0]), root(u[1]), -root(u[1])};
  std::sort(w.begin(), w.end(), [](Complex a, Complex c) {
    return a.real() != c.real() ? a.real() < c.real() : a.imag() < c.imag();
  });
  std::array<QZero, 4> out;
  for (int i = 0; i < 4; ++i) {
    int m = 0;
    for (int j = 0; j < 4; ++j) {
      if (std::abs(w[i] - w[j]) <= 1e-8 * std::max(1.0, std::abs(w[i]))) ++m;
    }
    out[i] = {w[i], m};
  }
  return out;
}

enum class Pole { zero = 0, plus_one = 1, minus_one = 2, infinity = 3 };

inline const char* pole_name(Pole p) {
  switch (p) {
    case Pole::zero: return "0";
    case Pole::plus_one: return "+1";
    case Pole::minus_one: return "-1";
    case Pole::infinity: return "inf";
  }
  return "?";
}

inline constexpr std::array<Complex, 3> kFinitePoles{Complex(0.0, 0.0), Complex(1.0, 0.0),
                                                    Complex(-1.0, 0.0)};

// ---------------------------------------------------------------------------
// Trajectory integration
// ---------------------------------------------------------------------------

enum class StopReason { max_length, near_singularity, closed, step_underflow, reached_zero };

inline const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::max_length: return "max_length";
    case StopReason::near_singularity: return "near_singularity";
    case StopReason::closed: return "closed";
    case StopReason::step_underflow: return "step_underflow";
    case StopReason::reached_zero: return "reached_zero";
  }
  return "?";
}

struct Trace {
  Polyline points;
  StopReason stop = StopReason::max_length;
  double length = 0.0;
};

inline constexpr double kTraceTolerance = 1e-11;

namespace detail {

// Unit direction of the field arg(dw) = -arg(Q)/2 (mod pi), oriented along ref.
template <class QF>
Complex direction(const QF& q, Complex w, Complex ref) {
  const Complex v = std::polar(1.0, -0.5 * std::arg(q(w)));
  return std::real(v * std::conj(ref)) >= 0.0 ? v : -v;
}

template <class QF>
Complex rk4(const QF& q, Complex w, Complex ref, double h) {
  const Complex k1 = direction(q, w, ref);
  const Complex k2 = direction(q, w + 0.5 * h * k1, k1);
  const Complex k3 = direction(q, w + 0.5 * h * k2, k1);
  const Complex k4 = direction(q, w + h * k3, k1);
  return w + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Adaptive RK4 with step doubling. `stop(w, length, tangent)` returns true
// to end the trace after an accepted step.
template <class QF, class Stop>
Trace integrate(const QF& q, Polyline prefix, Complex tangent, double h0, double max_step,
                double max_length, Stop&& stop) {
  Trace tr;
  tr.points = std::move(prefix);
  Complex w = tr.points.back();
  Complex t = tangent;
  double h = std::min(h0, max_step);
  const double h_min = 1e-14;
  while (tr.length < max_length) {
    h = std::min(h, max_length - tr.length);
    const Complex full = rk4(q, w, t, h);
    const Complex half = rk4(q, w, t, 0.5 * h);
    const Complex two = rk4(q, half, direction(q, half, t), 0.5 * h);
    const double err = std::abs(two - full);
    if (!std::isfinite(err)) {
      tr.stop = StopReason::near_singularity;
      return tr;
    }
    if (err > kTraceTolerance) {
      h *= std::max(0.1, 0.9 * std::pow(kTraceTolerance / err, 0.2));
      if (h < h_min) {
        tr.stop = StopReason::step_underflow;
        return tr;
      }
      continue;
    }
    const Complex next = two + (two - full) / 15.0;
    tr.length += std::abs(next - w);
    t = direction(q, next, next - w);
    w = next;
    tr.points.push_back(w);
    if (stop(w, tr.length, t, tr)) return tr;
    const double grow = err > 0.0 ? 0.9 * std::pow(kTraceTolerance / err, 0.2) : 2.0;
    h = std::min(max_step, h * std::clamp(grow, 0.2, 2.0));
  }
  tr.stop = StopReason::max_length;
  return tr;
}

}  // namespace detail

/// Traces the trajectory through `start`, initially along +e^{-i arg Q / 2}.
/// Stops at max_length, within `step` of a zero or pole (|w| > 1/step counts
/// as near infinity), or when it returns within `step` of the start heading
/// the same way; a closed trace ends with the start point.
inline Trace trace_trajectory(Complex start, double gamma, double step, double max_length) {
  require_gamma(gamma, "trace_trajectory");
  if (!(step > 0.0) || !(max_length > 0.0)) throw DomainError("trace_trajectory: bad step/length");
  const auto zeros = q_zeros(gamma);
  auto near_singular = [&](Complex w) {
    for (const auto& z : zeros) {
      if (std::abs(w - z.z) < step) return true;
    }
    for (auto p : kFinitePoles) {
      if (std::abs(w - p) < step) return true;
    }
    return std::abs(w) > 1.0 / step;
  };
  if (near_singular(start)) throw DomainError("trace_trajectory: start is not a regular point");
  auto q = [gamma](Complex w) { return -numerator(w, gamma) / denominator(w); };
  const Complex t0 = std::polar(1.0, -0.5 * std::arg(q(start)));
  return detail::integrate(q, Polyline{start}, t0, step, step, max_length,
                           [&](Complex w, double len, Complex t, Trace& tr) {
                             if (near_singular(w)) {
                               tr.stop = StopReason::near_singularity;
                               return true;
                             }
                             if (len > 4.0 * step && std::abs(w - start) < step &&
                                 std::real(t * std::conj(t0)) > 0.0) {
                               tr.points.push_back(start);
                               tr.stop = StopReason::closed;
                               return true;
                             }
                             return false;
                           });
}

// ---------------------------------------------------------------------------
// Critical graph
// ---------------------------------------------------------------------------

struct TrajectoryField {
  double gamma = 0.0;
  double step = 0.0;
  std::array<QZero, 4> zeros{};
  std::array<Pole, 4> poles{Pole::zero, Pole::plus_one, Pole::minus_one, Pole::infinity};
  std::array<int, 4> pole_orders{2, 2, 2, 2};
  std::vector<Polyline> trajectories;           // critical edges, w plane
  std::vector<Polyline> inverted_trajectories;  // critical edges, zeta = 1/w plane
  // Closed, counter-clockwise. Entries for 0, +1, -1 are in the w plane; the
  // entry for infinity is the face around zeta = 0 in the zeta = 1/w plane.
  std::array<Polyline, 4> circular_boundaries{};

  const Polyline& boundary(Pole p) const { return circular_boundaries[static_cast<int>(p)]; }
  bool empty() const { return trajectories.empty() && zeros[0].multiplicity == 0; }
};

inline constexpr double kLaunchOffset = 1e-8;

namespace detail {

struct HalfEdge {
  int vertex;  // start zero
  int slot;    // launch slot at that zero
  int twin = -1;
  Polyline line;
};

struct Graph {
  std::vector<Complex> vertices;
  std::vector<std::array<double, 3>> slot_angles;
  std::vector<HalfEdge> half_edges;  // index = 3 * vertex + slot
  std::vector<Polyline> edges;       // one per twin pair
  std::vector<Polyline> faces;
};

inline double angle_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

// Critical graph of a differential with four simple zeros whose trajectories
// from the zeros all end at zeros. dq holds Q'(z) at each zero.
template <class QF>
Graph build_graph(const QF& q, const std::vector<Complex>& zeros,
                  const std::vector<Complex>& dq, const std::vector<Complex>& singular,
                  double step) {
  Graph g;
  g.vertices = zeros;
  const int nv = static_cast<int>(zeros.size());
  for (int v = 0; v < nv; ++v) {
    std::array<double, 3> a;
    for (int m = 0; m < 3; ++m) a[m] = (-std::arg(dq[v]) + kTwoPi * m) / 3.0;
    g.slot_angles.push_back(a);
  }
  double zero_sep = 1e300;
  for (int i = 0; i < nv; ++i) {
    for (int j = i + 1; j < nv; ++j) zero_sep = std::min(zero_sep, std::abs(zeros[i] - zeros[j]));
  }
  const double capture = std::min(2.0 * step, 0.1 * zero_sep);
  const double max_length = 200.0;

  g.half_edges.resize(3 * nv);
  for (int v = 0; v < nv; ++v) {
    for (int m = 0; m < 3; ++m) {
      const Complex dir = std::polar(1.0, g.slot_angles[v][m]);
      const Complex p0 = zeros[v] + kLaunchOffset * dir;
      int arrived = -1;
      Trace tr = integrate(q, Polyline{zeros[v], p0}, dir, kLaunchOffset, step, max_length,
                           [&](Complex w, double, Complex, Trace& t) {
                             for (Complex s : singular) {
                               if (std::abs(w - s) < step) {
                                 t.stop = StopReason::near_singularity;
                                 return true;
                               }
                             }
                             for (int k = 0; k < nv; ++k) {
                               if (k == v && std::abs(w - zeros[v]) < 4.0 * capture) continue;
                               if (std::abs(w - zeros[k]) < capture) {
                                 arrived = k;
                                 t.stop = StopReason::reached_zero;
                                 return true;
                               }
                             }
                             return false;
                           });
      if (arrived < 0) {
        throw StructureError("critical_graph: trajectory from a zero did not reach a zero (" +
                             std::string(stop_reason_name(tr.stop)) + ")");
      }
      tr.points.push_back(zeros[arrived]);
      HalfEdge& he = g.half_edges[3 * v + m];
      he.vertex = v;
      he.slot = m;
      he.line = std::move(tr.points);
      // arrival slot: launch direction at the end zero closest to the approach
      const Complex approach = he.line[he.line.size() - 2] - zeros[arrived];
      int best = 0;
      for (int s = 1; s < 3; ++s) {
        if (angle_gap(std::arg(approach), g.slot_angles[arrived][s]) <
            angle_gap(std::arg(approach), g.slot_angles[arrived][best])) {
          best = s;
        }
      }
      if (angle_gap(std::arg(approach), g.slot_angles[arrived][best]) > 0.3) {
        throw StructureError("critical_graph: arrival direction is not critical");
      }
      he.twin = 3 * arrived + best;
    }
  }
  for (int h = 0; h < 3 * nv; ++h) {
    if (g.half_edges[g.half_edges[h].twin].twin != h) {
      throw StructureError("critical_graph: inconsistent edge pairing");
    }
    if (h < g.half_edges[h].twin) g.edges.push_back(g.half_edges[h].line);
  }
  // a half-edge and its twin trace the same arc; use the lower index for both
  for (int h = 0; h < 3 * nv; ++h) {
    const int t = g.half_edges[h].twin;
    if (t < h) {
      g.half_edges[h].line.assign(g.half_edges[t].line.rbegin(), g.half_edges[t].line.rend());
    }
  }

  // Faces: after arriving at v through slot s, leave v through the next slot
  // clockwise from s. Bounded faces come out counter-clockwise.
  auto next_cw = [&](int v, int s) {
    int best = -1;
    double best_gap = 1e300;
    for (int m = 0; m < 3; ++m) {
      if (m == s) continue;
      double d = std::fmod(g.slot_angles[v][s] - g.slot_angles[v][m], kTwoPi);
      if (d <= 0.0) d += kTwoPi;
      if (d < best_gap) {
        best_gap = d;
        best = m;
      }
    }
    return 3 * v + best;
  };
  std::vector<bool> used(3 * nv, false);
  for (int h0 = 0; h0 < 3 * nv; ++h0) {
    if (used[h0]) continue;
    Polyline face;
    int h = h0;
    for (int guard = 0; guard <= 3 * nv; ++guard) {
      if (used[h]) break;
      used[h] = true;
      const auto& line = g.half_edges[h].line;
      face.insert(face.end(), line.begin() + (face.empty() ? 0 : 1), line.end());
      const int t = g.half_edges[h].twin;
      h = next_cw(t / 3, t % 3);
    }
    if (h != h0) throw StructureError("critical_graph: face walk did not close");
    g.faces.push_back(std::move(face));
  }
  return g;
}

// The face whose winding is 1 about `target` and 0 about the other points.
inline Polyline face_around(const Graph& g, Complex target, const std::vector<Complex>& others) {
  for (const auto& f : g.faces) {
    if (winding_number(f, target) != 1) continue;
    bool clean = true;
    for (Complex o : others) clean &= winding_number(f, o) == 0;
    if (clean) return f;
  }
  throw StructureError("critical_graph: no circular face around a pole");
}

}  // namespace detail

/// Traces three critical trajectories from every zero in the w plane and in
/// zeta = 1/w, assembles the critical graphs and extracts the faces around
/// 0, +1, -1 (w plane) and infinity (zeta = 0).
inline TrajectoryField critical_graph(double gamma, double step = 5e-4) {
  require_gamma(gamma, "critical_graph");
  if (std::abs(gamma - 1.0) < 1e-9) {
    throw DomainError("critical_graph: gamma = 1 has double zeros");
  }
  if (!(step > 0.0) || step > 0.05) throw DomainError("critical_graph: step must be in (0, 0.05]");
  TrajectoryField f;
  f.gamma = gamma;
  f.step = step;
  f.zeros = q_zeros(gamma);

  std::vector<Complex> zw, dw, zz, dz;
  for (const auto& z : f.zeros) {
    const Complex w = z.z;
    const Complex dq = -numerator_derivative(w, gamma) / denominator(w);
    zw.push_back(w);
    dw.push_back(dq);
    // d/dzeta [Q(1/zeta) zeta^-4] at a zero of Q(1/zeta)
    const Complex zeta = 1.0 / w;
    zz.push_back(zeta);
    dz.push_back(dq * (-1.0 / (zeta * zeta)) / std::pow(zeta, 4));
  }
  const std::vector<Complex> poles(kFinitePoles.begin(), kFinitePoles.end());
  auto qw = [gamma](Complex w) { return -numerator(w, gamma) / denominator(w); };
  auto qz = [gamma](Complex zeta) {
    const Complex w = 1.0 / zeta;
    const Complex z2 = zeta * zeta;
    return -numerator(w, gamma) / denominator(w) / (z2 * z2);
  };
  const auto gw = detail::build_graph(qw, zw, dw, poles, step);
  const auto gz = detail::build_graph(qz, zz, dz, poles, step);
  f.trajectories = gw.edges;
  f.inverted_trajectories = gz.edges;
  f.circular_boundaries[0] = detail::face_around(gw, poles[0], {poles[1], poles[2]});
  f.circular_boundaries[1] = detail::face_around(gw, poles[1], {poles[0], poles[2]});
  f.circular_boundaries[2] = detail::face_around(gw, poles[2], {poles[0], poles[1]});
  f.circular_boundaries[3] = detail::face_around(gz, poles[0], {poles[1], poles[2]});
  return f;
}

// ---------------------------------------------------------------------------
// Extremal product
// ---------------------------------------------------------------------------

struct ExtremalEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double log_std_error = 0.0;
  McEstimate r_zero;      // r(Lambda_0, 0)
  McEstimate r_plus;      // r(Lambda_1, 1)
  McEstimate r_minus;     // r(Lambda_2, -1)
  McEstimate r_infinity;  // r(Lambda_inf, inf), estimated at zeta = 0
};

/// [r(L0,0) r(Linf,inf)]^gamma r(L1,1) r(L2,-1) from walk-on-spheres radii of
/// the circular faces. Radius j uses the seed derive_seed(seed, j).
inline ExtremalEstimate extremal_product_estimate(const TrajectoryField& f, const WosParams& p) {
  if (f.circular_boundaries[0].empty()) throw StructureError("extremal_product_estimate: empty field");
  auto run = [&](int j, Complex at) {
    WosParams q = p;
    q.seed = derive_seed(p.seed, static_cast<std::uint64_t>(j));
    const PolylineOracle oracle(std::vector<Polyline>{f.circular_boundaries[j]});
    return estimate_inner_radius(oracle, at, q);
  };
  ExtremalEstimate e;
  e.r_zero = run(0, kFinitePoles[0]);
  e.r_plus = run(1, kFinitePoles[1]);
  e.r_minus = run(2, kFinitePoles[2]);
  e.r_infinity = run(3, Complex(0.0, 0.0));
  const double g = f.gamma;
  const double log_value = g * (e.r_zero.log_mean + e.r_infinity.log_mean) + e.r_plus.log_mean +
                           e.r_minus.log_mean;
  const auto sq = [](double x) { return x * x; };
  e.log_std_error = std::sqrt(g * g * (sq(e.r_zero.log_std_error) + sq(e.r_infinity.log_std_error)) +
                              sq(e.r_plus.log_std_error) + sq(e.r_minus.log_std_error));
  e.value = std::exp(log_value);
  e.std_error = e.value * e.log_std_error;
  return e;
}

inline ExtremalEstimate extremal_product_estimate(double gamma, const WosParams& p,
                                                  double step = 5e-4) {
  return extremal_product_estimate(critical_graph(gamma, step), p);
}

}  // namespace nodom::qd
