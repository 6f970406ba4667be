#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

#include "nodom/configuration.hpp"

namespace nodom {

using Polyline = std::vector<Complex>;

struct SegmentHit {
  double distance = std::numeric_limits<double>::infinity();
  Complex point;
};

inline SegmentHit closest_on_segment(Complex z, Complex a, Complex b) {
  const Complex u = b - a;
  const double len2 = std::norm(u);
  double t = len2 > 0.0 ? std::real((z - a) * std::conj(u)) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Complex p = a + t * u;
  return {std::abs(z - p), p};
}

/// Winding number of a closed polyline about z (the closing segment
/// back -> front is implied).
inline int winding_number(std::span<const Complex> loop, Complex z) {
  if (loop.size() < 2) return 0;
  double total = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Complex a = loop[i] - z;
    const Complex b = loop[(i + 1) % loop.size()] - z;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

/// Even-odd rule over a set of closed loops.
inline bool inside_even_odd(std::span<const Polyline> loops, Complex z) {
  bool inside = false;
  for (const auto& loop : loops) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Complex a = loop[i];
      const Complex b = loop[j];
      if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
        const double x = a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
        if (z.real() < x) inside = !inside;
      }
    }
  }
  return inside;
}

inline double signed_area(std::span<const Complex> loop) {
  double s = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Complex a = loop[i];
    const Complex b = loop[(i + 1) % loop.size()];
    s += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * s;
}

inline double polyline_length(std::span<const Complex> line) {
  double s = 0.0;
  for (std::size_t i = 1; i < line.size(); ++i) s += std::abs(line[i] - line[i - 1]);
  return s;
}

/// |front - back|.
inline double closure_gap(std::span<const Complex> line) {
  return line.empty() ? 0.0 : std::abs(line.front() - line.back());
}

inline double max_modulus(std::span<const Complex> line) {
  double m = 0.0;
  for (auto z : line) m = std::max(m, std::abs(z));
  return m;
}

/// Nearest-segment queries over a set of closed loops. Small sets are scanned
/// linearly; above 256 segments a bounding-volume hierarchy is built so the
/// query cost no longer depends on how far the query point is from the curve.
class SegmentIndex {
 public:
  SegmentIndex() = default;

  /// `closed` adds the segment back -> front of every polyline.
  explicit SegmentIndex(std::span<const Polyline> lines, bool closed = true) {
    for (const auto& loop : lines) {
      const std::size_t count = closed ? loop.size() : (loop.empty() ? 0 : loop.size() - 1);
      for (std::size_t i = 0; i < count; ++i) {
        const Complex a = loop[i];
        const Complex b = loop[(i + 1) % loop.size()];
        if (a != b) segs_.push_back({a, b});
      }
    }
    if (segs_.size() > kLinearLimit) build();
  }

  std::size_t size() const { return segs_.size(); }

  SegmentHit nearest(Complex z) const {
    SegmentHit best;
    if (nodes_.empty()) {
      for (const auto& s : segs_) consider(z, s, best);
      return best;
    }
    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
      const Node& nd = nodes_[stack[--top]];
      if (box_distance(nd, z) >= best.distance) continue;
      if (nd.left < 0) {
        for (int i = nd.begin; i < nd.end; ++i) consider(z, segs_[i], best);
        continue;
      }
      const double dl = box_distance(nodes_[nd.left], z);
      const double dr = box_distance(nodes_[nd.right], z);
      // Push the farther child first so the nearer one is visited next.
      if (dl < dr) {
        if (dr < best.distance) stack[top++] = nd.right;
        if (dl < best.distance) stack[top++] = nd.left;
      } else {
        if (dl < best.distance) stack[top++] = nd.left;
        if (dr < best.distance) stack[top++] = nd.right;
      }
    }
    return best;
  }

 private:
  static constexpr std::size_t kLinearLimit = 256;
  static constexpr int kLeafSize = 8;

  struct Seg {
    Complex a, b;
  };
  struct Node {
    double x0, y0, x1, y1;
    int left = -1, right = -1;
    int begin = 0, end = 0;
  };

  static void consider(Complex z, const Seg& s, SegmentHit& best) {
    const auto h = closest_on_segment(z, s.a, s.b);
    if (h.distance < best.distance) best = h;
  }

  static double box_distance(const Node& n, Complex z) {
    const double dx = std::max({n.x0 - z.real(), 0.0, z.real() - n.x1});
    const double dy = std::max({n.y0 - z.imag(), 0.0, z.imag() - n.y1});
    return std::hypot(dx, dy);
  }

  void build() {
    nodes_.reserve(2 * segs_.size() / kLeafSize + 2);
    build_node(0, static_cast<int>(segs_.size()), 0);
  }

  int build_node(int begin, int end, int depth) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    Node n;
    n.x0 = n.y0 = std::numeric_limits<double>::infinity();
    n.x1 = n.y1 = -std::numeric_limits<double>::infinity();
    for (int i = begin; i < end; ++i) {
      for (Complex p : {segs_[i].a, segs_[i].b}) {
        n.x0 = std::min(n.x0, p.real());
        n.x1 = std::max(n.x1, p.real());
        n.y0 = std::min(n.y0, p.imag());
        n.y1 = std::max(n.y1, p.imag());
      }
    }
    n.begin = begin;
    n.end = end;
    if (end - begin > kLeafSize && depth < 48) {
      const bool split_x = (n.x1 - n.x0) >= (n.y1 - n.y0);
      const int mid = begin + (end - begin) / 2;
      auto key = [split_x](const Seg& s) {
        const Complex c = s.a + s.b;
        return split_x ? c.real() : c.imag();
      };
      std::nth_element(segs_.begin() + begin, segs_.begin() + mid, segs_.begin() + end,
                       [&](const Seg& l, const Seg& r) { return key(l) < key(r); });
      n.left = build_node(begin, mid, depth + 1);
      n.right = build_node(mid, end, depth + 1);
    }
    nodes_[id] = n;
    return id;
  }

  std::vector<Seg> segs_;
  std::vector<Node> nodes_;
};

/// Largest distance from a vertex of `from` to the closed polyline `to`.
inline double directed_hausdorff(std::span<const Complex> from, const SegmentIndex& to) {
  double h = 0.0;
  for (auto z : from) h = std::max(h, to.nearest(z).distance);
  return h;
}

/// Symmetric vertex-to-curve Hausdorff distance between two polylines.
inline double hausdorff(const Polyline& a, const Polyline& b, bool closed = true) {
  const SegmentIndex ia(std::span<const Polyline>(&a, 1), closed);
  const SegmentIndex ib(std::span<const Polyline>(&b, 1), closed);
  return std::max(directed_hausdorff(a, ib), directed_hausdorff(b, ia));
}

template <class F>
Polyline map_polyline(std::span<const Complex> line, F&& f) {
  Polyline out;
  out.reserve(line.size());
  for (auto z : line) out.push_back(f(z));
  return out;
}

}  // namespace nodom
