#pragma once

#include <array>
#include <cstdio>
#include <string>

#include "nodom/polyline.hpp"
#include "nodom/quaddiff.hpp"

namespace nodom::qd {

struct SvgOptions {
  int width = 600;
  int height = 600;
  double extent = 3.0;  // viewport [-extent, extent]^2
  int precision = 5;
};

namespace detail {

inline std::string fmt(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v == 0.0 ? 0.0 : v);
  return buf;
}

inline std::string path_data(const Polyline& line, int precision) {
  std::string d;
  for (std::size_t i = 0; i < line.size(); ++i) {
    d += i == 0 ? "M" : " L";
    d += fmt(line[i].real(), precision) + "," + fmt(-line[i].imag(), precision);
  }
  return d;
}

}  // namespace detail

/// Standalone SVG 1.1 picture of a field: critical trajectories, the four
/// circular boundaries (the one around infinity mapped back to the w plane),
/// poles as filled circles and zeros as crosses. Output depends only on the
/// field and the options.
inline std::string render_svg(const TrajectoryField& f, const SvgOptions& o = {}) {
  const int p = o.precision;
  const std::string e = detail::fmt(o.extent, p);
  const std::string span = detail::fmt(2.0 * o.extent, p);
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
       std::to_string(o.width) + "\" height=\"" + std::to_string(o.height) + "\" viewBox=\"-" +
       e + " -" + e + " " + span + " " + span + "\">\n";
  const bool empty = f.trajectories.empty();
  if (empty) {
    s += "<!-- warning: empty trajectory field -->\n";
    s += "</svg>\n";
    return s;
  }
  s += "<title>Q(w)dw^2, gamma = " + detail::fmt(f.gamma, p) + "</title>\n";
  s += "<g fill=\"none\" stroke-width=\"0.012\">\n";
  for (const auto& t : f.trajectories) {
    s += "<path class=\"trajectory\" stroke=\"#222222\" d=\"" + detail::path_data(t, p) + "\"/>\n";
  }
  static constexpr std::array<const char*, 4> colours{"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  for (int j = 0; j < 4; ++j) {
    Polyline line = f.circular_boundaries[j];
    if (line.empty()) continue;
    if (j == 3) line = map_polyline(line, [](Complex z) { return 1.0 / z; });
    s += "<path class=\"boundary\" data-pole=\"" + std::string(pole_name(static_cast<Pole>(j))) +
         "\" stroke=\"" + colours[j] + "\" stroke-dasharray=\"0.05 0.03\" d=\"" +
         detail::path_data(line, p) + "\"/>\n";
  }
  s += "</g>\n";
  for (auto pole : kFinitePoles) {
    s += "<circle class=\"pole\" cx=\"" + detail::fmt(pole.real(), p) + "\" cy=\"" +
         detail::fmt(-pole.imag(), p) + "\" r=\"0.05\" fill=\"#000000\"/>\n";
  }
  const double a = 0.06;
  for (std::size_t i = 0; i < f.zeros.size(); ++i) {
    bool repeat = false;
    for (std::size_t j = 0; j < i; ++j) repeat |= std::abs(f.zeros[j].z - f.zeros[i].z) < 1e-8;
    if (repeat) continue;
    const double x = f.zeros[i].z.real();
    const double y = -f.zeros[i].z.imag();
    s += "<g class=\"zero\" stroke=\"#ff7f0e\" stroke-width=\"0.02\">";
    s += "<line x1=\"" + detail::fmt(x - a, p) + "\" y1=\"" + detail::fmt(y - a, p) + "\" x2=\"" +
         detail::fmt(x + a, p) + "\" y2=\"" + detail::fmt(y + a, p) + "\"/>";
    s += "<line x1=\"" + detail::fmt(x - a, p) + "\" y1=\"" + detail::fmt(y + a, p) + "\" x2=\"" +
         detail::fmt(x + a, p) + "\" y2=\"" + detail::fmt(y - a, p) + "\"/>";
    s += "</g>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace nodom::qd
