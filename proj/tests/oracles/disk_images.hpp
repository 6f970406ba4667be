#pragma once

#include <cmath>
#include <complex>

// Circle through three points, used to recover the image of a circle under a
// Moebius map without the closed-form image formula.
namespace oracle {

struct Circle {
  std::complex<double> center;
  double radius;
};

inline Circle circle_through(std::complex<double> a, std::complex<double> b, std::complex<double> c) {
  const double d = 2.0 * (a.real() * (b.imag() - c.imag()) + b.real() * (c.imag() - a.imag()) +
                          c.real() * (a.imag() - b.imag()));
  const double a2 = std::norm(a), b2 = std::norm(b), c2 = std::norm(c);
  const std::complex<double> o((a2 * (b.imag() - c.imag()) + b2 * (c.imag() - a.imag()) + c2 * (a.imag() - b.imag())) / d,
                               (a2 * (c.real() - b.real()) + b2 * (a.real() - c.real()) + c2 * (b.real() - a.real())) / d);
  return {o, std::abs(a - o)};
}

/// Image of the circle |w - c| = rho under w -> 1/w (rho != |c|).
inline Circle inverted_circle(std::complex<double> c, double rho) {
  const auto p = [&](double t) { return 1.0 / (c + std::polar(rho, t)); };
  return circle_through(p(0.3), p(2.1), p(4.4));
}

}  // namespace oracle
