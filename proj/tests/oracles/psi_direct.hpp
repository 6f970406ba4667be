#pragma once

#include <cmath>

// Direct (non-logarithmic) evaluation of the defining products.
namespace oracle {

inline double psi_direct(double x) {
  const double a = std::abs(1.0 - x);
  const double near = a == 0.0 ? 1.0 : std::pow(a, -(1.0 - x) * (1.0 - x));
  return std::pow(x, 2.0 * x * x + 2.0) * near * std::pow(1.0 + x, -(1.0 + x) * (1.0 + x));
}

inline double phi_direct(double x) {
  const double a = std::abs(1.0 - x);
  const double near = a == 0.0 ? 1.0 : std::pow(a, -(1.0 - x) * (1.0 - x));
  return std::pow(x, 2.0 * x * x) * near * std::pow(1.0 + x, -(1.0 + x) * (1.0 + x));
}

// Central differences of a scalar function.
template <class F>
double central_difference(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle
