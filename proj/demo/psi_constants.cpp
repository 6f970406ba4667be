// Prints the critical data of Psi and the symmetric value E(gamma) for a few
// exponents.
#include <cstdio>

#include "nodom/bound.hpp"
#include "nodom/critpoints.hpp"

int main() {
  const auto mx = nodom::locate_psi_max(1e-12);
  const auto cz = nodom::locate_curvature_zero(1e-10);
  std::printf("x1 = %.10f  Psi(x1) = %.10f  (%d iterations)\n", mx.x, mx.psi, mx.bracket.iterations);
  std::printf("x0 = %.10f  Psi(x0) = %.10f  (%d iterations)\n", cz.x, cz.psi, cz.bracket.iterations);
  for (double g : {0.1, 0.25, 0.5, 0.65}) {
    std::printf("E(%.2f) = %.10f\n", g, nodom::bound::symmetric_value(g));
  }
}
