// Walk-on-spheres estimate of the inner radius of disk(0, 2) at 1 next to the
// closed form (rho^2 - |a - c|^2) / rho = 1.5.
#include <cstdio>

#include "nodom/configuration.hpp"
#include "nodom/wos.hpp"

int main() {
  const auto disk = nodom::make_disk({0.0, 0.0}, 2.0);
  const nodom::Complex a{1.0, 0.0};
  const nodom::WosParams p{100'000, 1e-4, 2024, 1};
  const auto est = nodom::estimate_inner_radius(nodom::ElementaryOracle(disk), a, p);
  std::printf("estimate %.5f +- %.5f  exact %.5f  mean steps %.1f\n", est.value, est.std_error,
              nodom::inner_radius_analytic(disk, a), est.mean_steps);
}
