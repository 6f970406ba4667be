#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "nodom/configuration.hpp"
#include "nodom/errors.hpp"
#include "nodom/philox.hpp"
#include "nodom/wos.hpp"

using namespace nodom;

namespace {

Polyline circle(Complex c, double r, int n) {
  Polyline p;
  for (int i = 0; i < n; ++i) p.push_back(c + std::polar(r, kTwoPi * i / n));
  return p;
}

// Kolmogorov-Smirnov statistic of samples in [0, 1) against the uniform law.
double ks_uniform(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max({d, (i + 1) / n - u[i], u[i] - i / n});
  }
  return d;
}

}  // namespace

TEST(WosExit, UniformHarmonicMeasureFromDiskCentre) {
  const ElementaryOracle o(make_disk({0.0, 0.0}, 1.0));
  std::vector<double> u;
  for (int i = 0; i < 100000; ++i) {
    PhiloxStream rng(11, static_cast<std::uint64_t>(i));
    const auto e = wos_exit(o, {0.0, 0.0}, 1e-4, rng);
    double t = std::arg(e.point) / kTwoPi;
    if (t < 0.0) t += 1.0;
    u.push_back(t);
  }
  // 1% critical value of the one-sample KS statistic
  EXPECT_LT(ks_uniform(u), 1.628 / std::sqrt(100000.0));
}

TEST(WosExit, ExitLiesOnBoundary) {
  const ElementaryOracle o(make_disk({0.3, -0.2}, 1.7));
  for (int i = 0; i < 2000; ++i) {
    PhiloxStream rng(3, static_cast<std::uint64_t>(i));
    const auto e = wos_exit(o, {0.5, 0.1}, 1e-3, rng);
    ASSERT_NEAR(std::abs(e.point - Complex(0.3, -0.2)), 1.7, 1e-12);
  }
}

TEST(WosExit, StepCountGrowsLogarithmically) {
  // started off centre; from the centre every walk exits in one jump
  const ElementaryOracle o(make_disk({0.0, 0.0}, 1.0));
  std::vector<double> mean;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const auto m = estimate_inner_radius(o, {0.3, 0.2}, {20000, eps, 5, 1});
    mean.push_back(m.mean_steps);
  }
  const double d1 = mean[1] - mean[0];
  const double d2 = mean[2] - mean[1];
  EXPECT_GT(d1, 0.0);
  EXPECT_GT(d2, 0.0);
  // equal increments per decade
  EXPECT_NEAR(d2 / d1, 1.0, 0.35);
}

TEST(WosExit, StepCapRaisesNonConvergence) {
  const ElementaryOracle o(make_disk({0.0, 0.0}, 1.0));
  PhiloxStream rng(1, 0);
  // off centre the first jump cannot land on the circle
  EXPECT_THROW(wos_exit(o, {0.3, 0.2}, 1e-300, rng, 5), NonConvergenceError);
}

TEST(EstimateInnerRadius, UnitDiskAtCentre) {
  const auto m = estimate_inner_radius(ElementaryOracle(make_disk({0, 0}, 1.0)), {0, 0}, {200000, 1e-4, 1, 1});
  EXPECT_NEAR(m.value, 1.0, 0.01);
  EXPECT_EQ(m.walks, 200000);
  EXPECT_EQ(m.seed, 1u);
  EXPECT_FALSE(m.truncated);
}

TEST(EstimateInnerRadius, DiskOffCentre) {
  const auto m = estimate_inner_radius(ElementaryOracle(make_disk({0, 0}, 2.0)), {1, 0}, {200000, 1e-4, 2, 1});
  EXPECT_NEAR(m.value, 1.5, 0.015);
  EXPECT_NEAR(m.std_error, m.value * m.log_std_error, 1e-15);
}

TEST(EstimateInnerRadius, TruncatedHalfPlane) {
  const ElementaryOracle o(make_half_plane({0, 0}, {1, 0}), 1e3);
  const auto m = estimate_inner_radius(o, {1, 0}, {100000, 1e-4, 3, 1});
  EXPECT_TRUE(m.truncated);
  EXPECT_NEAR(m.value, 2.0, 0.04);
}

TEST(EstimateInnerRadius, PolygonDisk) {
  const PolylineOracle o({circle({0, 0}, 2.0, 4000)});
  const auto m = estimate_inner_radius(o, {1, 0}, {50000, 1e-4, 4, 1});
  EXPECT_NEAR(m.value, 1.5, 3.0 * m.std_error + 1e-3);
}

TEST(EstimateInnerRadius, RejectsBadInput) {
  const ElementaryOracle o(make_disk({0, 0}, 1.0));
  EXPECT_THROW(estimate_inner_radius(o, {0, 0}, {999, 1e-4, 0, 1}), DomainError);
  EXPECT_THROW(estimate_inner_radius(o, {2, 0}, {1000, 1e-4, 0, 1}), DomainError);
  EXPECT_THROW(estimate_inner_radius(o, {0, 0}, {1000, 0.0, 0, 1}), DomainError);
}

TEST(EstimateAtInfinity, ExteriorDisks) {
  const WosParams p{200000, 1e-4, 9, 1};
  EXPECT_NEAR(estimate_inner_radius_at_infinity(make_exterior_disk({0, 0}, 2.0), p).value, 0.5, 0.005);
  EXPECT_NEAR(estimate_inner_radius_at_infinity(make_exterior_disk({0, 0}, 1.0), p).value, 1.0, 0.01);
  EXPECT_NEAR(estimate_inner_radius_at_infinity(make_exterior_disk({0.3, 0}, 2.0), p).value, 0.5, 0.0075);
}

TEST(EstimateAtInfinity, PolygonExterior) {
  const PolylineOracle ext({circle({0.2, 0.1}, 2.0, 2000)}, true);
  const auto m = estimate_inner_radius_at_infinity(ext, {50000, 1e-5, 10, 1});
  EXPECT_NEAR(m.value, 0.5, 3.0 * m.std_error + 1e-3);
}

TEST(EstimateAtInfinity, ZeroInsideIsAnError) {
  EXPECT_THROW(estimate_inner_radius_at_infinity(make_exterior_disk({3, 0}, 1.0), {1000, 1e-4, 0, 1}),
               DomainError);
  EXPECT_THROW(estimate_inner_radius_at_infinity(make_disk({0, 0}, 1.0), {1000, 1e-4, 0, 1}),
               DomainError);
  const PolylineOracle bounded({circle({0, 0}, 1.0, 64)});
  EXPECT_THROW(estimate_inner_radius_at_infinity(bounded, {1000, 1e-4, 0, 1}), DomainError);
}

TEST(WosProperties, BitwiseIndependentOfThreadCount) {
  const PolylineOracle o({circle({0.1, 0}, 1.3, 700)});
  const auto a = estimate_inner_radius(o, {0.3, 0.2}, {5000, 1e-4, 77, 1});
  for (unsigned t : {2u, 3u, 8u}) {
    const auto b = estimate_inner_radius(o, {0.3, 0.2}, {5000, 1e-4, 77, t});
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.std_error, b.std_error);
    EXPECT_EQ(a.mean_steps, b.mean_steps);
  }
}

TEST(WosProperties, ConsistentWithAnalyticRadii) {
  struct Case {
    ElementaryDomain d;
    Complex a;
    bool at_infinity;
  };
  const Case cases[] = {{make_disk({0.0, 0.0}, 2.0), {1.0, 0.0}, false},
                        {make_disk({0.5, -0.5}, 1.0), {0.7, -0.1}, false},
                        {make_half_plane({0.0, 0.0}, {0.0, 1.0}), {0.3, 0.5}, false},
                        {make_exterior_disk({0.3, 0.0}, 2.0), {}, true}};
  for (const auto& c : cases) {
    const double exact = c.at_infinity ? inner_radius_at_infinity(c.d) : inner_radius_analytic(c.d, c.a);
    int inside = 0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
      const WosParams p{2000, 1e-4, derive_seed(123, rep), 1};
      const auto m = c.at_infinity ? estimate_inner_radius_at_infinity(c.d, p)
                                   : estimate_inner_radius(ElementaryOracle(c.d), c.a, p);
      inside += std::abs(m.value - exact) <= 3.0 * m.std_error;
    }
    EXPECT_GE(inside, 99) << kind_name(c.d);
  }
}

TEST(WosProperties, HalvingEpsilonMovesLessThanOneStandardError) {
  const ElementaryOracle o(make_disk({0, 0}, 2.0));
  const auto a = estimate_inner_radius(o, {1, 0}, {100000, 1e-4, 21, 1});
  const auto b = estimate_inner_radius(o, {1, 0}, {100000, 5e-5, 21, 1});
  EXPECT_LT(std::abs(a.value - b.value), a.std_error);
}

TEST(InvertExterior, ImageEnclosesZero) {
  const PolylineOracle ext({circle({0, 0}, 2.0, 256)}, true);
  const auto img = invert_exterior(ext);
  EXPECT_TRUE(img.contains({0.0, 0.0}));
  EXPECT_NEAR(img.query({0.0, 0.0}).distance, 0.5, 1e-6);
  EXPECT_THROW(invert_exterior(PolylineOracle({circle({0, 0}, 2.0, 16)})), DomainError);
}
