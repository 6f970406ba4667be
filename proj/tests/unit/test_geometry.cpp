#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "nodom/bound.hpp"
#include "nodom/errors.hpp"
#include "nodom/geometry.hpp"

using namespace nodom;
constexpr double kPi = std::numbers::pi;

namespace {

Configuration half_disks() {
  return {RaySystem::two_point(kPi), Disk{{0.0, 0.0}, 0.5}, ExteriorDisk{{0.0, 0.0}, 1.5},
          {Disk{{1.0, 0.0}, 0.5}, Disk{{-1.0, 0.0}, 0.5}}};
}

ElementaryDomain rotate(const ElementaryDomain& d, Complex r) {
  return std::visit([r](auto x) -> ElementaryDomain {
    using T = decltype(x);
    if constexpr (std::is_same_v<T, HalfPlane>) {
      return HalfPlane{x.point * r, x.normal * r};
    } else {
      x.center *= r;
      return x;
    }
  }, d);
}

}  // namespace

TEST(EvaluateJ, HalfRadiusDisks) {
  const double expected = std::sqrt(0.5 * (2.0 / 3.0)) * 0.25;
  EXPECT_NEAR(evaluate_J(0.5, half_disks()), expected, 1e-15);
  EXPECT_NEAR(evaluate_J(0.5, half_disks()), 0.14434, 5e-6);
  EXPECT_NEAR(evaluate_J(0.0, half_disks()), 0.25, 1e-15);
}

TEST(EvaluateJ, RotationInvariant) {
  const auto c = sample_configuration(5);
  const double base = evaluate_J(0.4, c);
  for (double phi : {0.3, 1.7, 4.0}) {
    const Complex r = std::polar(1.0, phi);
    std::vector<ElementaryDomain> ds;
    std::vector<Complex> pts;
    for (std::size_t k = 0; k < c.domains.size(); ++k) {
      ds.push_back(rotate(c.domains[k], r));
      pts.push_back(c.ray.points()[k] * r);
    }
    const double v = functional_value(0.4, rotate(c.at_zero, r),
                                      rotate(ElementaryDomain(c.at_infinity), r), ds, pts);
    EXPECT_NEAR(v, base, 1e-14 * base);
  }
}

TEST(EvaluateJ, GeneralN) {
  const Configuration c{RaySystem::from_angles({0.0, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0}),
                        Disk{{0.0, 0.0}, 0.4}, ExteriorDisk{{0.0, 0.0}, 2.0},
                        {Disk{std::polar(1.0, 0.0), 0.3}, Disk{std::polar(1.0, 2.0 * kPi / 3.0), 0.3},
                         Disk{std::polar(1.0, 4.0 * kPi / 3.0), 0.3}}};
  EXPECT_NEAR(evaluate_J(1.0, c), 0.4 * 0.5 * 0.3 * 0.3 * 0.3, 1e-15);
}

TEST(EvaluateJ, InvalidConfiguration) {
  auto c = half_disks();
  c.at_zero = Disk{{0.0, 0.0}, 0.6};
  EXPECT_THROW(evaluate_J(0.5, c), ConfigurationError);
  EXPECT_THROW(evaluate_J(-0.5, half_disks()), DomainError);
}

TEST(SampleConfiguration, ValidAndDeterministic) {
  for (std::uint64_t i = 0; i < 500; ++i) {
    const auto c = sample_configuration(42, {}, i);
    ASSERT_TRUE(is_valid(c, kDisjointGap));
    const double theta = c.ray.angles()[1];
    ASSERT_GE(theta, kPi / 2.0);
    ASSERT_LE(theta, 3.0 * kPi / 2.0);
  }
  const auto a = sample_configuration(42);
  const auto b = sample_configuration(42);
  EXPECT_EQ(a.ray.angles()[1], b.ray.angles()[1]);
  EXPECT_EQ(std::get<Disk>(a.at_zero).radius, std::get<Disk>(b.at_zero).radius);
  EXPECT_EQ(a.at_infinity.radius, b.at_infinity.radius);
  EXPECT_EQ(evaluate_J(0.5, a), evaluate_J(0.5, b));
}

TEST(SampleConfiguration, RejectionCap) {
  SampleParams p;
  p.inflate = false;
  p.min_radius = 5.0;
  p.max_radius = 6.0;
  p.max_attempts = 50;
  EXPECT_THROW(sample_configuration(1, p), SamplingError);
}

TEST(VerifyInequality, PublishedExponent) {
  const auto r = verify_inequality(0.65, 10000, 42);
  EXPECT_EQ(r.violations, 0);
  EXPECT_LE(r.max_ratio, 1.0);
  EXPECT_GT(r.max_ratio, 0.0);
}

TEST(VerifyInequality, ThreadCountDoesNotMatter) {
  const auto a = verify_inequality(0.3, 3000, 8, 1);
  const auto b = verify_inequality(0.3, 3000, 8, 3);
  EXPECT_EQ(a.max_value, b.max_value);
  EXPECT_EQ(a.argmax_sample, b.argmax_sample);
  EXPECT_EQ(a.violations, b.violations);
}

TEST(GeometryProperties, RandomisedInequalityBelowPublishedExponent) {
  for (double g : {0.05, 0.1, 0.3, 0.5, 0.65}) {
    const double e = bound::symmetric_value(g);
    for (std::uint64_t i = 0; i < 2000; ++i) {
      const auto c = sample_configuration(2024, {}, i);
      ASSERT_LE(evaluate_J(g, c), e) << "gamma " << g << " sample " << i;
    }
  }
}

TEST(SeparatingMap, MarkedPointsOnUnitCircle) {
  const auto ray = RaySystem::two_point(2.2);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_NEAR(std::abs(separating_map(ray.points()[k], k, ray)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(separating_map(ray.points()[(k + 1) % 2], k, ray)), 1.0, 1e-15);
  }
  // sector start goes to -i, sector end to +i
  EXPECT_NEAR(std::abs(separating_map(ray.points()[0], 0, ray) - Complex(0, -1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(separating_map(ray.points()[1], 0, ray) - Complex(0, 1)), 0.0, 1e-14);
}

TEST(SeparatingMap, RightAngleIsRotation) {
  const auto ray = RaySystem::two_point(kPi);
  for (Complex w : {Complex(0.3, 0.2), Complex(-1.5, 0.01), Complex(2.0, 0.0)}) {
    EXPECT_NEAR(std::abs(separating_map(w, 0, ray) - Complex(0, -1) * w), 0.0, 1e-15);
  }
}

TEST(SeparatingMap, DerivativeAtMarkedPoint) {
  const auto ray = RaySystem::two_point(2.0);
  for (std::size_t k = 0; k < 2; ++k) {
    const double alpha = ray.alphas()[k];
    const Complex a = ray.points()[k];
    const Complex w1 = separating_map(a, k, ray);
    // step into the sector
    const Complex w = a * std::polar(1.0, 1e-5);
    const double ratio = std::abs(separating_map(w, k, ray) - w1) / std::abs(w - a);
    EXPECT_NEAR(ratio, 1.0 / alpha, 1e-3 / alpha);
  }
}

TEST(SeparatingMap, ModulusIsPower) {
  const auto ray = RaySystem::two_point(1.9);
  PhiloxStream rng(4, 0);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = i % 2;
    const double t = rng.uniform(ray.sector_start(k), ray.sector_end(k));
    const Complex w = std::polar(rng.uniform(0.01, 5.0), t);
    EXPECT_NEAR(std::abs(separating_map(w, k, ray)), std::pow(std::abs(w), 1.0 / ray.alphas()[k]),
                1e-12 * std::pow(std::abs(w), 1.0 / ray.alphas()[k]));
  }
}

TEST(SeparatingMap, Errors) {
  const auto ray = RaySystem::two_point(kPi / 2);
  EXPECT_THROW(separating_map({0.0, 0.0}, 0, ray), DomainError);
  EXPECT_THROW(separating_map({-1.0, 0.1}, 0, ray), DomainError);
  EXPECT_THROW(separating_map({1.0, 0.0}, 2, ray), DomainError);
  EXPECT_NO_THROW(separating_map({-1.0, 0.1}, 1, ray));
}

TEST(TransformBoundary, RightAngleGivesRotatedDisk) {
  const auto ray = RaySystem::two_point(kPi);
  const auto tb = transform_boundary(make_disk({1.0, 0.0}, 0.4), Owner::sector_start, 0, ray, 512);
  ASSERT_EQ(tb.loops.size(), 1u);
  for (auto z : tb.loops[0]) EXPECT_NEAR(std::abs(z - Complex(0, -1)), 0.4, 1e-12);
  EXPECT_NEAR(signed_area(tb.loops[0]), kPi * 0.16, 1e-4);
  EXPECT_NEAR(std::abs(tb.marked - Complex(0, -1)), 0.0, 1e-15);
}

TEST(TransformBoundary, ClosedAndMirrorSymmetric) {
  const auto c = sample_configuration(17);
  const auto s = separate(c, 0, 1024);
  for (const auto* tb : {&s.zero, &s.first, &s.second, &s.infinity}) {
    for (const auto& loop : tb->loops) {
      EXPECT_LE(closure_gap(loop), 1e-9);
      const auto mirrored = map_polyline(loop, [](Complex z) { return -std::conj(z); });
      EXPECT_LE(hausdorff(mirrored, loop), 1e-9);
    }
  }
}

TEST(TransformBoundary, EnclosesOwnerImage) {
  const auto ray = RaySystem::two_point(2.0);
  ASSERT_NE(ray.alphas()[0], 1.0);
  const auto tb = transform_boundary(make_disk({1.05, 0.1}, 0.3), Owner::sector_start, 0, ray, 1024);
  EXPECT_EQ(std::abs(winding_number(tb.loops[0], tb.marked)), 1);
  const auto tb2 = transform_boundary(make_disk(ray.points()[1] * 1.02, 0.25), Owner::sector_end, 0, ray, 1024);
  EXPECT_EQ(std::abs(winding_number(tb2.loops[0], tb2.marked)), 1);
}

TEST(TransformBoundary, SeparatedSystemModuli) {
  const auto c = sample_configuration(3);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto s = separate(c, k);
    EXPECT_NEAR(std::abs(s.omega1), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(s.omega2), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(s.omega1 - s.omega2), 2.0, 1e-14);
  }
}

TEST(TransformBoundary, Errors) {
  const auto ray = RaySystem::two_point(kPi);
  EXPECT_THROW(transform_boundary(make_half_plane({0.5, 0}, {1, 0}), Owner::sector_start, 0, ray),
               GeometryError);
  // disk away from the owner point
  EXPECT_THROW(transform_boundary(make_disk({3.0, 0.0}, 0.5), Owner::sector_start, 0, ray), GeometryError);
  // origin owner needs a disk around 0
  EXPECT_THROW(transform_boundary(make_disk({1.0, 0.0}, 0.5), Owner::origin, 0, ray), GeometryError);
  EXPECT_THROW(transform_boundary(make_disk({0.0, 0.0}, 0.5), Owner::infinity, 0, ray), GeometryError);
}

TEST(SeparationBounds, SymmetricConfiguration) {
  const auto rep = check_separation_bounds(symmetric_configuration());
  ASSERT_EQ(rep.checks.size(), 4u);
  EXPECT_FALSE(rep.violated);
  for (const auto& c : rep.checks) {
    EXPECT_GE(c.log_margin, -c.tolerance) << c.name;
    EXPECT_NE(c.status, CheckStatus::violated) << c.name;
  }
}

TEST(SeparationBounds, CentredZeroDiskIsAnEqualityCase) {
  const auto rep = check_separation_bounds(symmetric_configuration());
  const auto& zero = rep.checks[2];
  ASSERT_EQ(zero.name, "zero");
  EXPECT_LE(std::abs(zero.log_margin), zero.tolerance);
}

TEST(SeparationBounds, RandomConfigurations) {
  SeparationParams p;
  p.wos.walks = 10000;
  for (std::uint64_t i = 0; i < 3; ++i) {
    p.wos.seed = i;
    const auto rep = check_separation_bounds(sample_configuration(77, {}, i), p);
    for (const auto& c : rep.checks) EXPECT_NE(c.status, CheckStatus::violated) << i << " " << c.name;
  }
}
