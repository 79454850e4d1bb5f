#include "fixtures.hpp"

using namespace ahardy;
using namespace ahardy::testing;

namespace {

const MoebiusMap half = MoebiusMap::real_shift(0.5);

TEST(Moebius, ComposeWithIdentity) {
  std::mt19937_64 rng(1);
  const MoebiusMap m = random_map(rng);
  EXPECT_TRUE(same_map(compose(MoebiusMap::identity(), m), m, 1e-14));
  EXPECT_TRUE(same_map(compose(m, inverse(m)), MoebiusMap::identity(), 1e-12));
}

TEST(Moebius, HalfShiftSquaredAtOrigin) {
  EXPECT_NEAR(half.a().real(), 1.1547005383792517, 1e-15);
  EXPECT_NEAR(half.b().real(), 0.57735026918962584, 1e-15);
  expect_near(ahardy::apply(compose(half, half), 0.0), 0.8, 1e-15);
  expect_near(ahardy::apply(half, 0.5), 0.8, 1e-15);
}

TEST(Moebius, Inverse) {
  EXPECT_TRUE(same_map(inverse(MoebiusMap::identity()), MoebiusMap::identity(), 0.0));
  const MoebiusMap m(cplx(1.2, 0.5), std::polar(std::sqrt(1.44 + 0.25 - 1.0), 0.4));
  expect_near(inverse(m).a(), std::conj(m.a()), 0.0);
  expect_near(inverse(m).b(), -m.b(), 0.0);
  expect_near(ahardy::apply(inverse(half), 0.5), 0.0, 1e-15);
}

TEST(Moebius, Apply) {
  expect_near(ahardy::apply(MoebiusMap::identity(), cplx(0.3, 0.4)), cplx(0.3, 0.4), 0.0);
  expect_near(ahardy::apply(half, 0.0), 0.5, 1e-15);
  expect_near(ahardy::apply(half, 1.0), 1.0, 1e-15);
  expect_near(ahardy::apply(half, -1.0), -1.0, 1e-15);
}

TEST(Moebius, Derivative) {
  expect_near(derivative(MoebiusMap::identity(), cplx(0.2, -0.7)), 1.0, 0.0);
  expect_near(derivative(half, 0.0), 0.75, 1e-15);
}

TEST(Moebius, ChainRuleAndAxiomsOnRandomMaps) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const MoebiusMap m1 = random_map(rng), m2 = random_map(rng), m3 = random_map(rng);
    const cplx z = random_disk_point(rng);
    EXPECT_LE(map_distance((m1 * m2) * m3, m1 * (m2 * m3)), 1e-9);
    const cplx lhs = derivative(m1 * m2, z), rhs = derivative(m1, ahardy::apply(m2, z)) * derivative(m2, z);
    EXPECT_LE(std::abs(lhs - rhs), 1e-9 * std::abs(rhs));
    EXPECT_NEAR((m1 * m2).det(), 1.0, 1e-12);
  }
}

// (1-|m z|^2)/|t - m z|^2 = (1-|z|^2)/|m^-1 t - z|^2 |(m^-1)'(t)| for unimodular t.
TEST(Moebius, PoissonKernelTransport) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 2.0 * pi);
  for (int i = 0; i < 200; ++i) {
    const MoebiusMap m = random_map(rng);
    const cplx z = random_disk_point(rng), t = unit(U(rng));
    const cplx mz = m(z);
    const double lhs = (1.0 - std::norm(mz)) / std::norm(t - mz);
    const double rhs = (1.0 - std::norm(z)) / std::norm(m.inverse()(t) - z) * std::abs(m.inverse().derivative(t));
    EXPECT_LE(std::abs(lhs - rhs), 1e-9 * rhs);
  }
}

TEST(Moebius, UnimodularDerivativeOnCircleIsReal) {
  // t g'(t)/g(t) = |g'(t)| on the circle.
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const MoebiusMap m = random_map(rng);
    const cplx t = unit(0.1 * i);
    const cplx q = t * m.derivative(t) / m(t);
    EXPECT_NEAR(q.real(), std::abs(m.derivative(t)), 1e-10);
    EXPECT_NEAR(q.imag(), 0.0, 1e-10);
  }
}

TEST(Moebius, Classify) {
  EXPECT_EQ(classify(MoebiusMap::identity()).kind, MapKind::identity);
  const MapClass c = classify(half);
  EXPECT_EQ(c.kind, MapKind::hyperbolic);
  EXPECT_NEAR(c.trace_abs, 2.0 / std::sqrt(0.75), 1e-14);
  EXPECT_EQ(classify(MoebiusMap::rotation(1.0)).kind, MapKind::elliptic);
  EXPECT_EQ(classify(MoebiusMap(cplx(1.0, 0.5), cplx(0.0, 0.5))).kind, MapKind::parabolic);
}

TEST(Moebius, BoundaryFixedPoints) {
  const auto fp = boundary_fixed_points(half);
  ASSERT_EQ(fp.size(), 2u);
  for (cplx z : fp) {
    EXPECT_NEAR(std::abs(z), 1.0, 1e-12);
    expect_near(half(z), z, 1e-12);
  }
  EXPECT_TRUE(boundary_fixed_points(MoebiusMap::rotation(1.0)).empty());
  const auto pp = boundary_fixed_points(MoebiusMap(cplx(1.0, 0.5), cplx(0.0, 0.5)));
  ASSERT_EQ(pp.size(), 1u);
  expect_near(MoebiusMap(cplx(1.0, 0.5), cplx(0.0, 0.5))(pp[0]), pp[0], 1e-12);
}

TEST(Moebius, Errors) {
  try {
    MoebiusMap(cplx(1.0), cplx(1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidMap);
  }
  try {
    half.apply(-2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PoleAtInput);
  }
  EXPECT_THROW(MoebiusMap::normalized(cplx(0.5), cplx(1.0)), Error);
}

}  // namespace
