#include "fixtures.hpp"

using namespace ahardy;
using namespace ahardy::testing;

namespace {

struct CyclicFactor : ::testing::Test {
  static const Factorization& fact() {
    static const Factorization f = [] {
      const OrbitData od = orbit_data(enumerate(cyclic_group(), 10), I);
      return factor_martin_derivative(od, make_grid(2048, od.image));
    }();
    return f;
  }
};

TEST(Grid, OffsetAvoidsPoints) {
  const BoundaryGrid g = make_grid(64);
  EXPECT_NEAR(g.offset, 0.5 * g.spacing(), 1e-15);
  const BoundaryGrid h = make_grid(64, {g.points[3]});
  EXPECT_NE(h.offset, g.offset);
  for (cplx t : h.points) EXPECT_GT(std::abs(t - g.points[3]), 1e-6);
  EXPECT_THROW(make_grid(100), Error);
}

TEST(Grid, CoefficientRoundTripAndParseval) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  const BoundaryGrid g = make_grid(256);
  std::vector<cplx> c(100);
  for (auto& x : c) x = {n(rng), n(rng)};
  const auto v = grid_values(c, g);
  const HardyFunction h{c};
  EXPECT_NEAR(grid_l2_norm(v), h2_norm(h), 1e-8);
  expect_near(v[17], h(g.points[17]), 1e-10);
  const auto back = grid_coefficients(v, g);
  for (std::size_t k = 0; k < c.size(); ++k) expect_near(back[k], c[k], 1e-12);
  for (std::size_t k = c.size(); k < g.N; ++k) EXPECT_LT(std::abs(back[k]), 1e-12);
}

TEST(Hardy, H2Norm) {
  EXPECT_EQ(h2_norm({{1.0}}), 1.0);
  EXPECT_NEAR(h2_norm({{0.0, 1.0, 1.0}}), std::sqrt(2.0), 1e-15);
}

TEST(Outer, ConstantModulus) {
  const BoundaryGrid g = make_grid(64);
  const OuterFunction o = outer_from_log_modulus(std::vector<double>(64, std::log(3.0)), g);
  expect_near(o(cplx(0.2, 0.5)), 3.0, 1e-13);
}

TEST(Outer, SquaredDistanceModulus) {
  const cplx t0 = unit(0.7);
  const BoundaryGrid g = make_grid(4096, {t0});
  std::vector<double> lm(g.N), zero(g.N, 0.0);
  for (std::size_t j = 0; j < g.N; ++j) lm[j] = std::log(std::norm(g.points[j] - t0));
  const OuterFunction exact = outer_from_log_modulus(zero, g, {{t0, 2.0}});
  const OuterFunction sampled = outer_from_log_modulus(lm, g);
  for (cplx z : {cplx(0.0), cplx(0.3, -0.1), cplx(-0.4, 0.5)}) {
    const cplx want = std::conj(t0) * std::conj(t0) * (z - t0) * (z - t0);
    expect_near(exact(z), want, 1e-13);
    EXPECT_LE(std::abs(sampled(z) - want), 1e-2 * std::abs(want));
  }
  expect_near(exact(0.0), 1.0, 1e-15);
}

TEST(Outer, ProductOfModuli) {
  const BoundaryGrid g = make_grid(512);
  std::vector<double> a(g.N), b(g.N), ab(g.N);
  for (std::size_t j = 0; j < g.N; ++j) {
    const cplx t = g.points[j];
    a[j] = std::log(2.0 + (t * t).real());
    b[j] = 0.5 * t.imag();
    ab[j] = a[j] + b[j];
  }
  const cplx z(0.3, 0.4);
  expect_near(outer_from_log_modulus(ab, g)(z), outer_from_log_modulus(a, g)(z) * outer_from_log_modulus(b, g)(z), 1e-12);
  EXPECT_THROW(outer_from_log_modulus(std::vector<double>(10), g), Error);
  std::vector<double> bad(g.N, 0.0);
  bad[3] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(outer_from_log_modulus(bad, g), Error);
}

TEST(Factorization, TrivialGroup) {
  const cplx t0 = unit(0.7);
  const OrbitData od = orbit_data(enumerate(trivial_group(), 2), t0);
  const BoundaryGrid g = make_grid(1024, od.image);
  const Factorization f = factor_martin_derivative(od, g);
  EXPECT_TRUE(f.zeros.empty());
  EXPECT_NEAR(f.kappa, 1.0, 1e-12);
  for (cplx z : {cplx(0.0), cplx(0.5, 0.2), cplx(-0.3, -0.6)}) {
    expect_near(f.delta(z), I * std::conj(t0), 1e-12);
    expect_near(f.phi(z), std::conj(t0) * std::conj(t0) * (z - t0) * (z - t0), 1e-12);
    expect_near(f.delta(z), f.mprime(z) * f.phi(z), 1e-12);
  }
  EXPECT_LE(f.residual_inner, 1e-6);
  EXPECT_EQ(f.residual_bound4, 0.0);
  EXPECT_LE(f.residual_outer, 1e-6);
  EXPECT_TRUE(check_factorization(f, Tolerances{}).pass());
}

TEST_F(CyclicFactor, InnerFactorOnAndInsideCircle) {
  const Factorization& f = fact();
  EXPECT_EQ(f.zeros.size(), 20u);
  for (cplx a : f.zeros) EXPECT_LT(std::abs(a), 1.0);
  for (cplx z : interior_samples(200, 0.99)) EXPECT_LE(std::abs(f.delta(z)), 1.0);
  for (cplx t : make_grid(4096, f.od.image).points) EXPECT_NEAR(std::abs(f.delta(t)), 1.0, 1e-3);
  EXPECT_TRUE(check_factorization(f, Tolerances{}).pass());
}

TEST_F(CyclicFactor, OuterRoutesAgree) {
  // phi from the critical points against the discrete Herglotz integral of -log(boundary_sum).
  EXPECT_LE(fact().residual_outer, 1e-3);
  EXPECT_LE(fact().residual_sandwich, 1e-3);
}

TEST_F(CyclicFactor, BoundaryDerivativeMatchesFrostmanSum) {
  const Factorization& f = fact();
  const BoundaryDerivative bd = boundary_derivative([&](cplx z) { return f.delta(z); }, I);
  EXPECT_NEAR(bd.ratio, f.frostman_sum(I), 1e-4);
  EXPECT_NEAR(bd.ratio_imag, 0.0, 1e-4);
  EXPECT_NEAR(f.frostman_sum(I), 4.26981146047642, 1e-9);
  EXPECT_NEAR(std::abs(bd.value), 1.0, 1e-6);
}

TEST(Factorization, DeltaCharacter) {
  const OrbitData od = orbit_data(enumerate(trivial_group(), 2), 1.0);
  const Factorization f = factor_martin_derivative(od, make_grid(256, od.image));
  EXPECT_TRUE(delta_character(f, trivial_group(), interior_samples(16, 0.5), 1e-6).character.values.empty());
  const CharacterEstimate c = delta_character(f, cyclic_group(), interior_samples(16, 0.5), 1e-6);
  expect_near(c.character.values[0], 1.0, 1e-12);
}

TEST(Factorization, CyclicDeltaCharacterSettles) {
  auto dispersion = [](int L) {
    const OrbitData od = orbit_data(enumerate(cyclic_group(), L), I);
    const Factorization f = factor_martin_derivative(od, make_grid(1024, od.image));
    return delta_character(f, cyclic_group(), interior_samples(32, 0.5), 1.0, false);
  };
  const CharacterEstimate c6 = dispersion(6), c10 = dispersion(10);
  EXPECT_LT(c10.dispersion[0], c6.dispersion[0]);
  EXPECT_LT(c10.dispersion[0], 1e-3);
  EXPECT_NEAR(std::abs(c10.character.values[0]), 1.0, 1e-12);
}

TEST(Factorization, PhiLimitTrivial) {
  const cplx t0 = unit(0.7);
  const OrbitData od = orbit_data(enumerate(trivial_group(), 2), t0);
  const Factorization f = factor_martin_derivative(od, make_grid(256, od.image));
  const PhiLimitReport r = phi_limit_check(f, t0, dyadic_radii(3, 14));
  for (cplx q : r.ratios) expect_near(q, 1.0, 1e-11);
  EXPECT_TRUE(r.converged);
}

TEST_F(CyclicFactor, PhiLimitCyclic) {
  const PhiLimitReport r = phi_limit_check(fact(), I, dyadic_radii(3, 14));
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.value, 1e-2);
}

TEST(BoundaryIntegrals, SyntheticInner) {
  const cplx t0 = unit(0.7);
  const BoundaryGrid g = make_grid(1024, {t0});
  const BoundaryIntegrals b = boundary_integrals([&](cplx z) { return std::conj(t0) * z; }, 1.0, t0, g);
  EXPECT_NEAR(b.first, 1.0, 1e-13);
  EXPECT_NEAR(b.second, 0.0, 1e-15);
}

TEST(BoundaryIntegrals, DividedDifferenceMonomial) {
  // (t^3 - 1)/(t - 1) = 1 + t + t^2
  const BoundaryGrid g = make_grid(64, {1.0});
  const auto c = divided_difference_coeffs(sample([](cplx z) { return z * z * z; }, g), 1.0, 1.0, g, 8);
  for (std::size_t k = 0; k < 8; ++k) expect_near(c[k], k < 3 ? 1.0 : 0.0, 1e-13);
}

TEST(Characters, MeasureOnAutomorphicFunction) {
  // z -> ((1 + z)/(1 - z))^{i c} picks up the factor 3^{i c} under the half shift.
  const double c = 0.8;
  const Evaluable f = [c](cplx z) { return std::pow((1.0 + z) / (1.0 - z), cplx(0.0, c)); };
  const CharacterEstimate e = measure_character(f, cyclic_group(), interior_samples(16, 0.5), 1e-9);
  expect_near(e.character.values[0], unit(c * std::log(3.0)), 1e-12);
  EXPECT_THROW(measure_character([](cplx z) { return z; }, cyclic_group(), interior_samples(16, 0.5), 1e-3), Error);
}

}  // namespace
