#include "fixtures.hpp"

using namespace ahardy;
using namespace ahardy::testing;

namespace {

struct CyclicTheta : ::testing::Test {
  static const Truncation& trunc() {
    static const Truncation t = enumerate(cyclic_group(), 10);
    return t;
  }
  static const OrbitData& od() {
    static const OrbitData o = orbit_data(trunc(), I);
    return o;
  }
  static const Factorization& fact() {
    static const Factorization f = factor_martin_derivative(od(), make_grid(2048, od().image));
    return f;
  }
  static Evaluable delta() {
    return [](cplx z) { return fact().delta(z); };
  }
};

TEST(Theta, TrivialGroupReturnsInput) {
  const Truncation t = enumerate(trivial_group(), 4);
  const ThetaContext c = make_theta_context(t, orbit_data(t, unit(2.1)), Character{});
  const Evaluable f = [](cplx z) { return std::exp(z) / (3.0 - z); };
  for (cplx z : interior_samples(40, 0.9)) {
    EXPECT_EQ(poincare_theta(c, f, z), f(z));
    EXPECT_EQ(poincare_theta(c, f, z, ThetaForm::pushforward), f(z));
  }
}

TEST_F(CyclicTheta, IdentityCharacterFixesConstants) {
  const ThetaContext c = make_theta_context(trunc(), od(), Character::identity(1));
  for (cplx z : interior_samples(20, 0.9)) expect_near(poincare_theta(c, [](cplx) { return cplx(1.0); }, z), 1.0, 1e-13);
}

TEST_F(CyclicTheta, FormsAgree) {
  std::mt19937_64 rng(17);
  for (const Character& a : character_lattice(1, 4).characters) {
    const ThetaContext c = make_theta_context(trunc(), od(), a);
    for (int i = 0; i < 25; ++i) {
      const cplx z = random_disk_point(rng);
      const cplx u = poincare_theta(c, delta(), z), v = poincare_theta(c, delta(), z, ThetaForm::pushforward);
      EXPECT_LE(std::abs(u - v), 1e-8 * std::abs(u));
    }
  }
}

TEST_F(CyclicTheta, OutputCarriesRequestedCharacter) {
  // The output is alpha-automorphic whatever the automorphy of the input.
  for (double theta : {0.0, 1.0, pi}) {
    const Character a{{unit(theta)}};
    const ThetaContext c = make_theta_context(trunc(), od(), a);
    const Evaluable P = [&](cplx z) { return poincare_theta(c, delta(), z); };
    const CharacterEstimate e = measure_character(P, cyclic_group(), interior_samples(16, 0.3), 1e-2, false);
    EXPECT_LE(std::abs(e.character.values[0] - a.values[0]), 1e-3) << theta;
  }
}

TEST_F(CyclicTheta, SchurBoundForLatticeCharacters) {
  for (const Character& a : character_lattice(1, 4).characters) {
    const ThetaContext c = make_theta_context(trunc(), od(), a);
    double sup = 0.0;
    for (cplx z : interior_samples(200, 0.95)) sup = std::max(sup, std::abs(poincare_theta(c, delta(), z)));
    EXPECT_LE(sup, 1.0 + 1e-3);
  }
}

TEST_F(CyclicTheta, DeltaReportForLatticeCharacters) {
  const BoundaryGrid g = make_grid(2048, od().image);
  for (const Character& a : character_lattice(1, 4).characters) {
    const ThetaContext c = make_theta_context(trunc(), od(), a);
    const ThetaDeltaReport r = theta_delta_report(c, fact(), cyclic_group(), g, Tolerances{}, NTSequence{I, 3, 14});
    EXPECT_TRUE(r.pass()) << "sup " << r.sup_abs << " identity residual " << r.identity_residual;
    EXPECT_NEAR(r.bound, 4.26981146047642, 1e-4);
    EXPECT_LE(std::abs(r.measured.character.values[0] - a.values[0]), 1e-3);
  }
}

TEST(Theta, TrivialDeltaReportConstant) {
  const cplx t0 = unit(0.7);
  const Truncation t = enumerate(trivial_group(), 2);
  const OrbitData od = orbit_data(t, t0);
  const ThetaContext c = make_theta_context(t, od, Character{});
  const Factorization f = factor_martin_derivative(od, make_grid(512, od.image));
  const ThetaDeltaReport r = theta_delta_report(c, f, trivial_group(), make_grid(512, od.image), Tolerances{}, NTSequence{t0, 3, 14});
  EXPECT_NEAR(r.bound, 0.0, 1e-9);
  EXPECT_NEAR(r.integral1, 0.0, 1e-12);
  EXPECT_NEAR(r.integral2, 0.0, 1e-12);
  EXPECT_TRUE(r.pass());
}

TEST(Theta, SyntheticInnerIdentity) {
  const cplx t0 = unit(0.7);
  const Truncation t = enumerate(trivial_group(), 2);
  const OrbitData od = orbit_data(t, t0);
  const ThetaContext c = make_theta_context(t, od, Character{});
  const BoundaryGrid g = make_grid(4096, {t0});
  for (int n : {1, 2}) {
    const Evaluable D = [t0, n](cplx z) { return std::pow(std::conj(t0) * z, n); };
    const ThetaDeltaReport r = theta_delta_report(c, D, trivial_group(), g, Tolerances{}, 1e-4, NTSequence{t0, 3, 14}, 50);
    EXPECT_NEAR(r.bound, n, 1e-6);
    EXPECT_NEAR(r.integral1 + r.integral2, n, 1e-4);
    EXPECT_NEAR(r.integral2, 0.0, 1e-12);
  }
}

TEST(Theta, NotInverseClosed) {
  const Truncation t = enumerate(cyclic_group(), 3, false);
  EXPECT_THROW(make_theta_context(t, orbit_data(t, I), Character::identity(1)), Error);
}

TEST(Interpolant, FixedPairAutomorphism) {
  const cplx t0 = unit(0.4);
  for (double lambda : {0.5, 1.0, 3.0}) {
    expect_near(fixed_pair_automorphism(lambda, t0, t0), t0, 1e-14);
    expect_near(fixed_pair_automorphism(lambda, t0, -t0), -t0, 1e-14);
    const AngularLimits al = angular_limits([&](cplx z) { return fixed_pair_automorphism(lambda, t0, z); }, {t0, 3, 14});
    EXPECT_NEAR((t0 * al.derivative / al.value).real(), lambda, 1e-6);
  }
}

TEST(Interpolant, TrivialGroup) {
  const cplx t0 = 1.0;
  const Truncation t = enumerate(trivial_group(), 2);
  const OrbitData od = orbit_data(t, t0);
  const ThetaContext c = make_theta_context(t, od, Character{});
  const Factorization f = factor_martin_derivative(od, make_grid(512, od.image));
  const NTSequence seq{t0, 3, 14};
  const Interpolant w = construct_interpolant(c, f, BoundaryDatum::from_ratio(1.0, 1.0, t0), Tolerances{}, seq);
  EXPECT_NEAR(w.bound, 0.0, 1e-9);
  EXPECT_NEAR(w.ratio_t0, 1.0, 1e-6);
  expect_near(w.value_t0, 1.0, 1e-9);
  EXPECT_LE(w.sup_abs, 1.0);

  const Interpolant w0 = construct_interpolant(c, f, BoundaryDatum::from_ratio(I, 0.0, t0), Tolerances{}, seq);
  for (cplx z : interior_samples(10, 0.9)) expect_near(w0(z), I, 1e-12);
}

TEST_F(CyclicTheta, InterpolantMatchesDatum) {
  const Character beta{{cplx(-1.0)}};
  const ThetaContext c = make_theta_context(trunc(), od(), beta);
  const NTSequence seq{I, 3, 14};
  const double bound = boundary_derivative(delta(), I).ratio;
  const Interpolant w = construct_interpolant(c, fact(), BoundaryDatum::from_ratio(1.0, bound + 1.0, I), Tolerances{}, seq);
  EXPECT_NEAR(w.ratio_t0, bound + 1.0, 1e-2);
  expect_near(w.value_t0, 1.0, 1e-6);
  EXPECT_LE(w.sup_abs, 1.0 + 1e-3);
  EXPECT_LE(automorphy_residual([&](cplx z) { return w(z); }, cyclic_group(), beta, interior_samples(32, 0.5)), 1e-3);

  try {
    construct_interpolant(c, fact(), BoundaryDatum::from_ratio(1.0, bound - 1.0, I), Tolerances{}, seq);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InfeasibleDatum);
  }
}

TEST(Interpolant, DatumValidation) {
  EXPECT_THROW((BoundaryDatum{2.0, 0.0, 0.0}.validate(1.0)), Error);
  EXPECT_THROW((BoundaryDatum{1.0, I, 1.0}.validate(1.0)), Error);
  EXPECT_NO_THROW(BoundaryDatum::from_ratio(unit(0.3), 2.5, unit(1.1)).validate(unit(1.1)));
}

}  // namespace
