#pragma once

#include <gtest/gtest.h>

#include <random>

#include "ahardy/caratheodory.hpp"

namespace ahardy::testing {

inline GroupPresentation trivial_group() { return {}; }

// z -> (z + 1/2)/(z/2 + 1); its n-th power is the shift by tanh(n atanh(1/2)).
inline GroupPresentation cyclic_group(double s = 0.5) {
  GroupPresentation p;
  p.generators.push_back({"g1", MoebiusMap::real_shift(s)});
  return p;
}

inline GroupPresentation rank_two_group() {
  GroupPresentation p;
  p.generators.push_back({"g1", MoebiusMap::real_shift(0.8)});
  p.generators.push_back({"g2", MoebiusMap(cplx(1.0 / std::sqrt(1.0 - 0.64)), cplx(0.0, 0.8 / std::sqrt(1.0 - 0.64)))});
  return p;
}

inline cplx blaschke(const std::vector<cplx>& zeros, cplx z) {
  cplx p(1.0);
  for (cplx a : zeros) p *= blaschke_factor(a, z);
  return p;
}

inline MoebiusMap random_map(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double r = 2.0 * U(rng);
  return {std::polar(std::sqrt(1.0 + r * r), 2.0 * pi * U(rng)), std::polar(r, 2.0 * pi * U(rng))};
}

inline cplx random_disk_point(std::mt19937_64& rng, double rmax = 0.95) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  return std::polar(rmax * std::sqrt(U(rng)), 2.0 * pi * U(rng));
}

inline void expect_near(cplx a, cplx b, double tol) { EXPECT_LE(std::abs(a - b), tol) << a << " vs " << b; }

}  // namespace ahardy::testing
