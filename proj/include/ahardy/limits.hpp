#pragma once

#include <functional>

#include "ahardy/common.hpp"

namespace ahardy {

using Evaluable = std::function<cplx(cplx)>;

// Radial approach z_k = (1 - 2^-k) t, k = k_min..k_max.
struct NTSequence {
  cplx t{1.0, 0.0};
  int k_min = 3;
  int k_max = 14;

  std::vector<cplx> points() const {
    std::vector<cplx> p;
    for (int k = k_min; k <= k_max; ++k) p.push_back((1.0 - std::ldexp(1.0, -k)) * t);
    return p;
  }
};

struct Extrapolated {
  cplx value;
  double error = 0.0;
};

// Neville extrapolation to h = 0 for samples at h_k = h_0 2^-k with an error expansion in powers of h.
inline Extrapolated richardson(const std::vector<cplx>& y) {
  const std::size_t n = y.size();
  if (n == 0) return {0.0, 0.0};
  if (n == 1) return {y[0], 0.0};
  std::vector<std::vector<cplx>> T(n);
  for (std::size_t i = 0; i < n; ++i) {
    T[i].resize(i + 1);
    T[i][0] = y[i];
    for (std::size_t j = 1; j <= i; ++j) {
      const double f = std::ldexp(1.0, static_cast<int>(j)) - 1.0;
      T[i][j] = T[i][j - 1] + (T[i][j - 1] - T[i - 1][j - 1]) / f;
    }
  }
  // Diagonal entry with the smallest successive change.
  Extrapolated best{T[1][1], std::abs(T[1][1] - T[0][0])};
  for (std::size_t i = 2; i < n; ++i) {
    const double e = std::abs(T[i][i] - T[i - 1][i - 1]);
    if (e < best.error) best = {T[i][i], e};
  }
  return best;
}

struct AngularLimits {
  cplx value;
  cplx derivative;
  double value_error = 0.0;
  double derivative_error = 0.0;
};

inline void check_growth(const std::vector<cplx>& y, const char* what) {
  if (y.size() < 4) return;
  const std::size_t n = y.size();
  bool growing = true;
  for (std::size_t i = n - 3; i < n; ++i)
    if (!(std::abs(y[i]) > 1.5 * std::abs(y[i - 1]) && std::abs(y[i]) > 1e3)) growing = false;
  for (const cplx& v : y)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) growing = true;
  if (growing) throw Error(ErrorKind::Divergent, what);
}

// Limits of f and of its secant slopes along the radial sequence.
inline AngularLimits angular_limits(const Evaluable& f, const NTSequence& seq) {
  const auto z = seq.points();
  std::vector<cplx> v;
  for (cplx p : z) v.push_back(f(p));
  check_growth(v, "values grow along the approach");
  std::vector<cplx> s;
  for (std::size_t k = 0; k + 1 < z.size(); ++k) s.push_back((v[k + 1] - v[k]) / (z[k + 1] - z[k]));
  check_growth(s, "difference quotients grow along the approach");
  const Extrapolated ev = richardson(v), ed = richardson(s);
  return {ev.value, ed.value, ev.error, ed.error};
}

// Limit of g along z = t (1 - rho e^{i phi}), rho = 2^-k.
inline Extrapolated ray_limit(const Evaluable& g, cplx t, double phi, int k_min, int k_max) {
  std::vector<cplx> y;
  for (int k = k_min; k <= k_max; ++k) y.push_back(g(t * (1.0 - std::ldexp(1.0, -k) * unit(phi))));
  return richardson(y);
}

}  // namespace ahardy
