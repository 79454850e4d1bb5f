#pragma once

#include <algorithm>
#include <limits>

#include "ahardy/group.hpp"

namespace ahardy {

struct SeriesReport {
  double value = 0.0;
  std::vector<double> partial_sums;
  bool converged = false;
  double tail_estimate = 0.0;
};

// Per-element orbit values of a boundary point t0.
struct OrbitData {
  cplx t0;
  std::vector<cplx> image;      // gamma(t0)
  std::vector<cplx> deriv;      // gamma'(t0)
  std::vector<double> absderiv;  // |gamma'(t0)|
  std::vector<int> length;      // word length of each element
  std::vector<double> shell_sums;
  double tail_estimate = 0.0;

  std::size_t size() const { return image.size(); }
  double total() const {
    double s = 0.0;
    for (double c : absderiv) s += c;
    return s;
  }
};

// Geometric extrapolation of the remaining shells from the last two shell sums.
inline double geometric_tail(const std::vector<double>& shells) {
  if (shells.size() < 2) return 0.0;
  const double last = shells.back(), prev = shells[shells.size() - 2];
  if (last == 0.0) return 0.0;
  if (prev <= 0.0) return std::numeric_limits<double>::infinity();
  const double q = last / prev;
  if (q >= 1.0) return std::numeric_limits<double>::infinity();
  return last * q / (1.0 - q);
}

inline OrbitData orbit_data(const Truncation& trunc, cplx t0, const Tolerances& tol = {}) {
  if (!is_unimodular(t0, tol.tol_alg)) throw Error(ErrorKind::ConfigError, "t0 is not unimodular");
  OrbitData od;
  od.t0 = t0;
  od.shell_sums.assign(static_cast<std::size_t>(trunc.max_word_length) + 1, 0.0);
  for (const auto& e : trunc.elements) {
    const cplx img = e.map.apply(t0);
    if (!e.word.empty() && std::abs(img - t0) <= tol.tol_map)
      throw Error(ErrorKind::BoundaryFixedPoint, "t0 is fixed by a group element");
    const cplx d = e.map.derivative(t0);
    od.image.push_back(img / std::abs(img));
    od.deriv.push_back(d);
    od.absderiv.push_back(std::abs(d));
    od.length.push_back(static_cast<int>(e.word.size()));
    od.shell_sums[e.word.size()] += std::abs(d);
  }
  od.tail_estimate = geometric_tail(od.shell_sums);
  return od;
}

inline SeriesReport orbit_sum_report(const OrbitData& od, double tol_series) {
  SeriesReport r;
  double s = 0.0;
  for (double x : od.shell_sums) {
    s += x;
    r.partial_sums.push_back(s);
  }
  r.value = s;
  r.tail_estimate = od.tail_estimate;
  r.converged = od.tail_estimate <= tol_series;
  return r;
}

// (i/2) sum (gamma(t0)+z)/(gamma(t0)-z) |gamma'(t0)|
inline cplx martin(const OrbitData& od, cplx z) {
  cplx s(0.0);
  for (std::size_t k = 0; k < od.size(); ++k) s += (od.image[k] + z) / (od.image[k] - z) * od.absderiv[k];
  return 0.5 * I * s;
}

enum class DerivativeForm { at_t0, at_zeta };

// i sum gamma(t0)|gamma'(t0)|/(gamma(t0)-z)^2, or the term-wise equal i t0 sum gamma'(z)/(gamma(z)-t0)^2.
inline cplx martin_derivative(const OrbitData& od, const Truncation& trunc, cplx z,
                              DerivativeForm form = DerivativeForm::at_t0) {
  cplx s(0.0);
  if (form == DerivativeForm::at_t0) {
    for (std::size_t k = 0; k < od.size(); ++k) {
      const cplx d = od.image[k] - z;
      s += od.image[k] * od.absderiv[k] / (d * d);
    }
    return I * s;
  }
  if (!trunc.inverse_closed) throw Error(ErrorKind::NotInverseClosed, "at_zeta form needs an inverse-closed truncation");
  for (const auto& e : trunc.elements) {
    const cplx d = e.map.apply(z) - od.t0;
    s += e.map.derivative(z) / (d * d);
  }
  return I * od.t0 * s;
}

inline cplx martin_derivative(const OrbitData& od, cplx z) {
  cplx s(0.0);
  for (std::size_t k = 0; k < od.size(); ++k) {
    const cplx d = od.image[k] - z;
    s += od.image[k] * od.absderiv[k] / (d * d);
  }
  return I * s;
}

// sum |gamma'(t0)| / |gamma(t0) - z|^2, valid on the circle and inside.
inline double orbit_poisson_sum(const OrbitData& od, cplx z) {
  double s = 0.0;
  for (std::size_t k = 0; k < od.size(); ++k) s += od.absderiv[k] / std::norm(od.image[k] - z);
  return s;
}

inline double boundary_sum(const OrbitData& od, cplx t, double tol_map = 1e-9) {
  for (cplx p : od.image)
    if (std::abs(p - t) <= tol_map) throw Error(ErrorKind::OrbitPointCollision, "boundary point on the orbit");
  return orbit_poisson_sum(od, t);
}

inline cplx blaschke_factor(cplx z0, cplx z) {
  if (z0 == cplx(0.0)) return z;
  return std::abs(z0) / z0 * (z0 - z) / (1.0 - std::conj(z0) * z);
}

// Product over the orbit of z0; each factor is positive at the origin.
inline cplx green_blaschke(const Truncation& trunc, cplx z0, cplx z) {
  cplx p(1.0);
  for (const auto& e : trunc.elements) p *= blaschke_factor(e.map.apply(z0), z);
  return p;
}

// Mean of log(boundary_sum) over a half-offset grid.  The orbit log-singularities have
// mean zero and are removed exactly; the smooth remainder is integrated on N and 2N points.
inline SeriesReport widom_log_integral(const OrbitData& od, std::size_t grid_size, double tol_series = 1e-8) {
  auto mean_on = [&](std::size_t N) {
    double acc = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      const cplx t = unit(2.0 * pi * (static_cast<double>(j) + 0.5) / static_cast<double>(N));
      // log S(t) + sum_k log|t - t_k|^2 = log sum_k c_k prod_{j != k} |t - t_j|^2
      std::vector<double> lg(od.size());
      for (std::size_t k = 0; k < od.size(); ++k) lg[k] = std::log(std::norm(t - od.image[k]));
      double total_lg = 0.0;
      for (double x : lg) total_lg += x;
      double mx = -std::numeric_limits<double>::infinity();
      std::vector<double> e(od.size());
      for (std::size_t k = 0; k < od.size(); ++k) {
        e[k] = std::log(od.absderiv[k]) + total_lg - lg[k];
        mx = std::max(mx, e[k]);
      }
      double s = 0.0;
      for (double x : e) s += std::exp(x - mx);
      acc += mx + std::log(s);
    }
    return acc / static_cast<double>(N);
  };
  SeriesReport r;
  const double v1 = mean_on(grid_size), v2 = mean_on(2 * grid_size);
  r.partial_sums = {v1, v2};
  r.value = v2;
  r.tail_estimate = std::abs(v2 - v1);
  r.converged = std::isfinite(v2) && r.tail_estimate <= tol_series;
  return r;
}

struct FrostmanResult {
  double sum = 0.0;
  cplx boundary_value{1.0, 0.0};
  double angular_derivative_abs = 0.0;
};

inline FrostmanResult frostman_blaschke(const std::vector<cplx>& zeros, cplx t) {
  FrostmanResult r;
  for (cplx z : zeros) {
    if (std::abs(z) >= 1.0) throw Error(ErrorKind::ZeroOnBoundary, "Blaschke zero outside the open disk");
    r.sum += (1.0 - std::norm(z)) / std::norm(t - z);
    r.boundary_value *= blaschke_factor(z, t);
  }
  r.angular_derivative_abs = r.sum;
  return r;
}

struct HerglotzAtom {
  cplx t;
  double c;
};

struct HerglotzBoundary {
  cplx value;
  cplx derivative;
};

// u(z) = i sum c_k (t_k + z)/(t_k - z) and its derivative on the circle.
inline HerglotzBoundary herglotz_boundary(const std::vector<HerglotzAtom>& atoms, cplx t, double tol_map = 1e-9) {
  HerglotzBoundary r{0.0, 0.0};
  double s = 0.0;
  for (const auto& a : atoms) {
    if (std::abs(a.t - t) <= tol_map) throw Error(ErrorKind::AtomCollision, "t coincides with an atom");
    r.value += I * (a.t + t) / (a.t - t) * a.c;
    s += a.c / std::norm(a.t - t);
  }
  r.derivative = -2.0 * I * std::conj(t) * s;
  return r;
}

inline cplx herglotz_value(const std::vector<HerglotzAtom>& atoms, cplx z) {
  cplx v(0.0);
  for (const auto& a : atoms) v += I * (a.t + z) / (a.t - z) * a.c;
  return v;
}

struct SmallOhReport : SeriesReport {
  std::vector<double> radii;
  std::vector<double> q;
};

// q(r) = |t0 - r t0| * sum_{gamma != e} |gamma'(t0)| / |gamma(t0) - r t0|^2
inline SmallOhReport assumption_smalloh_check(const OrbitData& od, cplx t0, const std::vector<double>& radii,
                                              double tol_smalloh = 1e-3) {
  SmallOhReport r;
  r.radii = radii;
  bool decreasing = true;
  for (double rad : radii) {
    const cplx z = rad * t0;
    double s = 0.0;
    for (std::size_t k = 0; k < od.size(); ++k)
      if (od.length[k] > 0) s += od.absderiv[k] / std::norm(od.image[k] - z);
    const double q = std::abs(t0 - z) * s;
    if (!r.q.empty() && q > r.q.back()) decreasing = false;
    r.q.push_back(q);
  }
  r.partial_sums = r.q;
  r.value = r.q.empty() ? 0.0 : r.q.back();
  r.tail_estimate = r.value;
  r.converged = decreasing && r.value <= tol_smalloh;
  return r;
}

// Radii 1 - 2^-k for k in [k_min, k_max].
inline std::vector<double> dyadic_radii(int k_min, int k_max) {
  std::vector<double> r;
  for (int k = k_min; k <= k_max; ++k) r.push_back(1.0 - std::ldexp(1.0, -k));
  return r;
}

}  // namespace ahardy
