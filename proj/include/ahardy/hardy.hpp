#pragma once

#include <algorithm>
#include <limits>
#include <unsupported/Eigen/FFT>

#include "ahardy/limits.hpp"
#include "ahardy/orbit.hpp"

namespace ahardy {

// Uniform circle samples t_j = exp(i (2 pi j / N + offset)).
struct BoundaryGrid {
  std::size_t N = 0;
  double offset = 0.0;
  std::vector<cplx> points;

  double spacing() const { return 2.0 * pi / static_cast<double>(N); }
};

inline bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

inline BoundaryGrid make_grid(std::size_t N, const std::vector<cplx>& avoid = {}, double tol_map = 1e-9) {
  if (!is_power_of_two(N)) throw Error(ErrorKind::ConfigError, "grid size must be a power of two");
  const double h = 2.0 * pi / static_cast<double>(N);
  const double fractions[] = {0.5, 0.25, 0.75, 0.375, 0.625, 0.125, 0.875};
  for (double f : fractions) {
    bool clear = true;
    for (cplx p : avoid) {
      double r = std::fmod(std::arg(p) - f * h, h);
      if (r < 0) r += h;
      if (std::min(r, h - r) <= tol_map) {
        clear = false;
        break;
      }
    }
    if (!clear) continue;
    BoundaryGrid g;
    g.N = N;
    g.offset = f * h;
    g.points.resize(N);
    for (std::size_t j = 0; j < N; ++j) g.points[j] = unit(h * static_cast<double>(j) + g.offset);
    return g;
  }
  throw Error(ErrorKind::OrbitPointCollision, "no grid offset avoids the given points");
}

inline std::vector<cplx> sample(const Evaluable& f, const BoundaryGrid& g) {
  std::vector<cplx> v(g.N);
  for (std::size_t j = 0; j < g.N; ++j) v[j] = f(g.points[j]);
  return v;
}

// c_k = mean_j f(t_j) conj(t_j)^k for k = 0..N-1 (negative frequencies wrap to the top).
inline std::vector<cplx> grid_coefficients(const std::vector<cplx>& values, const BoundaryGrid& g) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.fwd(out, values);
  const double n = static_cast<double>(g.N);
  for (std::size_t k = 0; k < g.N; ++k) {
    const double kk = k <= g.N / 2 ? static_cast<double>(k) : static_cast<double>(k) - n;
    out[k] *= unit(-kk * g.offset) / n;
  }
  return out;
}

// Values of sum_{k<M} c_k t^k at the grid points, M <= N.
inline std::vector<cplx> grid_values(const std::vector<cplx>& coeffs, const BoundaryGrid& g) {
  std::vector<cplx> c(g.N, cplx(0.0));
  for (std::size_t k = 0; k < coeffs.size() && k < g.N; ++k) c[k] = coeffs[k] * unit(static_cast<double>(k) * g.offset);
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.inv(out, c);
  for (auto& v : out) v *= static_cast<double>(g.N);
  return out;
}

struct HardyFunction {
  std::vector<cplx> coeffs;

  cplx operator()(cplx z) const {
    cplx s(0.0);
    for (std::size_t k = coeffs.size(); k-- > 0;) s = s * z + coeffs[k];
    return s;
  }
};

inline double h2_norm(const HardyFunction& h) {
  double s = 0.0;
  for (cplx c : h.coeffs) s += std::norm(c);
  return std::sqrt(s);
}

inline double grid_l2_norm(const std::vector<cplx>& values) {
  double s = 0.0;
  for (cplx v : values) s += std::norm(v);
  return std::sqrt(s / static_cast<double>(values.size()));
}

// Logarithmic boundary singularity p*log|t - s| handled in closed form.
struct LogAtom {
  cplx s;
  double power;
};

// exp of the discrete Herglotz integral of a boundary log-modulus; positive at 0.
struct OuterFunction {
  std::vector<cplx> herglotz;  // C_0 + 2 sum C_k z^k
  std::vector<LogAtom> atoms;

  cplx log_value(cplx z) const {
    cplx s(0.0);
    for (std::size_t k = herglotz.size(); k-- > 0;) s = s * z + herglotz[k];
    for (const auto& a : atoms) s += a.power * std::log(1.0 - std::conj(a.s) * z);
    return s;
  }
  cplx operator()(cplx z) const { return std::exp(log_value(z)); }
};

inline OuterFunction outer_from_log_modulus(const std::vector<double>& logmod, const BoundaryGrid& g,
                                            std::vector<LogAtom> atoms = {}) {
  if (logmod.size() != g.N) throw Error(ErrorKind::ConfigError, "log-modulus sample count differs from grid size");
  std::vector<cplx> u(g.N);
  for (std::size_t j = 0; j < g.N; ++j) {
    if (!std::isfinite(logmod[j])) throw Error(ErrorKind::NonFiniteSample, "log-modulus sample " + std::to_string(j));
    u[j] = logmod[j];
  }
  const auto C = grid_coefficients(u, g);
  OuterFunction o;
  o.herglotz.resize(g.N / 2 + 1);
  o.herglotz[0] = C[0].real();
  for (std::size_t k = 1; k < g.N / 2; ++k) o.herglotz[k] = 2.0 * C[k];
  o.herglotz[g.N / 2] = C[g.N / 2];
  o.atoms = std::move(atoms);
  return o;
}

// Critical points inside the disk of the truncated Martin function: zeros of
// R(z) = sum_k w_k / (t_k - z)^2, w_k = t_k c_k, found by Aberth iteration on the
// degree 2K-2 numerator polynomial.  Exactly K-1 of them lie in the disk.
inline std::vector<cplx> martin_critical_points(const std::vector<cplx>& tk, const std::vector<double>& ck,
                                                int max_iter = 1000) {
  const std::size_t K = tk.size();
  if (K <= 1) return {};
  std::vector<cplx> w(K);
  double wsum_abs = 0.0;
  cplx wsum(0.0);
  for (std::size_t k = 0; k < K; ++k) {
    w[k] = tk[k] * ck[k];
    wsum += w[k];
    wsum_abs += std::abs(w[k]);
  }
  const bool degree_drop = std::abs(wsum) < 1e-13 * wsum_abs;
  const std::size_t n = 2 * K - 2 - (degree_drop ? 1 : 0);

  // Initial guesses straddle the circle in the gaps between atoms, the widest gap skipped.
  std::vector<double> ang(K);
  for (std::size_t k = 0; k < K; ++k) ang[k] = std::arg(tk[k]);
  std::sort(ang.begin(), ang.end());
  std::vector<std::pair<double, double>> gaps;  // (length, midpoint)
  for (std::size_t k = 0; k < K; ++k) {
    const double a = ang[k], b = k + 1 < K ? ang[k + 1] : ang[0] + 2.0 * pi;
    gaps.emplace_back(b - a, 0.5 * (a + b));
  }
  std::stable_sort(gaps.begin(), gaps.end(), [](auto& x, auto& y) { return x.first < y.first; });
  std::vector<cplx> z;
  for (std::size_t i = 0; z.size() < n; ++i) {
    const auto& gp = gaps[i % (K - 1)];
    const double r = std::clamp(1.0 - 0.5 * gp.first, 0.3, 0.98) * (1.0 - 1e-3 * static_cast<double>(i / (K - 1)));
    const double mid = gp.second + 1e-3 * static_cast<double>(i);
    z.push_back(std::polar(r, mid));
    if (z.size() < n) z.push_back(std::polar(1.0 / r, mid + 1e-3));
  }

  auto logderiv = [&](cplx x, cplx& R, cplx& Rp) {
    R = 0.0;
    Rp = 0.0;
    cplx s(0.0);
    for (std::size_t k = 0; k < K; ++k) {
      const cplx d = tk[k] - x;
      const cplx inv = 1.0 / d;
      const cplx inv2 = inv * inv;
      R += w[k] * inv2;
      Rp += 2.0 * w[k] * inv2 * inv;
      s += inv;
    }
    return Rp / R - 2.0 * s;
  };

  bool converged = false;
  for (int it = 0; it < max_iter && !converged; ++it) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx R, Rp;
      const cplx Nw = 1.0 / logderiv(z[i], R, Rp);
      cplx A(0.0);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) A += 1.0 / (z[i] - z[j]);
      const cplx step = Nw / (1.0 - Nw * A);
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) z[i] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[i])));
    }
    converged = worst < 1e-15;
  }

  std::vector<cplx> inside;
  for (cplx x : z) {
    if (std::abs(x) >= 1.0) continue;
    for (int it = 0; it < 5; ++it) {  // Newton polish on R
      cplx R, Rp;
      logderiv(x, R, Rp);
      const cplx step = R / Rp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      x -= step;
    }
    inside.push_back(x);
  }
  if (degree_drop && inside.size() + 1 == K - 1) inside.push_back(cplx(0.0));
  if (inside.size() != K - 1)
    throw Error(ErrorKind::NoConvergence, "found " + std::to_string(inside.size()) + " critical points in the disk, expected " +
                                              std::to_string(K - 1));
  std::sort(inside.begin(), inside.end(), [](cplx a, cplx b) {
    return std::arg(a) < std::arg(b) || (std::arg(a) == std::arg(b) && std::abs(a) < std::abs(b));
  });
  return inside;
}

// m' = Delta / phi with Delta a finite Blaschke product over the critical points z_j and
// phi(z) = kappa prod_k (1 - conj(t_k) z)^2 / prod_j (1 - conj(z_j) z)^2, outer, |phi| = 1/boundary_sum.
struct Factorization {
  OrbitData od;
  std::vector<cplx> zeros;
  double kappa = 1.0;
  cplx unimodular{1.0, 0.0};
  double residual_inner = 0.0;
  double residual_bound4 = 0.0;
  double residual_kappa = 0.0;
  double residual_sandwich = 0.0;
  double residual_outer = std::numeric_limits<double>::quiet_NaN();

  cplx mprime(cplx z) const { return martin_derivative(od, z); }

  cplx log_phi(cplx z) const {
    cplx s(std::log(kappa));
    for (cplx t : od.image) s += 2.0 * std::log(1.0 - std::conj(t) * z);
    for (cplx a : zeros) s -= 2.0 * std::log(1.0 - std::conj(a) * z);
    return s;
  }
  cplx phi(cplx z) const { return std::exp(log_phi(z)); }

  cplx delta(cplx z) const {
    cplx p = unimodular;
    for (cplx a : zeros) p *= blaschke_factor(a, z);
    return p;
  }

  // phi * m' written without the poles at the orbit points: i sum_k conj(t_k) c_k prod_{j!=k}(1-conj(t_j)z)^2 * (rest of phi).
  cplx delta_from_phi(cplx z) const {
    const std::size_t K = od.size();
    std::vector<cplx> lg(K);
    for (std::size_t k = 0; k < K; ++k) lg[k] = 2.0 * std::log(1.0 - std::conj(od.image[k]) * z);
    cplx rest(std::log(kappa));
    for (cplx a : zeros) rest -= 2.0 * std::log(1.0 - std::conj(a) * z);
    cplx s(0.0);
    for (std::size_t k = 0; k < K; ++k) {
      cplx e = rest;
      for (std::size_t j = 0; j < K; ++j)
        if (j != k) e += lg[j];
      s += std::conj(od.image[k]) * od.absderiv[k] * std::exp(e);
    }
    return I * s;
  }

  double frostman_sum(cplx t) const {
    double s = 0.0;
    for (cplx a : zeros) s += (1.0 - std::norm(a)) / std::norm(t - a);
    return s;
  }
};

inline std::vector<cplx> interior_samples(std::size_t count, double rmax, std::uint64_t seed = 7) {
  // Deterministic low-discrepancy points filling the disk of radius rmax.
  std::vector<cplx> z;
  const double golden = pi * (3.0 - std::sqrt(5.0));
  for (std::size_t j = 0; j < count; ++j) {
    const double r = rmax * std::sqrt((static_cast<double>(j) + 0.5) / static_cast<double>(count));
    z.push_back(std::polar(r, golden * static_cast<double>(j) + 0.1 * static_cast<double>(seed)));
  }
  return z;
}

inline Factorization factor_martin_derivative(const OrbitData& od, const BoundaryGrid& grid, const Tolerances& tol = {}) {
  Factorization f;
  f.od = od;
  f.zeros = martin_critical_points(od.image, od.absderiv);

  auto log_phi_unscaled = [&](cplx z) {
    cplx s(0.0);
    for (cplx t : od.image) s += 2.0 * std::log(1.0 - std::conj(t) * z);
    for (cplx a : f.zeros) s -= 2.0 * std::log(1.0 - std::conj(a) * z);
    return s;
  };

  // kappa from |phi(t)| = 1/boundary_sum(t) on a few boundary points.
  std::vector<double> logk;
  for (std::size_t j = 0; j < 32; ++j) {
    cplx t = unit(2.0 * pi * (static_cast<double>(j) + 0.37) / 32.0);
    double dmin = 1.0;
    for (cplx p : od.image) dmin = std::min(dmin, std::abs(p - t));
    if (dmin < 1e-6) continue;
    logk.push_back(-std::log(orbit_poisson_sum(od, t)) - log_phi_unscaled(t).real());
  }
  double mean = 0.0;
  for (double x : logk) mean += x;
  mean /= static_cast<double>(logk.size());
  for (double x : logk) f.residual_kappa = std::max(f.residual_kappa, std::abs(x - mean));
  f.kappa = std::exp(mean);

  // Unimodular constant matched at an interior point away from the zeros.
  const cplx cands[] = {0.0, 0.3 * od.t0, -0.3 * od.t0, 0.3 * I * od.t0, -0.3 * I * od.t0};
  cplx zs = cands[0];
  double best = -1.0;
  for (cplx c : cands) {
    double dmin = 1.0;
    for (cplx a : f.zeros) dmin = std::min(dmin, std::abs(a - c));
    if (dmin > best) {
      best = dmin;
      zs = c;
    }
  }
  f.unimodular = 1.0;
  const cplx u = f.delta_from_phi(zs) / f.delta(zs);
  f.unimodular = u / std::abs(u);
  double res = std::abs(std::abs(u) - 1.0);

  for (cplx t : grid.points) {
    res = std::max(res, std::abs(std::abs(f.delta(t)) - 1.0));
    f.residual_bound4 = std::max(f.residual_bound4, std::abs(f.phi(t)) - 4.0);
  }
  f.residual_bound4 = std::max(f.residual_bound4, 0.0);
  for (cplx z : interior_samples(64, 0.95)) {
    res = std::max(res, std::abs(f.delta(z) - f.delta_from_phi(z)));
    const double S = orbit_poisson_sum(od, z);
    const double upper = 1.0 / std::abs(f.phi(z));
    const double m = std::abs(f.mprime(z));
    f.residual_sandwich = std::max({f.residual_sandwich, (S - upper) / S, (m - S) / S});
  }
  f.residual_sandwich = std::max(f.residual_sandwich, 0.0);
  f.residual_inner = res;

  // Independent route: discrete Herglotz outer function of -log(boundary_sum) with the
  // orbit singularities in closed form, compared against phi on interior samples.  The
  // orbit clusters near the limit set need a finer grid than the working one.
  const BoundaryGrid fine = make_grid(std::max<std::size_t>(grid.N, std::size_t(1) << 16), od.image, tol.tol_map);
  std::vector<double> logmod(fine.N);
  std::vector<LogAtom> atoms;
  for (std::size_t j = 0; j < fine.N; ++j) {
    const cplx t = fine.points[j];
    double s = -std::log(orbit_poisson_sum(od, t));
    for (cplx p : od.image) s -= 2.0 * std::log(std::abs(t - p));
    logmod[j] = s;
  }
  for (cplx p : od.image) atoms.push_back({p, 2.0});
  const OuterFunction outer = outer_from_log_modulus(logmod, fine, atoms);
  double dev = 0.0;
  for (cplx z : interior_samples(32, 0.6)) dev = std::max(dev, std::abs(outer(z) / f.phi(z) - 1.0));
  f.residual_outer = dev;
  return f;
}

struct FactorizationCheck {
  bool bound4 = false;
  bool inner = false;
  bool sandwich = false;
  bool outer = false;
  bool pass() const { return bound4 && inner && sandwich && outer; }
};

inline FactorizationCheck check_factorization(const Factorization& f, const Tolerances& tol) {
  FactorizationCheck c;
  c.bound4 = f.residual_bound4 <= tol.tol_fact;
  c.inner = f.residual_inner <= tol.tol_fact;
  c.sandwich = f.residual_sandwich <= tol.tol_fact;
  c.outer = f.residual_outer <= tol.tol_fact;
  return c;
}

struct CharacterEstimate {
  Character character;
  std::vector<double> dispersion;
};

inline cplx complex_median(std::vector<cplx> v) {
  std::vector<double> re, im;
  for (cplx x : v) {
    re.push_back(x.real());
    im.push_back(x.imag());
  }
  auto med = [](std::vector<double>& a) {
    std::sort(a.begin(), a.end());
    const std::size_t n = a.size();
    return n % 2 ? a[n / 2] : 0.5 * (a[n / 2 - 1] + a[n / 2]);
  };
  return {med(re), med(im)};
}

// Character of an automorphic function measured as the median ratio f(gamma z)/f(z).
inline CharacterEstimate measure_character(const Evaluable& f, const GroupPresentation& p, const std::vector<cplx>& samples,
                                           double tol_char, bool strict = true) {
  CharacterEstimate est;
  for (const auto& g : p.generators) {
    std::vector<cplx> ratios;
    for (cplx z : samples) {
      const cplx d = f(z);
      if (std::abs(d) < 1e-3) continue;
      ratios.push_back(f(g.map.apply(z)) / d);
    }
    if (ratios.empty()) throw Error(ErrorKind::DispersionTooLarge, "no usable samples");
    cplx m = complex_median(ratios);
    m /= std::abs(m);
    double disp = 0.0;
    for (cplx r : ratios) disp = std::max(disp, std::abs(r - m));
    est.character.values.push_back(m);
    est.dispersion.push_back(disp);
    if (strict && disp > tol_char)
      throw Error(ErrorKind::DispersionTooLarge, "generator " + g.name + " ratio dispersion " + std::to_string(disp));
  }
  return est;
}

inline CharacterEstimate delta_character(const Factorization& f, const GroupPresentation& p, const std::vector<cplx>& samples,
                                         double tol_char, bool strict = true) {
  return measure_character([&](cplx z) { return f.delta(z); }, p, samples, tol_char, strict);
}

// Radial estimates of Delta(t0), Delta'(t0) and t0 Delta'(t0)/Delta(t0).
struct BoundaryDerivative {
  cplx value;
  cplx derivative;
  double ratio = 0.0;
  double ratio_imag = 0.0;
  double error = 0.0;
};

inline BoundaryDerivative boundary_derivative(const Evaluable& f, cplx t0, int k_min = 3, int k_max = 14) {
  const AngularLimits al = angular_limits(f, {t0, k_min, k_max});
  BoundaryDerivative b;
  b.value = al.value;
  b.derivative = al.derivative;
  const cplx r = t0 * al.derivative / al.value;
  b.ratio = r.real();
  b.ratio_imag = r.imag();
  b.error = al.value_error + al.derivative_error;
  return b;
}

struct PhiLimitReport : SeriesReport {
  std::vector<double> radii;
  std::vector<cplx> ratios;
  cplx limit;
  cplx first_order;
  double first_order_error = 0.0;
};

// phi(z) i t0 / ((z - t0)^2 Delta(t0)) along z = r t0; tends to 1.
inline PhiLimitReport phi_limit_check(const Factorization& f, cplx t0, const std::vector<double>& radii, double tol_limit = 1e-2) {
  PhiLimitReport r;
  r.radii = radii;
  const cplx d0 = boundary_derivative([&](cplx z) { return f.delta(z); }, t0).value;
  std::vector<cplx> fo;
  for (double rad : radii) {
    const cplx z = rad * t0;
    const cplx q = f.phi(z) * I * t0 / ((z - t0) * (z - t0) * d0);
    r.ratios.push_back(q);
    r.partial_sums.push_back(std::abs(q - 1.0));
    fo.push_back((q - 1.0) / (z - t0));
  }
  const Extrapolated lim = richardson(r.ratios);
  const Extrapolated first = richardson(fo);
  r.limit = lim.value;
  r.first_order = first.value;
  r.first_order_error = first.error;
  r.value = std::abs(lim.value - 1.0);
  r.tail_estimate = lim.error;
  r.converged = r.value <= tol_limit && first.error <= tol_limit * std::max(1.0, std::abs(first.value));
  return r;
}

// Divided-difference quadratures on the circle: I1 = mean |(w - w0)/(t - t0)|^2 and
// I2 = mean max(0, 1 - |w|^2)/|t - t0|^2 (negative roundoff clamped).
struct BoundaryIntegrals {
  double first = 0.0;
  double second = 0.0;
  double sum() const { return first + second; }
};

inline BoundaryIntegrals boundary_integrals(const std::vector<cplx>& w_on_grid, cplx w0, cplx t0, const BoundaryGrid& g) {
  BoundaryIntegrals b;
  for (std::size_t j = 0; j < g.N; ++j) {
    const cplx t = g.points[j];
    const double d2 = std::norm(t - t0);
    b.first += std::norm(w_on_grid[j] - w0) / d2;
    b.second += std::max(0.0, 1.0 - std::norm(w_on_grid[j])) / d2;
  }
  b.first /= static_cast<double>(g.N);
  b.second /= static_cast<double>(g.N);
  return b;
}

inline BoundaryIntegrals boundary_integrals(const Evaluable& w, cplx w0, cplx t0, const BoundaryGrid& g) {
  return boundary_integrals(sample(w, g), w0, t0, g);
}

// Analytic coefficients (first M) of (w - w0)/(t - t0) sampled on the grid.
inline std::vector<cplx> divided_difference_coeffs(const std::vector<cplx>& w_on_grid, cplx w0, cplx t0, const BoundaryGrid& g,
                                                   std::size_t M) {
  std::vector<cplx> v(g.N);
  for (std::size_t j = 0; j < g.N; ++j) v[j] = (w_on_grid[j] - w0) / (g.points[j] - t0);
  auto c = grid_coefficients(v, g);
  c.resize(std::min(M, g.N));
  return c;
}

}  // namespace ahardy
