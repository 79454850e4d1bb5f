#pragma once

#include "ahardy/kernels.hpp"
#include "ahardy/theta.hpp"

namespace ahardy {

struct CJReport {
  double d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0;
  cplx w_t, wp_t;
  double ratio = 0.0;       // Re(t w'(t) / w(t))
  double ratio_imag = 0.0;  // Im(t w'(t) / w(t))
  double mutual_max_dev = 0.0;
  double integral1 = 0.0, integral2 = 0.0;
  double identity_residual = 0.0;
  double sup_abs = 0.0;
  std::vector<double> stolz_angles;
  std::vector<double> stolz_limits;

  double d(int i) const { return i == 1 ? d1 : i == 2 ? d2 : i == 3 ? d3 : d4; }
};

struct CJOptions {
  std::vector<double> stolz_angles{-pi / 4, -pi / 8, 0.0, pi / 8, pi / 4};
  std::size_t schur_samples = 400;
  double schur_radius = 0.999;
  std::size_t julia_samples = 400;
  double tol_schur = 1e-12;
};

// Carathéodory-Julia quantities of a Schur function w at the boundary point seq.t.
inline CJReport cj_quantities(const Evaluable& w, const NTSequence& seq, const BoundaryGrid& grid, const CJOptions& opt = {}) {
  CJReport r;
  const cplx t = seq.t;
  for (cplx z : interior_samples(opt.schur_samples, opt.schur_radius)) r.sup_abs = std::max(r.sup_abs, std::abs(w(z)));
  if (r.sup_abs > 1.0 + opt.tol_schur) throw Error(ErrorKind::NotSchur, "sampled sup |w| = " + std::to_string(r.sup_abs));

  const AngularLimits al = angular_limits(w, seq);
  r.w_t = al.value;
  r.wp_t = al.derivative;
  const cplx q = t * al.derivative / al.value;
  r.ratio = q.real();
  r.ratio_imag = q.imag();

  const cplx wt = r.w_t;
  auto schwarz_pick = [&](cplx z) { return cplx((1.0 - std::norm(w(z))) / (1.0 - std::norm(z))); };
  auto julia = [&](cplx z) {
    const cplx v = w(z);
    const double num = std::norm(v - wt);
    if (num <= 1e-28) return cplx(0.0);
    const double den = 1.0 - std::norm(v);
    if (den <= 0.0) return cplx(std::numeric_limits<double>::infinity());
    return cplx(num * (1.0 - std::norm(z)) / (std::norm(z - t) * den));
  };

  r.d1 = std::numeric_limits<double>::infinity();
  r.d4 = 0.0;
  for (double phi : opt.stolz_angles) {
    const double lim = ray_limit(schwarz_pick, t, phi, seq.k_min, seq.k_max).value.real();
    r.stolz_angles.push_back(phi);
    r.stolz_limits.push_back(lim);
    r.d1 = std::min(r.d1, lim);
    r.d4 = std::max(r.d4, ray_limit(julia, t, phi, seq.k_min, seq.k_max).value.real());
  }
  r.d2 = ray_limit(schwarz_pick, t, 0.0, seq.k_min, seq.k_max).value.real();
  r.d3 = ray_limit([&](cplx z) { return (1.0 - w(z) * std::conj(wt)) / (1.0 - z * std::conj(t)); }, t, 0.0, seq.k_min,
                   seq.k_max)
             .value.real();
  for (cplx z : interior_samples(opt.julia_samples, 0.995)) {
    const double v = julia(z).real();
    if (std::isfinite(v)) r.d4 = std::max(r.d4, v);
  }
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) r.mutual_max_dev = std::max(r.mutual_max_dev, std::abs(r.d(i) - r.d(j)));

  // First integral as the H2 norm of the analytic part of (w - w_t)/(tau - t); second by clamped quadrature.
  const auto values = sample(w, grid);
  const auto c = divided_difference_coeffs(values, wt, t, grid, grid.N / 2);
  for (cplx x : c) r.integral1 += std::norm(x);
  r.integral2 = boundary_integrals(values, wt, t, grid).second;
  r.identity_residual = std::abs(r.integral1 + r.integral2 - r.ratio);
  return r;
}

// |w'(t)| of a finite Blaschke product by logarithmic differentiation at the boundary point.
inline double blaschke_log_derivative_abs(const std::vector<cplx>& zeros, cplx t) {
  cplx s(0.0);
  for (cplx a : zeros) s += (1.0 - std::norm(a)) / ((t - a) * (1.0 - std::conj(a) * t));
  return std::abs(s);
}

struct MonotoneReport {
  std::vector<double> sums;         // closed-form partial sums
  std::vector<double> derivatives;  // independent |w_n'(t)| per partial product
  bool monotone = true;
  double limit = 0.0;
  double full_sum = 0.0;
  double limit_error = 0.0;
  bool bounded = true;
  bool pass(double tol = 1e-8) const { return monotone && (!bounded || limit_error <= tol); }
};

// Nested partial Blaschke products w_n over zeros[0..n): |w_n'(t)| must not decrease.
inline MonotoneReport frostman_monotone_check(const std::vector<cplx>& zeros, cplx t, double growth_cap = 1e12) {
  MonotoneReport r;
  std::vector<cplx> partial;
  for (cplx a : zeros) {
    partial.push_back(a);
    r.sums.push_back(frostman_blaschke(partial, t).sum);
    r.derivatives.push_back(blaschke_log_derivative_abs(partial, t));
  }
  for (std::size_t n = 1; n < r.derivatives.size(); ++n)
    if (r.derivatives[n] < r.derivatives[n - 1] * (1.0 - 1e-14)) r.monotone = false;
  if (zeros.empty()) return r;
  r.limit = r.derivatives.back();
  r.full_sum = r.sums.back();
  r.bounded = r.limit < growth_cap;
  r.limit_error = std::abs(r.limit - r.full_sum);
  return r;
}

// Herglotz mirror: partial atom sets give nondecreasing |u_n'(t)|.
inline MonotoneReport herglotz_monotone_check(const std::vector<HerglotzAtom>& atoms, cplx t, double growth_cap = 1e12) {
  MonotoneReport r;
  std::vector<HerglotzAtom> partial;
  double s = 0.0;
  for (const auto& a : atoms) {
    partial.push_back(a);
    s += 2.0 * a.c / std::norm(a.t - t);
    r.sums.push_back(s);
    r.derivatives.push_back(std::abs(herglotz_boundary(partial, t).derivative));
  }
  for (std::size_t n = 1; n < r.derivatives.size(); ++n)
    if (r.derivatives[n] < r.derivatives[n - 1] * (1.0 - 1e-14)) r.monotone = false;
  if (atoms.empty()) return r;
  r.limit = r.derivatives.back();
  r.full_sum = r.sums.back();
  r.bounded = r.limit < growth_cap;
  r.limit_error = std::abs(r.limit - r.full_sum);
  return r;
}

struct SlackRow {
  std::size_t alpha = 0;
  std::vector<int> params;
  double objective_ab = 0.0;
  double objective_a = 0.0;
  double slack = 0.0;
  double lhs = 0.0;  // quadratic form, equal to slack when the kernels are exact minimizers
};

struct MainInequalityReport {
  CJReport cj;
  double ratio = 0.0;
  double automorphy_residual = 0.0;
  std::vector<SlackRow> rows;
  double min_slack = 0.0;
  double min_lhs = 0.0;
  double max_identity_gap = 0.0;  // max |lhs - slack|
  bool pass = false;
};

struct MainInequalityOptions {
  double tol_slack = 1e-2;
  double tol_auto = 1e-6;
  double tol_limit = 1e-2;
  std::size_t automorphy_samples = 32;
  bool quadratic_form = true;
};

inline double automorphy_residual(const Evaluable& w, const GroupPresentation& p, const Character& beta,
                                  const std::vector<cplx>& samples) {
  double worst = 0.0;
  for (std::size_t g = 0; g < p.rank(); ++g)
    for (cplx z : samples)
      worst = std::max(worst, std::abs(w(p.generators[g].map.apply(z)) - beta.values[g] * w(z)));
  return worst;
}

// Quadratic form: mean over the grid of |h_ab - w conj(w0) h_a - (w conj(w0) - 1)/(t - t0)|^2 + (1 - |w|^2)|k_a|^2/|t - t0|^2.
inline double main_inequality_lhs(const std::vector<cplx>& w_on_grid, cplx w0, cplx t0, const HardyFunction& h_ab,
                                  const HardyFunction& h_a, const BoundaryGrid& g) {
  double s = 0.0;
  for (std::size_t j = 0; j < g.N; ++j) {
    const cplx t = g.points[j], d = t - t0;
    const cplx u = w_on_grid[j] * std::conj(w0);
    const cplx ha = h_a(t);
    const cplx ka = 1.0 + d * ha;
    s += std::norm(h_ab(t) - u * ha - (u - 1.0) / d);
    s += std::max(0.0, 1.0 - std::norm(w_on_grid[j])) * std::norm(ka) / std::norm(d);
  }
  return s / static_cast<double>(g.N);
}

// slack(alpha) = t0 w0'/w0 - (objective(alpha beta) - objective(alpha)) over the lattice of the sweep.
inline MainInequalityReport main_inequality_check(const Evaluable& w, const Character& beta, const GroupPresentation& pres,
                                                  const LatticeSweep& sw, const NTSequence& seq, const BoundaryGrid& grid,
                                                  const MainInequalityOptions& opt = {}) {
  MainInequalityReport r;
  r.automorphy_residual = automorphy_residual(w, pres, beta, interior_samples(opt.automorphy_samples, 0.5));
  if (r.automorphy_residual > opt.tol_auto)
    throw Error(ErrorKind::NotAutomorphic, "automorphy residual " + std::to_string(r.automorphy_residual));
  r.cj = cj_quantities(w, seq, grid);
  if (std::abs(std::abs(r.cj.w_t) - 1.0) > opt.tol_limit || r.cj.ratio < -1e-8 ||
      std::abs(r.cj.ratio_imag) > opt.tol_limit * std::max(1.0, std::abs(r.cj.ratio)))
    throw Error(ErrorKind::CJFailed, "boundary data at t0 are not Caratheodory-Julia");
  r.ratio = r.cj.ratio;

  const auto shift = character_shift(sw.lattice, beta);
  const auto w_grid = opt.quadratic_form ? sample(w, grid) : std::vector<cplx>{};
  r.rows.resize(sw.lattice.size());
  parallel_for(sw.lattice.size(), [&](std::size_t i) {
    SlackRow& row = r.rows[i];
    const std::size_t ab = sw.lattice.shifted(i, shift);
    row.alpha = i;
    row.params = sw.lattice.params[i];
    row.objective_ab = sw.objective(ab);
    row.objective_a = sw.objective(i);
    row.slack = r.ratio - (row.objective_ab - row.objective_a);
    if (opt.quadratic_form)
      row.lhs = main_inequality_lhs(w_grid, r.cj.w_t, seq.t, sw.solutions[ab].h, sw.solutions[i].h, grid);
  });
  r.min_slack = std::numeric_limits<double>::infinity();
  r.min_lhs = std::numeric_limits<double>::infinity();
  for (const auto& row : r.rows) {
    r.min_slack = std::min(r.min_slack, row.slack);
    if (opt.quadratic_form) {
      r.min_lhs = std::min(r.min_lhs, row.lhs);
      r.max_identity_gap = std::max(r.max_identity_gap, std::abs(row.lhs - row.slack));
    }
  }
  if (!opt.quadratic_form) r.min_lhs = r.min_slack;
  r.pass = r.min_slack >= -opt.tol_slack && r.min_lhs >= -opt.tol_slack;
  return r;
}

// Objective of the theta candidate P^alpha(Delta conj(Delta(t0))).
inline double theta_candidate_objective(const ThetaContext& c, const Evaluable& delta, cplx delta_t0, const BoundaryGrid& grid) {
  const cplx norm = std::conj(delta_t0) / std::abs(delta_t0);
  const auto P = [&](cplx t) { return poincare_theta(c, delta, t) * norm; };
  return boundary_integrals(P, 1.0, c.t0(), grid).first;
}

struct UpperBoundRow {
  std::size_t alpha = 0;
  std::vector<int> params;
  double objective = 0.0;
  double candidate = 0.0;
  bool pass = false;
};

struct UpperBoundReport {
  double bound = 0.0;  // radial t0 Delta'(t0)/Delta(t0)
  cplx delta_t0;
  std::vector<UpperBoundRow> rows;
  bool pass = true;
  std::size_t worst = 0;
};

// objective(alpha) <= candidate(alpha) <= bound, each within tol_id, for every lattice character.
inline UpperBoundReport kernel_upper_bound_check(const Truncation& trunc, const OrbitData& od, const Evaluable& delta,
                                                 const LatticeSweep& sw, const BoundaryGrid& grid, const NTSequence& seq,
                                                 double tol_id, bool strict = true) {
  UpperBoundReport r;
  const BoundaryDerivative bd = boundary_derivative(delta, od.t0, seq.k_min, seq.k_max);
  r.bound = bd.ratio;
  r.delta_t0 = bd.value;
  r.rows.resize(sw.lattice.size());
  parallel_for(sw.lattice.size(), [&](std::size_t i) {
    UpperBoundRow& row = r.rows[i];
    row.alpha = i;
    row.params = sw.lattice.params[i];
    row.objective = sw.objective(i);
    const ThetaContext c = make_theta_context(trunc, od, sw.lattice.characters[i]);
    row.candidate = theta_candidate_objective(c, delta, bd.value, grid);
    row.pass = row.objective <= row.candidate + tol_id && row.candidate <= r.bound + tol_id;
  });
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& row : r.rows) {
    r.pass = r.pass && row.pass;
    const double excess = std::max(row.objective - row.candidate, row.candidate - r.bound);
    if (excess > worst) {
      worst = excess;
      r.worst = row.alpha;
    }
  }
  if (strict && !r.pass) throw Error(ErrorKind::BoundViolated, "bound chain violated at lattice character " + std::to_string(r.worst));
  return r;
}

struct DCTReport {
  Character delta_character;
  double probe_residual = 0.0;
  double objective = 0.0;            // kernel objective at delta_t0
  double candidate_objective = 0.0;  // ||(Delta conj(Delta(t0)) - 1)/(t - t0)||^2, first M coefficients
  double candidate_tail = 0.0;       // energy beyond the first M coefficients
  double objective_distance = 0.0;
  bool pass = false;
};

// Orthogonality of the candidate Delta conj(Delta(t0)) to the delta_t0-automorphic directions, and the
// distance between its objective and the extremal one.
inline DCTReport dct_test(const Evaluable& delta, cplx delta_t0, const Character& dchar, const GroupPresentation& pres, cplx t0,
                          std::size_t N, std::size_t M, double margin, double svd_threshold, std::size_t probes, double tol_dct) {
  DCTReport r;
  r.delta_character = dchar;
  const KernelProblem p = make_kernel_problem(pres, t0, dchar, N, M, margin, svd_threshold);
  SolveOptions so;
  so.keep_nullspace = true;
  so.probes = probes;
  const KernelSolution s = solve_boundary_kernel(p, so);
  r.objective = s.objective;

  const BoundaryGrid fine = make_grid(std::max<std::size_t>(16 * M, 1 << 14), {t0});
  const cplx norm = std::conj(delta_t0) / std::abs(delta_t0);
  std::vector<cplx> g(fine.N);
  for (std::size_t j = 0; j < fine.N; ++j) g[j] = delta(fine.points[j]) * norm;
  const auto all = divided_difference_coeffs(g, 1.0, t0, fine, fine.N / 2);
  VectorXc hc(static_cast<Eigen::Index>(M));
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (k < M) {
      hc(static_cast<Eigen::Index>(k)) = all[k];
      r.candidate_objective += std::norm(all[k]);
    } else {
      r.candidate_tail += std::norm(all[k]);
    }
  }
  if (s.nullspace.cols() > 0) {
    r.probe_residual = nullspace_probe_residual(s.nullspace, hc, probes);
  } else if (!p.rows.empty()) {
    r.probe_residual = 0.0;
  } else {
    // No constraints: every polynomial is admissible and the monomial probes read off the coefficients.
    for (std::size_t k = 0; k < std::min(probes, M); ++k) r.probe_residual = std::max(r.probe_residual, std::abs(hc(static_cast<Eigen::Index>(k))));
  }
  r.objective_distance = std::abs(r.objective - r.candidate_objective - r.candidate_tail);
  r.pass = r.probe_residual <= tol_dct && r.objective_distance <= tol_dct;
  return r;
}

struct BoundComparison {
  double sup_objective = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  bool includes_delta = false;
  bool assertion_active = false;
  bool pass = true;
};

// sup over the lattice (and delta_t0 when given) of the kernel objective against t0 Delta'(t0)/Delta(t0).
inline BoundComparison bound_comparison(const LatticeSweep& sw, double bound, const DCTReport* dct, double tol_id) {
  BoundComparison r;
  r.bound = bound;
  for (std::size_t i = 0; i < sw.lattice.size(); ++i) r.sup_objective = std::max(r.sup_objective, sw.objective(i));
  if (dct) {
    r.includes_delta = true;
    r.sup_objective = std::max(r.sup_objective, dct->objective);
    r.assertion_active = dct->pass;
  }
  r.gap = r.bound - r.sup_objective;
  r.pass = r.gap >= -tol_id && (!r.assertion_active || r.gap <= tol_id);
  return r;
}

}  // namespace ahardy
