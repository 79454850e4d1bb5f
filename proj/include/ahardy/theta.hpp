#pragma once

#include "ahardy/hardy.hpp"

namespace ahardy {

struct ThetaContext {
  Truncation trunc;
  OrbitData od;
  Character alpha;
  std::vector<cplx> alpha_of;    // alpha(gamma) per element
  std::vector<MoebiusMap> inverses;

  cplx t0() const { return od.t0; }
};

inline ThetaContext make_theta_context(const Truncation& trunc, const OrbitData& od, const Character& alpha) {
  if (!trunc.inverse_closed) throw Error(ErrorKind::NotInverseClosed, "theta series need an inverse-closed truncation");
  ThetaContext c;
  c.trunc = trunc;
  c.od = od;
  c.alpha = alpha;
  for (const auto& e : trunc.elements) {
    c.alpha_of.push_back(e.word.empty() ? cplx(1.0) : alpha(e.word));
    c.inverses.push_back(e.map.inverse());
  }
  return c;
}

enum class ThetaForm { pullback, pushforward };

// Pullback: sum conj(alpha(g)) f(g z) g'(z)/(g z - t0)^2 / sum g'(z)/(g z - t0)^2.
// Pushforward: sum alpha(g) f(g^-1 z) g'(t0)/(g(t0) - z)^2 / sum g'(t0)/(g(t0) - z)^2.
// Weights are taken relative to the identity term (element 0), so a trivial group returns f(z) unchanged.
inline cplx poincare_theta(const ThetaContext& c, const Evaluable& f, cplx z, ThetaForm form = ThetaForm::pullback) {
  const cplx t0 = c.t0();
  auto weight = [&](std::size_t k) {
    if (form == ThetaForm::pullback) {
      const MoebiusMap& g = c.trunc.elements[k].map;
      const cplx d = g.apply(z) - t0;
      return g.derivative(z) / (d * d);
    }
    const cplx d = c.od.image[k] - z;
    return c.od.deriv[k] / (d * d);
  };
  const cplx w0 = weight(0);
  cplx num = f(z), den(1.0);
  double mag = 1.0;
  for (std::size_t k = 1; k < c.trunc.size(); ++k) {
    const cplx r = weight(k) / w0;
    const cplx value = form == ThetaForm::pullback ? std::conj(c.alpha_of[k]) * f(c.trunc.elements[k].map.apply(z))
                                                   : c.alpha_of[k] * f(c.inverses[k].apply(z));
    num += value * r;
    den += r;
    mag += std::abs(r);
  }
  if (!(std::abs(den) > 1e-13 * mag))
    throw Error(ErrorKind::DenominatorVanishes, "theta denominator vanishes near z = (" + std::to_string(z.real()) + ", " +
                                                    std::to_string(z.imag()) + ")");
  return num / den;
}

struct ThetaDeltaReport {
  double sup_abs = 0.0;
  bool pass_sup = false;
  cplx delta_t0, delta_prime;  // radial estimates for Delta
  cplx theta_t0, theta_prime;  // radial estimates for P^alpha Delta
  bool pass_limits = false;
  double bound = 0.0;  // t0 Delta'(t0)/Delta(t0)
  double integral1 = 0.0, integral2 = 0.0;
  double identity_residual = 0.0;
  bool pass_identity = false;
  double divided_difference_norm = 0.0, divided_difference_norm_refined = 0.0;
  SmallOhReport smalloh;
  CharacterEstimate measured;
  bool pass() const { return pass_sup && pass_limits && pass_identity; }
};

// Checks for P^alpha applied to an inner function Delta, from a factorization or synthetic.
inline ThetaDeltaReport theta_delta_report(const ThetaContext& c, const Evaluable& delta, const GroupPresentation& pres,
                                           const BoundaryGrid& grid, const Tolerances& tol, double tol_id, const NTSequence& seq,
                                           std::size_t sup_samples = 200) {
  ThetaDeltaReport r;
  const cplx t0 = c.t0();
  r.smalloh = assumption_smalloh_check(c.od, t0, dyadic_radii(seq.k_min, seq.k_max), tol.tol_smalloh);
  if (!r.smalloh.converged) throw Error(ErrorKind::AssumptionFailed, "small-oh orbit diagnostic did not converge");

  const Evaluable P = [&](cplx z) { return poincare_theta(c, delta, z); };
  for (cplx z : interior_samples(sup_samples, 0.95)) r.sup_abs = std::max(r.sup_abs, std::abs(P(z)));
  r.pass_sup = r.sup_abs <= 1.0 + tol.tol_fact;

  const AngularLimits ld = angular_limits(delta, seq);
  const AngularLimits lp = angular_limits(P, seq);
  r.delta_t0 = ld.value;
  r.delta_prime = ld.derivative;
  r.theta_t0 = lp.value;
  r.theta_prime = lp.derivative;
  r.pass_limits = std::abs(ld.value - lp.value) <= tol.tol_limit &&
                  std::abs(ld.derivative - lp.derivative) <= tol.tol_limit * std::max(1.0, std::abs(ld.derivative));
  r.bound = (t0 * ld.derivative / ld.value).real();

  const cplx norm = std::conj(ld.value);
  std::vector<cplx> G(grid.N);
  for (std::size_t j = 0; j < grid.N; ++j) G[j] = P(grid.points[j]) * norm;
  const BoundaryIntegrals bi = boundary_integrals(G, 1.0, t0, grid);
  r.integral1 = bi.first;
  r.integral2 = bi.second;
  r.identity_residual = std::abs(bi.sum() - r.bound);
  r.pass_identity = r.identity_residual <= tol_id;
  r.divided_difference_norm = std::sqrt(bi.first);
  const BoundaryGrid fine = make_grid(2 * grid.N, c.od.image, tol.tol_map);
  const BoundaryIntegrals bf = boundary_integrals([&](cplx t) { return P(t) * norm; }, 1.0, t0, fine);
  r.divided_difference_norm_refined = std::sqrt(bf.first);
  r.measured = measure_character(P, pres, interior_samples(32, 0.5), tol.tol_char, false);
  return r;
}

inline ThetaDeltaReport theta_delta_report(const ThetaContext& c, const Factorization& f, const GroupPresentation& pres,
                                           const BoundaryGrid& grid, const Tolerances& tol, const NTSequence& seq) {
  return theta_delta_report(c, [&](cplx z) { return f.delta(z); }, pres, grid, tol, tol.tol_id, seq);
}

// Boundary data w(t0) = w0, w'(t0) = w0p with ratio = t0 w0p / w0 (real, nonnegative).
struct BoundaryDatum {
  cplx w0{1.0, 0.0};
  cplx w0p{0.0, 0.0};
  double ratio = 0.0;

  static BoundaryDatum from_ratio(cplx w0, double ratio, cplx t0) { return {w0, ratio * w0 / t0, ratio}; }

  void validate(cplx t0, double tol_alg = 1e-12) const {
    if (!is_unimodular(w0, tol_alg)) throw Error(ErrorKind::ConfigError, "w0 is not unimodular");
    const cplx q = t0 * w0p * std::conj(w0);
    if (std::abs(q.imag()) > 1e-9 * std::max(1.0, std::abs(q)) || std::abs(q.real() - ratio) > 1e-9 * std::max(1.0, ratio))
      throw Error(ErrorKind::ConfigError, "t0 w0p / w0 must equal the real ratio");
    if (ratio < 0.0) throw Error(ErrorKind::InfeasibleDatum, "negative angular derivative ratio");
  }
};

// Automorphism of the disk fixing +-t0 whose angular derivative at t0 is lambda, in (0, inf).
inline cplx fixed_pair_automorphism(double lambda, cplx t0, cplx z) {
  const double s = (1.0 - lambda) / (1.0 + lambda);
  const cplx x = std::conj(t0) * z;
  return t0 * (x + s) / (s * x + 1.0);
}

struct Interpolant {
  ThetaContext ctx;
  Factorization fact;
  BoundaryDatum datum;
  double bound = 0.0;
  double lambda = 0.0;
  cplx f0{1.0, 0.0};
  cplx delta_t0{1.0, 0.0};
  // measured properties of w
  cplx value_t0;
  double ratio_t0 = 0.0;
  double sup_abs = 0.0;

  cplx classical(cplx z) const {
    if (lambda == 0.0) return f0;
    return f0 * std::conj(ctx.t0()) * fixed_pair_automorphism(lambda, ctx.t0(), z);
  }
  cplx operator()(cplx z) const {
    return poincare_theta(ctx, [this](cplx x) { return fact.delta(x) * classical(x); }, z);
  }
};

// w = P^alpha(Delta f) with f a classical Schur function carrying the remaining angular derivative.
inline Interpolant construct_interpolant(const ThetaContext& c, const Factorization& fact, const BoundaryDatum& datum,
                                         const Tolerances& tol, const NTSequence& seq) {
  datum.validate(c.t0());
  Interpolant w;
  w.ctx = c;
  w.fact = fact;
  w.datum = datum;
  const BoundaryDerivative bd = boundary_derivative([&](cplx z) { return fact.delta(z); }, c.t0(), seq.k_min, seq.k_max);
  w.bound = bd.ratio;
  w.delta_t0 = bd.value / std::abs(bd.value);
  if (datum.ratio < w.bound - tol.tol_limit)
    throw Error(ErrorKind::InfeasibleDatum, "ratio " + std::to_string(datum.ratio) + " below bound " + std::to_string(w.bound));
  w.lambda = std::max(0.0, datum.ratio - w.bound);
  w.f0 = datum.w0 * std::conj(w.delta_t0);

  const AngularLimits al = angular_limits([&](cplx z) { return w(z); }, seq);
  w.value_t0 = al.value;
  w.ratio_t0 = (c.t0() * al.derivative / al.value).real();
  for (cplx z : interior_samples(200, 0.95)) w.sup_abs = std::max(w.sup_abs, std::abs(w(z)));
  return w;
}

}  // namespace ahardy
