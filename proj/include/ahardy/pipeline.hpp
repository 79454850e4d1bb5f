#pragma once

#include "ahardy/caratheodory.hpp"
#include "ahardy/report.hpp"

namespace ahardy {

struct StageResult {
  json report;
  bool pass = true;
};

// Products shared by the stages of one scenario, built lazily and cached on disk by content hash.
class Pipeline {
 public:
  Pipeline(Scenario s, std::filesystem::path out) : s_(std::move(s)), out_(std::move(out)), cache_(out_) {}

  const Scenario& scenario() const { return s_; }
  const std::filesystem::path& out() const { return out_; }

  const Truncation& truncation() {
    if (!trunc_) trunc_ = enumerate(s_.presentation, s_.truncation, true, s_.tol.tol_map);
    return *trunc_;
  }
  const OrbitData& orbit() {
    if (!od_) od_ = orbit_data(truncation(), s_.t0, s_.tol);
    return *od_;
  }
  const BoundaryGrid& grid() {
    if (!grid_) grid_ = make_grid(s_.N, orbit().image, s_.tol.tol_map);
    return *grid_;
  }

  const Factorization& factorization() {
    if (fact_) return *fact_;
    const std::string key = group_key() + "|N=" + std::to_string(s_.N) + "|tol_map=" + format_double(s_.tol.tol_map);
    if (auto c = cache_.load("factor", key)) {
      Factorization f;
      f.od = orbit();
      f.zeros = complex_list_from_json(c->at("zeros"));
      f.kappa = c->at("kappa").get<double>();
      f.unimodular = complex_from_json(c->at("unimodular"));
      f.residual_inner = c->at("residual_inner").get<double>();
      f.residual_bound4 = c->at("residual_bound4").get<double>();
      f.residual_kappa = c->at("residual_kappa").get<double>();
      f.residual_sandwich = c->at("residual_sandwich").get<double>();
      f.residual_outer = c->at("residual_outer").get<double>();
      fact_ = std::move(f);
      return *fact_;
    }
    fact_ = factor_martin_derivative(orbit(), grid(), s_.tol);
    cache_.store("factor", key,
                 {{"zeros", to_json(fact_->zeros)},
                  {"kappa", fact_->kappa},
                  {"unimodular", to_json(fact_->unimodular)},
                  {"residual_inner", fact_->residual_inner},
                  {"residual_bound4", fact_->residual_bound4},
                  {"residual_kappa", fact_->residual_kappa},
                  {"residual_sandwich", fact_->residual_sandwich},
                  {"residual_outer", fact_->residual_outer}});
    return *fact_;
  }

  Evaluable delta() {
    const Factorization& f = factorization();
    return [&f](cplx z) { return f.delta(z); };
  }

  const BoundaryDerivative& delta_at_t0() {
    if (!bd_) bd_ = boundary_derivative(delta(), s_.t0, s_.k_min, s_.k_max);
    return *bd_;
  }

  CharacterLattice lattice() const {
    if (s_.characters.empty()) return character_lattice(s_.presentation.rank(), s_.lattice_K);
    CharacterLattice lat;
    lat.K = 0;
    for (std::size_t i = 0; i < s_.characters.size(); ++i) {
      lat.params.push_back({static_cast<int>(i)});
      lat.characters.push_back(s_.characters[i]);
    }
    return lat;
  }

  // The sweep always runs on the product lattice so that beta shifts stay on it.
  const LatticeSweep& sweep() {
    if (sweep_) return *sweep_;
    const CharacterLattice lat = character_lattice(s_.presentation.rank(), s_.lattice_K);
    const std::string key = kernel_key() + "|K=" + std::to_string(lat.K);
    if (auto c = cache_.load("sweep", key)) {
      LatticeSweep sw;
      sw.lattice = lat;
      for (const auto& j : *c) sw.solutions.push_back(solution_from_json(j));
      if (sw.solutions.size() == lat.size()) {
        sweep_ = std::move(sw);
        return *sweep_;
      }
    }
    sweep_ = sweep_boundary_kernels(s_.presentation, s_.t0, lat, s_.N, s_.M, s_.margin, s_.tol.svd_threshold);
    json arr = json::array();
    for (const auto& sol : sweep_->solutions) arr.push_back(solution_to_json(sol));
    cache_.store("sweep", key, arr);
    return *sweep_;
  }

  json scenario_summary() const {
    json gens = json::array();
    for (const auto& g : s_.presentation.generators) gens.push_back({{"name", g.name}, {"map", to_json(g.map)}});
    return {{"name", s_.name},
            {"generators", gens},
            {"t0", to_json(s_.t0)},
            {"truncation", s_.truncation},
            {"grid", s_.N},
            {"coeff", s_.M},
            {"lattice_K", s_.lattice_K},
            {"svd_threshold", s_.tol.svd_threshold}};
  }

 private:
  std::string group_key() const {
    std::string k = "L=" + std::to_string(s_.truncation) + "|t0=" + format_double(s_.t0.real()) + "," + format_double(s_.t0.imag());
    for (const auto& g : s_.presentation.generators)
      k += "|" + format_double(g.map.a().real()) + "," + format_double(g.map.a().imag()) + "," + format_double(g.map.b().real()) +
           "," + format_double(g.map.b().imag());
    return k;
  }
  std::string kernel_key() const {
    return group_key() + "|N=" + std::to_string(s_.N) + "|M=" + std::to_string(s_.M) + "|margin=" + format_double(s_.margin) +
           "|svd=" + format_double(s_.tol.svd_threshold);
  }

  Scenario s_;
  std::filesystem::path out_;
  StageCache cache_;
  std::optional<Truncation> trunc_;
  std::optional<OrbitData> od_;
  std::optional<BoundaryGrid> grid_;
  std::optional<Factorization> fact_;
  std::optional<BoundaryDerivative> bd_;
  std::optional<LatticeSweep> sweep_;
};

inline StageResult stage_check_group(Pipeline& P) {
  const Scenario& s = P.scenario();
  StageResult r;
  json gens = json::array();
  for (const auto& g : s.presentation.generators) {
    const MapClass c = classify(g.map, s.tol.tol_alg);
    gens.push_back({{"name", g.name},
                    {"map", to_json(g.map)},
                    {"kind", to_string(c.kind)},
                    {"trace_abs", c.trace_abs},
                    {"fixed_points", to_json(boundary_fixed_points(g.map, s.tol.tol_alg))}});
  }
  const Truncation& t = P.truncation();
  CsvWriter csv({"word", "length", "a_re", "a_im", "b_re", "b_im"});
  for (const auto& e : t.elements)
    csv.cell(word_string(s.presentation, e.word)).cell(static_cast<double>(e.word.size())).cell(e.map.a()).cell(e.map.b());
  csv.save(P.out() / "elements.csv");
  r.report = {{"stage", "check-group"},
              {"scenario", P.scenario_summary()},
              {"generators", gens},
              {"elements", t.size()},
              {"word_count_bound", free_word_count(s.presentation.rank(), s.truncation)},
              {"inverse_closed", t.inverse_closed},
              {"warnings", t.warnings}};
  r.pass = t.size() <= free_word_count(s.presentation.rank(), s.truncation);
  return r;
}

inline StageResult stage_orbit(Pipeline& P) {
  const Scenario& s = P.scenario();
  const OrbitData& od = P.orbit();
  StageResult r;
  const SeriesReport sum = orbit_sum_report(od, s.tol.tol_series);
  const SeriesReport w1 = widom_log_integral(od, s.N, s.tol.tol_series);
  const SmallOhReport so = assumption_smalloh_check(od, s.t0, dyadic_radii(s.k_min, s.k_max), s.tol.tol_smalloh);
  CsvWriter csv({"word", "image_re", "image_im", "deriv_re", "deriv_im", "absderiv"});
  const Truncation& t = P.truncation();
  for (std::size_t k = 0; k < od.size(); ++k)
    csv.cell(word_string(s.presentation, t.elements[k].word)).cell(od.image[k]).cell(od.deriv[k]).cell(od.absderiv[k]);
  csv.save(P.out() / "orbit.csv");
  r.report = {{"stage", "orbit"},
              {"scenario", P.scenario_summary()},
              {"orbit_sum", to_json(sum, true)},
              {"shell_sums", od.shell_sums},
              {"widom_log_integral", to_json(w1, true)},
              {"boundary_sum_antipode", boundary_sum(od, -s.t0, s.tol.tol_map)},
              {"smalloh", {{"radii", so.radii}, {"q", so.q}, {"converged", so.converged}}}};
  r.pass = std::isfinite(w1.value);
  return r;
}

inline StageResult stage_martin(Pipeline& P) {
  const Scenario& s = P.scenario();
  const OrbitData& od = P.orbit();
  const Truncation& t = P.truncation();
  StageResult r;
  CsvWriter csv({"r", "z_re", "z_im", "m_re", "m_im", "mp_re", "mp_im", "mp_zeta_re", "mp_zeta_im"});
  double worst = 0.0;
  std::vector<double> radii;
  for (int j = 0; j < 64; ++j) radii.push_back(static_cast<double>(j) / 64.0);
  for (double rad : dyadic_radii(s.k_min, s.k_max)) radii.push_back(rad);
  for (double rad : radii) {
    const cplx z = rad * s.t0;
    const cplx a = martin_derivative(od, t, z, DerivativeForm::at_t0);
    const cplx b = martin_derivative(od, t, z, DerivativeForm::at_zeta);
    worst = std::max(worst, std::abs(a - b) / std::abs(a));
    csv.cell(rad).cell(z).cell(martin(od, z)).cell(a).cell(b);
  }
  csv.save(P.out() / "martin.csv");
  const SeriesReport sum = orbit_sum_report(od, s.tol.tol_series);
  r.report = {{"stage", "martin"},
              {"scenario", P.scenario_summary()},
              {"orbit_sum", to_json(sum)},
              {"tail_estimate", od.tail_estimate},
              {"martin_at_0", to_json(martin(od, 0.0))},
              {"form_max_rel_dev", worst}};
  r.pass = worst <= s.tol.tol_series;
  return r;
}

inline StageResult stage_factor(Pipeline& P) {
  const Scenario& s = P.scenario();
  const Factorization& f = P.factorization();
  const BoundaryGrid& g = P.grid();
  StageResult r;
  const FactorizationCheck chk = check_factorization(f, s.tol);
  const CharacterEstimate dc = delta_character(f, s.presentation, interior_samples(32, 0.5, s.seed), s.tol.tol_char, false);
  const PhiLimitReport pl = phi_limit_check(f, s.t0, dyadic_radii(s.k_min, s.k_max), s.tol.tol_limit);
  const BoundaryDerivative& bd = P.delta_at_t0();
  CsvWriter csv({"t_re", "t_im", "abs_mprime", "abs_phi", "abs_delta"});
  for (cplx t : g.points) csv.cell(t).cell(std::abs(f.mprime(t))).cell(std::abs(f.phi(t))).cell(std::abs(f.delta(t)));
  csv.save(P.out() / "factor.csv");
  r.report = {{"stage", "factor"},
              {"scenario", P.scenario_summary()},
              {"zeros", f.zeros.size()},
              {"kappa", f.kappa},
              {"residual_inner", f.residual_inner},
              {"residual_bound4", f.residual_bound4},
              {"residual_kappa", f.residual_kappa},
              {"residual_sandwich", f.residual_sandwich},
              {"residual_outer", f.residual_outer},
              {"checks", {{"bound4", chk.bound4}, {"inner", chk.inner}, {"sandwich", chk.sandwich}, {"outer", chk.outer}}},
              {"delta_character", to_json(dc.character, s.presentation)},
              {"delta_character_dispersion", dc.dispersion},
              {"delta_t0", to_json(bd.value)},
              {"delta_prime_t0", to_json(bd.derivative)},
              {"bound", bd.ratio},
              {"frostman_sum", f.frostman_sum(s.t0)},
              {"phi_limit", {{"limit", to_json(pl.limit)}, {"first_order", to_json(pl.first_order)}, {"converged", pl.converged}}}};
  r.pass = chk.pass();
  return r;
}

inline json to_json(const ThetaDeltaReport& t) {
  return {{"sup_abs", t.sup_abs},
          {"delta_t0", to_json(t.delta_t0)},
          {"delta_prime", to_json(t.delta_prime)},
          {"theta_t0", to_json(t.theta_t0)},
          {"theta_prime", to_json(t.theta_prime)},
          {"bound", t.bound},
          {"integral1", t.integral1},
          {"integral2", t.integral2},
          {"identity_residual", t.identity_residual},
          {"divided_difference_norm", t.divided_difference_norm},
          {"divided_difference_norm_refined", t.divided_difference_norm_refined},
          {"pass_sup", t.pass_sup},
          {"pass_limits", t.pass_limits},
          {"pass_identity", t.pass_identity}};
}

inline StageResult stage_theta(Pipeline& P) {
  const Scenario& s = P.scenario();
  const Factorization& f = P.factorization();
  StageResult r;
  const CharacterLattice lat = P.lattice();
  std::vector<json> rows(lat.size());
  std::vector<char> ok(lat.size(), 0);
  parallel_for(lat.size(), [&](std::size_t i) {
    const ThetaContext c = make_theta_context(P.truncation(), P.orbit(), lat.characters[i]);
    const ThetaDeltaReport t = theta_delta_report(c, f, s.presentation, P.grid(), s.tol, s.sequence());
    rows[i] = to_json(t);
    rows[i]["alpha"] = to_json(lat.characters[i], s.presentation);
    rows[i]["measured_character"] = to_json(t.measured.character, s.presentation);
    ok[i] = t.pass();
  });
  for (char o : ok) r.pass = r.pass && o;
  r.report = {{"stage", "theta"}, {"scenario", P.scenario_summary()}, {"characters", rows}};
  return r;
}

inline StageResult stage_kernel(Pipeline& P) {
  const Scenario& s = P.scenario();
  const LatticeSweep& sw = P.sweep();
  StageResult r;
  std::vector<std::string> header;
  for (const auto& g : s.presentation.generators) header.push_back("k_" + g.name);
  for (const char* h : {"objective", "automorphy_residual", "orthogonality_residual", "word2_residual", "rank"}) header.push_back(h);
  CsvWriter csv(header);
  json rows = json::array();
  for (std::size_t i = 0; i < sw.lattice.size(); ++i) {
    const auto& sol = sw.solutions[i];
    for (int k : sw.lattice.params[i]) csv.cell(static_cast<double>(k));
    csv.cell(sol.objective).cell(sol.automorphy_residual).cell(sol.orthogonality_residual).cell(sol.word2_residual).cell(static_cast<double>(sol.rank));
    rows.push_back({{"params", sw.lattice.params[i]},
                    {"objective", sol.objective},
                    {"automorphy_residual", sol.automorphy_residual},
                    {"orthogonality_residual", sol.orthogonality_residual},
                    {"word2_residual", sol.word2_residual}});
    r.pass = r.pass && sol.automorphy_residual <= s.tol.tol_auto && sol.orthogonality_residual <= s.tol.tol_orth;
  }
  csv.save(P.out() / "kernels.csv");
  r.report = {{"stage", "kernel"},
              {"scenario", P.scenario_summary()},
              {"lattice_note", "finite product lattice exp(2 pi i k/K) sampling the character torus"},
              {"lattice_K", sw.lattice.K},
              {"characters", rows}};
  return r;
}

inline StageResult stage_np_bound(Pipeline& P) {
  const Scenario& s = P.scenario();
  StageResult r;
  const cplx z0 = s.zeta0.value_or(0.0);
  const NPBound nb = np_bound(s.presentation, s.beta, z0, s.lattice_K, s.N, s.M, s.margin, s.tol.svd_threshold);
  r.report = {{"stage", "np-bound"},
              {"scenario", P.scenario_summary()},
              {"zeta0", to_json(z0)},
              {"beta", to_json(s.beta, s.presentation)},
              {"value", nb.value},
              {"argmin", nb.argmin},
              {"k_alpha", nb.k_alpha},
              {"k_beta_alpha", nb.k_beta_alpha},
              {"lattice_note", "infimum over a finite character lattice"}};
  r.pass = nb.value >= -s.tol.tol_alg && nb.value <= 1.0 + s.tol.tol_fact;
  return r;
}

inline json to_json(const UpperBoundReport& ub) {
  json rows = json::array();
  for (const auto& row : ub.rows)
    rows.push_back({{"params", row.params}, {"objective", row.objective}, {"candidate", row.candidate}, {"pass", row.pass}});
  return {{"bound", ub.bound}, {"delta_t0", to_json(ub.delta_t0)}, {"rows", rows}, {"pass", ub.pass}};
}

inline StageResult stage_cj(Pipeline& P) {
  const Scenario& s = P.scenario();
  StageResult r;
  const LatticeSweep& sw = P.sweep();
  const CJLowerBound lb = cj_lower_bound(sw, s.beta);
  const UpperBoundReport ub =
      kernel_upper_bound_check(P.truncation(), P.orbit(), P.delta(), sw, P.grid(), s.sequence(), s.tol.tol_id, false);
  r.report = {{"stage", "cj"},
              {"scenario", P.scenario_summary()},
              {"beta", to_json(s.beta, s.presentation)},
              {"lower_bound", lb.value},
              {"lower_bound_argmax", lb.argmax},
              {"sup_objective", lb.sup_objective},
              {"upper_bound_chain", to_json(ub)}};
  r.pass = ub.pass;
  return r;
}

inline json to_json(const CJReport& c) {
  return {{"d1", c.d1},
          {"d2", c.d2},
          {"d3", c.d3},
          {"d4", c.d4},
          {"w_t", to_json(c.w_t)},
          {"wp_t", to_json(c.wp_t)},
          {"ratio", c.ratio},
          {"ratio_imag", c.ratio_imag},
          {"mutual_max_dev", c.mutual_max_dev},
          {"integral1", c.integral1},
          {"integral2", c.integral2},
          {"identity_residual", c.identity_residual},
          {"stolz_angles", c.stolz_angles},
          {"stolz_limits", c.stolz_limits}};
}

inline StageResult stage_verify_main(Pipeline& P) {
  const Scenario& s = P.scenario();
  StageResult r;
  const ThetaContext c = make_theta_context(P.truncation(), P.orbit(), s.beta);
  const double bound = P.delta_at_t0().ratio;
  const Interpolant w =
      construct_interpolant(c, P.factorization(), BoundaryDatum::from_ratio(1.0, bound + s.ratio_offset, s.t0), s.tol, s.sequence());
  MainInequalityOptions mo;
  mo.tol_slack = s.tol.tol_slack;
  mo.tol_auto = s.presentation.rank() ? s.tol.tol_auto_truncated : s.tol.tol_auto;
  mo.tol_limit = s.tol.tol_limit;
  const MainInequalityReport mi = main_inequality_check([&](cplx z) { return w(z); }, s.beta, s.presentation, P.sweep(),
                                                        s.sequence(), P.grid(), mo);
  std::vector<std::string> header;
  for (const auto& g : s.presentation.generators) header.push_back("k_" + g.name);
  for (const char* h : {"objective_ab", "objective_a", "slack", "lhs"}) header.push_back(h);
  CsvWriter csv(header);
  for (const auto& row : mi.rows) {
    for (int k : row.params) csv.cell(static_cast<double>(k));
    csv.cell(row.objective_ab).cell(row.objective_a).cell(row.slack).cell(row.lhs);
  }
  csv.save(P.out() / "slack.csv");
  r.report = {{"stage", "verify-main"},
              {"scenario", P.scenario_summary()},
              {"beta", to_json(s.beta, s.presentation)},
              {"bound", bound},
              {"datum_ratio", bound + s.ratio_offset},
              {"interpolant", {{"lambda", w.lambda}, {"value_t0", to_json(w.value_t0)}, {"ratio_t0", w.ratio_t0}, {"sup_abs", w.sup_abs}}},
              {"cj", to_json(mi.cj)},
              {"automorphy_residual", mi.automorphy_residual},
              {"min_slack", mi.min_slack},
              {"min_lhs", mi.min_lhs},
              {"max_identity_gap", mi.max_identity_gap}};
  r.pass = mi.pass;
  return r;
}

inline StageResult stage_dct(Pipeline& P) {
  const Scenario& s = P.scenario();
  StageResult r;
  const CharacterEstimate dc =
      delta_character(P.factorization(), s.presentation, interior_samples(32, 0.5, s.seed), s.tol.tol_char, false);
  const DCTReport d = dct_test(P.delta(), P.delta_at_t0().value, dc.character, s.presentation, s.t0, s.N, s.M, s.margin,
                               s.tol.svd_threshold, s.probes, s.tol.tol_dct);
  const BoundComparison bc = bound_comparison(P.sweep(), P.delta_at_t0().ratio, &d, s.tol.tol_id);
  r.report = {{"stage", "dct"},
              {"scenario", P.scenario_summary()},
              {"delta_character", to_json(dc.character, s.presentation)},
              {"delta_character_dispersion", dc.dispersion},
              {"probe_residual", d.probe_residual},
              {"objective", d.objective},
              {"candidate_objective", d.candidate_objective},
              {"candidate_tail", d.candidate_tail},
              {"objective_distance", d.objective_distance},
              {"dct_pass", d.pass},
              {"comparison",
               {{"sup_objective", bc.sup_objective},
                {"bound", bc.bound},
                {"gap", bc.gap},
                {"includes_delta", bc.includes_delta},
                {"assertion_active", bc.assertion_active}}}};
  r.pass = bc.pass;
  return r;
}

}  // namespace ahardy
