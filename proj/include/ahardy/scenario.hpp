#pragma once

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ahardy/group.hpp"
#include "ahardy/limits.hpp"

namespace ahardy {

using json = nlohmann::json;

struct Scenario {
  std::string name = "scenario";
  GroupPresentation presentation;
  cplx t0{1.0, 0.0};
  std::optional<cplx> zeta0;
  int lattice_K = 16;
  std::vector<Character> characters;  // explicit list; empty means use the lattice
  Character beta;
  int truncation = 10;
  std::size_t N = 2048;
  std::size_t M = 512;
  int k_min = 3;
  int k_max = 14;
  double margin = 0.1;
  double ratio_offset = 1.0;
  std::size_t probes = 16;
  std::uint64_t seed = 7;
  Tolerances tol;
  json source;  // document after overrides

  NTSequence sequence() const { return {t0, k_min, k_max}; }
};

namespace detail {

[[noreturn]] inline void config_error(const std::string& field, const std::string& msg) {
  throw Error(ErrorKind::ConfigError, "field '" + field + "': " + msg);
}

inline cplx parse_complex(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) config_error(field, "expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline double parse_real(const json& j, const std::string& field) {
  if (!j.is_number()) config_error(field, "expected a number");
  return j.get<double>();
}

inline long long parse_int(const json& j, const std::string& field) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) config_error(field, "expected an integer");
  return j.get<long long>();
}

inline MoebiusMap parse_map(const json& j, const std::string& field, double tol_alg) {
  if (!j.is_object()) config_error(field, "expected an object");
  try {
    if (j.contains("shift")) return MoebiusMap::real_shift(parse_real(j["shift"], field + ".shift"));
    if (!j.contains("a") || !j.contains("b")) config_error(field, "expected keys a and b");
    return MoebiusMap(parse_complex(j["a"], field + ".a"), parse_complex(j["b"], field + ".b"), tol_alg);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigError) throw;
    config_error(field, e.what());
  }
}

inline Character parse_character(const json& j, const GroupPresentation& p, const std::string& field, double tol_alg) {
  if (!j.is_object()) config_error(field, "expected an object keyed by generator name");
  Character c = Character::identity(p.rank());
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::size_t g = p.rank();
    for (std::size_t i = 0; i < p.rank(); ++i)
      if (p.generators[i].name == it.key()) g = i;
    if (g == p.rank()) config_error(field + "." + it.key(), "unknown generator");
    c.values[g] = parse_complex(it.value(), field + "." + it.key());
  }
  try {
    c.validate(tol_alg);
  } catch (const Error& e) {
    config_error(field, e.what());
  }
  return c;
}

inline void parse_tolerances(const json& j, Tolerances& t) {
  if (!j.is_object()) config_error("tolerances", "expected an object");
  const std::pair<const char*, double*> fields[] = {
      {"tol_alg", &t.tol_alg},           {"tol_map", &t.tol_map},     {"tol_series", &t.tol_series},
      {"tol_smalloh", &t.tol_smalloh},   {"tol_fact", &t.tol_fact},   {"tol_char", &t.tol_char},
      {"tol_limit", &t.tol_limit},       {"tol_id", &t.tol_id},       {"tol_id_exact", &t.tol_id_exact},
      {"tol_slack", &t.tol_slack},       {"tol_slack_exact", &t.tol_slack_exact},
      {"tol_auto", &t.tol_auto},         {"tol_auto_truncated", &t.tol_auto_truncated},
      {"tol_orth", &t.tol_orth},   {"tol_dct", &t.tol_dct},
      {"svd_threshold", &t.svd_threshold}};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const auto& [name, ptr] : fields)
      if (it.key() == name) {
        *ptr = parse_real(it.value(), std::string("tolerances.") + name);
        if (!(*ptr > 0.0)) config_error(std::string("tolerances.") + name, "must be positive");
        known = true;
      }
    if (!known) config_error("tolerances." + it.key(), "unknown tolerance");
  }
}

inline std::string line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

// Sets a dotted path (array indices as numbers) to a value parsed as JSON, or as a string if that fails.
inline void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::ConfigError, "override '" + assignment + "' is not key=value");
  const std::string key = assignment.substr(0, eq), raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  json* node = &doc;
  std::stringstream ss(key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string& p = parts[i];
    const bool last = i + 1 == parts.size();
    if (node->is_array()) {
      char* end = nullptr;
      const unsigned long idx = std::strtoul(p.c_str(), &end, 10);
      if (*end != '\0' || idx >= node->size()) throw Error(ErrorKind::ConfigError, "override path '" + key + "': bad index " + p);
      node = &(*node)[idx];
    } else {
      if (!node->is_object() && !node->is_null()) throw Error(ErrorKind::ConfigError, "override path '" + key + "' crosses a scalar");
      node = &(*node)[p];
    }
    if (last) *node = value;
  }
}

inline Scenario parse_scenario(const json& doc) {
  using namespace detail;
  if (!doc.is_object()) config_error("<root>", "expected an object");
  Scenario s;
  s.source = doc;
  if (doc.contains("tolerances")) parse_tolerances(doc["tolerances"], s.tol);
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) config_error("name", "expected a string");
    s.name = doc["name"].get<std::string>();
  }

  if (!doc.contains("presentation")) config_error("presentation", "missing");
  const json& pj = doc["presentation"];
  if (!pj.is_object() || !pj.contains("generators") || !pj["generators"].is_array())
    config_error("presentation.generators", "expected an array");
  for (std::size_t i = 0; i < pj["generators"].size(); ++i) {
    const json& g = pj["generators"][i];
    const std::string field = "presentation.generators[" + std::to_string(i) + "]";
    std::string name = "g" + std::to_string(i + 1);
    if (g.is_object() && g.contains("name")) {
      if (!g["name"].is_string()) config_error(field + ".name", "expected a string");
      name = g["name"].get<std::string>();
    }
    s.presentation.generators.push_back({name, parse_map(g, field, s.tol.tol_alg)});
  }
  if (pj.contains("assume_free")) {
    if (!pj["assume_free"].is_boolean()) config_error("presentation.assume_free", "expected a boolean");
    s.presentation.assume_free = pj["assume_free"].get<bool>();
  }
  try {
    s.presentation.validate(s.tol.tol_alg);
  } catch (const Error& e) {
    config_error("presentation.generators", e.what());
  }

  if (!doc.contains("t0")) config_error("t0", "missing");
  s.t0 = parse_complex(doc["t0"], "t0");
  if (!is_unimodular(s.t0, s.tol.tol_alg)) config_error("t0", "must be unimodular");
  if (doc.contains("zeta0")) {
    s.zeta0 = parse_complex(doc["zeta0"], "zeta0");
    if (!(std::abs(*s.zeta0) < 1.0)) config_error("zeta0", "must lie in the open disk");
  }

  s.beta = Character::identity(s.presentation.rank());
  if (doc.contains("beta")) s.beta = parse_character(doc["beta"], s.presentation, "beta", s.tol.tol_alg);
  if (doc.contains("characters")) {
    const json& cj = doc["characters"];
    if (cj.is_object() && cj.contains("lattice")) {
      s.lattice_K = static_cast<int>(parse_int(cj["lattice"], "characters.lattice"));
      if (s.lattice_K < 1) config_error("characters.lattice", "must be positive");
    } else if (cj.is_array()) {
      for (std::size_t i = 0; i < cj.size(); ++i)
        s.characters.push_back(parse_character(cj[i], s.presentation, "characters[" + std::to_string(i) + "]", s.tol.tol_alg));
    } else {
      config_error("characters", "expected {\"lattice\": K} or a list of characters");
    }
  }

  if (doc.contains("truncation")) s.truncation = static_cast<int>(parse_int(doc["truncation"], "truncation"));
  if (s.truncation < 0) config_error("truncation", "must be nonnegative");
  if (doc.contains("grid")) s.N = static_cast<std::size_t>(parse_int(doc["grid"], "grid"));
  if (s.N == 0 || (s.N & (s.N - 1)) != 0) config_error("grid", "must be a power of two");
  if (doc.contains("coeff")) s.M = static_cast<std::size_t>(parse_int(doc["coeff"], "coeff"));
  if (s.M == 0 || 2 * s.M >= s.N) config_error("coeff", "must satisfy 0 < M < N/2");
  if (doc.contains("radii")) {
    const json& r = doc["radii"];
    if (!r.is_object()) config_error("radii", "expected {\"k_min\": .., \"k_max\": ..}");
    if (r.contains("k_min")) s.k_min = static_cast<int>(parse_int(r["k_min"], "radii.k_min"));
    if (r.contains("k_max")) s.k_max = static_cast<int>(parse_int(r["k_max"], "radii.k_max"));
    if (s.k_min < 1 || s.k_max < s.k_min + 3 || s.k_max > 40) config_error("radii", "need 1 <= k_min, k_min + 3 <= k_max <= 40");
  }
  if (doc.contains("margin")) s.margin = parse_real(doc["margin"], "margin");
  if (!(s.margin >= 0.0 && s.margin < 1.0)) config_error("margin", "must lie in [0, 1)");
  if (doc.contains("ratio_offset")) s.ratio_offset = parse_real(doc["ratio_offset"], "ratio_offset");
  if (!(s.ratio_offset >= 0.0)) config_error("ratio_offset", "must be nonnegative");
  if (doc.contains("probes")) s.probes = static_cast<std::size_t>(parse_int(doc["probes"], "probes"));
  if (doc.contains("seed")) s.seed = static_cast<std::uint64_t>(parse_int(doc["seed"], "seed"));
  return s;
}

inline Scenario load_scenario_text(const std::string& text, const std::vector<std::string>& overrides = {}) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ConfigError, "malformed JSON at " + detail::line_of(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
  }
  for (const auto& o : overrides) apply_override(doc, o);
  return parse_scenario(doc);
}

inline Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides = {}) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open scenario file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_scenario_text(ss.str(), overrides);
}

}  // namespace ahardy
