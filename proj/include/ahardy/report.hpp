#pragma once

#include <cstdio>
#include <filesystem>

#include "ahardy/kernels.hpp"
#include "ahardy/scenario.hpp"

namespace ahardy {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_json(std::string& out, const json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        write_json(out, it.value(), indent, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& v : j)
        if (v.is_structured()) flat = false;
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write_json(out, j[i], indent, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write_json(out, j[i], indent, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace detail

// Deterministic text: sorted keys, floats at 17 significant digits.
inline std::string to_text(const json& j) {
  std::string s;
  detail::write_json(s, j, 2, 0);
  s += "\n";
  return s;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::FILE* f = std::fopen(path.string().c_str(), "wb");
  if (!f) throw Error(ErrorKind::ConfigError, "cannot write " + path.string());
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
}

inline void write_json_file(const std::filesystem::path& path, const json& j) { write_text(path, to_text(j)); }

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : cols_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) text_ += (i ? "," : "") + header[i];
    text_ += "\n";
  }
  CsvWriter& cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return raw(buf);
  }
  CsvWriter& cell(const std::string& s) { return raw(s); }
  CsvWriter& cell(cplx z) { return cell(z.real()).cell(z.imag()); }
  void save(const std::filesystem::path& path) const { write_text(path, text_); }
  const std::string& text() const { return text_; }

 private:
  CsvWriter& raw(const std::string& s) {
    text_ += (col_ ? "," : "") + s;
    if (++col_ == cols_) {
      text_ += "\n";
      col_ = 0;
    }
    return *this;
  }
  std::size_t cols_;
  std::size_t col_ = 0;
  std::string text_;
};

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Stage products stored as <dir>/cache/<stage>-<hash>.json.
class StageCache {
 public:
  explicit StageCache(std::filesystem::path dir) : dir_(std::move(dir) / "cache") {}

  std::optional<json> load(const std::string& stage, const std::string& key) const {
    const auto p = path(stage, key);
    std::ifstream in(p);
    if (!in) return std::nullopt;
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.contains("key") || j["key"] != key) return std::nullopt;
    return j["value"];
  }
  void store(const std::string& stage, const std::string& key, const json& value) const {
    write_json_file(path(stage, key), json{{"key", key}, {"value", value}});
  }

 private:
  std::filesystem::path path(const std::string& stage, const std::string& key) const {
    return dir_ / (stage + "-" + hex64(fnv1a(key)) + ".json");
  }
  std::filesystem::path dir_;
};

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

inline json to_json(const MoebiusMap& m) { return {{"a", to_json(m.a())}, {"b", to_json(m.b())}}; }

inline json to_json(const Character& c, const GroupPresentation& p) {
  json j = json::object();
  for (std::size_t i = 0; i < c.values.size(); ++i) j[p.generators[i].name] = to_json(c.values[i]);
  return j;
}

inline json to_json(const SeriesReport& r, bool with_partials = false) {
  json j{{"value", r.value}, {"tail_estimate", r.tail_estimate}, {"converged", r.converged}};
  if (with_partials) j["partial_sums"] = r.partial_sums;
  return j;
}

inline json to_json(const std::vector<cplx>& v) {
  json a = json::array();
  for (cplx z : v) a.push_back(to_json(z));
  return a;
}

inline std::vector<cplx> complex_list_from_json(const json& j) {
  std::vector<cplx> v;
  for (const auto& x : j) v.push_back(complex_from_json(x));
  return v;
}

inline json solution_to_json(const KernelSolution& s) {
  return {{"coeffs", to_json(s.h.coeffs)},
          {"objective", s.objective},
          {"automorphy_residual", s.automorphy_residual},
          {"orthogonality_residual", s.orthogonality_residual},
          {"word2_residual", s.word2_residual},
          {"rank", s.rank},
          {"rows", s.rows},
          {"sigma_max", s.sigma_max},
          {"sigma_min_kept", s.sigma_min_kept}};
}

inline KernelSolution solution_from_json(const json& j) {
  KernelSolution s;
  s.h.coeffs = complex_list_from_json(j.at("coeffs"));
  s.objective = j.at("objective").get<double>();
  s.automorphy_residual = j.at("automorphy_residual").get<double>();
  s.orthogonality_residual = j.at("orthogonality_residual").get<double>();
  s.word2_residual = j.at("word2_residual").get<double>();
  s.rank = j.at("rank").get<std::size_t>();
  s.rows = j.at("rows").get<std::size_t>();
  s.sigma_max = j.at("sigma_max").get<double>();
  s.sigma_min_kept = j.at("sigma_min_kept").get<double>();
  return s;
}

}  // namespace ahardy
