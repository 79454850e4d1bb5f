#pragma once

#include <algorithm>
#include <map>

#include "ahardy/moebius.hpp"

namespace ahardy {

struct Generator {
  std::string name;
  MoebiusMap map;
};

// Free (Schottky-type) presentation; no relations.
struct GroupPresentation {
  std::vector<Generator> generators;
  bool assume_free = true;

  std::size_t rank() const { return generators.size(); }

  void validate(double tol_alg = 1e-12) const {
    for (const auto& g : generators) {
      if (std::abs(g.map.det() - 1.0) > tol_alg)
        throw Error(ErrorKind::InvalidMap, "generator " + g.name + " is not normalized");
      const MapClass c = classify(g.map, tol_alg);
      if (c.kind == MapKind::identity)
        throw Error(ErrorKind::IdentityGenerator, "generator " + g.name + " is the identity");
      if (c.kind == MapKind::elliptic)
        throw Error(ErrorKind::EllipticGenerator, "generator " + g.name + " is elliptic");
    }
  }
};

// Letters are signed 1-based generator indices: +i is g_i, -i its inverse.
using Word = std::vector<int>;

inline std::string word_string(const GroupPresentation& p, const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += '.';
    const int i = std::abs(w[k]) - 1;
    s += i < static_cast<int>(p.rank()) ? p.generators[i].name : "g" + std::to_string(i + 1);
    if (w[k] < 0) s += "^-1";
  }
  return s;
}

inline Word inverse_word(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& x : r) x = -x;
  return r;
}

inline Word reduce(Word w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

inline MoebiusMap word_map(const GroupPresentation& p, const Word& w) {
  MoebiusMap m;
  for (int x : w) {
    const std::size_t i = static_cast<std::size_t>(std::abs(x) - 1);
    if (x == 0 || i >= p.rank()) throw Error(ErrorKind::IndexOutOfRange, "letter " + std::to_string(x));
    m = m * (x > 0 ? p.generators[i].map : p.generators[i].map.inverse());
  }
  return m;
}

struct GroupElement {
  Word word;
  MoebiusMap map;
};

struct Truncation {
  std::vector<GroupElement> elements;  // by length, then lexicographic; identity first
  int max_word_length = 0;
  bool inverse_closed = true;
  std::vector<int> inverse_index;  // element index of the inverse map, -1 if absent
  std::vector<std::string> warnings;

  std::size_t size() const { return elements.size(); }
};

inline std::size_t free_word_count(std::size_t n, int L) {
  if (n == 0) return 1;
  std::size_t total = 1, shell = 2 * n;
  for (int l = 1; l <= L; ++l) {
    total += shell;
    shell *= (2 * n - 1);
  }
  return total;
}

// All freely reduced words of length <= L, deduplicated by map (the lexicographically
// smallest word survives).  Without inverse closure only positive letters are used.
inline Truncation enumerate(const GroupPresentation& p, int max_word_length, bool inverse_closed = true,
                            double tol_map = 1e-9) {
  if (max_word_length < 0) throw Error(ErrorKind::ConfigError, "max_word_length < 0");
  Truncation t;
  t.max_word_length = max_word_length;
  t.inverse_closed = inverse_closed;
  const int n = static_cast<int>(p.rank());
  std::vector<int> letters;
  for (int i = -n; i <= n; ++i)
    if (i != 0 && (inverse_closed || i > 0)) letters.push_back(i);

  t.elements.push_back({{}, MoebiusMap::identity()});
  std::vector<Word> frontier{{}};
  for (int len = 1; len <= max_word_length; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (int x : letters) {
        if (!w.empty() && w.back() == -x) continue;
        Word v = w;
        v.push_back(x);
        next.push_back(std::move(v));
      }
    for (const Word& w : next) {
      const MoebiusMap m = word_map(p, w);
      bool dup = false;
      for (const auto& e : t.elements)
        if (same_map(e.map, m, tol_map)) {
          dup = true;
          if (p.assume_free)
            t.warnings.push_back("CollisionWarning: " + word_string(p, w) + " equals " + word_string(p, e.word));
          break;
        }
      if (!dup) t.elements.push_back({w, m});
    }
    frontier = std::move(next);
  }

  t.inverse_index.assign(t.size(), -1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const MoebiusMap inv = t.elements[i].map.inverse();
    for (std::size_t j = 0; j < t.size(); ++j)
      if (same_map(t.elements[j].map, inv, tol_map)) {
        t.inverse_index[i] = static_cast<int>(j);
        break;
      }
  }
  if (inverse_closed)
    for (int j : t.inverse_index)
      if (j < 0) {
        t.inverse_closed = false;
        t.warnings.push_back("truncation is not closed under inversion");
        break;
      }
  return t;
}

// Unitary character: one unimodular value per generator.
struct Character {
  std::vector<cplx> values;

  static Character identity(std::size_t rank) { return {std::vector<cplx>(rank, cplx(1.0))}; }

  void validate(double tol_alg = 1e-12) const {
    for (cplx v : values)
      if (!is_unimodular(v, tol_alg)) throw Error(ErrorKind::ConfigError, "character value is not unimodular");
  }

  cplx operator()(const Word& w) const {
    cplx r(1.0);
    for (int x : w) {
      const std::size_t i = static_cast<std::size_t>(std::abs(x) - 1);
      if (x == 0 || i >= values.size()) throw Error(ErrorKind::IndexOutOfRange, "character index " + std::to_string(x));
      r *= x > 0 ? values[i] : std::conj(values[i]);
    }
    return r;
  }

  Character operator*(const Character& o) const {
    Character c{values};
    for (std::size_t i = 0; i < values.size() && i < o.values.size(); ++i) c.values[i] = values[i] * o.values[i];
    return c;
  }
};

inline cplx character_eval(const Character& chi, const GroupElement& g) { return chi(g.word); }

// Deterministic product lattice of characters exp(2 pi i k / K); K is reduced until K^rank <= cap.
struct CharacterLattice {
  int K = 16;
  std::vector<std::vector<int>> params;
  std::vector<Character> characters;

  std::size_t size() const { return characters.size(); }

  // Index of the character whose parameters are (params[i] + shift) mod K.
  std::size_t shifted(std::size_t i, const std::vector<int>& shift) const {
    std::size_t idx = 0;
    for (std::size_t g = 0; g < params[i].size(); ++g)
      idx = idx * K + static_cast<std::size_t>(((params[i][g] + shift[g]) % K + K) % K);
    return idx;
  }
};

inline CharacterLattice character_lattice(std::size_t rank, int K = 16, std::size_t cap = 4096) {
  CharacterLattice lat;
  if (rank > 0)
    while (K > 1 && std::pow(static_cast<double>(K), static_cast<double>(rank)) > static_cast<double>(cap)) --K;
  lat.K = K;
  std::size_t count = 1;
  for (std::size_t g = 0; g < rank; ++g) count *= static_cast<std::size_t>(K);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::vector<int> ks(rank);
    std::size_t r = idx;
    for (std::size_t g = rank; g-- > 0;) {
      ks[g] = static_cast<int>(r % K);
      r /= K;
    }
    Character c;
    for (int k : ks) c.values.push_back(unit(2.0 * pi * k / K));
    lat.params.push_back(ks);
    lat.characters.push_back(c);
  }
  return lat;
}

}  // namespace ahardy
