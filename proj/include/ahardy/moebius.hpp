#pragma once

#include <array>
#include <optional>

#include "ahardy/common.hpp"

namespace ahardy {

// Disk automorphism z -> (a z + b) / (conj(b) z + conj(a)) with |a|^2 - |b|^2 = 1.
class MoebiusMap {
 public:
  MoebiusMap() = default;
  MoebiusMap(cplx a, cplx b, double tol_alg = 1e-12) : a_(a), b_(b) {
    if (std::abs(det() - 1.0) > tol_alg)
      throw Error(ErrorKind::InvalidMap, "|a|^2-|b|^2 = " + std::to_string(det()));
  }

  static MoebiusMap identity() { return {}; }

  // Hyperbolic map z -> (z + s)/(s z + 1) with fixed points +-1.
  static MoebiusMap real_shift(double s) {
    const double a = 1.0 / std::sqrt(1.0 - s * s);
    return {cplx(a), cplx(s * a)};
  }

  static MoebiusMap rotation(double theta) { return {unit(theta / 2), cplx(0.0)}; }

  // Rescales any (a,b) with |a|>|b| onto the unit-determinant sheet.
  static MoebiusMap normalized(cplx a, cplx b) {
    const double d = std::norm(a) - std::norm(b);
    if (!(d > 0.0)) throw Error(ErrorKind::InvalidMap, "|a| <= |b|");
    const double r = std::sqrt(d);
    MoebiusMap m;
    m.a_ = a / r;
    m.b_ = b / r;
    return m;
  }

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  double det() const { return std::norm(a_) - std::norm(b_); }

  cplx denominator(cplx z) const { return std::conj(b_) * z + std::conj(a_); }

  cplx apply(cplx z) const {
    const cplx d = denominator(z);
    if (std::abs(d) < 1e-12) throw Error(ErrorKind::PoleAtInput, "apply");
    return (a_ * z + b_) / d;
  }
  cplx operator()(cplx z) const { return apply(z); }

  cplx derivative(cplx z) const {
    const cplx d = denominator(z);
    if (std::abs(d) < 1e-12) throw Error(ErrorKind::PoleAtInput, "derivative");
    return 1.0 / (d * d);
  }

  MoebiusMap inverse() const {
    MoebiusMap m;
    m.a_ = std::conj(a_);
    m.b_ = -b_;
    return m;
  }

  // (this o other)(z) = this(other(z))
  MoebiusMap compose(const MoebiusMap& o) const {
    return normalized(a_ * o.a_ + b_ * std::conj(o.b_), a_ * o.b_ + b_ * std::conj(o.a_));
  }
  MoebiusMap operator*(const MoebiusMap& o) const { return compose(o); }

 private:
  cplx a_{1.0, 0.0};
  cplx b_{0.0, 0.0};
};

inline MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) { return m1.compose(m2); }
inline MoebiusMap inverse(const MoebiusMap& m) { return m.inverse(); }
inline cplx apply(const MoebiusMap& m, cplx z) { return m.apply(z); }
inline cplx derivative(const MoebiusMap& m, cplx z) { return m.derivative(z); }

// Equality of maps up to the global sign of (a,b).
inline double map_distance(const MoebiusMap& m1, const MoebiusMap& m2) {
  const double plus = std::max(std::abs(m1.a() - m2.a()), std::abs(m1.b() - m2.b()));
  const double minus = std::max(std::abs(m1.a() + m2.a()), std::abs(m1.b() + m2.b()));
  return std::min(plus, minus);
}

inline bool same_map(const MoebiusMap& m1, const MoebiusMap& m2, double tol_map = 1e-9) {
  return map_distance(m1, m2) <= tol_map;
}

enum class MapKind { identity, hyperbolic, parabolic, elliptic };

inline const char* to_string(MapKind k) {
  switch (k) {
    case MapKind::identity: return "identity";
    case MapKind::hyperbolic: return "hyperbolic";
    case MapKind::parabolic: return "parabolic";
    case MapKind::elliptic: return "elliptic";
  }
  return "?";
}

struct MapClass {
  MapKind kind;
  double trace_abs;
};

inline MapClass classify(const MoebiusMap& m, double tol_alg = 1e-12) {
  const double tr = std::abs(2.0 * m.a().real());
  if (std::abs(m.b()) <= tol_alg && std::abs(std::abs(m.a().real()) - 1.0) <= tol_alg &&
      std::abs(m.a().imag()) <= tol_alg)
    return {MapKind::identity, tr};
  if (std::abs(tr - 2.0) <= tol_alg) return {MapKind::parabolic, tr};
  return {tr > 2.0 ? MapKind::hyperbolic : MapKind::elliptic, tr};
}

// Fixed points on the circle of a hyperbolic or parabolic map (one repeated point if parabolic).
inline std::vector<cplx> boundary_fixed_points(const MoebiusMap& m, double tol_alg = 1e-12) {
  const MapClass c = classify(m, tol_alg);
  if (c.kind == MapKind::identity || c.kind == MapKind::elliptic) return {};
  // conj(b) z^2 + (conj(a) - a) z - b = 0, discriminant 4((Re a)^2 - 1)
  const double ra = m.a().real();
  const double disc = std::sqrt(std::max(ra * ra - 1.0, 0.0));
  const cplx cb = std::conj(m.b());
  const cplx z1 = (cplx(disc, m.a().imag())) / cb;
  const cplx z2 = (cplx(-disc, m.a().imag())) / cb;
  if (c.kind == MapKind::parabolic) return {z1};
  return {z1, z2};
}

}  // namespace ahardy
