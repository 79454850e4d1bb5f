#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace ahardy {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class ErrorKind {
  InvalidMap,
  PoleAtInput,
  EllipticGenerator,
  IdentityGenerator,
  IndexOutOfRange,
  BoundaryFixedPoint,
  OrbitPointCollision,
  NotInverseClosed,
  ZeroOnBoundary,
  AtomCollision,
  NonFiniteSample,
  DispersionTooLarge,
  DenominatorVanishes,
  AssumptionFailed,
  InfeasibleDatum,
  RankDeficient,
  NoConvergence,
  BoundViolated,
  Divergent,
  NotSchur,
  NotAutomorphic,
  CJFailed,
  ConfigError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidMap: return "InvalidMap";
    case ErrorKind::PoleAtInput: return "PoleAtInput";
    case ErrorKind::EllipticGenerator: return "EllipticGenerator";
    case ErrorKind::IdentityGenerator: return "IdentityGenerator";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::BoundaryFixedPoint: return "BoundaryFixedPoint";
    case ErrorKind::OrbitPointCollision: return "OrbitPointCollision";
    case ErrorKind::NotInverseClosed: return "NotInverseClosed";
    case ErrorKind::ZeroOnBoundary: return "ZeroOnBoundary";
    case ErrorKind::AtomCollision: return "AtomCollision";
    case ErrorKind::NonFiniteSample: return "NonFiniteSample";
    case ErrorKind::DispersionTooLarge: return "DispersionTooLarge";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::AssumptionFailed: return "AssumptionFailed";
    case ErrorKind::InfeasibleDatum: return "InfeasibleDatum";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BoundViolated: return "BoundViolated";
    case ErrorKind::Divergent: return "Divergent";
    case ErrorKind::NotSchur: return "NotSchur";
    case ErrorKind::NotAutomorphic: return "NotAutomorphic";
    case ErrorKind::CJFailed: return "CJFailed";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Numerical tolerances shared by every module; all overridable from a scenario.
struct Tolerances {
  double tol_alg = 1e-12;
  double tol_map = 1e-9;
  double tol_series = 1e-8;
  double tol_smalloh = 1e-3;
  double tol_fact = 1e-3;
  double tol_char = 1e-3;
  double tol_limit = 1e-2;
  double tol_id = 1e-2;
  double tol_id_exact = 1e-8;
  double tol_slack = 1e-2;
  double tol_slack_exact = 1e-6;
  double tol_auto = 1e-6;
  double tol_auto_truncated = 1e-3;  // theta-series functions on a finite truncation
  double tol_orth = 1e-6;
  double tol_dct = 1e-2;
  double svd_threshold = 1e-8;
};

inline bool is_unimodular(cplx z, double tol) { return std::abs(std::abs(z) - 1.0) <= tol; }

inline cplx unit(double theta) { return std::polar(1.0, theta); }

}  // namespace ahardy
