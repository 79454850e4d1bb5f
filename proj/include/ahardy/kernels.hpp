#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <thread>

#include "ahardy/hardy.hpp"

namespace ahardy {

using MatrixXc = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXc = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

inline std::size_t thread_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("AHARDY_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
  }
  return n;
}

// Runs body(i) for i in [0, n) on up to thread_count() threads; results go to caller-owned slots.
template <class F>
void parallel_for(std::size_t n, F body) {
  const std::size_t T = std::min(thread_count(), n);
  if (T <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(T);
  for (std::size_t w = 0; w < T; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += T) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Boundary points to keep away from: fixed points of all words of length <= 2.
inline std::vector<cplx> limit_point_proxies(const GroupPresentation& p) {
  std::vector<cplx> pts;
  const Truncation t = enumerate(p, std::min<int>(2, p.rank() ? 2 : 0), true);
  for (const auto& e : t.elements)
    for (cplx z : boundary_fixed_points(e.map)) pts.push_back(z / std::abs(z));
  return pts;
}

struct KernelProblem {
  cplx t0{1.0, 0.0};
  Character alpha;
  GroupPresentation presentation;
  std::size_t N = 2048;  // constraint grid size
  std::size_t M = 512;   // coefficient count
  double margin = 0.1;
  double svd_threshold = 1e-8;
  std::vector<cplx> samples;                        // constraint sample points
  std::vector<std::pair<std::size_t, cplx>> rows;  // (generator, sample point)

  void validate() const {
    if (!is_unimodular(t0, 1e-12)) throw Error(ErrorKind::ConfigError, "t0 is not unimodular");
    if (alpha.values.size() != presentation.rank()) throw Error(ErrorKind::ConfigError, "character rank differs from presentation");
    if (2 * M >= N) throw Error(ErrorKind::ConfigError, "coefficient count must satisfy M < N/2");
  }
};

// Keeps the (generator, point) pairs whose point and image are both farther than margin from the limit-point proxies.
inline void assign_samples(KernelProblem& p, const std::vector<cplx>& points) {
  const auto lp = limit_point_proxies(p.presentation);
  auto clear = [&](cplx z) {
    for (cplx q : lp)
      if (std::abs(z - q) <= p.margin) return false;
    return true;
  };
  p.samples = points;
  p.rows.clear();
  for (std::size_t g = 0; g < p.presentation.rank(); ++g)
    for (cplx t : points) {
      const cplx gt = p.presentation.generators[g].map.apply(t);
      if (clear(t) && clear(gt)) p.rows.emplace_back(g, t);
    }
}

inline KernelProblem make_kernel_problem(const GroupPresentation& pres, cplx t0, const Character& alpha, std::size_t N,
                                         std::size_t M, double margin = 0.1, double svd_threshold = 1e-8) {
  KernelProblem p;
  p.t0 = t0;
  p.alpha = alpha;
  p.presentation = pres;
  p.N = N;
  p.M = M;
  p.margin = margin;
  p.svd_threshold = svd_threshold;
  p.validate();
  assign_samples(p, make_grid(N).points);
  return p;
}

// Rows of g(gamma t) - alpha(gamma) g(t) = 0 for g = 1 + (t - t0) h (boundary) or g = h (interior).
inline void assemble(const KernelProblem& p, bool boundary, MatrixXc& A, VectorXc& rhs) {
  const std::size_t R = p.rows.size(), M = p.M;
  A.resize(static_cast<Eigen::Index>(R), static_cast<Eigen::Index>(M));
  rhs.resize(static_cast<Eigen::Index>(R));
  for (std::size_t r = 0; r < R; ++r) {
    const auto [g, t] = p.rows[r];
    const cplx a = p.alpha.values[g];
    const cplx gt = p.presentation.generators[g].map.apply(t);
    cplx u = boundary ? gt - p.t0 : cplx(1.0);
    cplx v = boundary ? a * (t - p.t0) : a;
    for (std::size_t k = 0; k < M; ++k) {
      A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = u - v;
      u *= gt;
      v *= t;
    }
    rhs(static_cast<Eigen::Index>(r)) = boundary ? a - 1.0 : cplx(0.0);
  }
}

struct KernelSolution {
  HardyFunction h;
  double objective = 0.0;
  double automorphy_residual = 0.0;
  double orthogonality_residual = 0.0;
  double word2_residual = 0.0;
  std::size_t rank = 0;
  std::size_t rows = 0;
  double sigma_max = 0.0;
  double sigma_min_kept = 0.0;
  MatrixXc nullspace;  // filled only on request
};

struct SolveOptions {
  std::size_t probes = 16;
  bool keep_nullspace = false;
  bool reverse_rows = false;
};

inline bool is_identity_character(const Character& c) {
  for (cplx v : c.values)
    if (v != cplx(1.0)) return false;
  return true;
}

// Projected monomials: probes e_j pushed into the numerical null space, scored against x.
inline double nullspace_probe_residual(const MatrixXc& Vn, const VectorXc& x, std::size_t probes) {
  double worst = 0.0;
  if (Vn.cols() == 0) return 0.0;
  for (std::size_t j = 0; j < probes && static_cast<Eigen::Index>(j) < Vn.rows(); ++j) {
    const VectorXc q = Vn * Vn.row(static_cast<Eigen::Index>(j)).adjoint();
    const double nq = q.norm();
    if (nq < 1e-12) continue;
    worst = std::max(worst, std::abs(q.dot(x)) / nq);
  }
  return worst;
}

inline double word2_residual(const KernelProblem& p, const HardyFunction& h) {
  double worst = 0.0;
  const std::size_t n = p.presentation.rank();
  const auto lp = limit_point_proxies(p.presentation);
  auto clear = [&](cplx z) {
    for (cplx q : lp)
      if (std::abs(z - q) <= p.margin) return false;
    return true;
  };
  auto g = [&](cplx t) { return 1.0 + (t - p.t0) * h(t); };
  const std::size_t stride = std::max<std::size_t>(1, p.samples.size() / 256);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const MoebiusMap w = p.presentation.generators[i].map * p.presentation.generators[j].map;
      const cplx aw = p.alpha.values[i] * p.alpha.values[j];
      for (std::size_t s = 0; s < p.samples.size(); s += stride) {
        const cplx t = p.samples[s], wt = w.apply(t);
        if (!clear(t) || !clear(wt)) continue;
        worst = std::max(worst, std::abs(g(wt) - aw * g(t)));
      }
    }
  return worst;
}

// Minimum-norm least-squares solution of the sampled automorphy constraints, by truncated SVD.
inline KernelSolution solve_boundary_kernel(const KernelProblem& p, const SolveOptions& opt = {}) {
  p.validate();
  KernelSolution s;
  s.h.coeffs.assign(p.M, cplx(0.0));
  s.rows = p.rows.size();
  if (p.rows.empty() || is_identity_character(p.alpha)) return s;

  MatrixXc A;
  VectorXc b;
  assemble(p, true, A, b);
  if (opt.reverse_rows) {
    A = A.colwise().reverse().eval();
    b = b.reverse().eval();
  }
  Eigen::BDCSVD<MatrixXc> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  s.sigma_max = sv.size() ? sv(0) : 0.0;
  const double cut = p.svd_threshold * s.sigma_max;
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  s.rank = static_cast<std::size_t>(r);
  if (r == 0) throw Error(ErrorKind::RankDeficient, "constraint matrix has no singular value above threshold");
  s.sigma_min_kept = sv(r - 1);
  const VectorXc coef = (svd.matrixU().leftCols(r).adjoint() * b).cwiseQuotient(sv.head(r).cast<cplx>());
  const VectorXc x = svd.matrixV().leftCols(r) * coef;
  for (std::size_t k = 0; k < p.M; ++k) s.h.coeffs[k] = x(static_cast<Eigen::Index>(k));
  s.objective = x.squaredNorm();
  s.automorphy_residual = (A * x - b).cwiseAbs().maxCoeff();
  const MatrixXc Vn = svd.matrixV().rightCols(svd.matrixV().cols() - r);
  s.orthogonality_residual = nullspace_probe_residual(Vn, x, opt.probes);
  if (opt.keep_nullspace) s.nullspace = Vn;
  s.word2_residual = word2_residual(p, s.h);
  return s;
}

// k^alpha_{z0}(z0) = 1 / min ||f||^2 over automorphic f with f(z0) = 1, which is the squared norm of the
// projected Szego kernel.  The interpolation row is stacked on the homogeneous constraints and the
// system is solved in the minimum-norm least-squares sense by truncated SVD.
inline double interior_kernel_value(const KernelProblem& p, cplx z0) {
  if (std::abs(z0) >= 1.0) throw Error(ErrorKind::ConfigError, "z0 must lie in the open disk");
  const auto M = static_cast<Eigen::Index>(p.M);
  VectorXc v(M);
  cplx pw(1.0);
  for (Eigen::Index k = 0; k < M; ++k) {
    v(k) = pw;
    pw *= z0;
  }
  if (p.rows.empty()) return v.squaredNorm();
  MatrixXc A;
  VectorXc b;
  assemble(p, false, A, b);
  const Eigen::Index R = A.rows();
  MatrixXc S(R + 1, M);
  S.topRows(R) = A;
  S.row(R) = v.transpose();
  VectorXc rhs = VectorXc::Zero(R + 1);
  rhs(R) = 1.0;
  Eigen::BDCSVD<MatrixXc> svd(S, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cut = p.svd_threshold * sv(0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  const VectorXc x = svd.matrixV().leftCols(r) * (svd.matrixU().leftCols(r).adjoint() * rhs).cwiseQuotient(sv.head(r).cast<cplx>());
  const double n2 = x.squaredNorm();
  if (!(n2 > 0.0)) throw Error(ErrorKind::RankDeficient, "interior kernel system has no admissible solution");
  const cplx f0 = (v.transpose() * x).value();
  return std::norm(f0) / n2;
}

// Kernel objectives over a character lattice, computed concurrently and stored in lattice order.
struct LatticeSweep {
  CharacterLattice lattice;
  std::vector<KernelSolution> solutions;

  double objective(std::size_t i) const { return solutions[i].objective; }
};

inline LatticeSweep sweep_boundary_kernels(const GroupPresentation& pres, cplx t0, const CharacterLattice& lat, std::size_t N,
                                           std::size_t M, double margin = 0.1, double svd_threshold = 1e-8) {
  LatticeSweep sw;
  sw.lattice = lat;
  sw.solutions.resize(lat.size());
  parallel_for(lat.size(), [&](std::size_t i) {
    const KernelProblem p = make_kernel_problem(pres, t0, lat.characters[i], N, M, margin, svd_threshold);
    sw.solutions[i] = solve_boundary_kernel(p);
    sw.solutions[i].h.coeffs.shrink_to_fit();
  });
  return sw;
}

inline std::vector<int> character_shift(const CharacterLattice& lat, const Character& beta) {
  std::vector<int> shift;
  for (cplx v : beta.values) {
    const double k = std::arg(v) / (2.0 * pi) * lat.K;
    const long kr = std::lround(k);
    if (std::abs(k - static_cast<double>(kr)) > 1e-9)
      throw Error(ErrorKind::ConfigError, "character is not on the lattice");
    shift.push_back(static_cast<int>(kr));
  }
  return shift;
}

struct NPBound {
  double value = 1.0;
  std::size_t argmin = 0;
  std::vector<double> k_alpha, k_beta_alpha;
};

// inf over the lattice of k^{beta alpha}_{z0}(z0) / k^alpha_{z0}(z0).
inline NPBound np_bound(const GroupPresentation& pres, const Character& beta, cplx z0, int K, std::size_t N, std::size_t M,
                        double margin = 0.1, double svd_threshold = 1e-8) {
  NPBound r;
  const CharacterLattice lat = character_lattice(pres.rank(), K);
  r.k_alpha.resize(lat.size());
  r.k_beta_alpha.resize(lat.size());
  const cplx t0(1.0, 0.0);
  std::vector<int> shift;
  bool on_lattice = true;
  try {
    shift = character_shift(lat, beta);
  } catch (const Error&) {
    on_lattice = false;
  }
  parallel_for(lat.size(), [&](std::size_t i) {
    r.k_alpha[i] = interior_kernel_value(make_kernel_problem(pres, t0, lat.characters[i], N, M, margin, svd_threshold), z0);
  });
  parallel_for(lat.size(), [&](std::size_t i) {
    if (on_lattice) {
      r.k_beta_alpha[i] = r.k_alpha[lat.shifted(i, shift)];
    } else {
      const Character ba = beta * lat.characters[i];
      r.k_beta_alpha[i] = interior_kernel_value(make_kernel_problem(pres, t0, ba, N, M, margin, svd_threshold), z0);
    }
  });
  r.value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const double q = r.k_beta_alpha[i] / r.k_alpha[i];
    if (q < r.value) {
      r.value = q;
      r.argmin = i;
    }
  }
  return r;
}

struct CJLowerBound {
  double value = 0.0;      // sup_alpha (objective(alpha beta) - objective(alpha))
  double sup_objective = 0.0;
  std::size_t argmax = 0;
};

inline CJLowerBound cj_lower_bound(const LatticeSweep& sw, const Character& beta) {
  CJLowerBound r;
  const auto shift = character_shift(sw.lattice, beta);
  r.value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sw.lattice.size(); ++i) {
    const double d = sw.objective(sw.lattice.shifted(i, shift)) - sw.objective(i);
    if (d > r.value) {
      r.value = d;
      r.argmax = i;
    }
    r.sup_objective = std::max(r.sup_objective, sw.objective(i));
  }
  return r;
}

}  // namespace ahardy
