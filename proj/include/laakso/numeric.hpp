#pragma once

// Finite-difference realisation of H = -d^2/dx^2 + V(x) on an explicit
// quantum graph F_n, and a shift-invert block Krylov eigensolver for its
// lower spectrum.
//
// Every edge carries M interior nodes with spacing h_e = L_e / (M + 1).
// Vertices are shared unknowns (continuity); the lumped-mass graph Laplacian
// M^{-1} K, with K assembled from segment stiffnesses 1/h, gives Kirchhoff
// closure at free vertices and Neumann at degree-1 ends. Conducting vertices
// are removed (Dirichlet). The symmetric form M^{-1/2} K M^{-1/2} + diag(V)
// is what gets solved.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "laakso/error.hpp"
#include "laakso/graph.hpp"
#include "laakso/rational.hpp"
#include "laakso/spectrum.hpp"

namespace laakso {

enum class PotentialKind { free, square_well, coulomb, parabolic, custom };

inline const char* to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::free: return "free";
    case PotentialKind::square_well: return "square-well";
    case PotentialKind::coulomb: return "coulomb";
    case PotentialKind::parabolic: return "parabolic";
    case PotentialKind::custom: return "custom";
  }
  return "?";
}

inline PotentialKind parse_potential_kind(const std::string& s) {
  if (s == "free") return PotentialKind::free;
  if (s == "square-well" || s == "square_well") return PotentialKind::square_well;
  if (s == "coulomb") return PotentialKind::coulomb;
  if (s == "parabolic") return PotentialKind::parabolic;
  if (s == "custom") return PotentialKind::custom;
  throw ValidationError("unknown potential kind '" + s + "'");
}

struct Potential {
  PotentialKind kind = PotentialKind::free;
  double cutoff = 1e15;
  std::function<double(double)> custom;  // only for PotentialKind::custom

  static Potential free_particle() { return {}; }
  static Potential square_well(double cutoff = 1e15) { return {PotentialKind::square_well, cutoff, {}}; }
  static Potential coulomb(double cutoff = 1e15) { return {PotentialKind::coulomb, cutoff, {}}; }
  static Potential parabolic(double cutoff = 1e15) { return {PotentialKind::parabolic, cutoff, {}}; }
  static Potential from_function(std::function<double(double)> f, double cutoff = 1e15) {
    return {PotentialKind::custom, cutoff, std::move(f)};
  }

  void validate() const {
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw ValidationError("potential cutoff must be positive and finite");
    if (kind == PotentialKind::custom && !custom) throw ValidationError("custom potential needs a function");
  }

  // Value at an exact node coordinate; singular points take +-cutoff and
  // every value is clipped to [-cutoff, cutoff].
  double operator()(const Rational& x) const {
    double v = 0.0;
    switch (kind) {
      case PotentialKind::free: return 0.0;
      case PotentialKind::square_well:
        return (x >= Rational(1, 4) && x <= Rational(3, 4)) ? 0.0 : cutoff;
      case PotentialKind::coulomb: {
        const Rational dx = x - Rational(1, 2);
        if (dx == Rational(0)) return -cutoff;
        const double d = dx.to_double();
        v = -1.0 / (d * d) + 0.25;
        break;
      }
      case PotentialKind::parabolic: {
        if (x == Rational(0) || x == Rational(1)) return cutoff;
        const double xd = x.to_double();
        v = 1.0 / (xd * (1.0 - xd));
        break;
      }
      case PotentialKind::custom: v = custom(x.to_double()); break;
    }
    return std::clamp(v, -cutoff, cutoff);
  }
};

struct NodeInfo {
  int edge = -1;    // -1 for vertex unknowns
  int vertex = -1;  // vertex id for vertex unknowns
  int position = 0; // 1..M along the edge (0 for vertices)
  Rational x;
  double arclength = 0.0;  // distance from the edge's tail vertex
  std::uint64_t row = 0;
};

struct DiscretizedOperator {
  int level = 0;
  int mesh = 0;
  std::int64_t columns = 0;
  Potential potential;
  Eigen::SparseMatrix<double> matrix;     // M^{-1/2} K M^{-1/2} + diag(V), both triangles stored
  Eigen::SparseMatrix<double> stiffness;  // K
  Eigen::VectorXd mass;                   // lumped weights
  Eigen::VectorXd diagonal_potential;
  std::vector<char> pinned;               // |V| reached the cutoff
  std::vector<NodeInfo> nodes;
  std::vector<int> vertex_index;          // vertex id -> unknown (-1 if conducting)
  std::vector<Vertex> conducting;         // eliminated vertices, kept for traces

  int dimension() const { return static_cast<int>(nodes.size()); }
  int negative_pinned() const {
    int c = 0;
    for (int i = 0; i < dimension(); ++i) c += pinned[static_cast<std::size_t>(i)] && diagonal_potential[i] < 0.0;
    return c;
  }
};

inline DiscretizedOperator discretize(const QuantumGraph& g, int M, const Potential& pot) {
  if (M < 2) throw ValidationError("mesh too coarse: need at least 2 interior points per edge (got " + std::to_string(M) + ")");
  pot.validate();
  DiscretizedOperator op;
  op.level = g.level;
  op.mesh = M;
  op.columns = g.columns;
  op.potential = pot;
  op.vertex_index.assign(g.vertices.size(), -1);

  for (const auto& v : g.vertices) {
    if (v.conducting) {
      op.conducting.push_back(v);
      continue;
    }
    op.vertex_index[static_cast<std::size_t>(v.id)] = static_cast<int>(op.nodes.size());
    NodeInfo ni;
    ni.vertex = v.id;
    ni.x = v.x;
    ni.row = v.row;
    op.nodes.push_back(ni);
  }
  const std::size_t vertex_unknowns = op.nodes.size();
  op.nodes.reserve(vertex_unknowns + g.edges.size() * static_cast<std::size_t>(M));
  for (const auto& e : g.edges) {
    if (!(e.length > Rational(0))) throw ValidationError("degenerate edge length on edge " + std::to_string(e.id));
    const Rational h = e.length / Rational(M + 1);
    const Rational x0 = g.vertices[static_cast<std::size_t>(e.tail)].x;
    for (int i = 1; i <= M; ++i) {
      NodeInfo ni;
      ni.edge = e.id;
      ni.position = i;
      ni.x = x0 + h * Rational(i);
      ni.arclength = (h * Rational(i)).to_double();
      ni.row = e.row;
      op.nodes.push_back(ni);
    }
  }
  const int n = op.dimension();
  if (n == 0) throw ValidationError("discretization has no free unknowns");

  op.mass = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * 4);
  std::size_t next = vertex_unknowns;
  for (const auto& e : g.edges) {
    const double h = (e.length / Rational(M + 1)).to_double();
    const double w = 1.0 / h;
    const int tail = op.vertex_index[static_cast<std::size_t>(e.tail)];
    const int head = op.vertex_index[static_cast<std::size_t>(e.head)];
    const int first = static_cast<int>(next);
    next += static_cast<std::size_t>(M);
    for (int i = 0; i < M; ++i) op.mass[first + i] = h;
    if (tail >= 0) op.mass[tail] += 0.5 * h;
    if (head >= 0) op.mass[head] += 0.5 * h;
    // Segments: tail - first, first+i - first+i+1, last - head.
    auto segment = [&](int a, int b) {
      if (a >= 0) trip.emplace_back(a, a, w);
      if (b >= 0) trip.emplace_back(b, b, w);
      if (a >= 0 && b >= 0) {
        trip.emplace_back(a, b, -w);
        trip.emplace_back(b, a, -w);
      }
    };
    segment(tail, first);
    for (int i = 0; i + 1 < M; ++i) segment(first + i, first + i + 1);
    segment(first + M - 1, head);
  }
  op.stiffness.resize(n, n);
  op.stiffness.setFromTriplets(trip.begin(), trip.end());
  op.stiffness.makeCompressed();

  op.diagonal_potential.resize(n);
  op.pinned.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    const double v = pot(op.nodes[static_cast<std::size_t>(i)].x);
    op.diagonal_potential[i] = v;
    op.pinned[static_cast<std::size_t>(i)] = std::abs(v) >= pot.cutoff;
  }

  const Eigen::VectorXd inv_sqrt = op.mass.cwiseSqrt().cwiseInverse();
  op.matrix = inv_sqrt.asDiagonal() * op.stiffness * inv_sqrt.asDiagonal();
  for (int i = 0; i < n; ++i) op.matrix.coeffRef(i, i) += op.diagonal_potential[i];
  op.matrix.makeCompressed();
  return op;
}

// Smallest edge spacing giving at least `per_cell` nodes per cell of F_n.
inline int default_mesh(int per_cell = 8) { return per_cell - 1; }

struct SolveOptions {
  double tolerance = 1e-8;  // on ||Hv - lambda v|| / max(1, |lambda|), ||v|| = 1
  int max_iterations = 200;
  int extra_block = 10;
  int krylov_depth = 4;
  int max_subspace = 320;  // columns; depth shrinks for large blocks, never below 2 blocks
  int dense_threshold = 2000;
  std::uint64_t seed = 0x5eed1a550ULL;
  bool keep_vectors = true;
};

struct EigenResult {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns, symmetric-form coordinates, unit Euclidean norm
  std::vector<double> residuals;  // ||Hv - lambda v|| / max(1, |lambda|)
  int iterations = 0;
  double max_residual = 0.0;
  double shift = 0.0;
  int artifacts_excluded = 0;  // eigenvalues below -cutoff/2 from negative pinned nodes
  std::string method;
  int dimension = 0;
};

namespace detail {

// Orthonormalises block Y against Q[:, 0:filled] and within itself by
// column-wise classical Gram-Schmidt with reorthogonalisation. Only column
// combinations are formed, so tiny components at pinned nodes keep their
// relative accuracy (Householder would smear eps-sized absolute errors into
// them, which the cutoff diagonal then amplifies). Returns columns appended.
inline int append_block(Eigen::MatrixXd& Q, int filled, const Eigen::MatrixXd& Y) {
  int added = 0;
  for (int c = 0; c < Y.cols() && filled + added < Q.cols(); ++c) {
    Eigen::VectorXd q = Y.col(c);
    const double original = q.norm();
    if (!(original > 0.0)) continue;
    const int k = filled + added;
    double norm = original;
    for (int pass = 0; pass < 5 && k > 0; ++pass) {
      const double before = norm;
      q -= Q.leftCols(k) * (Q.leftCols(k).transpose() * q);
      norm = q.norm();
      if (norm > 0.5 * before) break;  // no heavy cancellation, orthogonal to working precision
    }
    if (norm <= 1e-12 * original) continue;
    Q.col(k) = q / norm;
    ++added;
  }
  return added;
}

struct Ritz {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // lowest `keep` Ritz vectors
  std::vector<double> residuals;  // first `count`
  double worst = 0.0;
};

// Rows of nodes pinned at +-cutoff. Any vector in the range of (H - s)^{-1}
// with zero right-hand side there satisfies
// x_p = -sum_q H_pq x_q / (H_pp - s); re-imposing this after
// orthogonalisation removes roundoff that would otherwise pull in the
// cutoff's spurious directions.
struct PinnedRows {
  std::vector<int> nodes;
  std::vector<double> diagonal;
  std::vector<std::vector<std::pair<int, double>>> neighbours;

  PinnedRows(const Eigen::SparseMatrix<double>& H, const std::vector<char>& pinned) {
    for (int p = 0; p < H.outerSize(); ++p) {
      if (!pinned[static_cast<std::size_t>(p)]) continue;
      nodes.push_back(p);
      double d = 0.0;
      std::vector<std::pair<int, double>> nb;
      for (Eigen::SparseMatrix<double>::InnerIterator it(H, p); it; ++it) {
        if (it.row() == p) {
          d = it.value();
        } else {
          nb.emplace_back(static_cast<int>(it.row()), it.value());
        }
      }
      diagonal.push_back(d);
      neighbours.push_back(std::move(nb));
    }
  }

  void enforce_column(Eigen::Ref<Eigen::VectorXd> x, double shift) const {
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        double acc = 0.0;
        for (const auto& [q, w] : neighbours[i]) acc += w * x[q];
        x[nodes[i]] = -acc / (diagonal[i] - shift);
      }
    }
  }

  void enforce(Eigen::Ref<Eigen::MatrixXd> X, double shift) const {
    if (nodes.empty()) return;
    for (int c = 0; c < X.cols(); ++c) enforce_column(X.col(c), shift);
  }
};

// Rayleigh-Ritz on the (nearly orthonormal) basis Q, solved as the
// generalised problem T y = theta G y with G = Q^T Q. Pinned entries of each
// Ritz vector are then made exact for its own Ritz value, and residuals come
// from H V directly (scaled by max(1, |theta|)) rather than (H Q) Y, which loses digits to cancellation.
inline Ritz rayleigh_ritz(const Eigen::SparseMatrix<double>& H, const Eigen::Ref<const Eigen::MatrixXd>& Q, int count, int keep,
                          const PinnedRows& pinned) {
  Eigen::MatrixXd T = Q.transpose() * (H * Q);
  Eigen::MatrixXd G = Q.transpose() * Q;
  T = 0.5 * (T + T.transpose());
  G = 0.5 * (G + G.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success) throw SolverError("Rayleigh-Ritz basis lost linear independence");
  const Eigen::MatrixXd Linv = llt.matrixL().solve(Eigen::MatrixXd::Identity(G.rows(), G.cols()));
  Eigen::MatrixXd Ts = Linv * T * Linv.transpose();
  Ts = 0.5 * (Ts + Ts.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Ts);
  if (es.info() != Eigen::Success) throw SolverError("Rayleigh-Ritz eigensolve failed");
  keep = std::min<int>(keep, static_cast<int>(Q.cols()));
  Ritz r;
  r.values = es.eigenvalues().head(keep);
  r.vectors = Q * (Linv.transpose() * es.eigenvectors().leftCols(keep));
  for (int c = 0; c < keep; ++c) {
    if (!pinned.nodes.empty()) pinned.enforce_column(r.vectors.col(c), r.values[c]);
    r.vectors.col(c).normalize();
  }
  const Eigen::MatrixXd HV = H * r.vectors.leftCols(count);
  r.residuals.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double v = (HV.col(i) - r.values[i] * r.vectors.col(i)).norm() / std::max(1.0, std::abs(r.values[i]));
    r.residuals[static_cast<std::size_t>(i)] = v;
    r.worst = std::max(r.worst, v);
  }
  return r;
}

inline void normalize_signs(Eigen::MatrixXd& V) {
  for (int c = 0; c < V.cols(); ++c) {
    Eigen::Index idx = 0;
    V.col(c).cwiseAbs().maxCoeff(&idx);
    if (V(idx, c) < 0) V.col(c) = -V.col(c);
  }
}

}  // namespace detail

// The `count` algebraically smallest physical eigenvalues. Negative pinned
// nodes (for example the Coulomb singularity) carry eigenvalues near
// -cutoff that belong to the cutoff, not to the operator; the shift is
// placed above them so they are never returned, and their number is
// reported in `artifacts_excluded`.
inline EigenResult solve_lowest(const DiscretizedOperator& op, int count, const SolveOptions& opt = {}) {
  const int n = op.dimension();
  if (count < 1) throw ValidationError("eigenvalue count must be >= 1");
  const int artifacts = op.negative_pinned();
  if (count > n - artifacts) {
    throw ValidationError("requested " + std::to_string(count) + " eigenvalues but only " + std::to_string(n - artifacts) +
                          " physical ones exist");
  }
  const Eigen::SparseMatrix<double>& H = op.matrix;

  double vmin = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!op.pinned[static_cast<std::size_t>(i)]) vmin = std::min(vmin, op.diagonal_potential[i]);
  }
  // Below every physical eigenvalue by interlacing; later moved up towards
  // the lowest Ritz value, which is what separates the deep near-degenerate
  // clusters of singular potentials.
  double sigma = vmin - 1.0;

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower> ldlt;
  Eigen::SparseMatrix<double> A = H;
  // Factorises H - s I; returns the number of eigenvalues below s (Sylvester).
  auto factor = [&](double s) {
    A = H;
    for (int i = 0; i < n; ++i) A.coeffRef(i, i) -= s;
    ldlt.factorize(A);
    if (ldlt.info() != Eigen::Success) throw SolverError("factorisation of H - sigma I failed");
    return static_cast<int>((ldlt.vectorD().array() < 0.0).count());
  };
  ldlt.analyzePattern(A);
  if (factor(sigma) != artifacts) throw SolverError("initial shift is not below the physical spectrum");
  auto apply_inverse = [&](const Eigen::MatrixXd& X) {
    Eigen::MatrixXd Y = ldlt.solve(X);
    if (ldlt.info() != Eigen::Success || !Y.allFinite()) throw SolverError("shift-invert solve failed");
    return Y;
  };
  // Moves the shift up to just below the lowest Ritz value when that gains
  // separation, backing off whenever the inertia shows it overshot.
  auto retarget = [&](double lo, double hi) {
    const double gap = std::max({1e-2 * (hi - lo), 1e-6 * std::max(1.0, std::abs(lo)), 1e-3});
    double target = lo - gap;
    if (!(lo - sigma > 8.0 * gap)) return;
    for (int attempt = 0; attempt < 8; ++attempt) {
      if (factor(target) == artifacts) {
        sigma = target;
        return;
      }
      target = 0.5 * (target + sigma);
    }
    factor(sigma);
  };

  const int physical = n - artifacts;
  const int b = std::min(count + opt.extra_block, physical);
  EigenResult res;
  res.artifacts_excluded = artifacts;
  res.dimension = n;

  Eigen::MatrixXd X;
  if (n <= opt.dense_threshold) {
    res.method = "dense-shift-invert";
    const Eigen::MatrixXd Ainv = apply_inverse(Eigen::MatrixXd::Identity(n, n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (Ainv + Ainv.transpose()));
    if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
    X = es.eigenvectors().rightCols(b);  // largest 1/(lambda - sigma)
  } else {
    res.method = "block-krylov-shift-invert";
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    X.resize(n, b);
    for (int c = 0; c < b; ++c)
      for (int r = 0; r < n; ++r) X(r, c) = nd(rng);
  }
  X = apply_inverse(X);

  auto finish = [&](const detail::Ritz& rr) {
    res.shift = sigma;
    res.eigenvalues = rr.values.head(count);
    res.residuals = rr.residuals;
    res.max_residual = rr.worst;
    if (opt.keep_vectors) {
      res.eigenvectors = rr.vectors.leftCols(count);
      detail::normalize_signs(res.eigenvectors);
    }
    return res;
  };

  const detail::PinnedRows pinned_rows(H, op.pinned);
  const int depth = std::max(1, opt.krylov_depth);
  const int sub = std::min(physical, std::max(2 * b, std::min(depth * b, opt.max_subspace)));
  for (int iter = 1; iter <= opt.max_iterations; ++iter) {
    Eigen::MatrixXd Q(n, sub);
    int filled = detail::append_block(Q, 0, X);
    Eigen::MatrixXd cur = Q.leftCols(filled);
    while (filled < sub) {
      const int added = detail::append_block(Q, filled, apply_inverse(cur));
      if (added == 0) break;
      cur = Q.middleCols(filled, added);
      filled += added;
    }
    if (filled < count) throw SolverError("Krylov space collapsed below the requested count");
    pinned_rows.enforce(Q.leftCols(filled), sigma);
    const detail::Ritz rr = detail::rayleigh_ritz(H, Q.leftCols(filled), count, b, pinned_rows);
    res.iterations = iter;
    if (rr.worst <= opt.tolerance) return finish(rr);
    // Near the roundoff floor one smoothing step of inverse iteration strips
    // the high-frequency noise that orthogonalisation leaves behind.
    if (rr.worst <= 1e4 * opt.tolerance) {
      Eigen::MatrixXd P(n, rr.vectors.cols());
      const int got = detail::append_block(P, 0, apply_inverse(rr.vectors));
      if (got >= count) {
        pinned_rows.enforce(P.leftCols(got), sigma);
        const detail::Ritz polished = detail::rayleigh_ritz(H, P.leftCols(got), count, got, pinned_rows);
        if (polished.worst <= opt.tolerance) return finish(polished);
      }
    }
    X = rr.vectors;
    const double before = sigma;
    retarget(rr.values[0], rr.values[count - 1]);
    if (sigma != before) X = apply_inverse(X);
    if (iter == opt.max_iterations) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "eigensolver did not converge in %d iterations (max residual %.3e > %.1e)", iter, rr.worst,
                    opt.tolerance);
      throw SolverError(buf);
    }
  }
  throw SolverError("eigensolver did not run");
}

// Greedy grouping of ascending eigenvalues into multiplicity clusters.
inline std::vector<SpectralLine> cluster(const std::vector<double>& values, double rel_tol) {
  if (!(rel_tol >= 0.0)) throw ValidationError("rel_tol must be >= 0");
  std::vector<SpectralLine> out;
  double sum = 0.0;
  std::int64_t cnt = 0;
  auto flush = [&] {
    if (cnt == 0) return;
    SpectralLine l;
    l.lambda = sum / static_cast<double>(cnt);
    l.multiplicity = cnt;
    out.push_back(std::move(l));
    sum = 0.0;
    cnt = 0;
  };
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && values[i] < values[i - 1]) throw ValidationError("cluster() needs ascending eigenvalues");
    if (cnt > 0) {
      const double mean = sum / static_cast<double>(cnt);
      if (std::abs(values[i] - mean) > rel_tol * std::max(1.0, std::abs(mean))) flush();
    }
    sum += values[i];
    ++cnt;
  }
  flush();
  return out;
}

inline std::vector<SpectralLine> cluster(const EigenResult& r, double rel_tol) {
  return cluster(std::vector<double>(r.eigenvalues.data(), r.eigenvalues.data() + r.eigenvalues.size()), rel_tol);
}

struct TracePoint {
  double x = 0.0;
  std::string row_label;
  double value = 0.0;
  int edge = -1;
  int vertex = -1;
};

// Eigenfunction values u = M^{-1/2} v at every node (conducting vertices
// included with value 0), scaled to unit discrete L^2 norm sum(mass u^2) = 1.
inline std::vector<TracePoint> eigenfunction_trace(const DiscretizedOperator& op, const EigenResult& r, int index) {
  if (r.eigenvectors.cols() == 0) throw ValidationError("eigenvectors were not retained");
  if (index < 0 || index >= r.eigenvectors.cols()) {
    throw ValidationError("eigenfunction index " + std::to_string(index) + " out of range [0, " +
                          std::to_string(r.eigenvectors.cols()) + ")");
  }
  const Eigen::VectorXd v = r.eigenvectors.col(index);
  Eigen::VectorXd u = v.cwiseQuotient(op.mass.cwiseSqrt());
  const double norm = std::sqrt((op.mass.array() * u.array().square()).sum());
  if (norm > 0) u /= norm;
  std::vector<TracePoint> out;
  out.reserve(op.nodes.size() + op.conducting.size());
  for (int i = 0; i < op.dimension(); ++i) {
    const auto& nd = op.nodes[static_cast<std::size_t>(i)];
    out.push_back({nd.x.to_double(), row_label(nd.row, op.level), u[i], nd.edge, nd.vertex});
  }
  for (const auto& cv : op.conducting) out.push_back({cv.x.to_double(), row_label(cv.row, op.level), 0.0, -1, cv.id});
  return out;
}

// Coordinate-format dump "row col value" of the solved matrix (0-based).
inline void write_coo(std::ostream& os, const DiscretizedOperator& op) {
  char buf[96];
  for (int k = 0; k < op.matrix.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.matrix, k); it; ++it) {
      std::snprintf(buf, sizeof buf, "%lld %lld %.17g\n", static_cast<long long>(it.row()), static_cast<long long>(it.col()),
                    it.value());
      os << buf;
    }
  }
}

}  // namespace laakso
