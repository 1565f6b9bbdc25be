#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "laakso/numeric.hpp"

using namespace laakso;

namespace {

constexpr double kPi = std::numbers::pi;

DiscretizedOperator op_for(const std::vector<int>& j, int level, int M, const Potential& pot = {}) {
  return discretize(build_graph(JSequence::periodic(j), level), M, pot);
}

// Every analytic line must show up among the numeric clusters with the same
// multiplicity, within rel.
void expect_lines_reproduced(const std::vector<SpectralLine>& analytic, const EigenResult& r, double rel) {
  const auto lines = cluster(r, 1e-2);
  for (const auto& a : analytic) {
    bool found = false;
    for (const auto& l : lines) {
      if (std::abs(l.lambda - a.lambda) <= rel * std::max(1.0, a.lambda)) {
        found = true;
        EXPECT_EQ(l.multiplicity, a.multiplicity) << "lambda = " << a.lambda;
      }
    }
    EXPECT_TRUE(found) << "missing analytic line " << a.lambda;
  }
}

}  // namespace

TEST(Discretize, OperatorInvariants) {
  const auto op = op_for({2, 3}, 3, 5);
  const Eigen::SparseMatrix<double> asym = op.matrix - Eigen::SparseMatrix<double>(op.matrix.transpose());
  EXPECT_EQ(asym.norm(), 0.0);
  // The Kirchhoff Laplacian annihilates constants.
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(op.dimension());
  EXPECT_LT((op.stiffness * ones).cwiseAbs().maxCoeff(), 1e-9);
  // Lumped masses add up to the total edge length, one unit per row.
  EXPECT_NEAR(op.mass.sum(), 8.0, 1e-12);
  EXPECT_TRUE((op.mass.array() > 0).all());
}

TEST(Discretize, Validation) {
  const auto g = build_graph(JSequence::periodic({2}), 1);
  EXPECT_THROW(discretize(g, 1, {}), ValidationError);
  EXPECT_THROW(discretize(g, 3, Potential::square_well(-1.0)), ValidationError);
  EXPECT_THROW(discretize(g, 3, Potential::from_function(nullptr)), ValidationError);
  EXPECT_THROW(parse_potential_kind("harmonic"), ValidationError);
  EXPECT_EQ(parse_potential_kind("square-well"), PotentialKind::square_well);
  EXPECT_EQ(parse_potential_kind("square_well"), PotentialKind::square_well);
}

TEST(Solver, IntervalMatchesExactDiscreteSpectrum) {
  // F_0 is [0, 1] with Neumann ends; M interior nodes give the discrete
  // cosine spectrum (4/h^2) sin^2(k pi h / 2) of the lumped scheme.
  const int M = 99;
  const double h = 1.0 / (M + 1);
  const auto r = solve_lowest(op_for({2}, 0, M), 6);
  for (int k = 0; k < 6; ++k) {
    const double exact = 4.0 / (h * h) * std::pow(std::sin(k * kPi * h / 2.0), 2);
    EXPECT_NEAR(r.eigenvalues[k], exact, 1e-8 * std::max(1.0, exact));
  }
}

TEST(Solver, SquareWellOnIntervalIsDirichletBox) {
  // Nodes at 0.24 and 0.76 are pinned; the open well spans L = 0.52.
  const int M = 99;
  const double h = 0.01, L = 0.52;
  const auto r = solve_lowest(op_for({2}, 0, M, Potential::square_well()), 4);
  for (int k = 1; k <= 4; ++k) {
    const double exact = 4.0 / (h * h) * std::pow(std::sin(k * kPi * h / (2.0 * L)), 2);
    EXPECT_NEAR(r.eigenvalues[k - 1], exact, 1e-7 * exact);
  }
  EXPECT_NEAR(r.eigenvalues[0], 36.49, 0.01);
}

TEST(Solver, FreeGroundStateIsConstant) {
  const auto op = op_for({3}, 2, 4);
  const auto r = solve_lowest(op, 3);
  EXPECT_NEAR(r.eigenvalues[0], 0.0, 1e-9);
  const auto trace = eigenfunction_trace(op, r, 0);
  for (const auto& t : trace) EXPECT_NEAR(t.value, trace.front().value, 1e-7);
  double norm = 0.0;
  for (int i = 0; i < op.dimension(); ++i) {
    const double u = r.eigenvectors(i, 0) / std::sqrt(op.mass[i]);
    norm += op.mass[i] * u * u;
  }
  EXPECT_NEAR(norm, 1.0, 1e-12);
}

TEST(Solver, FreeSpectrumOnF3) {
  const auto op = op_for({2}, 3, 15);
  const auto r = solve_lowest(op, 40);
  auto analytic = restrict_to_level(free_spectrum(JSequence::periodic({2}), {300.0}), 3);
  analytic.erase(analytic.begin());  // the zero line is checked separately
  expect_lines_reproduced(analytic, r, 1e-2);
}

TEST(Solver, PlateSpectrumOnF2) {
  for (const auto& cfg : {PlateConfig(4, 1, Rational(1, 5)), PlateConfig(5, 2, Rational(3, 10))}) {
    const auto g = build_graph(JSequence::periodic({cfg.N}), 2, cfg);
    const auto r = solve_lowest(discretize(g, 31, {}), 30);
    const auto analytic = restrict_to_level(plates_spectrum(cfg, {0.9 * r.eigenvalues[29]}), 2);
    ASSERT_GE(analytic.size(), 6u);
    expect_lines_reproduced(analytic, r, 2e-3);
  }
}

TEST(Solver, KrylovPathAgreesWithDensePath) {
  const auto op = op_for({3}, 2, 9);
  SolveOptions dense;
  SolveOptions krylov;
  krylov.dense_threshold = 0;
  const auto a = solve_lowest(op, 12, dense);
  const auto b = solve_lowest(op, 12, krylov);
  EXPECT_NE(a.method, b.method);
  for (int i = 0; i < 12; ++i) EXPECT_NEAR(a.eigenvalues[i], b.eigenvalues[i], 1e-7 * std::max(1.0, a.eigenvalues[i]));
  EXPECT_LE(b.max_residual, krylov.tolerance);
}

TEST(Solver, DeterministicAcrossRuns) {
  const auto op = op_for({2}, 3, 15);
  SolveOptions opt;
  opt.dense_threshold = 0;
  const auto a = solve_lowest(op, 8, opt);
  const auto b = solve_lowest(op, 8, opt);
  for (int i = 0; i < 8; ++i) EXPECT_EQ(a.eigenvalues[i], b.eigenvalues[i]);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(Solver, MeshConvergenceIsSecondOrder) {
  // Ground state of the parabolic potential on F_1 at three mesh sizes.
  std::vector<double> e;
  for (int M : {7, 15, 31, 63}) e.push_back(solve_lowest(op_for({2}, 1, M, Potential::parabolic()), 1).eigenvalues[0]);
  const double order = std::log2(std::abs(e[1] - e[2]) / std::abs(e[2] - e[3]));
  EXPECT_GE(order, 1.8) << e[0] << " " << e[1] << " " << e[2] << " " << e[3];
}

TEST(Solver, CutoffSaturates) {
  const auto a = solve_lowest(op_for({2, 3}, 2, 7, Potential::square_well(1e12)), 6);
  const auto b = solve_lowest(op_for({2, 3}, 2, 7, Potential::square_well(1e15)), 6);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(a.eigenvalues[i], b.eigenvalues[i], 1e-8 * b.eigenvalues[i]);
}

TEST(Solver, CoulombArtifactsAreExcluded) {
  const auto op = op_for({2}, 2, 7, Potential::coulomb());
  EXPECT_GT(op.negative_pinned(), 0);
  const auto r = solve_lowest(op, 4);
  EXPECT_EQ(r.artifacts_excluded, op.negative_pinned());
  EXPECT_GT(r.eigenvalues[0], -0.5 * op.potential.cutoff);
  EXPECT_LT(r.eigenvalues[0], 0.0);
  EXPECT_THROW(solve_lowest(op, op.dimension()), ValidationError);
}

TEST(Solver, Validation) {
  const auto op = op_for({2}, 1, 3);
  EXPECT_THROW(solve_lowest(op, 0), ValidationError);
  EXPECT_THROW(solve_lowest(op, op.dimension() + 1), ValidationError);
  SolveOptions stingy;
  stingy.dense_threshold = 0;
  stingy.max_iterations = 1;
  stingy.tolerance = 1e-300;
  EXPECT_THROW(solve_lowest(op_for({2}, 3, 15), 10, stingy), SolverError);
}

TEST(Cluster, GroupsNearEqualValues) {
  const auto lines = cluster(std::vector<double>{1.0, 1.0001, 2.0, 2.0, 2.0, 5.0}, 1e-3);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_NEAR(lines[0].lambda, 1.00005, 1e-12);
  EXPECT_EQ(lines[0].multiplicity, 2);
  EXPECT_EQ(lines[1].multiplicity, 3);
  EXPECT_EQ(lines[2].multiplicity, 1);
  EXPECT_THROW(cluster(std::vector<double>{2.0, 1.0}, 1e-3), ValidationError);
  EXPECT_TRUE(cluster(std::vector<double>{}, 1e-3).empty());
}

TEST(Trace, ParabolicGroundStateVanishesAtEnds) {
  const auto op = op_for({2}, 2, 15, Potential::parabolic());
  const auto r = solve_lowest(op, 1);
  const auto trace = eigenfunction_trace(op, r, 0);
  double peak = 0.0;
  for (const auto& t : trace) peak = std::max(peak, std::abs(t.value));
  for (const auto& t : trace) {
    if (t.x == 0.0 || t.x == 1.0) {
      EXPECT_LE(std::abs(t.value), 1e-3 * peak);
    }
  }
  EXPECT_THROW(eigenfunction_trace(op, r, 1), ValidationError);
}

TEST(Export, CooListsEveryStoredEntry) {
  const auto op = op_for({2}, 1, 3);
  std::ostringstream os;
  write_coo(os, op);
  std::istringstream in(os.str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) rows += !line.empty();
  EXPECT_GE(rows, static_cast<int>(op.matrix.nonZeros()));
}
