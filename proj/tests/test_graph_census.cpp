#include <gtest/gtest.h>

#include <map>

#include "laakso/census.hpp"
#include "laakso/graph.hpp"

using namespace laakso;

namespace {

std::vector<JSequence> census_sequences() {
  return {JSequence::periodic({2}), JSequence::periodic({3}), JSequence::periodic({2, 3}), JSequence::periodic({3, 2})};
}

}  // namespace

TEST(Graph, RowLabels) {
  EXPECT_EQ(row_label(0, 3), "000");
  EXPECT_EQ(row_label(1, 3), "100");
  EXPECT_EQ(row_label(6, 3), "011");
  EXPECT_EQ(row_label(0, 0), "");
}

TEST(Graph, EdgeCountAndRowLengths) {
  for (const auto& seq : census_sequences()) {
    for (int n = 0; n <= 4; ++n) {
      const QuantumGraph g = build_graph(seq, n);
      const std::int64_t I = seq.level_product(n);
      EXPECT_EQ(static_cast<std::int64_t>(g.edges.size()), (std::int64_t{1} << n) * I);
      std::map<std::uint64_t, Rational> row_length;
      for (const auto& e : g.edges) row_length[e.row] += e.length;
      EXPECT_EQ(static_cast<std::int64_t>(row_length.size()), std::int64_t{1} << n);
      for (const auto& [row, len] : row_length) EXPECT_EQ(len, Rational(1)) << seq.str() << " n=" << n << " row=" << row;
      EXPECT_TRUE(is_connected(g));
    }
  }
}

TEST(Graph, PlatesKeepRowLengthAndMoveOnlyPlateColumns) {
  const PlateConfig cfg(5, 2, Rational(3, 10));
  const QuantumGraph g = build_graph(JSequence::periodic({5}), 2, cfg);
  std::map<std::uint64_t, Rational> row_length;
  for (const auto& e : g.edges) row_length[e.row] += e.length;
  for (const auto& [row, len] : row_length) EXPECT_EQ(len, Rational(1));
  int conducting = 0;
  for (const auto& v : g.vertices) {
    if (!v.conducting) continue;
    ++conducting;
    EXPECT_TRUE(v.x == Rational(1, 2) - cfg.X0 || v.x == Rational(1, 2) + cfg.X0);
  }
  EXPECT_GT(conducting, 0);
}

TEST(Graph, RejectsOversizedLevels) {
  EXPECT_THROW(build_graph(JSequence::periodic({7}), 12), ValidationError);
  EXPECT_THROW(build_graph(JSequence::periodic({2}), -1), ValidationError);
}

TEST(Census, FormulaEqualsDecomposition) {
  for (const auto& seq : census_sequences()) {
    for (int n = 2; n <= 6; ++n) {
      const QuantumGraph g = build_graph(seq, n);
      const ShapeCensus brute = shape_census(g);
      const ShapeCensus formula = census_formula(seq, n);
      EXPECT_EQ(brute.counts, formula.counts) << seq.str() << " n=" << n;
      EXPECT_EQ(brute.counts.cells(), static_cast<std::int64_t>(g.edges.size()));
    }
  }
}

TEST(Census, KnownCountsForJ2) {
  // j = 2: no loops, crosses 2^{n-2}(2^{n-1} - 1).
  const auto c = census_formula(JSequence::periodic({2}), 4).counts;
  EXPECT_EQ(c.V, 16);
  EXPECT_EQ(c.loops, 0);
  EXPECT_EQ(c.crosses, 28);
  EXPECT_EQ(c.half_crosses, 0);
}

TEST(Census, SquareWellInteriorMatchesDecomposition) {
  for (const auto& v : std::vector<std::vector<int>>{{2}, {3}, {2, 3}, {3, 2}, {4}, {5}, {2, 5}, {6}}) {
    const auto seq = JSequence::periodic(v);
    for (int n = 2; n <= 5; ++n) {
      if (seq.level_product(n) * (std::int64_t{1} << n) > 400000) break;
      const ShapeCensus bf = shape_census(build_graph(seq, n), square_well_region());
      ASSERT_TRUE(bf.regions.has_value());
      const auto& in = bf.regions->interior;
      const InteriorShapeCounts ic = interior_shape_counts(seq, n);
      EXPECT_EQ(in.loops, ic.loops) << seq.str() << " n=" << n;
      EXPECT_EQ(in.crosses, ic.full_crosses) << seq.str() << " n=" << n;
      EXPECT_EQ(in.half_crosses, ic.half_crosses) << seq.str() << " n=" << n;
    }
  }
}

TEST(Census, ColumnBoundariesTileTheRow) {
  const auto seq = JSequence::periodic({2, 3});
  for (int n = 1; n <= 5; ++n) {
    const auto b = column_boundaries(seq, n);
    EXPECT_EQ(b.front().a, 0);
    EXPECT_EQ(b.back().b, seq.level_product(n));
    for (std::size_t i = 1; i < b.size(); ++i) EXPECT_LE(b[i - 1].a, b[i].a);
  }
}

TEST(Census, PlateFormulaMatchesDecomposition) {
  for (auto [N, Z] : std::vector<std::pair<int, int>>{{4, 1}, {5, 2}, {5, 0}, {6, 1}, {7, 2}, {6, 3}}) {
    const PlateConfig cfg(N, Z, Rational(1, 5));
    const auto seq = JSequence::periodic({N});
    for (int n = 1; n <= 4; ++n) {
      if (seq.level_product(n) * (std::int64_t{1} << n) > 400000) break;
      const ShapeCensus bf = shape_census(build_graph(seq, n, cfg), plate_region(cfg));
      const PlateCensus pf = plate_census_formula(cfg, n);
      const auto& r = *bf.regions;
      EXPECT_EQ(r.interior.loops, pf.interior_loops);
      EXPECT_EQ(r.exterior.loops, pf.exterior_loops);
      EXPECT_EQ(r.exterior.V, pf.exterior_V);
      if (n >= 2) {
        // A half-cross on each side counts as half of a whole cross.
        EXPECT_EQ(2 * r.interior.crosses + r.interior.half_crosses, 2 * pf.interior_crosses) << "N=" << N << " Z=" << Z << " n=" << n;
        EXPECT_EQ(2 * r.exterior.crosses + r.exterior.half_crosses, 2 * pf.exterior_crosses) << "N=" << N << " Z=" << Z << " n=" << n;
        EXPECT_EQ(r.interior.half_crosses, pf.half_crosses_per_side);
      }
    }
  }
}
