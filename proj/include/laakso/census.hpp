#pragma once

// Shape censuses of F_n: closed-form counts of V's, loops and crosses, the
// brute-force census of an explicit graph, column boundaries of each shape
// family, and the square-well geometry (w_n, d_n) that drives the well
// multiplicities.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "laakso/error.hpp"
#include "laakso/graph.hpp"
#include "laakso/jsequence.hpp"
#include "laakso/plates.hpp"
#include "laakso/rational.hpp"

namespace laakso {

struct ShapeCounts {
  std::int64_t V = 0;
  std::int64_t loops = 0;
  std::int64_t crosses = 0;
  std::int64_t half_crosses = 0;

  std::int64_t cells() const { return 2 * V + 2 * loops + 8 * crosses + 4 * half_crosses; }
  friend bool operator==(const ShapeCounts&, const ShapeCounts&) = default;
};

struct RegionSplit {
  ShapeCounts interior;
  ShapeCounts exterior;
  // Shapes meeting both sides. A straddling cross still counts here even
  // when one of its halves is also recorded as a half-cross in a region.
  ShapeCounts straddling;
};

// A symmetric band [lo, hi] of the unperturbed x-axis.
struct ColumnRegion {
  Rational lo;
  Rational hi;
  std::string name;
};

inline ColumnRegion square_well_region() { return {Rational(1, 4), Rational(3, 4), "square-well"}; }

// Region between the plates, in unperturbed coordinates (plate columns of F_1).
inline ColumnRegion plate_region(const PlateConfig& cfg) {
  cfg.validate();
  const int a = cfg.plate_column();
  return {Rational(a, cfg.N), Rational(cfg.N - a, cfg.N), "plates"};
}

struct ShapeCensus {
  int level = 0;
  ShapeCounts counts;
  std::optional<RegionSplit> regions;
  std::vector<Shape> half_cross_records;  // only filled by region-split censuses
};

// V = 2^n, loops = 2^{n-1}(j_n - 2) I_{n-1}, crosses = 2^{n-2}(I_{n-1} - 1).
inline ShapeCensus census_formula(const JSequence& seq, int n) {
  if (n < 1) throw ValidationError("shape census needs n >= 1");
  const auto ip = level_products(seq, n);
  const std::int64_t jn = seq.j(n);
  ShapeCensus c;
  c.level = n;
  c.counts.V = pow2(n);
  c.counts.loops = checked_mul(checked_mul(pow2(n - 1), jn - 2), ip[n - 1]);
  c.counts.crosses = n >= 2 ? checked_mul(pow2(n - 2), ip[n - 1] - 1) : 0;
  return c;
}

namespace detail {

inline void bump(ShapeCounts& c, ShapeKind k) {
  switch (k) {
    case ShapeKind::V: ++c.V; break;
    case ShapeKind::loop: ++c.loops; break;
    case ShapeKind::cross: ++c.crosses; break;
    case ShapeKind::half_cross: ++c.half_crosses; break;
  }
}

}  // namespace detail

// Census of an explicit graph from its shape decomposition. With a region,
// every shape is classified by its column interval against the band
// [lo * I_n, hi * I_n] (closed), and each half of a straddling cross that
// lies entirely on one side becomes a half-cross record of that side.
inline ShapeCensus shape_census(const QuantumGraph& g, const std::optional<ColumnRegion>& region = std::nullopt) {
  if (g.level < 1) throw ValidationError("shape census needs n >= 1");
  ShapeCensus c;
  c.level = g.level;
  for (const auto& s : g.shapes) detail::bump(c.counts, s.kind);
  if (!region) return c;

  RegionSplit split;
  const Rational left = region->lo * Rational(g.columns);
  const Rational right = region->hi * Rational(g.columns);
  auto inside = [&](std::int64_t a, std::int64_t b) { return Rational(a) >= left && Rational(b) <= right; };
  auto outside = [&](std::int64_t a, std::int64_t b) { return Rational(b) <= left || Rational(a) >= right; };

  for (const auto& s : g.shapes) {
    if (inside(s.first_column, s.last_column)) {
      detail::bump(split.interior, s.kind);
      continue;
    }
    if (outside(s.first_column, s.last_column)) {
      detail::bump(split.exterior, s.kind);
      continue;
    }
    detail::bump(split.straddling, s.kind);
    if (s.kind != ShapeKind::cross) continue;
    const std::int64_t mid = s.first_column + 1;
    for (int side = 0; side < 2; ++side) {
      const std::int64_t a = side == 0 ? s.first_column : mid;
      const std::int64_t b = side == 0 ? mid : s.last_column;
      const bool in = inside(a, b);
      const bool out = outside(a, b);
      if (!in && !out) continue;
      Shape half;
      half.kind = ShapeKind::half_cross;
      half.first_column = a;
      half.last_column = b;
      half.row = s.row;
      for (int id : s.edges) {
        if (g.edges[static_cast<std::size_t>(id)].cell == a) half.edges.push_back(id);
      }
      ++(in ? split.interior : split.exterior).half_crosses;
      c.half_cross_records.push_back(std::move(half));
    }
  }
  c.regions = split;
  return c;
}

struct ColumnInterval {
  ShapeKind kind = ShapeKind::V;
  std::int64_t m = 0;  // 0 for V's
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const ColumnInterval&, const ColumnInterval&) = default;
};

// Column intervals of one row of F_n, ordered left to right: the two V's,
// the m-th set of loops [(m-1)j_n + 1, m j_n - 1] and the m-th cross
// [m j_n - 1, m j_n + 1]. Loop sets are emitted even when empty (j_n = 2).
inline std::vector<ColumnInterval> column_boundaries(const JSequence& seq, int n) {
  if (n < 1) throw ValidationError("column boundaries need n >= 1");
  const auto ip = level_products(seq, n);
  const std::int64_t jn = seq.j(n);
  const std::int64_t prev = ip[n - 1];
  std::vector<ColumnInterval> out;
  out.push_back({ShapeKind::V, 0, 0, 1});
  for (std::int64_t m = 1; m <= prev; ++m) {
    out.push_back({ShapeKind::loop, m, (m - 1) * jn + 1, m * jn - 1});
    if (m < prev) out.push_back({ShapeKind::cross, m, m * jn - 1, m * jn + 1});
  }
  out.push_back({ShapeKind::V, 0, ip[n] - 1, ip[n]});
  return out;
}

struct WellGeometry {
  int level = 0;
  std::int64_t jn = 0;
  std::int64_t I_prev = 0;
  std::int64_t I = 0;
  Rational w;  // I_n / 4
  Rational d;  // distance from x = 1/4 to the first node column at or right of it

  bool wall_on_column() const { return d == Rational(0); }
};

inline WellGeometry well_geometry(const JSequence& seq, int n) {
  if (n < 1) throw ValidationError("well geometry needs n >= 1");
  const auto ip = level_products(seq, n);
  WellGeometry g;
  g.level = n;
  g.jn = seq.j(n);
  g.I_prev = ip[n - 1];
  g.I = ip[n];
  g.w = Rational(g.I, 4);
  g.d = Rational(g.w.ceil(), g.I) - Rational(1, 4);
  return g;
}

struct InteriorShapeCounts {
  std::int64_t full_crosses = 0;
  std::int64_t half_crosses = 0;
  std::int64_t loops = 0;
  std::int64_t m = 0;
  char cross_case = '-';  // 'a' or 'b' of the cross count, '-' when no case applies
  char loop_case = '-';
};

// Shapes inside the square well [1/4, 3/4] of F_n from the closed-form counts.
// m = ceil(w_n / j_n); case (a) is (m-1) j_n < w_n <= m j_n - 1 and case (b)
// is m j_n - 1 < w_n <= m j_n. Crosses need n >= 2.
inline InteriorShapeCounts interior_shape_counts(const JSequence& seq, int n) {
  const WellGeometry g = well_geometry(seq, n);
  const ShapeCensus total = census_formula(seq, n);
  InteriorShapeCounts out;
  const Rational j(g.jn);
  const std::int64_t m = (g.w / j).ceil();
  out.m = m;
  const Rational lo = Rational(m - 1) * j;
  const Rational mid = Rational(m) * j - Rational(1);
  const Rational hi = Rational(m) * j;
  const bool case_a = g.w > lo && g.w <= mid;
  const bool case_b = g.w > mid && g.w <= hi;
  if (!case_a && !case_b) return out;

  if (n >= 2) {
    out.cross_case = case_a ? 'a' : 'b';
    if (case_a) {
      out.full_crosses = total.counts.crosses - (m - 1) * pow2(n - 1);
    } else {
      out.full_crosses = total.counts.crosses - m * pow2(n - 1);
      out.half_crosses = pow2(n - 1);
    }
  }
  out.loop_case = case_a ? 'a' : 'b';
  if (case_a) {
    out.loops = total.counts.loops - pow2(n) * (1 + g.w.ceil() - 2 * m);
  } else {
    out.loops = total.counts.loops - m * pow2(n) * (g.jn - 2);
  }
  return out;
}

// Closed-form shape counts of F_n on each side of the plates (j = N
// throughout). Two disjoint half-crosses count as one whole cross, and the
// 2^{n-1} crosses centred on the plates contribute 2^{n-1} half-crosses to
// each side.
struct PlateCensus {
  int level = 0;
  std::int64_t interior_cells = 0;
  std::int64_t exterior_cells = 0;
  std::int64_t interior_loops = 0;
  std::int64_t exterior_loops = 0;
  std::int64_t exterior_V = 0;
  std::int64_t interior_crosses = 0;  // n >= 2
  std::int64_t exterior_crosses = 0;  // n >= 2
  std::int64_t plate_crosses = 0;     // n >= 2
  std::int64_t half_crosses_per_side = 0;
};

inline PlateCensus plate_census_formula(const PlateConfig& cfg, int n) {
  cfg.validate();
  if (n < 1) throw ValidationError("plate census needs n >= 1");
  const auto seq = JSequence::periodic({cfg.N});
  const auto ip = level_products(seq, n);
  const Rational q(cfg.Z + 1, cfg.N);
  const Rational p = Rational(1) - q;
  auto exact = [](const Rational& r) {
    if (!r.is_integer()) throw std::logic_error("plate census produced a non-integer count " + r.str());
    return r.num();
  };
  PlateCensus c;
  c.level = n;
  c.interior_cells = exact(q * Rational(checked_mul(pow2(n), ip[n])));
  c.exterior_cells = exact(p * Rational(checked_mul(pow2(n), ip[n])));
  c.exterior_V = pow2(n);
  if (n == 1) {
    c.interior_loops = cfg.Z + 1;
    c.exterior_loops = cfg.N - cfg.Z - 3;
    return c;
  }
  const Rational loops_all(checked_mul(checked_mul(pow2(n - 1), ip[n - 1]), cfg.N - 2));
  c.interior_loops = exact(q * loops_all);
  c.exterior_loops = exact(p * loops_all);
  c.interior_crosses = exact(q * Rational(checked_mul(pow2(n - 2), ip[n - 1])));
  c.exterior_crosses = exact(Rational(pow2(n - 2)) * (p * Rational(ip[n - 1]) - Rational(1)));
  c.plate_crosses = pow2(n - 1);
  c.half_crosses_per_side = pow2(n - 1);
  return c;
}

}  // namespace laakso
