#pragma once

// Explicit quantum-graph approximations F_n of a Laakso space.
//
// F_n is realised as the quotient of [0,1] x {0,1}^n: the point (x, w) on
// row w is identified with (x, w') when x is a column that first appears at
// level i >= 1 and w, w' differ only in bit i. Columns are k / I_n for
// k = 0..I_n; each cell [k, k+1] carries one edge per row.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "laakso/error.hpp"
#include "laakso/jsequence.hpp"
#include "laakso/plates.hpp"
#include "laakso/rational.hpp"

namespace laakso {

struct Vertex {
  int id = 0;
  std::int64_t column = 0;  // k, with unperturbed position k / I_n
  Rational x;               // physical position (differs from k / I_n only with plates)
  int level = 0;            // construction level at which this column appeared (0 for the endpoints)
  bool conducting = false;
  std::uint64_t row = 0;    // representative row of the identified class
};

struct Edge {
  int id = 0;
  int tail = 0;             // vertex at column `cell`
  int head = 0;             // vertex at column `cell + 1`
  std::int64_t cell = 0;
  Rational length;
  std::uint64_t row = 0;
};

enum class ShapeKind { V, loop, cross, half_cross };

inline const char* to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::V: return "V";
    case ShapeKind::loop: return "loop";
    case ShapeKind::cross: return "cross";
    case ShapeKind::half_cross: return "half-cross";
  }
  return "?";
}

struct Shape {
  ShapeKind kind = ShapeKind::V;
  std::int64_t first_column = 0;
  std::int64_t last_column = 0;
  std::uint64_t row = 0;  // smallest row among the constituent edges
  std::vector<int> edges;
};

// Binary label of a row: character i is the copy chosen at level i + 1.
inline std::string row_label(std::uint64_t row, int level) {
  std::string s(static_cast<std::size_t>(level), '0');
  for (int i = 0; i < level; ++i) {
    if ((row >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

struct QuantumGraph {
  int level = 0;
  std::int64_t columns = 1;  // I_n
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Shape> shapes;
  std::optional<PlateConfig> plates;

  std::vector<std::vector<int>> incidence() const {
    std::vector<std::vector<int>> inc(vertices.size());
    for (const auto& e : edges) {
      inc[static_cast<std::size_t>(e.tail)].push_back(e.id);
      inc[static_cast<std::size_t>(e.head)].push_back(e.id);
    }
    return inc;
  }

  std::string edge_row_label(const Edge& e) const { return row_label(e.row, level); }

  // Plate columns of F_n (only meaningful with plates and level >= 1).
  std::int64_t left_plate_column() const { return plates->plate_column() * (columns / plates->N); }
  std::int64_t right_plate_column() const { return columns - left_plate_column(); }
};

namespace detail {

// Smallest i such that column k of F_n is already a node of F_i.
inline int column_level(std::int64_t k, const LevelProducts& ip) {
  const int n = ip.level();
  for (int i = 0; i <= n; ++i) {
    if (k % (ip[n] / ip[i]) == 0) return i;
  }
  return n;
}

// Remove bit b from w (used to enumerate identified vertex classes).
inline std::uint64_t drop_bit(std::uint64_t w, int b) {
  const std::uint64_t low = w & ((std::uint64_t{1} << b) - 1);
  return ((w >> (b + 1)) << b) | low;
}

class EdgeUnion {
 public:
  explicit EdgeUnion(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Decompose F_n (n >= 1) into V's, loops and crosses from the topology alone:
// cut the graph at the columns created at level n, then each connected
// piece of a slab between consecutive cut columns is one shape.
inline std::vector<Shape> decompose_shapes(const QuantumGraph& g) {
  std::vector<Shape> shapes;
  if (g.level == 0) return shapes;
  const int n = g.level;
  std::vector<int> col_level(static_cast<std::size_t>(g.columns) + 1, 0);
  for (const auto& v : g.vertices) col_level[static_cast<std::size_t>(v.column)] = v.level;

  std::vector<std::int64_t> cuts;
  for (std::int64_t k = 0; k <= g.columns; ++k) {
    if (k == 0 || k == g.columns || col_level[static_cast<std::size_t>(k)] == n) cuts.push_back(k);
  }
  std::vector<std::size_t> slab_of_cell(static_cast<std::size_t>(g.columns));
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    for (std::int64_t c = cuts[s]; c < cuts[s + 1]; ++c) slab_of_cell[static_cast<std::size_t>(c)] = s;
  }

  EdgeUnion uf(g.edges.size());
  const auto inc = g.incidence();
  for (const auto& list : inc) {
    for (std::size_t a = 0; a < list.size(); ++a) {
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        const auto& ea = g.edges[static_cast<std::size_t>(list[a])];
        const auto& eb = g.edges[static_cast<std::size_t>(list[b])];
        if (slab_of_cell[static_cast<std::size_t>(ea.cell)] == slab_of_cell[static_cast<std::size_t>(eb.cell)]) {
          uf.unite(static_cast<std::size_t>(ea.id), static_cast<std::size_t>(eb.id));
        }
      }
    }
  }

  std::vector<std::vector<int>> groups(g.edges.size());
  for (const auto& e : g.edges) groups[uf.find(static_cast<std::size_t>(e.id))].push_back(e.id);
  for (auto& grp : groups) {
    if (grp.empty()) continue;
    Shape s;
    s.first_column = g.columns;
    s.last_column = 0;
    s.row = ~std::uint64_t{0};
    bool touches_end = false;
    for (int id : grp) {
      const auto& e = g.edges[static_cast<std::size_t>(id)];
      s.first_column = std::min(s.first_column, e.cell);
      s.last_column = std::max(s.last_column, e.cell + 1);
      s.row = std::min(s.row, e.row);
      if (e.cell == 0 || e.cell + 1 == g.columns) touches_end = true;
    }
    const auto span = s.last_column - s.first_column;
    if (span == 1 && grp.size() == 2) {
      s.kind = touches_end ? ShapeKind::V : ShapeKind::loop;
    } else if (span == 2 && grp.size() == 8) {
      s.kind = ShapeKind::cross;
    } else {
      throw std::logic_error("unexpected piece in shape decomposition: span " + std::to_string(span) + ", " +
                             std::to_string(grp.size()) + " edges");
    }
    s.edges = std::move(grp);
    shapes.push_back(std::move(s));
  }
  std::sort(shapes.begin(), shapes.end(), [](const Shape& a, const Shape& b) {
    return std::tie(a.first_column, a.row, a.kind) < std::tie(b.first_column, b.row, b.kind);
  });
  return shapes;
}

}  // namespace detail

// Hard cap on explicit graph size; larger levels are only reachable through
// the closed-form modules.
inline constexpr std::int64_t kMaxGraphEdges = 20'000'000;

inline QuantumGraph build_graph(const JSequence& seq, int n, const std::optional<PlateConfig>& plates = std::nullopt) {
  if (n < 0) throw ValidationError("level must be >= 0");
  if (n > 40) throw ValidationError("level too large for an explicit graph");
  const LevelProducts ip = level_products(seq, n);
  const std::int64_t cols = ip[n];
  const std::int64_t rows = pow2(n);
  if (checked_mul(rows, cols) > kMaxGraphEdges) {
    throw ValidationError("F_" + std::to_string(n) + " has " + std::to_string(rows * cols) + " edges; explicit graphs are capped at " +
                          std::to_string(kMaxGraphEdges));
  }

  QuantumGraph g;
  g.level = n;
  g.columns = cols;

  std::int64_t left_plate = -1;
  std::int64_t right_plate = -1;
  Rational interior_len(1, cols);
  Rational exterior_len(1, cols);
  if (plates) {
    plates->validate();
    if (n < 1) throw ValidationError("plates attach to F_1 nodes; build the plate graph at level n >= 1");
    if (seq.j(1) != plates->N) {
      throw ValidationError("plate configuration expects j_1 = N = " + std::to_string(plates->N) + ", sequence has j_1 = " +
                            std::to_string(seq.j(1)));
    }
    g.plates = plates;
    left_plate = plates->plate_column() * (cols / plates->N);
    right_plate = cols - left_plate;
    interior_len = plates->interior_scale() / Rational(cols);
    exterior_len = plates->exterior_scale() / Rational(cols);
  }
  auto cell_length = [&](std::int64_t c) {
    if (!plates) return interior_len;
    return (c >= left_plate && c < right_plate) ? interior_len : exterior_len;
  };

  // Vertices, column by column.
  std::vector<std::int64_t> offset(static_cast<std::size_t>(cols) + 2, 0);
  std::vector<int> level_of(static_cast<std::size_t>(cols) + 1);
  Rational x(0);
  for (std::int64_t k = 0; k <= cols; ++k) {
    const int lev = detail::column_level(k, ip);
    level_of[static_cast<std::size_t>(k)] = lev;
    const std::int64_t count = lev == 0 ? rows : rows / 2;
    offset[static_cast<std::size_t>(k) + 1] = offset[static_cast<std::size_t>(k)] + count;
    for (std::uint64_t w = 0; w < static_cast<std::uint64_t>(rows); ++w) {
      if (lev != 0 && ((w >> (lev - 1)) & 1U)) continue;
      Vertex v;
      v.id = static_cast<int>(g.vertices.size());
      v.column = k;
      v.x = x;
      v.level = lev;
      v.row = w;
      v.conducting = plates && (k == left_plate || k == right_plate);
      g.vertices.push_back(v);
    }
    if (k < cols) x += cell_length(k);
  }
  if (x != Rational(1)) throw std::logic_error("cell lengths do not sum to 1");

  auto vid = [&](std::int64_t k, std::uint64_t w) {
    const int lev = level_of[static_cast<std::size_t>(k)];
    const std::uint64_t idx = lev == 0 ? w : detail::drop_bit(w, lev - 1);
    return static_cast<int>(offset[static_cast<std::size_t>(k)] + static_cast<std::int64_t>(idx));
  };

  g.edges.reserve(static_cast<std::size_t>(rows * cols));
  for (std::int64_t c = 0; c < cols; ++c) {
    const Rational len = cell_length(c);
    for (std::uint64_t w = 0; w < static_cast<std::uint64_t>(rows); ++w) {
      Edge e;
      e.id = static_cast<int>(g.edges.size());
      e.tail = vid(c, w);
      e.head = vid(c + 1, w);
      e.cell = c;
      e.length = len;
      e.row = w;
      g.edges.push_back(e);
    }
  }
  g.shapes = detail::decompose_shapes(g);
  return g;
}

// Connectivity check (breadth-first over vertices).
inline bool is_connected(const QuantumGraph& g) {
  if (g.vertices.empty()) return true;
  const auto inc = g.incidence();
  std::vector<char> seen(g.vertices.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int eid : inc[static_cast<std::size_t>(v)]) {
      const auto& e = g.edges[static_cast<std::size_t>(eid)];
      int u = e.tail == v ? e.head : e.tail;
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == g.vertices.size();
}

}  // namespace laakso
