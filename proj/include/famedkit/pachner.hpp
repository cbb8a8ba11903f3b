#pragma once

// 2-3 and 3-2 moves and the bounded breadth-first search for a geometric
// triangulation with a FAMED order.

#include "famedkit/famed.hpp"
#include "famedkit/geometry.hpp"
#include "famedkit/ordering.hpp"

#include <optional>
#include <vector>

namespace famedkit {

struct Move {
  enum class Kind { three_two, two_three };
  Kind kind = Kind::two_three;
  std::size_t cell = 0; // quotient edge (3-2) or quotient face (2-3)

  friend bool operator==(const Move&, const Move&) = default;
};

// Replaces the two tetrahedra meeting at the quotient face by three around a
// new edge. Old tetrahedra keep their relative order; the new ones are
// appended. Throws FaceInSingleTetrahedron.
IdealTriangulation two_three_move(const IdealTriangulation& tri, std::size_t face);

// Replaces the three tetrahedra around a degree-3 quotient edge by two.
// Throws EdgeNotDegreeThree or RepeatedTetrahedronAroundEdge.
IdealTriangulation three_two_move(const IdealTriangulation& tri, std::size_t edge);

IdealTriangulation apply_move(const IdealTriangulation& tri, const Move& move);

// Legal moves, 3-2 moves first, each kind by cell index.
std::vector<Move> legal_moves(const IdealTriangulation& tri, const QuotientComplex& cells);

struct SearchBudget {
  std::size_t max_extra_tets = 0;
  std::size_t max_nodes = 200000;
  std::optional<double> time_limit_seconds;
  bool allow_uncertified = false;
  bool record_visited = false;  // keep every visited triangulation in the outcome
};

struct SearchStats {
  std::size_t nodes_visited = 0;
  std::size_t frontier_size = 0;
  std::size_t famed_nodes = 0;       // nodes with a FAMED order (geometry was checked)
  std::size_t max_tetrahedra = 0;
  bool budget_exhausted = false;     // node or time cap hit before the space was exhausted
  double seconds = 0;
};

struct SearchResult {
  IdealTriangulation triangulation;
  Order order;
  FamedReport report;
  GeometryReport geometry;
  std::vector<Move> path;
  std::size_t n_orders = 0;
};

struct SearchOutcome {
  std::optional<SearchResult> result;
  SearchStats stats;
  std::vector<IdealTriangulation> visited;  // in visiting order, with record_visited
};

// Breadth-first over 2-3/3-2 moves within N_start + max_extra_tets
// tetrahedra, deduplicated by canonical signature. The first node with a
// FAMED order that is also geometric is returned.
SearchOutcome search_famed_geometric(const IdealTriangulation& tri, const SearchBudget& budget);

nlohmann::json to_json(const Move& move);
nlohmann::json to_json(const SearchStats& stats);

} // namespace famedkit
