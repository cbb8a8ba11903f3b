#include "test_support.hpp"

#include <doctest.h>

#include <set>

using namespace famedkit;
using namespace famedkit::testing;

TEST_SUITE("pachner-search") {

TEST_CASE("2-3 on each figure-eight face") {
  const auto tri = load_fixture("fig8.json");
  const auto sig = canonical_signature(tri);
  const double volume = *check_geometry(tri).volume;
  for (std::size_t f = 0; f < 4; ++f) {
    CAPTURE(f);
    const auto bigger = two_three_move(tri, f);
    CHECK(bigger.size() == 3);
    CHECK(homology_h1(bigger).str() == "Z");
    const auto cells = quotient_cells(bigger);
    CHECK(cells.n_vertices == 1);
    CHECK_NOTHROW(tetra_signs(bigger));
    bool restored = false;
    for (std::size_t e = 0; e < cells.edges.size(); ++e)
      if (cells.edges[e].degree() == 3) restored = restored || canonical_signature(three_two_move(bigger, e)) == sig;
    CHECK(restored);
    const auto geometry = check_geometry(bigger);
    CHECK(geometry.status == GeometryStatus::certified_geometric);
    CHECK(std::abs(*geometry.volume - volume) < 1e-6);
  }
}

TEST_CASE("round trip on every face of the census sample") {
  for (const auto& row : census_rows()) {
    CAPTURE(row.name);
    const auto tri = load_census(row.name);
    const auto sig = canonical_signature(tri);
    const auto h1 = homology_h1(tri);
    const auto cells = quotient_cells(tri);
    for (const Move& move : legal_moves(tri, cells)) {
      if (move.kind != Move::Kind::two_three) continue;
      const auto bigger = two_three_move(tri, move.cell);
      CHECK(bigger.size() == tri.size() + 1);
      CHECK(homology_h1(bigger) == h1);
      CHECK(quotient_cells(bigger).n_vertices == 1);
      const auto big_cells = quotient_cells(bigger);
      bool restored = false;
      for (const Move& back : legal_moves(bigger, big_cells))
        if (back.kind == Move::Kind::three_two)
          restored = restored || canonical_signature(three_two_move(bigger, back.cell)) == sig;
      CHECK(restored);
    }
  }
}

TEST_CASE("3-2 preserves homology and the cusp") {
  const auto tri = two_three_move(load_census("K6a1"), 0);
  const auto cells = quotient_cells(tri);
  std::size_t applied = 0;
  for (const Move& move : legal_moves(tri, cells)) {
    if (move.kind != Move::Kind::three_two) continue;
    const auto smaller = three_two_move(tri, move.cell);
    CHECK(smaller.size() == tri.size() - 1);
    CHECK(homology_h1(smaller) == homology_h1(tri));
    CHECK(quotient_cells(smaller).n_vertices == 1);
    CHECK(cusp_triangulation(smaller).euler_characteristic() == 0);
    ++applied;
  }
  CHECK(applied >= 1);
}

TEST_CASE("move preconditions") {
  const auto fig8 = load_fixture("fig8.json");
  CHECK_THROWS_AS(three_two_move(fig8, 0), EdgeNotDegreeThree);
  CHECK_THROWS_AS(two_three_move(load_fixture("gieseking.json"), 0), FaceInSingleTetrahedron);
  // Degree-3 edge meeting one tetrahedron twice.
  bool found_repeat = false;
  for (const auto& row : census_rows()) {
    const auto tri = load_census(row.name);
    const auto cells = quotient_cells(tri);
    for (std::size_t e = 0; e < cells.edges.size(); ++e) {
      const auto& inc = cells.edges[e].incidences;
      if (inc.size() != 3) continue;
      if (inc[0].tet == inc[1].tet || inc[1].tet == inc[2].tet || inc[0].tet == inc[2].tet) {
        CHECK_THROWS_AS(three_two_move(tri, e), RepeatedTetrahedronAroundEdge);
        found_repeat = true;
      }
    }
  }
  if (!found_repeat) MESSAGE("no degree-3 edge with a repeated tetrahedron in the sample");
}

TEST_CASE("legal moves are sorted with 3-2 first") {
  const auto tri = two_three_move(load_census("K5a1"), 1);
  const auto moves = legal_moves(tri, quotient_cells(tri));
  REQUIRE_FALSE(moves.empty());
  for (std::size_t i = 1; i < moves.size(); ++i) {
    const auto key = [](const Move& m) { return std::pair(m.kind == Move::Kind::two_three, m.cell); };
    CHECK(key(moves[i - 1]) < key(moves[i]));
  }
  CHECK(moves.front().kind == Move::Kind::three_two);
}

TEST_CASE("search succeeds at the root for the figure-eight") {
  const auto out = search_famed_geometric(load_fixture("fig8.json"), {});
  REQUIRE(out.result.has_value());
  CHECK(out.result->path.empty());
  CHECK(out.stats.nodes_visited == 1);
  CHECK(out.result->report.famed);
  CHECK(out.result->geometry.status == GeometryStatus::certified_geometric);
}

TEST_CASE("search on the trefoil exhausts the space without a result") {
  for (std::size_t extra : {0, 1, 2}) {
    SearchBudget budget;
    budget.max_extra_tets = extra;
    budget.max_nodes = 1000;
    const auto out = search_famed_geometric(load_census("K3a1"), budget);
    CHECK_FALSE(out.result.has_value());
    CHECK(out.stats.nodes_visited >= 1);
    CHECK(out.stats.max_tetrahedra <= 2 + extra);
  }
  SearchBudget tight;
  tight.max_extra_tets = 3;
  tight.max_nodes = 5;
  const auto capped = search_famed_geometric(load_census("K3a1"), tight);
  CHECK_FALSE(capped.result.has_value());
  CHECK(capped.stats.budget_exhausted);
  CHECK(capped.stats.nodes_visited == 5);
}

TEST_CASE("visited nodes are distinct triangulations of the same manifold") {
  for (const char* name : {"K3a1", "K5a2"}) {
    CAPTURE(name);
    const auto tri = load_census(name);
    SearchBudget budget;
    budget.max_extra_tets = 2;
    budget.record_visited = true;
    const auto out = search_famed_geometric(tri, budget);
    CHECK_FALSE(out.result.has_value());
    CHECK_FALSE(out.stats.budget_exhausted);
    REQUIRE(out.visited.size() == out.stats.nodes_visited);
    std::set<std::string> signatures;
    const auto h1 = homology_h1(tri);
    for (const auto& node : out.visited) {
      CHECK(signatures.insert(canonical_signature(node).text).second);
      CHECK(node.size() <= tri.size() + 2);
      CHECK(homology_h1(node) == h1);
      CHECK(quotient_cells(node).n_vertices == 1);
    }
    CHECK(out.visited.front() == tri);
  }
}

} // TEST_SUITE
