#include "test_support.hpp"

#include <doctest.h>

using namespace famedkit;
using namespace famedkit::testing;

namespace {

// Angle sums around each quotient edge from the raw incidences: with sign +1
// the z angle sits on 01/23, z' on 03/12 and z'' on 02/13; sign -1 swaps z'
// and z''.
std::vector<Rational> edge_angle_sums(const IdealTriangulation& tri, const std::vector<Rational>& angles) {
  const auto cells = quotient_cells(tri);
  const auto signs = tetra_signs(tri);
  std::vector<Rational> sums(cells.edges.size(), Rational(0));
  for (std::size_t t = 0; t < tri.size(); ++t)
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        int slot = 0;
        if ((a == 0 && b == 1) || (a == 2 && b == 3))
          slot = 0;
        else if ((a == 0 && b == 3) || (a == 1 && b == 2))
          slot = signs[t] > 0 ? 1 : 2;
        else
          slot = signs[t] > 0 ? 2 : 1;
        sums[cells.edge_of[t][edge_index(a, b)]] += angles[3 * t + static_cast<std::size_t>(slot)];
      }
  return sums;
}

} // namespace

TEST_SUITE("angles") {

TEST_CASE("small linear programs") {
  // max x + y s.t. x + 2y + s = 4, 3x + y + u = 6.
  LinearProgram lp;
  lp.A.resize(2, 4);
  lp.A << 1, 2, 1, 0, 3, 1, 0, 1;
  lp.b.resize(2);
  lp.b << 4, 6;
  lp.c.resize(4);
  lp.c << 1, 1, 0, 0;
  const auto sol = solve_linear_program(lp);
  REQUIRE(sol.status == LinearProgramSolution::Status::optimal);
  CHECK(sol.value == Rational(14, 5));
  CHECK(sol.x(0) == Rational(8, 5));
  CHECK(sol.x(1) == Rational(6, 5));

  // x + y = -1 has no nonnegative solution.
  LinearProgram bad;
  bad.A.resize(1, 2);
  bad.A << 1, 1;
  bad.b.resize(1);
  bad.b << -1;
  bad.c.resize(2);
  bad.c << 0, 0;
  CHECK(solve_linear_program(bad).status == LinearProgramSolution::Status::infeasible);

  // max x with x - y = 0 is unbounded.
  LinearProgram open;
  open.A.resize(1, 2);
  open.A << 1, -1;
  open.b.resize(1);
  open.b << 0;
  open.c.resize(2);
  open.c << 1, 0;
  CHECK(solve_linear_program(open).status == LinearProgramSolution::Status::unbounded);
}

TEST_CASE("figure-eight admits the regular angle structure") {
  const auto angles = angle_structure_feasible(load_fixture("fig8.json"));
  REQUIRE(angles.has_value());
  CHECK(angles->margin == Rational(1, 3));
  for (const auto& a : angles->angles) CHECK(a == Rational(1, 3));
}

TEST_CASE("angle witnesses are exact") {
  for (const auto& row : census_rows()) {
    CAPTURE(row.name);
    const auto tri = load_census(row.name);
    const auto angles = angle_structure_feasible(tri);
    CHECK(angles.has_value() == row.hyperbolic);
    if (!angles) continue;
    CHECK(is_angle_structure(cusp_triangulation(tri), angles->angles));
    for (const auto& a : angles->angles) CHECK(a >= angles->margin);
    CHECK(angles->margin > 0);
    for (std::size_t t = 0; t < tri.size(); ++t)
      CHECK(angles->angles[3 * t] + angles->angles[3 * t + 1] + angles->angles[3 * t + 2] == 1);
    for (const auto& s : edge_angle_sums(tri, angles->angles)) CHECK(s == 2);
  }
}

TEST_CASE("angle feasibility is invariant under relabeling and order") {
  std::mt19937_64 rng(3);
  for (const char* name : {"K3a1", "K6a3", "K7a7"}) {
    const auto tri = load_census(name);
    const bool base = angle_structure_feasible(tri).has_value();
    CHECK(angle_structure_feasible(random_relabel(tri, rng)).has_value() == base);
    for (const auto& order : enumerate_orders(tri))
      CHECK(angle_structure_feasible(apply_order(tri, order)).has_value() == base);
  }
}

} // TEST_SUITE
