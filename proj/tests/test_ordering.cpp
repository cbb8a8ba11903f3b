#include "test_support.hpp"

#include <doctest.h>

using namespace famedkit;
using namespace famedkit::testing;

TEST_SUITE("ordering") {

TEST_CASE("figure-eight fixture is ordered and has four orders") {
  const auto tri = load_fixture("fig8.json");
  CHECK(is_ordered(tri));
  CHECK(enumerate_orders(tri).size() == 4);
}

TEST_CASE("order counts match the census sample") {
  for (const auto& row : census_rows()) {
    CAPTURE(row.name);
    const auto tri = load_census(row.name);
    CHECK(tri.size() == row.tetrahedra);
    CHECK(enumerate_orders(tri).size() == row.orders);
  }
}

TEST_CASE("enumeration agrees with the 2^E brute force for small fixtures") {
  std::size_t checked = 0;
  for (const auto& row : census_rows()) {
    if (row.tetrahedra > 4) continue;
    CAPTURE(row.name);
    const auto tri = load_census(row.name);
    CHECK(enumerate_orders(tri).size() == brute_force_order_count(tri));
    ++checked;
  }
  CHECK(brute_force_order_count(load_fixture("fig8.json")) == 4);
  CHECK(checked == 7);
}

TEST_CASE("every enumerated order produces an ordered triangulation") {
  for (const char* name : {"K6a1", "K7a3"}) {
    const auto tri = load_census(name);
    for (const auto& order : enumerate_orders(tri)) {
      const auto ordered = apply_order(tri, order);
      CHECK(is_ordered(ordered));
      CHECK(canonical_signature(ordered) == canonical_signature(tri));
    }
  }
}

TEST_CASE("reversal is an involution on the set of orders") {
  const auto tri = load_census("K7a2");
  const auto orders = enumerate_orders(tri);
  for (const auto& order : orders) {
    const Order rev = reverse_order(order);
    CHECK(reverse_order(rev) == order);
    CHECK(std::find(orders.begin(), orders.end(), rev) != orders.end());
    for (std::size_t j = 0; j < order.edge_orientation.size(); ++j)
      CHECK(rev.edge_orientation[j] == -order.edge_orientation[j]);
  }
}

TEST_CASE("order count is invariant under relabeling") {
  std::mt19937_64 rng(11);
  for (const auto& row : census_rows()) {
    CAPTURE(row.name);
    const auto tri = random_relabel(load_census(row.name), rng);
    CHECK(enumerate_orders(tri).size() == row.orders);
  }
}

TEST_CASE("unordered relabeling of the figure-eight") {
  const auto fig8 = load_fixture("fig8.json");
  const auto tri = relabel(fig8, {0, 1}, {Perm4(1, 0, 2, 3), Perm4::identity()});
  CHECK_FALSE(is_ordered(tri));
  CHECK(enumerate_orders(tri).size() == 4);
  CHECK_THROWS_AS(face_adjacency_matrices(tri), NotOrdered);
}

TEST_CASE("invalid order is rejected") {
  const auto tri = load_fixture("fig8.json");
  Order bogus = enumerate_orders(tri).front();
  bogus.relabeling[0] = Perm4(1, 0, 2, 3) * bogus.relabeling[0];
  CHECK_THROWS_AS(apply_order(tri, bogus), InvalidOrder);
}

} // TEST_SUITE
