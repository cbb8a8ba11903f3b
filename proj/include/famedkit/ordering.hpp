#pragma once

// Orders (branchings) of ideal triangulations: vertex numberings that make
// every face gluing order-preserving, equivalently orientations of the
// quotient edges with no cyclic face.

#include "famedkit/triangulation.hpp"

#include <vector>

namespace famedkit {

struct Order {
  // Vertex v of tetrahedron t is renamed relabeling[t][v].
  std::vector<Perm4> relabeling;
  // +1 / -1 per quotient edge, relative to the edge's reference direction.
  std::vector<int> edge_orientation;

  friend bool operator==(const Order&, const Order&) = default;
};

bool is_ordered(const IdealTriangulation& tri);

// Every order of the triangulation, sorted lexicographically by edge
// orientation vector with +1 before -1. Empty when the triangulation is not
// orderable.
std::vector<Order> enumerate_orders(const IdealTriangulation& tri);
std::vector<Order> enumerate_orders(const IdealTriangulation& tri, const QuotientComplex& cells);

// Relabels the triangulation by the order; throws InvalidOrder unless the
// result is ordered.
IdealTriangulation apply_order(const IdealTriangulation& tri, const Order& order);

Order reverse_order(const Order& order);

// Builds the order induced by an edge orientation vector; empty if some face
// is cyclic.
std::optional<Order> order_from_orientation(const IdealTriangulation& tri,
                                            const QuotientComplex& cells,
                                            const std::vector<int>& edge_orientation);

// True iff no face triangle is a directed 3-cycle under the orientation.
bool orientation_is_acyclic(const IdealTriangulation& tri, const QuotientComplex& cells,
                            const std::vector<int>& edge_orientation);

nlohmann::json to_json(const Order& order);

} // namespace famedkit
