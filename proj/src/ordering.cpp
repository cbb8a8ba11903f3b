#include "famedkit/ordering.hpp"

#include <algorithm>

namespace famedkit {

namespace {

struct FaceTriangle {
  std::array<std::size_t, 3> edge;  // quotient edges of ab, bc, ac
  std::array<int, 3> sign;          // local low->high direction relative to reference
};

std::vector<FaceTriangle> face_triangles(const IdealTriangulation& tri, const QuotientComplex& cells) {
  std::vector<FaceTriangle> out;
  out.reserve(4 * tri.size());
  for (std::size_t t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      std::array<int, 3> v{};
      int k = 0;
      for (int w = 0; w < 4; ++w)
        if (w != f) v[k++] = w;
      const std::array<int, 3> local{edge_index(v[0], v[1]), edge_index(v[1], v[2]),
                                     edge_index(v[0], v[2])};
      FaceTriangle tri_face;
      for (int i = 0; i < 3; ++i) {
        tri_face.edge[i] = cells.edge_of[t][local[i]];
        tri_face.sign[i] = cells.edge_sign[t][local[i]];
      }
      out.push_back(tri_face);
    }
  return out;
}

// a<b<c with a->b, b->c, c->a (or the reverse) is a cycle.
bool is_cycle(const FaceTriangle& face, const std::vector<int>& orientation) {
  const int ab = orientation[face.edge[0]] * face.sign[0];
  const int bc = orientation[face.edge[1]] * face.sign[1];
  const int ac = orientation[face.edge[2]] * face.sign[2];
  return ab == bc && ac == -ab;
}

} // namespace

bool is_ordered(const IdealTriangulation& tri) {
  for (std::size_t t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      const Perm4& p = tri.gluing(t, f).perm;
      int previous = -1;
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        if (p[v] < previous) return false;
        previous = p[v];
      }
    }
  return true;
}

bool orientation_is_acyclic(const IdealTriangulation& tri, const QuotientComplex& cells,
                            const std::vector<int>& edge_orientation) {
  for (const auto& e : cells.edges)
    if (e.self_reversed) return false;
  for (const auto& face : face_triangles(tri, cells))
    if (is_cycle(face, edge_orientation)) return false;
  return true;
}

std::optional<Order> order_from_orientation(const IdealTriangulation& tri,
                                            const QuotientComplex& cells,
                                            const std::vector<int>& edge_orientation) {
  if (!orientation_is_acyclic(tri, cells, edge_orientation)) return std::nullopt;
  Order order;
  order.edge_orientation = edge_orientation;
  order.relabeling.reserve(tri.size());
  for (std::size_t t = 0; t < tri.size(); ++t) {
    std::array<int, 4> out_degree{0, 0, 0, 0};
    for (int e = 0; e < 6; ++e) {
      const int dir = edge_orientation[cells.edge_of[t][e]] * cells.edge_sign[t][e];
      ++out_degree[dir > 0 ? kTetEdges[e][0] : kTetEdges[e][1]];
    }
    const Perm4 label(3 - out_degree[0], 3 - out_degree[1], 3 - out_degree[2], 3 - out_degree[3]);
    if (!label.is_valid()) return std::nullopt;
    order.relabeling.push_back(label);
  }
  return order;
}

std::vector<Order> enumerate_orders(const IdealTriangulation& tri) {
  return enumerate_orders(tri, quotient_cells(tri));
}

std::vector<Order> enumerate_orders(const IdealTriangulation& tri, const QuotientComplex& cells) {
  const std::size_t n_edges = cells.edges.size();
  std::vector<Order> orders;
  if (n_edges == 0) return orders;
  for (const auto& e : cells.edges)
    if (e.self_reversed) return orders;

  // Each face triangle is checked once its last edge (by index) is assigned.
  std::vector<std::vector<FaceTriangle>> checks(n_edges);
  for (const auto& face : face_triangles(tri, cells))
    checks[*std::max_element(face.edge.begin(), face.edge.end())].push_back(face);

  // Reversal is a bijection on orders, so edge 0 is fixed to +1 and the
  // other half is recovered by flipping.
  std::vector<int> orientation(n_edges, 0);
  std::vector<std::vector<int>> found;
  orientation[0] = 1;
  auto consistent = [&](std::size_t e) {
    for (const auto& face : checks[e])
      if (is_cycle(face, orientation)) return false;
    return true;
  };
  auto search = [&](auto&& self, std::size_t e) -> void {
    if (e == n_edges) {
      found.push_back(orientation);
      return;
    }
    for (int choice : {1, -1}) {
      orientation[e] = choice;
      if (consistent(e)) self(self, e + 1);
    }
    orientation[e] = 0;
  };
  if (consistent(0)) search(search, 1);

  const std::size_t half = found.size();
  for (std::size_t i = 0; i < half; ++i) {
    std::vector<int> flipped = found[i];
    for (int& s : flipped) s = -s;
    found.push_back(std::move(flipped));
  }
  std::sort(found.begin(), found.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](int x, int y) { return x > y; });
  });
  orders.reserve(found.size());
  for (const auto& o : found) {
    auto order = order_from_orientation(tri, cells, o);
    if (order) orders.push_back(std::move(*order));
  }
  return orders;
}

IdealTriangulation apply_order(const IdealTriangulation& tri, const Order& order) {
  if (order.relabeling.size() != tri.size())
    throw InvalidOrder("relabeling has " + std::to_string(order.relabeling.size()) +
                       " entries for " + std::to_string(tri.size()) + " tetrahedra");
  for (const auto& p : order.relabeling)
    if (!p.is_valid()) throw InvalidOrder("relabeling entry is not a permutation");
  std::vector<std::size_t> same(tri.size());
  for (std::size_t t = 0; t < tri.size(); ++t) same[t] = t;
  IdealTriangulation out = relabel(tri, same, order.relabeling);
  if (!is_ordered(out)) throw InvalidOrder("relabeled gluings are not order-preserving");
  return out;
}

Order reverse_order(const Order& order) {
  Order out;
  out.relabeling.reserve(order.relabeling.size());
  for (const auto& p : order.relabeling) out.relabeling.push_back(Perm4::reversal() * p);
  out.edge_orientation = order.edge_orientation;
  for (int& s : out.edge_orientation) s = -s;
  return out;
}

nlohmann::json to_json(const Order& order) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : order.relabeling) out.push_back({p[0], p[1], p[2], p[3]});
  return out;
}

} // namespace famedkit
