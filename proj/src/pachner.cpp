#include "famedkit/pachner.hpp"

#include <chrono>
#include <deque>
#include <unordered_set>

namespace famedkit {

namespace {

// Where an old face slot lives after a move: new tetrahedron, new face, and
// the vertex map from the new tetrahedron to the old one.
struct SlotImage {
  std::size_t tet = 0;
  int face = 0;
  Perm4 map;
};

struct InternalGluing {
  std::size_t tet;
  int face;
  std::size_t target;
  Perm4 perm;
};

// Rebuilds gluings: old slot s glued by q to s' becomes image(s) glued by
// map'^-1 q map to image(s').
IdealTriangulation rebuild(const IdealTriangulation& old, std::size_t new_size,
                           const std::vector<std::array<std::optional<SlotImage>, 4>>& image,
                           const std::vector<InternalGluing>& internal) {
  TriangulationBuilder builder(new_size);
  for (std::size_t t = 0; t < old.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      if (!image[t][f]) continue;
      const SlotImage& here = *image[t][f];
      const Gluing& g = old.gluing(t, f);
      const auto& there = image[g.tet][g.perm[f]];
      if (!there) throw std::logic_error("external face glued to a removed face");
      builder.join(here.tet, here.face, there->tet, there->map.inverse() * g.perm * here.map);
    }
  for (const auto& g : internal) builder.join(g.tet, g.face, g.target, g.perm);
  return builder.build();
}

// Old tetrahedra not in `removed` keep their order and labels.
std::vector<std::array<std::optional<SlotImage>, 4>> keep_others(const IdealTriangulation& tri,
                                                                 const std::vector<std::size_t>& removed,
                                                                 std::size_t& next_index) {
  std::vector<std::array<std::optional<SlotImage>, 4>> image(tri.size());
  next_index = 0;
  for (std::size_t t = 0; t < tri.size(); ++t) {
    if (std::find(removed.begin(), removed.end(), t) != removed.end()) continue;
    for (int f = 0; f < 4; ++f) image[t][f] = SlotImage{next_index, f, Perm4::identity()};
    ++next_index;
  }
  return image;
}

Perm4 perm_from(const std::array<int, 4>& images) { return Perm4(images[0], images[1], images[2], images[3]); }

} // namespace

IdealTriangulation two_three_move(const IdealTriangulation& tri, std::size_t face) {
  const auto cells = quotient_cells(tri);
  if (face >= cells.faces.size()) throw std::out_of_range("face index " + std::to_string(face));
  const FaceSlot slot_a = cells.faces[face].first;
  const std::size_t a_tet = slot_a.tet;
  const int a = slot_a.face;
  const Gluing& glue = tri.gluing(a_tet, a);
  const std::size_t b_tet = glue.tet;
  if (a_tet == b_tet) throw FaceInSingleTetrahedron("face " + std::to_string(face) + " joins tetrahedron " +
                                                    std::to_string(a_tet) + " to itself");
  const Perm4& p = glue.perm;
  const int b = p[a];
  std::array<int, 3> x{};
  for (int w = 0, k = 0; w < 4; ++w)
    if (w != a) x[k++] = w;

  std::size_t base = 0;
  auto image = keep_others(tri, {a_tet, b_tet}, base);
  // T_k = (a, b, x_{k+1}, x_{k+2}).
  for (int k = 0; k < 3; ++k) {
    const int x0 = x[k], x1 = x[(k + 1) % 3], x2 = x[(k + 2) % 3];
    const std::size_t tk = base + static_cast<std::size_t>(k);
    image[a_tet][x0] = SlotImage{tk, 1, perm_from({a, x0, x1, x2})};
    image[b_tet][p[x0]] = SlotImage{tk, 0, perm_from({p[x0], b, p[x1], p[x2]})};
  }
  std::vector<InternalGluing> internal;
  for (std::size_t k = 0; k < 3; ++k)
    internal.push_back({base + k, 2, base + (k + 1) % 3, Perm4(0, 1, 3, 2)});
  return rebuild(tri, base + 3, image, internal);
}

IdealTriangulation three_two_move(const IdealTriangulation& tri, std::size_t edge) {
  const auto cells = quotient_cells(tri);
  if (edge >= cells.edges.size()) throw std::out_of_range("edge index " + std::to_string(edge));
  const QuotientEdge& e = cells.edges[edge];
  if (e.degree() != 3 || e.self_reversed)
    throw EdgeNotDegreeThree("edge " + std::to_string(edge) + " has degree " + std::to_string(e.degree()));
  const auto& q = e.incidences;
  if (q[0].tet == q[1].tet || q[1].tet == q[2].tet || q[0].tet == q[2].tet)
    throw RepeatedTetrahedronAroundEdge("edge " + std::to_string(edge));

  std::size_t base = 0;
  auto image = keep_others(tri, {q[0].tet, q[1].tet, q[2].tet}, base);
  const std::size_t a_new = base, b_new = base + 1;
  // A = (u, s0, s1, s2), B = (v, s0, s1, s2); s_i = entry_opposite of Q_i =
  // exit_opposite of Q_{i+1}.
  for (int i = 0; i < 3; ++i) {
    const EdgeIncidence& inc = q[static_cast<std::size_t>(i)];
    std::array<int, 4> to_a{}, to_b{};
    to_a[0] = inc.tail;
    to_b[0] = inc.head;
    to_a[1 + (i + 2) % 3] = to_b[1 + (i + 2) % 3] = inc.exit_opposite;
    to_a[1 + i] = to_b[1 + i] = inc.entry_opposite;
    to_a[1 + (i + 1) % 3] = inc.head;
    to_b[1 + (i + 1) % 3] = inc.tail;
    image[inc.tet][inc.head] = SlotImage{a_new, 1 + (i + 1) % 3, perm_from(to_a)};
    image[inc.tet][inc.tail] = SlotImage{b_new, 1 + (i + 1) % 3, perm_from(to_b)};
  }
  return rebuild(tri, base + 2, image, {{a_new, 0, b_new, Perm4::identity()}});
}

IdealTriangulation apply_move(const IdealTriangulation& tri, const Move& move) {
  return move.kind == Move::Kind::two_three ? two_three_move(tri, move.cell) : three_two_move(tri, move.cell);
}

std::vector<Move> legal_moves(const IdealTriangulation& tri, const QuotientComplex& cells) {
  (void)tri;
  std::vector<Move> moves;
  for (std::size_t j = 0; j < cells.edges.size(); ++j) {
    const QuotientEdge& e = cells.edges[j];
    if (e.degree() != 3 || e.self_reversed) continue;
    const auto& q = e.incidences;
    if (q[0].tet != q[1].tet && q[1].tet != q[2].tet && q[0].tet != q[2].tet)
      moves.push_back({Move::Kind::three_two, j});
  }
  for (std::size_t f = 0; f < cells.faces.size(); ++f)
    if (cells.faces[f].first.tet != cells.faces[f].second.tet) moves.push_back({Move::Kind::two_three, f});
  return moves;
}

// ======================================================
//                 Search
// ======================================================

SearchOutcome search_famed_geometric(const IdealTriangulation& tri, const SearchBudget& budget) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const std::size_t max_tets = tri.size() + budget.max_extra_tets;
  SearchOutcome out;

  struct Node {
    IdealTriangulation tri;
    std::vector<Move> path;
  };
  std::deque<Node> frontier;
  std::unordered_set<std::string> seen;
  seen.insert(canonical_signature(tri).text);
  frontier.push_back({tri, {}});

  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };
  while (!frontier.empty()) {
    if (out.stats.nodes_visited >= budget.max_nodes ||
        (budget.time_limit_seconds && elapsed() > *budget.time_limit_seconds)) {
      out.stats.budget_exhausted = true;
      break;
    }
    Node node = std::move(frontier.front());
    frontier.pop_front();
    ++out.stats.nodes_visited;
    out.stats.max_tetrahedra = std::max(out.stats.max_tetrahedra, node.tri.size());
    if (budget.record_visited) out.visited.push_back(node.tri);

    const auto cells = quotient_cells(node.tri);
    const auto orders = enumerate_orders(node.tri, cells);
    // Angle feasibility does not depend on the vertex labelling.
    const bool angles_ok = !orders.empty() && angle_structure_feasible(node.tri).has_value();
    for (std::size_t k = 0; angles_ok && k < orders.size(); ++k) {
      const IdealTriangulation ordered = apply_order(node.tri, orders[k]);
      const FaceMatrices face = face_adjacency_matrices(ordered);
      const NZMatrices nz = neumann_zagier(ordered, cusp_triangulation(ordered), std::nullopt);
      FamedReport report = famed_check(face, nz, true);
      if (!report.famed) continue;
      ++out.stats.famed_nodes;
      GeometryReport geometry = check_geometry(node.tri, budget.allow_uncertified);
      if (geometry.geometric()) {
        out.result = SearchResult{ordered, orders[k], std::move(report), std::move(geometry), node.path,
                                  orders.size()};
        out.stats.frontier_size = frontier.size();
        out.stats.seconds = elapsed();
        return out;
      }
      break; // geometry does not depend on the order
    }

    for (const Move& move : legal_moves(node.tri, cells)) {
      if (move.kind == Move::Kind::two_three && node.tri.size() + 1 > max_tets) continue;
      IdealTriangulation next = apply_move(node.tri, move);
      if (!seen.insert(canonical_signature(next).text).second) continue;
      std::vector<Move> path = node.path;
      path.push_back(move);
      frontier.push_back({std::move(next), std::move(path)});
    }
  }
  out.stats.frontier_size = frontier.size();
  out.stats.seconds = elapsed();
  return out;
}

nlohmann::json to_json(const Move& move) {
  return {{"move", move.kind == Move::Kind::two_three ? "2-3" : "3-2"}, {"cell", move.cell}};
}

nlohmann::json to_json(const SearchStats& stats) {
  return {{"nodes_visited", stats.nodes_visited}, {"frontier_size", stats.frontier_size},
          {"famed_nodes", stats.famed_nodes},     {"max_tetrahedra", stats.max_tetrahedra},
          {"budget_exhausted", stats.budget_exhausted}, {"seconds", stats.seconds}};
}

} // namespace famedkit
