#include "famedkit/cusp.hpp"

#include "famedkit/face_matrices.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace famedkit {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

int corner_of_vertex(const CuspTriangle& tri, int w) {
  for (int k = 0; k < 3; ++k)
    if (tri.corner_vertex[k] == w) return k;
  throw std::logic_error("vertex is not a corner of the cusp triangle");
}

long gcd_ext(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::abs(a);
  }
  long x1 = 0, y1 = 0;
  const long g = gcd_ext(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

} // namespace

Shape edge_shape(int local_edge, int tet_sign) {
  // kTetEdges order: 01, 02, 03, 12, 13, 23.
  switch (local_edge) {
  case 0:
  case 5:
    return Shape::z;
  case 2:
  case 3:
    return tet_sign > 0 ? Shape::zp : Shape::zpp;
  case 1:
  case 4:
    return tet_sign > 0 ? Shape::zpp : Shape::zp;
  default:
    throw std::out_of_range("local edge index");
  }
}

// ======================================================
//                 Cusp triangulation
// ======================================================

long CuspTriangulation::euler_characteristic() const {
  const long t = static_cast<long>(triangles.size());
  return static_cast<long>(n_cusp_vertices) - 3 * t / 2 + t;
}

CuspTriangulation cusp_triangulation(const IdealTriangulation& tri, int global_sign) {
  CuspTriangulation cusp;
  cusp.n_tetrahedra = tri.size();
  cusp.signs = tetra_signs(tri);
  for (int& s : cusp.signs) s *= global_sign;
  cusp.cells = quotient_cells(tri);
  if (cusp.cells.n_vertices != 1)
    throw NotOneCusp("triangulation has " + std::to_string(cusp.cells.n_vertices) + " ideal vertices");

  const std::size_t n = tri.size();
  cusp.triangles.resize(4 * n);
  for (std::size_t t = 0; t < n; ++t)
    for (int v = 0; v < 4; ++v) {
      CuspTriangle& ct = cusp.triangles[cusp.triangle_index(t, v)];
      ct.tet = t;
      ct.vertex = v;
      for (int w = 0; w < 4; ++w)
        if (w != v)
          ct.corner_vertex[static_cast<int>(edge_shape(edge_index(v, w), cusp.signs[t]))] = w;
    }

  for (auto& ct : cusp.triangles)
    for (int k = 0; k < 3; ++k) {
      const Gluing& g = tri.gluing(ct.tet, ct.corner_vertex[k]);
      ct.neighbor[k] = cusp.triangle_index(g.tet, g.perm[ct.vertex]);
      const CuspTriangle& other = cusp.triangles[ct.neighbor[k]];
      ct.neighbor_side[k] = corner_of_vertex(other, g.perm[ct.corner_vertex[k]]);
      // Glued sides must have opposite boundary orientations.
      const int head = ct.corner_vertex[(k + 2) % 3];
      if (other.corner_vertex[(ct.neighbor_side[k] + 1) % 3] != g.perm[head])
        throw std::logic_error("cusp triangles glued with matching orientation");
    }

  UnionFind corners(3 * cusp.triangles.size());
  for (std::size_t i = 0; i < cusp.triangles.size(); ++i) {
    const CuspTriangle& ct = cusp.triangles[i];
    for (int k = 0; k < 3; ++k) {
      const Gluing& g = tri.gluing(ct.tet, ct.corner_vertex[k]);
      const CuspTriangle& other = cusp.triangles[ct.neighbor[k]];
      for (int j : {(k + 1) % 3, (k + 2) % 3}) {
        const int image = corner_of_vertex(other, g.perm[ct.corner_vertex[j]]);
        corners.unite(3 * i + static_cast<std::size_t>(j), 3 * ct.neighbor[k] + static_cast<std::size_t>(image));
      }
    }
  }
  cusp.corner_class.resize(3 * cusp.triangles.size());
  std::vector<std::size_t> label(cusp.corner_class.size(), SIZE_MAX);
  for (std::size_t c = 0; c < cusp.corner_class.size(); ++c) {
    const std::size_t root = corners.find(c);
    if (label[root] == SIZE_MAX) label[root] = cusp.n_cusp_vertices++;
    cusp.corner_class[c] = label[root];
  }
  if (cusp.euler_characteristic() != 0)
    throw NotOneCusp("vertex link has Euler characteristic " + std::to_string(cusp.euler_characteristic()));
  return cusp;
}

// ======================================================
//                 Peripheral curves
// ======================================================

bool PeripheralCurve::is_zero() const {
  return std::all_of(corner_passes.begin(), corner_passes.end(),
                     [](const std::array<int, 3>& p) { return p[0] == 0 && p[1] == 0 && p[2] == 0; });
}

PeripheralCurve& PeripheralCurve::operator+=(const PeripheralCurve& other) {
  if (corner_passes.size() != other.corner_passes.size())
    throw std::invalid_argument("curves live on different cusp triangulations");
  for (std::size_t i = 0; i < corner_passes.size(); ++i)
    for (int k = 0; k < 3; ++k) corner_passes[i][k] += other.corner_passes[i][k];
  return *this;
}

PeripheralCurve operator*(long k, PeripheralCurve a) {
  for (auto& p : a.corner_passes)
    for (int& x : p) x = static_cast<int>(k * x);
  return a;
}

PeripheralCurve curve_from_crossings(const CuspTriangulation& cusp, const std::vector<SideCrossing>& walk,
                                     std::string label) {
  PeripheralCurve curve(cusp.triangles.size(), std::move(label));
  const std::size_t len = walk.size();
  for (std::size_t i = 0; i < len; ++i) {
    const SideCrossing& in = walk[i];
    const SideCrossing& out = walk[(i + 1) % len];
    const CuspTriangle& from = cusp.triangles[in.from];
    if (from.neighbor[in.side] != out.from)
      throw std::invalid_argument("crossings are not consecutive");
    const int entry = from.neighbor_side[in.side];
    if (entry == out.side) throw std::invalid_argument("walk backtracks through a side");
    const int corner = 3 - entry - out.side;
    curve.corner_passes[out.from][corner] += entry == (corner + 2) % 3 ? 1 : -1;
  }
  return curve;
}

std::vector<std::array<int, 3>> side_flow(const PeripheralCurve& curve) {
  std::vector<std::array<int, 3>> flow(curve.corner_passes.size(), {0, 0, 0});
  for (std::size_t i = 0; i < flow.size(); ++i)
    for (int c = 0; c < 3; ++c) {
      const int s = curve.corner_passes[i][c];
      flow[i][(c + 1) % 3] += s;
      flow[i][(c + 2) % 3] -= s;
    }
  return flow;
}

std::array<PeripheralCurve, 2> peripheral_basis(const CuspTriangulation& cusp) {
  const std::size_t n_tri = cusp.triangles.size();
  auto partner_key = [&](std::size_t key) {
    const CuspTriangle& ct = cusp.triangles[key / 3];
    return 3 * ct.neighbor[key % 3] + static_cast<std::size_t>(ct.neighbor_side[key % 3]);
  };

  // Dual spanning tree rooted at triangle 0.
  std::vector<SideCrossing> parent(n_tri);
  std::vector<std::size_t> depth(n_tri, SIZE_MAX);
  std::vector<bool> in_dual_tree(3 * n_tri, false);
  std::queue<std::size_t> queue;
  depth[0] = 0;
  queue.push(0);
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop();
    for (int k = 0; k < 3; ++k) {
      const std::size_t j = cusp.triangles[i].neighbor[k];
      if (depth[j] != SIZE_MAX) continue;
      depth[j] = depth[i] + 1;
      parent[j] = {i, k};
      in_dual_tree[3 * i + static_cast<std::size_t>(k)] = true;
      in_dual_tree[partner_key(3 * i + static_cast<std::size_t>(k))] = true;
      queue.push(j);
    }
  }

  // Primal spanning tree avoiding dual tree sides; what is left generates H1.
  UnionFind vertices(cusp.n_cusp_vertices);
  std::vector<std::size_t> leftover;
  for (std::size_t key = 0; key < 3 * n_tri; ++key) {
    if (in_dual_tree[key] || partner_key(key) < key) continue;
    const std::size_t i = key / 3;
    const int side = static_cast<int>(key % 3);
    const std::size_t a = cusp.corner_class[3 * i + static_cast<std::size_t>((side + 1) % 3)];
    const std::size_t b = cusp.corner_class[3 * i + static_cast<std::size_t>((side + 2) % 3)];
    if (!vertices.unite(a, b)) leftover.push_back(key);
  }
  if (leftover.size() != 2)
    throw NotOneCusp("vertex link is not a torus (" + std::to_string(leftover.size()) + " cotree sides)");

  auto generator = [&](std::size_t key, const char* label) {
    const std::size_t x = key / 3;
    const std::size_t y = cusp.triangles[x].neighbor[key % 3];
    std::vector<SideCrossing> walk{{x, static_cast<int>(key % 3)}};
    std::vector<SideCrossing> down;
    std::size_t u = y, w = x;
    auto step_up = [&](std::size_t node) {
      const SideCrossing& p = parent[node];
      walk.push_back({node, cusp.triangles[p.from].neighbor_side[p.side]});
      return p.from;
    };
    while (depth[u] > depth[w]) u = step_up(u);
    while (depth[w] > depth[u]) {
      down.push_back(parent[w]);
      w = parent[w].from;
    }
    while (u != w) {
      u = step_up(u);
      down.push_back(parent[w]);
      w = parent[w].from;
    }
    walk.insert(walk.end(), down.rbegin(), down.rend());
    return curve_from_crossings(cusp, walk, label);
  };
  return {generator(leftover[0], "basis-1"), generator(leftover[1], "basis-2")};
}

IntVector face_class(const CuspTriangulation& cusp, const PeripheralCurve& curve) {
  IntVector out = IntVector::Zero(static_cast<Eigen::Index>(cusp.cells.faces.size()));
  const auto flow = side_flow(curve);
  for (std::size_t i = 0; i < flow.size(); ++i) {
    const CuspTriangle& ct = cusp.triangles[i];
    for (int k = 0; k < 3; ++k) {
      if (flow[i][k] == 0) continue;
      const FaceSlot slot{ct.tet, ct.corner_vertex[k]};
      out(static_cast<Eigen::Index>(cusp.cells.face_of[ct.tet][ct.corner_vertex[k]])) +=
          flow[i][k] * cusp.cells.face_sign(slot);
    }
  }
  // Each crossing is counted once from either side.
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    if (out(j) % 2 != 0) throw std::logic_error("curve does not close up");
    out(j) /= 2;
  }
  return out;
}

IntVector abelianization(const IdealTriangulation& tri, const CuspTriangulation& cusp) {
  const IntMatrix rel = homology_relations(tri, cusp.cells);
  const auto form = smith_normal_form(rel);
  const Eigen::Index rank = form.rank();
  if (rel.cols() - rank != 1)
    throw NoNullHomologousCurve("H1 has rank " + std::to_string(rel.cols() - rank) + ", expected 1");
  for (const auto& d : form.diagonal)
    if (d > 1) throw NoNullHomologousCurve("H1 has torsion");
  IntVector phi(rel.cols());
  for (Eigen::Index j = 0; j < rel.cols(); ++j) phi(j) = form.right(j, rank).convert_to<long>();
  if ((rel * phi).cwiseAbs().sum() != 0) throw std::logic_error("abelianization is not a cocycle");
  return phi;
}

std::vector<std::size_t> cusp_vertex_edges(const CuspTriangulation& cusp) {
  std::vector<std::size_t> edge(cusp.n_cusp_vertices, SIZE_MAX);
  for (std::size_t i = 0; i < cusp.triangles.size(); ++i) {
    const CuspTriangle& ct = cusp.triangles[i];
    for (int k = 0; k < 3; ++k)
      edge[cusp.corner_class[3 * i + static_cast<std::size_t>(k)]] =
          cusp.cells.edge_of[ct.tet][edge_index(ct.vertex, ct.corner_vertex[k])];
  }
  return edge;
}

PeripheralCurve vertex_loop(const CuspTriangulation& cusp, std::size_t cusp_vertex) {
  PeripheralCurve loop(cusp.triangles.size(), "vertex-loop");
  for (std::size_t i = 0; i < cusp.triangles.size(); ++i)
    for (int k = 0; k < 3; ++k)
      if (cusp.corner_class[3 * i + static_cast<std::size_t>(k)] == cusp_vertex) ++loop.corner_passes[i][k];
  return loop;
}

namespace {

// Normalized holonomy of a curve as a flat vector (const_pi, then c1 - c and
// c2 - c interleaved per tetrahedron). Linear in the curve.
std::vector<long> reduced_row(const CuspTriangulation& cusp, const PeripheralCurve& curve) {
  const HolonomyRow row = normalize_holonomy(holonomy(cusp, curve));
  std::vector<long> out{row.const_pi};
  for (Eigen::Index t = 0; t < row.c1.size(); ++t) {
    out.push_back(row.c1(t));
    out.push_back(row.c2(t));
  }
  return out;
}

// Order: L1 norm, then the coefficient magnitudes lexicographically.
bool key_less(const std::vector<long>& a, const std::vector<long>& b) {
  long la = 0, lb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    la += std::abs(a[i]);
    lb += std::abs(b[i]);
  }
  if (la != lb) return la < lb;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (std::abs(a[i]) != std::abs(b[i])) return std::abs(a[i]) < std::abs(b[i]);
  return false;
}

// Greedy descent of the row key over the given moves and their pairwise sums
// and differences, each tried with both signs.
PeripheralCurve descend(const CuspTriangulation& cusp, PeripheralCurve curve,
                        std::vector<PeripheralCurve> moves) {
  const std::size_t singles = moves.size();
  for (std::size_t i = 0; i < singles; ++i)
    for (std::size_t j = i + 1; j < singles; ++j) {
      moves.push_back(moves[i] + moves[j]);
      moves.push_back(moves[i] + -moves[j]);
    }
  std::vector<std::vector<long>> move_rows;
  move_rows.reserve(moves.size());
  for (const auto& m : moves) move_rows.push_back(reduced_row(cusp, m));

  std::vector<long> best = reduced_row(cusp, curve);
  std::vector<long> candidate(best.size());
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t m = 0; m < moves.size(); ++m)
      for (const long s : {1L, -1L}) {
        for (std::size_t i = 0; i < best.size(); ++i) candidate[i] = best[i] + s * move_rows[m][i];
        if (key_less(candidate, best)) {
          best = candidate;
          curve += s * moves[m];
          improved = true;
        }
      }
  }
  return curve;
}

std::vector<PeripheralCurve> loop_differences(const CuspTriangulation& cusp) {
  const auto edges = cusp_vertex_edges(cusp);
  std::vector<std::size_t> representative(cusp.cells.edges.size(), SIZE_MAX);
  for (std::size_t u = 0; u < edges.size(); ++u)
    if (representative[edges[u]] == SIZE_MAX) representative[edges[u]] = u;
  std::vector<PeripheralCurve> moves;
  for (std::size_t i = 0; i < representative.size(); ++i)
    for (std::size_t j = i + 1; j < representative.size(); ++j)
      moves.push_back(vertex_loop(cusp, representative[i]) + -vertex_loop(cusp, representative[j]));
  return moves;
}

} // namespace

PeripheralCurve reduce_curve(const CuspTriangulation& cusp, PeripheralCurve curve) {
  std::string label = curve.description;
  curve = descend(cusp, std::move(curve), loop_differences(cusp));
  curve.description = std::move(label);
  return curve;
}

namespace {

// Longitude sign: positive constant, else first nonzero coefficient positive.
bool has_preferred_sign(const HolonomyRow& row) {
  if (row.const_pi != 0) return row.const_pi > 0;
  for (const IntVector* v : {&row.c, &row.c1, &row.c2})
    for (Eigen::Index i = 0; i < v->size(); ++i)
      if ((*v)(i) != 0) return (*v)(i) > 0;
  return true;
}

} // namespace

namespace {

struct LongitudeData {
  IntVector phi;
  std::array<PeripheralCurve, 2> basis;
  long x = 0, y = 0; // x*a1 + y*a2 = gcd
  PeripheralCurve longitude;
};

LongitudeData longitude_data(const IdealTriangulation& tri, const CuspTriangulation& cusp) {
  LongitudeData d;
  d.phi = abelianization(tri, cusp);
  d.basis = peripheral_basis(cusp);
  const long a1 = d.phi.dot(face_class(cusp, d.basis[0]));
  const long a2 = d.phi.dot(face_class(cusp, d.basis[1]));
  if (a1 == 0 && a2 == 0) throw NoNullHomologousCurve("both peripheral basis curves are null-homologous");
  const long g = gcd_ext(a1, a2, d.x, d.y);
  d.longitude = reduce_curve(cusp, (a2 / g) * d.basis[0] + (-a1 / g) * d.basis[1]);
  if (!has_preferred_sign(normalize_holonomy(holonomy(cusp, d.longitude)))) d.longitude = -d.longitude;
  d.longitude.description = "longitude";
  return d;
}

} // namespace

PeripheralPair peripheral_curves(const IdealTriangulation& tri, const CuspTriangulation& cusp) {
  LongitudeData d = longitude_data(tri, cusp);
  PeripheralPair out;
  out.longitude = d.longitude;
  // Longitude multiples keep the class in H1(M).
  auto moves = loop_differences(cusp);
  moves.push_back(out.longitude);
  out.meridian = descend(cusp, d.x * d.basis[0] + d.y * d.basis[1], moves);
  if (d.phi.dot(face_class(cusp, out.meridian)) < 0) out.meridian = -out.meridian;
  out.meridian.description = "meridian";
  return out;
}

PeripheralCurve preferred_longitude(const IdealTriangulation& tri, const CuspTriangulation& cusp) {
  return longitude_data(tri, cusp).longitude;
}

// ======================================================
//                 Holonomy and NZ matrices
// ======================================================

long HolonomyRow::l1_norm() const {
  return c.cwiseAbs().sum() + c1.cwiseAbs().sum() + c2.cwiseAbs().sum();
}

HolonomyRow holonomy(const CuspTriangulation& cusp, const PeripheralCurve& curve) {
  HolonomyRow row(cusp.n_tetrahedra);
  for (std::size_t i = 0; i < curve.corner_passes.size(); ++i) {
    const auto t = static_cast<Eigen::Index>(cusp.triangles[i].tet);
    row.c(t) += curve.corner_passes[i][0];
    row.c1(t) += curve.corner_passes[i][1];
    row.c2(t) += curve.corner_passes[i][2];
  }
  return row;
}

HolonomyRow normalize_holonomy(HolonomyRow row) {
  row.const_pi += row.c.sum();
  row.c1 -= row.c;
  row.c2 -= row.c;
  row.c.setZero();
  return row;
}

std::vector<HolonomyRow> edge_rows(const CuspTriangulation& cusp) {
  std::vector<HolonomyRow> rows;
  rows.reserve(cusp.cells.edges.size());
  for (const auto& edge : cusp.cells.edges) {
    HolonomyRow row(cusp.n_tetrahedra);
    for (const auto& inc : edge.incidences) {
      const auto t = static_cast<Eigen::Index>(inc.tet);
      switch (edge_shape(inc.local_edge(), cusp.signs[inc.tet])) {
      case Shape::z: ++row.c(t); break;
      case Shape::zp: ++row.c1(t); break;
      case Shape::zpp: ++row.c2(t); break;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

NZMatrices neumann_zagier(const CuspTriangulation& cusp, const PeripheralCurve& curve, std::size_t dropped_edge) {
  const auto edges = edge_rows(cusp);
  if (dropped_edge >= edges.size())
    throw InvalidEdgeIndex("edge " + std::to_string(dropped_edge) + " of " + std::to_string(edges.size()));
  const auto n = static_cast<Eigen::Index>(cusp.n_tetrahedra);
  if (static_cast<Eigen::Index>(edges.size()) != n)
    throw NotOneCusp("expected " + std::to_string(n) + " edges, found " + std::to_string(edges.size()));

  NZMatrices nz;
  nz.dropped_edge = dropped_edge;
  nz.curve = curve;
  nz.curve_row = normalize_holonomy(holonomy(cusp, curve));
  nz.curve_const_pi = nz.curve_row.const_pi;
  nz.G.resize(n, n);
  nz.G1.resize(n, n);
  nz.G2.resize(n, n);
  Eigen::Index r = 0;
  for (std::size_t j = 0; j < edges.size(); ++j) {
    if (j == dropped_edge) continue;
    nz.G.row(r) = edges[j].c.transpose();
    nz.G1.row(r) = edges[j].c1.transpose();
    nz.G2.row(r) = edges[j].c2.transpose();
    ++r;
  }
  nz.G.row(r) = nz.curve_row.c.transpose();
  nz.G1.row(r) = nz.curve_row.c1.transpose();
  nz.G2.row(r) = nz.curve_row.c2.transpose();
  nz.A = nz.G - nz.G1;
  nz.B = nz.G2 - nz.G1;
  return nz;
}

NZMatrices neumann_zagier(const IdealTriangulation& tri, const CuspTriangulation& cusp,
                          std::optional<std::size_t> dropped_edge) {
  const PeripheralCurve longitude = preferred_longitude(tri, cusp);
  return neumann_zagier(cusp, longitude, dropped_edge.value_or(cusp.cells.edges.size() - 1));
}

// ======================================================
//                 JSON
// ======================================================

nlohmann::json to_json(const IntMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const HolonomyRow& row) {
  auto vec = [](const IntVector& v) { return std::vector<long>(v.data(), v.data() + v.size()); };
  return {{"c", vec(row.c)}, {"c1", vec(row.c1)}, {"c2", vec(row.c2)}, {"const_pi", row.const_pi}};
}

nlohmann::json to_json(const NZMatrices& nz) {
  return {{"G", to_json(nz.G)},
          {"G1", to_json(nz.G1)},
          {"G2", to_json(nz.G2)},
          {"A", to_json(nz.A)},
          {"B", to_json(nz.B)},
          {"dropped_edge", nz.dropped_edge},
          {"curve", nz.curve.description},
          {"curve_row", to_json(nz.curve_row)}};
}

} // namespace famedkit
