#include "famedkit/triangulation.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <queue>
#include <regex>
#include <sstream>

namespace famedkit {

const std::array<Perm4, 24>& Perm4::all() {
  static const std::array<Perm4, 24> perms = [] {
    std::array<Perm4, 24> out;
    std::array<int, 4> v{0, 1, 2, 3};
    std::size_t k = 0;
    do {
      out[k++] = Perm4(v[0], v[1], v[2], v[3]);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
  }();
  return perms;
}

int Perm4::index() const {
  const auto& perms = all();
  return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), *this) - perms.begin());
}

namespace {

std::string slot_name(std::size_t tet, int face) {
  return "tetrahedron " + std::to_string(tet) + " face " + std::to_string(face);
}

} // namespace

IdealTriangulation::IdealTriangulation(GluingTable gluings) : gluings_(std::move(gluings)) {
  const std::size_t n = gluings_.size();
  if (n == 0) throw MalformedDocument("triangulation has no tetrahedra");
  for (std::size_t t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = gluings_[t][f];
      if (!g.perm.is_valid()) throw MalformedDocument("invalid permutation at " + slot_name(t, f));
      if (g.tet >= n) throw MalformedDocument("gluing target out of range at " + slot_name(t, f));
      const int target_face = g.perm[f];
      if (g.tet == t && target_face == f) throw SelfGluedFace(slot_name(t, f));
      const Gluing& back = gluings_[g.tet][target_face];
      if (back.tet != t || back.perm[target_face] != f)
        throw NotInvolution(slot_name(t, f) + " is not glued back by its partner");
      if (back.perm != g.perm.inverse())
        throw NotInvolution("vertex maps disagree between " + slot_name(t, f) + " and its partner");
    }
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t t = stack.back();
    stack.pop_back();
    for (const auto& g : gluings_[t])
      if (!seen[g.tet]) {
        seen[g.tet] = true;
        ++reached;
        stack.push_back(g.tet);
      }
  }
  if (reached != n) throw MalformedDocument("triangulation is not connected");
}

TriangulationBuilder::TriangulationBuilder(std::size_t n_tetrahedra) : slots_(n_tetrahedra) {}

TriangulationBuilder& TriangulationBuilder::join(std::size_t tet, int face, std::size_t target,
                                                 Perm4 perm) {
  slots_.at(tet)[face] = Gluing{target, perm};
  slots_.at(target)[perm[face]] = Gluing{tet, perm.inverse()};
  return *this;
}

IdealTriangulation TriangulationBuilder::build() const {
  GluingTable table(slots_.size());
  for (std::size_t t = 0; t < slots_.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      if (!slots_[t][f]) throw UnpairedFace(slot_name(t, f));
      table[t][f] = *slots_[t][f];
    }
  return IdealTriangulation(std::move(table));
}

// ======================================================
//                 Quotient cells
// ======================================================

QuotientComplex quotient_cells(const IdealTriangulation& tri) {
  const std::size_t n = tri.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  QuotientComplex cells;
  cells.edge_of.assign(n, {kUnset, kUnset, kUnset, kUnset, kUnset, kUnset});
  cells.edge_sign.assign(n, {0, 0, 0, 0, 0, 0});
  cells.face_of.assign(n, {kUnset, kUnset, kUnset, kUnset});
  cells.vertex_of.assign(n, {kUnset, kUnset, kUnset, kUnset});

  // Edges: walk around each unvisited tetrahedron edge.
  for (std::size_t t = 0; t < n; ++t) {
    for (int e = 0; e < 6; ++e) {
      if (cells.edge_of[t][e] != kUnset) continue;
      const std::size_t index = cells.edges.size();
      QuotientEdge edge;
      int u = kTetEdges[e][0], v = kTetEdges[e][1];
      int c = -1, d = -1;
      for (int w = 0; w < 4; ++w)
        if (w != u && w != v) (c < 0 ? c : d) = w;
      const std::array<int, 5> start{static_cast<int>(t), u, v, c, d};
      std::size_t cur = t;
      for (;;) {
        EdgeIncidence inc{cur, u, v, c, d};
        const int local = inc.local_edge();
        if (cells.edge_of[cur][local] == kUnset) {
          cells.edge_of[cur][local] = index;
          cells.edge_sign[cur][local] = inc.orientation();
        } else if (cells.edge_sign[cur][local] != inc.orientation()) {
          edge.self_reversed = true;
        }
        edge.incidences.push_back(inc);
        const Gluing& g = tri.gluing(cur, d);
        const int nu = g.perm[u], nv = g.perm[v];
        const int nc = g.perm[d]; // entered through the face opposite this one
        const int nd = g.perm[c]; // leave through the other face containing the edge
        cur = g.tet;
        u = nu;
        v = nv;
        c = nc;
        d = nd;
        if (std::array<int, 5>{static_cast<int>(cur), u, v, c, d} == start) break;
        if (edge.incidences.size() > 6 * n) throw NonOrientable("edge walk does not close");
      }
      cells.edges.push_back(std::move(edge));
    }
  }

  // Faces: numbered by their smaller slot.
  for (std::size_t t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      if (cells.face_of[t][f] != kUnset) continue;
      const FaceSlot here{t, f};
      const FaceSlot there = tri.partner(here);
      cells.face_of[t][f] = cells.faces.size();
      cells.face_of[there.tet][there.face] = cells.faces.size();
      cells.faces.push_back({here, there});
    }

  // Vertices: union-find over (tet, vertex).
  std::vector<std::size_t> parent(4 * n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri.gluing(t, f);
      for (int v = 0; v < 4; ++v)
        if (v != f) parent[find(4 * t + v)] = find(4 * g.tet + g.perm[v]);
    }
  std::vector<std::size_t> root_index(4 * n, kUnset);
  for (std::size_t t = 0; t < n; ++t)
    for (int v = 0; v < 4; ++v) {
      const std::size_t r = find(4 * t + v);
      if (root_index[r] == kUnset) root_index[r] = cells.n_vertices++;
      cells.vertex_of[t][v] = root_index[r];
    }
  return cells;
}

// ======================================================
//                 Isomorphism and homology
// ======================================================

IdealTriangulation relabel(const IdealTriangulation& tri, const std::vector<std::size_t>& tet_order,
                           const std::vector<Perm4>& vertex_relabeling) {
  const std::size_t n = tri.size();
  GluingTable table(n);
  for (std::size_t t = 0; t < n; ++t) {
    const Perm4& r = vertex_relabeling[t];
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri.gluing(t, f);
      table[tet_order[t]][r[f]] =
          Gluing{tet_order[g.tet], vertex_relabeling[g.tet] * g.perm * r.inverse()};
    }
  }
  return IdealTriangulation(std::move(table));
}

CanonicalSignature canonical_signature(const IdealTriangulation& tri) {
  const std::size_t n = tri.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<int> best;
  std::vector<int> code;
  std::vector<std::size_t> new_index(n);
  std::vector<std::size_t> order(n);
  std::vector<Perm4> labels(n);
  for (std::size_t start = 0; start < n; ++start) {
    for (const Perm4& start_label : Perm4::all()) {
      std::fill(new_index.begin(), new_index.end(), kUnset);
      new_index[start] = 0;
      order[0] = start;
      labels[start] = start_label;
      std::size_t assigned = 1;
      code.clear();
      bool worse = false;
      for (std::size_t k = 0; k < n && !worse; ++k) {
        const std::size_t t = order[k];
        const Perm4 inv = labels[t].inverse();
        for (int nf = 0; nf < 4; ++nf) {
          const Gluing& g = tri.gluing(t, inv[nf]);
          if (new_index[g.tet] == kUnset) {
            new_index[g.tet] = assigned;
            order[assigned++] = g.tet;
            labels[g.tet] = labels[t] * g.perm.inverse();
          }
          const Perm4 mapped = labels[g.tet] * g.perm * inv;
          code.push_back(static_cast<int>(new_index[g.tet]));
          code.push_back(mapped.index());
        }
        // Prune as soon as this labeling is lexicographically larger.
        if (!best.empty()) {
          const auto cmp = std::lexicographical_compare_three_way(
              code.begin(), code.end(), best.begin(), best.begin() + code.size());
          if (cmp > 0) worse = true;
          if (cmp < 0) best.clear();
        }
      }
      if (!worse && (best.empty() || code < best)) best = code;
    }
  }
  std::ostringstream out;
  out << "famed1:" << n << ":";
  for (std::size_t i = 0; i < best.size(); i += 2) {
    out << (i ? "," : "") << best[i] << "." << best[i + 1];
  }
  return {out.str()};
}

IntMatrix homology_relations(const IdealTriangulation& tri, const QuotientComplex& cells) {
  const std::size_t n = tri.size();
  const auto n_faces = static_cast<Eigen::Index>(cells.faces.size());
  const auto n_edges = static_cast<Eigen::Index>(cells.edges.size());
  IntMatrix rel = IntMatrix::Zero(n_edges + static_cast<Eigen::Index>(n) - 1, n_faces);
  for (Eigen::Index e = 0; e < n_edges; ++e)
    for (const auto& inc : cells.edges[static_cast<std::size_t>(e)].incidences) {
      const FaceSlot exit{inc.tet, inc.exit_opposite};
      rel(e, static_cast<Eigen::Index>(cells.face_of[inc.tet][inc.exit_opposite])) +=
          cells.face_sign(exit);
    }
  // Spanning tree of the dual graph (tetrahedra joined across faces).
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> queue;
  queue.push(0);
  seen[0] = true;
  Eigen::Index row = n_edges;
  while (!queue.empty()) {
    const std::size_t t = queue.front();
    queue.pop();
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri.gluing(t, f);
      if (seen[g.tet]) continue;
      seen[g.tet] = true;
      rel(row++, static_cast<Eigen::Index>(cells.face_of[t][f])) = 1;
      queue.push(g.tet);
    }
  }
  return rel;
}

AbelianGroup homology_h1(const IdealTriangulation& tri) {
  const auto cells = quotient_cells(tri);
  return cokernel(homology_relations(tri, cells));
}

// ======================================================
//                 File formats
// ======================================================

namespace {

constexpr const char* kFormatTag = "famedkit-tri-v1";

// Column order of the text table: faces 012, 013, 023, 123.
constexpr std::array<int, 4> kTextColumnFace = {3, 2, 1, 0};

std::array<int, 3> face_vertices(int face) {
  std::array<int, 3> out{};
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != face) out[k++] = v;
  return out;
}

Perm4 perm_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) throw MalformedDocument("permutation must have 4 entries at " + where);
  std::array<int, 4> v{};
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_number_integer()) throw MalformedDocument("non-integer permutation entry at " + where);
    v[i] = j[i].get<int>();
    if (v[i] < 0 || v[i] > 3) throw MalformedDocument("permutation entry out of range at " + where);
  }
  Perm4 p(v[0], v[1], v[2], v[3]);
  if (!p.is_valid()) throw MalformedDocument("not a permutation at " + where);
  return p;
}

IdealTriangulation parse_json(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedDocument(e.what());
  }
  if (!doc.is_object() || doc.value("format", std::string{}) != kFormatTag)
    throw MalformedDocument(std::string("expected format \"") + kFormatTag + "\"");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() <= 0)
    throw MalformedDocument("missing or invalid tetrahedron count \"n\"");
  const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
  const auto& rows = doc["gluings"];
  if (!rows.is_array()) throw MalformedDocument("\"gluings\" must be an array");
  if (rows.size() > n) throw MalformedDocument("more gluing rows than tetrahedra");
  GluingTable table(n);
  for (std::size_t t = 0; t < n; ++t) {
    if (t >= rows.size() || !rows[t].is_array())
      throw UnpairedFace("no gluing row for tetrahedron " + std::to_string(t));
    const auto& row = rows[t];
    if (row.size() > 4) throw MalformedDocument("more than 4 faces for tetrahedron " + std::to_string(t));
    for (int f = 0; f < 4; ++f) {
      const std::string where = slot_name(t, f);
      if (static_cast<std::size_t>(f) >= row.size() || row[f].is_null())
        throw UnpairedFace(where);
      const auto& cell = row[f];
      if (!cell.is_array() || cell.size() != 3 || !cell[0].is_number_integer() ||
          !cell[1].is_number_integer())
        throw MalformedDocument("cell must be [tet, face, [perm]] at " + where);
      const long long target = cell[0].get<long long>();
      const int target_face = cell[1].get<int>();
      if (target < 0 || static_cast<std::size_t>(target) >= n)
        throw MalformedDocument("target tetrahedron out of range at " + where);
      const Perm4 p = perm_from_json(cell[2], where);
      if (p[f] != target_face) throw MalformedDocument("target face disagrees with permutation at " + where);
      table[t][f] = Gluing{static_cast<std::size_t>(target), p};
    }
  }
  return IdealTriangulation(std::move(table));
}

IdealTriangulation parse_text(std::string_view document) {
  static const std::regex cell_re(R"((\d+)\s*\(\s*([0-3])\s*([0-3])\s*([0-3])\s*\))");
  std::istringstream in{std::string(document)};
  std::string line;
  std::vector<std::array<std::optional<Gluing>, 4>> rows;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::vector<std::smatch> cells;
    for (auto it = std::sregex_iterator(line.begin(), line.end(), cell_re); it != std::sregex_iterator();
         ++it)
      cells.push_back(*it);
    if (cells.empty()) continue;
    if (cells.size() != 4)
      throw UnpairedFace("text row " + std::to_string(rows.size()) + " has " +
                         std::to_string(cells.size()) + " cells");
    std::array<std::optional<Gluing>, 4> row;
    for (int col = 0; col < 4; ++col) {
      const int face = kTextColumnFace[col];
      const auto fv = face_vertices(face);
      std::array<int, 4> images{-1, -1, -1, -1};
      int used = 0;
      for (int k = 0; k < 3; ++k) {
        images[fv[k]] = cells[col][2 + k].str()[0] - '0';
        used |= 1 << images[fv[k]];
      }
      int missing = -1;
      for (int v = 0; v < 4; ++v)
        if (!(used & (1 << v))) missing = v;
      if (std::popcount(static_cast<unsigned>(used)) != 3)
        throw MalformedDocument("repeated vertex in cell " + cells[col].str());
      images[face] = missing;
      row[face] = Gluing{static_cast<std::size_t>(std::stoul(cells[col][1].str())),
                         Perm4(images[0], images[1], images[2], images[3])};
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw MalformedDocument("no gluing rows found");
  GluingTable table(rows.size());
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      if (rows[t][f]->tet >= rows.size())
        throw MalformedDocument("target tetrahedron out of range at " + slot_name(t, f));
      table[t][f] = *rows[t][f];
    }
  return IdealTriangulation(std::move(table));
}

} // namespace

IdealTriangulation parse_triangulation(std::string_view document) {
  const auto first = document.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw MalformedDocument("empty document");
  if (document[first] == '{') return parse_json(document);
  return parse_text(document);
}

IdealTriangulation load_triangulation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedDocument("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_triangulation(buffer.str());
}

nlohmann::json to_json(const IdealTriangulation& tri) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t t = 0; t < tri.size(); ++t) {
    nlohmann::json row = nlohmann::json::array();
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri.gluing(t, f);
      row.push_back({g.tet, g.perm[f], {g.perm[0], g.perm[1], g.perm[2], g.perm[3]}});
    }
    rows.push_back(row);
  }
  return {{"format", kFormatTag}, {"n", tri.size()}, {"gluings", rows}};
}

std::string to_text_table(const IdealTriangulation& tri) {
  std::ostringstream out;
  out << "# tet | 012 013 023 123\n";
  for (std::size_t t = 0; t < tri.size(); ++t) {
    out << t << " |";
    for (int face : kTextColumnFace) {
      const Gluing& g = tri.gluing(t, face);
      out << ' ' << g.tet << '(';
      for (int v : face_vertices(face)) out << g.perm[v];
      out << ')';
    }
    out << '\n';
  }
  return out.str();
}

} // namespace famedkit
