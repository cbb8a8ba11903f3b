#pragma once

// Combinatorial ideal triangulations: gluing tables, quotient cells,
// canonical signatures, first homology and the on-disk formats.

#include "famedkit/errors.hpp"
#include "famedkit/exact.hpp"
#include "famedkit/perm.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace famedkit {

// Face f of a tetrahedron is the face opposite vertex f.
struct FaceSlot {
  std::size_t tet = 0;
  int face = 0;
  friend constexpr auto operator<=>(const FaceSlot&, const FaceSlot&) = default;
};

// Face f of the source tetrahedron is glued to face perm[f] of `tet`; vertex v
// of the source goes to vertex perm[v] of the target. The opposite vertex maps
// to the opposite vertex, so perm is a full 4-vertex bijection.
struct Gluing {
  std::size_t tet = 0;
  Perm4 perm;
  friend constexpr bool operator==(const Gluing&, const Gluing&) = default;
};

using GluingTable = std::vector<std::array<Gluing, 4>>;

class IdealTriangulation {
public:
  IdealTriangulation() = default;

  // Validates the table: every slot glued, no slot glued to itself, gluings
  // form an involution with inverse permutations, and the complex is connected.
  explicit IdealTriangulation(GluingTable gluings);

  std::size_t size() const { return gluings_.size(); }
  const Gluing& gluing(std::size_t tet, int face) const { return gluings_[tet][face]; }
  FaceSlot partner(FaceSlot slot) const {
    const auto& g = gluings_[slot.tet][slot.face];
    return {g.tet, g.perm[slot.face]};
  }
  const GluingTable& gluings() const { return gluings_; }

  friend bool operator==(const IdealTriangulation&, const IdealTriangulation&) = default;

private:
  GluingTable gluings_;
};

// Incrementally assembles a gluing table; join() writes both directions.
class TriangulationBuilder {
public:
  explicit TriangulationBuilder(std::size_t n_tetrahedra);
  TriangulationBuilder& join(std::size_t tet, int face, std::size_t target, Perm4 perm);
  IdealTriangulation build() const;

private:
  std::vector<std::array<std::optional<Gluing>, 4>> slots_;
};

// ======================================================
//                 Quotient cells
// ======================================================

// One tetrahedron edge seen while walking around a quotient edge. The walk
// leaves this tetrahedron through the face opposite `exit_opposite` and came
// in through the face opposite `entry_opposite`.
struct EdgeIncidence {
  std::size_t tet = 0;
  int tail = 0;
  int head = 0;
  int entry_opposite = 0;
  int exit_opposite = 0;

  int local_edge() const { return edge_index(tail, head); }
  // +1 when the walk direction agrees with the local low-to-high direction.
  int orientation() const { return tail < head ? 1 : -1; }
};

struct QuotientEdge {
  std::vector<EdgeIncidence> incidences; // cyclic order around the edge
  bool self_reversed = false;            // glued to itself with reversed orientation
  std::size_t degree() const { return incidences.size(); }
};

struct QuotientFace {
  FaceSlot first;  // the lexicographically smaller slot
  FaceSlot second;
};

struct QuotientComplex {
  std::vector<QuotientEdge> edges;
  std::vector<QuotientFace> faces;
  std::size_t n_vertices = 0;

  // Per tetrahedron lookups. edge_sign is the orientation of local edge
  // (low -> high) relative to its quotient edge's reference direction.
  std::vector<std::array<std::size_t, 6>> edge_of;
  std::vector<std::array<int, 6>> edge_sign;
  std::vector<std::array<std::size_t, 4>> face_of;
  std::vector<std::array<std::size_t, 4>> vertex_of;

  // +1 if the slot is the first slot of its quotient face.
  int face_sign(FaceSlot slot) const {
    return faces[face_of[slot.tet][slot.face]].first == slot ? 1 : -1;
  }
};

// Edges are numbered by first appearance scanning tetrahedra in order and local
// edges 01,02,03,12,13,23; the reference direction is that first appearance's
// low-to-high direction. Faces are numbered by their smaller slot.
QuotientComplex quotient_cells(const IdealTriangulation& tri);

// ======================================================
//                 Isomorphism and homology
// ======================================================

struct CanonicalSignature {
  std::string text;
  friend auto operator<=>(const CanonicalSignature&, const CanonicalSignature&) = default;
};

CanonicalSignature canonical_signature(const IdealTriangulation& tri);

// Relabels tetrahedra (new index of old tet t is tet_order[t]) and vertices
// (vertex v of old tet t becomes relabel[t][v]).
IdealTriangulation relabel(const IdealTriangulation& tri, const std::vector<std::size_t>& tet_order,
                           const std::vector<Perm4>& vertex_relabeling);

// Relations of the dual-spine presentation of H1: generators are the quotient
// faces; one row per quotient edge (signed faces crossed walking around it),
// then one unit row per face of a spanning tree of the dual graph.
IntMatrix homology_relations(const IdealTriangulation& tri, const QuotientComplex& cells);

AbelianGroup homology_h1(const IdealTriangulation& tri);

// ======================================================
//                 File formats
// ======================================================

// Accepts the famedkit-tri-v1 JSON document or the plain-text gluing table
// (columns 012 013 023 123, cells like "1(032)").
IdealTriangulation parse_triangulation(std::string_view document);
IdealTriangulation load_triangulation(const std::string& path);

nlohmann::json to_json(const IdealTriangulation& tri);
std::string to_text_table(const IdealTriangulation& tri);

} // namespace famedkit
