#pragma once

// Cusp triangulation, peripheral curves, holonomy rows and Neumann-Zagier
// matrices of a one-cusped oriented triangulation.

#include "famedkit/triangulation.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace famedkit {

enum class Shape : int { z = 0, zp = 1, zpp = 2 };

// z sits on edges 01 and 23. For sign +1, z' sits on 03,12 and z'' on 02,13;
// sign -1 exchanges z' and z''.
Shape edge_shape(int local_edge, int tet_sign);

// Triangle (tet, vertex) of the truncated link. Corners are listed
// counterclockwise and corner k carries shape k, so corner_vertex[k] is the
// other endpoint of the tetrahedron edge at that corner. Side k is opposite
// corner k and lies in the face opposite corner_vertex[k].
struct CuspTriangle {
  std::size_t tet = 0;
  int vertex = 0;
  std::array<int, 3> corner_vertex{};
  std::array<std::size_t, 3> neighbor{};
  std::array<int, 3> neighbor_side{};
};

struct CuspTriangulation {
  std::size_t n_tetrahedra = 0;
  std::vector<int> signs;                  // tetrahedron signs, global sign applied
  QuotientComplex cells;
  std::vector<CuspTriangle> triangles;     // index 4 * tet + vertex
  std::vector<std::size_t> corner_class;   // index 3 * triangle + corner
  std::size_t n_cusp_vertices = 0;

  std::size_t triangle_index(std::size_t tet, int vertex) const { return 4 * tet + static_cast<std::size_t>(vertex); }
  long euler_characteristic() const;
};

// Throws NotOneCusp unless the link is a single torus; NonOrientable if the
// tetrahedron signs are inconsistent.
CuspTriangulation cusp_triangulation(const IdealTriangulation& tri, int global_sign = 1);

struct PeripheralCurve {
  std::vector<std::array<int, 3>> corner_passes; // per triangle, per corner
  std::string description;

  PeripheralCurve() = default;
  explicit PeripheralCurve(std::size_t n_triangles, std::string label = {})
      : corner_passes(n_triangles, {0, 0, 0}), description(std::move(label)) {}

  bool is_zero() const;
  PeripheralCurve& operator+=(const PeripheralCurve& other);
  friend PeripheralCurve operator+(PeripheralCurve a, const PeripheralCurve& b) { return a += b; }
  friend PeripheralCurve operator*(long k, PeripheralCurve a);
  friend PeripheralCurve operator-(PeripheralCurve a) { return -1 * std::move(a); }
};

// A crossing leaves triangle `from` through side `side`.
struct SideCrossing {
  std::size_t from = 0;
  int side = 0;
};

// Closed dual walk to corner passes. Consecutive crossings must be adjacent;
// immediate backtracking is not allowed.
PeripheralCurve curve_from_crossings(const CuspTriangulation& cusp, const std::vector<SideCrossing>& walk,
                                     std::string label = {});

// Net outward crossing count of the curve through each triangle side.
std::vector<std::array<int, 3>> side_flow(const PeripheralCurve& curve);

// Two simple closed curves generating H1 of the link torus, from a
// tree-cotree decomposition.
std::array<PeripheralCurve, 2> peripheral_basis(const CuspTriangulation& cusp);

// Class of the curve in the face-dual generators of H1(M) (length 2N).
IntVector face_class(const CuspTriangulation& cusp, const PeripheralCurve& curve);

// Counterclockwise loop around one cusp vertex; its holonomy row is the edge
// row of the quotient edge ending there.
PeripheralCurve vertex_loop(const CuspTriangulation& cusp, std::size_t cusp_vertex);

// Quotient edge at each cusp vertex.
std::vector<std::size_t> cusp_vertex_edges(const CuspTriangulation& cusp);

// Adds differences of vertex loops around distinct edges (which keep the
// holonomy value) while the normalized row gets smaller in (L1, then
// per-tetrahedron absolute coefficients lexicographically). Greedy descent.
PeripheralCurve reduce_curve(const CuspTriangulation& cusp, PeripheralCurve curve);

// Homomorphism H1(M) -> Z on face-dual generators; throws
// NoNullHomologousCurve unless H1(M) is infinite cyclic.
IntVector abelianization(const IdealTriangulation& tri, const CuspTriangulation& cusp);

struct PeripheralPair {
  PeripheralCurve longitude;
  PeripheralCurve meridian;
};

// Preferred longitude (null-homologous, primitive) and a complementary
// meridian mapping to a generator of H1(M).
PeripheralPair peripheral_curves(const IdealTriangulation& tri, const CuspTriangulation& cusp);
PeripheralCurve preferred_longitude(const IdealTriangulation& tri, const CuspTriangulation& cusp);

struct HolonomyRow {
  IntVector c, c1, c2;  // coefficients of Log z, Log z', Log z''
  long const_pi = 0;    // additive const_pi * i*pi

  explicit HolonomyRow(std::size_t n = 0)
      : c(IntVector::Zero(static_cast<Eigen::Index>(n))), c1(c), c2(c) {}
  bool operator==(const HolonomyRow& other) const {
    return c == other.c && c1 == other.c1 && c2 == other.c2 && const_pi == other.const_pi;
  }
  IntVector coefficients(Shape s) const { return s == Shape::z ? c : (s == Shape::zp ? c1 : c2); }
  long l1_norm() const;
};

// Raw row: signed sum of the shapes at the corners the curve passes.
HolonomyRow holonomy(const CuspTriangulation& cusp, const PeripheralCurve& curve);

// Removes the z coefficient of each tetrahedron with Log z + Log z' + Log z''
// = i*pi, adding the removed multiples to const_pi.
HolonomyRow normalize_holonomy(HolonomyRow row);

// Row j counts shape incidences around quotient edge j (raw, const_pi 0).
std::vector<HolonomyRow> edge_rows(const CuspTriangulation& cusp);

struct NZMatrices {
  IntMatrix G, G1, G2;
  IntMatrix A, B;  // G - G1, G2 - G1
  std::size_t dropped_edge = 0;
  PeripheralCurve curve;
  HolonomyRow curve_row;  // normalized holonomy of curve
  // Right-hand sides: edge rows equal 2*i*pi; the curve row equals
  // xi - curve_row.const_pi * i*pi in the normalized unknowns.
  long curve_const_pi = 0;
};

// Edge rows except dropped_edge, then the normalized curve row. Throws
// InvalidEdgeIndex.
NZMatrices neumann_zagier(const CuspTriangulation& cusp, const PeripheralCurve& curve, std::size_t dropped_edge);
NZMatrices neumann_zagier(const IdealTriangulation& tri, const CuspTriangulation& cusp,
                          std::optional<std::size_t> dropped_edge = std::nullopt);

nlohmann::json to_json(const HolonomyRow& row);
nlohmann::json to_json(const NZMatrices& nz);
nlohmann::json to_json(const IntMatrix& m);

} // namespace famedkit
