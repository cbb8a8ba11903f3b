#pragma once

// Fixture paths and independent oracles shared by the unit and acceptance tests.

#include "famedkit/pipeline.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace famedkit::testing {

inline std::string data_path(const std::string& name) { return std::string(FAMEDKIT_TEST_DATA) + "/" + name; }

inline IdealTriangulation load_fixture(const std::string& name) { return load_triangulation(data_path(name)); }

inline IdealTriangulation load_census(const std::string& knot) {
  return load_triangulation(data_path("census/" + knot + ".json"));
}

struct CensusRow {
  const char* name;
  std::size_t tetrahedra, orders, famed;
  bool hyperbolic;
};

// Sample of 14 alternating knots: tetrahedra, orders, FAMED orders.
inline const std::vector<CensusRow>& census_rows() {
  static const std::vector<CensusRow> rows = {
      {"K3a1", 2, 2, 0, false}, {"K4a1", 2, 4, 4, true},  {"K5a1", 3, 4, 4, true},   {"K5a2", 3, 0, 0, false},
      {"K6a1", 6, 14, 8, true}, {"K6a2", 5, 6, 6, true},  {"K6a3", 4, 6, 6, true},   {"K7a1", 8, 32, 0, true},
      {"K7a2", 8, 20, 8, true}, {"K7a3", 7, 16, 2, true}, {"K7a4", 4, 4, 4, true},   {"K7a5", 5, 4, 4, true},
      {"K7a6", 6, 8, 8, true},  {"K7a7", 4, 2, 0, false}};
  return rows;
}

// ======================================================
//                 Oracles
// ======================================================

// Laplace expansion along the first row.
inline long cofactor_determinant(const IntMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  long det = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, k = 0; c < n; ++c)
        if (c != j) minor(r - 1, k++) = m(r, c);
    det += ((j % 2) ? -1 : 1) * m(0, j) * cofactor_determinant(minor);
  }
  return det;
}

// Lobachevsky function from the Fourier series
// Lambda(t) = 1/2 sum sin(2nt)/n^2; the tail after M terms is
// O(1 / (M^2 |sin t|)).
inline double lobachevsky(double theta, int terms = 400000) {
  double sum = 0;
  for (int n = terms; n >= 1; --n) sum += std::sin(2.0 * n * theta) / (static_cast<double>(n) * n);
  return 0.5 * sum;
}

// Volume of the ideal tetrahedron with shape z as the sum of Lobachevsky
// functions of its three dihedral angles.
inline double ideal_tetrahedron_volume(Complex z) {
  const double a = std::arg(z);
  const double b = std::arg(1.0 / (1.0 - z));
  const double c = std::numbers::pi - a - b;
  return lobachevsky(a) + lobachevsky(b) + lobachevsky(c);
}

// Orders by brute force: every orientation of the quotient edges whose
// restriction to each tetrahedron is a transitive tournament.
inline std::size_t brute_force_order_count(const IdealTriangulation& tri) {
  const auto cells = quotient_cells(tri);
  const std::size_t e = cells.edges.size();
  static constexpr int kEnds[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::size_t count = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << e); ++mask) {
    bool ok = true;
    for (std::size_t t = 0; t < tri.size() && ok; ++t) {
      std::array<int, 4> out_degree{};
      for (int k = 0; k < 6; ++k) {
        const int dir = ((mask >> cells.edge_of[t][k]) & 1) ? -1 : 1;
        const int s = dir * cells.edge_sign[t][k];
        ++out_degree[s > 0 ? kEnds[k][0] : kEnds[k][1]];
      }
      std::sort(out_degree.begin(), out_degree.end());
      ok = out_degree == std::array<int, 4>{0, 1, 2, 3};
    }
    if (ok) ++count;
  }
  return count;
}

// Orientation classes by brute force over 2^N sign vectors: a gluing is
// consistent when the boundary orientations of the two faces are opposite.
// Face f of [0123] with sign s carries s * (-1)^f on its increasing vertices.
inline std::vector<std::vector<int>> consistent_orientations(const IdealTriangulation& tri) {
  const std::size_t n = tri.size();
  std::vector<std::vector<int>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> s(n);
    for (std::size_t t = 0; t < n; ++t) s[t] = ((mask >> t) & 1) ? -1 : 1;
    bool ok = true;
    for (std::size_t t = 0; t < n && ok; ++t)
      for (int f = 0; f < 4 && ok; ++f) {
        const Gluing& g = tri.gluing(t, f);
        std::array<int, 3> src{}, img{};
        for (int v = 0, k = 0; v < 4; ++v)
          if (v != f) {
            src[k] = v;
            img[k] = g.perm[v];
            ++k;
          }
        int inversions = 0;
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j)
            if (img[i] > img[j]) ++inversions;
        const int here = s[t] * ((f % 2) ? -1 : 1);
        const int there = s[g.tet] * ((g.perm[f] % 2) ? -1 : 1) * ((inversions % 2) ? -1 : 1);
        ok = here == -there;
      }
    if (ok) out.push_back(s);
  }
  return out;
}

// Symplectic pairing of normalized holonomy rows in the (z', z'')
// coordinates; edge rows pair to zero with everything and a meridian with a
// longitude pairs to +-2.
inline long symplectic_pairing(const HolonomyRow& a_raw, const HolonomyRow& b_raw) {
  const HolonomyRow a = normalize_holonomy(a_raw), b = normalize_holonomy(b_raw);
  long sum = 0;
  for (Eigen::Index t = 0; t < a.c1.size(); ++t) sum += a.c1(t) * b.c2(t) - a.c2(t) * b.c1(t);
  return sum;
}

inline IdealTriangulation random_relabel(const IdealTriangulation& tri, std::mt19937_64& rng) {
  std::vector<std::size_t> order(tri.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Perm4> vertex(tri.size());
  std::uniform_int_distribution<int> pick(0, 23);
  for (auto& p : vertex) p = Perm4::all()[static_cast<std::size_t>(pick(rng))];
  return relabel(tri, order, vertex);
}

} // namespace famedkit::testing
