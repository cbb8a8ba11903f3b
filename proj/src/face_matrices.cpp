#include "famedkit/face_matrices.hpp"

#include "famedkit/ordering.hpp"

#include <numeric>
#include <queue>

namespace famedkit {

std::vector<int> tetra_signs(const IdealTriangulation& tri, std::span<const std::size_t> visit_order) {
  const std::size_t n = tri.size();
  std::vector<int> sign(n, 0);
  const std::size_t root = visit_order.empty() ? 0 : visit_order.front();
  sign[root] = 1;
  std::queue<std::size_t> queue;
  queue.push(root);
  while (!queue.empty()) {
    const std::size_t t = queue.front();
    queue.pop();
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri.gluing(t, f);
      const int expected = -g.perm.sign() * sign[t];
      if (sign[g.tet] == 0) {
        sign[g.tet] = expected;
        queue.push(g.tet);
      } else if (sign[g.tet] != expected) {
        throw NonOrientable("tetrahedron " + std::to_string(g.tet) + " receives both signs");
      }
    }
  }
  // Normalize so tetrahedron 0 is positive regardless of the starting point.
  if (sign[0] < 0)
    for (int& s : sign) s = -s;
  return sign;
}

std::vector<int> tetra_signs(const IdealTriangulation& tri) {
  return tetra_signs(tri, std::span<const std::size_t>{});
}

IntMatrix sign_matrix(std::span<const int> signs, int global_sign) {
  const auto n = static_cast<Eigen::Index>(signs.size());
  IntMatrix e = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) e(i, i) = global_sign * signs[static_cast<std::size_t>(i)];
  return e;
}

FaceMatrices face_adjacency_matrices(const IdealTriangulation& tri,
                                     std::span<const std::size_t> column_of_face) {
  if (!is_ordered(tri)) throw NotOrdered("face adjacency matrices need an ordered triangulation");
  const auto cells = quotient_cells(tri);
  const auto n = static_cast<Eigen::Index>(tri.size());
  if (column_of_face.size() != cells.faces.size())
    throw std::invalid_argument("face relabeling has the wrong length");

  FaceMatrices m;
  for (int k = 0; k < 4; ++k) {
    m.X[k] = IntMatrix::Zero(n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const std::size_t face = cells.face_of[static_cast<std::size_t>(i)][k];
      m.X[k](i, static_cast<Eigen::Index>(column_of_face[face])) = 1;
    }
  }
  m.A_cal.resize(2 * n, 2 * n);
  m.A_cal << m.X[0] - m.X[1] + m.X[2], m.X[2] - m.X[3];
  m.B_cal = IntMatrix::Zero(2 * n, n);
  m.B_cal.bottomRows(n).setIdentity();
  const auto signs = tetra_signs(tri);
  m.E_cal = sign_matrix(signs);
  return m;
}

FaceMatrices face_adjacency_matrices(const IdealTriangulation& tri) {
  std::vector<std::size_t> identity(2 * tri.size());
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  return face_adjacency_matrices(tri, identity);
}

FaceMatrices with_global_sign(FaceMatrices face, int global_sign) {
  if (global_sign != face.global_sign) {
    face.E_cal = -face.E_cal;
    face.global_sign = global_sign;
  }
  return face;
}

} // namespace famedkit
