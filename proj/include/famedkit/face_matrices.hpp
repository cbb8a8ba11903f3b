#pragma once

#include "famedkit/triangulation.hpp"

#include <array>
#include <span>
#include <vector>

namespace famedkit {

// Face adjacency matrices of an ordered triangulation. Row i of X[k] has a
// single 1 in the column of the face of tetrahedron i opposite vertex k.
struct FaceMatrices {
  std::array<IntMatrix, 4> X; // N x 2N
  IntMatrix A_cal;            // [X0 - X1 + X2 ; X2 - X3], 2N x 2N
  IntMatrix B_cal;            // [0 ; Id], 2N x N
  IntMatrix E_cal;            // diagonal tetrahedron signs, N x N
  int global_sign = 1;        // sign applied to the propagated signs
};

// Columns follow the quotient face numbering of quotient_cells().
FaceMatrices face_adjacency_matrices(const IdealTriangulation& tri);

// column_of_face[f] is the column used for quotient face f.
FaceMatrices face_adjacency_matrices(const IdealTriangulation& tri,
                                     std::span<const std::size_t> column_of_face);

// Propagates the right-hand-rule sign from tetrahedron 0 (sign +1) across
// gluings: sign(target) = -sgn(perm) * sign(source). Throws NonOrientable on a
// contradiction.
std::vector<int> tetra_signs(const IdealTriangulation& tri);

// Same, starting the propagation at visit_order.front(). The result is still
// normalized to sign +1 on tetrahedron 0.
std::vector<int> tetra_signs(const IdealTriangulation& tri, std::span<const std::size_t> visit_order);

IntMatrix sign_matrix(std::span<const int> signs, int global_sign = 1);

// Replaces E_cal by the sign matrix for the given global sign.
FaceMatrices with_global_sign(FaceMatrices face, int global_sign);

} // namespace famedkit
