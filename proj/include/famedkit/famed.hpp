#pragma once

// FAMED conditions for an ordered triangulation and the determinant/nullity
// diagnostics attached to them.

#include "famedkit/angles.hpp"
#include "famedkit/cusp.hpp"
#include "famedkit/face_matrices.hpp"

#include <array>
#include <optional>

namespace famedkit {

struct ConjectureDiagnostics {
  long nullity_A_cal = 0;
  long nullity_B_bold = 0;
  Integer det_A_cal = 0;
  Integer det_B_bold = 0;

  // det A_cal in {0, +-1}, det B in {0, +-2}, nullity(B) = 2 nullity(A_cal).
  bool determinant_pattern() const;
  bool nullity_pattern() const { return nullity_B_bold == 2 * nullity_A_cal; }
};

struct SignResult {
  int global_sign = 1;
  bool identity_holds = false;
  std::optional<RationalMatrix> rhs;
};

struct FamedReport {
  bool angle_nonempty = false;
  Integer det_A_cal = 0;
  Integer det_B_bold = 0;
  std::optional<RationalMatrix> lhs;         // B^-1 A when det B != 0
  std::array<SignResult, 2> per_sign;        // global sign +1, then -1
  bool identity_holds = false;               // for at least one sign
  bool famed = false;
  ConjectureDiagnostics diagnostics;
};

ConjectureDiagnostics conjecture_diagnostics(const FaceMatrices& face, const NZMatrices& nz);

// X0 A_cal^-1 B_cal E + transpose + (E + Id)/2, or absent if A_cal is singular.
std::optional<RationalMatrix> famed_rhs(const FaceMatrices& face, const IntMatrix& sign_matrix);

FamedReport famed_check(const FaceMatrices& face, const NZMatrices& nz, bool angles_ok);

// Everything for one ordered triangulation with default conventions: face
// numbering by smaller slot, signs normalized at tetrahedron 0, preferred
// longitude, dropped edge N-1 unless given.
struct OrderEvaluation {
  FaceMatrices face;
  NZMatrices nz;
  std::optional<AngleStructure> angles;
  FamedReport report;
};

OrderEvaluation evaluate_ordered(const IdealTriangulation& ordered,
                                 std::optional<std::size_t> dropped_edge = std::nullopt);

nlohmann::json to_json(const RationalMatrix& m);
nlohmann::json to_json(const FamedReport& report);

} // namespace famedkit
