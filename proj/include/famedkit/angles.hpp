#pragma once

// Angle structures: strictly positive angles (in units of pi) summing to 1 in
// each tetrahedron and to 2 around each quotient edge.

#include "famedkit/cusp.hpp"

#include <optional>
#include <vector>

namespace famedkit {

struct AngleStructure {
  // (a_0, b_0, c_0, a_1, ...): angles at the edges carrying z, z', z''.
  std::vector<Rational> angles;
  // min over all angles; the largest achievable value.
  Rational margin;
};

// Exact max-margin LP. Absent when the optimal margin is not positive.
std::optional<AngleStructure> angle_structure_feasible(const CuspTriangulation& cusp);
std::optional<AngleStructure> angle_structure_feasible(const IdealTriangulation& tri);

// Exact check of every equality and strict positivity.
bool is_angle_structure(const CuspTriangulation& cusp, const std::vector<Rational>& angles);

// Equality-form LP solved by the two-phase tableau simplex with Bland's rule:
// maximize c.x subject to A x = b, x >= 0 (b may have any sign).
struct LinearProgram {
  RationalMatrix A;
  RationalVector b;
  RationalVector c;
};

struct LinearProgramSolution {
  enum class Status { optimal, infeasible, unbounded } status = Status::infeasible;
  RationalVector x;
  Rational value;
};

LinearProgramSolution solve_linear_program(const LinearProgram& lp);

nlohmann::json to_json(const AngleStructure& angles);

} // namespace famedkit
