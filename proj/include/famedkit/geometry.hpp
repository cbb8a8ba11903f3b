#pragma once

// Complete hyperbolic structure: gluing equations in log form, Newton solve,
// interval certification and volume.

#include "famedkit/cusp.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace famedkit {

using Complex = std::complex<double>;
using ComplexMatrix = Matrix<Complex>;
using ComplexVector = Vector<Complex>;

struct ShapeVector {
  std::vector<Complex> z;

  std::size_t size() const { return z.size(); }
  // Principal logs of z, z' = 1/(1-z), z'' = (z-1)/z.
  Complex log_z(std::size_t i) const;
  Complex log_zp(std::size_t i) const;
  Complex log_zpp(std::size_t i) const;
  bool all_positive() const;
};

// Rows of integer coefficients on (Log z, Log z', Log z'') with targets in
// units of i*pi: N-1 edge rows (target 2) and the raw meridian row (target 0).
struct GluingSystem {
  std::vector<HolonomyRow> rows;
  std::vector<long> target_pi;
  std::size_t n_tetrahedra = 0;
};

GluingSystem completeness_system(const IdealTriangulation& tri, const CuspTriangulation& cusp);
GluingSystem completeness_system(const IdealTriangulation& tri);

ComplexVector residual(const GluingSystem& sys, const ShapeVector& shapes);
ComplexMatrix jacobian(const GluingSystem& sys, const ShapeVector& shapes);

struct SolveOptions {
  int max_iterations = 200;
  int restarts = 20;
  double tolerance = 1e-12;
  std::uint64_t seed = 0x5eed;
};

// Newton from z = exp(i*pi/3), then seeded random restarts in the upper half
// plane. Throws NoConvergence, or DegenerateShape when every attempt ran into
// a shape within 1e-8 of 0 or 1. Positivity is not required.
ShapeVector solve_complete_structure(const GluingSystem& sys, const SolveOptions& options = {});
ShapeVector solve_complete_structure(const IdealTriangulation& tri, const SolveOptions& options = {});

struct ComplexBox {
  double re_lo = 0, re_hi = 0, im_lo = 0, im_hi = 0;
};

struct CertifiedBox {
  std::vector<ComplexBox> boxes;
  double radius = 0;
  bool certified = false;
  bool positivity = false;   // every box has Im strictly above 0
  bool branch_ok = false;    // log residual at the centers below 1e-6
  bool geometric() const { return certified && positivity && branch_ok; }
};

// Krawczyk test on the rectangular (polynomial) form of the system with
// radii 1e-10, 1e-9, ..., 1e-6, then 1e-11, 1e-12. Throws CertificationFailed
// when no radius contracts.
CertifiedBox certify_solution(const GluingSystem& sys, const ShapeVector& shapes);

// Bloch-Wigner dilogarithm D(z) = Im Li2(z) + arg(1-z) log|z|.
double bloch_wigner(Complex z);
Complex dilog(Complex z);

// Sum of D(z_i); throws NonPositiveShape unless every Im z_i > 0.
double volume(const ShapeVector& shapes);

// Shapes with Im z at or below this are treated as non-positive.
inline constexpr double kMinPositiveImaginary = 1e-8;

enum class GeometryStatus { certified_geometric, numerically_geometric, not_geometric, no_solution };

struct GeometryReport {
  GeometryStatus status = GeometryStatus::no_solution;
  std::optional<ShapeVector> shapes;
  std::optional<CertifiedBox> box;
  std::optional<double> volume;
  std::string detail;
  bool geometric() const {
    return status == GeometryStatus::certified_geometric || status == GeometryStatus::numerically_geometric;
  }
};

// Solve and certify. With allow_uncertified, a positive numeric solution
// whose certification fails is labelled numerically_geometric.
GeometryReport check_geometry(const IdealTriangulation& tri, bool allow_uncertified = false,
                              const SolveOptions& options = {});

const char* to_string(GeometryStatus status);
nlohmann::json to_json(const GeometryReport& report);

} // namespace famedkit
