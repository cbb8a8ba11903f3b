#include "famedkit/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace famedkit {

using std::numbers::pi;

Complex ShapeVector::log_z(std::size_t i) const { return std::log(z[i]); }
Complex ShapeVector::log_zp(std::size_t i) const { return std::log(1.0 / (1.0 - z[i])); }
Complex ShapeVector::log_zpp(std::size_t i) const { return std::log((z[i] - 1.0) / z[i]); }

bool ShapeVector::all_positive() const {
  for (const auto& w : z)
    if (!(w.imag() > 0)) return false;
  return true;
}

// ======================================================
//                 Equations
// ======================================================

GluingSystem completeness_system(const IdealTriangulation& tri, const CuspTriangulation& cusp) {
  GluingSystem sys;
  sys.n_tetrahedra = tri.size();
  const auto edges = edge_rows(cusp);
  for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
    sys.rows.push_back(edges[j]);
    sys.target_pi.push_back(2);
  }
  sys.rows.push_back(holonomy(cusp, peripheral_curves(tri, cusp).meridian));
  sys.target_pi.push_back(0);
  return sys;
}

GluingSystem completeness_system(const IdealTriangulation& tri) {
  return completeness_system(tri, cusp_triangulation(tri));
}

ComplexVector residual(const GluingSystem& sys, const ShapeVector& shapes) {
  const auto m = static_cast<Eigen::Index>(sys.rows.size());
  ComplexVector f(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const HolonomyRow& row = sys.rows[static_cast<std::size_t>(r)];
    Complex sum(0.0, -pi * static_cast<double>(sys.target_pi[static_cast<std::size_t>(r)]));
    for (std::size_t t = 0; t < shapes.size(); ++t) {
      const auto i = static_cast<Eigen::Index>(t);
      if (row.c(i)) sum += static_cast<double>(row.c(i)) * shapes.log_z(t);
      if (row.c1(i)) sum += static_cast<double>(row.c1(i)) * shapes.log_zp(t);
      if (row.c2(i)) sum += static_cast<double>(row.c2(i)) * shapes.log_zpp(t);
    }
    f(r) = sum;
  }
  return f;
}

ComplexMatrix jacobian(const GluingSystem& sys, const ShapeVector& shapes) {
  const auto m = static_cast<Eigen::Index>(sys.rows.size());
  const auto n = static_cast<Eigen::Index>(shapes.size());
  ComplexMatrix j(m, n);
  for (Eigen::Index r = 0; r < m; ++r) {
    const HolonomyRow& row = sys.rows[static_cast<std::size_t>(r)];
    for (Eigen::Index t = 0; t < n; ++t) {
      const Complex z = shapes.z[static_cast<std::size_t>(t)];
      j(r, t) = static_cast<double>(row.c(t)) / z + static_cast<double>(row.c1(t)) / (1.0 - z) +
                static_cast<double>(row.c2(t)) / (z * (z - 1.0));
    }
  }
  return j;
}

// ======================================================
//                 Newton
// ======================================================

namespace {

enum class Outcome { converged, stalled, degenerate };

bool near_degenerate(const ShapeVector& s) {
  for (const auto& z : s.z)
    if (std::abs(z) < 1e-8 || std::abs(z - 1.0) < 1e-8 || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
      return true;
  return false;
}

Outcome newton(const GluingSystem& sys, ShapeVector& s, const SolveOptions& options) {
  double norm = residual(sys, s).cwiseAbs().maxCoeff();
  for (int it = 0; it < options.max_iterations; ++it) {
    if (norm < options.tolerance) return Outcome::converged;
    const ComplexVector f = residual(sys, s);
    const Eigen::PartialPivLU<ComplexMatrix> lu(jacobian(sys, s));
    const ComplexVector step = lu.solve(f);
    if (!step.allFinite()) return Outcome::stalled;
    // Backtrack until the residual decreases.
    double lambda = 1.0;
    for (int k = 0; k < 30; ++k, lambda /= 2) {
      ShapeVector trial = s;
      for (std::size_t t = 0; t < trial.size(); ++t) trial.z[t] -= lambda * step(static_cast<Eigen::Index>(t));
      if (near_degenerate(trial)) return Outcome::degenerate;
      const double trial_norm = residual(sys, trial).cwiseAbs().maxCoeff();
      if (trial_norm < norm || k == 29) {
        s = std::move(trial);
        norm = trial_norm;
        break;
      }
    }
  }
  return norm < options.tolerance ? Outcome::converged : Outcome::stalled;
}

} // namespace

ShapeVector solve_complete_structure(const GluingSystem& sys, const SolveOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> re(-1.0, 2.0), im(0.1, 2.0);
  int degenerate = 0;
  const int attempts = options.restarts + 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    ShapeVector s;
    s.z.resize(sys.n_tetrahedra);
    for (auto& z : s.z) z = attempt == 0 ? std::polar(1.0, pi / 3) : Complex(re(rng), im(rng));
    const Outcome outcome = newton(sys, s, options);
    if (outcome == Outcome::converged) return s;
    if (outcome == Outcome::degenerate) ++degenerate;
  }
  if (degenerate == attempts) throw DegenerateShape("every Newton run approached a degenerate shape");
  throw NoConvergence("no solution after " + std::to_string(attempts) + " Newton runs");
}

ShapeVector solve_complete_structure(const IdealTriangulation& tri, const SolveOptions& options) {
  return solve_complete_structure(completeness_system(tri), options);
}

// ======================================================
//                 Dilogarithm and volume
// ======================================================

Complex dilog(Complex z) {
  constexpr double pi2_6 = pi * pi / 6;
  if (z == Complex(0.0)) return 0.0;
  if (z == Complex(1.0)) return pi2_6;
  if (std::abs(z) > 1.0) {
    const Complex l = std::log(-z);
    return -dilog(1.0 / z) - pi2_6 - 0.5 * l * l;
  }
  if (z.real() > 0.5) return -dilog(1.0 - z) + pi2_6 - std::log(z) * std::log(1.0 - z);
  // Series in u = -log(1-z) with Bernoulli coefficients B_n / (n+1)!.
  static constexpr double kB[] = {
      1.0,  -1.0 / 4,  1.0 / 36,  0.0, -1.0 / 3600, 0.0, 1.0 / 211680, 0.0, -1.0 / 10886400, 0.0,
      1.0 / 526901760, 0.0, -4.064761645144226e-11, 0.0, 8.921691020456453e-13, 0.0,
      -1.993929586072108e-14, 0.0, 4.518980029619918e-16, 0.0, -1.035651761218125e-17, 0.0,
      2.395218621026186e-19, 0.0, -5.581785874325942e-21};
  const Complex u = -std::log(1.0 - z);
  Complex power = u, sum = 0.0;
  for (double b : kB) {
    sum += b * power;
    power *= u;
  }
  return sum;
}

double bloch_wigner(Complex z) {
  if (z == Complex(0.0) || z == Complex(1.0)) return 0.0;
  return dilog(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z));
}

double volume(const ShapeVector& shapes) {
  double v = 0;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    if (!(shapes.z[i].imag() > 0))
      throw NonPositiveShape("shape " + std::to_string(i) + " has Im z <= 0");
    v += bloch_wigner(shapes.z[i]);
  }
  return v;
}

// ======================================================
//                 Pipeline entry
// ======================================================

GeometryReport check_geometry(const IdealTriangulation& tri, bool allow_uncertified, const SolveOptions& options) {
  GeometryReport report;
  GluingSystem sys;
  try {
    sys = completeness_system(tri);
    report.shapes = solve_complete_structure(sys, options);
  } catch (const Error& e) {
    report.status = GeometryStatus::no_solution;
    report.detail = e.what();
    return report;
  }
  double min_im = std::numeric_limits<double>::infinity();
  for (const auto& z : report.shapes->z) min_im = std::min(min_im, z.imag());
  if (!(min_im > kMinPositiveImaginary)) {
    report.status = GeometryStatus::not_geometric;
    report.detail = "solution has a shape with Im z <= 1e-8";
    return report;
  }
  report.volume = volume(*report.shapes);
  try {
    report.box = certify_solution(sys, *report.shapes);
    report.status = report.box->geometric() ? GeometryStatus::certified_geometric : GeometryStatus::not_geometric;
    if (!report.box->geometric()) report.detail = "certified box is not strictly positive or on another branch";
  } catch (const CertificationFailed& e) {
    report.status = allow_uncertified ? GeometryStatus::numerically_geometric : GeometryStatus::not_geometric;
    report.detail = e.what();
  }
  return report;
}

const char* to_string(GeometryStatus status) {
  switch (status) {
  case GeometryStatus::certified_geometric: return "certified_geometric";
  case GeometryStatus::numerically_geometric: return "numerically_geometric_uncertified";
  case GeometryStatus::not_geometric: return "not_geometric";
  case GeometryStatus::no_solution: return "no_solution";
  }
  return "unknown";
}

nlohmann::json to_json(const GeometryReport& report) {
  nlohmann::json out = {{"status", to_string(report.status)}, {"geometric", report.geometric()}};
  if (report.shapes) {
    nlohmann::json shapes = nlohmann::json::array();
    for (const auto& z : report.shapes->z) shapes.push_back({z.real(), z.imag()});
    out["shapes"] = shapes;
  }
  if (report.volume) out["volume"] = *report.volume;
  if (report.box) out["certified_radius"] = report.box->radius;
  if (!report.detail.empty()) out["detail"] = report.detail;
  return out;
}

} // namespace famedkit
