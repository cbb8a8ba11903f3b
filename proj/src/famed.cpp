#include "famedkit/famed.hpp"

#include "famedkit/ordering.hpp"

namespace famedkit {

bool ConjectureDiagnostics::determinant_pattern() const {
  const bool a_ok = det_A_cal == 0 || abs(det_A_cal) == 1;
  const bool b_ok = det_B_bold == 0 || abs(det_B_bold) == 2;
  return a_ok && b_ok;
}

ConjectureDiagnostics conjecture_diagnostics(const FaceMatrices& face, const NZMatrices& nz) {
  ConjectureDiagnostics d;
  d.det_A_cal = determinant(face.A_cal);
  d.det_B_bold = determinant(nz.B);
  d.nullity_A_cal = static_cast<long>(nullity(face.A_cal));
  d.nullity_B_bold = static_cast<long>(nullity(nz.B));
  return d;
}

std::optional<RationalMatrix> famed_rhs(const FaceMatrices& face, const IntMatrix& sign_matrix) {
  const auto inverse = exact_inverse(face.A_cal);
  if (!inverse) return std::nullopt;
  const RationalMatrix e = to_rational(sign_matrix);
  const RationalMatrix core = to_rational(face.X[0]) * (*inverse) * to_rational(face.B_cal) * e;
  const auto n = e.rows();
  RationalMatrix rhs = core + core.transpose();
  for (Eigen::Index i = 0; i < n; ++i) rhs(i, i) += (e(i, i) + 1) / Rational(2);
  return rhs;
}

FamedReport famed_check(const FaceMatrices& face, const NZMatrices& nz, bool angles_ok) {
  FamedReport r;
  r.angle_nonempty = angles_ok;
  r.diagnostics = conjecture_diagnostics(face, nz);
  r.det_A_cal = r.diagnostics.det_A_cal;
  r.det_B_bold = r.diagnostics.det_B_bold;
  if (r.det_B_bold != 0) {
    const auto b_inverse = exact_inverse(nz.B);
    r.lhs = (*b_inverse) * to_rational(nz.A);
  }
  const IntMatrix base = face.global_sign > 0 ? face.E_cal : IntMatrix(-face.E_cal);
  for (int k = 0; k < 2; ++k) {
    SignResult& s = r.per_sign[k];
    s.global_sign = k == 0 ? 1 : -1;
    if (r.det_A_cal == 0) continue;
    s.rhs = famed_rhs(face, s.global_sign * base);
    s.identity_holds = r.lhs.has_value() && *r.lhs == *s.rhs;
    r.identity_holds = r.identity_holds || s.identity_holds;
  }
  r.famed = r.angle_nonempty && r.det_A_cal != 0 && r.det_B_bold != 0 && r.identity_holds;
  return r;
}

OrderEvaluation evaluate_ordered(const IdealTriangulation& ordered, std::optional<std::size_t> dropped_edge) {
  OrderEvaluation ev;
  ev.face = face_adjacency_matrices(ordered);
  const CuspTriangulation cusp = cusp_triangulation(ordered);
  ev.nz = neumann_zagier(ordered, cusp, dropped_edge);
  ev.angles = angle_structure_feasible(cusp);
  ev.report = famed_check(ev.face, ev.nz, ev.angles.has_value());
  return ev;
}

nlohmann::json to_json(const RationalMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Rational& q = m(i, j);
      if (denominator(q) == 1)
        row.push_back(numerator(q).convert_to<long long>());
      else
        row.push_back(to_string(q));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const FamedReport& report) {
  auto big = [](const Integer& v) { return v.convert_to<long long>(); };
  nlohmann::json signs = nlohmann::json::array();
  for (const auto& s : report.per_sign)
    signs.push_back({{"global_sign", s.global_sign},
                     {"identity_holds", s.identity_holds},
                     {"rhs", s.rhs ? to_json(*s.rhs) : nlohmann::json()}});
  return {{"angle_nonempty", report.angle_nonempty},
          {"det_A_cal", big(report.det_A_cal)},
          {"det_B_bold", big(report.det_B_bold)},
          {"lhs", report.lhs ? to_json(*report.lhs) : nlohmann::json()},
          {"per_sign", signs},
          {"identity_holds", report.identity_holds},
          {"famed", report.famed},
          {"diagnostics",
           {{"nullity_A_cal", report.diagnostics.nullity_A_cal},
            {"nullity_B_bold", report.diagnostics.nullity_B_bold},
            {"det_values", {big(report.diagnostics.det_A_cal), big(report.diagnostics.det_B_bold)}},
            {"determinant_pattern", report.diagnostics.determinant_pattern()},
            {"nullity_pattern", report.diagnostics.nullity_pattern()}}}};
}

} // namespace famedkit
