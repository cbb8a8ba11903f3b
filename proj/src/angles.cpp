#include "famedkit/angles.hpp"

namespace famedkit {

// ======================================================
//                 Tableau simplex
// ======================================================

namespace {

class Tableau {
public:
  Tableau(const LinearProgram& lp) : m_(lp.A.rows()), n_(lp.A.cols()) {
    rows_.assign(static_cast<std::size_t>(m_), std::vector<Rational>(static_cast<std::size_t>(n_ + m_ + 1)));
    basis_.resize(static_cast<std::size_t>(m_));
    for (Eigen::Index i = 0; i < m_; ++i) {
      auto& row = rows_[static_cast<std::size_t>(i)];
      const bool flip = lp.b(i) < 0;
      for (Eigen::Index j = 0; j < n_; ++j) row[static_cast<std::size_t>(j)] = flip ? Rational(-lp.A(i, j)) : lp.A(i, j);
      row[static_cast<std::size_t>(n_ + i)] = 1;
      row.back() = flip ? Rational(-lp.b(i)) : lp.b(i);
      basis_[static_cast<std::size_t>(i)] = static_cast<std::size_t>(n_ + i);
    }
  }

  // Minimizes cost.x over columns [0, allowed); false if unbounded.
  bool minimize(const std::vector<Rational>& cost, std::size_t allowed) {
    reset_objective(cost);
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j)
        if (objective_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == allowed) return true;
      std::size_t leave = rows_.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][enter] <= 0) continue;
        Rational ratio = rows_[i].back() / rows_[i][enter];
        if (leave == rows_.size() || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == rows_.size()) return false;
      pivot(leave, enter);
    }
  }

  Rational objective_value() const { return -objective_.back(); }

  // Pivots artificial columns out of the basis; drops rows that are redundant.
  void remove_artificials() {
    const auto n = static_cast<std::size_t>(n_);
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < n) {
        ++i;
        continue;
      }
      std::size_t column = n;
      for (std::size_t j = 0; j < n; ++j)
        if (rows_[i][j] != 0) {
          column = j;
          break;
        }
      if (column == n) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        pivot(i, column);
        ++i;
      }
    }
  }

  RationalVector solution() const {
    RationalVector x = RationalVector::Zero(n_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] < static_cast<std::size_t>(n_)) x(static_cast<Eigen::Index>(basis_[i])) = rows_[i].back();
    return x;
  }

  std::size_t width() const { return static_cast<std::size_t>(n_ + m_); }

private:
  void reset_objective(const std::vector<Rational>& cost) {
    objective_.assign(rows_.empty() ? width() + 1 : rows_[0].size(), Rational(0));
    for (std::size_t j = 0; j < cost.size(); ++j) objective_[j] = cost[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = basis_[i] < cost.size() ? cost[basis_[i]] : zero_;
      if (cb == 0) continue;
      for (std::size_t j = 0; j < objective_.size(); ++j) objective_[j] -= cb * rows_[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t s) {
    auto& pivot_row = rows_[r];
    const Rational p = pivot_row[s];
    for (auto& v : pivot_row) v /= p;
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[s] == 0) return;
      const Rational f = row[s];
      for (std::size_t j = 0; j < row.size(); ++j)
        if (pivot_row[j] != 0) row[j] -= f * pivot_row[j];
    };
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (i != r) eliminate(rows_[i]);
    eliminate(objective_);
    basis_[r] = s;
  }

  Eigen::Index m_, n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> objective_;
  Rational zero_{0};
};

} // namespace

LinearProgramSolution solve_linear_program(const LinearProgram& lp) {
  LinearProgramSolution out;
  Tableau tableau(lp);
  const auto n = static_cast<std::size_t>(lp.A.cols());

  std::vector<Rational> phase_one(tableau.width(), Rational(0));
  for (std::size_t j = n; j < phase_one.size(); ++j) phase_one[j] = 1;
  tableau.minimize(phase_one, tableau.width());
  if (tableau.objective_value() != 0) {
    out.status = LinearProgramSolution::Status::infeasible;
    return out;
  }
  tableau.remove_artificials();

  std::vector<Rational> phase_two(n);
  for (std::size_t j = 0; j < n; ++j) phase_two[j] = -lp.c(static_cast<Eigen::Index>(j));
  if (!tableau.minimize(phase_two, n)) {
    out.status = LinearProgramSolution::Status::unbounded;
    return out;
  }
  out.status = LinearProgramSolution::Status::optimal;
  out.x = tableau.solution();
  out.value = lp.c.dot(out.x);
  return out;
}

// ======================================================
//                 Angle structures
// ======================================================

std::optional<AngleStructure> angle_structure_feasible(const CuspTriangulation& cusp) {
  const auto n = static_cast<Eigen::Index>(cusp.n_tetrahedra);
  const auto edges = edge_rows(cusp);
  const auto n_edges = static_cast<Eigen::Index>(edges.size());

  // Unknowns y (3N) and t with angles = y + t, y >= 0, t >= 0.
  LinearProgram lp;
  lp.A = RationalMatrix::Zero(n + n_edges, 3 * n + 1);
  lp.b = RationalVector::Zero(n + n_edges);
  lp.c = RationalVector::Zero(3 * n + 1);
  lp.c(3 * n) = 1;
  for (Eigen::Index t = 0; t < n; ++t) {
    for (int k = 0; k < 3; ++k) lp.A(t, 3 * t + k) = 1;
    lp.A(t, 3 * n) = 3;
    lp.b(t) = 1;
  }
  for (Eigen::Index e = 0; e < n_edges; ++e) {
    const HolonomyRow& row = edges[static_cast<std::size_t>(e)];
    long degree = 0;
    for (Eigen::Index t = 0; t < n; ++t) {
      lp.A(n + e, 3 * t) = row.c(t);
      lp.A(n + e, 3 * t + 1) = row.c1(t);
      lp.A(n + e, 3 * t + 2) = row.c2(t);
      degree += row.c(t) + row.c1(t) + row.c2(t);
    }
    lp.A(n + e, 3 * n) = degree;
    lp.b(n + e) = 2;
  }

  const auto solution = solve_linear_program(lp);
  if (solution.status != LinearProgramSolution::Status::optimal || solution.value <= 0) return std::nullopt;
  AngleStructure out;
  out.margin = solution.value;
  out.angles.reserve(static_cast<std::size_t>(3 * n));
  for (Eigen::Index j = 0; j < 3 * n; ++j) out.angles.push_back(solution.x(j) + out.margin);
  return out;
}

std::optional<AngleStructure> angle_structure_feasible(const IdealTriangulation& tri) {
  return angle_structure_feasible(cusp_triangulation(tri));
}

bool is_angle_structure(const CuspTriangulation& cusp, const std::vector<Rational>& angles) {
  const std::size_t n = cusp.n_tetrahedra;
  if (angles.size() != 3 * n) return false;
  for (const auto& a : angles)
    if (a <= 0) return false;
  for (std::size_t t = 0; t < n; ++t)
    if (angles[3 * t] + angles[3 * t + 1] + angles[3 * t + 2] != 1) return false;
  for (const auto& row : edge_rows(cusp)) {
    Rational sum = 0;
    for (std::size_t t = 0; t < n; ++t) {
      const auto i = static_cast<Eigen::Index>(t);
      sum += row.c(i) * angles[3 * t] + row.c1(i) * angles[3 * t + 1] + row.c2(i) * angles[3 * t + 2];
    }
    if (sum != 2) return false;
  }
  return true;
}

nlohmann::json to_json(const AngleStructure& angles) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& a : angles.angles) list.push_back(to_string(a));
  return {{"angles_pi", list}, {"margin_pi", to_string(angles.margin)}};
}

} // namespace famedkit
