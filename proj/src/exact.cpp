#include "famedkit/exact.hpp"

#include <sstream>

namespace famedkit {

namespace detail {

namespace {

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Truncated quotient; the remainder has the sign of the dividend.
Integer quotient(const Integer& a, const Integer& b) { return a / b; }

} // namespace

SmithForm smith_normal_form_impl(BigIntMatrix a) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  BigIntMatrix left = BigIntMatrix::Identity(rows, rows);
  BigIntMatrix right = BigIntMatrix::Identity(cols, cols);

  auto swap_rows = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    a.row(i).swap(a.row(j));
    left.row(i).swap(left.row(j));
  };
  auto swap_cols = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    a.col(i).swap(a.col(j));
    right.col(i).swap(right.col(j));
  };

  const Eigen::Index steps = std::min(rows, cols);
  for (Eigen::Index t = 0; t < steps; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    auto place_min = [&]() {
      Eigen::Index bi = -1, bj = -1;
      Integer best;
      for (Eigen::Index i = t; i < rows; ++i)
        for (Eigen::Index j = t; j < cols; ++j)
          if (a(i, j) != 0 && (bi < 0 || abs_value(a(i, j)) < best)) {
            best = abs_value(a(i, j));
            bi = i;
            bj = j;
          }
      if (bi < 0) return false;
      swap_rows(t, bi);
      swap_cols(t, bj);
      return true;
    };
    if (!place_min()) break;

    for (;;) {
      bool dirty = false;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        const Integer q = quotient(a(i, t), a(t, t));
        a.row(i) -= q * a.row(t);
        left.row(i) -= q * left.row(t);
        if (a(i, t) != 0) dirty = true;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        const Integer q = quotient(a(t, j), a(t, t));
        a.col(j) -= q * a.col(t);
        right.col(j) -= q * right.col(t);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // A smaller remainder appeared in the pivot row or column.
        Eigen::Index bi = t, bj = t;
        Integer best = abs_value(a(t, t));
        for (Eigen::Index i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && abs_value(a(i, t)) < best) {
            best = abs_value(a(i, t));
            bi = i;
            bj = t;
          }
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && abs_value(a(t, j)) < best) {
            best = abs_value(a(t, j));
            bi = t;
            bj = j;
          }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // Pivot must divide the whole trailing block.
      Eigen::Index bad_row = -1;
      for (Eigen::Index i = t + 1; i < rows && bad_row < 0; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row < 0) break;
      a.row(t) += a.row(bad_row);
      left.row(t) += left.row(bad_row);
    }
    if (a(t, t) < 0) {
      a.row(t) = -a.row(t);
      left.row(t) = -left.row(t);
    }
  }

  SmithForm form;
  form.diagonal.resize(static_cast<std::size_t>(steps));
  for (Eigen::Index t = 0; t < steps; ++t) form.diagonal[static_cast<std::size_t>(t)] = a(t, t);
  form.left = std::move(left);
  form.right = std::move(right);
  return form;
}

} // namespace detail

std::string AbelianGroup::str() const {
  std::ostringstream out;
  bool first = true;
  if (rank > 0) {
    out << "Z";
    if (rank > 1) out << "^" << rank;
    first = false;
  }
  for (const auto& t : torsion) {
    out << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

std::string to_string(const Rational& q) {
  std::ostringstream out;
  out << boost::multiprecision::numerator(q);
  if (boost::multiprecision::denominator(q) != 1) out << "/" << boost::multiprecision::denominator(q);
  return out.str();
}

} // namespace famedkit
