#pragma once

// Exact integer / rational linear algebra on Eigen dense matrices.
//
// All routines are free functions templated on the Eigen expression type, so
// they accept integer matrices, blocks and products alike. Integer work is
// promoted to GMP integers internally; nothing here ever rounds.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace famedkit {

using Integer =
    boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<std::int64_t>;
using IntVector = Vector<std::int64_t>;
using BigIntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

template <typename Derived>
BigIntMatrix to_big_int(const Eigen::MatrixBase<Derived>& m) {
  BigIntMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Integer(m(i, j));
  return out;
}

template <typename Derived>
RationalMatrix to_rational(const Eigen::MatrixBase<Derived>& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

namespace detail {

struct BareissResult {
  Integer determinant; // meaningful only for square input
  Eigen::Index rank = 0;
};

// Fraction-free Gaussian elimination (Bareiss). Works on a copy.
inline BareissResult bareiss(BigIntMatrix a) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Integer previous = 1;
  int sign = 1;
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = rank; i < rows; ++i)
      if (a(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank) {
      a.row(pivot).swap(a.row(rank));
      sign = -sign;
    }
    for (Eigen::Index i = rank + 1; i < rows; ++i) {
      for (Eigen::Index j = col + 1; j < cols; ++j)
        a(i, j) = (a(rank, col) * a(i, j) - a(i, col) * a(rank, j)) / previous;
      a(i, col) = 0;
    }
    previous = a(rank, col);
    ++rank;
  }
  BareissResult result;
  result.rank = rank;
  if (rows == cols) result.determinant = rank == rows ? Integer(sign * previous) : Integer(0);
  return result;
}

} // namespace detail

// Exact determinant of an integer matrix.
template <typename Derived>
Integer determinant(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return Integer(1);
  return detail::bareiss(to_big_int(m)).determinant;
}

template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return detail::bareiss(to_big_int(m)).rank;
}

// Dimension of the kernel (columns minus rank).
template <typename Derived>
Eigen::Index nullity(const Eigen::MatrixBase<Derived>& m) {
  return m.cols() - exact_rank(m);
}

// Gauss-Jordan inverse over the rationals; empty when singular.
template <typename Derived>
std::optional<RationalMatrix> exact_inverse(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  RationalMatrix a = to_rational(m);
  RationalMatrix inv = RationalMatrix::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = col; i < n; ++i)
      if (a(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return std::nullopt;
    a.row(pivot).swap(a.row(col));
    inv.row(pivot).swap(inv.row(col));
    const Rational scale = 1 / a(col, col);
    a.row(col) *= scale;
    inv.row(col) *= scale;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Rational factor = a(i, col);
      a.row(i) -= factor * a.row(col);
      inv.row(i) -= factor * inv.row(col);
    }
  }
  return inv;
}

// Smith normal form: left * input * right = diag(diagonal) (padded with zeros),
// with left and right unimodular and each diagonal entry dividing the next.
struct SmithForm {
  std::vector<Integer> diagonal; // min(rows, cols) entries, nonnegative
  BigIntMatrix left;
  BigIntMatrix right;

  Eigen::Index rank() const {
    Eigen::Index r = 0;
    for (const auto& d : diagonal)
      if (d != 0) ++r;
    return r;
  }
};

namespace detail {
SmithForm smith_normal_form_impl(BigIntMatrix a);
}

template <typename Derived>
SmithForm smith_normal_form(const Eigen::MatrixBase<Derived>& m) {
  return detail::smith_normal_form_impl(to_big_int(m));
}

// Finitely generated abelian group Z^rank + sum Z/t_i.
struct AbelianGroup {
  int rank = 0;
  std::vector<Integer> torsion; // invariant factors > 1

  std::string str() const;
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

// Cokernel of the relation matrix acting on row vectors: Z^cols / rowspace.
template <typename Derived>
AbelianGroup cokernel(const Eigen::MatrixBase<Derived>& relations) {
  AbelianGroup group;
  const auto form = smith_normal_form(relations);
  group.rank = static_cast<int>(relations.cols() - form.rank());
  for (const auto& d : form.diagonal)
    if (d > 1) group.torsion.push_back(d);
  return group;
}

std::string to_string(const Rational& q);

} // namespace famedkit
