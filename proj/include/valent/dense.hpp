#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

#include "valent/errors.hpp"
#include "valent/field_element.hpp"

namespace valent {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixQ = Matrix<FieldElement>;
using VectorQ = Vector<FieldElement>;
using Index = Eigen::Index;

inline bool is_zero(const mpq_class& x) { return x == 0; }
inline bool is_zero(const FieldElement& x) { return x.is_zero(); }

/// Pivot preference for exact elimination: smaller is cheaper to divide by.
inline std::size_t pivot_cost(const mpq_class& x) {
  return mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
}
inline std::size_t pivot_cost(const FieldElement& x) {
  return x.numerator().size() + x.denominator().size();
}

/// Dense univariate polynomial c_0 + c_1 X + ... + c_d X^d.
template <typename Scalar>
struct Polynomial {
  std::vector<Scalar> coeffs;

  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> c) : coeffs(std::move(c)) { trim(); }

  void trim() {
    while (!coeffs.empty() && is_zero(coeffs.back())) coeffs.pop_back();
  }
  bool is_zero_poly() const { return coeffs.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  const Scalar& leading() const { return coeffs.back(); }

  Scalar operator()(const Scalar& x) const {
    Scalar acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.coeffs.size() != b.coeffs.size()) return false;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
      if (!(a.coeffs[i] == b.coeffs[i])) return false;
    }
    return true;
  }
};

using PolynomialQ = Polynomial<FieldElement>;

namespace detail {

/// In-place Gauss-Jordan to reduced row echelon form. Returns pivot columns.
template <typename Scalar>
std::vector<Index> reduce_rows(Matrix<Scalar>& m) {
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index best = -1;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (Index r = row; r < m.rows(); ++r) {
      if (is_zero(m(r, col))) continue;
      const std::size_t cost = pivot_cost(m(r, col));
      if (cost < best_cost) {
        best = r;
        best_cost = cost;
      }
    }
    if (best < 0) continue;
    m.row(row).swap(m.row(best));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Index c = col; c < m.cols(); ++c) {
      if (!is_zero(m(row, c))) m(row, c) *= inv;
    }
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const Scalar factor = m(r, col);
      for (Index c = col; c < m.cols(); ++c) {
        if (!is_zero(m(row, c))) m(r, c) -= factor * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& a) {
  Matrix<typename Derived::Scalar> m = a;
  return static_cast<Index>(detail::reduce_rows(m).size());
}

/// Columns form a basis of the null space {x : a x = 0}.
template <typename Derived>
Matrix<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> m = a;
  const auto pivots = detail::reduce_rows(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(m.cols(), m.cols() - static_cast<Index>(pivots.size()));
  Index k = 0;
  for (Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = Scalar(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      basis(pivots[i], k) = -m(static_cast<Index>(i), free);
    }
    ++k;
  }
  return basis;
}

template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw NonSquare("determinant", "matrix is not square");
  Matrix<Scalar> m = a;
  Scalar det(1);
  const Index n = m.rows();
  for (Index col = 0; col < n; ++col) {
    Index best = -1;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (Index r = col; r < n; ++r) {
      if (!is_zero(m(r, col)) && pivot_cost(m(r, col)) < best_cost) {
        best = r;
        best_cost = pivot_cost(m(r, col));
      }
    }
    if (best < 0) return Scalar(0);
    if (best != col) {
      m.row(col).swap(m.row(best));
      det = -det;
    }
    det *= m(col, col);
    for (Index r = col + 1; r < n; ++r) {
      if (is_zero(m(r, col))) continue;
      const Scalar factor = m(r, col) / m(col, col);
      for (Index c = col + 1; c < n; ++c) {
        if (!is_zero(m(col, c))) m(r, c) -= factor * m(col, c);
      }
    }
  }
  return det;
}

/// Throws SingularMap when a is not invertible.
template <typename Derived>
Matrix<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw NonSquare("inverse", "matrix is not square");
  const Index n = a.rows();
  Matrix<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = Matrix<Scalar>::Identity(n, n);
  const auto pivots = detail::reduce_rows(aug);
  if (static_cast<Index>(pivots.size()) < n || (n > 0 && pivots.back() >= n)) {
    throw SingularMap("inverse", "matrix is singular");
  }
  return aug.rightCols(n);
}

/// Product that skips zero entries; exact scalars make Eigen's kernels wasteful.
template <typename Scalar>
Matrix<Scalar> multiply(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("multiply", "inner dimensions differ");
  Matrix<Scalar> out = Matrix<Scalar>::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (Index j = 0; j < b.cols(); ++j) {
        if (!is_zero(b(k, j))) out(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return out;
}

/// Monic det(X I - a), by the Faddeev-LeVerrier recurrence
/// M_k = a M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(a M_k) / k.
template <typename Derived>
Polynomial<typename Derived::Scalar> char_poly(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw NonSquare("char_poly", "matrix is not square");
  const Index n = a.rows();
  std::vector<Scalar> c(static_cast<std::size_t>(n) + 1, Scalar(0));
  c[static_cast<std::size_t>(n)] = Scalar(1);
  Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
  const Matrix<Scalar> am = a;
  for (Index k = 1; k <= n; ++k) {
    Matrix<Scalar> next = multiply(am, m);
    for (Index i = 0; i < n; ++i) next(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    m = std::move(next);
    Scalar trace(0);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (!is_zero(am(i, j)) && !is_zero(m(j, i))) trace += am(i, j) * m(j, i);
      }
    }
    c[static_cast<std::size_t>(n - k)] = -trace / Scalar(static_cast<long>(k));
  }
  return Polynomial<Scalar>(std::move(c));
}

/// Valuation of the content: min over nonzero coefficients, INF for zero.
ExtRational content_valuation(const PolynomialQ& p);

std::string format_polynomial(const PolynomialQ& p);

}  // namespace valent
