#ifndef CRNSR_LINALG_HPP
#define CRNSR_LINALG_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crnsr {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;
using IntegerMatrix = Matrix<Integer>;

inline int sign(const Rational& r) { return r.sign(); }
inline int sign(const Integer& z) { return z.sign(); }

/// Parses "3", "3/2", "0.25" or "-1/4". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Renders as "p" or "p/q" in lowest terms.
std::string to_string(const Rational& r);

/// Multiplies each row by the lcm of its denominators, giving a row-equivalent integer matrix.
IntegerMatrix clear_denominators(const RationalMatrix& m);

/// Rank of an integer matrix by fraction-free (Bareiss) elimination. Every
/// intermediate entry is a minor of the input, so all divisions are exact.
template <typename Derived>
Eigen::Index bareiss_rank(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> m = input;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Scalar previous(1);
  Eigen::Index rank = 0;
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index pivot = rank;
    while (pivot < rows && m(pivot, c) == Scalar(0)) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) m.row(pivot).swap(m.row(rank));
    const Scalar p = m(rank, c);
    for (Eigen::Index i = rank + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j) {
        m(i, j) = (p * m(i, j) - m(i, c) * m(rank, j)) / previous;
      }
      m(i, c) = Scalar(0);
    }
    previous = p;
    ++rank;
  }
  return rank;
}

Eigen::Index matrix_rank(const IntegerMatrix& m);
Eigen::Index matrix_rank(const RationalMatrix& m);

/// Reduced row echelon form over the rationals; pivot columns are appended to `pivots`.
RationalMatrix reduced_row_echelon(RationalMatrix m, std::vector<Eigen::Index>* pivots = nullptr);

/// Basis of {x : m x = 0}, one vector per column, each scaled to a primitive integer vector.
RationalMatrix null_space(const RationalMatrix& m);

/// Basis of {w : w^T m = 0}, one vector per column.
inline RationalMatrix left_null_space(const RationalMatrix& m) {
  return null_space(m.transpose());
}

/// Exact inverse of a square matrix, or nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

/// (T^T T)^{-1} T^T, defined when the columns of T are independent.
std::optional<RationalMatrix> left_inverse(const RationalMatrix& t);

/// True iff the column space of `a` is contained in the column space of `b`.
bool column_space_contains(const RationalMatrix& b, const RationalMatrix& a);

inline Eigen::MatrixXd to_double(const RationalMatrix& m) {
  return m.unaryExpr([](const Rational& r) { return r.convert_to<double>(); });
}

template <typename Derived>
RationalMatrix to_rational(const Eigen::MatrixBase<Derived>& m) {
  return m.template cast<Rational>();
}

}  // namespace crnsr

#endif  // CRNSR_LINALG_HPP
