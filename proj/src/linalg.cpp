#include "crnsr/linalg.hpp"

#include <cctype>
#include <stdexcept>

namespace crnsr {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// GMP reads a leading zero as an octal prefix
Integer decimal_integer(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string_view::npos ? Integer(0) : Integer(std::string(digits.substr(first)));
}

Integer lcm(const Integer& a, const Integer& b) {
  return boost::multiprecision::lcm(a, b);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  bool negative = false;
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    const Integer d = decimal_integer(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = Rational(decimal_integer(num), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    }
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const Integer digits = decimal_integer(std::string(whole) + std::string(frac));
    value = Rational(digits, scale);
  } else {
    if (!all_digits(body)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    value = Rational(decimal_integer(body));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) { return r.str(); }

IntegerMatrix clear_denominators(const RationalMatrix& m) {
  IntegerMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Integer scale = 1;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      scale = lcm(scale, denominator(m(i, j)));
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out(i, j) = numerator(m(i, j)) * (scale / denominator(m(i, j)));
    }
  }
  return out;
}

Eigen::Index matrix_rank(const IntegerMatrix& m) { return bareiss_rank(m); }

Eigen::Index matrix_rank(const RationalMatrix& m) { return bareiss_rank(clear_denominators(m)); }

RationalMatrix reduced_row_echelon(RationalMatrix m, std::vector<Eigen::Index>* pivots) {
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < m.cols() && row < m.rows(); ++c) {
    Eigen::Index p = row;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) m.row(p).swap(m.row(row));
    const Rational inv = Rational(1) / m(row, c);
    m.row(row) *= inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      m.row(i) -= f * m.row(row);
    }
    if (pivots) pivots->push_back(c);
    ++row;
  }
  return m;
}

RationalMatrix null_space(const RationalMatrix& m) {
  std::vector<Eigen::Index> pivots;
  const RationalMatrix r = reduced_row_echelon(m, &pivots);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  const Eigen::Index dim = m.cols() - static_cast<Eigen::Index>(pivots.size());
  RationalMatrix basis = RationalMatrix::Zero(m.cols(), dim);
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = 1;
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
      basis(pivots[pi], k) = -r(static_cast<Eigen::Index>(pi), free);
    }
    // primitive integer scaling
    Integer scale = 1;
    for (Eigen::Index i = 0; i < basis.rows(); ++i) scale = lcm(scale, denominator(basis(i, k)));
    Integer g = 0;
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
      basis(i, k) *= Rational(scale);
      g = boost::multiprecision::gcd(g, numerator(basis(i, k)));
    }
    if (g > 1) basis.col(k) /= Rational(g);
    ++k;
  }
  return basis;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  RationalMatrix aug(n, 2 * n);
  aug << m, RationalMatrix::Identity(n, n);
  std::vector<Eigen::Index> pivots;
  const RationalMatrix r = reduced_row_echelon(aug, &pivots);
  if (static_cast<Eigen::Index>(pivots.size()) < n || (n > 0 && pivots[static_cast<std::size_t>(n - 1)] >= n)) {
    return std::nullopt;
  }
  return RationalMatrix(r.rightCols(n));
}

std::optional<RationalMatrix> left_inverse(const RationalMatrix& t) {
  const RationalMatrix gram = t.transpose() * t;
  auto inv = inverse(gram);
  if (!inv) return std::nullopt;
  return RationalMatrix(*inv * t.transpose());
}

bool column_space_contains(const RationalMatrix& b, const RationalMatrix& a) {
  if (a.rows() != b.rows()) throw std::invalid_argument("row count mismatch");
  RationalMatrix joined(b.rows(), b.cols() + a.cols());
  joined << b, a;
  return matrix_rank(joined) == matrix_rank(b);
}

}  // namespace crnsr
