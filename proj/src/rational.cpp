#include "fracspec/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "fracspec/errors.hpp"

namespace fracspec {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!is_digits(s)) throw ParseError("malformed rational \"" + std::string(whole) + "\"");
  const Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const Integer num = parse_integer(text.substr(0, slash), text);
  const auto den_text = text.substr(slash + 1);
  if (!is_digits(den_text)) throw ParseError("malformed denominator in \"" + std::string(text) + "\"");
  const Integer den(std::string{den_text});
  if (den == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  return Rational(num, den);
}

std::string format_rational(const Rational& r) {
  const Integer num = numerator(r);
  const Integer den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

Integer floor_of(const Rational& r) {
  const Integer num = numerator(r);
  const Integer den = denominator(r);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Rational frac_part(const Rational& r) { return r - Rational(floor_of(r)); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

RatVec rat_vec(std::initializer_list<Rational> values) { return RatVec(values); }

RealVec to_real(const RatVec& v) {
  RealVec out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](const Rational& r) { return to_double(r); });
  return out;
}

Rational dot(const RatVec& a, const RatVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec add(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVec scale(const RatVec& a, const Rational& s) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

bool is_zero(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; });
}

bool all_integer(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return is_integer(r); });
}

double norm2(const RatVec& v) {
  double s = 0.0;
  for (const auto& r : v) {
    const double x = to_double(r);
    s += x * x;
  }
  return std::sqrt(s);
}

std::string format_vec(const RatVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_rational(v[i]);
  }
  return out + ")";
}

RatMat::RatMat(std::size_t dim) : dim_(dim), data_(dim * dim, Rational(0)) {}

RatMat::RatMat(std::size_t dim, std::initializer_list<Rational> row_major)
    : dim_(dim), data_(row_major) {
  if (data_.size() != dim * dim) throw std::invalid_argument("RatMat: wrong number of entries");
}

RatMat RatMat::identity(std::size_t dim) {
  RatMat m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

RatMat RatMat::diagonal(const RatVec& diag) {
  RatMat m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

RatMat RatMat::from_columns(const std::vector<RatVec>& columns) {
  RatMat m(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != columns.size()) throw std::invalid_argument("RatMat: ragged columns");
    for (std::size_t i = 0; i < columns.size(); ++i) m(i, j) = columns[j][i];
  }
  return m;
}

RatVec RatMat::column(std::size_t j) const {
  RatVec c(dim_);
  for (std::size_t i = 0; i < dim_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<RatVec> RatMat::columns() const {
  std::vector<RatVec> cols;
  cols.reserve(dim_);
  for (std::size_t j = 0; j < dim_; ++j) cols.push_back(column(j));
  return cols;
}

RatMat RatMat::transpose() const {
  RatMat t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Rational RatMat::determinant() const {
  RatMat a = *this;
  Rational det = 1;
  for (std::size_t col = 0; col < dim_; ++col) {
    std::size_t pivot = col;
    while (pivot < dim_ && a(pivot, col) == 0) ++pivot;
    if (pivot == dim_) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < dim_; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t row = col + 1; row < dim_; ++row) {
      if (a(row, col) == 0) continue;
      const Rational f = a(row, col) / a(col, col);
      for (std::size_t j = col; j < dim_; ++j) a(row, j) -= f * a(col, j);
    }
  }
  return det;
}

RatMat RatMat::inverse() const {
  RatMat a = *this;
  RatMat inv = identity(dim_);
  for (std::size_t col = 0; col < dim_; ++col) {
    std::size_t pivot = col;
    while (pivot < dim_ && a(pivot, col) == 0) ++pivot;
    if (pivot == dim_) throw std::domain_error("RatMat::inverse: singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < dim_; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Rational p = a(col, col);
    for (std::size_t j = 0; j < dim_; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t row = 0; row < dim_; ++row) {
      if (row == col || a(row, col) == 0) continue;
      const Rational f = a(row, col);
      for (std::size_t j = 0; j < dim_; ++j) {
        a(row, j) -= f * a(col, j);
        inv(row, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

bool RatMat::is_integer() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& r) { return fracspec::is_integer(r); });
}

bool RatMat::is_diagonal() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

RatVec RatMat::operator*(const RatVec& v) const {
  RatVec out(dim_, Rational(0));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
  return out;
}

RatMat operator*(const RatMat& a, const RatMat& b) {
  RatMat c(a.dim_);
  for (std::size_t i = 0; i < a.dim_; ++i)
    for (std::size_t k = 0; k < a.dim_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < a.dim_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

std::vector<std::vector<double>> RatMat::to_real() const {
  std::vector<std::vector<double>> m(dim_, std::vector<double>(dim_));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m[i][j] = to_double((*this)(i, j));
  return m;
}

std::vector<double> RatMat::eigenvalue_moduli() const {
  Eigen::MatrixXd m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = to_double((*this)(i, j));
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  std::vector<double> moduli;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) moduli.push_back(std::abs(solver.eigenvalues()[i]));
  return moduli;
}

}  // namespace fracspec
