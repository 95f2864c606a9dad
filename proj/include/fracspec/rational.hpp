#ifndef FRACSPEC_RATIONAL_HPP
#define FRACSPEC_RATIONAL_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fracspec {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

using RatVec = std::vector<Rational>;
using RealVec = std::vector<double>;

/// Parses "p", "-p" or "p/q" (q != 0). Throws ParseError on anything else.
Rational parse_rational(std::string_view text);
/// Canonical "p/q" form; integers are written without a denominator.
std::string format_rational(const Rational& r);

bool is_integer(const Rational& r);
Integer floor_of(const Rational& r);
/// r - floor(r), always in [0, 1).
Rational frac_part(const Rational& r);
double to_double(const Rational& r);

RatVec rat_vec(std::initializer_list<Rational> values);
RealVec to_real(const RatVec& v);
Rational dot(const RatVec& a, const RatVec& b);
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const RatVec& a, const Rational& s);
bool is_zero(const RatVec& v);
bool all_integer(const RatVec& v);
double norm2(const RatVec& v);
std::string format_vec(const RatVec& v);

/// Square matrix over the rationals, stored row-major.
class RatMat {
 public:
  RatMat() = default;
  explicit RatMat(std::size_t dim);
  RatMat(std::size_t dim, std::initializer_list<Rational> row_major);

  static RatMat identity(std::size_t dim);
  static RatMat diagonal(const RatVec& diag);
  /// Matrix whose j-th column is columns[j].
  static RatMat from_columns(const std::vector<RatVec>& columns);

  std::size_t dim() const { return dim_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  RatVec column(std::size_t j) const;
  std::vector<RatVec> columns() const;

  RatMat transpose() const;
  Rational determinant() const;
  /// Exact Gauss-Jordan inverse. Throws std::domain_error when singular.
  RatMat inverse() const;
  bool is_integer() const;
  bool is_diagonal() const;

  RatVec operator*(const RatVec& v) const;
  friend RatMat operator*(const RatMat& a, const RatMat& b);
  friend bool operator==(const RatMat& a, const RatMat& b) = default;

  std::vector<std::vector<double>> to_real() const;
  /// Moduli of the eigenvalues, computed in double precision.
  std::vector<double> eigenvalue_moduli() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> data_;
};

}  // namespace fracspec

#endif  // FRACSPEC_RATIONAL_HPP
