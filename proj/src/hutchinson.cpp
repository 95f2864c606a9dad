#include "fracspec/hutchinson.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

#include <Eigen/SVD>

#include "fracspec/errors.hpp"
#include "fracspec/kernels.hpp"

namespace fracspec {

RatVec AffineIFS::apply(std::size_t digit, const RatVec& x) const { return add(e_inverse * x, digits.at(digit)); }

RealVec AffineIFS::apply(std::size_t digit, const RealVec& x) const {
  const auto m = e_inverse.to_real();
  RealVec y = to_real(digits.at(digit));
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) y[i] += m[i][j] * x[j];
  return y;
}

double AffineIFS::attractor_radius() const {
  Eigen::MatrixXd m(dim(), dim());
  const auto real = e_inverse.to_real();
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) m(i, j) = real[i][j];
  const double op_norm = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
  if (op_norm >= 1.0) return std::numeric_limits<double>::infinity();
  double max_digit = 0.0;
  for (const auto& b : digits) max_digit = std::max(max_digit, norm2(b));
  return max_digit / (1.0 - op_norm);
}

AffineIFS build_ifs(const SimpleFactorSpec& spec) {
  const auto moduli = spec.E().eigenvalue_moduli();
  if (std::any_of(moduli.begin(), moduli.end(), [](double m) { return m <= 1.0; }))
    throw NotExpansive("E has an eigenvalue of modulus <= 1");
  std::vector<RatVec> digits = spec.digits_B();
  const RatVec zero(spec.dim(), Rational(0));
  const auto it = std::find(digits.begin(), digits.end(), zero);
  if (it == digits.end()) throw NotExpansive("digit set must contain 0");
  std::rotate(digits.begin(), it, it + 1);
  return AffineIFS{spec.E_inverse(), std::move(digits)};
}

DiscreteMeasure::DiscreteMeasure(std::size_t dim, int depth, std::size_t n_digits, std::vector<double> points)
    : dim_(dim), depth_(depth), n_digits_(n_digits), points_(std::move(points)) {
  weight_ = 1.0 / static_cast<double>(size());
}

RealVec DiscreteMeasure::point(std::size_t i) const {
  return RealVec(points_.begin() + static_cast<std::ptrdiff_t>(i * dim_),
                 points_.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim_));
}

std::vector<std::size_t> DiscreteMeasure::word(std::size_t i) const {
  std::vector<std::size_t> w(static_cast<std::size_t>(depth_));
  for (auto& letter : w) {
    letter = i % n_digits_;
    i /= n_digits_;
  }
  return w;
}

DiscreteMeasure refine_measure(const AffineIFS& ifs, int depth, const RefineOptions& options) {
  if (depth < 0) throw DepthTooLarge("negative depth");
  std::size_t count = 1;
  for (int k = 0; k < depth; ++k) {
    if (count > options.atom_budget / ifs.N())
      throw DepthTooLarge(std::to_string(ifs.N()) + "^" + std::to_string(depth) + " atoms exceed the budget of " +
                          std::to_string(options.atom_budget));
    count *= ifs.N();
  }
  const auto e_inv = kernels::RealMatrix::from(ifs.e_inverse);
  std::vector<RealVec> digits;
  for (const auto& b : ifs.digits) digits.push_back(to_real(b));
  auto atoms = options.parallel ? kernels::refine_atoms_parallel(e_inv, digits, depth)
                                : kernels::refine_atoms_serial(e_inv, digits, depth);
  return DiscreteMeasure(ifs.dim(), depth, ifs.N(), std::move(atoms));
}

RatVec exact_atom(const AffineIFS& ifs, const std::vector<std::size_t>& word) {
  RatVec x(ifs.dim(), Rational(0));
  for (std::size_t k = word.size(); k-- > 0;) x = ifs.apply(word[k], x);
  return x;
}

Complex integrate_exponential(const DiscreteMeasure& mu, const RealVec& t, bool parallel) {
  return parallel ? kernels::exp_sum_parallel(mu.points(), mu.dim(), mu.weight(), t)
                  : kernels::exp_sum_serial(mu.points(), mu.dim(), mu.weight(), t);
}

void write_measure_csv(const DiscreteMeasure& mu, std::ostream& out) {
  for (std::size_t j = 0; j < mu.dim(); ++j) out << 'x' << (j + 1) << ',';
  out << "weight\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = 0; j < mu.dim(); ++j) out << mu.points()[i * mu.dim() + j] << ',';
    out << mu.weight() << '\n';
  }
}

std::vector<RatVec> dual_search_order(const SimpleFactorSpec& spec, int radius) {
  const Lattice k0 = dual_lattice(spec.K());
  const std::size_t d = spec.dim();
  struct Candidate {
    double norm;
    std::vector<long> coeff;
    RatVec s;
  };
  std::vector<Candidate> candidates;
  std::vector<long> c(d, -radius);
  while (true) {
    if (std::any_of(c.begin(), c.end(), [](long v) { return v != 0; })) {
      RatVec coords(d);
      for (std::size_t i = 0; i < d; ++i) coords[i] = c[i];
      RatVec s = k0.basis() * coords;
      const double n = norm2(s);
      candidates.push_back({n, c, std::move(s)});
    }
    std::size_t k = d;
    while (k-- > 0) {
      if (++c[k] <= radius) break;
      c[k] = -radius;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.coeff > b.coeff;  // positive coefficients first
  });
  std::vector<RatVec> order;
  order.reserve(candidates.size());
  for (auto& cand : candidates) order.push_back(std::move(cand.s));
  return order;
}

WitnessSearch::WitnessSearch(const SimpleFactorSpec& spec, int radius)
    : candidates_(dual_search_order(spec, radius)) {
  for (const auto& s : candidates_) real_.push_back(to_real(s));
}

long WitnessSearch::find_index(std::span<const double> x, std::span<const double> y) const {
  for (std::size_t k = 0; k < real_.size(); ++k) {
    double phase = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) phase += real_[k][i] * (x[i] - y[i]);
    if (std::abs(phase - std::round(phase)) > 1e-9) return static_cast<long>(k);
  }
  return -1;
}

std::optional<RatVec> WitnessSearch::find(const RealVec& x, const RealVec& y) const {
  if (x == y) throw IdenticalPoints("x and y coincide");
  const long k = find_index(x, y);
  if (k < 0) return std::nullopt;
  return candidates_[static_cast<std::size_t>(k)];
}

std::optional<RatVec> separation_witness(const SimpleFactorSpec& spec, const RealVec& x, const RealVec& y,
                                         int radius) {
  return WitnessSearch(spec, radius).find(x, y);
}

}  // namespace fracspec
