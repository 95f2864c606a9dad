#include "fracspec/spectrum.hpp"

#include <algorithm>
#include <numeric>

#include "fracspec/errors.hpp"
#include "fracspec/kernels.hpp"

namespace fracspec {

std::vector<std::size_t> SpectrumEnumeration::word(std::size_t i) const {
  std::vector<std::size_t> w(static_cast<std::size_t>(depth));
  for (auto& letter : w) {
    letter = i % digits.size();
    i /= digits.size();
  }
  return w;
}

std::optional<std::size_t> SpectrumEnumeration::find(const RatVec& xi) const {
  const auto it = lookup.find(xi);
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

SpectrumEnumeration enumerate_spectrum(const SimpleFactorSpec& spec, int depth, std::size_t budget) {
  if (depth < 0) throw BudgetExceeded("negative enumeration depth");
  SpectrumEnumeration out;
  out.depth = depth;
  out.digits = spec.digits_L();
  const RatVec zero(spec.dim(), Rational(0));
  const auto z = std::find(out.digits.begin(), out.digits.end(), zero);
  if (z != out.digits.end()) std::rotate(out.digits.begin(), z, z + 1);
  const std::size_t n = out.digits.size();

  std::size_t total = 1;
  for (int k = 0; k < depth; ++k) {
    if (total > budget / std::max<std::size_t>(n, 1))
      throw BudgetExceeded(std::to_string(n) + "^" + std::to_string(depth) + " frequencies exceed the budget");
    total *= n;
  }

  out.elements.reserve(total);
  out.elements.push_back(zero);
  std::vector<RatVec> level = out.digits;  // (Eᵀ)^{k-1} ℓ
  for (int k = 0; k < depth; ++k) {
    const std::size_t prefix = out.elements.size();
    for (std::size_t letter = 1; letter < n; ++letter)
      for (std::size_t i = 0; i < prefix; ++i) out.elements.push_back(add(out.elements[i], level[letter]));
    // letter 0 keeps the prefix in place; a nonzero 0-letter would shift it
    if (!is_zero(level[0]))
      for (std::size_t i = 0; i < prefix; ++i) out.elements[i] = add(out.elements[i], level[0]);
    for (auto& v : level) v = spec.E_transpose() * v;
  }

  for (std::size_t i = 0; i < out.elements.size(); ++i)
    if (!out.lookup.emplace(out.elements[i], i).second)
      throw CollisionDetected("two digit words give " + format_vec(out.elements[i]));
  return out;
}

double sigma_partial_sum(const SimpleFactorSpec& spec, const RatVec& s, int enum_depth,
                         const TransformSettings& settings) {
  return sigma_table(spec, s, enum_depth, enum_depth, settings).back().sigma;
}

std::vector<SigmaRow> sigma_table(const SimpleFactorSpec& spec, const RatVec& s, int first_depth, int last_depth,
                                  const TransformSettings& settings) {
  if (first_depth < 0 || last_depth < first_depth) throw BudgetExceeded("bad depth range");
  const SpectrumEnumeration enumeration = enumerate_spectrum(spec, last_depth);
  const FourierTransform transform(spec, settings);

  std::vector<RatVec> shifted;
  shifted.reserve(enumeration.size());
  for (const auto& xi : enumeration.elements) shifted.push_back(sub(s, xi));
  const std::vector<Complex> values = transform.product_batch(shifted);

  std::vector<double> norms(enumeration.size());
  for (std::size_t i = 0; i < norms.size(); ++i) norms[i] = norm2(enumeration.elements[i]);

  std::vector<SigmaRow> rows;
  double previous = 0.0;
  std::size_t prefix = 1;
  for (int k = 0; k < first_depth; ++k) prefix *= enumeration.digits.size();
  for (int depth = first_depth; depth <= last_depth; ++depth) {
    std::vector<std::size_t> order(prefix);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });
    std::vector<double> terms(prefix);
    for (std::size_t i = 0; i < prefix; ++i) terms[i] = std::norm(values[order[i]]);
    const double sigma = kernels::compensated_sum(terms);
    rows.push_back({depth, sigma, rows.empty() ? sigma : sigma - previous});
    previous = sigma;
    prefix *= enumeration.digits.size();
  }
  return rows;
}

MaximalityWitness maximality_probe(const SimpleFactorSpec& spec, const RatVec& s, int enum_depth,
                                   const TransformSettings& settings) {
  const SpectrumEnumeration enumeration = enumerate_spectrum(spec, enum_depth);
  if (enumeration.find(s)) throw MemberOfSpectrum(format_vec(s) + " is an enumerated frequency");
  const FourierTransform transform(spec, settings);
  for (const auto& xi : enumeration.elements) {
    const Complex v = transform.product(sub(s, xi));
    if (std::abs(v) > 1e-6) return {true, xi, v};
  }
  return {};
}

Eigen::MatrixXcd gram_matrix(const FourierTransform& transform, const std::vector<RatVec>& points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  std::vector<RatVec> diffs;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> where;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      diffs.push_back(sub(points[static_cast<std::size_t>(j)], points[static_cast<std::size_t>(i)]));
      where.emplace_back(i, j);
    }
  const auto values = transform.product_batch(diffs);
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Identity(n, n);
  for (std::size_t k = 0; k < values.size(); ++k) {
    gram(where[k].first, where[k].second) = values[k];
    gram(where[k].second, where[k].first) = std::conj(values[k]);
  }
  return gram;
}

}  // namespace fracspec
