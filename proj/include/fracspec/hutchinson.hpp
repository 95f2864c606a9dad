#ifndef FRACSPEC_HUTCHINSON_HPP
#define FRACSPEC_HUTCHINSON_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "fracspec/lattice.hpp"

namespace fracspec {

/// Contractions S_b x = E⁻¹x + b, one per digit b. digits[0] is always 0.
struct AffineIFS {
  RatMat e_inverse;
  std::vector<RatVec> digits;

  std::size_t dim() const { return e_inverse.dim(); }
  std::size_t N() const { return digits.size(); }
  RatVec apply(std::size_t digit, const RatVec& x) const;
  RealVec apply(std::size_t digit, const RealVec& x) const;
  /// Radius of a ball about 0 containing the attractor: max|b| / (1 - ‖E⁻¹‖),
  /// infinite when the operator norm is not below 1.
  double attractor_radius() const;
};

/// Throws NotExpansive unless every eigenvalue of E has modulus > 1.
AffineIFS build_ifs(const SimpleFactorSpec& spec);

struct RefineOptions {
  std::size_t atom_budget = std::size_t{1} << 24;
  bool parallel = true;
};

/// Depth-n approximation μ_n: the N^n points S_{b₁}∘⋯∘S_{bₙ}(0) with equal
/// weight N^{-n}. Atom i carries the digit word of its base-N expansion.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::size_t dim, int depth, std::size_t n_digits, std::vector<double> points);

  std::size_t dim() const { return dim_; }
  int depth() const { return depth_; }
  std::size_t size() const { return points_.size() / dim_; }
  double weight() const { return weight_; }
  const std::vector<double>& points() const { return points_; }
  RealVec point(std::size_t i) const;
  /// Digit indices (b₁, …, bₙ) of atom i.
  std::vector<std::size_t> word(std::size_t i) const;

 private:
  std::size_t dim_;
  int depth_;
  std::size_t n_digits_;
  std::vector<double> points_;
  double weight_;
};

/// Throws DepthTooLarge when N^n exceeds the atom budget.
DiscreteMeasure refine_measure(const AffineIFS& ifs, int depth, const RefineOptions& options = {});

/// Atom of word(i) recomputed in exact arithmetic.
RatVec exact_atom(const AffineIFS& ifs, const std::vector<std::size_t>& word);

/// Σ_atoms w·e^{i2π t·x}, the quadrature value of μ̂_n(t).
Complex integrate_exponential(const DiscreteMeasure& mu, const RealVec& t, bool parallel = true);

/// CSV with columns x1..xd, weight.
void write_measure_csv(const DiscreteMeasure& mu, std::ostream& out);

/// Smallest s ∈ K⁰ (Euclidean norm, then positive-first order) with
/// |coefficients| ≤ radius and s·(x - y) at distance > 1e-9 from Z.
/// Throws IdenticalPoints when x = y; nullopt means the search box was
/// exhausted.
std::optional<RatVec> separation_witness(const SimpleFactorSpec& spec, const RealVec& x, const RealVec& y,
                                         int radius);

/// K⁰ points with coefficient max-norm ≤ radius, excluding 0, in the search
/// order used by separation_witness.
std::vector<RatVec> dual_search_order(const SimpleFactorSpec& spec, int radius);

/// separation_witness with the candidate list built once, for many pairs.
class WitnessSearch {
 public:
  WitnessSearch(const SimpleFactorSpec& spec, int radius);
  std::optional<RatVec> find(const RealVec& x, const RealVec& y) const;
  /// Index into candidates() instead of the vector; -1 for no witness.
  long find_index(std::span<const double> x, std::span<const double> y) const;
  const std::vector<RatVec>& candidates() const { return candidates_; }

 private:
  std::vector<RatVec> candidates_;
  std::vector<RealVec> real_;
};

}  // namespace fracspec

#endif  // FRACSPEC_HUTCHINSON_HPP
