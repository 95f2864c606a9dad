#ifndef FRACSPEC_SPECTRUM_HPP
#define FRACSPEC_SPECTRUM_HPP

#include <map>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "fracspec/fourier.hpp"

namespace fracspec {

/// The N^n affine sums ξ = Σ_{k=1}^{n} (Eᵀ)^{k-1} ℓ_k, computed exactly.
///
/// Element i has letter (i / N^{k-1}) mod N at position k, indexing `digits`
/// (L reordered so that 0 comes first). The depth-(n-1) set is therefore the
/// prefix of length N^{n-1}.
struct SpectrumEnumeration {
  int depth = 0;
  std::vector<RatVec> digits;
  std::vector<RatVec> elements;

  std::size_t size() const { return elements.size(); }
  /// Letters (ℓ₁, …, ℓₙ) of element i as indices into `digits`.
  std::vector<std::size_t> word(std::size_t i) const;
  std::optional<std::size_t> find(const RatVec& xi) const;

  std::map<RatVec, std::size_t> lookup;
};

/// Throws CollisionDetected if two words give the same ξ and BudgetExceeded
/// when N^n is above the budget.
SpectrumEnumeration enumerate_spectrum(const SimpleFactorSpec& spec, int depth,
                                       std::size_t budget = std::size_t{1} << 22);

/// Σ over the depth-n enumeration of |μ̂(s - ξ)|², product backend.
double sigma_partial_sum(const SimpleFactorSpec& spec, const RatVec& s, int enum_depth,
                         const TransformSettings& settings = {});

struct SigmaRow {
  int depth = 0;
  double sigma = 0.0;
  double increment = 0.0;  // sigma minus the previous row (first row: sigma)
};

/// σ for every enumeration depth in [first_depth, last_depth]. Terms are
/// computed once at the last depth and summed per prefix, largest |ξ| first,
/// with compensated summation.
std::vector<SigmaRow> sigma_table(const SimpleFactorSpec& spec, const RatVec& s, int first_depth, int last_depth,
                                  const TransformSettings& settings = {});

struct MaximalityWitness {
  bool found = false;  // false: every enumerated ξ was orthogonal (inconclusive)
  RatVec xi;
  Complex value;
};

/// First ξ in enumeration order with |μ̂(s - ξ)| > 1e-6. Throws
/// MemberOfSpectrum when s itself is enumerated.
MaximalityWitness maximality_probe(const SimpleFactorSpec& spec, const RatVec& s, int enum_depth,
                                   const TransformSettings& settings = {});

/// [μ̂(ξ_j - ξ_i)]_{ij} with the exact-zero product backend.
Eigen::MatrixXcd gram_matrix(const FourierTransform& transform, const std::vector<RatVec>& points);

}  // namespace fracspec

#endif  // FRACSPEC_SPECTRUM_HPP
