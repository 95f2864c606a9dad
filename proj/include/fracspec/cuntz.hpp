#ifndef FRACSPEC_CUNTZ_HPP
#define FRACSPEC_CUNTZ_HPP

#include <optional>
#include <string>
#include <vector>

#include "fracspec/fourier.hpp"
#include "fracspec/hutchinson.hpp"

namespace fracspec {

/// coeff·e_freq in L²(μ). The zero vector has coeff 0 and freq 0.
struct ExponentialVector {
  Complex coeff{1.0, 0.0};
  RatVec freq;

  static ExponentialVector unit(RatVec freq) { return {Complex(1.0, 0.0), std::move(freq)}; }
  static ExponentialVector zero(std::size_t dim) { return {Complex(0.0, 0.0), RatVec(dim, Rational(0))}; }
  bool is_zero() const { return coeff == Complex(0.0, 0.0); }
};

/// Letters ℓ₁…ℓₙ over L; T_w = T_{ℓ₁}⋯T_{ℓₙ}.
struct Word {
  std::vector<RatVec> letters;
};

/// T_ℓ e_s = e_{Eᵀs + ℓ}. Throws UnknownDigit.
ExponentialVector apply_generator(const SimpleFactorSpec& spec, const RatVec& ell, const ExponentialVector& v);

/// T*_ℓ e_f = B(f - ℓ)·e_{(Eᵀ)⁻¹(f - ℓ)}, which agrees with the Gram pairing
/// ⟨T*_ℓ e_f, e_s⟩ = ⟨e_f, T_ℓ e_s⟩ for s ∈ K⁰ because B is K⁰-periodic
/// after Eᵀ. Throws UnknownDigit.
ExponentialVector apply_adjoint(const SimpleFactorSpec& spec, const RatVec& ell, const ExponentialVector& v);

/// Σ_{k=1}^{n} (Eᵀ)^{k-1} ℓ_k; the frequency of T_w e₀.
RatVec word_frequency(const SimpleFactorSpec& spec, const Word& w);

/// ⟨u, v⟩ = conj(u.coeff)·v.coeff·μ̂(v.freq - u.freq).
Complex inner_product(const FourierTransform& transform, const ExponentialVector& u, const ExponentialVector& v);

/// K⁰ points whose coefficients over the dual basis lie in [-radius, radius].
std::vector<RatVec> dual_box(const Lattice& K, int radius);

struct RelationReport {
  int box = 0;
  std::size_t samples = 0;
  double isometry = 0.0;             // max |μ̂(Eᵀu) - μ̂(u)|
  double range_orthogonality = 0.0;  // max |μ̂(Eᵀu + ℓ' - ℓ)|, ℓ ≠ ℓ'
  std::size_t range_terms = 0;
  std::size_t range_exact_zeros = 0;
  double completeness = 0.0;  // max |Σ_ℓ B(s - ℓ) - 1|
  bool degenerate = false;
};

RelationReport relation_residuals(const SimpleFactorSpec& spec, int box, const TransformSettings& settings = {});

/// ω(T_α T*_β) = ⟨e₀, T_α T*_β e₀⟩.
Complex state_eval(const FourierTransform& transform, const Word& alpha, const Word& beta);
Complex state_eval(const SimpleFactorSpec& spec, const Word& alpha, const Word& beta,
                   const TransformSettings& settings = {});

/// All words over L of length 1..max_length, shortest first.
std::vector<Word> all_words(const SimpleFactorSpec& spec, int max_length);

/// Where the measure under test comes from.
struct MeasureSource {
  std::string label;
  DiscreteMeasure measure;
  /// Digit set of the measure's mask; without it the completeness relation
  /// cannot be evaluated.
  std::optional<std::vector<RatVec>> mask_digits;

  static MeasureSource from_spec(const SimpleFactorSpec& spec, int quadrature_depth);
  static MeasureSource external(std::string label, DiscreteMeasure measure,
                                std::optional<std::vector<RatVec>> mask_digits = std::nullopt);
};

struct ConsistencyReport {
  std::vector<ValidationCheck> structure;
  double isometry = 0.0;
  double range_orthogonality = 0.0;
  std::optional<double> completeness;
  double tolerance = 1e-6;
  int box = 0;
  bool consistent = false;
  std::vector<std::string> failing;
};

/// Checks that L induces Cuntz isometries on L²(μ) for the inclusion K ⊂ Γ,
/// using the empirical transform of the given measure. Throws NotASublattice.
/// No reconstruction of a spectral pair is attempted.
ConsistencyReport classify_consistency(const MeasureSource& source, const Lattice& K, const Lattice& Gamma,
                                    const std::vector<RatVec>& L, int box = 2, double tolerance = 1e-6);

}  // namespace fracspec

#endif  // FRACSPEC_CUNTZ_HPP
