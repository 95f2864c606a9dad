#ifndef FRACSPEC_SPECTRAL_PAIR_HPP
#define FRACSPEC_SPECTRAL_PAIR_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "fracspec/lattice.hpp"

namespace fracspec {

/// Half-open box [lo, hi) with rational corners.
struct Box {
  RatVec lo;
  RatVec hi;

  std::size_t dim() const { return lo.size(); }
  Rational measure() const;
  bool contains(const RatVec& x) const;
  Box translated(const RatVec& a) const;
  friend bool operator==(const Box&, const Box&) = default;
};

Rational intersection_measure(const Box& a, const Box& b);

/// Finite disjoint union of half-open boxes with positive total measure.
class BoxUnion {
 public:
  /// Throws std::invalid_argument on empty/inverted boxes, mixed dimensions or
  /// overlapping boxes.
  explicit BoxUnion(std::vector<Box> boxes);

  std::size_t dim() const { return boxes_.front().dim(); }
  const std::vector<Box>& boxes() const { return boxes_; }
  Rational measure() const;
  bool contains(const RatVec& x) const;
  BoxUnion translated(const RatVec& a) const;

 private:
  std::vector<Box> boxes_;
};

/// m_d(a ∩ b) for two box unions.
Rational intersection_measure(const BoxUnion& a, const BoxUnion& b);
/// Equal up to a null set.
bool equal_ae(const BoxUnion& a, const BoxUnion& b);

/// ∫_Ω e^{i2π t·x} dx. The rational overload decides vanishing exactly
/// through PhaseSum; the real overload is plain floating point.
Complex chi_hat(const BoxUnion& omega, const RatVec& t);
Complex chi_hat(const BoxUnion& omega, const RealVec& t);

/// Finite piece of a frequency set Λ; 0 first, points distinct.
struct TruncatedSpectrum {
  std::vector<RatVec> points;
};

/// Λ = L + Γ⁰ restricted to the Euclidean ball of the given radius, sorted by
/// norm (ties broken lexicographically).
TruncatedSpectrum truncated_spectrum(const SimpleFactorSpec& spec, double radius);

/// Entry (i, j) = chi_hat(Ω, λ_j - λ_i) / m_d(Ω).
Eigen::MatrixXcd orthogonality_matrix(const BoxUnion& omega, const TruncatedSpectrum& spectrum);

/// Reduction of Ω into the cell Π[0, |p_j|) of a rectangular lattice K.
/// Throws NotEmbeddable if two pieces overlap with positive measure and
/// UnsupportedGeometry for non-rectangular K.
BoxUnion reduce_mod_lattice(const BoxUnion& omega, const Lattice& K);

struct SamplingOptions {
  std::uint64_t seed = 20240601;
  std::size_t samples = 100000;
};

struct MembershipResult {
  bool member = false;
  bool exact = true;
  std::size_t samples = 0;     // Monte-Carlo samples drawn (0 when exact)
  std::size_t mismatches = 0;  // samples that failed
  /// With zero mismatches, a 95% upper bound on the mismatching fraction of Ω
  /// (rule of three); 0 when exact.
  double miss_bound = 0.0;
};

/// Whether Ω + a ≡ Ω mod K up to measure zero.
MembershipResult translation_membership(const BoxUnion& omega, const Lattice& K, const RatVec& a,
                                        const SamplingOptions& sampling = {});

struct TilingReport {
  bool fundamental_domain = false;
  bool fundamental_domain_exact = true;
  std::size_t samples = 0;
  double miss_bound = 0.0;
  bool translates_disjoint = false;
  bool covers_omega = false;
  Rational translate_measure = 0;  // Σ m_d(D' + a)
  Rational omega_measure = 0;
  std::string detail;

  bool passed() const { return fundamental_domain && translates_disjoint && covers_omega; }
};

/// (a) D' is a fundamental domain for Γ; (b) the translates D' + a are
/// pairwise disjoint and their union is Ω' a.e.
TilingReport tiling_check(const BoxUnion& d_prime, const Lattice& gamma, const std::vector<RatVec>& translates,
                          const BoxUnion& omega_prime, const SamplingOptions& sampling = {});

}  // namespace fracspec

#endif  // FRACSPEC_SPECTRAL_PAIR_HPP
