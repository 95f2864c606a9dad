#ifndef FRACSPEC_LATTICE_HPP
#define FRACSPEC_LATTICE_HPP

#include <optional>
#include <string>
#include <vector>

#include "fracspec/rational.hpp"

namespace fracspec {

/// Rank-d lattice spanned over Z by the columns of a nonsingular rational
/// basis matrix. Membership and coordinates are exact.
class Lattice {
 public:
  /// Throws std::invalid_argument when the basis is singular.
  explicit Lattice(RatMat basis);

  static Lattice integer(std::size_t dim);
  /// scale·Z^d.
  static Lattice scaled(std::size_t dim, const Rational& scale);

  std::size_t dim() const { return basis_.dim(); }
  const RatMat& basis() const { return basis_; }
  const RatMat& basis_inverse() const { return inverse_; }
  /// Volume of a fundamental cell, |det basis|.
  Rational covolume() const;

  /// basis⁻¹·x, the coordinates of x over the generators.
  RatVec coordinates(const RatVec& x) const;
  bool contains(const RatVec& x) const;
  /// Same point set (bases may differ by a unimodular change).
  bool same_as(const Lattice& other) const;
  bool subset_of(const Lattice& other) const;
  /// Axis-aligned generators (diagonal basis), i.e. a product of 1D lattices.
  bool rectangular() const { return basis_.is_diagonal(); }
  /// Canonical representative of x mod this lattice: fractional parts of the
  /// coordinates, mapped back. Two vectors are congruent iff their keys match.
  RatVec reduce(const RatVec& x) const;

 private:
  RatMat basis_;
  RatMat inverse_;
};

/// Basis inverse-transpose: {λ : λ·s ∈ Z for all s in lat}.
Lattice dual_lattice(const Lattice& lat);

/// K ⊂ Γ with u_i = Σ_j R_ij v_j for generators u of `sub`, v of `super`.
struct LatticeInclusion {
  Lattice sub;
  Lattice super;
  RatMat R;  // integer entries
  Integer index() const;
};

/// Throws NotASublattice if a generator of `sub` has non-integer
/// coordinates over `super`.
LatticeInclusion inclusion_matrix(const Lattice& sub, const Lattice& super);

/// Coset representatives of super/sub, starting with 0. With `given`, checks
/// that list instead (cardinality, membership, distinct classes) and returns
/// it unchanged; throws BadSection on failure.
std::vector<RatVec> coset_representatives(const Lattice& sub, const Lattice& super,
                                          const std::optional<std::vector<RatVec>>& given = std::nullopt);

/// The full datum: lattices K ⊆ A ⊆ Γ, digit set B (a section of A/K) and
/// frequency digits L ⊂ K⁰. Derived matrices are computed once on
/// construction; no validation happens here (see validate_simple_factor).
class SimpleFactorSpec {
 public:
  SimpleFactorSpec(std::string name, Lattice K, Lattice A, Lattice Gamma, std::vector<RatVec> digits_B,
                   std::vector<RatVec> digits_L);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return K_.dim(); }
  std::size_t N() const { return digits_B_.size(); }
  const Lattice& K() const { return K_; }
  const Lattice& A() const { return A_; }
  const Lattice& Gamma() const { return Gamma_; }
  const std::vector<RatVec>& digits_B() const { return digits_B_; }
  const std::vector<RatVec>& digits_L() const { return digits_L_; }

  /// E = U·V⁻¹ for bases U of K and V of Γ, so E(Γ) = K.
  const RatMat& E() const { return E_; }
  const RatMat& E_transpose() const { return Et_; }
  const RatMat& E_inverse() const { return E_inv_; }
  /// (Eᵀ)⁻¹, the frequency-side contraction.
  const RatMat& E_transpose_inverse() const { return Et_inv_; }

  /// Index of ℓ in digits_L, or nullopt.
  std::optional<std::size_t> digit_index(const RatVec& ell) const;

 private:
  std::string name_;
  Lattice K_, A_, Gamma_;
  std::vector<RatVec> digits_B_, digits_L_;
  RatMat E_, Et_, E_inv_, Et_inv_;
};

RatMat expansion_map(const SimpleFactorSpec& spec);

/// τ_ℓ(s) = Eᵀs + ℓ. Throws UnknownDigit when ℓ ∉ L.
RatVec tau_apply(const SimpleFactorSpec& spec, const RatVec& ell, const RatVec& s);
RealVec tau_apply(const SimpleFactorSpec& spec, const RatVec& ell, const RealVec& s);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool degenerate = false;  // K = A; reported, not a failure
  double hadamard_residual = 0.0;

  bool ok() const;
  const ValidationCheck* find(const std::string& name) const;
  bool passed(const std::string& name) const;
};

/// Checks: chain, section_B, dual_L, cardinality, separation, unitarity,
/// expansive. Never throws on bad data; failures become report entries.
ValidationReport validate_simple_factor(const SimpleFactorSpec& spec);

}  // namespace fracspec

#endif  // FRACSPEC_LATTICE_HPP
