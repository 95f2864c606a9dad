#ifndef FRACSPEC_FOURIER_HPP
#define FRACSPEC_FOURIER_HPP

#include <memory>
#include <string>
#include <vector>

#include "fracspec/hutchinson.hpp"
#include "fracspec/lattice.hpp"

namespace fracspec {

enum class Backend { product, quadrature, both };

std::string to_string(Backend backend);
Backend parse_backend(const std::string& name);

/// Truncation of the infinite product and depth of the quadrature measure.
/// All frequency-side maps use Eᵀ: μ̂(Eᵀt) = B(Eᵀt)·μ̂(t).
struct TransformSettings {
  int product_depth = 30;
  int quadrature_depth = 12;
  Backend backend = Backend::product;
  int max_product_depth = 256;
  std::size_t atom_budget = std::size_t{1} << 24;
  bool parallel = true;

  /// Throws BudgetExceeded when a depth is negative or above its budget.
  void check() const;
};

/// B(t) = (1/N) Σ_b e^{i2π b·t}. The rational overload returns an exact 0
/// when the phases cancel (see PhaseSum).
Complex mask_B(const SimpleFactorSpec& spec, const RatVec& t);
Complex mask_B(const SimpleFactorSpec& spec, const RealVec& t);

struct TransformValue {
  Complex value;
  Backend backend = Backend::product;
  int depth = 0;
  /// |product - quadrature| when backend == both, else 0.
  double discrepancy = 0.0;
};

/// μ̂ of the self-similar measure of one spec. The quadrature measure μ_n is
/// built on first use and shared by copies.
class FourierTransform {
 public:
  FourierTransform(const SimpleFactorSpec& spec, TransformSettings settings = {});

  const SimpleFactorSpec& spec() const { return *spec_; }
  const TransformSettings& settings() const { return settings_; }

  /// Π_{k<depth} B((Eᵀ)^{-k} t); exact 0 as soon as one factor vanishes.
  Complex product(const RatVec& t) const;
  Complex product(const RatVec& t, int depth) const;
  Complex product(const RealVec& t) const;
  Complex product(const RealVec& t, int depth) const;
  /// Product values for many frequencies, evaluated in parallel.
  std::vector<Complex> product_batch(const std::vector<RatVec>& freqs) const;

  Complex quadrature(const RealVec& t) const;
  const DiscreteMeasure& measure() const;

  TransformValue evaluate(const RatVec& t) const;
  TransformValue evaluate(const RealVec& t) const;

 private:
  struct Cache;
  std::shared_ptr<const SimpleFactorSpec> spec_;
  TransformSettings settings_;
  std::vector<RatVec> digits_;
  std::shared_ptr<Cache> cache_;
};

/// Convenience wrapper around FourierTransform::evaluate.
TransformValue mu_hat(const SimpleFactorSpec& spec, const RatVec& t, const TransformSettings& settings = {});
TransformValue mu_hat(const SimpleFactorSpec& spec, const RealVec& t, const TransformSettings& settings = {});

/// |μ̂(Eᵀt) - B(Eᵀt)·μ̂(t)| with both transforms taken by quadrature.
double functional_equation_residual(const FourierTransform& transform, const RealVec& t);
double functional_equation_residual(const SimpleFactorSpec& spec, const RealVec& t,
                                    const TransformSettings& settings = {});
/// The same identity for the truncated product: |P_D(Eᵀt) - B(Eᵀt)·P_{D-1}(t)|.
double product_functional_residual(const FourierTransform& transform, const RealVec& t);

}  // namespace fracspec

#endif  // FRACSPEC_FOURIER_HPP
