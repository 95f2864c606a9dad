#ifndef FRACSPEC_PHASE_SUM_HPP
#define FRACSPEC_PHASE_SUM_HPP

#include <map>

#include "fracspec/rational.hpp"

namespace fracspec {

/// e^{i2π·phase} with the phase first reduced into [0, 1).
Complex unit_phase(double phase);
Complex unit_phase(const Rational& phase);

/// Accumulates Σ c_k·e^{i2π φ_k} with rational weights c_k and rational
/// phases φ_k, deciding vanishing exactly where it can.
///
/// Phases are reduced mod 1 and equal phases merged exactly. If the common
/// denominator M of the surviving phases is small, the sum is a polynomial in
/// a primitive M-th root of unity and vanishes iff the cyclotomic polynomial
/// Φ_M divides it; that test is done in exact arithmetic. For larger M the
/// numeric value is snapped to zero below kZeroThreshold·Σ|c_k|.
class PhaseSum {
 public:
  static constexpr double kZeroThreshold = 1e-14;
  static constexpr long kMaxExactDenominator = 64;

  void add(const Rational& weight, const Rational& phase);

  struct Result {
    Complex value;
    bool zero = false;
    bool exact = false;  // zero-ness decided in exact arithmetic
  };
  Result evaluate() const;

 private:
  std::map<Rational, Rational> terms_;
};

}  // namespace fracspec

#endif  // FRACSPEC_PHASE_SUM_HPP
