#include "fracspec/phase_sum.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace fracspec {

namespace {

using Poly = std::vector<long long>;  // coefficient k multiplies x^k

// Φ_n for n ≤ kMaxExactDenominator, built by dividing x^n - 1 by Φ_d for the
// proper divisors d of n.
const std::vector<Poly>& cyclotomic_table() {
  static const std::vector<Poly> table = [] {
    const long max_n = PhaseSum::kMaxExactDenominator;
    std::vector<Poly> phi(max_n + 1);
    for (long n = 1; n <= max_n; ++n) {
      Poly p(n + 1, 0);
      p[0] = -1;
      p[n] = 1;
      for (long d = 1; d < n; ++d) {
        if (n % d) continue;
        const Poly& q = phi[d];
        const std::size_t dq = q.size() - 1;
        Poly quotient(p.size() - dq, 0);
        for (std::size_t k = p.size() - 1; k + 1 > dq; --k) {
          const long long c = p[k];  // q is monic
          quotient[k - dq] = c;
          for (std::size_t j = 0; j <= dq; ++j) p[k - dq + j] -= c * q[j];
          if (k == dq) break;
        }
        p = quotient;
      }
      phi[n] = p;
    }
    return phi;
  }();
  return table;
}

// Whether Φ_m divides Σ coeff[k] x^k, in exact arithmetic.
bool divisible_by_cyclotomic(std::vector<Rational> coeff, long m) {
  const Poly& phi = cyclotomic_table()[m];
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = coeff.size(); k-- > deg;) {
    const Rational c = coeff[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) coeff[k - deg + j] -= c * phi[j];
  }
  for (std::size_t k = 0; k < std::min(deg, coeff.size()); ++k)
    if (coeff[k] != 0) return false;
  return true;
}

}  // namespace

Complex unit_phase(double phase) {
  phase -= std::floor(phase);
  return std::polar(1.0, 2.0 * std::numbers::pi * phase);
}

Complex unit_phase(const Rational& phase) { return unit_phase(to_double(frac_part(phase))); }

void PhaseSum::add(const Rational& weight, const Rational& phase) {
  if (weight == 0) return;
  auto [it, inserted] = terms_.try_emplace(frac_part(phase), weight);
  if (!inserted) {
    it->second += weight;
    if (it->second == 0) terms_.erase(it);
  }
}

PhaseSum::Result PhaseSum::evaluate() const {
  if (terms_.empty()) return {Complex(0.0, 0.0), true, true};

  Integer lcm = 1;
  double magnitude = 0.0;
  Complex value(0.0, 0.0);
  for (const auto& [phase, weight] : terms_) {
    const Integer den = denominator(phase);
    lcm = boost::multiprecision::lcm(lcm, den);
    const double w = to_double(weight);
    magnitude += std::abs(w);
    value += w * unit_phase(to_double(phase));
  }

  if (lcm <= kMaxExactDenominator) {
    const long m = lcm.convert_to<long>();
    std::vector<Rational> coeff(m, Rational(0));
    for (const auto& [phase, weight] : terms_) {
      const Rational k = phase * m;
      coeff[numerator(k).convert_to<long>()] += weight;
    }
    if (divisible_by_cyclotomic(std::move(coeff), m)) return {Complex(0.0, 0.0), true, true};
    return {value, false, true};
  }

  if (std::abs(value) <= kZeroThreshold * magnitude) return {Complex(0.0, 0.0), true, false};
  return {value, false, false};
}

}  // namespace fracspec
