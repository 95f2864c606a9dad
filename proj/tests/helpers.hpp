#ifndef FRACSPEC_TESTS_HELPERS_HPP
#define FRACSPEC_TESTS_HELPERS_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "fracspec/rational.hpp"
#include "fracspec/spec_io.hpp"

namespace fracspec::test {

inline Rational q(const char* text) { return parse_rational(text); }

inline RatVec qv(std::initializer_list<const char*> items) {
  RatVec v;
  for (const char* s : items) v.push_back(parse_rational(s));
  return v;
}

inline SimpleFactorSpec builtin(const std::string& name) { return builtin_spec(name)->to_spec(); }

inline BoxUnion interval_union(std::initializer_list<std::pair<const char*, const char*>> pieces) {
  std::vector<Box> boxes;
  for (const auto& [lo, hi] : pieces) boxes.push_back(Box{qv({lo}), qv({hi})});
  return BoxUnion(boxes);
}

// e^{i2πx} straight from libm, used as an independent oracle.
inline std::complex<double> cis2pi(double x) { return std::polar(1.0, 2.0 * std::numbers::pi * x); }

}  // namespace fracspec::test

#endif  // FRACSPEC_TESTS_HELPERS_HPP
