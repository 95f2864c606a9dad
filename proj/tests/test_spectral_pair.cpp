#include <numbers>

#include <gtest/gtest.h>

#include "fracspec/errors.hpp"
#include "fracspec/spec_io.hpp"
#include "fracspec/spectral_pair.hpp"
#include "helpers.hpp"

using namespace fracspec;
using fracspec::test::builtin;
using fracspec::test::interval_union;
using fracspec::test::q;
using fracspec::test::qv;

namespace {

const BoxUnion& unit() {
  static const BoxUnion u = interval_union({{"0", "1"}});
  return u;
}

const BoxUnion& two_quarters() {
  static const BoxUnion u = interval_union({{"0", "1/4"}, {"1/2", "3/4"}});
  return u;
}

// Per-interval closed form (e^{i2πtb} - e^{i2πta}) / (i2πt), evaluated in libm.
Complex interval_oracle(double a, double b, double t) {
  if (t == 0.0) return b - a;
  const Complex i2pt(0.0, 2.0 * std::numbers::pi * t);
  return (std::exp(i2pt * b) - std::exp(i2pt * a)) / i2pt;
}

}  // namespace

TEST(BoxUnion, RejectsOverlapsAndEmptyBoxes) {
  EXPECT_THROW(interval_union({{"0", "1/2"}, {"1/4", "1"}}), std::invalid_argument);
  EXPECT_THROW(interval_union({{"1", "1"}}), std::invalid_argument);
  EXPECT_THROW(BoxUnion(std::vector<Box>{}), std::invalid_argument);
  EXPECT_NO_THROW(interval_union({{"0", "1/2"}, {"1/2", "1"}}));
  EXPECT_EQ(two_quarters().measure(), q("1/2"));
}

TEST(ChiHat, UnitIntervalExamples) {
  EXPECT_EQ(chi_hat(unit(), qv({"0"})), Complex(1.0, 0.0));
  for (const char* n : {"1", "-1", "2", "7"}) EXPECT_EQ(chi_hat(unit(), qv({n})), Complex(0.0, 0.0)) << n;
}

TEST(ChiHat, TwoQuartersZeroSet) {
  // Zeros at odd t and at t in 4Z\{0}; even t not divisible by 4 is not a zero.
  for (const char* t : {"1", "3", "-5", "4", "8", "-12"}) EXPECT_EQ(chi_hat(two_quarters(), qv({t})), Complex(0.0, 0.0)) << t;
  const Complex at2 = chi_hat(two_quarters(), qv({"2"}));
  const Complex oracle = interval_oracle(0.0, 0.25, 2.0) + interval_oracle(0.5, 0.75, 2.0);
  EXPECT_NEAR(std::abs(at2 - oracle), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(at2), 1.0 / std::numbers::pi, 1e-15);
}

TEST(ChiHat, RationalAndRealAgreeWithOracle) {
  const auto box2d = BoxUnion({Box{qv({"0", "1/3"}), qv({"1/2", "1"})}});
  for (const char* t : {"1/3", "-5/7", "2", "0", "13/4"}) {
    const double td = to_double(q(t));
    const Complex oracle1 = interval_oracle(0.0, 0.25, td) + interval_oracle(0.5, 0.75, td);
    EXPECT_LT(std::abs(chi_hat(two_quarters(), qv({t})) - oracle1), 1e-14) << t;
    EXPECT_LT(std::abs(chi_hat(two_quarters(), RealVec{td}) - oracle1), 1e-14) << t;
    const Complex oracle2 = interval_oracle(0.0, 0.5, td) * interval_oracle(1.0 / 3.0, 1.0, 0.75);
    EXPECT_LT(std::abs(chi_hat(box2d, RatVec{q(t), q("3/4")}) - oracle2), 1e-14) << t;
  }
}

TEST(ChiHat, HermitianAndMassAtZero) {
  for (const char* t : {"1/5", "2", "9/4", "-7/3"}) {
    const Complex a = chi_hat(two_quarters(), qv({t}));
    const Complex b = chi_hat(two_quarters(), RatVec{-q(t)});
    EXPECT_LT(std::abs(a - std::conj(b)), 1e-15);
  }
  EXPECT_EQ(chi_hat(two_quarters(), qv({"0"})), Complex(0.5, 0.0));
}

TEST(Orthogonality, FourierBasisOnUnitInterval) {
  const auto m = orthogonality_matrix(unit(), TruncatedSpectrum{{qv({"0"}), qv({"1"}), qv({"2"}), qv({"3"})}});
  EXPECT_TRUE(m.isApprox(Eigen::MatrixXcd::Identity(4, 4), 0.0));
}

TEST(Orthogonality, TwoQuartersExactIdentity) {
  const auto m =
      orthogonality_matrix(two_quarters(), TruncatedSpectrum{{qv({"0"}), qv({"1"}), qv({"4"}), qv({"5"})}});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(m(i, j), Complex(i == j ? 1.0 : 0.0, 0.0));
}

TEST(Orthogonality, HalfFrequencyOffDiagonal) {
  const auto m = orthogonality_matrix(unit(), TruncatedSpectrum{{qv({"0"}), qv({"1/2"})}});
  EXPECT_NEAR(std::abs(m(0, 1)), 2.0 / std::numbers::pi, 1e-15);
  EXPECT_LT(std::abs(m(0, 1) - std::conj(m(1, 0))), 1e-16);
}

TEST(Orthogonality, TruncatedSpectrumOfScale4) {
  const auto spec = builtin("scale4");
  const auto lambda = truncated_spectrum(spec, 9.0);
  EXPECT_EQ(lambda.points.front(), qv({"0"}));
  // L + 4Z within radius 9: 0, ±4, ±8, 1, 5, 9, -3, -7.
  EXPECT_EQ(lambda.points.size(), 10u);
  const auto m = orthogonality_matrix(two_quarters(), lambda);
  EXPECT_TRUE(m.isApprox(Eigen::MatrixXcd::Identity(m.rows(), m.cols()), 0.0));
}

TEST(Tiling, Scale4Exact) {
  const auto r = tiling_check(interval_union({{"0", "1/4"}}), Lattice::scaled(1, q("1/4")), {qv({"0"}), qv({"1/2"})},
                              two_quarters());
  EXPECT_TRUE(r.passed()) << r.detail;
  EXPECT_TRUE(r.fundamental_domain_exact);
  EXPECT_EQ(r.translate_measure, r.omega_measure);
}

TEST(Tiling, WrongMeasureFails) {
  const auto r = tiling_check(interval_union({{"0", "1/2"}}), Lattice::scaled(1, q("1/4")), {qv({"0"}), qv({"1/2"})},
                              two_quarters());
  EXPECT_FALSE(r.fundamental_domain);
  EXPECT_FALSE(r.passed());
}

TEST(Tiling, ProductSquare) {
  const auto doc = *builtin_spec("scale4x2");
  const auto r = tiling_check(BoxUnion({Box{qv({"0", "0"}), qv({"1/4", "1/4"})}}), Lattice::scaled(2, q("1/4")),
                              {qv({"0", "0"}), qv({"1/2", "0"}), qv({"0", "1/2"}), qv({"1/2", "1/2"})}, *doc.omega);
  EXPECT_TRUE(r.passed()) << r.detail;
  EXPECT_EQ(r.translate_measure, r.omega_measure);
}

TEST(Tiling, NonRectangularFallsBackToSampling) {
  // Γ spanned by (1,0), (1/2,1); D' = [0,1)² is a fundamental domain for it.
  const Lattice gamma(RatMat(2, {Rational(1), q("1/2"), Rational(0), Rational(1)}));
  const BoxUnion cell({Box{qv({"0", "0"}), qv({"1", "1"})}});
  SamplingOptions sampling;
  sampling.samples = 2000;
  const auto r = tiling_check(cell, gamma, {qv({"0", "0"})}, cell, sampling);
  EXPECT_TRUE(r.passed()) << r.detail;
  EXPECT_FALSE(r.fundamental_domain_exact);
  EXPECT_EQ(r.samples, 2000u);
  EXPECT_GT(r.miss_bound, 0.0);
}

TEST(Membership, Scale4Translations) {
  const Lattice z = Lattice::integer(1);
  EXPECT_TRUE(translation_membership(two_quarters(), z, qv({"1/2"})).member);
  EXPECT_FALSE(translation_membership(two_quarters(), z, qv({"1/4"})).member);
  EXPECT_TRUE(translation_membership(two_quarters(), z, qv({"-3"})).member);
  for (int k = 0; k < 8; ++k) {
    const Rational a(k, 8);
    EXPECT_EQ(translation_membership(two_quarters(), z, RatVec{a}).member, k % 4 == 0) << k;
  }
}

TEST(Membership, NonRectangularSampling) {
  const Lattice k(RatMat(2, {Rational(1), q("1/2"), Rational(0), Rational(1)}));
  const BoxUnion omega({Box{qv({"0", "0"}), qv({"1/2", "1"})}});
  const auto in = translation_membership(omega, k, qv({"1", "0"}));
  EXPECT_TRUE(in.member);
  SamplingOptions sampling;
  sampling.samples = 5000;
  const auto out = translation_membership(omega, k, qv({"1/4", "0"}), sampling);
  EXPECT_FALSE(out.member);
  EXPECT_FALSE(out.exact);
  EXPECT_GT(out.mismatches, 0u);
}

TEST(Reduce, Examples) {
  EXPECT_TRUE(equal_ae(reduce_mod_lattice(two_quarters(), Lattice::integer(1)), two_quarters()));
  EXPECT_TRUE(equal_ae(reduce_mod_lattice(interval_union({{"1", "5/4"}}), Lattice::integer(1)),
                       interval_union({{"0", "1/4"}})));
  EXPECT_THROW(reduce_mod_lattice(interval_union({{"0", "1/4"}, {"1", "5/4"}}), Lattice::integer(1)), NotEmbeddable);
}

TEST(Reduce, WrapsAcrossCellBoundary) {
  const auto r = reduce_mod_lattice(interval_union({{"3/4", "5/4"}}), Lattice::integer(1));
  EXPECT_TRUE(equal_ae(r, interval_union({{"0", "1/4"}, {"3/4", "1"}})));
}

TEST(Reduce, NonRectangularUnsupported) {
  const Lattice k(RatMat(2, {Rational(1), q("1/2"), Rational(0), Rational(1)}));
  EXPECT_THROW(reduce_mod_lattice(BoxUnion({Box{qv({"0", "0"}), qv({"1/2", "1/2"})}}), k), UnsupportedGeometry);
}
