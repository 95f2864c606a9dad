#include <gtest/gtest.h>

#include "fracspec/cuntz.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/spec_io.hpp"
#include "fracspec/spectrum.hpp"
#include "helpers.hpp"

using namespace fracspec;
using fracspec::test::builtin;
using fracspec::test::q;
using fracspec::test::qv;

namespace {
Word word(std::initializer_list<const char*> letters) {
  Word w;
  for (const char* l : letters) w.letters.push_back(qv({l}));
  return w;
}
}  // namespace

TEST(Generator, Examples) {
  const auto spec = builtin("scale4");
  const auto e0 = ExponentialVector::unit(qv({"0"}));
  EXPECT_EQ(apply_generator(spec, qv({"0"}), e0).freq, qv({"0"}));
  EXPECT_EQ(apply_generator(spec, qv({"1"}), e0).freq, qv({"1"}));
  const auto e1 = ExponentialVector::unit(qv({"1"}));
  const auto e5 = apply_generator(spec, qv({"1"}), e1);
  EXPECT_EQ(e5.freq, qv({"5"}));
  EXPECT_EQ(e5.coeff, Complex(1.0, 0.0));
  EXPECT_THROW(apply_generator(spec, qv({"3"}), e0), UnknownDigit);
}

TEST(Adjoint, Examples) {
  const auto spec = builtin("scale4");
  const auto e0 = ExponentialVector::unit(qv({"0"}));
  const auto a = apply_adjoint(spec, qv({"0"}), e0);
  EXPECT_EQ(a.coeff, Complex(1.0, 0.0));
  EXPECT_EQ(a.freq, qv({"0"}));
  EXPECT_TRUE(apply_adjoint(spec, qv({"1"}), e0).is_zero());
  const auto b = apply_adjoint(spec, qv({"1"}), ExponentialVector::unit(qv({"1"})));
  EXPECT_EQ(b.coeff, Complex(1.0, 0.0));
  EXPECT_EQ(b.freq, qv({"0"}));
  EXPECT_THROW(apply_adjoint(spec, qv({"2"}), e0), UnknownDigit);
}

TEST(Adjoint, InvertsGeneratorOnDualLattice) {
  for (const auto& name : {"scale4", "scale4x2"}) {
    const auto spec = builtin(name);
    for (const auto& s : dual_box(spec.K(), 3)) {
      const auto v = ExponentialVector{Complex(0.5, -2.0), s};
      for (const auto& l : spec.digits_L())
        for (const auto& l2 : spec.digits_L()) {
          const auto r = apply_adjoint(spec, l, apply_generator(spec, l2, v));
          if (l == l2) {
            EXPECT_EQ(r.coeff, v.coeff);
            EXPECT_EQ(r.freq, s);
          } else {
            EXPECT_TRUE(r.is_zero());
            EXPECT_TRUE(is_zero(r.freq));
          }
        }
    }
  }
}

TEST(WordFrequency, Examples) {
  const auto spec = builtin("scale4");
  EXPECT_EQ(word_frequency(spec, Word{}), qv({"0"}));
  EXPECT_EQ(word_frequency(spec, word({"1", "1"})), qv({"5"}));
  EXPECT_EQ(word_frequency(spec, word({"1", "0", "1"})), qv({"17"}));
}

TEST(WordFrequency, AgreesWithGeneratorFold) {
  const auto spec = builtin("scale4x2");
  for (const auto& w : all_words(spec, 3)) {
    auto v = ExponentialVector::unit(qv({"0", "0"}));
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) v = apply_generator(spec, *it, v);
    EXPECT_EQ(v.freq, word_frequency(spec, w));
  }
}

TEST(Words, Counts) {
  EXPECT_EQ(all_words(builtin("scale4"), 4).size(), 30u);
  EXPECT_EQ(all_words(builtin("scale4x2"), 2).size(), 20u);
  EXPECT_EQ(all_words(builtin("scale4"), 1).front().letters.size(), 1u);
}

TEST(Gram, WordsUpToFourAreOrthonormal) {
  // Words with trailing zero letters repeat frequencies; keep one vector per frequency.
  const auto spec = builtin("scale4");
  const FourierTransform ft(spec);
  std::set<RatVec> seen{qv({"0"})};
  for (const auto& w : all_words(spec, 4)) seen.insert(word_frequency(spec, w));
  const std::vector<RatVec> freqs(seen.begin(), seen.end());
  EXPECT_EQ(freqs.size(), 16u);
  for (std::size_t i = 0; i < freqs.size(); ++i)
    for (std::size_t j = 0; j < freqs.size(); ++j) {
      const Complex g = inner_product(ft, ExponentialVector::unit(freqs[i]), ExponentialVector::unit(freqs[j]));
      EXPECT_NEAR(std::abs(g - Complex(i == j ? 1.0 : 0.0, 0.0)), 0.0, 1e-8);
    }
}

TEST(Relations, Scale4Box32) {
  TransformSettings settings;
  settings.product_depth = 40;
  const auto r = relation_residuals(builtin("scale4"), 32, settings);
  EXPECT_EQ(r.samples, 65u);
  EXPECT_LT(r.isometry, 1e-10);
  EXPECT_EQ(r.range_orthogonality, 0.0);
  EXPECT_EQ(r.range_exact_zeros, r.range_terms);
  EXPECT_LT(r.completeness, 1e-10);
  EXPECT_FALSE(r.degenerate);
}

TEST(Relations, MiddleThirdCompleteness) {
  const auto r = relation_residuals(middle_third_document(Rational(1)).to_spec(), 4);
  // |B(0) + B(-1) - 1| = |1 + e^{-i4π/3}| / 2
  EXPECT_NEAR(r.completeness, std::abs(1.0 + std::polar(1.0, -4.0 * std::numbers::pi / 3.0)) / 2.0, 1e-12);
  EXPECT_GT(r.completeness, 0.4);
}

TEST(Relations, DegenerateAllZero) {
  const auto r = relation_residuals(builtin("degenerate"), 8);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.isometry, 0.0);
  EXPECT_EQ(r.range_terms, 0u);
  EXPECT_EQ(r.completeness, 0.0);
}

TEST(State, Values) {
  const auto spec = builtin("scale4");
  const FourierTransform ft(spec);
  EXPECT_NEAR(std::abs(state_eval(ft, Word{}, Word{}) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(state_eval(ft, word({"0"}), Word{}) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(state_eval(ft, word({"0"}), word({"0"})) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(state_eval(ft, word({"1"}), Word{})), 0.0, 1e-12);
  EXPECT_EQ(state_eval(spec, word({"1"}), Word{}), Complex(0.0, 0.0));
}

TEST(State, PositivityOnShortWords) {
  for (const auto& name : {"scale4", "scale4x2"}) {
    const FourierTransform ft(builtin(name));
    for (const auto& w : all_words(ft.spec(), 3)) {
      const Complex v = state_eval(ft, w, w);
      EXPECT_GE(v.real(), 0.0);
      EXPECT_LE(v.real(), 1.0 + 1e-9);
      EXPECT_NEAR(v.imag(), 0.0, 1e-12);
    }
  }
}

TEST(Classify, Scale4SelfTestConsistent) {
  const auto spec = builtin("scale4");
  const auto r = classify_consistency(MeasureSource::from_spec(spec, 12), spec.K(), spec.Gamma(), spec.digits_L());
  EXPECT_TRUE(r.consistent) << (r.failing.empty() ? "" : r.failing.front());
  ASSERT_TRUE(r.completeness.has_value());
  EXPECT_LT(*r.completeness, 1e-12);
}

TEST(Classify, MiddleThirdInconsistent) {
  const auto spec = middle_third_document(Rational(1)).to_spec();
  const auto r = classify_consistency(MeasureSource::from_spec(spec, 12), spec.K(), spec.Gamma(), spec.digits_L());
  EXPECT_FALSE(r.consistent);
  EXPECT_GT(r.completeness.value_or(0.0), 0.4);
  auto has = [&](const std::string& name) { return std::find(r.failing.begin(), r.failing.end(), name) != r.failing.end(); };
  EXPECT_TRUE(has("completeness"));
  EXPECT_TRUE(has("range_orthogonality"));
}

TEST(Classify, MismatchedExpansionInconsistent) {
  // scale4 measure tested against Γ = Z/5, i.e. E = [5].
  const auto spec = builtin("scale4");
  const auto source = MeasureSource::from_spec(spec, 12);
  const auto r = classify_consistency(source, spec.K(), Lattice::scaled(1, q("1/5")), spec.digits_L());
  EXPECT_FALSE(r.consistent);
  EXPECT_GT(r.isometry, 0.1);
  // μ̂(5) and μ̂(1) both vanish; u = 2 is where the isometry mismatch shows.
  const Complex at10 = integrate_exponential(source.measure, RealVec{10.0});
  const Complex at2 = integrate_exponential(source.measure, RealVec{2.0});
  EXPECT_GT(std::abs(at10 - at2), 0.1);
}

TEST(Classify, ExternalMeasureWithoutDigits) {
  const auto spec = builtin("scale4");
  const auto source = MeasureSource::external("points", refine_measure(build_ifs(spec), 10));
  const auto r = classify_consistency(source, spec.K(), spec.Gamma(), spec.digits_L());
  EXPECT_FALSE(r.consistent);
  EXPECT_FALSE(r.completeness.has_value());
}

TEST(Classify, NotASublattice) {
  const auto spec = builtin("scale4");
  EXPECT_THROW(classify_consistency(MeasureSource::from_spec(spec, 4), spec.K(), Lattice::scaled(1, q("2/3")),
                                 spec.digits_L()),
               NotASublattice);
}

TEST(DualBox, CountsAndMembership) {
  const auto spec = builtin("scale4x2");
  const auto pts = dual_box(spec.K(), 2);
  EXPECT_EQ(pts.size(), 25u);
  for (const auto& p : pts) EXPECT_TRUE(dual_lattice(spec.K()).contains(p));
}
