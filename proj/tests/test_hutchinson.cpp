#include <random>

#include <gtest/gtest.h>

#include "fracspec/errors.hpp"
#include "fracspec/hutchinson.hpp"
#include "fracspec/spec_io.hpp"
#include "helpers.hpp"

using namespace fracspec;
using fracspec::test::builtin;
using fracspec::test::cis2pi;
using fracspec::test::q;
using fracspec::test::qv;

TEST(BuildIfs, Scale4Maps) {
  const auto ifs = build_ifs(builtin("scale4"));
  ASSERT_EQ(ifs.N(), 2u);
  EXPECT_EQ(ifs.apply(0, qv({"1"})), qv({"1/4"}));
  EXPECT_EQ(ifs.apply(1, qv({"1"})), qv({"3/4"}));
}

TEST(BuildIfs, DegenerateSingleMap) {
  const auto ifs = build_ifs(builtin("degenerate"));
  EXPECT_EQ(ifs.N(), 1u);
  EXPECT_EQ(ifs.apply(0, qv({"0"})), qv({"0"}));
  EXPECT_EQ(ifs.apply(0, qv({"1"})), qv({"1/4"}));
}

TEST(BuildIfs, ProductHasFourMaps) {
  const auto ifs = build_ifs(builtin("scale4x2"));
  EXPECT_EQ(ifs.N(), 4u);
  EXPECT_EQ(ifs.digits.front(), qv({"0", "0"}));
  for (std::size_t b = 0; b < 4; ++b) EXPECT_EQ(ifs.apply(b, qv({"4", "8"})), add(qv({"1", "2"}), ifs.digits[b]));
}

TEST(BuildIfs, NonExpansiveRejected) {
  const SimpleFactorSpec flat("flat", Lattice::integer(1), Lattice::integer(1), Lattice::integer(1), {qv({"0"})},
                              {qv({"0"})});
  EXPECT_THROW(build_ifs(flat), NotExpansive);
}

TEST(Refine, Scale4Depths) {
  const auto ifs = build_ifs(builtin("scale4"));
  const auto m0 = refine_measure(ifs, 0);
  EXPECT_EQ(m0.size(), 1u);
  EXPECT_EQ(m0.weight(), 1.0);
  EXPECT_EQ(m0.point(0), RealVec{0.0});

  const auto m1 = refine_measure(ifs, 1);
  EXPECT_EQ(m1.points(), (std::vector<double>{0.0, 0.5}));
  EXPECT_EQ(m1.weight(), 0.5);

  auto m2 = refine_measure(ifs, 2).points();
  std::sort(m2.begin(), m2.end());
  EXPECT_EQ(m2, (std::vector<double>{0.0, 0.125, 0.5, 0.625}));
}

TEST(Refine, AtomsNestAndMatchExactWords) {
  const auto ifs = build_ifs(builtin("scale4x2"));
  const auto m4 = refine_measure(ifs, 4);
  const auto m5 = refine_measure(ifs, 5);
  for (std::size_t i = 0; i < m4.size(); ++i) EXPECT_EQ(m4.point(i), m5.point(i));
  for (std::size_t i = 0; i < m5.size(); i += 37) EXPECT_EQ(to_real(exact_atom(ifs, m5.word(i))), m5.point(i));
}

TEST(Refine, AtomsInsideBoundingBall) {
  const auto ifs = build_ifs(builtin("scale4"));
  const double radius = ifs.attractor_radius();
  // max|b| · Σ 4^{-k} = 1/2 · 4/3.
  EXPECT_NEAR(radius, 2.0 / 3.0, 1e-15);
  const auto m = refine_measure(ifs, 10);
  for (double x : m.points()) EXPECT_LE(std::abs(x), radius + 1e-15);
}

TEST(Refine, BudgetEnforced) {
  const auto ifs = build_ifs(builtin("scale4"));
  RefineOptions tight;
  tight.atom_budget = 1000;
  EXPECT_THROW(refine_measure(ifs, 10, tight), DepthTooLarge);
  EXPECT_NO_THROW(refine_measure(ifs, 9, tight));
  EXPECT_THROW(refine_measure(ifs, -1), DepthTooLarge);
}

TEST(Integrate, Examples) {
  const auto ifs = build_ifs(builtin("scale4"));
  const auto m1 = refine_measure(ifs, 1);
  const auto m2 = refine_measure(ifs, 2);
  EXPECT_NEAR(std::abs(integrate_exponential(m2, RealVec{0.0}) - 1.0), 0.0, 1e-15);
  EXPECT_LT(std::abs(integrate_exponential(m2, RealVec{1.0})), 1e-15);
  EXPECT_LT(std::abs(integrate_exponential(m1, RealVec{2.0}) - 1.0), 1e-15);
}

TEST(Integrate, MatchesDirectSum) {
  const auto ifs = build_ifs(builtin("scale4x2"));
  const auto mu = refine_measure(ifs, 6);
  const RealVec t{0.37, -2.9};
  Complex direct(0.0, 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) direct += cis2pi(t[0] * mu.point(i)[0] + t[1] * mu.point(i)[1]);
  direct /= static_cast<double>(mu.size());
  EXPECT_LT(std::abs(integrate_exponential(mu, t) - direct), 1e-13);
  EXPECT_EQ(integrate_exponential(mu, t, true), integrate_exponential(mu, t, true));
}

TEST(Integrate, SelfSimilarityAtFiniteDepth) {
  for (const auto& name : {"scale4", "scale4x2"}) {
    const auto spec = builtin(name);
    const auto ifs = build_ifs(spec);
    const auto et_inv = spec.E_transpose_inverse().to_real();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-8.0, 8.0);
    for (int n = 1; n <= 8; ++n) {
      const auto mn = refine_measure(ifs, n);
      const auto mp = refine_measure(ifs, n - 1);
      RealVec t(spec.dim());
      for (auto& x : t) x = dist(rng);
      RealVec contracted(spec.dim(), 0.0);
      for (std::size_t i = 0; i < spec.dim(); ++i)
        for (std::size_t j = 0; j < spec.dim(); ++j) contracted[i] += et_inv[i][j] * t[j];
      Complex mask(0.0, 0.0);
      for (const auto& b : spec.digits_B()) {
        double phase = 0.0;
        for (std::size_t j = 0; j < spec.dim(); ++j) phase += to_double(b[j]) * t[j];
        mask += cis2pi(phase);
      }
      mask /= static_cast<double>(spec.N());
      EXPECT_LT(std::abs(integrate_exponential(mn, t) - mask * integrate_exponential(mp, contracted)), 1e-12);
    }
  }
}

TEST(Integrate, QuadratureConvergesGeometrically) {
  const auto ifs = build_ifs(builtin("scale4"));
  const double t = 3.3, diam = 2.0 / 3.0;
  for (int n = 2; n <= 10; ++n) {
    const Complex a = integrate_exponential(refine_measure(ifs, n), RealVec{t});
    const Complex b = integrate_exponential(refine_measure(ifs, n + 1), RealVec{t});
    EXPECT_LE(std::abs(a - b), 2.0 * std::numbers::pi * t * diam * std::pow(0.25, n) + 1e-14) << n;
  }
}

TEST(Measure, CsvExport) {
  std::ostringstream out;
  write_measure_csv(refine_measure(build_ifs(builtin("scale4")), 1), out);
  EXPECT_EQ(out.str(), "x1,weight\n0,0.5\n0.5,0.5\n");
}

TEST(Separation, Examples) {
  const auto spec = builtin("scale4");
  EXPECT_EQ(separation_witness(spec, RealVec{0.0}, RealVec{0.5}, 4), qv({"1"}));
  EXPECT_THROW(separation_witness(spec, RealVec{0.25}, RealVec{0.25}, 4), IdenticalPoints);
  EXPECT_EQ(separation_witness(spec, RealVec{0.0}, RealVec{1.0}, 4), std::nullopt);
}

TEST(Separation, SearchOrderByNormPositiveFirst) {
  const auto order = dual_search_order(builtin("scale4x2"), 1);
  ASSERT_EQ(order.size(), 8u);
  EXPECT_EQ(order[0], qv({"1", "0"}));
  EXPECT_EQ(order[1], qv({"0", "1"}));
  EXPECT_EQ(order[2], qv({"0", "-1"}));
  EXPECT_EQ(order[3], qv({"-1", "0"}));
  EXPECT_EQ(order[4], qv({"1", "1"}));
}

TEST(Separation, DepthSixAtomsAllSeparatedByOne) {
  const auto spec = builtin("scale4");
  const auto mu = refine_measure(build_ifs(spec), 6);
  const WitnessSearch search(spec, 4);
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = i + 1; j < mu.size(); ++j) ASSERT_EQ(search.find(mu.point(i), mu.point(j)), qv({"1"}));
}
