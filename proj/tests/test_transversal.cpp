#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gaplab/transversal.hpp"
#include "oracles.hpp"

using namespace gaplab;

namespace {

const double kAlpha = oracle::golden();

// Cyclic frequency of w in a periodic word.
double cyclic_frequency(const std::string& period, const std::string& w) {
  std::size_t hits = 0;
  for (std::size_t k = 0; k < period.size(); ++k) {
    bool ok = true;
    for (std::size_t j = 0; j < w.size() && ok; ++j) ok = period[(k + j) % period.size()] == w[j];
    hits += ok;
  }
  return static_cast<double>(hits) / static_cast<double>(period.size());
}

}  // namespace

TEST(ArcSet, Basics) {
  const auto a = ArcSet::arc(0.9L, 0.3L);
  ASSERT_EQ(a.arcs().size(), 2u);
  EXPECT_NEAR(static_cast<double>(a.measure()), 0.3, 1e-15);
  EXPECT_TRUE(a.contains(0.95L));
  EXPECT_TRUE(a.contains(0.1L));
  EXPECT_FALSE(a.contains(0.25L));
  EXPECT_NEAR(static_cast<double>(a.complement().measure()), 0.7, 1e-15);
  EXPECT_TRUE(a.intersect(a.complement()).empty());
  EXPECT_NEAR(static_cast<double>(a.unite(a.complement()).measure()), 1.0, 1e-15);
  EXPECT_NEAR(static_cast<double>(a.shifted(0.5L).intersect(a).measure()), 0.0, 1e-15);
  EXPECT_EQ(ArcSet::full().arcs().size(), 1u);
  EXPECT_TRUE(ArcSet::arc(0.2L, 0).empty());
}

TEST(Cylinder, LetterMeasures) {
  const auto s = CutProjectScheme::golden();
  EXPECT_NEAR(cylinder(s, "A").measure, kAlpha, 1e-15);
  EXPECT_NEAR(cylinder(s, "B").measure, 1 - kAlpha, 1e-15);
  EXPECT_THROW(cylinder(s, "BB"), ForbiddenWord);
  EXPECT_FALSE(try_cylinder(s, "AAA").has_value());
  EXPECT_THROW(cylinder(s, ""), InvalidArgument);
  EXPECT_THROW(cylinder(s, "AC"), InvalidArgument);
}

TEST(Cylinder, SturmianComplexity) {
  const auto s = CutProjectScheme::golden();
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_EQ(occurring_cylinders(s, n).size(), n + 1);
}

TEST(Cylinder, KolmogorovConsistency) {
  const auto s = CutProjectScheme::golden();
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& c : occurring_cylinders(s, n)) {
      double sum = 0;
      for (char x : {'A', 'B'})
        if (auto e = try_cylinder(s, c.word + x)) sum += e->measure;
      EXPECT_NEAR(sum, c.measure, 1e-12) << c.word;
    }
}

TEST(Cylinder, MatchesLargeApproximantFrequencies) {
  const auto s = CutProjectScheme::golden();
  const auto c = convergent_with_denominator(golden_slope(), 10946);
  const std::string period = approximant_word(s, c).letters;
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& cyl : occurring_cylinders(s, n)) EXPECT_NEAR(cyl.measure, cyclic_frequency(period, cyl.word), 1e-3);
}

TEST(Cylinder, EmpiricalFrequency) {
  EXPECT_DOUBLE_EQ(empirical_frequency("ABAB", "AB"), 2.0 / 3.0);
  EXPECT_THROW(empirical_frequency("AB", "ABA"), InvalidArgument);
  EXPECT_THROW(empirical_frequency(CutProjectScheme::golden(), "ABAAB", 40), InvalidArgument);
  EXPECT_NEAR(empirical_frequency("ABA", 100000), cylinder(CutProjectScheme::golden(), "ABA").measure, 1e-3);
}

TEST(LabelModule, GoldenBasis) {
  const ModuleScan scan = cylinder_label_module(CutProjectScheme::golden(), 6);
  ASSERT_EQ(scan.module.rank(), 2u);
  EXPECT_NEAR(scan.module.basis[0], 1.0, 1e-12);
  EXPECT_NEAR(scan.module.basis[1], kAlpha, 1e-12);
  EXPECT_TRUE(scan.stabilized);
  EXPECT_EQ(scan.stabilization_depth, 2);
  for (std::size_t i = 0; i < scan.module.generators.size(); ++i)
    EXPECT_NEAR(scan.module.value(scan.module.certificates[i]), scan.module.generators[i], 1e-10);
}

TEST(LabelModule, SilverBasis) {
  const ModuleScan scan = cylinder_label_module(CutProjectScheme::sturmian(silver_slope()), 5);
  ASSERT_EQ(scan.module.rank(), 2u);
  EXPECT_NEAR(scan.module.basis[0], 1.0, 1e-12);
  // {1, s} and {1, 1 - s} span the same group
  const double s = std::sqrt(2.0) - 1, b = scan.module.basis[1];
  EXPECT_TRUE(std::fabs(b - s) < 1e-12 || std::fabs(b - (1 - s)) < 1e-12) << b;
}

TEST(LabelModule, OrderIndependent) {
  std::vector<double> g = {1.0, kAlpha, 1 - kAlpha, 2 * kAlpha - 1, 2 - 3 * kAlpha, 5 * kAlpha - 3};
  const auto ref = build_label_module(g);
  std::mt19937 rng(7);
  for (int t = 0; t < 10; ++t) {
    std::shuffle(g.begin(), g.end(), rng);
    const auto m = build_label_module(g);
    EXPECT_TRUE(m.same_basis(ref));
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(m.value(m.certificates[i]), g[i], 1e-10);
  }
}

TEST(LabelModule, RationalGenerators) {
  const std::vector<double> g = {1.0, 0.5, 1.0 / 3.0};
  const auto m = build_label_module(g);
  ASSERT_EQ(m.rank(), 1u);
  EXPECT_NEAR(m.basis[0], 1.0 / 6.0, 1e-15);
  EXPECT_EQ(m.certificates[0], std::vector<std::int64_t>{6});
  EXPECT_EQ(m.certificates[1], std::vector<std::int64_t>{3});
  EXPECT_EQ(m.certificates[2], std::vector<std::int64_t>{2});
}

TEST(LabelModule, Errors) {
  EXPECT_THROW(build_label_module(std::vector<double>{}), InvalidArgument);
  EXPECT_THROW(build_label_module(std::vector<double>{0.5, 0.25}), InvalidArgument);
  EXPECT_THROW(build_label_module(std::vector<double>{1.0, -0.1}), InvalidArgument);
  const std::vector<double> wild = {1.0, std::sqrt(2.0) - 1, std::sqrt(3.0) - 1, std::numbers::pi / 10, std::exp(1.0) / 10};
  EXPECT_THROW(build_label_module(wild), IrreducibleGenerator);
}

TEST(Membership, FibonacciGapValues) {
  const auto m = cylinder_label_module(CutProjectScheme::golden(), 6).module;
  const auto r = membership(377.0 / 987.0, m, 5.0 / 987.0);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->coefficients, (std::vector<std::int64_t>{1, -1}));
  EXPECT_LT(r->residual, 1e-5);
  EXPECT_FALSE(membership(0.5, m, 1e-6));
  EXPECT_THROW(membership(0.5, m, 0), InvalidArgument);
  const auto n = nearest_element(0.5, m);
  // brute force over |m|, |n| <= 50: -10 + 17a, or its mirror 11 - 17a
  EXPECT_TRUE(n.coefficients == (std::vector<std::int64_t>{-10, 17}) || n.coefficients == (std::vector<std::int64_t>{11, -17}));
  EXPECT_NEAR(n.residual, std::fabs(-10 + 17 * kAlpha - 0.5), 1e-12);
}

TEST(Membership, AgreesWithBruteForce) {
  const auto m = cylinder_label_module(CutProjectScheme::golden(), 4).module;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 200; ++t) {
    const double x = u(rng);
    const double tol = t % 2 ? 1e-3 : 5e-3;
    const auto got = membership(x, m, tol, 20);
    const auto want = oracle::golden_membership(x, kAlpha, tol, 20);
    ASSERT_EQ(got.has_value(), want.has_value()) << x;
    if (got) {
      EXPECT_EQ(got->coefficients[0], want->first) << x;
      EXPECT_EQ(got->coefficients[1], want->second) << x;
    }
  }
}

TEST(ProductModule, GoldenIsClosed) {
  const auto m = cylinder_label_module(CutProjectScheme::golden(), 4).module;
  EXPECT_NEAR(kAlpha * kAlpha, 1 - kAlpha, 1e-12);
  const auto p = product_module(m, m);
  EXPECT_TRUE(p.same_basis(m));
  EXPECT_EQ(p.generators.size(), 5u);
  EXPECT_EQ(p.certificates[3], (std::vector<std::int64_t>{1, -1}));
}

TEST(ProductModule, PeriodTwo) {
  const auto m = periodic_label_module("AB").module;
  ASSERT_EQ(m.rank(), 1u);
  EXPECT_DOUBLE_EQ(m.basis[0], 0.5);
  const auto p = product_module(m, m);
  ASSERT_EQ(p.rank(), 1u);
  EXPECT_DOUBLE_EQ(p.basis[0], 0.25);
}

TEST(PeriodicModule, MinimalPeriod) {
  EXPECT_NEAR(periodic_label_module("AAB").module.basis[0], 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(periodic_label_module("ABAB").module.basis[0], 0.5);
  EXPECT_DOUBLE_EQ(periodic_label_module("A").module.basis[0], 1.0);
  EXPECT_THROW(periodic_label_module(""), InvalidArgument);
}

TEST(LabelModule, JsonRoundTrip) {
  const auto m = cylinder_label_module(CutProjectScheme::golden(), 3).module;
  const auto back = label_module_from_json(to_json(m));
  EXPECT_TRUE(back.same_basis(m, 0));
  EXPECT_EQ(back.certificates, m.certificates);
  auto j = to_json(m);
  j["certificates"][1][0] = 7;
  EXPECT_THROW(label_module_from_json(j), InvalidArgument);
}
