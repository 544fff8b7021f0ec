#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gaplab/scheme.hpp"
#include "oracles.hpp"

using namespace gaplab;

TEST(MechanicalWord, GoldenPrefix) {
  EXPECT_EQ(mechanical_word(CutProjectScheme::golden(), 13).letters, "ABAABABAABAAB");
}

TEST(MechanicalWord, EqualsSubstitutionFixedPoint) {
  const std::size_t n = 100000;
  const auto w = mechanical_word(CutProjectScheme::golden(), n).letters;
  EXPECT_EQ(w, substitution_word(n).letters);
  EXPECT_EQ(w, oracle::fibonacci_word(n));
}

TEST(MechanicalWord, RejectsRationalSlope) {
  auto s = CutProjectScheme::sturmian(0.5L);
  EXPECT_THROW(mechanical_word(s, 10), DegenerateScheme);
  s = CutProjectScheme::sturmian(0.5L + 1e-15L);
  EXPECT_THROW(mechanical_word(s, 10), DegenerateScheme);
  EXPECT_THROW(mechanical_word(CutProjectScheme::golden(), 0), InvalidArgument);
}

TEST(MechanicalWord, DensityAndBalance) {
  const auto a = golden_slope();
  const auto w = mechanical_word(CutProjectScheme::golden(), 100000).letters;
  std::size_t count = 0;
  for (std::size_t n = 1; n <= w.size(); ++n) {
    count += w[n - 1] == 'A';
    ASSERT_LE(std::fabs(static_cast<double>(count) / static_cast<double>(n) - static_cast<double>(a)),
              2.0 / static_cast<double>(n))
        << n;
  }
  const std::string sample = w.substr(0, 20000);
  for (std::size_t m = 1; m <= 100; ++m) {
    std::size_t c = static_cast<std::size_t>(std::count(sample.begin(), sample.begin() + static_cast<long>(m), 'A'));
    std::size_t lo = c, hi = c;
    for (std::size_t k = 1; k + m <= sample.size(); ++k) {
      c += (sample[k + m - 1] == 'A') - (sample[k - 1] == 'A');
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    ASSERT_LE(hi - lo, 1u) << "m = " << m;
  }
}

TEST(MechanicalWord, SilverPhaseAndWindowAreUsed) {
  auto s = CutProjectScheme::sturmian(silver_slope());
  const auto w = mechanical_word(s, 1000);
  EXPECT_NEAR(static_cast<double>(w.count('A')) / 1000.0, static_cast<double>(silver_slope()), 2e-3);
  s.window_start = 0;
  s.window_length = 0.25L;
  const auto w2 = mechanical_word(s, 1000);
  EXPECT_NEAR(static_cast<double>(w2.count('A')) / 1000.0, 0.25, 5e-3);
  EXPECT_NE(mechanical_word(s.with_phase(0.3L), 50).letters, mechanical_word(s, 50).letters);
}

TEST(SubstitutionWord, Prefixes) {
  EXPECT_EQ(substitution_word(5).letters, "ABAAB");
  EXPECT_EQ(substitution_word(1).letters, "A");
  EXPECT_EQ(substitution_word(13).letters, "ABAABABAABAAB");
  EXPECT_EQ(substitution_word(1).provenance, Provenance::substitution);
}

TEST(PeriodicWord, Repeats) {
  EXPECT_EQ(periodic_word("A", 4).letters, "AAAA");
  EXPECT_EQ(periodic_word("AB", 5).letters, "ABABA");
  EXPECT_EQ(periodic_word("AAB", 7).letters, "AABAABA");
  EXPECT_THROW(periodic_word("", 3), InvalidArgument);
  EXPECT_THROW(periodic_word("AC", 3), InvalidArgument);
}

TEST(Convergents, Golden) {
  const auto cs = convergents(golden_slope(), 7);
  const std::vector<std::pair<long, long>> expect = {{1, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 8}, {8, 13}, {13, 21}};
  ASSERT_EQ(cs.size(), expect.size());
  for (std::size_t k = 0; k < cs.size(); ++k) {
    EXPECT_EQ(cs[k].p, expect[k].first);
    EXPECT_EQ(cs[k].q, expect[k].second);
    EXPECT_EQ(cs[k].index, static_cast<int>(k + 1));
    EXPECT_EQ(std::gcd(cs[k].p, cs[k].q), 1);
  }
  EXPECT_LT(std::fabs(static_cast<double>(golden_slope()) - 8.0 / 13.0), 1.0 / 169.0);
}

TEST(Convergents, Silver) {
  const auto cs = convergents(silver_slope(), 4);
  const std::vector<std::pair<long, long>> expect = {{1, 2}, {2, 5}, {5, 12}, {12, 29}};
  for (std::size_t k = 0; k < cs.size(); ++k) {
    EXPECT_EQ(cs[k].p, expect[k].first);
    EXPECT_EQ(cs[k].q, expect[k].second);
  }
}

TEST(Convergents, DeepGoldenStaysAccurate) {
  const auto cs = convergents(golden_slope(), 30);
  const auto f = oracle::fibonacci(32);
  for (const auto& c : cs) {
    EXPECT_EQ(static_cast<std::uint64_t>(c.q), f[static_cast<std::size_t>(c.index + 1)]);
    const long double q = static_cast<long double>(c.q);
    EXPECT_LT(std::fabs(golden_slope() - c.value()), 1.0L / (q * q));
  }
}

TEST(Convergents, Errors) {
  EXPECT_THROW(convergents(0.375L, 5), DegenerateScheme);
  EXPECT_THROW(convergents(golden_slope(), 0), InvalidArgument);
  EXPECT_THROW(convergents(1.5L, 3), InvalidArgument);
  EXPECT_THROW(convergent_with_denominator(golden_slope(), 100), InvalidArgument);
  EXPECT_EQ(convergent_with_denominator(golden_slope(), 987).p, 610);
}

TEST(ApproximantWord, FibonacciCounts) {
  const auto f = oracle::fibonacci(25);
  for (int k = 5; k <= 22; ++k) {
    const auto c = convergent_with_denominator(golden_slope(), static_cast<std::int64_t>(f[static_cast<std::size_t>(k + 1)]));
    const auto w = approximant_word(CutProjectScheme::golden(), c);
    EXPECT_EQ(w.count('A'), f[static_cast<std::size_t>(k)]);
    EXPECT_EQ(w.count('B'), f[static_cast<std::size_t>(k - 1)]);
  }
  const auto c = convergent_with_denominator(golden_slope(), 987);
  EXPECT_EQ(approximant_word(CutProjectScheme::golden(), c).count('A'), 610u);
}

TEST(ApproximantWord, PeriodicWithPeriodQ) {
  const auto c = convergent_with_denominator(golden_slope(), 89);
  const auto w = approximant_word(CutProjectScheme::golden(), c, 89 * 4);
  for (std::size_t k = 89; k < w.size(); ++k) ASSERT_EQ(w.letters[k], w.letters[k - 89]);
  // Same letters as the quasicrystal away from the wrap.
  const auto m = mechanical_word(CutProjectScheme::golden(), 88);
  EXPECT_EQ(w.letters.substr(0, 88), m.letters);
}

TEST(PointSet, CumulativeSums) {
  const auto ps = points_from_word(QuasiWord{"AB", Provenance::periodic}, 0, 1.0, 2.0);
  EXPECT_EQ(ps.positions, (std::vector<double>{0, 1, 3}));
  EXPECT_DOUBLE_EQ(ps.min_spacing, 1.0);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  EXPECT_DOUBLE_EQ(points_from_word(substitution_word(5), 0, phi, 1).min_spacing, 1.0);
  EXPECT_THROW(points_from_word(substitution_word(5), 0, 0, 1), InvalidArgument);
  EXPECT_THROW(points_from_word(substitution_word(5), 0, 1, -1), InvalidArgument);
}

TEST(PointSet, UniformDiscreteness) {
  EXPECT_DOUBLE_EQ(uniform_discreteness(PointSet{{0, 1, 3}, 1}), 0.5);
  EXPECT_THROW(uniform_discreteness(PointSet{{0, 1, 1}, 0}), InvalidArgument);
  EXPECT_THROW(uniform_discreteness(PointSet{{0}, 0}), InvalidArgument);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const auto ps = points_from_word(mechanical_word(CutProjectScheme::golden(), 10000), 0, phi, 1);
  EXPECT_DOUBLE_EQ(uniform_discreteness(ps), 0.5);
  for (std::size_t i = 1; i < ps.positions.size(); ++i) {
    const double d = ps.positions[i] - ps.positions[i - 1];
    ASSERT_TRUE(std::fabs(d - phi) < 1e-9 || std::fabs(d - 1) < 1e-9);
  }
}

TEST(Scheme, Validation) {
  auto s = CutProjectScheme::golden();
  EXPECT_NO_THROW(s.validate());
  EXPECT_FALSE(s.degenerate());
  s.window_length = 0;
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = CutProjectScheme::golden();
  s.spacing_b = 0;
  EXPECT_THROW(s.validate(), InvalidArgument);
  EXPECT_TRUE(is_near_rational(3.0L / 7.0L));
  EXPECT_FALSE(is_near_rational(golden_slope()));
}
