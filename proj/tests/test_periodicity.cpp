#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "qperiod/periodicity.hpp"
#include "support.hpp"

using namespace qperiod;
using namespace testsupport;

namespace {

ExchangeMatrix somos4() {
  return ExchangeMatrix::from_rows({{0, -1, 2, -1}, {1, 0, -3, 2}, {-2, 3, 0, -1}, {1, -2, 1, 0}});
}

ExchangeMatrix somos5() {
  return ExchangeMatrix::from_rows({{0, -1, 1, 1, -1},
                                    {1, 0, -2, 0, 1},
                                    {-1, 2, 0, -2, 1},
                                    {-1, 0, 2, 0, -1},
                                    {1, -1, -1, 1, 0}});
}

// Period-one matrix from the one-step recursion b_ij = b_{i-1,j-1} + eps(m_{j-1}, m_{i-1}).
ExchangeMatrix period1_recursive(const std::vector<BigInt>& w) {
  const std::size_t N = w.size() + 1;
  ExchangeMatrix b(N, 0);
  for (std::size_t i = 2; i <= N; ++i) b.set(i, 1, w[i - 2]);
  for (std::size_t j = 2; j < N; ++j)
    for (std::size_t i = j + 1; i <= N; ++i)
      b.set(i, j, b(i - 1, j - 1) + epsilon(w[j - 2], w[i - 2]));
  return b;
}

// tau^k - (tau^T)^k, or tau^r when N = 2k.
Dense primitive_oracle(std::size_t N, std::size_t k) {
  Dense t = power(tau_matrix(N), static_cast<unsigned>(k));
  if (2 * k == N) return t;
  return sub(t, power(transpose(tau_matrix(N)), static_cast<unsigned>(k)));
}

std::size_t tau_stabiliser(const ExchangeMatrix& b) {
  for (std::size_t d = 1;; ++d)
    if (conjugate_tau(b, static_cast<std::int64_t>(d)) == b) return d;
}

ExchangeMatrix four_node_template(long m1, long m2, long m3) {
  const long p = m1 * m2 - m3;
  return ExchangeMatrix::from_rows({{0, -m1, -m2, -m3}, {m1, 0, p, -m2}, {m2, -p, 0, -m1}, {m3, m2, m1, 0}});
}

}  // namespace

TEST(Epsilon, Examples) {
  EXPECT_EQ(epsilon(BigInt(1), BigInt(-2)), 2);
  EXPECT_EQ(epsilon(BigInt(3), BigInt(5)), 0);
  EXPECT_EQ(epsilon(BigInt(0), BigInt(-5)), 0);
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> d(-50, 50);
  for (int i = 0; i < 100; ++i) {
    BigInt x(d(rng)), y(d(rng));
    EXPECT_EQ(epsilon(x, y), -epsilon(y, x));
    EXPECT_EQ(2 * epsilon(x, y), x * abs(y) - y * abs(x));
  }
}

TEST(Primitive, FourNodeArrows) {
  auto p = primitive(4, 1, 1);
  EXPECT_EQ(p, ExchangeMatrix::from_rows({{0, -1, 0, -1}, {1, 0, -1, 0}, {0, 1, 0, -1}, {1, 0, 1, 0}}));
  EXPECT_EQ(p(2, 1), 1);
  EXPECT_EQ(p(3, 2), 1);
  EXPECT_EQ(p(4, 3), 1);
  EXPECT_EQ(p(4, 1), 1);
}

TEST(Primitive, MatchesTauPowers) {
  for (std::size_t N = 2; N <= 10; ++N)
    for (std::size_t k = 1; 2 * k <= N; ++k)
      EXPECT_EQ(to_dense(primitive(N, 1, k)), primitive_oracle(N, k)) << N << "," << k;
}

TEST(Primitive, CopiesAreTauConjugates) {
  EXPECT_EQ(primitive(6, 3, 1, 2), conjugate_tau(primitive(6, 3, 1, 1), 1));
  EXPECT_EQ(primitive(6, 3, 2, 3), conjugate_tau(primitive(6, 3, 2, 1), 2));
}

TEST(Primitive, RejectsInvalidIds) {
  EXPECT_THROW(primitive(5, 2, 1), std::invalid_argument);
  EXPECT_THROW(primitive(6, 1, 4), std::invalid_argument);
  EXPECT_THROW(primitive(6, 2, 3), std::invalid_argument);  // 2m does not divide N
  EXPECT_NO_THROW(primitive(8, 2, 4));
  EXPECT_THROW(primitive(6, 2, 1, 3), std::invalid_argument);
}

TEST(Primitive, PeriodTwoSubdiagonalNonnegative) {
  for (std::size_t N = 2; N <= 10; N += 2)
    for (const auto& id : primitive_family(N, 2)) {
      auto p = primitive(id);
      for (std::size_t i = 1; i <= N; ++i)
        for (std::size_t j = 1; j < i; ++j) EXPECT_GE(p(i, j), 0) << id.label();
    }
}

TEST(Primitive, PeriodDetectionAgreesWithTauStabiliser) {
  for (std::size_t N = 2; N <= 8; ++N)
    for (std::size_t m = 1; m <= N; ++m) {
      if (N % m != 0) continue;
      for (const auto& id : primitive_family(N, m)) {
        auto p = primitive(id);
        auto period = detect_period(p);
        ASSERT_TRUE(period) << id.label();
        EXPECT_EQ(m % *period, 0u) << id.label();
        EXPECT_TRUE(has_period(p, m));
        EXPECT_EQ(*period, tau_stabiliser(p)) << id.label();
      }
    }
}

TEST(Primitive, HalfOrbitIsTauPower) {
  for (std::size_t r = 1; r <= 5; ++r)
    EXPECT_EQ(to_dense(primitive(2 * r, 1, r)), power(tau_matrix(2 * r), static_cast<unsigned>(r)));
}

TEST(Period, KnownQuivers) {
  EXPECT_EQ(detect_period(somos4()), 1u);
  EXPECT_EQ(detect_period(somos5()), 1u);
  EXPECT_EQ(detect_period(three_cycle_double()), 2u);
  EXPECT_EQ(detect_period(somos4(), 4), 1u);
  // A 3-cycle of triple arrows grows without bound under mutation.
  EXPECT_FALSE(detect_period(ExchangeMatrix::from_rows({{0, -3, 3}, {3, 0, -3}, {-3, 3, 0}}), 30));
  // Linear A3 has mu_3 mu_2 mu_1 Q = Q, i.e. period N.
  EXPECT_EQ(detect_period(ExchangeMatrix::from_rows({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}})), 3u);
}

TEST(Period1, SomosMatrices) {
  EXPECT_EQ(period1_from_weights({1, -2, 1}), somos4());
  EXPECT_EQ(period1_from_weights({1, -2, 1})(3, 2), 3);
  EXPECT_EQ(period1_from_weights({1, -1, -1, 1}), somos5());
  EXPECT_THROW(period1_from_weights({1, -2, 2}), std::invalid_argument);
}

TEST(Period1, NonnegativeWeightsAreSinkType) {
  std::mt19937 rng(11);
  for (std::size_t N = 2; N <= 10; ++N) {
    auto w = random_palindrome(rng, N, 0, 3);
    ExchangeMatrix sum(N, 0);
    for (std::size_t k = 1; 2 * k <= N; ++k) sum += w[k - 1] * primitive(N, 1, k);
    EXPECT_EQ(period1_from_weights(w), sum);
    EXPECT_EQ(mutate(sum, 1), conjugate_rho(sum, 1));
    EXPECT_EQ(conjugate_iota(sum), -sum);
  }
}

TEST(Period1Property, ClosedFormMatchesRecursionAndSymmetry) {
  std::mt19937 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t N = 2 + trial % 7;
    auto w = random_palindrome(rng, N, -3, 3);
    auto b = period1_from_weights(w);
    EXPECT_EQ(b, period1_recursive(w));
    EXPECT_EQ(mutate(b, 1), conjugate_rho(b, 1));
    for (std::size_t i = 1; i <= N; ++i)
      for (std::size_t j = 1; j <= N; ++j) EXPECT_EQ(b(i, j), b(N - j + 1, N - i + 1));
    auto d = decompose_period1(b);
    EXPECT_EQ(d.reconstruct(), b);
    EXPECT_EQ(period1_from_weights(std::vector<BigInt>(w)), b);
  }
}

TEST(Decompose, Examples) {
  EXPECT_EQ(decompose_period1(somos4()).to_string(), "B4(1):1 B4(2):-2 | B2(1):2");
  EXPECT_EQ(decompose_period1(somos5()).to_string(), "B5(1):1 B5(2):-1 | B3(1):1");
  auto z = decompose_period1(ExchangeMatrix(5, 0));
  EXPECT_EQ(z.to_string(), "0");
  for (const auto& lvl : z.levels)
    for (const auto& c : lvl) EXPECT_EQ(c, 0);
  EXPECT_THROW(decompose_period1(primitive(4, 2, 1)), NotPeriodOne);
  EXPECT_THROW(decompose_period1(three_cycle_double()), NotPeriodOne);
}

TEST(FourNode, Family) {
  auto h = period2_four_node(2, -2, 0);
  EXPECT_EQ(detect_period(h.b1), 2u);
  EXPECT_TRUE(h.strict);
  auto d = period2_four_node(1, -1, 1);
  EXPECT_EQ(detect_period(d.b1), 1u);
  EXPECT_FALSE(d.strict);
  auto e = period2_four_node(1, -2, 2);
  EXPECT_EQ(e.b1(2, 3), -4);
  EXPECT_EQ(e.b1(3, 2), 4);
  EXPECT_THROW(period2_four_node(0, -1, 1), std::invalid_argument);
  EXPECT_THROW(period2_four_node(1, 0, 1), std::invalid_argument);
  EXPECT_THROW(period2_four_node(1, -1, -1), std::invalid_argument);
  for (long m1 = 1; m1 <= 3; ++m1)
    for (long m2 = -3; m2 <= -1; ++m2)
      for (long m3 = 0; m3 <= 3; ++m3) {
        auto p = period2_four_node(m1, m2, m3);
        EXPECT_EQ(p.b2, mutate(p.b1, 1));
        EXPECT_EQ(p.b2, conjugate_rho(four_node_template(m3, m2, m1), 1));
        EXPECT_EQ(detect_period(p.b1), m1 == m3 ? 1u : 2u);
      }
}

TEST(FiveNode, Families) {
  auto pp = period2_five_node(FiveNodeCase::PP, {1, 2});
  EXPECT_EQ(pp.b1(2, 3), -3);
  auto pnp = period2_five_node(FiveNodeCase::PNP, {1});
  EXPECT_EQ(pnp.b1(1, 4), -2);
  auto pnn = period2_five_node(FiveNodeCase::PNN, {1, -2});
  EXPECT_EQ(detect_period(pnn.b1), 2u);
  EXPECT_EQ(pnn.b1(4, 1), -1);  // m3 = m2 - m1 m4
  EXPECT_EQ(pnn.b1(5, 1), -1);  // m4 = m1 (m2 + 1)
  // (2, -2) gives m3 = 2 > 0, outside the template's sign regime; the template then fails.
  EXPECT_THROW(period2_five_node(FiveNodeCase::PNN, {2, -2}), std::invalid_argument);
  EXPECT_THROW(period2_five_node(FiveNodeCase::PP, {2, 2}), std::invalid_argument);
  EXPECT_THROW(period2_five_node(FiveNodeCase::PNP, {0}), std::invalid_argument);
  EXPECT_THROW(period2_five_node(FiveNodeCase::PNN, {2, -1}), std::invalid_argument);

  std::vector<Period2Pair> all;
  for (long a = 1; a <= 4; ++a)
    for (long d = 1; d <= 4; ++d)
      if (a != d) all.push_back(period2_five_node(FiveNodeCase::PP, {a, d}));
  for (long a = 1; a <= 5; ++a) all.push_back(period2_five_node(FiveNodeCase::PNP, {a}));
  for (long m2 = -5; m2 <= -2; ++m2)
    for (long a = 1; a <= 4; ++a)
      if (a * a * (m2 + 1) > m2) all.push_back(period2_five_node(FiveNodeCase::PNN, {a, m2}));
  for (const auto& p : all) {
    EXPECT_EQ(p.b2, mutate(p.b1, 1)) << p.b1.to_string();
    EXPECT_EQ(detect_period(p.b1), 2u) << p.b1.to_string();
  }
}

TEST(FiveNode, PositiveDiscriminantSearch) {
  for (const auto& [m1, m2, m4] : pnn_positive_discriminant_search(12)) {
    long d = m2 - m1 * m4;
    EXPECT_GT(d, 0);
    EXPECT_EQ(d * (m2 + m4) + m1 * (m2 + 1) - m4, 0);
  }
  EXPECT_TRUE(pnn_positive_discriminant_search(12).empty());
}

TEST(Sigma, Presets) {
  auto dp3 = period2_sigma_family(SigmaFamilySpec::from({1, -1, 1, -1, 0}));
  EXPECT_EQ(detect_period(dp3.b), 2u);
  EXPECT_EQ(mutate(dp3.b, 1), conjugate_rho(dp3.b_sigma, 1));
  auto five = period2_sigma_family(SigmaFamilySpec::from({1, -1, -1, 2}));
  EXPECT_EQ(five.b, period2_five_node(FiveNodeCase::PP, {1, 2}).b1);
  EXPECT_THROW(period2_sigma_family(SigmaFamilySpec::from({1, -1, -1, 1})), std::invalid_argument);
  EXPECT_THROW(period2_sigma_family(SigmaFamilySpec::from({1, 0, 0, 2})), std::invalid_argument);
  EXPECT_THROW(period2_sigma_family(SigmaFamilySpec::from({1, 1, -1, 1, 0})), std::invalid_argument);
}

TEST(Sigma, FourNodeAgreesWithEq) {
  // N = 4 sigma family with m = (m1, m2, mbar1) is the four-node pair with m3 = mbar1.
  for (long m1 = 1; m1 <= 3; ++m1)
    for (long m2 = -3; m2 <= -1; ++m2)
      for (long m3 = 0; m3 <= 3; ++m3) {
        if (m1 == m3) continue;
        auto s = period2_sigma_family(SigmaFamilySpec::from({m1, m2, m3}));
        EXPECT_EQ(s.b, period2_four_node(m1, m2, m3).b1);
      }
}

TEST(SigmaProperty, RandomSpecsArePeriodTwo) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> nonneg(0, 3), any(-3, 3);
  int built = 0;
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t N = 4 + trial % 5;
    SigmaFamilySpec s;
    s.m.assign(N - 1, BigInt(0));
    for (std::size_t r = 2; 2 * r <= N; ++r) {
      BigInt v(r % 2 == 1 && r + 3 <= N ? nonneg(rng) : any(rng));
      s.m[r - 1] = v;
      s.m[N - r - 1] = v;
    }
    if (N % 2 == 1) s.m[1] = s.m[N - 3] = BigInt(-1);
    s.m.front() = BigInt(nonneg(rng));
    s.m.back() = BigInt(nonneg(rng));
    if (!s.problem().empty()) continue;
    auto p = period2_sigma_family(s);
    EXPECT_EQ(detect_period(p.b), 2u);
    EXPECT_EQ(mutate(p.b, 1), conjugate_rho(p.b_sigma, 1));
    ++built;
  }
  EXPECT_GT(built, 50);
}

TEST(SinkType, Decompositions) {
  auto b = 2 * primitive(6, 1, 1) + primitive(6, 1, 3);
  auto d = sink_type_decompose(b, 1);
  ASSERT_EQ(d.terms.size(), 3u);
  EXPECT_EQ(d.terms[0].coeff, 2);
  EXPECT_EQ(d.terms[1].coeff, 0);
  EXPECT_EQ(d.terms[2].coeff, 1);
  EXPECT_EQ(d.to_string(), "B6(1):2 B6(3):1");

  EXPECT_THROW(sink_type_decompose(somos4(), 1), NotSinkType);
  EXPECT_THROW(sink_type_decompose(-primitive(4, 1, 1), 1), NotSinkType);
  EXPECT_THROW(sink_type_decompose(primitive(6, 1, 1), 4), NotSinkType);

  auto deg = sink_type_decompose(primitive(6, 2, 1, 1) + primitive(6, 2, 1, 2), 2);
  EXPECT_TRUE(deg.degenerate);
  auto strict = sink_type_decompose(primitive(6, 2, 1, 1), 2);
  EXPECT_FALSE(strict.degenerate);
  // N = 6, m = 2: the k = 3 copy runs at period one and does not count toward strictness.
  auto fam = sink_type_family(6, 2);
  EXPECT_EQ(fam.back().m, 1u);
  EXPECT_TRUE(sink_type_decompose(primitive(6, 1, 3), 2).degenerate);
}

TEST(SinkType, Fold) {
  EXPECT_EQ(fold_to_period1(primitive(6, 2, 1, 1), 2), primitive(6, 1, 1));
  EXPECT_EQ(fold_to_period1(primitive(4, 2, 2, 1), 2), primitive(4, 1, 2));
  auto p1 = 3 * primitive(5, 1, 1) + primitive(5, 1, 2);
  EXPECT_EQ(fold_to_period1(p1, 1), p1);
  EXPECT_THROW(fold_to_period1(somos4(), 1), NotSinkType);
  for (std::size_t N = 2; N <= 9; ++N)
    for (std::size_t m = 2; m <= N; ++m) {
      if (N % m != 0) continue;
      for (const auto& id : sink_type_family(N, m)) {
        auto f = fold_to_period1(primitive(id) + primitive(sink_type_family(N, m).front()), m);
        EXPECT_EQ(detect_period(f), 1u) << id.label();
      }
    }
}

TEST(SinkTypeProperty, PeriodOneCombinations) {
  std::mt19937 rng(77);
  for (std::size_t N = 2; N <= 10; ++N)
    for (int trial = 0; trial < 5; ++trial) {
      ExchangeMatrix b(N, 0);
      std::uniform_int_distribution<int> d(0, 4);
      for (std::size_t k = 1; 2 * k <= N; ++k) b += BigInt(d(rng)) * primitive(N, 1, k);
      EXPECT_EQ(mutate(b, 1), conjugate_rho(b, 1));
      EXPECT_EQ(conjugate_iota(b), -b);
      EXPECT_NO_THROW(sink_type_decompose(b, 1));
    }
}
