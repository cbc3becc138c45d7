#include <gtest/gtest.h>

#include <random>

#include "mvtk/roota.hpp"

using namespace mvtk;

namespace {

long binom(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Weight, CanonicalFormAndLinearForm) {
  Weight w({3, 1, 2});
  EXPECT_EQ(w.entries(), (std::vector<long>{1, -1, 0}));
  EXPECT_EQ(Weight({1, 1, 1, 1}), Weight::zero(4));
  EXPECT_TRUE(Weight({1, 1, 1, 1}).linear_form().is_zero());
  EXPECT_EQ(Weight::alpha(4, 2).linear_form().to_string(), "alpha2");
  EXPECT_EQ(Weight::root(5, 1, 4).linear_form().to_string(), "alpha1 + alpha2 + alpha3");
  EXPECT_EQ(Weight::epsilon(3, 1).to_string(), "[1,0,0]");
  EXPECT_EQ(Weight::from_alpha(5, {1, 2, 2, 1}).alpha_coords(), (std::vector<long>{1, 2, 2, 1}));
  EXPECT_FALSE(Weight::epsilon(3, 1).in_root_lattice());
}

TEST(Sequences, CountsAndOrder) {
  EXPECT_EQ(sequences(Weight::alpha(3, 1)), (std::vector<Sequence>{{1}}));
  EXPECT_EQ(sequences(Weight::from_alpha(3, {1, 1})), (std::vector<Sequence>{{1, 2}, {2, 1}}));
  auto s = sequences(Weight::from_alpha(5, {1, 2, 2, 1}));
  EXPECT_EQ(s.size(), 180u);
  // brute force: all words of length 6 over {1..4} with the right content
  std::size_t brute = 0;
  for (int code = 0; code < 4096; ++code) {
    int cnt[5] = {0, 0, 0, 0, 0};
    for (int k = 0, c = code; k < 6; ++k, c /= 4) ++cnt[c % 4 + 1];
    brute += cnt[1] == 1 && cnt[2] == 2 && cnt[3] == 2 && cnt[4] == 1;
  }
  EXPECT_EQ(s.size(), brute);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  EXPECT_THROW(sequences(-Weight::alpha(3, 1)), std::domain_error);
}

TEST(Shuffles, Examples) {
  EXPECT_EQ(shuffles({1}, {2}), (std::vector<Sequence>{{1, 2}, {2, 1}}));
  EXPECT_EQ(shuffles({1}, {}), (std::vector<Sequence>{{1}}));
  auto s = shuffles({1, 2}, {1});
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(std::count(s.begin(), s.end(), Sequence{1, 1, 2}), 2);
}

TEST(Shuffles, CardinalityAndWeight) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> len(0, 6), let(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    Sequence a(len(rng)), b(len(rng));
    if (a.size() + b.size() > 6) continue;
    for (auto& x : a) x = let(rng);
    for (auto& x : b) x = let(rng);
    auto sh = shuffles(a, b);
    EXPECT_EQ(long(sh.size()), binom(a.size() + b.size(), a.size()));
    for (auto& s : sh) EXPECT_EQ(sequence_weight(5, s), sequence_weight(5, a) + sequence_weight(5, b));
  }
}

TEST(PartialSums, Definitional) {
  auto p = partial_sums(3, {2, 1, 1});
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p[1], Weight::alpha(3, 2));
  EXPECT_EQ(p[3], Weight::from_alpha(3, {2, 1}));
  auto q = partial_sums(3, {1, 2, 1});
  EXPECT_EQ(q[2], Weight::from_alpha(3, {1, 1}));
  for (std::size_t k = 1; k < q.size(); ++k) EXPECT_EQ((q[k] - q[k - 1]).height(), 1);
}

TEST(PMu, Degrees) {
  EXPECT_EQ(p_mu({1, 1}).to_string(), "alpha1");
  auto R = alpha_ring(3);
  EXPECT_EQ(p_mu({1, 1, 1}), parse_poly("alpha1*(alpha1+alpha2)*alpha2", R));
  for (int m = 2; m <= 6; ++m) {
    std::vector<int> mu(m, 1);
    mu[0] = 2;
    long expect = 0;
    for (int i = 1; i <= m; ++i)
      for (int j = i + 1; j <= m; ++j) expect += mu[j - 1];
    EXPECT_EQ(long(p_mu(mu).total_degree()), expect);
  }
  // m=5: product of all ten positive roots, checked at a point
  std::vector<Rational> pt{2, 3, 5, 7};
  Rational prod = 1;
  for (auto [i, j] : positive_roots(5)) {
    Rational v = 0;
    for (int k = i; k < j; ++k) v += pt[k - 1];
    prod *= v;
  }
  EXPECT_EQ(p_mu({1, 1, 1, 1, 1}).evaluate(pt), prod);
}

TEST(Minuscule, ChainCounts) {
  using minuscule::chains;
  auto total = [](const std::map<Weight, std::size_t>& h) {
    std::size_t s = 0;
    for (auto& [w, c] : h) s += c;
    return s;
  };
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(total(chains(5, 2, {1, 2}, n)), 1u);
  EXPECT_EQ(total(chains(5, 2, {1, 3}, 1)), 2u);
  EXPECT_EQ(total(chains(5, 2, {1, 3}, 3)), 4u);
  // whole orbit of omega_2 in A_4 at n = 1: the ten 2-subsets
  EXPECT_EQ(total(chains(5, 2, {4, 5}, 1)), 10u);
}
