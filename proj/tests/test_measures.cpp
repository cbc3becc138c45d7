#include <gtest/gtest.h>

#include <random>

#include "mvtk/measures.hpp"

using namespace mvtk;

namespace {

// f_p(a_1..a_p) in the ring with variables alpha1..alpha_n, a_k = variable idx[k]
RatFunc f_chain(int n, const std::vector<int>& idx) {
  RingPtr R = alpha_ring(n + 1);
  RatFunc r(n + 1, 1);
  MultiPoly run(R);
  for (int k : idx) {
    run += MultiPoly::variable(R, k);
    r *= RatFunc::inverse(run);
  }
  return r;
}

Rational f_chain_value(const std::vector<Rational>& a) {
  Rational r = 1, run = 0;
  for (auto& x : a) r /= (run += x);
  return r;
}

}  // namespace

TEST(Dbar, Examples) {
  auto R = alpha_ring(3);
  EXPECT_EQ(dbar_i(3, {1}), -RatFunc::inverse(parse_poly("alpha1", R)));
  auto d12 = dbar_i(3, {1, 2});
  EXPECT_EQ(d12, RatFunc::inverse(parse_poly("alpha1+alpha2", R)) * RatFunc::inverse(parse_poly("alpha2", R)));
  EXPECT_EQ(d12.degree(), -2);
  EXPECT_EQ(dbar_i(3, {1}) * dbar_i(3, {2}), dbar_i(3, {1, 2}) + dbar_i(3, {2, 1}));
}

TEST(RatFunc, CancellationIsCanonical) {
  auto R = alpha_ring(3);
  RatFunc a(parse_poly("alpha1^2 - alpha2^2", R));
  auto q = a * RatFunc::inverse(parse_poly("-2*alpha1 - 2*alpha2", R));
  EXPECT_TRUE(q.is_polynomial());
  EXPECT_EQ(q.numerator(), parse_poly("-1/2*alpha1 + 1/2*alpha2", R));
}

TEST(RatFnId, SymbolicAndNumeric) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(1, 40);
  for (int p = 1; p <= 4; ++p)
    for (int q = 1; p + q <= 5; ++q) {
      int n = p + q;
      std::vector<int> first(p), second(q);
      std::iota(first.begin(), first.end(), 0);
      std::iota(second.begin(), second.end(), p);
      auto lhs = f_chain(n, first) * f_chain(n, second);
      RatFunc rhs(n + 1);
      for (auto& w : shuffles(first, second)) rhs += f_chain(n, w);
      EXPECT_EQ(lhs, rhs) << p << "," << q;
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<Rational> a(n);
        for (auto& x : a) x = make_rational(num(rng), num(rng));
        Rational l = f_chain_value({a.begin(), a.begin() + p}) * f_chain_value({a.begin() + p, a.end()});
        Rational r = 0;
        for (auto& w : shuffles(first, second)) {
          std::vector<Rational> b;
          for (int k : w) b.push_back(a[k]);
          r += f_chain_value(b);
        }
        EXPECT_EQ(l, r);
      }
    }
}

TEST(FT, Examples) {
  auto one = ft_i(3, {});
  EXPECT_EQ(one, ExpSum::one(3));
  auto f1 = ft_i(2, {1});
  auto a1 = RatFunc::inverse(parse_poly("alpha1", alpha_ring(2)));
  EXPECT_EQ(f1.coefficient(Weight::zero(2)), a1);
  EXPECT_EQ(f1.coefficient(Weight::alpha(2, 1)), -a1);
  EXPECT_EQ(ExpSum::one(3) * ft_i(3, {1, 2}), ft_i(3, {1, 2}));
}

TEST(FT, TopCoefficientIsDbar) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> len(1, 5), let(1, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Sequence s(len(rng));
    for (auto& x : s) x = let(rng);
    EXPECT_EQ(ft_i(4, s).coefficient(sequence_weight(4, s)), dbar_i(4, s)) << to_string(s);
  }
}

TEST(FT, ShuffleIdentityA3) {
  std::vector<Sequence> words{{}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<Sequence> next;
    for (auto& w : words)
      if (int(w.size()) == len - 1)
        for (int a = 1; a <= 3; ++a) {
          auto v = w;
          v.push_back(a);
          next.push_back(v);
        }
    words.insert(words.end(), next.begin(), next.end());
  }
  std::map<Sequence, ExpSum> ft;
  for (auto& w : words) ft.emplace(w, ft_i(4, w));
  std::size_t checked = 0;
  for (auto& j : words)
    for (auto& k : words) {
      ExpSum rhs(4);
      for (auto& s : shuffles(j, k)) {
        auto it = ft.find(s);
        rhs += it != ft.end() ? it->second : ft_i(4, s);
      }
      EXPECT_EQ(ft.at(j) * ft.at(k), rhs) << to_string(j) << " " << to_string(k);
      ++checked;
    }
  EXPECT_EQ(checked, 40u * 40u);
}

TEST(Measure, FromCoefficients) {
  EXPECT_EQ(measure_dbar(3, {{{}, 1}}, Weight::zero(3)), RatFunc(3, 1));
  EXPECT_EQ(measure_dbar(2, {{{1}, 1}}, Weight::alpha(2, 1)), dbar_i(2, {1}));
  EXPECT_THROW(measure_dbar(3, {{{2}, 1}}, Weight::alpha(3, 1)), std::invalid_argument);
  // trie summation agrees with the naive sum
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> c(-3, 3);
  auto nu = Weight::from_alpha(4, {1, 2, 1});
  SeqCoeffs co;
  for (auto& s : sequences(nu)) co[s] = c(rng);
  EXPECT_EQ(measure_dbar(4, co, nu), measure_dbar_naive(4, co, nu));
}

TEST(Measure, ShuffleProductBothRepresentations) {
  SeqCoeffs a{{{1}, 1}}, b{{{2, 1}, 2}, {{1, 2}, -1}};
  SeqCoeffs prod;
  for (auto& [j, cj] : a)
    for (auto& [k, ck] : b)
      for (auto& s : shuffles(j, k)) prod[s] += cj * ck;
  auto na = Weight::alpha(3, 1), nb = Weight::from_alpha(3, {1, 1});
  EXPECT_EQ(measure_ft(3, prod, na + nb), measure_ft(3, a, na) * measure_ft(3, b, nb));
  EXPECT_EQ(measure_dbar(3, prod, na + nb), measure_dbar(3, a, na) * measure_dbar(3, b, nb));
  auto sum = measure_ft(3, prod, na + nb);
  for (auto& [beta, r] : sum.terms()) {
    EXPECT_TRUE(beta.is_nonneg_root_combo());
    EXPECT_TRUE((na + nb - beta).is_nonneg_root_combo());
  }
}

TEST(Measure, TotalMass) {
  std::vector<Rational> dir{3, 5, 7};
  for (Sequence s : {Sequence{1}, Sequence{1, 2}, Sequence{2, 1, 3}, Sequence{1, 2, 1, 3}, Sequence{3, 2, 1, 2, 3}}) {
    Rational fact = 1;
    for (std::size_t k = 2; k <= s.size(); ++k) fact *= k;
    EXPECT_EQ(ft_limit_along(ft_i(4, s), dir), 1 / fact) << to_string(s);
  }
}
