#include <gtest/gtest.h>

#include <random>

#include "mvtk/centralizer.hpp"

using namespace mvtk;

TEST(SolveNx, TwoByTwoAndSymbolic) {
  auto n = solve_nx({Rational(3), Rational(-3)});
  EXPECT_EQ(n(0, 1), Rational(-1, 6));
  auto s = solve_nx_symbolic(2);
  EXPECT_EQ(s(0, 1), dbar_i(2, {1}));
  auto s3 = solve_nx_symbolic(3);
  EXPECT_EQ(s3(0, 2), dbar_i(3, {1, 2}));
  EXPECT_THROW(solve_nx({Rational(1), Rational(1)}), std::domain_error);
}

TEST(SolveNx, DefiningIdentityRandom) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    int m = 2 + trial % 5;
    auto x = random_regular(rng, m);
    auto d = nx_defect(x, solve_nx(x));
    EXPECT_EQ(d, QMatrix(m, m, Rational(0)));
  }
}

TEST(Pairing, SL3Calibration) {
  auto R = coord_ring(3);
  auto x = parse_poly("n12", R), y = parse_poly("n23", R), z = parse_poly("n13", R);
  EXPECT_EQ(pair_word(3, {1}, x), 1);
  EXPECT_EQ(pair_word(3, {1, 2}, z), 1);
  EXPECT_EQ(pair_word(3, {2, 1}, z), 0);
  EXPECT_EQ(pair_word(3, {}, MultiPoly::constant(R, 1)), 1);
  // e_2 = d/dy + x d/dz, e_1 = d/dx on C[x,y,z]: the last letter acts first, then evaluate at 0
  auto apply = [&](int letter, const MultiPoly& f) {
    MultiPoly out(R);
    for (auto& t : f.terms()) {
      auto deriv = [&](std::size_t v) {
        if (!t.mono.exp[v]) return MultiPoly(R);
        Monomial mo = t.mono;
        --mo.exp[v], --mo.deg;
        return MultiPoly::monomial(R, mo, t.coef * t.mono.exp[v]);
      };
      if (letter == 1)
        out += deriv(0);
      else
        out += deriv(2) + x * deriv(1);
    }
    return out;
  };
  for (auto& f : {x * y, z * x, z - x * y, x * x * y, z * y}) {
    auto w = coord_weight(3, f);
    for (auto& s : sequences(w)) {
      MultiPoly g = f;
      for (auto it = s.rbegin(); it != s.rend(); ++it) g = apply(*it, g);
      EXPECT_EQ(pair_word(3, s, f), g.constant_term()) << f << " " << to_string(s);
    }
  }
}

TEST(Pairing, ShuffleCompatibility) {
  auto R = coord_ring(3);
  std::vector<MultiPoly> basis{parse_poly("n12", R), parse_poly("n23", R), parse_poly("n13", R),
                               parse_poly("n12*n23 - n13", R)};
  for (auto& f : basis)
    for (auto& g : basis) {
      auto fg = f * g;
      for (auto& s : sequences(coord_weight(3, fg))) {
        Rational rhs = 0;
        for (auto& j : sequences(coord_weight(3, f)))
          for (auto& k : sequences(coord_weight(3, g)))
            for (auto& sh : shuffles(j, k))
              if (sh == s) rhs += pair_word(3, j, f) * pair_word(3, k, g);
        EXPECT_EQ(pair_word(3, s, fg), rhs);
      }
    }
}

TEST(ExpanCh, Examples) {
  auto R3 = coord_ring(3);
  EXPECT_EQ(dbar_of_function(3, MultiPoly::constant(R3, 1)), RatFunc(3, 1));
  EXPECT_EQ(dbar_of_function(2, parse_poly("n12", coord_ring(2))), dbar_i(2, {1}));
  auto z = dbar_of_function(3, parse_poly("n13", R3));
  auto R = alpha_ring(3);
  EXPECT_EQ(z, RatFunc::inverse(parse_poly("alpha1+alpha2", R)) * RatFunc::inverse(parse_poly("alpha2", R)));
  // x = (3,1,-4): alpha = (2,5)
  EXPECT_EQ(z.evaluate({2, 5}), Rational(1, 35));
  EXPECT_EQ(evaluate_coord(parse_poly("n13", R3), solve_nx({3, 1, -4})), Rational(1, 35));
  EXPECT_THROW(dbar_of_function(3, parse_poly("n12 + n23", R3)), std::invalid_argument);
}

TEST(ExpanCh, AgreementOnMonomials) {
  std::mt19937 rng(4);
  for (int m = 2; m <= 4; ++m) {
    std::vector<std::vector<Rational>> pts;
    for (int k = 0; k < 20; ++k) pts.push_back(random_regular(rng, m));
    for (auto& f : coord_monomials(m, 4)) {
      auto d = dbar_of_function(m, f);
      EXPECT_EQ(d, dbar_direct(m, f)) << f;
      for (auto& x : pts) EXPECT_EQ(d.evaluate(alpha_values(x)), evaluate_coord(f, solve_nx(x))) << f;
    }
  }
}

TEST(ExpanCh, Multiplicativity) {
  auto R = coord_ring(4);
  std::vector<MultiPoly> fs{parse_poly("n12", R), parse_poly("n23*n34 - n24", R), parse_poly("n13", R),
                            parse_poly("n12*n24 - n14", R)};
  for (auto& f : fs)
    for (auto& g : fs) EXPECT_EQ(dbar_of_function(4, f * g), dbar_of_function(4, f) * dbar_of_function(4, g));
}

TEST(Psi, Examples) {
  std::vector<Rational> x{3, 1, -4};
  auto id = psi_eval(x, {1, 1, 1});
  EXPECT_EQ(id, QMatrix::identity(3, Rational(0), Rational(1)));
  auto R = coord_ring(3);
  auto psi = psi_eval(x, {2, 1, 1});
  for (auto& f : {parse_poly("n12", R), parse_poly("n23", R), parse_poly("n13", R), parse_poly("n12*n23", R)}) {
    auto ft = ft_of_function(3, f);
    EXPECT_EQ(evaluate_coord(f, psi), ft.evaluate(alpha_values(x), {2, 1, 1})) << f;
  }
}

TEST(Psi, GeomTFDRandom) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> tv(1, 9);
  for (int m = 2; m <= 4; ++m) {
    auto fs = coord_monomials(m, 3);
    for (int trial = 0; trial < 20; ++trial) {
      auto x = random_regular(rng, m);
      std::vector<Rational> t(m);
      for (auto& v : t) v = make_rational(tv(rng), tv(rng));
      auto psi = psi_eval(x, t);
      for (auto& f : fs) EXPECT_EQ(evaluate_coord(f, psi), ft_of_function(m, f).evaluate(alpha_values(x), t)) << f;
    }
  }
}

TEST(Weyl, Examples) {
  auto w = weyl_witness({1, -1}, {1});
  EXPECT_TRUE(w.y.is_lower_unitriangular(1));
  for (int i : {1, 2}) EXPECT_NO_THROW(weyl_witness({3, 1, -4}, {i}));
}

TEST(Weyl, RandomAndComposite) {
  std::mt19937 rng(6);
  for (int m = 2; m <= 4; ++m)
    for (int trial = 0; trial < 10; ++trial) {
      auto x = random_regular(rng, m);
      for (int i = 1; i < m; ++i) {
        auto w = weyl_witness(x, {i});
        // n_{s_i x} = y n_x sbar^{-1} t
        auto sinv = sbar(m, i) * sbar(m, i) * sbar(m, i);
        EXPECT_EQ(solve_nx(w.wx), w.y * solve_nx(x) * sinv * diag(w.t));
      }
    }
  // braid words for w0 in SL3, composed step by step
  std::vector<Rational> x{3, 1, -4};
  auto compose = [&](const std::vector<int>& word) {
    auto cur = x;
    auto y = QMatrix::identity(3, Rational(0), Rational(1));
    std::vector<Rational> t{1, 1, 1};
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      auto w = weyl_witness(cur, {*it});
      std::swap(t[*it - 1], t[*it]);
      for (int k = 0; k < 3; ++k) t[k] *= w.t[k];
      y = w.y * y;
      cur = w.wx;
    }
    return std::pair{y, t};
  };
  auto a = compose({1, 2, 1}), b = compose({2, 1, 2});
  auto direct = weyl_witness(x, {1, 2, 1});
  EXPECT_EQ(a.first, direct.y);
  EXPECT_EQ(a.second, direct.t);
  EXPECT_EQ(b.first, direct.y);
  EXPECT_EQ(b.second, direct.t);
}
