#include <gtest/gtest.h>

#include <random>

#include "mvtk/ideal.hpp"

using namespace mvtk;

namespace {

// Buchberger's criterion checked by plain division, independent of the engine.
bool s_pairs_reduce(const GroebnerBasis& gb) {
  const auto& ord = gb.order();
  auto& G = gb.polys();
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      auto& a = G[i].leading(ord);
      auto& b = G[j].leading(ord);
      auto l = lcm(a.mono, b.mono);
      auto s = MultiPoly::monomial(gb.ring(), a.mono.quotient_of(l), 1 / a.coef) * G[i] -
               MultiPoly::monomial(gb.ring(), b.mono.quotient_of(l), 1 / b.coef) * G[j];
      // naive division
      MultiPoly r = s;
      bool progress = true;
      while (!r.is_zero() && progress) {
        progress = false;
        for (auto& t : r.terms())
          for (auto& g : G) {
            auto& lg = g.leading(ord);
            if (lg.mono.divides(t.mono)) {
              r -= MultiPoly::monomial(gb.ring(), lg.mono.quotient_of(t.mono), t.coef / lg.coef) * g;
              progress = true;
              goto next;
            }
          }
      next:;
      }
      if (!r.is_zero()) return false;
    }
  return true;
}

}  // namespace

TEST(Poly, ParsePrintRoundTrip) {
  auto R = make_ring("a", 10);
  auto p = parse_poly("3*a1^2*a6 - 1/2*a2*a8 + a5 - 7", R);
  EXPECT_EQ(p.to_string(), "3*a1^2*a6 - 1/2*a2*a8 + a5 - 7");
  EXPECT_EQ(parse_poly(p.to_string(), R), p);
  EXPECT_EQ(parse_poly("(a1+a2)^2", R).to_string(), "a1^2 + 2*a1*a2 + a2^2");
  EXPECT_THROW(parse_poly("a1 + b", R), ParseError);
  EXPECT_THROW(parse_poly("a1 +", R), ParseError);
}

TEST(Poly, InferRingUsesNaturalOrder) {
  auto R = infer_ring({"a10*a2 - a1", "u"});
  EXPECT_EQ(R->names(), (std::vector<std::string>{"a1", "a2", "a10", "u"}));
}

TEST(Groebner, TwistedCubicLex) {
  auto R = make_ring({"x", "y", "z"});
  auto gb = groebner_basis({parse_poly("y - x^2", R), parse_poly("z - x^3", R)}, TermOrder::lex(3));
  EXPECT_TRUE(s_pairs_reduce(gb));
  EXPECT_TRUE(gb.contains(parse_poly("y^3 - z^2", R)));
  EXPECT_FALSE(gb.contains(parse_poly("y^2 - z", R)));
}

TEST(Groebner, UnitIdeal) {
  auto R = make_ring({"x", "y"});
  auto gb = groebner_basis({parse_poly("x*y - 1", R), parse_poly("x", R)});
  EXPECT_TRUE(gb.is_unit());
}

TEST(Groebner, RandomSystemsSatisfyCriterion) {
  auto R = make_ring({"x", "y", "z", "w"});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-3, 3), e(0, 1);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<MultiPoly> gens;
    for (int g = 0; g < 3; ++g) {
      std::vector<Term> ts;
      for (int k = 0; k < 3; ++k) {
        Monomial m;
        for (int v = 0; v < 4; ++v) m.exp[v] = e(rng), m.deg += m.exp[v];
        ts.push_back({m, c(rng)});
      }
      gens.push_back(MultiPoly::from_terms(R, ts));
    }
    for (auto ord : {TermOrder::grevlex(4), TermOrder::lex(4), TermOrder::elimination(4, 2)}) {
      auto gb = groebner_basis(gens, ord);
      EXPECT_TRUE(s_pairs_reduce(gb));
      EXPECT_TRUE(gb.contains_all(gens));
    }
  }
}

TEST(Ideal, SaturationMethodsAgree) {
  auto R = make_ring({"x", "y", "z"});
  std::vector<MultiPoly> I{parse_poly("x^2*y - x*z^2", R), parse_poly("x*y^2 - y*z^2", R),
                           parse_poly("x^3*z", R)};
  auto f = parse_poly("x", R);
  auto a = groebner_basis(saturate(I, f, SaturationMethod::Elimination));
  auto b = groebner_basis(saturate(I, f, SaturationMethod::IteratedQuotient));
  auto c = groebner_basis(saturate(I, f, SaturationMethod::Bayer));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_TRUE(a.contains(parse_poly("y", R)));
  EXPECT_TRUE(a.contains(parse_poly("z", R)));
  EXPECT_FALSE(a.contains(f));
  auto g = parse_poly("x + y", R);
  auto d = groebner_basis(saturate({parse_poly("(x+y)*z", R), parse_poly("(x+y)^2*y", R)}, g));
  EXPECT_TRUE(d.contains(parse_poly("z", R)));
  EXPECT_TRUE(d.contains(parse_poly("y", R)));
  auto d2 = groebner_basis(saturate({parse_poly("(x+y)*z", R), parse_poly("(x+y)^2*y", R)}, g,
                                    SaturationMethod::Bayer));
  EXPECT_EQ(d, d2);
}

TEST(Ideal, EliminationGivesImplicitEquation) {
  auto R = make_ring({"t", "x", "y"});
  auto out = eliminate({parse_poly("x - t^2", R), parse_poly("y - t^3", R)}, {"t"});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].to_string(), "x^3 - y^2");
}

TEST(MonomialIdeal, MultidegreeRoutesAgree) {
  auto A = make_ring("w", 5);
  std::vector<MultiPoly> w;
  for (int i = 0; i < 5; ++i) w.push_back(MultiPoly::variable(A, i));
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(0, 2), n(2, 5);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Monomial> gens;
    int k = n(rng);
    for (int g = 0; g < k; ++g) {
      Monomial m;
      for (int v = 0; v < 5; ++v) m.exp[v] = e(rng), m.deg += m.exp[v];
      if (m.deg) gens.push_back(m);
    }
    MonomialIdeal J(5, gens);
    EXPECT_EQ(multidegree(J, w), multidegree_recursive(J, w)) << trial;
  }
  MonomialIdeal sq(5, {Monomial::variable(0, 2)});
  EXPECT_EQ(multidegree(sq, w).to_string(), "2*w1");
}

TEST(MonomialIdeal, HilbertOfHypersurface) {
  MonomialIdeal J(3, {Monomial::variable(0) * Monomial::variable(1)});
  auto h = hilbert_function(J, 4);
  // k[x,y,z]/(xy): 1, 3, 5, 7, 9
  EXPECT_EQ(h, (std::vector<std::size_t>{1, 3, 5, 7, 9}));
  EXPECT_EQ(J.dim(), 2u);
}
