#include <gtest/gtest.h>

#include "mvtk/fixtures.hpp"
#include "mvtk/preproj.hpp"

using namespace mvtk;

namespace {

const std::vector<long> kPrimes{2, 3, 5};

fixtures::ModuleFixture a4() { return fixtures::module(fixtures::load("a4_module", fixtures::default_dir())); }
fixtures::ModuleFixture a5(long a) {
  return fixtures::module(fixtures::load("a5_module", fixtures::default_dir()), {Rational(a)});
}

}  // namespace

TEST(Fp, SubspaceCountsAreGaussianBinomials) {
  fp::Field F(3);
  auto all = fp::all_subspaces(3, F);
  std::map<std::size_t, int> by_dim;
  for (auto& s : all) ++by_dim[s.size()];
  EXPECT_EQ(by_dim[0], 1);
  EXPECT_EQ(by_dim[1], 13);
  EXPECT_EQ(by_dim[2], 13);
  EXPECT_EQ(by_dim[3], 1);
}

TEST(Euler, InterpolatesPolynomialCounts) {
  // P^1: q + 1
  auto e = euler_interpolate({{2, 3}, {3, 4}, {5, 6}}, 1);
  EXPECT_EQ(e.chi, 2);
  // Gr(2,4): q^4 + q^3 + 2q^2 + q + 1
  std::vector<std::pair<long, Integer>> pts;
  for (long q : {2, 3, 5, 7, 11, 13}) pts.emplace_back(q, q * q * q * q + q * q * q + 2 * q * q + q + 1);
  EXPECT_EQ(euler_interpolate(pts, 4).chi, 6);
  EXPECT_THROW(euler_interpolate({{2, 3}, {3, 4}, {5, 7}}, 1), NotPolynomialCount);
  EXPECT_THROW(euler_interpolate({{2, 3}}, 1), std::invalid_argument);
}

TEST(Modules, SimpleAndInjective) {
  auto S = simple_module(5, 2);
  EXPECT_TRUE(S.satisfies_relation());
  EXPECT_EQ(compseries_chi(S, kPrimes).size(), 1u);
  for (int m = 3; m <= 6; ++m)
    for (int i = 1; i < m; ++i) {
      auto I = injective_module(m, i);
      EXPECT_EQ(I.total_dim(), i * (m - i));
      EXPECT_TRUE(I.satisfies_relation());
      auto soc = socle_dims(I);
      std::vector<int> want(m - 1, 0);
      want[i - 1] = 1;
      EXPECT_EQ(soc, want) << "m=" << m << " i=" << i;
    }
}

TEST(Modules, DirectSumRejectsRankMismatch) {
  EXPECT_THROW(direct_sum(simple_module(4, 1), simple_module(5, 1)), std::invalid_argument);
}

TEST(Modules, FixturesSatisfyRelation) {
  EXPECT_TRUE(a4().module.satisfies_relation());
  EXPECT_TRUE(a5(2).module.satisfies_relation());
  EXPECT_TRUE(a5(3).module.satisfies_relation());
}

TEST(Modules, A4SubmoduleChiPattern) {
  auto chi = submodule_chi(a4().module, kPrimes);
  auto rows = fixtures::load("a4_chains", fixtures::default_dir()).at("rows");
  ASSERT_EQ(chi.size(), rows.size());
  for (auto& r : rows) {
    auto d = r.at("dims").get<std::vector<int>>();
    ASSERT_TRUE(chi.count(d));
    EXPECT_EQ(chi[d], r.at("chi1").get<long>());
  }
}

TEST(Modules, PolytopeVertices) {
  auto pts = pol_M(simple_module(4, 2), kPrimes);
  EXPECT_EQ(pts.size(), 2u);
  EXPECT_TRUE(pts.count(Weight::zero(4)));
  EXPECT_TRUE(pts.count(-Weight::alpha(4, 2)));
  EXPECT_EQ(pol_M(a4().module, kPrimes).size(), 15u);
}

TEST(HN, CertificatesReproduceLusztigData) {
  auto f = a4();
  EXPECT_EQ(hn_verify(f.module, f.certificate), f.datum);
  for (long a : {2, 3}) {
    auto g = a5(a);
    EXPECT_EQ(hn_verify(g.module, g.certificate), g.datum);
  }
}

TEST(HN, RejectsBrokenCertificates) {
  auto f = a4();
  auto cert = f.certificate;
  std::swap(cert.layers[1], cert.layers[2]);
  EXPECT_THROW(hn_verify(f.module, cert), CertificateError);
  cert = f.certificate;
  cert.layers[2].span[1] = {{Rational(1), Rational(0)}};
  EXPECT_THROW(hn_verify(f.module, cert), CertificateError);
  cert = f.certificate;
  cert.layers.pop_back();
  EXPECT_THROW(hn_verify(f.module, cert), CertificateError);
}

TEST(Flags, A4SequencePattern) {
  auto chi = compseries_chi(a4().module, kPrimes);
  auto seqs = fixtures::load("a4_sequences", fixtures::default_dir());
  std::map<Sequence, Integer> want;
  for (auto& s : fixtures::sequences(seqs.at("point"))) want[s] = 1;
  for (auto& s : fixtures::sequences(seqs.at("line"))) want[s] = 2;
  EXPECT_EQ(chi, want);
}

// 104 sequences give a point. The projective lines come from 74 sequences,
// carrying 148 in total Euler characteristic.
TEST(Flags, A5SequenceCounts) {
  for (long a : {2, 3}) {
    auto chi = compseries_chi(a5(a).module, {5, 7, 11});
    int points = 0, lines = 0, other = 0;
    Integer line_chi = 0;
    for (auto& [s, c] : chi) {
      if (c == 2) line_chi += c;
      (c == 1 ? points : c == 2 ? lines : other)++;
    }
    EXPECT_EQ(points, 104);
    EXPECT_EQ(lines, 74);
    EXPECT_EQ(line_chi, 148);
    EXPECT_EQ(other, 0);
  }
}

TEST(Flags, A4FlagFunctionTimesPmu) {
  auto f = a4();
  auto j = fixtures::load("a4_ideal", fixtures::default_dir());
  auto want = fixtures::alpha_poly(j.at("multidegree").get<std::string>(), 5);
  auto ff = flag_function(f.module, kPrimes) * RatFunc(p_mu({1, 1, 1, 1, 1}));
  ASSERT_TRUE(ff.is_polynomial()) << ff.to_string();
  EXPECT_EQ(ff.numerator(), want);
}

TEST(Flags, SimpleModuleFlagFunction) {
  // one sequence, Dbar_(i) = 1/(0 - alpha_i)
  auto ff = flag_function(simple_module(4, 2), kPrimes);
  EXPECT_EQ(ff, -RatFunc::inverse(Weight::alpha(4, 2).linear_form()));
  EXPECT_EQ(flag_function(QuiverRep(4, {0, 0, 0}), kPrimes), RatFunc(4, 1));
}

TEST(Flags, MultiplicativeOnDirectSums) {
  const std::vector<long> primes{2, 3, 5, 7, 11};
  auto check = [&](const QuiverRep& a, const QuiverRep& b) {
    auto lhs = flag_function(direct_sum(a, b), primes);
    auto rhs = flag_function(a, primes) * flag_function(b, primes);
    EXPECT_EQ(lhs, rhs) << lhs.to_string() << " vs " << rhs.to_string();
  };
  check(simple_module(3, 1), simple_module(3, 2));
  check(injective_module(4, 1), injective_module(4, 2));
}

// chi(F_i(M + N)) is the sum over ways of writing i as a shuffle of j and k
TEST(Flags, ShuffleRecursionOnDirectSums) {
  auto check = [&](const QuiverRep& a, const QuiverRep& b) {
    auto ca = compseries_chi(a, kPrimes), cb = compseries_chi(b, kPrimes);
    std::map<Sequence, Integer> want;
    for (auto& [j, x] : ca)
      for (auto& [k, y] : cb)
        for (auto& s : shuffles(j, k)) want[s] += x * y;
    std::erase_if(want, [](auto& kv) { return kv.second == 0; });
    EXPECT_EQ(compseries_chi(direct_sum(a, b), kPrimes), want);
  };
  check(simple_module(3, 1), simple_module(3, 2));
  check(simple_module(4, 2), injective_module(4, 1));
  check(injective_module(4, 1), injective_module(4, 3));
}

TEST(Flags, ChainsByTopMatchTable) {
  auto rows = fixtures::load("a4_chains", fixtures::default_dir());
  for (int n = 1; n <= 3; ++n) {
    auto cc = chain_chi(a4().module, n, kPrimes);
    Integer total = 0;
    for (auto& r : rows.at("rows")) {
      auto d = r.at("dims").get<std::vector<int>>();
      Rational want = fixtures::poly_in_n(r.at("poly").get<std::string>(), n);
      Integer got = cc.by_top.count(d) ? cc.by_top.at(d) : Integer(0);
      EXPECT_EQ(Rational(got), want) << "n=" << n;
      total += got;
    }
    EXPECT_EQ(Rational(total), fixtures::poly_in_n(rows.at("total").get<std::string>(), n));
  }
}

TEST(Flags, RelationViolationIsRejected) {
  QuiverRep M(3, {1, 1});
  QMatrix one(1, 1, Rational(1));
  M.set({1, 2}, one);
  M.set({2, 1}, one);
  EXPECT_FALSE(M.satisfies_relation());
  EXPECT_THROW(flag_function(M, kPrimes), std::invalid_argument);
}
