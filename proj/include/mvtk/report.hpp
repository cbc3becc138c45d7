#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mvtk/centralizer.hpp"
#include "mvtk/fixtures.hpp"

namespace mvtk::report {

enum class Status { Pass, Fail, Budget };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    case Status::Budget:
      return "BUDGET";
  }
  return "?";
}

struct Check {
  std::string id;
  Status status = Status::Pass;
  std::string lhs, rhs;
  std::string ref;
  double seconds = 0;
};

struct Options {
  int n_max = 6;
  std::vector<long> primes;  // empty: the per-target default
  double budget = 0;  // seconds, 0 for none
  bool sl6_direct_sum = true;
  std::filesystem::path fixtures = fixtures::default_dir();
};

struct Report {
  std::string target;
  std::vector<Check> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](auto& c) { return c.status == Status::Pass; });
  }
  bool out_of_budget() const {
    return std::any_of(checks.begin(), checks.end(), [](auto& c) { return c.status == Status::Budget; });
  }
  const Check* find(const std::string& id) const {
    for (auto& c : checks)
      if (c.id == id) return &c;
    return nullptr;
  }
};

struct FixtureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
std::string show(const T& x) {
  if constexpr (std::is_same_v<T, Weight>) {
    return x.to_string();
  } else if constexpr (requires { x.begin()->first; }) {
    std::string s = "{";
    for (auto& [k, v] : x) s += (s.size() > 1 ? ", " : "") + show(k) + ": " + show(v);
    return s + "}";
  } else if constexpr (requires { x.begin(); }) {
    std::string s = "[";
    for (auto& v : x) s += (s.size() > 1 ? "," : "") + show(v);
    return s + "]";
  } else {
    std::ostringstream os;
    os << x;
    return os.str();
  }
}

// Runs checks in declaration order, stopping at the budget.
class Runner {
 public:
  Runner(std::string target, const Options& opt)
      : report_{std::move(target), {}}, deadline_(opt.budget > 0 ? Deadline(opt.budget) : Deadline()) {}

  const Deadline& deadline() const { return deadline_; }

  // body returns {lhs, rhs}; the check passes when they are equal
  void run(const std::string& id, const std::string& ref, const std::function<std::pair<std::string, std::string>()>& body) {
    Check c{id, Status::Pass, "", "", ref, 0};
    if (stopped_) {
      c.status = Status::Budget;
      report_.checks.push_back(c);
      return;
    }
    auto t0 = std::chrono::steady_clock::now();
    try {
      deadline_.check();
      auto [l, r] = body();
      c.status = l == r ? Status::Pass : Status::Fail;
      c.lhs = std::move(l);
      c.rhs = std::move(r);
    } catch (const BudgetExceeded&) {
      c.status = Status::Budget;
      stopped_ = true;
    } catch (const FixtureError&) {
      throw;
    } catch (const std::exception& e) {
      c.status = Status::Fail;
      c.lhs = std::string("error: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report_.checks.push_back(std::move(c));
  }

  // a boolean property; lhs carries the first counterexample
  void expect(const std::string& id, const std::string& ref, const std::function<std::string()>& body) {
    run(id, ref, [&] { return std::pair(body(), std::string()); });
  }

  Report take() { return std::move(report_); }

 private:
  Report report_;
  Deadline deadline_;
  bool stopped_ = false;
};

inline fixtures::Json load(const Options& opt, const std::string& name) {
  try {
    return fixtures::load(name, opt.fixtures);
  } catch (const std::exception& e) {
    throw FixtureError(e.what());
  }
}

inline std::string ref_of(const fixtures::Json& j) { return j.value("provenance", std::string()); }

// ---- A4 ----

inline Report run_a4(const Options& opt) {
  Runner r("a4", opt);
  auto primes = opt.primes.empty() ? std::vector<long>{2, 3, 5} : opt.primes;
  auto ideal = load(opt, "a4_ideal");
  auto modj = load(opt, "a4_module");
  auto pl = load(opt, "a4_pluecker");
  auto chains = load(opt, "a4_chains");
  auto f = fixtures::module(modj);
  auto tau = fixtures::tableau(ideal, 5);
  auto mdeg = fixtures::alpha_poly(ideal.at("multidegree").get<std::string>(), 5);
  std::optional<OrbitalIdeal> Z;
  std::optional<PluckerModel> model;
  auto orbit = [&]() -> const OrbitalIdeal& {
    if (!Z) {
      OrbitalOptions o;
      o.deadline = r.deadline();
      Z = orbital_ideal(tau, o);
    }
    return *Z;
  };
  auto pluecker = [&]() -> const PluckerModel& {
    if (!model) model.emplace(tau, orbit(), r.deadline());
    return *model;
  };

  r.run("a4.multidegree", ref_of(ideal), [&] { return std::pair(show(orbital_multidegree(orbit())), show(mdeg)); });
  r.expect("a4.ideal", ref_of(ideal), [&] {
    auto want = groebner_basis(fixtures::ideal(ideal, orbit().chart.ring()), orbit().basis.order(), r.deadline());
    return same_ideal(orbit().basis, want) ? "" : "computed ideal differs from the fixture generators";
  });
  r.run("a4.flag_function", ref_of(modj), [&] {
    auto ff = times_p_mu(flag_function(f.module, primes, r.deadline()), tau.content());
    return std::pair(ff.to_string(), show(mdeg));
  });
  auto hilb = pl.at("hilbert").get<std::string>();
  for (int n = 0; n <= std::min(opt.n_max, 6); ++n)
    r.run("a4.hilbert.n" + std::to_string(n), ref_of(pl), [&] {
      return std::pair(show(Rational(pluecker().total(n))), show(fixtures::poly_in_n(hilb, n)));
    });
  std::map<int, ChainChi> cc;
  auto chain = [&](int n) -> const ChainChi& {
    if (!cc.count(n)) cc.emplace(n, chain_chi(f.module, n, primes));
    return cc.at(n);
  };
  for (int n = 1; n <= std::min(opt.n_max, 3); ++n)
    r.run("a4.chains_by_top.n" + std::to_string(n), ref_of(chains), [&] {
      std::map<std::vector<int>, Rational> got, want;
      for (auto& row : chains.at("rows")) {
        auto d = row.at("dims").get<std::vector<int>>();
        auto& by_top = chain(n).by_top;
        got[d] = by_top.count(d) ? Rational(by_top.at(d)) : Rational(0);
        want[d] = fixtures::poly_in_n(row.at("poly").get<std::string>(), n);
      }
      return std::pair(show(got), show(want));
    });
  for (int n = 0; n <= std::min(opt.n_max, 4); ++n)
    r.run("a4.total.n" + std::to_string(n), ref_of(chains), [&] {
      Integer total = 0;
      if (n == 0)
        total = 1;
      else
        for (auto& [w, k] : chain(n).by_weight) total += k;
      return std::pair(show(total), show(pluecker().total(n)));
    });
  std::optional<WeightCalibration> cal;
  Weight nu = f.module.dim_vector();
  for (int n = 1; n <= std::min(opt.n_max, 2); ++n)
    r.run("a4.weighted.n" + std::to_string(n), ref_of(pl), [&] {
      if (!cal) cal = calibrate(pluecker().sections(1), chain(1).by_weight, nu);
      return std::pair(show(calibrated(pluecker().sections(n), *cal, n, nu)), show(chain(n).by_weight));
    });
  return r.take();
}

// ---- A5 ----

inline Report run_a5(const Options& opt) {
  Runner r("a5", opt);
  auto ideal = load(opt, "a5_ideal");
  auto modj = load(opt, "a5_module");
  auto tau = fixtures::tableau(ideal, 6);
  std::optional<OrbitalIdeal> Z;
  auto orbit = [&]() -> const OrbitalIdeal& {
    if (!Z) {
      OrbitalOptions o;
      o.deadline = r.deadline();
      Z = orbital_ideal(tau, o);
    }
    return *Z;
  };
  r.expect("a5.ideal", ref_of(ideal), [&] {
    auto printed = fixtures::ideal(ideal, orbit().chart.ring());
    if (!orbit().contains_all(printed)) return "a fixture generator is not in the computed ideal";
    if (!groebner_basis(printed, orbit().basis.order(), r.deadline()).contains_all(orbit().generators()))
      return "the computed ideal is not contained in the fixture ideal";
    return "";
  });
  auto primes = opt.primes.empty() ? std::vector<long>{5, 7, 11} : opt.primes;
  for (long a : modj.at("generic_values").get<std::vector<long>>())
    r.run("a5.flag_function.a" + std::to_string(a), ref_of(modj), [&] {
      auto M = fixtures::module(modj, {Rational(a)}).module;
      auto ff = times_p_mu(flag_function(M, primes, r.deadline()), tau.content());
      return std::pair(ff.to_string(), show(orbital_multidegree(orbit())));
    });
  return r.take();
}

// ---- SL6 ----

// flag_function(M_a)^2 - 2 flag_function(I(w2)) flag_function(I(w4)), times p(mu)
struct Sl6Rhs {
  MultiPoly square, cross;
  MultiPoly value() const { return square - Rational(2) * cross; }
};

inline Sl6Rhs sl6_rhs(const fixtures::Json& modj, const std::vector<long>& primes, const Deadline& deadline) {
  std::vector<int> one(6, 1);
  auto poly = [](const RatFunc& f) {
    if (!f.is_polynomial()) throw std::domain_error("not a polynomial: " + f.to_string());
    return f.numerator();
  };
  auto vals = modj.at("generic_values").get<std::vector<long>>();
  auto fa = poly(times_p_mu(generic_flag_function([&](const Rational& a) { return fixtures::module(modj, {a}).module; },
                                                  Rational(vals.at(0)), Rational(vals.at(1)), primes, deadline),
                            one));
  auto f2 = poly(times_p_mu(flag_function(injective_module(6, 2), primes, deadline), one));
  auto f4 = poly(times_p_mu(flag_function(injective_module(6, 4), primes, deadline), one));
  return {fa * fa, f2 * f4};
}

inline Report run_sl6(const Options& opt, const std::function<void(const std::string&)>& log = {}) {
  Runner r("sl6", opt);
  auto sl6 = load(opt, "sl6");
  auto modj = load(opt, "a5_module");
  auto tau = fixtures::tableau(sl6, 6);
  auto primes = opt.primes.empty() ? std::vector<long>{5, 7, 11, 13} : opt.primes;
  std::optional<Sl6Rhs> rhs;
  r.expect("sl6.datum", ref_of(sl6), [&] {
    return lusztig_datum(tau) == sl6.at("lusztig_datum").get<LusztigDatum>() ? "" : "tableau datum differs";
  });
  r.expect("sl6.cross_term_nonzero", ref_of(sl6), [&] {
    rhs = sl6_rhs(modj, primes, r.deadline());
    return rhs->cross.is_zero() ? "flag_function(I(w2)) flag_function(I(w4)) vanishes" : "";
  });
  r.run("sl6.identity", ref_of(sl6), [&] {
    OrbitalOptions o;
    o.form = RankForm::Fitting;
    o.deadline = r.deadline();
    o.log = log;
    if (!rhs) rhs = sl6_rhs(modj, primes, r.deadline());
    return std::pair(show(orbital_multidegree(orbital_ideal(tau, o))), show(rhs->value()));
  });
  // the cross term stands for the direct sum of the two injectives; enumerate it once
  if (opt.sl6_direct_sum) {
    r.run("sl6.cross_term_direct_sum", ref_of(sl6), [&] {
      const std::vector<long> wide{2, 3, 5, 7, 11, 13};
      auto I2 = injective_module(6, 2), I4 = injective_module(6, 4);
      auto sum = flag_function(direct_sum(I2, I4), wide, r.deadline());
      return std::pair(sum.to_string(), (flag_function(I2, wide) * flag_function(I4, wide)).to_string());
    });
  }
  return r.take();
}

// ---- properties ----

namespace detail {

inline RatFunc f_chain(int n, const std::vector<int>& idx) {
  RingPtr R = alpha_ring(n + 1);
  RatFunc f(n + 1, 1);
  MultiPoly run(R);
  for (int k : idx) {
    run += MultiPoly::variable(R, k);
    f *= RatFunc::inverse(run);
  }
  return f;
}

inline std::vector<Sequence> words(int letters, int max_len) {
  std::vector<Sequence> out{{}};
  for (std::size_t k = 0; k < out.size(); ++k)
    if (static_cast<int>(out[k].size()) < max_len)
      for (int a = 1; a <= letters; ++a) {
        auto w = out[k];
        w.push_back(a);
        out.push_back(w);
      }
  return out;
}

// binomials homogeneous for deg_u = e1 + e2 + e5, deg_v = e3 + e4 + e5
inline std::vector<MultiPoly> random_binomials(std::mt19937& rng, const RingPtr& R) {
  std::uniform_int_distribution<int> e(0, 2), count(1, 3), coef(-3, 3);
  auto bidegree = [](const Monomial& m) { return std::pair(m.exp[0] + m.exp[1] + m.exp[4], m.exp[2] + m.exp[3] + m.exp[4]); };
  auto random_mono = [&] {
    Monomial m;
    for (int v = 0; v < 5; ++v) m.exp[v] = e(rng), m.deg += m.exp[v];
    return m;
  };
  std::vector<MultiPoly> gens;
  int k = count(rng);
  while (static_cast<int>(gens.size()) < k) {
    auto a = random_mono();
    if (!a.deg) continue;
    Monomial b;
    do b = random_mono();
    while (bidegree(b) != bidegree(a));
    int c = coef(rng);
    gens.push_back(MultiPoly::monomial(R, a) + Rational(c) * MultiPoly::monomial(R, b));
  }
  return gens;
}

}  // namespace detail

inline Report run_properties(const Options& opt) {
  Runner r("properties", opt);
  r.expect("prop.rational_function_identity", "shuffle identity for f_p, p + q <= 5", [] {
    for (int p = 1; p <= 4; ++p)
      for (int q = 1; p + q <= 5; ++q) {
        std::vector<int> a(p), b(q);
        std::iota(a.begin(), a.end(), 0);
        std::iota(b.begin(), b.end(), p);
        RatFunc sum(p + q + 1);
        for (auto& w : shuffles(a, b)) sum += detail::f_chain(p + q, w);
        if (!(detail::f_chain(p + q, a) * detail::f_chain(p + q, b) == sum))
          return "p=" + std::to_string(p) + " q=" + std::to_string(q);
      }
    return std::string();
  });
  r.expect("prop.shuffle_ft", "FT of a shuffle product, words of length <= 3 in A3", [&] {
    auto ws = detail::words(3, 3);
    std::map<Sequence, ExpSum> ft;
    for (auto& w : ws) ft.emplace(w, ft_i(4, w));
    for (auto& j : ws)
      for (auto& k : ws) {
        r.deadline().check();
        ExpSum sum(4);
        for (auto& s : shuffles(j, k)) {
          auto it = ft.find(s);
          sum += it != ft.end() ? it->second : ft_i(4, s);
        }
        if (!(ft.at(j) * ft.at(k) == sum)) return mvtk::to_string(j) + " " + mvtk::to_string(k);
      }
    return std::string();
  });
  r.expect("prop.nx_defining_identity", "Ad(n_x) x = x + e, 100 random regular x, m <= 6", [] {
    std::mt19937 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
      int m = 2 + trial % 5;
      auto x = random_regular(rng, m);
      if (!(nx_defect(x, solve_nx(x)) == QMatrix(m, m, Rational(0)))) return show(x);
    }
    return std::string();
  });
  r.expect("prop.expansion_by_sequences", "coordinate monomials of height <= 4, m <= 4", [] {
    std::mt19937 rng(4);
    for (int m = 2; m <= 4; ++m) {
      std::vector<std::vector<Rational>> pts;
      for (int k = 0; k < 20; ++k) pts.push_back(random_regular(rng, m));
      for (auto& f : coord_monomials(m, 4)) {
        auto d = dbar_of_function(m, f);
        if (!(d == dbar_direct(m, f))) return "m=" + std::to_string(m) + " " + f.to_string();
        for (auto& x : pts)
          if (d.evaluate(alpha_values(x)) != evaluate_coord(f, solve_nx(x)))
            return "m=" + std::to_string(m) + " " + f.to_string() + " at " + show(x);
      }
    }
    return std::string();
  });
  r.expect("prop.psi_fourier_transform", "20 random (x, t), m <= 4", [] {
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> tv(1, 9);
    for (int m = 2; m <= 4; ++m) {
      auto fs = coord_monomials(m, 3);
      for (int trial = 0; trial < 20; ++trial) {
        auto x = random_regular(rng, m);
        std::vector<Rational> t(m);
        for (auto& v : t) v = make_rational(tv(rng), tv(rng));
        auto psi = psi_eval(x, t);
        for (auto& f : fs)
          if (evaluate_coord(f, psi) != ft_of_function(m, f).evaluate(alpha_values(x), t))
            return "m=" + std::to_string(m) + " " + f.to_string();
      }
    }
    return std::string();
  });
  r.expect("prop.weyl_witnesses", "n_{s x} = y n_x s^{-1} t, m <= 4", [] {
    std::mt19937 rng(6);
    for (int m = 2; m <= 4; ++m)
      for (int trial = 0; trial < 10; ++trial) {
        auto x = random_regular(rng, m);
        for (int i = 1; i < m; ++i) {
          auto w = weyl_witness(x, {i});
          auto sinv = sbar(m, i) * sbar(m, i) * sbar(m, i);
          if (!(solve_nx(w.wx) == w.y * solve_nx(x) * sinv * diag(w.t))) return show(x) + " s" + std::to_string(i);
        }
      }
    return std::string();
  });
  r.expect("prop.multidegree_monomial", "two algorithms on 50 random monomial ideals", [] {
    auto A = make_ring("w", 5);
    std::vector<MultiPoly> w;
    for (int i = 0; i < 5; ++i) w.push_back(MultiPoly::variable(A, i));
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> e(0, 2), n(2, 5);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Monomial> gens;
      for (int g = n(rng); g > 0; --g) {
        Monomial mo;
        for (int v = 0; v < 5; ++v) mo.exp[v] = e(rng), mo.deg += mo.exp[v];
        if (mo.deg) gens.push_back(mo);
      }
      MonomialIdeal J(5, gens);
      if (!(multidegree(J, w) == multidegree_recursive(J, w))) return "trial " + std::to_string(trial);
    }
    return std::string();
  });
  r.expect("prop.multidegree_binomial", "order independence on 50 random binomial ideals", [&] {
    auto R = make_ring("x", 5);
    auto U = make_ring(std::vector<std::string>{"u", "v"});
    auto u = MultiPoly::variable(U, 0), v = MultiPoly::variable(U, 1);
    std::vector<MultiPoly> w{u, u, v, v, u + v};
    std::vector<TermOrder> orders{TermOrder::grevlex(5), TermOrder::lex(5), TermOrder::weighted({3, 1, 2, 1, 5})};
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      auto gens = detail::random_binomials(rng, R);
      std::optional<MultiPoly> first;
      for (auto& ord : orders) {
        auto md = ideal_multidegree(groebner_basis(gens, ord, r.deadline()), w);
        if (!first) first = md;
        if (!(md == *first)) return "trial " + std::to_string(trial) + ": " + first->to_string() + " vs " + md.to_string();
      }
      auto md = ideal_multidegree(groebner_basis(gens, orders[0], r.deadline()), {u, u, u, u, u});
      auto mr = multidegree_recursive(initial_ideal(groebner_basis(gens, orders[0], r.deadline())), {u, u, u, u, u});
      if (!(md == mr)) return "trial " + std::to_string(trial) + " routes " + md.to_string() + " vs " + mr.to_string();
    }
    return std::string();
  });
  r.expect("prop.flag_function_multiplicative", "direct sums of simple and injective modules", [&] {
    const std::vector<long> primes{2, 3, 5, 7, 11};
    std::vector<std::pair<QuiverRep, QuiverRep>> pairs{{simple_module(3, 1), simple_module(3, 2)},
                                                       {simple_module(4, 2), injective_module(4, 1)},
                                                       {injective_module(4, 1), injective_module(4, 2)},
                                                       {injective_module(4, 1), injective_module(4, 3)}};
    for (auto& [a, b] : pairs) {
      auto lhs = flag_function(direct_sum(a, b), primes, r.deadline());
      auto rhs = flag_function(a, primes) * flag_function(b, primes);
      if (!(lhs == rhs)) return lhs.to_string() + " vs " + rhs.to_string();
    }
    return std::string();
  });
  return r.take();
}

inline Report run(const std::string& target, const Options& opt) {
  if (target == "a4") return run_a4(opt);
  if (target == "a5") return run_a5(opt);
  if (target == "sl6") return run_sl6(opt);
  if (target == "properties") return run_properties(opt);
  throw std::invalid_argument("unknown report target: " + target);
}

// Deterministic: no timings.
inline nlohmann::ordered_json to_json(const Report& rep) {
  nlohmann::ordered_json j;
  j["target"] = rep.target;
  j["status"] = rep.passed() ? "PASS" : rep.out_of_budget() ? "BUDGET" : "FAIL";
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (auto& c : rep.checks) {
    nlohmann::ordered_json x;
    x["id"] = c.id;
    x["status"] = to_string(c.status);
    x["lhs"] = c.lhs;
    x["rhs"] = c.rhs;
    x["ref"] = c.ref;
    arr.push_back(std::move(x));
  }
  return j;
}

inline std::string to_text(const Report& rep, bool timings = false) {
  std::ostringstream os;
  for (auto& c : rep.checks) {
    os << to_string(c.status) << "  " << c.id;
    if (timings) os << "  (" << std::fixed << std::setprecision(2) << c.seconds << " s)";
    os << "\n";
    if (c.status == Status::Fail) os << "    lhs: " << c.lhs << "\n    rhs: " << c.rhs << "\n";
  }
  return os.str();
}

}  // namespace mvtk::report
