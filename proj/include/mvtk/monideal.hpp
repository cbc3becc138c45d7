#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <vector>

#include "mvtk/poly.hpp"

namespace mvtk {

inline bool operator<(const Monomial& a, const Monomial& b) { return a.exp < b.exp; }

class MonomialIdeal {
 public:
  MonomialIdeal(std::size_t nvars, std::vector<Monomial> gens) : nvars_(nvars), gens_(std::move(gens)) {
    minimalize();
  }

  std::size_t nvars() const { return nvars_; }
  const std::vector<Monomial>& gens() const { return gens_; }
  bool is_unit() const { return gens_.size() == 1 && gens_[0].is_one(); }
  bool is_zero() const { return gens_.empty(); }

  bool contains(const Monomial& m) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](auto& g) { return g.divides(m); });
  }

  // Generated only by variables.
  bool is_coordinate() const {
    return std::all_of(gens_.begin(), gens_.end(), [](auto& g) { return g.deg == 1; });
  }

  MonomialIdeal plus_variable(std::size_t x) const {
    auto g = gens_;
    g.push_back(Monomial::variable(x));
    return {nvars_, std::move(g)};
  }

  MonomialIdeal colon_variable(std::size_t x) const {
    auto g = gens_;
    for (auto& m : g)
      if (m.exp[x]) --m.exp[x], --m.deg;
    return {nvars_, std::move(g)};
  }

  // Size of a smallest variable set meeting every generator's support.
  std::size_t codim() const {
    if (is_unit()) return nvars_ + 1;
    std::size_t best = nvars_ + 1;
    std::uint64_t chosen = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k >= best) return;
      const Monomial* g = first_uncovered(chosen);
      if (!g) {
        best = k;
        return;
      }
      for (std::size_t v = 0; v < nvars_; ++v)
        if (g->exp[v]) {
          chosen |= bit(v);
          rec(k + 1);
          chosen &= ~bit(v);
        }
    };
    rec(0);
    return best;
  }

  std::size_t dim() const { return is_unit() ? 0 : nvars_ - codim(); }

  // Minimal primes of largest dimension, as variable bitmasks.
  std::vector<std::uint64_t> top_primes() const {
    if (is_unit()) return {};
    std::size_t c = codim();
    std::vector<std::uint64_t> out;
    std::uint64_t chosen = 0, banned = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      const Monomial* g = first_uncovered(chosen);
      if (!g) {
        out.push_back(chosen);
        return;
      }
      if (k == c) return;
      std::uint64_t saved = banned;
      for (std::size_t v = 0; v < nvars_; ++v) {
        if (!g->exp[v] || (banned & bit(v))) continue;
        chosen |= bit(v);
        rec(k + 1);
        chosen &= ~bit(v);
        banned |= bit(v);
      }
      banned = saved;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Length of the localisation at the coordinate prime `prime`.
  std::size_t multiplicity(std::uint64_t prime) const {
    std::vector<Monomial> local;
    for (auto g : gens_) {
      for (std::size_t v = 0; v < nvars_; ++v)
        if (!(prime & bit(v))) g.deg -= g.exp[v], g.exp[v] = 0;
      local.push_back(g);
    }
    MonomialIdeal loc(nvars_, std::move(local));
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < nvars_; ++v)
      if (prime & bit(v)) vars.push_back(v);
    std::size_t count = 0;
    loc.for_each_standard(vars, ~0u, [&](const Monomial&) {
      if (++count > 1000000) throw std::runtime_error("prime is not minimal");
    });
    return count;
  }

  // Visits every monomial in `vars` of degree <= max_deg outside the ideal.
  template <class F>
  void for_each_standard(const std::vector<std::size_t>& vars, unsigned max_deg, F&& visit) const {
    if (is_unit()) return;
    Monomial m;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      visit(m);
      if (m.deg >= max_deg) return;
      for (std::size_t k = start; k < vars.size(); ++k) {
        auto v = vars[k];
        ++m.exp[v], ++m.deg;
        if (!contains(m)) rec(k);
        --m.exp[v], --m.deg;
      }
    };
    rec(0);
  }

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return a.nvars_ == b.nvars_ && a.gens_ == b.gens_;
  }

 private:
  static std::uint64_t bit(std::size_t v) { return std::uint64_t{1} << v; }

  const Monomial* first_uncovered(std::uint64_t chosen) const {
    const Monomial* pick = nullptr;
    int fewest = 1 << 30;
    for (auto& g : gens_) {
      auto s = g.support_mask();
      if (s & chosen) continue;
      int n = std::popcount(s);
      if (n < fewest) fewest = n, pick = &g;
    }
    return pick;
  }

  void minimalize() {
    std::sort(gens_.begin(), gens_.end(), [](auto& a, auto& b) {
      return a.deg != b.deg ? a.deg < b.deg : a.exp < b.exp;
    });
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    std::vector<Monomial> keep;
    for (auto& g : gens_)
      if (std::none_of(keep.begin(), keep.end(), [&](auto& k) { return k.divides(g); })) keep.push_back(g);
    gens_ = std::move(keep);
  }

  std::size_t nvars_;
  std::vector<Monomial> gens_;
};

// Multidegree from the top-dimensional primes of a monomial ideal.
// weights[i] is the torus weight of variable i, a linear form.
inline MultiPoly multidegree(const MonomialIdeal& J, const std::vector<MultiPoly>& weights) {
  if (weights.size() != J.nvars()) throw std::invalid_argument("one weight per variable");
  MultiPoly total(weights.at(0).ring());
  for (auto prime : J.top_primes()) {
    MultiPoly term = MultiPoly::constant(total.ring(), Rational(J.multiplicity(prime)));
    for (std::size_t v = 0; v < J.nvars(); ++v)
      if (prime >> v & 1) term *= weights[v];
    total += term;
  }
  return total;
}

// Independent route: mdeg(J) = mdeg(J + x) + mdeg(J : x), keeping only summands
// whose codimension equals codim J.
inline MultiPoly multidegree_recursive(const MonomialIdeal& J, const std::vector<MultiPoly>& weights) {
  struct Rec {
    const std::vector<MultiPoly>& w;
    std::map<std::vector<Monomial>, std::pair<std::size_t, MultiPoly>, std::less<>> memo;

    std::pair<std::size_t, MultiPoly> go(const MonomialIdeal& J) {
      auto key = J.gens();
      if (auto it = memo.find(key); it != memo.end()) return it->second;
      auto ring = w.at(0).ring();
      std::pair<std::size_t, MultiPoly> res{0, MultiPoly::constant(ring, 1)};
      if (J.is_unit()) {
        res = {J.nvars() + 1, MultiPoly(ring)};
      } else if (J.is_coordinate()) {
        res.first = J.gens().size();
        for (auto& g : J.gens())
          for (std::size_t v = 0; v < J.nvars(); ++v)
            if (g.exp[v]) res.second *= w[v];
      } else {
        std::size_t x = 0;
        for (auto& g : J.gens())
          if (g.deg > 1) {
            while (!g.exp[x]) ++x;
            break;
          }
        auto a = go(J.plus_variable(x));
        auto b = go(J.colon_variable(x));
        res.first = std::min(a.first, b.first);
        res.second = MultiPoly(ring);
        if (a.first == res.first) res.second += a.second;
        if (b.first == res.first) res.second += b.second;
      }
      memo.emplace(std::move(key), res);
      return res;
    }
  };
  Rec r{weights, {}};
  return r.go(J).second;
}

}  // namespace mvtk
