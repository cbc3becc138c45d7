#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "mvtk/poly.hpp"

namespace mvtk {

namespace detail {

// Terms sorted descending in the engine's order; leading coefficient 1.
struct GPoly {
  std::vector<Term> terms;
  std::uint64_t mask = 0;
  std::vector<long> grades;
  const Monomial& lm() const { return terms.front().mono; }
};

class Buchberger {
 public:
  Buchberger(TermOrder ord, Deadline deadline) : ord_(std::move(ord)), deadline_(deadline) {}

  std::vector<Term> sorted(std::vector<Term> t) const {
    std::sort(t.begin(), t.end(),
              [&](const Term& a, const Term& b) { return ord_.compare(a.mono, b.mono) > 0; });
    return t;
  }

  void add(std::vector<Term> f) {
    auto r = reduce(sorted(std::move(f)));
    if (!r.empty()) insert(std::move(r));
  }

  // Appends an element already known to belong to a reduced basis.
  void adopt(std::vector<Term> f) {
    GPoly gp{std::move(f), 0, {}};
    gp.mask = gp.lm().support_mask();
    for (auto& t : gp.terms) gp.grades.push_back(ord_.grade(t.mono));
    active_.push_back(polys_.size());
    polys_.push_back(std::move(gp));
  }

  std::vector<std::vector<Term>> run() {
    while (!pairs_.empty()) {
      deadline_.check();
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        long da = degree(a.lcm), db = degree(b.lcm);
        if (da != db) return da < db;
        return ord_.compare(a.lcm, b.lcm) < 0;
      });
      Pair p = *best;
      *best = pairs_.back();
      pairs_.pop_back();
      auto r = reduce(spoly(polys_[p.i], polys_[p.j], p.lcm));
      if (!r.empty()) insert(std::move(r));
    }
    return reduced_basis();
  }

  // Full reduction of sorted f by the active basis; result monic.
  std::vector<Term> reduce(std::vector<Term> f) const {
    auto out = reduce_raw(std::move(f));
    make_monic(out);
    return out;
  }

  std::vector<Term> reduce_raw(std::vector<Term> f) const {
    // keyed by a grading the order refines, so most comparisons are one integer compare
    struct Key {
      long w;
      Monomial m;
    };
    auto cmp = [this](const Key& a, const Key& b) {
      if (a.w != b.w) return a.w > b.w;
      return ord_.compare_same_grade(a.m, b.m) > 0;
    };
    std::map<Key, Rational, decltype(cmp)> acc(cmp);
    for (auto& t : f) acc.emplace_hint(acc.end(), Key{ord_.grade(t.mono), t.mono}, std::move(t.coef));
    std::vector<Term> out;
    std::size_t steps = 0;
    while (!acc.empty()) {
      auto it = acc.begin();
      const GPoly* g = find_reducer(it->first.m);
      if (!g) {
        out.push_back({it->first.m, std::move(it->second)});
        acc.erase(it);
        continue;
      }
      if ((++steps & 1023) == 0) deadline_.check();
      Rational c = std::move(it->second);
      Monomial q = g->lm().quotient_of(it->first.m);
      long wq = ord_.grade(q);
      acc.erase(it);
      for (std::size_t k = 1; k < g->terms.size(); ++k) {
        auto [pos, fresh] = acc.try_emplace(Key{wq + g->grades[k], q * g->terms[k].mono});
        pos->second -= c * g->terms[k].coef;
        if (pos->second == 0) acc.erase(pos);
      }
    }
    return out;
  }

  static void make_monic(std::vector<Term>& f) {
    if (f.empty() || f.front().coef == 1) return;
    Rational inv = 1 / f.front().coef;
    for (auto& t : f) t.coef *= inv;
  }

 private:
  long degree(const Monomial& m) const {
    return ord_.kind() == TermOrder::Kind::WeightedGrevlex ? ord_.weighted_degree(m) : long(m.deg);
  }

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };

  const GPoly* find_reducer(const Monomial& m) const {
    auto mask = m.support_mask();
    const GPoly* best = nullptr;
    for (auto i : active_) {
      const GPoly& g = polys_[i];
      if ((g.mask & ~mask) || !g.lm().divides(m)) continue;
      if (!best || g.terms.size() < best->terms.size()) best = &g;
    }
    return best;
  }

  std::vector<Term> spoly(const GPoly& f, const GPoly& g, const Monomial& l) const {
    Monomial qf = f.lm().quotient_of(l), qg = g.lm().quotient_of(l);
    std::vector<Term> a, b;
    for (std::size_t k = 1; k < f.terms.size(); ++k) a.push_back({qf * f.terms[k].mono, f.terms[k].coef});
    for (std::size_t k = 1; k < g.terms.size(); ++k) b.push_back({qg * g.terms[k].mono, -g.terms[k].coef});
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int c = i == a.size() ? -1 : j == b.size() ? 1 : ord_.compare(a[i].mono, b[j].mono);
      if (c > 0) {
        out.push_back(std::move(a[i++]));
      } else if (c < 0) {
        out.push_back(std::move(b[j++]));
      } else {
        Rational s = a[i].coef + b[j].coef;
        if (s != 0) out.push_back({a[i].mono, s});
        ++i, ++j;
      }
    }
    return out;
  }

  // Gebauer-Moeller update.
  void insert(std::vector<Term> h_terms) {
    std::size_t h = polys_.size();
    GPoly gp{std::move(h_terms), 0, {}};
    gp.mask = gp.lm().support_mask();
    for (auto& t : gp.terms) gp.grades.push_back(ord_.grade(t.mono));
    polys_.push_back(std::move(gp));
    const Monomial& lh = polys_[h].lm();

    std::vector<Pair> cand;
    for (auto g : active_) cand.push_back({g, h, lcm(polys_[g].lm(), lh)});
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      const Monomial& g1 = polys_[cand[a].i].lm();
      bool keep = coprime(g1, lh);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < cand.size() && keep; ++b)
          if (cand[b].lcm.divides(cand[a].lcm)) keep = false;
        for (std::size_t b = 0; b < kept.size() && keep; ++b)
          if (kept[b].lcm.divides(cand[a].lcm)) keep = false;
      }
      if (keep) kept.push_back(cand[a]);
    }
    std::erase_if(pairs_, [&](const Pair& p) {
      return lh.divides(p.lcm) && !(lcm(polys_[p.i].lm(), lh) == p.lcm) &&
             !(lcm(polys_[p.j].lm(), lh) == p.lcm);
    });
    for (auto& p : kept)
      if (!coprime(polys_[p.i].lm(), lh)) pairs_.push_back(p);
    std::erase_if(active_, [&](std::size_t g) { return lh.divides(polys_[g].lm()); });
    active_.push_back(h);
  }

  std::vector<std::vector<Term>> reduced_basis() {
    std::sort(active_.begin(), active_.end(), [&](std::size_t a, std::size_t b) {
      return ord_.compare(polys_[a].lm(), polys_[b].lm()) < 0;
    });
    std::vector<std::vector<Term>> out;
    auto all = active_;
    for (auto i : all) {
      // tail-reduce against the others
      active_.clear();
      for (auto j : all)
        if (j != i) active_.push_back(j);
      auto& g = polys_[i];
      std::vector<Term> tail(g.terms.begin() + 1, g.terms.end());
      auto rt = reduce_raw(std::move(tail));
      std::vector<Term> full{g.terms.front()};
      full.insert(full.end(), rt.begin(), rt.end());
      g.terms = full;
      g.grades.clear();
      for (auto& t : g.terms) g.grades.push_back(ord_.grade(t.mono));
      out.push_back(std::move(full));
    }
    active_ = all;
    return out;
  }

  TermOrder ord_;
  Deadline deadline_;
  std::vector<GPoly> polys_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
};

}  // namespace detail

// Reduced Groebner basis together with its order; supports normal forms.
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, TermOrder ord, std::vector<std::vector<Term>> sorted_terms)
      : ring_(std::move(ring)), ord_(std::move(ord)), engine_(ord_, Deadline{}) {
    for (auto& t : sorted_terms) {
      engine_.adopt(t);
      polys_.push_back(MultiPoly::from_terms(ring_, std::move(t)));
    }
  }

  const RingPtr& ring() const { return ring_; }
  const TermOrder& order() const { return ord_; }
  const std::vector<MultiPoly>& polys() const { return polys_; }
  std::size_t size() const { return polys_.size(); }
  bool is_unit() const { return polys_.size() == 1 && polys_[0].is_constant(); }

  MultiPoly normal_form(const MultiPoly& f) const {
    auto g = f.in_ring(ring_);
    auto r = engine_.reduce_raw(engine_.sorted(g.terms()));
    return MultiPoly::from_terms(ring_, std::move(r));
  }
  bool contains(const MultiPoly& f) const { return normal_form(f).is_zero(); }
  bool contains_all(const std::vector<MultiPoly>& fs) const {
    return std::all_of(fs.begin(), fs.end(), [&](auto& f) { return contains(f); });
  }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> v;
    for (auto& p : polys_) v.push_back(p.leading(ord_).mono);
    return v;
  }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return a.polys_ == b.polys_;
  }

 private:
  RingPtr ring_;
  TermOrder ord_;
  detail::Buchberger engine_;
  std::vector<MultiPoly> polys_;
};

inline GroebnerBasis groebner_basis(const std::vector<MultiPoly>& gens, const TermOrder& ord,
                                    const Deadline& deadline = {}) {
  if (gens.empty()) throw std::invalid_argument("empty generator list");
  RingPtr ring = gens.front().ring();
  if (ord.nvars() != ring->size()) throw std::invalid_argument("order/ring size mismatch");
  detail::Buchberger engine(ord, deadline);
  for (auto& g : gens) {
    if (!same_ring(g.ring(), ring)) throw std::invalid_argument("ring mismatch");
    if (!g.is_zero()) engine.add(g.terms());
  }
  return GroebnerBasis(ring, ord, engine.run());
}

inline GroebnerBasis groebner_basis(const std::vector<MultiPoly>& gens, const Deadline& deadline = {}) {
  return groebner_basis(gens, TermOrder::grevlex(gens.at(0).ring()->size()), deadline);
}

inline bool same_ideal(const GroebnerBasis& a, const GroebnerBasis& b) {
  return a.contains_all(b.polys()) && b.contains_all(a.polys());
}

}  // namespace mvtk
