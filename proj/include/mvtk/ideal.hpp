#pragma once

#include <map>
#include <numeric>
#include <vector>

#include "mvtk/groebner.hpp"
#include "mvtk/monideal.hpp"

namespace mvtk {

enum class SaturationMethod { Elimination, IteratedQuotient, Bayer };

namespace detail {

// Ring with `extra` prepended to the variables of `base`.
inline std::pair<RingPtr, std::vector<std::size_t>> prepend(const RingPtr& base,
                                                              const std::vector<std::string>& extra) {
  std::vector<std::string> names = extra;
  for (auto& n : base->names()) names.push_back(n);
  std::vector<std::size_t> map(base->size());
  std::iota(map.begin(), map.end(), extra.size());
  return {make_ring(std::move(names)), map};
}

inline std::string fresh_name(const RingPtr& ring, std::string stem) {
  while (ring->index(stem)) stem += "_";
  return stem;
}

// Polynomials of `gb` free of the first k variables, moved to `target`.
inline std::vector<MultiPoly> drop_leading_block(const GroebnerBasis& gb, std::size_t k, const RingPtr& target) {
  std::vector<std::size_t> map(gb.ring()->size(), 0);
  for (std::size_t i = k; i < map.size(); ++i) map[i] = i - k;
  std::vector<MultiPoly> out;
  for (auto& p : gb.polys()) {
    bool free = std::all_of(p.terms().begin(), p.terms().end(), [&](const Term& t) {
      for (std::size_t i = 0; i < k; ++i)
        if (t.mono.exp[i]) return false;
      return true;
    });
    if (free) out.push_back(p.remap(target, map));
  }
  return out;
}

}  // namespace detail

inline MonomialIdeal initial_ideal(const GroebnerBasis& gb) {
  return MonomialIdeal(gb.ring()->size(), gb.leading_monomials());
}

inline std::size_t dimension(const GroebnerBasis& gb) { return initial_ideal(gb).dim(); }

// Generators of I ∩ k[remaining variables], expressed in the smaller ring.
inline std::vector<MultiPoly> eliminate(const std::vector<MultiPoly>& gens, const std::vector<std::string>& drop,
                                        const Deadline& deadline = {}) {
  RingPtr ring = gens.at(0).ring();
  std::vector<std::string> keep;
  for (auto& n : ring->names())
    if (std::find(drop.begin(), drop.end(), n) == drop.end()) keep.push_back(n);
  std::vector<std::string> order = drop;
  order.insert(order.end(), keep.begin(), keep.end());
  RingPtr big = make_ring(order);
  std::vector<MultiPoly> moved;
  for (auto& g : gens) moved.push_back(g.in_ring(big));
  auto gb = groebner_basis(moved, TermOrder::elimination(big->size(), drop.size()), deadline);
  auto small = make_ring(keep);
  auto out = detail::drop_leading_block(gb, drop.size(), small);
  if (out.empty()) out.push_back(MultiPoly(small));
  return out;
}

inline std::vector<MultiPoly> intersect(const std::vector<MultiPoly>& I, const std::vector<MultiPoly>& J,
                                        const Deadline& deadline = {}) {
  RingPtr ring = I.at(0).ring();
  auto tname = detail::fresh_name(ring, "t");
  auto [big, map] = detail::prepend(ring, {tname});
  auto t = MultiPoly::variable(big, 0);
  std::vector<MultiPoly> gens;
  for (auto& f : I) gens.push_back(t * f.remap(big, map));
  for (auto& g : J) gens.push_back((MultiPoly::constant(big, 1) - t) * g.remap(big, map));
  auto gb = groebner_basis(gens, TermOrder::elimination(big->size(), 1), deadline);
  auto out = detail::drop_leading_block(gb, 1, ring);
  if (out.empty()) out.push_back(MultiPoly(ring));
  return out;
}

// Exact division by f; throws if some term does not divide.
inline MultiPoly divide_exact(const MultiPoly& p, const MultiPoly& f) {
  auto ord = TermOrder::lex(p.ring()->size());
  MultiPoly rem = p, quo(p.ring());
  const Term& lf = f.leading(ord);
  while (!rem.is_zero()) {
    const Term& lr = rem.leading(ord);
    if (!lf.mono.divides(lr.mono)) throw std::domain_error("inexact division");
    auto q = MultiPoly::monomial(p.ring(), lf.mono.quotient_of(lr.mono), lr.coef / lf.coef);
    quo += q;
    rem -= q * f;
  }
  return quo;
}

inline std::vector<MultiPoly> quotient(const std::vector<MultiPoly>& I, const MultiPoly& f,
                                       const Deadline& deadline = {}) {
  std::vector<MultiPoly> out;
  for (auto& g : intersect(I, {f}, deadline))
    if (!g.is_zero()) out.push_back(divide_exact(g, f));
  if (out.empty()) out.push_back(MultiPoly(I.at(0).ring()));
  return out;
}

namespace detail {

inline std::vector<MultiPoly> saturate_elimination(const std::vector<MultiPoly>& I, const MultiPoly& f,
                                                   const Deadline& deadline) {
  RingPtr ring = I.at(0).ring();
  auto [big, map] = prepend(ring, {fresh_name(ring, "y")});
  auto y = MultiPoly::variable(big, 0);
  std::vector<MultiPoly> gens;
  for (auto& g : I) gens.push_back(g.remap(big, map));
  gens.push_back(y * f.remap(big, map) - Rational(1));
  auto gb = groebner_basis(gens, TermOrder::elimination(big->size(), 1), deadline);
  return drop_leading_block(gb, 1, ring);
}

inline std::vector<MultiPoly> saturate_quotients(std::vector<MultiPoly> I, const MultiPoly& f,
                                                 const Deadline& deadline) {
  auto cur = groebner_basis(I, deadline);
  for (;;) {
    auto next = groebner_basis(quotient(cur.polys(), f, deadline), deadline);
    if (cur.contains_all(next.polys())) return cur.polys();
    cur = std::move(next);
  }
}

// Requires I homogeneous for positive `weights` and f homogeneous.
inline std::vector<MultiPoly> saturate_bayer(const std::vector<MultiPoly>& I, const MultiPoly& f,
                                             const std::vector<long>& weights, const Deadline& deadline) {
  RingPtr ring = I.at(0).ring();
  for (auto& g : I)
    if (!g.is_homogeneous(weights)) throw std::invalid_argument("Bayer saturation needs a homogeneous ideal");
  if (!f.is_homogeneous(weights)) throw std::invalid_argument("Bayer saturation needs a homogeneous f");
  auto wz = TermOrder::weighted(weights).weighted_degree(f.terms().at(0).mono);
  if (wz <= 0) throw std::invalid_argument("saturating element must have positive degree");
  // append z = f as the last variable so reverse lex singles it out
  std::vector<std::string> names = ring->names();
  names.push_back(fresh_name(ring, "z"));
  RingPtr big = make_ring(names);
  std::vector<std::size_t> map(ring->size());
  std::iota(map.begin(), map.end(), 0);
  auto w = weights;
  w.push_back(wz);
  std::size_t zi = ring->size();
  std::vector<MultiPoly> gens;
  for (auto& g : I) gens.push_back(g.remap(big, map));
  gens.push_back(MultiPoly::variable(big, zi) - f.remap(big, map));
  auto gb = groebner_basis(gens, TermOrder::weighted(w), deadline);
  std::vector<MultiPoly> vals;
  for (std::size_t i = 0; i < ring->size(); ++i) vals.push_back(MultiPoly::variable(ring, i));
  vals.push_back(f);
  std::vector<MultiPoly> out;
  for (auto& p : gb.polys()) {
    unsigned e = 255;
    for (auto& t : p.terms()) e = std::min<unsigned>(e, t.mono.exp[zi]);
    std::vector<Term> stripped;
    for (auto t : p.terms()) {
      t.mono.exp[zi] -= e;
      t.mono.deg -= e;
      stripped.push_back(std::move(t));
    }
    auto q = MultiPoly::from_terms(big, std::move(stripped));
    out.push_back(q.evaluate<MultiPoly>(vals, [&](const Rational& c) { return MultiPoly::constant(ring, c); }));
  }
  return out;
}

// x_k moved to the last position, so it divides a revlex leading term only when it divides the whole element.
inline std::vector<MultiPoly> saturate_variable(const std::vector<MultiPoly>& I, std::size_t k,
                                                const std::vector<long>& weights, const Deadline& deadline) {
  RingPtr ring = I.at(0).ring();
  std::size_t n = ring->size();
  std::vector<std::size_t> map(n), back(n);
  std::vector<std::string> names;
  std::vector<long> w;
  for (std::size_t i = 0, j = 0; i < n; ++i)
    if (i != k) {
      map[i] = j++;
      names.push_back(ring->names()[i]);
      w.push_back(weights[i]);
    }
  map[k] = n - 1;
  names.push_back(ring->names()[k]);
  w.push_back(weights[k]);
  for (std::size_t i = 0; i < n; ++i) back[map[i]] = i;
  RingPtr perm = make_ring(names);
  std::vector<MultiPoly> gens;
  for (auto& g : I) gens.push_back(g.remap(perm, map));
  auto gb = groebner_basis(gens, TermOrder::weighted(w), deadline);
  std::vector<MultiPoly> out;
  for (auto& p : gb.polys()) {
    unsigned e = 255;
    for (auto& t : p.terms()) e = std::min<unsigned>(e, t.mono.exp[n - 1]);
    std::vector<Term> stripped;
    for (auto t : p.terms()) {
      t.mono.exp[n - 1] -= e;
      t.mono.deg -= e;
      stripped.push_back(std::move(t));
    }
    out.push_back(MultiPoly::from_terms(perm, std::move(stripped)).remap(ring, back));
  }
  return out;
}

}  // namespace detail

// Generators of I : f^infinity. Bayer needs homogeneity for `weights`.
inline std::vector<MultiPoly> saturate(const std::vector<MultiPoly>& I, const MultiPoly& f,
                                       SaturationMethod method = SaturationMethod::Elimination,
                                       const std::vector<long>& weights = {}, const Deadline& deadline = {}) {
  if (f.is_zero()) throw std::invalid_argument("saturation by zero");
  switch (method) {
    case SaturationMethod::Elimination:
      return detail::saturate_elimination(I, f, deadline);
    case SaturationMethod::IteratedQuotient:
      return detail::saturate_quotients(I, f, deadline);
    case SaturationMethod::Bayer: {
      auto w = weights.empty() ? std::vector<long>(f.ring()->size(), 1) : weights;
      if (f.terms().size() == 1) {
        auto cur = I;
        for (std::size_t k = 0; k < f.ring()->size(); ++k)
          if (f.terms()[0].mono.exp[k]) cur = detail::saturate_variable(cur, k, w, deadline);
        return cur;
      }
      return detail::saturate_bayer(I, f, w, deadline);
    }
  }
  return I;
}

// Torus weights of variables as linear forms in some ring of characters.
inline MultiPoly ideal_multidegree(const GroebnerBasis& gb, const std::vector<MultiPoly>& weights) {
  return multidegree(initial_ideal(gb), weights);
}

// Number of standard monomials of degree exactly n, one entry per n in 0..max_n.
inline std::vector<std::size_t> hilbert_function(const MonomialIdeal& in, unsigned max_n) {
  std::vector<std::size_t> h(max_n + 1, 0);
  std::vector<std::size_t> vars(in.nvars());
  std::iota(vars.begin(), vars.end(), 0);
  in.for_each_standard(vars, max_n, [&](const Monomial& m) { ++h[m.deg]; });
  return h;
}

}  // namespace mvtk
