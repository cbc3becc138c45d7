#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "mvtk/matrix.hpp"
#include "mvtk/measures.hpp"

namespace mvtk {

using QMatrix = Matrix<Rational>;
using RMatrix = Matrix<RatFunc>;

// Ring of coordinate functions n_ij (i < j) on the upper unitriangular group.
inline RingPtr coord_ring(int m) {
  if (m > 9) throw std::invalid_argument("coordinate names need m <= 9");
  std::vector<std::string> names;
  for (auto [i, j] : positive_roots(m)) names.push_back("n" + std::to_string(i) + std::to_string(j));
  return make_ring(names);
}

inline std::size_t coord_index(int m, int i, int j) {
  std::size_t k = 0;
  for (auto [a, b] : positive_roots(m)) {
    if (a == i && b == j) return k;
    ++k;
  }
  throw std::out_of_range("not a positive root");
}

// Weight of a weight-homogeneous coordinate function; n_ij carries e_i - e_j.
inline Weight coord_weight(int m, const MultiPoly& f) {
  std::optional<Weight> w;
  auto roots = positive_roots(m);
  for (auto& t : f.terms()) {
    Weight s = Weight::zero(m);
    for (std::size_t k = 0; k < roots.size(); ++k)
      s += long(t.mono.exp[k]) * Weight::root(m, roots[k].first, roots[k].second);
    if (w && !(*w == s)) throw std::invalid_argument("coordinate function is not weight-homogeneous");
    w = s;
  }
  return w.value_or(Weight::zero(m));
}

namespace detail {

inline void check_regular(const std::vector<Rational>& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[i] == x[j]) throw std::domain_error("x is not regular");
}

// n_ij = prod_{k=i}^{j-1} 1/(x_j - x_k), from n x = (x + E) n.
template <class T, class Inv>
Matrix<T> nx_from_differences(int m, const T& zero, const T& one, Inv&& inv_diff) {
  auto n = Matrix<T>::identity(m, zero, one);
  for (int j = 0; j < m; ++j)
    for (int i = j - 1; i >= 0; --i) n(i, j) = n(i + 1, j) * inv_diff(j, i);
  return n;
}

}  // namespace detail

inline QMatrix diag(const std::vector<Rational>& x) {
  QMatrix d(x.size(), x.size(), Rational(0));
  for (std::size_t i = 0; i < x.size(); ++i) d(i, i) = x[i];
  return d;
}

// Superdiagonal ones.
inline QMatrix principal_nilpotent(int m) {
  QMatrix e(m, m, Rational(0));
  for (int i = 0; i + 1 < m; ++i) e(i, i + 1) = 1;
  return e;
}

inline QMatrix solve_nx(const std::vector<Rational>& x) {
  detail::check_regular(x);
  int m = static_cast<int>(x.size());
  return detail::nx_from_differences<Rational>(m, Rational(0), Rational(1),
                                               [&](int j, int i) -> Rational { return 1 / (x[j] - x[i]); });
}

// n_x over the field of rational functions in alpha, x_i being e_i - mean.
inline RMatrix solve_nx_symbolic(int m) {
  return detail::nx_from_differences<RatFunc>(m, RatFunc(m), RatFunc(m, 1), [&](int j, int i) {
    return RatFunc::inverse((Weight::epsilon(m, j + 1) - Weight::epsilon(m, i + 1)).linear_form());
  });
}

inline QMatrix inverse_unitriangular(const QMatrix& n) { return unitriangular_inverse(n, Rational(1)); }

// Ad_n(x) - x - E, which must vanish for n = n_x.
inline QMatrix nx_defect(const std::vector<Rational>& x, const QMatrix& n) {
  int m = static_cast<int>(x.size());
  return n * diag(x) * inverse_unitriangular(n) - diag(x) - principal_nilpotent(m);
}

inline MultiPoly evaluate_coord(const MultiPoly& f, const std::vector<MultiPoly>& entries, const RingPtr& target,
                                bool multilinear) {
  MultiPoly sum(target);
  for (auto& t : f.terms()) {
    MultiPoly prod = MultiPoly::constant(target, t.coef);
    for (std::size_t k = 0; k < entries.size() && !prod.is_zero(); ++k)
      for (unsigned e = 0; e < t.mono.exp[k]; ++e) {
        prod = prod * entries[k];
        if (multilinear) {
          std::vector<Term> keep;
          for (auto& s : prod.terms())
            if (std::all_of(s.mono.exp.begin(), s.mono.exp.end(), [](auto x) { return x <= 1; })) keep.push_back(s);
          prod = MultiPoly::from_terms(target, std::move(keep));
        }
      }
    sum += prod;
  }
  return sum;
}

// <e_i, f>: coefficient of t_1...t_p in f(exp(t_1 e_{i_1}) ... exp(t_p e_{i_p})).
inline Rational pair_word(int m, const Sequence& s, const MultiPoly& f) {
  std::size_t p = s.size();
  RingPtr T = make_ring("t", std::max<std::size_t>(p, 1));
  MultiPoly zero(T), one = MultiPoly::constant(T, 1);
  auto u = Matrix<MultiPoly>::identity(m, zero, one);
  for (std::size_t k = 0; k < p; ++k) {
    auto step = Matrix<MultiPoly>::identity(m, zero, one);
    step(s[k] - 1, s[k]) = MultiPoly::variable(T, k);
    u = u * step;
  }
  std::vector<MultiPoly> entries;
  for (auto [i, j] : positive_roots(m)) entries.push_back(u(i - 1, j - 1));
  auto g = evaluate_coord(f.in_ring(coord_ring(m)), entries, T, true);
  Monomial top;
  for (std::size_t k = 0; k < p; ++k) top.exp[k] = 1;
  top.deg = static_cast<std::uint32_t>(p);
  return g.coefficient(top);
}

inline SeqCoeffs pairing_coefficients(int m, const MultiPoly& f) {
  SeqCoeffs c;
  for (auto& s : sequences(coord_weight(m, f))) {
    auto v = pair_word(m, s, f);
    if (v != 0) c[s] = v;
  }
  return c;
}

// sum over Seq(nu) of <e_i, f> dbar_i
inline RatFunc dbar_of_function(int m, const MultiPoly& f) {
  return measure_dbar(m, pairing_coefficients(m, f), coord_weight(m, f));
}

inline ExpSum ft_of_function(int m, const MultiPoly& f) {
  return measure_ft(m, pairing_coefficients(m, f), coord_weight(m, f));
}

// x -> f(n_x) as a rational function.
inline RatFunc dbar_direct(int m, const MultiPoly& f) {
  auto n = solve_nx_symbolic(m);
  std::vector<RatFunc> vals;
  for (auto [i, j] : positive_roots(m)) vals.push_back(n(i - 1, j - 1));
  return f.in_ring(coord_ring(m)).evaluate<RatFunc>(vals, [&](const Rational& c) { return RatFunc(m, c); });
}

inline Rational evaluate_coord(const MultiPoly& f, const QMatrix& n) {
  int m = static_cast<int>(n.rows());
  std::vector<Rational> vals;
  for (auto [i, j] : positive_roots(m)) vals.push_back(n(i - 1, j - 1));
  return f.in_ring(coord_ring(m)).evaluate(vals);
}

// alpha_i(x) = x_i - x_{i+1}
inline std::vector<Rational> alpha_values(const std::vector<Rational>& x) {
  std::vector<Rational> a;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) a.push_back(x[i] - x[i + 1]);
  return a;
}

// t^{-1} n_x t n_x^{-1}
inline QMatrix psi_eval(const std::vector<Rational>& x, const std::vector<Rational>& t) {
  auto n = solve_nx(x);
  std::vector<Rational> tinv;
  for (auto& v : t) {
    if (v == 0) throw std::domain_error("t is not invertible");
    tinv.push_back(1 / v);
  }
  return diag(tinv) * n * diag(t) * inverse_unitriangular(n);
}

// Lift exp(-e_i) exp(f_i) exp(-e_i) of a simple reflection.
inline QMatrix sbar(int m, int i) {
  auto s = QMatrix::identity(m, Rational(0), Rational(1));
  s(i - 1, i - 1) = 0;
  s(i, i) = 0;
  s(i - 1, i) = -1;
  s(i, i - 1) = 1;
  return s;
}

struct WeylWitness {
  QMatrix y;             // lower unitriangular
  std::vector<Rational> t;  // diagonal torus element
  std::vector<Rational> wx;
};

// For w = s_{w[0]} ... s_{w[k-1]}: n_{wx} = y n_x wbar^{-1} t.
inline WeylWitness weyl_witness(const std::vector<Rational>& x, const std::vector<int>& word) {
  int m = static_cast<int>(x.size());
  auto wbar = QMatrix::identity(m, Rational(0), Rational(1));
  auto wx = x;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    std::swap(wx[*it - 1], wx[*it]);
    wbar = sbar(m, *it) * wbar;
  }
  auto r = wbar * inverse_unitriangular(solve_nx(x));
  // r = U L with diag(U) = t; t_k is a ratio of trailing principal minors
  std::vector<Rational> minors(m + 1, Rational(1));
  for (int k = m - 1; k >= 0; --k) {
    std::vector<std::size_t> idx;
    for (int j = k; j < m; ++j) idx.push_back(j);
    minors[k] = determinant(r.submatrix(idx, idx), Rational(1));
    if (minors[k] == 0) throw std::logic_error("no UL factorisation: witness does not exist");
  }
  std::vector<Rational> t(m), tinv(m);
  for (int k = 0; k < m; ++k) t[k] = minors[k] / minors[k + 1], tinv[k] = 1 / t[k];
  auto y = solve_nx(wx) * diag(tinv) * r;
  if (!y.is_lower_unitriangular(Rational(1))) throw std::logic_error("witness is not lower unitriangular");
  return {y, t, wx};
}

// Random x in the Cartan with no root-lattice relation of small height vanishing on it.
inline std::vector<Rational> random_regular(std::mt19937& rng, int m) {
  std::uniform_int_distribution<int> d(-50, 50), den(1, 7);
  for (;;) {
    std::vector<Rational> x(m);
    Rational sum = 0;
    for (int i = 0; i + 1 < m; ++i) sum += x[i] = make_rational(d(rng), den(rng));
    x[m - 1] = -sum;
    // admissible: beta(x) != 0 for every nonzero beta in Q+ of height <= 4 built from roots
    bool ok = true;
    auto a = alpha_values(x);
    std::vector<Rational> vals{0};
    for (int h = 0; h < 4 && ok; ++h) {
      std::vector<Rational> next;
      for (auto& v : vals)
        for (auto& ai : a) {
          next.push_back(v + ai);
          if (next.back() == 0) ok = false;
        }
      vals = next;
    }
    for (std::size_t i = 0; i < x.size() && ok; ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j) ok = ok && x[i] != x[j];
    if (ok) return x;
  }
}

// monomials in the n_ij of total root height <= h
inline std::vector<MultiPoly> coord_monomials(int m, int h) {
  auto R = coord_ring(m);
  auto roots = positive_roots(m);
  std::vector<MultiPoly> out;
  std::vector<int> e(roots.size(), 0);
  auto rec = [&](auto& self, std::size_t k, int used) -> void {
    if (k == roots.size()) {
      Monomial mo;
      for (std::size_t i = 0; i < e.size(); ++i) mo.exp[i] = e[i], mo.deg += e[i];
      out.push_back(MultiPoly::monomial(R, mo));
      return;
    }
    int ht = roots[k].second - roots[k].first;
    for (int c = 0; used + c * ht <= h; ++c) {
      e[k] = c;
      self(self, k + 1, used + c * ht);
    }
    e[k] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace mvtk
