#pragma once

#include <map>
#include <set>
#include <vector>

#include "mvtk/ratfunc.hpp"

namespace mvtk {

// prod_{k<p} 1/(beta_k - beta_p)
inline RatFunc dbar_i(int m, const Sequence& s) {
  auto beta = partial_sums(m, s);
  RatFunc r(m, 1);
  for (std::size_t k = 0; k + 1 < beta.size(); ++k) r *= RatFunc::inverse((beta[k] - beta.back()).linear_form());
  return r;
}

// Finite sum of e^{-beta} times rational functions, beta in Q+.
class ExpSum {
 public:
  explicit ExpSum(int m) : m_(m) {}
  static ExpSum one(int m) {
    ExpSum e(m);
    e.terms_.emplace(Weight::zero(m), RatFunc(m, 1));
    return e;
  }

  int m() const { return m_; }
  const std::map<Weight, RatFunc>& terms() const { return terms_; }

  RatFunc coefficient(const Weight& beta) const {
    auto it = terms_.find(beta);
    return it == terms_.end() ? RatFunc(m_) : it->second;
  }

  void add(const Weight& beta, const RatFunc& c) {
    auto [it, fresh] = terms_.try_emplace(beta, m_);
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  ExpSum& operator+=(const ExpSum& o) {
    for (auto& [b, c] : o.terms_) add(b, c);
    return *this;
  }
  ExpSum& operator*=(const Rational& k) {
    if (k == 0) terms_.clear();
    for (auto& [b, c] : terms_) c *= k;
    return *this;
  }
  friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
  friend ExpSum operator-(ExpSum a, ExpSum b) { return a += (b *= Rational(-1)); }

  friend ExpSum operator*(const ExpSum& a, const ExpSum& b) {
    ExpSum out(a.m_);
    for (auto& [ba, ca] : a.terms_)
      for (auto& [bb, cb] : b.terms_) out.add(ba + bb, ca * cb);
    return out;
  }

  friend bool operator==(const ExpSum& a, const ExpSum& b) { return (a - b).terms_.empty(); }

  // Value at x in the Cartan (alpha-coordinates alpha_i(x)) and t in the torus;
  // e^{-beta} at t is prod_i (t_{i+1}/t_i)^{c_i} for beta = sum c_i alpha_i.
  Rational evaluate(const std::vector<Rational>& alpha_x, const std::vector<Rational>& t) const {
    Rational sum = 0;
    for (auto& [b, c] : terms_) {
      Rational e = 1;
      auto coords = b.alpha_coords();
      for (std::size_t i = 0; i < coords.size(); ++i)
        for (long k = 0; k < coords[i]; ++k) e *= t[i + 1] / t[i];
      sum += e * c.evaluate(alpha_x);
    }
    return sum;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (auto& [b, c] : terms_) {
      s += (first ? "" : ", ") + b.to_string() + ": " + c.to_string();
      first = false;
    }
    return s + "}";
  }

 private:
  int m_;
  std::map<Weight, RatFunc> terms_;
};

// sum_j e^{-beta_j} / prod_{k != j} (beta_k - beta_j)
inline ExpSum ft_i(int m, const Sequence& s) {
  auto beta = partial_sums(m, s);
  std::set<Weight> distinct(beta.begin(), beta.end());
  if (distinct.size() != beta.size()) throw std::domain_error("repeated partial sums in " + to_string(s));
  ExpSum out(m);
  for (std::size_t j = 0; j < beta.size(); ++j) {
    RatFunc c(m, 1);
    for (std::size_t k = 0; k < beta.size(); ++k)
      if (k != j) c *= RatFunc::inverse((beta[k] - beta[j]).linear_form());
    out.add(beta[j], c);
  }
  return out;
}

using SeqCoeffs = std::map<Sequence, Rational>;

namespace detail {

inline void check_support(int m, const SeqCoeffs& c, const Weight& nu) {
  for (auto& [s, k] : c)
    if (k != 0 && !(sequence_weight(m, s) == nu))
      throw std::invalid_argument("sequence " + to_string(s) + " is not in Seq(" + nu.to_string() + ")");
}

// Sum over a prefix trie: P(pi) = sum_a P(pi a) / (wt(pi) - nu), P(full) = c.
// Every partial sum keeps denominators made of positive-root forms only.
inline RatFunc dbar_trie(int m, const std::vector<std::pair<Sequence, Rational>>& items, std::size_t lo,
                         std::size_t hi, std::size_t depth, const Weight& prefix, const Weight& nu) {
  RatFunc sum(m);
  std::size_t i = lo;
  while (i < hi) {
    if (items[i].first.size() == depth) {
      sum += RatFunc(m, items[i].second);
      ++i;
      continue;
    }
    int letter = items[i].first[depth];
    std::size_t j = i;
    while (j < hi && items[j].first.size() > depth && items[j].first[depth] == letter) ++j;
    sum += dbar_trie(m, items, i, j, depth + 1, prefix + Weight::alpha(m, letter), nu);
    i = j;
  }
  if (depth == items[lo].first.size() && prefix == nu) return sum;
  return sum.is_zero() ? sum : sum.divided_by_linear((prefix - nu).linear_form());
}

}  // namespace detail

inline RatFunc measure_dbar(int m, const SeqCoeffs& c, const Weight& nu) {
  detail::check_support(m, c, nu);
  std::vector<std::pair<Sequence, Rational>> items;
  for (auto& [s, k] : c)
    if (k != 0) items.emplace_back(s, k);
  if (items.empty()) return RatFunc(m);
  if (nu == Weight::zero(m)) return RatFunc(m, items[0].second);
  return detail::dbar_trie(m, items, 0, items.size(), 0, Weight::zero(m), nu);
}

// Term-by-term sum; the oracle for measure_dbar.
inline RatFunc measure_dbar_naive(int m, const SeqCoeffs& c, const Weight& nu) {
  detail::check_support(m, c, nu);
  RatFunc sum(m);
  for (auto& [s, k] : c)
    if (k != 0) sum += k * dbar_i(m, s);
  return sum;
}

inline ExpSum measure_ft(int m, const SeqCoeffs& c, const Weight& nu) {
  detail::check_support(m, c, nu);
  ExpSum sum(m);
  for (auto& [s, k] : c)
    if (k != 0) {
      auto f = ft_i(m, s);
      sum += f *= k;
    }
  return sum;
}

// Laurent expansion in t of F(c t) at order 0 and the vanishing of the polar part,
// for F = FT(D_i) with alpha_i -> c_i t. Returns the order-0 coefficient.
inline Rational ft_limit_along(const ExpSum& f, const std::vector<Rational>& c) {
  // coefficient of e^{-beta}: r(ct) = r(c) t^{deg r}; e^{-beta(c) t} = sum_n (-beta(c))^n t^n / n!
  std::map<long, Rational> series;  // power of t -> coefficient
  for (auto& [beta, r] : f.terms()) {
    Rational rc = r.evaluate(c);
    long d = r.degree();
    Rational b = 0;
    auto coords = beta.alpha_coords();
    for (std::size_t i = 0; i < coords.size(); ++i) b += coords[i] * c[i];
    Rational pw = 1, fact = 1;
    for (long n = 0; d + n <= 0; ++n) {
      if (n > 0) pw *= -b, fact *= n;
      series[d + n] += rc * pw / fact;
    }
  }
  for (auto& [k, v] : series)
    if (k < 0 && v != 0) throw std::domain_error("polar part does not vanish");
  return series[0];
}

// f * p(mu), one linear factor at a time
inline RatFunc times_p_mu(RatFunc f, const std::vector<int>& mu) {
  for (auto& l : p_mu_factors(mu)) f.mul_linear(l);
  return f;
}

}  // namespace mvtk
