#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "mvtk/poly.hpp"

namespace mvtk {

// Ring Q[alpha1..alpha_{m-1}] of linear forms on the Cartan of SL_m, one per rank.
inline RingPtr alpha_ring(int m) {
  static std::mutex mu;
  static std::map<int, RingPtr> cache;
  std::lock_guard lock(mu);
  auto& r = cache[m];
  if (!r) r = make_ring("alpha", static_cast<std::size_t>(m - 1));
  return r;
}

// Element of Z^m / Z(1,...,1), stored with last entry 0.
class Weight {
 public:
  explicit Weight(std::vector<long> entries) : e_(std::move(entries)) {
    if (e_.size() < 2) throw std::invalid_argument("weights need m >= 2");
    long last = e_.back();
    for (auto& x : e_) x -= last;
  }

  static Weight zero(int m) { return Weight(std::vector<long>(m, 0)); }
  static Weight epsilon(int m, int i) {
    std::vector<long> v(m, 0);
    v.at(i - 1) = 1;
    return Weight(v);
  }
  static Weight root(int m, int i, int j) { return epsilon(m, i) - epsilon(m, j); }
  static Weight alpha(int m, int i) { return root(m, i, i + 1); }
  static Weight from_alpha(int m, const std::vector<long>& c) {
    if (static_cast<int>(c.size()) != m - 1) throw std::invalid_argument("need m-1 coordinates");
    Weight w = zero(m);
    for (int i = 1; i < m; ++i) w += c[i - 1] * alpha(m, i);
    return w;
  }

  int m() const { return static_cast<int>(e_.size()); }
  const std::vector<long>& entries() const { return e_; }

  bool in_root_lattice() const {
    long s = std::accumulate(e_.begin(), e_.end(), 0L);
    return s % m() == 0;
  }

  std::vector<long> alpha_coords() const {
    if (!in_root_lattice()) throw std::domain_error("weight not in the root lattice: " + to_string());
    long shift = std::accumulate(e_.begin(), e_.end(), 0L) / m();
    std::vector<long> c;
    long run = 0;
    for (int i = 0; i + 1 < m(); ++i) c.push_back(run += e_[i] - shift);
    return c;
  }

  bool is_nonneg_root_combo() const {
    if (!in_root_lattice()) return false;
    auto c = alpha_coords();
    return std::all_of(c.begin(), c.end(), [](long x) { return x >= 0; });
  }

  long height() const {
    auto c = alpha_coords();
    return std::accumulate(c.begin(), c.end(), 0L);
  }

  // The weight as a linear form in alpha1..alpha_{m-1}.
  MultiPoly linear_form() const {
    RingPtr R = alpha_ring(m());
    Rational mean = make_rational(std::accumulate(e_.begin(), e_.end(), 0L), m());
    MultiPoly out(R);
    Rational run = 0;
    for (int i = 0; i + 1 < m(); ++i) {
      run += e_[i] - mean;
      out += MultiPoly::variable(R, i) * run;
    }
    return out;
  }

  Weight& operator+=(const Weight& o) {
    check(o);
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    check(o);
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator-(Weight a) { return Weight::zero(a.m()) - a; }
  friend Weight operator*(long k, Weight a) {
    for (auto& x : a.e_) x *= k;
    return a;
  }
  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < e_.size(); ++i) s += (i ? "," : "") + std::to_string(e_[i]);
    return s + "]";
  }

 private:
  void check(const Weight& o) const {
    if (o.m() != m()) throw std::invalid_argument("rank mismatch");
  }
  std::vector<long> e_;
};

// Simple-root letters, 1-based.
using Sequence = std::vector<int>;

inline std::string to_string(const Sequence& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + ")";
}

inline Weight sequence_weight(int m, const Sequence& s) {
  Weight w = Weight::zero(m);
  for (int i : s) w += Weight::alpha(m, i);
  return w;
}

// All words with content nu, in lexicographic order.
inline std::vector<Sequence> sequences(const Weight& nu) {
  auto c = nu.alpha_coords();
  for (auto x : c)
    if (x < 0) throw std::domain_error("weight not in Q+: " + nu.to_string());
  std::vector<int> letters;
  for (std::size_t i = 0; i < c.size(); ++i) letters.insert(letters.end(), c[i], static_cast<int>(i + 1));
  std::vector<Sequence> out;
  do out.push_back(letters);
  while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

// Every interleaving, with multiplicity.
inline std::vector<Sequence> shuffles(const Sequence& a, const Sequence& b) {
  std::vector<Sequence> out;
  Sequence cur;
  auto rec = [&](auto& self, std::size_t i, std::size_t j) -> void {
    if (i == a.size() && j == b.size()) {
      out.push_back(cur);
      return;
    }
    if (i < a.size()) {
      cur.push_back(a[i]);
      self(self, i + 1, j);
      cur.pop_back();
    }
    if (j < b.size()) {
      cur.push_back(b[j]);
      self(self, i, j + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

// beta_0 = 0, beta_k = alpha_{i_1} + ... + alpha_{i_k}.
inline std::vector<Weight> partial_sums(int m, const Sequence& s) {
  std::vector<Weight> out{Weight::zero(m)};
  for (int i : s) out.push_back(out.back() + Weight::alpha(m, i));
  return out;
}

// Positive roots in the order e1-e2, ..., e1-em, e2-e3, ...
inline std::vector<std::pair<int, int>> positive_roots(int m) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) out.emplace_back(i, j);
  return out;
}

// the factors of p(mu), with repetition
inline std::vector<MultiPoly> p_mu_factors(const std::vector<int>& mu) {
  int m = static_cast<int>(mu.size());
  std::vector<MultiPoly> out;
  for (auto [i, j] : positive_roots(m))
    for (int k = 0; k < mu[j - 1]; ++k) out.push_back(Weight::root(m, i, j).linear_form());
  return out;
}

// prod_{i<j} (e_i - e_j)^{mu_j}
inline MultiPoly p_mu(const std::vector<int>& mu) {
  int m = static_cast<int>(mu.size());
  MultiPoly out = MultiPoly::constant(alpha_ring(m), 1);
  for (auto [i, j] : positive_roots(m)) out *= Weight::root(m, i, j).linear_form().pow(mu[j - 1]);
  return out;
}

namespace minuscule {

using Subset = std::vector<int>;  // sorted, 1-based

inline Weight weight_of(int m, const Subset& s) {
  Weight w = Weight::zero(m);
  for (int k : s) w += Weight::epsilon(m, k);
  return w;
}

// tau <= gamma iff tau - gamma is a nonnegative root combination.
inline bool leq(int m, const Subset& tau, const Subset& gamma) {
  return (weight_of(m, tau) - weight_of(m, gamma)).is_nonneg_root_combo();
}

inline std::vector<Subset> subsets(int m, int i) {
  std::vector<Subset> out;
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + i, true);
  do {
    Subset s;
    for (int k = 0; k < m; ++k)
      if (pick[k]) s.push_back(k + 1);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// Multichains omega_i <= tau_1 <= ... <= tau_n <= gamma in W.omega_i, tallied by
// sum_k (omega_i - tau_k).
inline std::map<Weight, std::size_t> chains(int m, int i, const Subset& gamma, int n) {
  Subset top;
  for (int k = 1; k <= i; ++k) top.push_back(k);
  Weight w0 = weight_of(m, top);
  std::vector<Subset> interval;
  for (auto& s : subsets(m, i))
    if (leq(m, top, s) && leq(m, s, gamma)) interval.push_back(s);
  // state: last element, accumulated weight
  std::map<std::pair<std::size_t, Weight>, std::size_t> cur;
  for (std::size_t a = 0; a < interval.size(); ++a) cur[{a, w0 - weight_of(m, interval[a])}] = 1;
  for (int step = 1; step < n; ++step) {
    std::map<std::pair<std::size_t, Weight>, std::size_t> next;
    for (auto& [key, cnt] : cur)
      for (std::size_t b = 0; b < interval.size(); ++b)
        if (leq(m, interval[key.first], interval[b]))
          next[{b, key.second + (w0 - weight_of(m, interval[b]))}] += cnt;
    cur = std::move(next);
  }
  std::map<Weight, std::size_t> out;
  if (n == 0) {
    out[Weight::zero(m)] = 1;
    return out;
  }
  for (auto& [key, cnt] : cur) out[key.second] += cnt;
  return out;
}

}  // namespace minuscule

}  // namespace mvtk
