#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "mvtk/matrix.hpp"
#include "mvtk/measures.hpp"

namespace mvtk {

// ---- arithmetic mod p ----------------------------------------------------

namespace fp {

using Vec = std::vector<long>;
using Mat = std::vector<Vec>;  // list of rows

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

class Field {
 public:
  explicit Field(long p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  }
  long p() const { return p_; }
  long norm(long x) const {
    x %= p_;
    return x < 0 ? x + p_ : x;
  }
  long from(const Rational& q) const {
    long d = norm(Integer(q.get_den() % p_).get_si());
    if (d == 0) throw std::domain_error("denominator vanishes mod " + std::to_string(p_));
    return mul(norm(Integer(q.get_num() % p_).get_si()), inv(d));
  }
  long add(long a, long b) const { return (a + b) % p_; }
  long sub(long a, long b) const { return norm(a - b); }
  long mul(long a, long b) const { return a * b % p_; }
  long inv(long a) const {
    long r = 1, b = a, e = p_ - 2;
    for (; e; e >>= 1, b = b * b % p_)
      if (e & 1) r = r * b % p_;
    return r;
  }

 private:
  long p_;
};

// Reduced row echelon form with zero rows dropped.
inline Mat rref(Mat a, const Field& F) {
  std::size_t row = 0, cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[row]);
    long s = F.inv(a[row][c]);
    for (auto& x : a[row]) x = F.mul(x, s);
    for (std::size_t r = 0; r < a.size(); ++r)
      if (long f = a[r][c]; r != row && f)
        for (std::size_t k = 0; k < cols; ++k) a[r][k] = F.sub(a[r][k], F.mul(f, a[row][k]));
    ++row;
  }
  a.resize(row);
  return a;
}

inline std::size_t rank(const Mat& a, const Field& F) { return rref(a, F).size(); }

// v reduced against an rref basis; zero iff v lies in the span.
inline Vec reduce(Vec v, const Mat& basis, const Field& F) {
  for (auto& b : basis) {
    std::size_t c = 0;
    while (b[c] == 0) ++c;
    if (long f = v[c])
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = F.sub(v[k], F.mul(f, b[k]));
  }
  return v;
}

inline bool in_span(const Vec& v, const Mat& basis, const Field& F) {
  auto r = reduce(v, basis, F);
  return std::all_of(r.begin(), r.end(), [](long x) { return x == 0; });
}

inline Vec apply(const Mat& a, const Vec& v, const Field& F) {
  Vec out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = F.add(out[i], F.mul(a[i][j], v[j]));
  return out;
}

// Every subspace of F_p^d, as rref bases, ordered by dimension.
inline std::vector<Mat> all_subspaces(std::size_t d, const Field& F) {
  std::vector<Mat> out;
  for (std::size_t k = 0; k <= d; ++k) {
    std::vector<bool> pick(d, false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
      std::vector<std::size_t> piv;
      for (std::size_t c = 0; c < d; ++c)
        if (pick[c]) piv.push_back(c);
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = piv[r] + 1; c < d; ++c)
          if (!pick[c]) free.emplace_back(r, c);
      std::vector<long> fill(free.size(), 0);
      for (;;) {
        Mat b(k, Vec(d, 0));
        for (std::size_t r = 0; r < k; ++r) b[r][piv[r]] = 1;
        for (std::size_t f = 0; f < free.size(); ++f) b[free[f].first][free[f].second] = fill[f];
        out.push_back(std::move(b));
        std::size_t f = 0;
        while (f < fill.size() && ++fill[f] == F.p()) fill[f++] = 0;
        if (f == fill.size()) break;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

}  // namespace fp

// ---- representations of the preprojective algebra of type A -------------

// Arrow between adjacent vertices; tau(i -> i+1) = +1, tau(i+1 -> i) = -1.
struct Arrow {
  int from, to;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

class QuiverRep {
 public:
  // Representation of the doubled quiver of A_{m-1}; dims[v-1] is the space at vertex v.
  QuiverRep(int m, std::vector<int> dims) : m_(m), dims_(std::move(dims)) {
    if (m < 2 || static_cast<int>(dims_.size()) != m - 1) throw std::invalid_argument("need m-1 vertex dimensions");
    for (int d : dims_)
      if (d < 0) throw std::invalid_argument("negative dimension");
  }

  int m() const { return m_; }
  int vertices() const { return m_ - 1; }
  int dim(int v) const { return dims_.at(v - 1); }
  const std::vector<int>& dims() const { return dims_; }
  int total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }
  Weight dim_vector() const {
    return Weight::from_alpha(m_, std::vector<long>(dims_.begin(), dims_.end()));
  }

  void set(Arrow h, QMatrix a) {
    check_arrow(h);
    if (a.rows() != std::size_t(dim(h.to)) || a.cols() != std::size_t(dim(h.from)))
      throw std::invalid_argument("arrow " + name(h) + " has the wrong shape");
    maps_.insert_or_assign(h, std::move(a));
  }

  QMatrix map(Arrow h) const {
    check_arrow(h);
    if (auto it = maps_.find(h); it != maps_.end()) return it->second;
    return QMatrix(dim(h.to), dim(h.from), Rational(0));
  }

  std::vector<Arrow> arrows() const {
    std::vector<Arrow> out;
    for (int v = 1; v < vertices(); ++v) out.push_back({v, v + 1}), out.push_back({v + 1, v});
    return out;
  }

  static std::string name(Arrow h) { return std::to_string(h.from) + "->" + std::to_string(h.to); }

  // sum over arrows h into v of tau(h) M_h M_hbar
  QMatrix relation_at(int v) const {
    QMatrix r(dim(v), dim(v), Rational(0));
    if (v > 1) r = r + map({v - 1, v}) * map({v, v - 1});
    if (v < vertices()) r = r - map({v + 1, v}) * map({v, v + 1});
    return r;
  }

  bool satisfies_relation() const {
    for (int v = 1; v <= vertices(); ++v)
      if (!(relation_at(v) == QMatrix(dim(v), dim(v), Rational(0)))) return false;
    return true;
  }

  friend QuiverRep direct_sum(const QuiverRep& a, const QuiverRep& b) {
    if (a.m_ != b.m_) throw std::invalid_argument("rank mismatch");
    std::vector<int> d;
    for (int v = 1; v <= a.vertices(); ++v) d.push_back(a.dim(v) + b.dim(v));
    QuiverRep s(a.m_, d);
    for (auto h : a.arrows()) {
      QMatrix x(d[h.to - 1], d[h.from - 1], Rational(0));
      auto p = a.map(h), q = b.map(h);
      for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) x(i, j) = p(i, j);
      for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) x(p.rows() + i, p.cols() + j) = q(i, j);
      s.set(h, std::move(x));
    }
    return s;
  }

 private:
  void check_arrow(Arrow h) const {
    if (std::abs(h.from - h.to) != 1 || std::min(h.from, h.to) < 1 || std::max(h.from, h.to) > vertices())
      throw std::invalid_argument("no arrow " + name(h));
  }

  int m_;
  std::vector<int> dims_;
  std::map<Arrow, QMatrix> maps_;
};

inline QuiverRep simple_module(int m, int i) {
  std::vector<int> d(m - 1, 0);
  d.at(i - 1) = 1;
  return QuiverRep(m, d);
}

// Largest submodule killed by every arrow, as dimensions per vertex.
inline std::vector<int> socle_dims(const QuiverRep& M) {
  std::vector<int> out;
  for (int v = 1; v <= M.vertices(); ++v) {
    std::vector<QMatrix> out_maps;
    std::size_t rows = 0;
    for (int w : {v - 1, v + 1})
      if (w >= 1 && w <= M.vertices()) {
        out_maps.push_back(M.map({v, w}));
        rows += out_maps.back().rows();
      }
    QMatrix stacked(rows, M.dim(v), Rational(0));
    std::size_t r0 = 0;
    for (auto& a : out_maps) {
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) stacked(r0 + i, j) = a(i, j);
      r0 += a.rows();
    }
    std::vector<std::vector<Rational>> rowsv;
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<Rational> row;
      for (int j = 0; j < M.dim(v); ++j) row.push_back(stacked(i, j));
      rowsv.push_back(row);
    }
    // rank over Q by elimination
    std::size_t rk = 0;
    for (int c = 0; c < M.dim(v) && rk < rowsv.size(); ++c) {
      std::size_t p = rk;
      while (p < rowsv.size() && rowsv[p][c] == 0) ++p;
      if (p == rowsv.size()) continue;
      std::swap(rowsv[p], rowsv[rk]);
      for (std::size_t r = rk + 1; r < rowsv.size(); ++r) {
        Rational f = rowsv[r][c] / rowsv[rk][c];
        for (int k = c; k < M.dim(v); ++k) rowsv[r][k] -= f * rowsv[rk][k];
      }
      ++rk;
    }
    out.push_back(M.dim(v) - static_cast<int>(rk));
  }
  return out;
}

// Injective hull of S_i: boxes (r, c) of an i x (m-i) rectangle, box (r, c) at vertex
// i - r + c; the arrow to v-1 moves left and the arrow to v+1 moves up, so every
// square commutes and only the corner (1, 1) is killed by all arrows.
inline QuiverRep injective_module(int m, int i) {
  if (i < 1 || i > m - 1) throw std::invalid_argument("need 1 <= i <= m-1");
  int rows = i, cols = m - i;
  std::map<int, std::vector<std::pair<int, int>>> at;
  for (int r = 1; r <= rows; ++r)
    for (int c = 1; c <= cols; ++c) at[i - r + c].emplace_back(r, c);
  std::vector<int> d;
  for (int v = 1; v < m; ++v) d.push_back(static_cast<int>(at[v].size()));
  QuiverRep M(m, d);
  auto index = [&](int v, std::pair<int, int> box) {
    auto& list = at[v];
    auto it = std::find(list.begin(), list.end(), box);
    return it == list.end() ? -1 : static_cast<int>(it - list.begin());
  };
  for (auto h : M.arrows()) {
    QMatrix a(M.dim(h.to), M.dim(h.from), Rational(0));
    for (std::size_t k = 0; k < at[h.from].size(); ++k) {
      auto [r, c] = at[h.from][k];
      auto target = h.to < h.from ? std::pair{r, c - 1} : std::pair{r - 1, c};
      if (int t = index(h.to, target); t >= 0) a(t, k) = 1;
    }
    M.set(h, std::move(a));
  }
  auto soc = socle_dims(M);
  for (int v = 1; v < m; ++v)
    if (soc[v - 1] != (v == i ? 1 : 0) || !M.satisfies_relation())
      throw std::logic_error("injective hull construction failed its socle check");
  return M;
}

// ---- point counts over F_p -----------------------------------------------

struct ChainCounts {
  std::map<Weight, Integer> by_weight;           // sum_{k<=n} dim M^k
  std::map<std::vector<int>, Integer> by_top;    // dim M^n
};

// All submodules of M over F_p, with the covering relations N < N' where N'/N is simple.
class SubmoduleLattice {
 public:
  SubmoduleLattice(const QuiverRep& M, long p, const Deadline& deadline = {})
      : m_(M.m()), F_(p), dims_(M.dims()) {
    int n = M.vertices();
    for (int v = 1; v <= n; ++v) spaces_.push_back(fp::all_subspaces(dims_[v - 1], F_));
    for (auto h : M.arrows()) {
      auto a = M.map(h);
      fp::Mat b(a.rows(), fp::Vec(a.cols(), 0));
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) b[i][j] = F_.from(a(i, j));
      maps_[h] = std::move(b);
    }
    std::vector<int> pick(n, 0);
    enumerate(1, pick, deadline);
    for (std::size_t k = 0; k < subs_.size(); ++k) {
      by_dims_[dimvec(k)].push_back(k);
    }
    up_.resize(subs_.size());
    for (std::size_t a = 0; a < subs_.size(); ++a)
      for (int v = 1; v <= n; ++v) {
        auto d = dimvec(a);
        if (d[v - 1] == dims_[v - 1]) continue;
        ++d[v - 1];
        for (auto b : by_dims_[d])
          if (contains(b, a)) up_[a].emplace_back(v, b);
      }
  }

  long prime() const { return F_.p(); }
  std::size_t size() const { return subs_.size(); }
  std::size_t zero() const { return by_dims_.at(std::vector<int>(dims_.size(), 0)).at(0); }
  std::size_t full() const { return by_dims_.at(dims_).at(0); }

  std::vector<int> dimvec(std::size_t k) const {
    std::vector<int> d;
    for (std::size_t v = 0; v < dims_.size(); ++v) d.push_back(static_cast<int>(spaces_[v][subs_[k][v]].size()));
    return d;
  }

  // a contains b
  bool contains(std::size_t a, std::size_t b) const {
    for (std::size_t v = 0; v < dims_.size(); ++v) {
      auto& big = spaces_[v][subs_[a][v]];
      for (auto& row : spaces_[v][subs_[b][v]])
        if (!fp::in_span(row, big, F_)) return false;
    }
    return true;
  }

  std::map<std::vector<int>, Integer> submodule_counts() const {
    std::map<std::vector<int>, Integer> out;
    for (auto& [d, list] : by_dims_) out[d] = list.size();
    return out;
  }

  Integer count_submodules(const std::vector<int>& d) const {
    auto it = by_dims_.find(d);
    return it == by_dims_.end() ? 0 : it->second.size();
  }

  // Chains 0 = M^0 <= M^1 <= ... <= M^n <= M^{n+1} = M.
  ChainCounts chains(int n) const {
    ChainCounts out;
    if (n == 0) {
      out.by_weight[Weight::zero(m_)] = 1;
      out.by_top[std::vector<int>(dims_.size(), 0)] = 1;
      return out;
    }
    std::vector<std::vector<bool>> le(size(), std::vector<bool>(size()));
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b) le[a][b] = contains(b, a);
    std::map<std::pair<std::size_t, Weight>, Integer> cur;
    for (std::size_t a = 0; a < size(); ++a) cur[{a, weight(a)}] += 1;
    for (int step = 1; step < n; ++step) {
      std::map<std::pair<std::size_t, Weight>, Integer> next;
      for (auto& [key, cnt] : cur)
        for (std::size_t b = 0; b < size(); ++b)
          if (le[key.first][b]) next[{b, key.second + weight(b)}] += cnt;
      cur = std::move(next);
    }
    for (auto& [key, cnt] : cur) {
      out.by_weight[key.second] += cnt;
      out.by_top[dimvec(key.first)] += cnt;
    }
    return out;
  }

  // Composition series 0 = N_0 < N_1 < ... < M with N_k / N_{k-1} = S_{i_k}.
  Integer count_compseries(const Sequence& s) const {
    std::map<std::size_t, Integer> cur{{zero(), 1}};
    for (int letter : s) cur = step(cur, letter);
    auto it = cur.find(full());
    return it == cur.end() ? Integer(0) : it->second;
  }

  // Nonzero counts for every sequence in Seq(dim M), by a walk over the prefix trie.
  std::map<Sequence, Integer> compseries_counts() const {
    std::map<Sequence, Integer> out;
    std::vector<int> left(dims_);
    Sequence prefix;
    walk({{zero(), 1}}, left, prefix, out);
    return out;
  }

 private:
  Weight weight(std::size_t k) const {
    auto d = dimvec(k);
    return Weight::from_alpha(m_, std::vector<long>(d.begin(), d.end()));
  }

  std::map<std::size_t, Integer> step(const std::map<std::size_t, Integer>& cur, int letter) const {
    std::map<std::size_t, Integer> next;
    for (auto& [a, cnt] : cur)
      for (auto [v, b] : up_[a])
        if (v == letter) next[b] += cnt;
    return next;
  }

  void walk(const std::map<std::size_t, Integer>& cur, std::vector<int>& left, Sequence& prefix,
            std::map<Sequence, Integer>& out) const {
    if (cur.empty()) return;
    if (std::all_of(left.begin(), left.end(), [](int x) { return x == 0; })) {
      out[prefix] = cur.begin()->second;
      return;
    }
    for (int v = 1; v <= static_cast<int>(left.size()); ++v) {
      if (!left[v - 1]) continue;
      --left[v - 1];
      prefix.push_back(v);
      walk(step(cur, v), left, prefix, out);
      prefix.pop_back();
      ++left[v - 1];
    }
  }

  bool invariant(int v, int w, const std::vector<int>& pick) const {
    auto& src = spaces_[v - 1][pick[v - 1]];
    auto& dst = spaces_[w - 1][pick[w - 1]];
    auto& a = maps_.at({v, w});
    for (auto& row : src)
      if (!fp::in_span(fp::apply(a, row, F_), dst, F_)) return false;
    return true;
  }

  void enumerate(int v, std::vector<int>& pick, const Deadline& deadline) {
    int n = static_cast<int>(dims_.size());
    if (v > n) {
      subs_.push_back(pick);
      return;
    }
    deadline.check();
    for (std::size_t k = 0; k < spaces_[v - 1].size(); ++k) {
      pick[v - 1] = static_cast<int>(k);
      if (v > 1 && (!invariant(v - 1, v, pick) || !invariant(v, v - 1, pick))) continue;
      enumerate(v + 1, pick, deadline);
    }
  }

  int m_;
  fp::Field F_;
  std::vector<int> dims_;
  std::vector<std::vector<fp::Mat>> spaces_;
  std::map<Arrow, fp::Mat> maps_;
  std::vector<std::vector<int>> subs_;
  std::map<std::vector<int>, std::vector<std::size_t>> by_dims_;
  std::vector<std::vector<std::pair<int, std::size_t>>> up_;
};

// ---- Euler characteristics from point counts -----------------------------

struct NotPolynomialCount : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ChiEstimate {
  std::vector<std::pair<long, Integer>> counts;
  std::vector<Rational> poly;  // coefficients of 1, q, q^2, ...
  Integer chi;
};

inline ChiEstimate euler_interpolate(std::vector<std::pair<long, Integer>> counts, int degree_bound) {
  std::sort(counts.begin(), counts.end());
  for (std::size_t i = 1; i < counts.size(); ++i)
    if (counts[i].first == counts[i - 1].first) throw std::invalid_argument("repeated sample point");
  std::size_t k = static_cast<std::size_t>(degree_bound) + 1;
  if (degree_bound < 0 || counts.size() < k) throw std::invalid_argument("too few sample points for the degree bound");
  // Newton divided differences on the first k points
  std::vector<Rational> xs, coef;
  for (std::size_t i = 0; i < k; ++i) xs.push_back(counts[i].first), coef.push_back(Rational(counts[i].second));
  for (std::size_t j = 1; j < k; ++j)
    for (std::size_t i = k - 1; i >= j; --i) coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
  auto eval = [&](const Rational& q) {
    Rational v = coef[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) v = v * (q - xs[i]) + coef[i];
    return v;
  };
  for (std::size_t i = k; i < counts.size(); ++i)
    if (eval(counts[i].first) != Rational(counts[i].second))
      throw NotPolynomialCount("point counts are not polynomial of degree <= " + std::to_string(degree_bound) +
                               " in q");
  ChiEstimate out;
  out.counts = counts;
  // expand the Newton form into monomial coefficients
  std::vector<Rational> poly{coef[k - 1]};
  for (std::size_t i = k - 1; i-- > 0;) {
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    for (std::size_t d = 0; d < poly.size(); ++d) {
      next[d + 1] += poly[d];
      next[d] -= poly[d] * xs[i];
    }
    next[0] += coef[i];
    poly = std::move(next);
  }
  while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
  out.poly = poly;
  Rational at1 = eval(1);
  if (!is_integer(at1)) throw NotPolynomialCount("interpolated Euler characteristic is not an integer");
  out.chi = at1.get_num();
  return out;
}

// Default: one sample beyond the fitted degree.
inline int default_degree_bound(const std::vector<long>& primes) { return static_cast<int>(primes.size()) - 2; }

// Interpolates a family of counts keyed alike; absent keys count zero.
template <class Key>
std::map<Key, Integer> euler_characteristics(const std::vector<long>& primes,
                                             const std::vector<std::map<Key, Integer>>& per_prime, int bound) {
  std::set<Key> keys;
  for (auto& c : per_prime)
    for (auto& [k, v] : c) keys.insert(k);
  std::map<Key, Integer> out;
  for (auto& k : keys) {
    std::vector<std::pair<long, Integer>> pts;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      auto it = per_prime[i].find(k);
      pts.emplace_back(primes[i], it == per_prime[i].end() ? Integer(0) : it->second);
    }
    auto chi = euler_interpolate(pts, bound).chi;
    if (chi != 0) out[k] = chi;
  }
  return out;
}

template <class F>
auto per_prime(const std::vector<long>& primes, F&& f) {
  using R = decltype(f(primes.at(0)));
  std::vector<std::future<R>> jobs;
  for (long p : primes) jobs.push_back(std::async(std::launch::async, f, p));
  std::vector<R> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

inline std::map<Sequence, Integer> compseries_chi(const QuiverRep& M, const std::vector<long>& primes,
                                                  const Deadline& deadline = {}) {
  auto counts = per_prime(primes, [&](long p) { return SubmoduleLattice(M, p, deadline).compseries_counts(); });
  return euler_characteristics(primes, counts, default_degree_bound(primes));
}

inline std::map<std::vector<int>, Integer> submodule_chi(const QuiverRep& M, const std::vector<long>& primes) {
  auto counts = per_prime(primes, [&](long p) { return SubmoduleLattice(M, p).submodule_counts(); });
  return euler_characteristics(primes, counts, default_degree_bound(primes));
}

struct ChainChi {
  std::map<Weight, Integer> by_weight;
  std::map<std::vector<int>, Integer> by_top;
};

inline ChainChi chain_chi(const QuiverRep& M, int n, const std::vector<long>& primes) {
  auto counts = per_prime(primes, [&](long p) { return SubmoduleLattice(M, p).chains(n); });
  std::vector<std::map<Weight, Integer>> w;
  std::vector<std::map<std::vector<int>, Integer>> t;
  for (auto& c : counts) w.push_back(c.by_weight), t.push_back(c.by_top);
  int bound = default_degree_bound(primes);
  return {euler_characteristics(primes, w, bound), euler_characteristics(primes, t, bound)};
}

// sum over Seq(dim M) of chi(F_i(M)) Dbar_i
inline RatFunc flag_function(const QuiverRep& M, const std::vector<long>& primes, const Deadline& deadline = {}) {
  if (!M.satisfies_relation()) throw std::invalid_argument("module violates the preprojective relation");
  if (M.total_dim() == 0) return RatFunc(M.m(), 1);
  SeqCoeffs c;
  for (auto& [s, chi] : compseries_chi(M, primes, deadline)) c[s] = Rational(chi);
  return measure_dbar(M.m(), c, M.dim_vector());
}

struct GenericDisagreement : std::runtime_error {
  GenericDisagreement(const std::string& a, const std::string& b)
      : std::runtime_error("generic evaluations disagree: " + a + " vs " + b), first(a), second(b) {}
  std::string first, second;
};

// flag_function at two parameter values, which must agree.
template <class Build>
RatFunc generic_flag_function(Build&& build, const Rational& a1, const Rational& a2, const std::vector<long>& primes,
                              const Deadline& deadline = {}) {
  auto f1 = flag_function(build(a1), primes, deadline);
  auto f2 = flag_function(build(a2), primes, deadline);
  if (!(f1 == f2)) throw GenericDisagreement(f1.to_string(), f2.to_string());
  return f1;
}

// -dim N over submodules N, stable across the given primes.
inline std::set<Weight> pol_M(const QuiverRep& M, const std::vector<long>& primes) {
  std::optional<std::set<Weight>> first;
  for (long p : primes) {
    std::set<Weight> pts;
    for (auto& [d, cnt] : SubmoduleLattice(M, p).submodule_counts())
      if (cnt != 0) pts.insert(-Weight::from_alpha(M.m(), std::vector<long>(d.begin(), d.end())));
    if (first && *first != pts) throw std::runtime_error("submodule dimension vectors depend on q");
    first = std::move(pts);
  }
  return first.value_or(std::set<Weight>{});
}

// ---- Harder-Narasimhan certificates --------------------------------------

// Lusztig data indexed by positive roots in the order e1-e2, ..., e1-em, e2-e3, ...
using LusztigDatum = std::vector<long>;

inline Weight datum_weight(int m, const LusztigDatum& n) {
  auto roots = positive_roots(m);
  if (n.size() != roots.size()) throw std::invalid_argument("datum length must be the number of positive roots");
  Weight w = Weight::zero(m);
  for (std::size_t k = 0; k < roots.size(); ++k) w += n[k] * Weight::root(m, roots[k].first, roots[k].second);
  return w;
}

struct FiltrationLayer {
  std::pair<int, int> root;  // e_i - e_j
  long multiplicity;
  // spanning vectors of the layer M_beta at each vertex (columns in the vertex space)
  std::vector<std::vector<std::vector<Rational>>> span;
};

struct FiltrationCertificate {
  std::vector<FiltrationLayer> layers;
};

struct CertificateError : std::runtime_error {
  CertificateError(std::size_t layer, const std::string& why)
      : std::runtime_error("layer " + std::to_string(layer) + ": " + why), index(layer) {}
  std::size_t index;
};

namespace detail {

inline std::size_t qrank(std::vector<std::vector<Rational>> rows) {
  std::size_t rk = 0, cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rk < rows.size(); ++c) {
    std::size_t p = rk;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rk]);
    for (std::size_t r = rk + 1; r < rows.size(); ++r) {
      Rational f = rows[r][c] / rows[rk][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rk][k];
    }
    ++rk;
  }
  return rk;
}

inline std::vector<Rational> qapply(const QMatrix& a, const std::vector<Rational>& v) {
  std::vector<Rational> out(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

using Span = std::vector<std::vector<Rational>>;

inline std::size_t span_dim(const Span& s) { return qrank(s); }

inline Span join(Span a, const Span& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace detail

inline LusztigDatum hn_verify(const QuiverRep& M, const FiltrationCertificate& cert) {
  using detail::Span;
  int m = M.m(), n = M.vertices();
  auto roots = positive_roots(m);
  auto root_index = [&](std::pair<int, int> r) {
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) throw std::invalid_argument("not a positive root");
    return static_cast<std::size_t>(it - roots.begin());
  };
  std::vector<std::vector<Span>> layers;
  for (std::size_t k = 0; k < cert.layers.size(); ++k) {
    auto& L = cert.layers[k];
    if (static_cast<int>(L.span.size()) != n) throw CertificateError(k, "needs a spanning set at every vertex");
    if (k && root_index(L.root) <= root_index(cert.layers[k - 1].root))
      throw CertificateError(k, "roots are not strictly increasing in the convex order");
    layers.push_back(L.span);
  }
  std::vector<Span> bottom(n);
  LusztigDatum datum(roots.size(), 0);
  for (std::size_t k = 0; k < layers.size(); ++k) {
    auto& U = layers[k];
    const std::vector<Span>& W = k + 1 < layers.size() ? layers[k + 1] : bottom;
    if (k == 0)
      for (int v = 1; v <= n; ++v)
        if (static_cast<int>(detail::span_dim(U[v - 1])) != M.dim(v))
          throw CertificateError(k, "the first layer must be the whole module");
    for (int v = 1; v <= n; ++v) {
      if (detail::span_dim(detail::join(U[v - 1], W[v - 1])) != detail::span_dim(U[v - 1]))
        throw CertificateError(k, "next layer is not contained in this one");
    }
    for (auto h : M.arrows()) {
      auto a = M.map(h);
      for (auto& u : U[h.from - 1])
        if (detail::span_dim(detail::join(U[h.to - 1], {detail::qapply(a, u)})) != detail::span_dim(U[h.to - 1]))
          throw CertificateError(k, "not a submodule along arrow " + QuiverRep::name(h));
    }
    auto [i, j] = cert.layers[k].root;
    long mult = cert.layers[k].multiplicity;
    for (int v = 1; v <= n; ++v) {
      long want = (v >= i && v < j) ? mult : 0;
      long got = static_cast<long>(detail::span_dim(U[v - 1])) - static_cast<long>(detail::span_dim(W[v - 1]));
      if (got != want) throw CertificateError(k, "subquotient has the wrong dimension vector");
    }
    // brick i <- i+1 <- ... <- j-1: leftward arrows iso, rightward arrows zero
    for (auto h : M.arrows()) {
      if (std::min(h.from, h.to) < i || std::max(h.from, h.to) > j - 1) continue;
      auto a = M.map(h);
      Span img;
      for (auto& u : U[h.from - 1]) img.push_back(detail::qapply(a, u));
      long rk = static_cast<long>(detail::span_dim(detail::join(W[h.to - 1], img))) -
                static_cast<long>(detail::span_dim(W[h.to - 1]));
      long want = h.to < h.from ? mult : 0;
      if (rk != want) throw CertificateError(k, "subquotient is not a sum of bricks along " + QuiverRep::name(h));
    }
    datum[root_index(cert.layers[k].root)] = mult;
  }
  if (!(datum_weight(m, datum) == M.dim_vector())) throw CertificateError(layers.size(), "layers do not exhaust M");
  return datum;
}

}  // namespace mvtk
