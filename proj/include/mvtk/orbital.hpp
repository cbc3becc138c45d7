#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "mvtk/ideal.hpp"
#include "mvtk/matrix.hpp"
#include "mvtk/preproj.hpp"

namespace mvtk {

// ---- tableaux ------------------------------------------------------------

class Tableau {
 public:
  Tableau(std::vector<std::vector<int>> rows, int m) : rows_(std::move(rows)), m_(m) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].empty()) throw std::invalid_argument("empty tableau row");
      if (r && rows_[r].size() > rows_[r - 1].size()) throw std::invalid_argument("row lengths must weakly decrease");
      for (std::size_t c = 0; c < rows_[r].size(); ++c) {
        int x = rows_[r][c];
        if (x < 1 || x > m) throw std::invalid_argument("entry out of range 1.." + std::to_string(m));
        if (c && x < rows_[r][c - 1]) throw std::invalid_argument("rows must weakly increase");
        if (r && x <= rows_[r - 1][c]) throw std::invalid_argument("columns must strictly increase");
      }
    }
    if (static_cast<int>(rows_.size()) >= m) throw std::invalid_argument("at most m-1 rows");
  }

  int m() const { return m_; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }

  // lambda, padded to m entries
  std::vector<int> shape() const { return restricted_shape(m_); }

  // mu: number of boxes filled with each value
  std::vector<int> content() const {
    std::vector<int> mu(m_, 0);
    for (auto& row : rows_)
      for (int x : row) ++mu[x - 1];
    return mu;
  }

  // shape of the subtableau of entries <= i, padded to m entries
  std::vector<int> restricted_shape(int i) const {
    std::vector<int> sh(m_, 0);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      sh[r] = static_cast<int>(std::count_if(rows_[r].begin(), rows_[r].end(), [&](int x) { return x <= i; }));
    return sh;
  }

  Weight weight() const {
    auto l = shape(), mu = content();
    std::vector<long> d;
    for (int i = 0; i < m_; ++i) d.push_back(l[i] - mu[i]);
    return Weight(d);
  }

  std::string to_string() const {
    std::string s;
    for (auto& row : rows_) {
      if (!s.empty()) s += "|";
      for (int x : row) s += std::to_string(x);
    }
    return s;
  }

 private:
  std::vector<std::vector<int>> rows_;
  int m_;
};

// Every semistandard tableau of shape lambda and content mu.
inline std::vector<Tableau> all_tableaux(const std::vector<int>& lambda, const std::vector<int>& mu) {
  int m = static_cast<int>(mu.size());
  std::vector<std::vector<int>> rows;
  for (int len : lambda)
    if (len > 0) rows.emplace_back(len, 0);
  std::vector<Tableau> out;
  std::vector<int> left = mu;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) cells.emplace_back(r, c);
  std::function<void(std::size_t)> fill = [&](std::size_t k) {
    if (k == cells.size()) {
      if (std::all_of(left.begin(), left.end(), [](int x) { return x == 0; })) out.emplace_back(rows, m);
      return;
    }
    auto [r, c] = cells[k];
    int lo = 1;
    if (c) lo = std::max(lo, rows[r][c - 1]);
    if (r) lo = std::max(lo, rows[r - 1][c] + 1);
    for (int x = lo; x <= m; ++x) {
      if (!left[x - 1]) continue;
      --left[x - 1];
      rows[r][c] = x;
      fill(k + 1);
      ++left[x - 1];
    }
  };
  if (static_cast<int>(rows.size()) < m) fill(0);
  return out;
}

// n(tau)_{e_i - e_j} = number of j's in row i.
inline LusztigDatum lusztig_datum(const Tableau& t) {
  LusztigDatum n;
  for (auto [i, j] : positive_roots(t.m())) {
    long c = 0;
    if (i <= static_cast<int>(t.rows().size()))
      c = std::count(t.rows()[i - 1].begin(), t.rows()[i - 1].end(), j);
    n.push_back(c);
  }
  return n;
}

// ---- the chart T_mu cap n ------------------------------------------------

struct ChartCoord {
  int bi, bj, k;              // block (bi, bj), k-th column of its last row
  std::size_t row, col;       // position in the N x N matrix, 0-based
};

class TmuChart {
 public:
  explicit TmuChart(std::vector<int> mu) : mu_(std::move(mu)) {
    int m = static_cast<int>(mu_.size());
    start_.push_back(0);
    for (int x : mu_) {
      if (x < 1) throw std::invalid_argument("mu entries must be positive");
      start_.push_back(start_.back() + x);
    }
    for (int bi = 1; bi <= m; ++bi)
      for (int bj = bi + 1; bj <= m; ++bj)
        for (int k = 1; k <= std::min(mu_[bi - 1], mu_[bj - 1]); ++k)
          coords_.push_back({bi, bj, k, start_[bi] - 1, start_[bj - 1] + std::size_t(k) - 1});
    std::sort(coords_.begin(), coords_.end(),
              [](auto& x, auto& y) { return std::pair(x.row, x.col) < std::pair(y.row, y.col); });
    ring_ = make_ring("a", coords_.size());
  }

  int m() const { return static_cast<int>(mu_.size()); }
  const std::vector<int>& mu() const { return mu_; }
  std::size_t N() const { return start_.back(); }
  std::size_t level_size(int i) const { return start_.at(i); }
  const RingPtr& ring() const { return ring_; }
  const std::vector<ChartCoord>& coords() const { return coords_; }

  Weight weight(std::size_t v) const { return Weight::root(m(), coords_[v].bi, coords_[v].bj); }
  std::vector<long> heights() const {
    std::vector<long> h;
    for (auto& c : coords_) h.push_back(c.bj - c.bi);
    return h;
  }
  std::vector<MultiPoly> weight_forms() const {
    std::vector<MultiPoly> w;
    for (std::size_t v = 0; v < coords_.size(); ++v) w.push_back(weight(v).linear_form());
    return w;
  }

  // J_mu + x
  Matrix<MultiPoly> matrix() const {
    MultiPoly zero(ring_), one = MultiPoly::constant(ring_, 1);
    Matrix<MultiPoly> A(N(), N(), zero);
    for (int b = 1; b <= m(); ++b)
      for (std::size_t r = start_[b - 1]; r + 1 < start_[b]; ++r) A(r, r + 1) = one;
    for (std::size_t v = 0; v < coords_.size(); ++v) A(coords_[v].row, coords_[v].col) = MultiPoly::variable(ring_, v);
    return A;
  }

  // t^mu - X(t) as an m x m matrix over ring + {t}; row j, column i < j carries
  // -sum_k a_{(i,j),k} t^{k-1}.
  Matrix<MultiPoly> phi(const RingPtr& with_t) const {
    std::size_t t = with_t->size() - 1;
    MultiPoly zero(with_t);
    Matrix<MultiPoly> P(m(), m(), zero);
    auto T = MultiPoly::variable(with_t, t);
    for (int i = 0; i < m(); ++i) P(i, i) = T.pow(mu_[i]);
    for (std::size_t v = 0; v < coords_.size(); ++v) {
      auto& c = coords_[v];
      P(c.bj - 1, c.bi - 1) -= MultiPoly::variable(with_t, v) * T.pow(c.k - 1);
    }
    return P;
  }

  RingPtr ring_with_t() const {
    auto names = ring_->names();
    names.push_back("t");
    return make_ring(names);
  }

  // product of the weights of the chart coordinates
  MultiPoly p_mu() const { return mvtk::p_mu(mu_); }

 private:
  std::vector<int> mu_;
  std::vector<std::size_t> start_;
  std::vector<ChartCoord> coords_;
  RingPtr ring_;
};

// ---- rank conditions -----------------------------------------------------

enum class RankForm {
  Powers,   // minors of powers of the leading blocks
  Fitting,  // t-adic orders of minors of t^mu - X(t)
};

struct RankConditions {
  std::vector<MultiPoly> closure;
  // each group lists candidates, at least one of which is nonzero on the component
  std::vector<std::vector<MultiPoly>> witness_groups;
  std::vector<int> group_level;
  std::vector<int> closure_level;
};

namespace detail {

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  // contiguous runs first
  std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) {
    auto gap = [](auto& s) { return s.empty() ? 0 : s.back() - s.front() + 1 - s.size(); };
    return gap(a) < gap(b);
  });
  return out;
}

inline bool has_zero_line(const Matrix<MultiPoly>& a, const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) {
  for (auto r : rows)
    if (std::all_of(cols.begin(), cols.end(), [&](auto c) { return a(r, c).is_zero(); })) return true;
  for (auto c : cols)
    if (std::all_of(rows.begin(), rows.end(), [&](auto r) { return a(r, c).is_zero(); })) return true;
  return false;
}

inline std::vector<MultiPoly> all_minors(const Matrix<MultiPoly>& a, std::size_t size, std::size_t k) {
  std::vector<MultiPoly> out;
  auto one = MultiPoly::constant(a.zero().ring(), 1);
  auto sets = subsets(size, k);
  for (auto& rs : sets)
    for (auto& cs : sets) {
      if (has_zero_line(a, rs, cs)) continue;
      auto d = minor(a, rs, cs, one);
      if (!d.is_zero()) out.push_back(std::move(d));
    }
  return out;
}

inline Matrix<MultiPoly> leading_block(const Matrix<MultiPoly>& a, std::size_t s) {
  std::vector<std::size_t> idx(s);
  std::iota(idx.begin(), idx.end(), 0);
  return a.submatrix(idx, idx);
}

// f = sum_e c_e t^e, as the map e -> c_e over `target`.
inline std::map<unsigned, MultiPoly> split_by_variable(const MultiPoly& f, std::size_t var, const RingPtr& target) {
  std::map<unsigned, std::vector<Term>> parts;
  for (auto t : f.terms()) {
    unsigned e = t.mono.exp[var];
    t.mono.exp[var] = 0;
    t.mono.deg -= e;
    parts[e].push_back(std::move(t));
  }
  std::map<unsigned, MultiPoly> out;
  std::vector<std::size_t> map(target->size());
  std::iota(map.begin(), map.end(), 0);
  for (auto& [e, terms] : parts) {
    auto big = MultiPoly::from_terms(f.ring(), std::move(terms));
    out.emplace(e, big.remap(target, map));
  }
  return out;
}

inline void push_unique(std::vector<MultiPoly>& v, MultiPoly f) {
  if (f.is_zero()) return;
  for (auto& g : v)
    if (g == f || g == -f) return;
  v.push_back(std::move(f));
}

}  // namespace detail

// rank (A_i)^r <= R_{i,r} = sum_j max(sh_j - r, 0) for every level i; the open
// conditions ask for equality.
inline RankConditions rank_condition_ideal(const Tableau& tau, RankForm form = RankForm::Powers) {
  TmuChart chart(tau.content());
  RankConditions rc;
  int m = tau.m();
  if (form == RankForm::Powers) {
    auto A = chart.matrix();
    for (int i = 1; i <= m; ++i) {
      std::size_t s = chart.level_size(i);
      auto sh = tau.restricted_shape(i);
      auto Ai = detail::leading_block(A, s);
      auto power = Ai;
      for (int r = 1; r <= std::max(sh[0], 1); ++r) {
        if (r > 1) power = power * Ai;
        std::size_t R = 0;
        for (int x : sh) R += std::max(x - r, 0);
        for (auto& g : detail::all_minors(power, s, R + 1)) detail::push_unique(rc.closure, g);
        rc.closure_level.resize(rc.closure.size(), i);
        if (R >= 1) {
          std::vector<MultiPoly> group;
          for (auto& g : detail::all_minors(power, s, R)) detail::push_unique(group, g);
          rc.witness_groups.push_back(std::move(group));
          rc.group_level.push_back(i);
        }
      }
    }
    return rc;
  }
  auto Rt = chart.ring_with_t();
  std::size_t t = Rt->size() - 1;
  auto P = chart.phi(Rt);
  for (int i = 1; i <= m; ++i) {
    auto sh = tau.restricted_shape(i);
    std::vector<int> parts(sh.begin(), sh.begin() + i);
    std::sort(parts.begin(), parts.end());
    auto Pi = detail::leading_block(P, i);
    int e = 0;
    for (int k = 1; k < i; ++k) {
      e += parts[k - 1];
      std::vector<MultiPoly> group;
      bool automatic = false;
      for (auto& d : detail::all_minors(Pi, i, k)) {
        auto coeffs = detail::split_by_variable(d, t, chart.ring());
        for (auto& [deg, c] : coeffs) {
          if (static_cast<int>(deg) < e) detail::push_unique(rc.closure, c);
          if (static_cast<int>(deg) == e) {
            if (c.is_constant()) automatic = true;
            detail::push_unique(group, c);
          }
        }
        rc.closure_level.resize(rc.closure.size(), i);
      }
      if (!automatic) {
        rc.witness_groups.push_back(std::move(group));
        rc.group_level.push_back(i);
      }
    }
  }
  return rc;
}

// ---- the generalized orbital variety ---------------------------------------

inline std::string seconds_since(std::chrono::steady_clock::time_point t0) {
  auto s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return std::to_string(static_cast<long>(s * 1000)) + " ms";
}

struct DimensionCheckFailed : std::runtime_error {
  DimensionCheckFailed(std::size_t got, std::size_t want, std::vector<MultiPoly> w)
      : std::runtime_error("orbital ideal has dimension " + std::to_string(got) + ", expected " +
                           std::to_string(want) + "; witnesses used: " + list(w)),
        witnesses(std::move(w)) {}
  static std::string list(const std::vector<MultiPoly>& w) {
    std::string s;
    for (auto& f : w) s += (s.empty() ? "" : ", ") + f.to_string();
    return s.empty() ? "none" : s;
  }
  std::vector<MultiPoly> witnesses;
};

struct OrbitalIdeal {
  TmuChart chart;
  GroebnerBasis basis;
  std::string provenance;
  std::size_t dimension;
  std::vector<MultiPoly> witnesses;

  const std::vector<MultiPoly>& generators() const { return basis.polys(); }
  bool contains_all(const std::vector<MultiPoly>& fs) const { return basis.contains_all(fs); }
};

struct OrbitalOptions {
  RankForm form = RankForm::Powers;
  Deadline deadline;
  std::function<void(const std::string&)> log;
};

// Closure conditions level by level, each level saturated by one witness per open
// condition; the result must have dimension rho(lambda - mu).
inline OrbitalIdeal orbital_ideal(const Tableau& tau, const OrbitalOptions& opt = {}) {
  TmuChart chart(tau.content());
  auto rc = rank_condition_ideal(tau, opt.form);
  auto w = chart.heights();
  auto ord = TermOrder::weighted(w);
  auto say = [&](const std::string& s) {
    if (opt.log) opt.log(s);
  };
  std::size_t expected = static_cast<std::size_t>(tau.weight().height());
  std::vector<MultiPoly> gens;
  GroebnerBasis gb = groebner_basis({MultiPoly(chart.ring())}, ord, opt.deadline);
  std::vector<MultiPoly> used;
  auto saturate_by = [&](const std::vector<MultiPoly>& fs, const std::string& what) {
    auto t0 = std::chrono::steady_clock::now();
    std::set<std::size_t, std::greater<>> vars;
    for (auto& f : fs) {
      if (f.terms().size() != 1) {
        gens = saturate(gens, f, SaturationMethod::Bayer, w, opt.deadline);
        continue;
      }
      for (std::size_t k = 0; k < f.ring()->size(); ++k)
        if (f.terms()[0].mono.exp[k]) vars.insert(k);
    }
    for (auto k : vars)
      gens = saturate(gens, MultiPoly::variable(chart.ring(), k), SaturationMethod::Elimination, {}, opt.deadline);
    gb = groebner_basis(gens, ord, opt.deadline);
    gens = gb.polys();
    say(what + ", " + std::to_string(gens.size()) + " generators, " + seconds_since(t0));
  };
  for (int i = 1; i <= tau.m(); ++i) {
    std::size_t added = 0;
    for (std::size_t k = 0; k < rc.closure.size(); ++k)
      if (rc.closure_level[k] == i && !gb.normal_form(rc.closure[k]).is_zero()) {
        gens.push_back(rc.closure[k]);
        ++added;
      }
    if (added) {
      auto t0 = std::chrono::steady_clock::now();
      gb = groebner_basis(gens, ord, opt.deadline);
      gens = gb.polys();
      say("level " + std::to_string(i) + ": " + std::to_string(added) + " closure conditions, " +
          std::to_string(gens.size()) + " generators, " + seconds_since(t0));
      if (!used.empty()) {
        saturate_by(used, "level " + std::to_string(i) + ": resaturated by earlier witnesses");
      }
    }
    for (std::size_t g = 0; g < rc.witness_groups.size(); ++g) {
      if (rc.group_level[g] != i) continue;
      std::optional<MultiPoly> best;
      bool automatic = false;
      for (auto& c : rc.witness_groups[g]) {
        auto r = gb.normal_form(c);
        if (r.is_zero()) continue;
        if (r.is_constant()) {
          automatic = true;
          break;
        }
        auto key = [](const MultiPoly& f) { return std::pair(f.terms().size(), f.total_degree()); };
        if (!best || key(r) < key(*best)) best = r;
      }
      if (automatic) continue;
      if (!best) throw DimensionCheckFailed(0, expected, used);
      if (std::any_of(used.begin(), used.end(), [&](auto& u) { return u == *best || u == -*best; })) continue;
      used.push_back(*best);
      if (gens.empty()) continue;
      saturate_by({*best}, "level " + std::to_string(i) + ": saturated by " + best->to_string());
    }
  }
  if (gb.is_unit()) throw DimensionCheckFailed(0, expected, used);
  std::size_t dim = dimension(gb);
  if (dim != expected) throw DimensionCheckFailed(dim, expected, used);
  return {chart, gb, "computed-saturation", dim, used};
}

inline MultiPoly orbital_multidegree(const OrbitalIdeal& Z) {
  return ideal_multidegree(Z.basis, Z.chart.weight_forms());
}

// mdeg / p(mu)
inline RatFunc dbar_mv(const OrbitalIdeal& Z) {
  RatFunc r(orbital_multidegree(Z));
  for (auto& l : p_mu_factors(Z.chart.mu())) r *= RatFunc::inverse(l);
  return r;
}

// ---- sections on the Pluecker side (mu = 1^m, lattice window p = 2) -----

// Columns 1..m carry [e_i t], columns m+1..2m carry [-e_i]; the row space of [I | A^T].
class PluckerModel {
 public:
  struct Minor {
    std::vector<int> cols;  // 1..2m, value-ordered: i before its barred copy
    std::string name;
    Weight weight;
    MultiPoly value;  // as a function on the chart
  };

  PluckerModel(const Tableau& tau, const OrbitalIdeal& Z, const Deadline& deadline = {}) : m_(tau.m()) {
    auto mu = tau.content();
    if (std::any_of(mu.begin(), mu.end(), [](int x) { return x != 1; }) || tau.shape()[0] > 2)
      throw std::invalid_argument("Pluecker sections need mu = (1,...,1) and lambda_1 <= 2");
    auto A = Z.chart.matrix();
    MultiPoly zero(Z.chart.ring()), one = MultiPoly::constant(Z.chart.ring(), 1);
    Matrix<MultiPoly> wide(m_, 2 * m_, zero);
    for (int i = 0; i < m_; ++i) {
      wide(i, i) = one;
      for (int j = 0; j < m_; ++j) wide(i, m_ + j) = A(j, i);
    }
    std::vector<std::size_t> rows(m_);
    std::iota(rows.begin(), rows.end(), 0);
    for (auto& cs : detail::subsets(2 * m_, m_)) {
      std::vector<int> cols;
      for (auto c : cs) cols.push_back(static_cast<int>(c) + 1);
      std::sort(cols.begin(), cols.end(), [&](int a, int b) { return value_key(a) < value_key(b); });
      std::vector<std::size_t> ordered;
      for (int c : cols) ordered.push_back(static_cast<std::size_t>(c - 1));
      auto d = Z.basis.normal_form(minor(wide, rows, ordered, one));
      if (d.is_zero()) continue;
      minors_.push_back({cols, name_of(cols), weight_of(cols), d});
    }
    std::sort(minors_.begin(), minors_.end(), [&](auto& a, auto& b) {
      return std::pair(a.cols.size() - count_barred(a.cols), a.cols) > std::pair(b.cols.size() - count_barred(b.cols), b.cols);
    });
    // kernel of C[Delta] -> C[Z], by elimination of the chart coordinates
    std::vector<std::string> names;
    for (auto& x : minors_)
      if (!x.value.is_constant()) names.push_back(x.name);
    auto chart_names = Z.chart.ring()->names();
    auto all = chart_names;
    all.insert(all.end(), names.begin(), names.end());
    RingPtr big = make_ring(all);
    std::vector<std::size_t> map(chart_names.size());
    std::iota(map.begin(), map.end(), 0);
    std::vector<MultiPoly> gens;
    for (auto& g : Z.generators()) gens.push_back(g.remap(big, map));
    for (auto& x : minors_)
      if (!x.value.is_constant()) gens.push_back(MultiPoly::variable(big, x.name) - x.value.remap(big, map));
    ring_ = make_ring(names);
    kernel_ = eliminate(gens, chart_names, deadline);
    finish(deadline);
  }

  // From given generators of the affine kernel in the named minors.
  PluckerModel(int m, std::vector<Minor> minors, std::vector<MultiPoly> kernel, const Deadline& deadline = {})
      : m_(m), minors_(std::move(minors)), kernel_(std::move(kernel)) {
    std::vector<std::string> names;
    for (auto& x : minors_)
      if (x.cols != identity_cols()) names.push_back(x.name);
    ring_ = make_ring(names);
    for (auto& k : kernel_) k = k.in_ring(ring_);
    finish(deadline);
  }

  const std::vector<Minor>& minors() const { return minors_; }
  const RingPtr& ring() const { return ring_; }
  const std::vector<MultiPoly>& kernel() const { return kernel_; }
  const GroebnerBasis& basis() const { return *gb_; }

  // weight of Delta_C: sum of e_val(c) over C, less e_1 + ... + e_m
  static Weight weight_of(int m, const std::vector<int>& cols) {
    Weight w = Weight::zero(m);
    for (int c : cols) w += Weight::epsilon(m, c > m ? c - m : c);
    for (int i = 1; i <= m; ++i) w -= Weight::epsilon(m, i);
    return w;
  }
  Weight weight_of(const std::vector<int>& cols) const { return weight_of(m_, cols); }

  // "d" followed by the columns; barred column i is the letter 'a' + i - 1
  std::string name_of(const std::vector<int>& cols) const {
    std::string s = "d";
    for (int c : cols) s += c > m_ ? char('a' + c - m_ - 1) : char('0' + c);
    return s;
  }

  std::vector<int> identity_cols() const {
    std::vector<int> c(m_);
    std::iota(c.begin(), c.end(), 1);
    return c;
  }

  // dim of degree-n sections = standard monomials of degree <= n (u pads the degree)
  std::size_t total(unsigned n) const {
    std::size_t count = 0;
    visit(n, [&](const Monomial&) { ++count; });
    return count;
  }

  // raw weights of a basis of degree-n sections
  std::map<Weight, std::size_t> sections(unsigned n) const {
    std::map<Weight, std::size_t> out;
    visit(n, [&](const Monomial& mono) {
      Weight w = Weight::zero(m_);
      for (std::size_t v = 0; v < weights_.size(); ++v) w += long(mono.exp[v]) * weights_[v];
      ++out[w];
    });
    return out;
  }

 private:
  static int value_key(int c, int m) { return c > m ? 2 * (c - m) + 1 : 2 * c; }
  int value_key(int c) const { return value_key(c, m_); }
  std::size_t count_barred(const std::vector<int>& cols) const {
    return std::count_if(cols.begin(), cols.end(), [&](int c) { return c > m_; });
  }

  template <class F>
  void visit(unsigned n, F&& f) const {
    std::vector<std::size_t> vars(ring_->size());
    std::iota(vars.begin(), vars.end(), 0);
    initial_ideal(*gb_).for_each_standard(vars, n, f);
  }

  void finish(const Deadline& deadline) {
    gb_ = groebner_basis(kernel_, TermOrder::grevlex(ring_->size()), deadline);
    for (auto& name : ring_->names()) {
      auto it = std::find_if(minors_.begin(), minors_.end(), [&](auto& x) { return x.name == name; });
      weights_.push_back(it->weight);
    }
  }

  int m_;
  std::vector<Minor> minors_;
  RingPtr ring_;
  std::vector<MultiPoly> kernel_;
  std::optional<GroebnerBasis> gb_;
  std::vector<Weight> weights_;
};

// sign * w + shift * n * nu, fixed once against the n = 1 submodule data.
struct WeightCalibration {
  int sign = 1;
  int shift = 0;
  Weight apply(const Weight& w, unsigned n, const Weight& nu) const {
    return long(sign) * w + long(shift) * long(n) * nu;
  }
};

inline std::map<Weight, Integer> calibrated(const std::map<Weight, std::size_t>& sections, const WeightCalibration& c,
                                           unsigned n, const Weight& nu) {
  std::map<Weight, Integer> out;
  for (auto& [w, k] : sections) out[c.apply(w, n, nu)] += Integer(static_cast<unsigned long>(k));
  return out;
}

struct CalibrationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The one choice of sign and shift matching the n = 1 data.
inline WeightCalibration calibrate(const std::map<Weight, std::size_t>& sections1,
                                   const std::map<Weight, Integer>& target1, const Weight& nu) {
  std::vector<WeightCalibration> hits;
  for (int sign : {1, -1})
    for (int shift : {0, 1}) {
      WeightCalibration c{sign, shift};
      if (calibrated(sections1, c, 1, nu) == target1) hits.push_back(c);
    }
  if (hits.size() != 1)
    throw CalibrationFailed(std::to_string(hits.size()) + " weight calibrations match the n = 1 data");
  return hits.front();
}

}  // namespace mvtk
