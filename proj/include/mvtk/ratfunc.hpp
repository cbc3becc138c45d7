#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "mvtk/roota.hpp"

namespace mvtk {

// Primitive integer linear form with positive first nonzero coefficient.
using LinearForm = std::vector<long>;

inline MultiPoly to_poly(const RingPtr& ring, const LinearForm& l) {
  MultiPoly p(ring);
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i]) p += MultiPoly::variable(ring, i) * Rational(l[i]);
  return p;
}

// Splits a nonzero homogeneous linear polynomial as scale * primitive form.
inline std::pair<Rational, LinearForm> split_linear(const MultiPoly& p) {
  if (p.is_zero()) throw std::domain_error("zero linear form");
  std::size_t n = p.ring()->size();
  std::vector<Rational> c(n, 0);
  for (auto& t : p.terms()) {
    if (t.mono.deg != 1) throw std::domain_error("not a linear form: " + p.to_string());
    for (std::size_t i = 0; i < n; ++i)
      if (t.mono.exp[i]) c[i] = t.coef;
  }
  Integer den = 1, g = 0;
  for (auto& q : c) den = lcm(den, Integer(q.get_den()));
  std::vector<Integer> ints;
  for (auto& q : c) {
    Integer z = Integer(q * den);
    ints.push_back(z);
    g = gcd(g, z);
  }
  for (auto& z : ints)
    if (z != 0) {
      if (z < 0) g = -g;
      break;
    }
  LinearForm l;
  for (auto& z : ints) l.push_back(Integer(z / g).get_si());
  return {Rational(g) / Rational(den), l};
}

// Exact quotient p / f, or nothing if f does not divide p.
inline std::optional<MultiPoly> try_divide(const MultiPoly& p, const MultiPoly& f) {
  auto ord = TermOrder::lex(p.ring()->size());
  MultiPoly rem = p, quo(p.ring());
  const Term lf = f.leading(ord);
  while (!rem.is_zero()) {
    const Term& lr = rem.leading(ord);
    if (!lf.mono.divides(lr.mono)) return std::nullopt;
    auto q = MultiPoly::monomial(p.ring(), lf.mono.quotient_of(lr.mono), lr.coef / lf.coef);
    quo += q;
    rem -= q * f;
  }
  return quo;
}

// Polynomial over a product of linear forms, in alpha1..alpha_{m-1}.
class RatFunc {
 public:
  explicit RatFunc(int m) : m_(m), num_(alpha_ring(m)) {}
  RatFunc(int m, const Rational& c) : m_(m), num_(MultiPoly::constant(alpha_ring(m), c)) {}
  explicit RatFunc(MultiPoly num) : m_(static_cast<int>(num.ring()->size()) + 1), num_(std::move(num)) {
    if (!same_ring(num_.ring(), alpha_ring(m_))) num_ = num_.in_ring(alpha_ring(m_));
  }

  // 1 / l for a nonzero linear form l.
  static RatFunc inverse(const MultiPoly& l) {
    auto [scale, form] = split_linear(l);
    int m = static_cast<int>(l.ring()->size()) + 1;
    RatFunc r(m, 1 / scale);
    r.den_[form] = 1;
    return r;
  }

  int m() const { return m_; }
  const MultiPoly& numerator() const { return num_; }
  const std::map<LinearForm, int>& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }

  MultiPoly denominator_poly() const {
    MultiPoly d = MultiPoly::constant(num_.ring(), 1);
    for (auto& [l, k] : den_) d *= to_poly(num_.ring(), l).pow(k);
    return d;
  }

  // deg numerator - deg denominator, for homogeneous numerators
  long degree() const {
    long d = num_.total_degree();
    for (auto& [l, k] : den_) d -= k;
    return d;
  }

  RatFunc& operator*=(const RatFunc& o) {
    num_ *= o.num_;
    for (auto& [l, k] : o.den_) den_[l] += k;
    cancel();
    return *this;
  }
  RatFunc& operator*=(const Rational& c) {
    num_ *= c;
    if (c == 0) den_.clear();
    return *this;
  }
  RatFunc& operator+=(const RatFunc& o) { return add(o, 1); }
  RatFunc& operator-=(const RatFunc& o) { return add(o, -1); }

  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator*(RatFunc a, const Rational& c) { return a *= c; }
  friend RatFunc operator*(const Rational& c, RatFunc a) { return a *= c; }
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator-(RatFunc a) { return a *= Rational(-1); }

  // Multiplies by a linear form, cancelling against the denominator when possible.
  RatFunc& mul_linear(const MultiPoly& l) {
    auto [scale, form] = split_linear(l);
    num_ *= scale;
    if (auto it = den_.find(form); it != den_.end()) {
      if (--it->second == 0) den_.erase(it);
    } else {
      num_ *= to_poly(num_.ring(), form);
    }
    return *this;
  }

  // Division by a product of linear forms is the only division supported.
  RatFunc divided_by_linear(const MultiPoly& l) const { return *this * inverse(l); }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return (a - b).is_zero(); }

  Rational evaluate(const std::vector<Rational>& alpha) const {
    Rational d = 1;
    for (auto& [l, k] : den_) {
      Rational v = 0;
      for (std::size_t i = 0; i < l.size(); ++i) v += l[i] * alpha[i];
      if (v == 0) throw std::domain_error("pole at evaluation point");
      for (int e = 0; e < k; ++e) d *= v;
    }
    return num_.evaluate(alpha) / d;
  }

  std::string to_string() const {
    if (den_.empty()) return num_.to_string();
    std::string d;
    for (auto& [l, k] : den_) {
      if (!d.empty()) d += "*";
      d += "(" + to_poly(num_.ring(), l).to_string() + ")";
      if (k > 1) d += "^" + std::to_string(k);
    }
    return "(" + num_.to_string() + ")/(" + d + ")";
  }

 private:
  RatFunc& add(const RatFunc& o, int sign) {
    if (o.m_ != m_) throw std::invalid_argument("rank mismatch");
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = o;
      if (sign < 0) num_ *= Rational(-1);
      return *this;
    }
    std::map<LinearForm, int> common = den_;
    for (auto& [l, k] : o.den_) common[l] = std::max(common[l], k);
    MultiPoly a = num_ * cofactor(common, den_);
    MultiPoly b = o.num_ * cofactor(common, o.den_);
    num_ = sign > 0 ? a + b : a - b;
    den_ = std::move(common);
    cancel();
    return *this;
  }

  MultiPoly cofactor(const std::map<LinearForm, int>& common, const std::map<LinearForm, int>& own) const {
    MultiPoly c = MultiPoly::constant(num_.ring(), 1);
    for (auto& [l, k] : common) {
      auto it = own.find(l);
      int have = it == own.end() ? 0 : it->second;
      if (k > have) c *= to_poly(num_.ring(), l).pow(k - have);
    }
    return c;
  }

  void cancel() {
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
      auto f = to_poly(num_.ring(), it->first);
      while (it->second > 0 && vanishes_on(it->first)) {
        auto q = try_divide(num_, f);
        if (!q) break;
        num_ = std::move(*q);
        --it->second;
      }
      it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
  }

  // Cheap necessary test for l | num: num is zero at a fixed point of {l = 0}.
  bool vanishes_on(const LinearForm& l) const {
    std::size_t pivot = 0;
    while (l[pivot] == 0) ++pivot;
    std::vector<Rational> pt(l.size());
    Rational rest = 0;
    for (std::size_t i = 0; i < l.size(); ++i)
      if (i != pivot) {
        pt[i] = make_rational(long(7919 * (i + 3) % 1009) + 1, long(i) + 2);
        rest += l[i] * pt[i];
      }
    pt[pivot] = -rest / l[pivot];
    return num_.evaluate(pt) == 0;
  }

  int m_;
  MultiPoly num_;
  std::map<LinearForm, int> den_;
};

inline std::ostream& operator<<(std::ostream& os, const RatFunc& r) { return os << r.to_string(); }

}  // namespace mvtk
