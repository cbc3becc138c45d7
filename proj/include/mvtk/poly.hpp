#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mvtk/monomial.hpp"
#include "mvtk/rational.hpp"

namespace mvtk {

class Ring {
 public:
  explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > kMaxVars) throw std::invalid_argument("too many variables");
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (!index_.emplace(names_[i], i).second)
        throw std::invalid_argument("duplicate variable " + names_[i]);
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> index(const std::string& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t at(const std::string& n) const {
    auto i = index(n);
    if (!i) throw std::invalid_argument("unknown variable " + n);
    return *i;
  }

  friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

// names prefix1..prefixN
inline RingPtr make_ring(const std::string& prefix, std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back(prefix + std::to_string(i));
  return make_ring(std::move(v));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

struct Term {
  Monomial mono;
  Rational coef;
};

class MultiPoly {
 public:
  explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

  static MultiPoly constant(RingPtr ring, const Rational& c) {
    MultiPoly p(std::move(ring));
    if (c != 0) p.terms_.push_back({Monomial{}, c});
    return p;
  }
  static MultiPoly variable(RingPtr ring, std::size_t i) {
    if (i >= ring->size()) throw std::out_of_range("variable index");
    MultiPoly p(std::move(ring));
    p.terms_.push_back({Monomial::variable(i), 1});
    return p;
  }
  static MultiPoly variable(RingPtr ring, const std::string& name) {
    auto i = ring->at(name);
    return variable(std::move(ring), i);
  }
  static MultiPoly monomial(RingPtr ring, const Monomial& m, const Rational& c = 1) {
    MultiPoly p(std::move(ring));
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }
  // Accepts unsorted terms with repeats.
  static MultiPoly from_terms(RingPtr ring, std::vector<Term> terms) {
    MultiPoly p(std::move(ring));
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rational constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
    return 0;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (auto& t : terms_) d = std::max<unsigned>(d, t.mono.deg);
    return d;
  }

  Rational coefficient(const Monomial& m) const {
    for (auto& t : terms_)
      if (t.mono == m) return t.coef;
    return 0;
  }

  const Term& leading(const TermOrder& ord) const {
    if (terms_.empty()) throw std::domain_error("leading term of zero");
    const Term* best = &terms_[0];
    for (auto& t : terms_)
      if (ord.compare(t.mono, best->mono) > 0) best = &t;
    return *best;
  }

  std::vector<std::size_t> support() const {
    std::uint64_t mask = 0;
    for (auto& t : terms_) mask |= t.mono.support_mask();
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < ring_->size(); ++i)
      if (mask >> i & 1) v.push_back(i);
    return v;
  }

  bool is_homogeneous(const std::vector<long>& w) const {
    auto ord = TermOrder::weighted(w);
    for (auto& t : terms_)
      if (ord.weighted_degree(t.mono) != ord.weighted_degree(terms_[0].mono)) return false;
    return true;
  }
  bool is_homogeneous() const { return is_homogeneous(std::vector<long>(ring_->size(), 1)); }

  MultiPoly& operator+=(const MultiPoly& o) { return *this = combine(*this, o, 1); }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = combine(*this, o, -1); }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly& operator*=(const Rational& c) {
    if (c == 0) terms_.clear();
    for (auto& t : terms_) t.coef *= c;
    return *this;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return combine(a, b, 1); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return combine(a, b, -1); }
  friend MultiPoly operator-(MultiPoly a) { return a *= Rational(-1); }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator+(MultiPoly a, const Rational& c) {
    return a + MultiPoly::constant(a.ring_, c);
  }
  friend MultiPoly operator-(MultiPoly a, const Rational& c) {
    return a - MultiPoly::constant(a.ring_, c);
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_ring(a, b);
    if (a.is_zero() || b.is_zero()) return MultiPoly(a.ring_);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (auto& s : a.terms_)
      for (auto& t : b.terms_) acc[s.mono * t.mono] += s.coef * t.coef;
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) out.push_back({m, c});
    MultiPoly p(a.ring_);
    p.terms_ = std::move(out);
    p.sort();
    return p;
  }

  MultiPoly pow(unsigned e) const {
    MultiPoly r = constant(ring_, 1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (!same_ring(a.ring_, b.ring_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef)
        return false;
    return true;
  }

  // Substitutes values[i] for variable i. T needs +, *, and construction from Rational.
  template <class T, class FromRational>
  T evaluate(const std::vector<T>& values, FromRational from) const {
    if (values.size() < ring_->size()) throw std::invalid_argument("too few values");
    T sum = from(Rational(0));
    for (auto& t : terms_) {
      T prod = from(t.coef);
      for (std::size_t i = 0; i < ring_->size(); ++i)
        for (unsigned e = 0; e < t.mono.exp[i]; ++e) prod = prod * values[i];
      sum = sum + prod;
    }
    return sum;
  }

  Rational evaluate(const std::vector<Rational>& values) const {
    return evaluate<Rational>(values, [](const Rational& q) { return q; });
  }

  // Re-expresses in `target`, variable i going to target index map[i].
  MultiPoly remap(RingPtr target, const std::vector<std::size_t>& map) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      Monomial m;
      for (std::size_t i = 0; i < ring_->size(); ++i) {
        if (!t.mono.exp[i]) continue;
        m.exp.at(map.at(i)) += t.mono.exp[i];
        m.deg += t.mono.exp[i];
      }
      out.push_back({m, t.coef});
    }
    return from_terms(std::move(target), std::move(out));
  }

  // Same-named variables; throws if one is missing from target.
  MultiPoly in_ring(RingPtr target) const {
    if (same_ring(ring_, target)) {
      MultiPoly p = *this;
      p.ring_ = std::move(target);
      return p;
    }
    std::vector<std::size_t> map(ring_->size());
    for (std::size_t i = 0; i < ring_->size(); ++i) map[i] = target->at(ring_->name(i));
    return remap(std::move(target), map);
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& t : terms_) {
      Rational c = t.coef;
      if (first) {
        if (c < 0) s += "-", c = -c;
      } else {
        s += c < 0 ? " - " : " + ";
        if (c < 0) c = -c;
      }
      first = false;
      std::string mono = monomial_string(t.mono);
      if (mono.empty())
        s += c.get_str();
      else if (c == 1)
        s += mono;
      else
        s += c.get_str() + "*" + mono;
    }
    return s;
  }

  std::string monomial_string(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < ring_->size(); ++i) {
      if (!m.exp[i]) continue;
      if (!s.empty()) s += "*";
      s += ring_->name(i);
      if (m.exp[i] > 1) s += "^" + std::to_string(m.exp[i]);
    }
    return s;
  }

  void normalize() {
    sort();
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono)
        out.back().coef += t.coef;
      else
        out.push_back(std::move(t));
      if (out.back().coef == 0) out.pop_back();
    }
    terms_ = std::move(out);
  }

 private:
  void sort() {
    auto ord = TermOrder::grevlex(ring_->size());
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return ord.compare(a.mono, b.mono) > 0; });
  }

  static void check_ring(const MultiPoly& a, const MultiPoly& b) {
    if (!same_ring(a.ring_, b.ring_)) throw std::invalid_argument("ring mismatch");
  }

  static MultiPoly combine(const MultiPoly& a, const MultiPoly& b, int sign) {
    check_ring(a, b);
    auto ord = TermOrder::grevlex(a.ring_->size());
    MultiPoly r(a.ring_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int c = i == a.size() ? -1 : j == b.size() ? 1 : ord.compare(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back({b.terms_[j].mono, sign * b.terms_[j].coef});
        ++j;
      } else {
        Rational s = a.terms_[i].coef + sign * b.terms_[j].coef;
        if (s != 0) r.terms_.push_back({a.terms_[i].mono, s});
        ++i, ++j;
      }
    }
    return r;
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, RingPtr ring) : s_(text), ring_(std::move(ring)) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) return ++pos_, true;
    return false;
  }
  MultiPoly expr() {
    MultiPoly p(ring_);
    bool neg = eat('-');
    if (!neg) eat('+');
    p = neg ? -term() : term();
    for (;;) {
      if (eat('+'))
        p += term();
      else if (eat('-'))
        p -= term();
      else
        return p;
    }
  }
  MultiPoly term() {
    MultiPoly p = factor();
    for (;;) {
      if (eat('*')) {
        p = p * factor();
      } else if (eat('/')) {
        MultiPoly d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division by non-constant");
        p *= Rational(1) / d.constant_term();
      } else {
        return p;
      }
    }
  }
  MultiPoly factor() {
    MultiPoly b = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      b = b.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return b;
  }
  MultiPoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly p = expr();
      if (!eat(')')) fail("expected )");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return MultiPoly::constant(ring_, parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto i = ring_->index(name);
      if (!i) fail("unknown variable " + name);
      return MultiPoly::variable(ring_, *i);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

// natural order: a2 < a10
inline bool natural_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    std::size_t k = s.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1]))) --k;
    long n = k < s.size() ? std::stol(s.substr(k)) : -1;
    return std::pair{s.substr(0, k), n};
  };
  return split(a) < split(b);
}

}  // namespace detail

inline MultiPoly parse_poly(std::string_view text, RingPtr ring) {
  return detail::PolyParser(text, std::move(ring)).parse();
}

// Ring built from the identifiers that occur, in natural order.
inline RingPtr infer_ring(const std::vector<std::string>& texts) {
  std::set<std::string> names;
  for (auto& t : texts)
    for (std::size_t i = 0; i < t.size();) {
      if (std::isalpha(static_cast<unsigned char>(t[i]))) {
        std::size_t j = i;
        while (j < t.size() && (std::isalnum(static_cast<unsigned char>(t[j])) || t[j] == '_')) ++j;
        names.insert(t.substr(i, j - i));
        i = j;
      } else {
        ++i;
      }
    }
  std::vector<std::string> v(names.begin(), names.end());
  std::sort(v.begin(), v.end(), detail::natural_less);
  return make_ring(std::move(v));
}

}  // namespace mvtk
