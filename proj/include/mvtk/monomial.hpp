#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <stdexcept>
#include <vector>

namespace mvtk {

inline constexpr std::size_t kMaxVars = 64;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> exp{};
  std::uint32_t deg = 0;

  static Monomial variable(std::size_t i, unsigned e = 1) {
    Monomial m;
    m.exp[i] = static_cast<std::uint8_t>(e);
    m.deg = e;
    return m;
  }

  bool is_one() const { return deg == 0; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.deg == b.deg && a.exp == b.exp;
  }

  Monomial& operator*=(const Monomial& o) {
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned e = unsigned(exp[i]) + o.exp[i];
      if (e > 255) throw std::overflow_error("exponent overflow");
      exp[i] = static_cast<std::uint8_t>(e);
    }
    deg += o.deg;
    return *this;
  }
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }

  bool divides(const Monomial& o) const {
    if (deg > o.deg) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp[i] > o.exp[i]) return false;
    return true;
  }

  // o / *this, assuming divides(o)
  Monomial quotient_of(const Monomial& o) const {
    Monomial q;
    for (std::size_t i = 0; i < kMaxVars; ++i) q.exp[i] = o.exp[i] - exp[i];
    q.deg = o.deg - deg;
    return q;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial l;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      l.exp[i] = std::max(a.exp[i], b.exp[i]);
      l.deg += l.exp[i];
    }
    return l;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (a.exp[i] && b.exp[i]) return false;
    return true;
  }

  std::uint64_t support_mask() const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp[i]) m |= std::uint64_t{1} << i;
    return m;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::size_t h = 1469598103934665603ull;
    for (auto e : m.exp) h = (h ^ e) * 1099511628211ull;
    return h;
  }
};

// Monomial orders. compare() > 0 means a is the larger monomial.
class TermOrder {
 public:
  enum class Kind { Grevlex, Lex, Elimination, WeightedGrevlex };

  static TermOrder grevlex(std::size_t nvars) { return {Kind::Grevlex, nvars, 0, {}}; }
  static TermOrder lex(std::size_t nvars) { return {Kind::Lex, nvars, 0, {}}; }
  // Grevlex on the first `block` variables, ties broken by grevlex on the rest.
  static TermOrder elimination(std::size_t nvars, std::size_t block) {
    return {Kind::Elimination, nvars, block, {}};
  }
  // Weighted degree, then reverse lex. Weights must be positive.
  static TermOrder weighted(std::vector<long> weights) {
    auto n = weights.size();
    return {Kind::WeightedGrevlex, n, 0, std::move(weights)};
  }

  Kind kind() const { return kind_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t block() const { return block_; }
  const std::vector<long>& weights() const { return weights_; }

  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case Kind::Grevlex:
        if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
        return revlex(a, b, 0, nvars_);
      case Kind::Lex: {
        int c = std::memcmp(a.exp.data(), b.exp.data(), nvars_);
        return c > 0 ? 1 : (c < 0 ? -1 : 0);
      }
      case Kind::Elimination: {
        int c = grevlex_range(a, b, 0, block_);
        return c ? c : grevlex_range(a, b, block_, nvars_);
      }
      case Kind::WeightedGrevlex: {
        long wa = weighted_degree(a), wb = weighted_degree(b);
        if (wa != wb) return wa > wb ? 1 : -1;
        return revlex(a, b, 0, nvars_);
      }
    }
    return 0;
  }

  // A grading that the order refines (0 when it is not graded).
  long grade(const Monomial& m) const {
    switch (kind_) {
      case Kind::Grevlex:
        return m.deg;
      case Kind::WeightedGrevlex:
        return weighted_degree(m);
      default:
        return 0;
    }
  }

  // compare() for monomials of equal grade
  int compare_same_grade(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case Kind::Grevlex:
      case Kind::WeightedGrevlex:
        return revlex(a, b, 0, nvars_);
      default:
        return compare(a, b);
    }
  }

  long weighted_degree(const Monomial& m) const {
    long s = 0;
    for (std::size_t i = 0; i < weights_.size(); ++i) s += weights_[i] * m.exp[i];
    return s;
  }

  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

 private:
  TermOrder(Kind k, std::size_t n, std::size_t b, std::vector<long> w)
      : kind_(k), nvars_(n), block_(b), weights_(std::move(w)) {
    if (n > kMaxVars) throw std::invalid_argument("too many variables");
  }

  static int revlex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = hi; i-- > lo;)
      if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
    return 0;
  }
  static int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo,
                           std::size_t hi) {
    unsigned da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) da += a.exp[i], db += b.exp[i];
    if (da != db) return da > db ? 1 : -1;
    return revlex(a, b, lo, hi);
  }

  Kind kind_;
  std::size_t nvars_;
  std::size_t block_;
  std::vector<long> weights_;
};

}  // namespace mvtk
