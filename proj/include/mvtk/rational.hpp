#pragma once

#include <gmpxx.h>

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mvtk {

using Integer = mpz_class;
using Rational = mpq_class;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded() : std::runtime_error("time budget exceeded") {}
};

// Cooperative wall-clock limit. A default-constructed deadline never fires.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(double seconds)
      : at_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(seconds))) {}

  bool expired() const { return at_ && Clock::now() > *at_; }
  void check() const {
    if (expired()) throw BudgetExceeded{};
  }

 private:
  std::optional<Clock::time_point> at_;
};

inline Rational parse_rational(std::string_view text) {
  Rational q;
  if (text.empty() || q.set_str(std::string(text), 10) != 0)
    throw ParseError("bad rational: " + std::string(text));
  q.canonicalize();
  if (q.get_den() == 0) throw ParseError("zero denominator: " + std::string(text));
  return q;
}

inline Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace mvtk
