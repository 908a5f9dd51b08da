#pragma once

// Exact rationals and the fixed enumeration q_0, q_1, ... of Q.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace ogw {

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string str() const;  // "a" or "a/b"
  static Rational parse(const std::string& text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// q_0 = 0, then reduced a/b ordered by (|a|+b, a): 0, -1, 1, -2, -1/2, 1/2, 2, ...
Rational rational_at(std::size_t l);
std::size_t rational_index(const Rational& q);
// Least-index rational strictly between the given bounds (absent = unbounded).
std::size_t rational_between(const std::optional<Rational>& lo, const std::optional<Rational>& hi);

}  // namespace ogw
