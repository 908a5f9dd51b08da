#include "ogw/rational.hpp"

#include <mutex>
#include <numeric>
#include <vector>

#include "ogw/errors.hpp"

namespace ogw {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ParseError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 l = static_cast<__int128>(a.num_) * b.den_;
  const __int128 r = static_cast<__int128>(b.num_) * a.den_;
  return l <=> r;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw ParseError("bad rational '" + text + "'");
  }
}

namespace {

struct Enumeration {
  std::mutex mutex;
  std::vector<Rational> list{Rational(0)};
  std::int64_t height = 1;  // |a|+b of the last completed block

  const Rational& at(std::size_t l) {
    while (list.size() <= l) {
      ++height;
      for (std::int64_t a = -(height - 1); a <= height - 1; ++a) {
        if (a == 0) continue;
        const std::int64_t b = height - (a < 0 ? -a : a);
        if (std::gcd(a, b) == 1) list.emplace_back(a, b);
      }
    }
    return list[l];
  }
};

Enumeration& enumeration() {
  static Enumeration e;
  return e;
}

}  // namespace

Rational rational_at(std::size_t l) {
  auto& e = enumeration();
  std::lock_guard lock(e.mutex);
  return e.at(l);
}

std::size_t rational_index(const Rational& q) {
  auto& e = enumeration();
  std::lock_guard lock(e.mutex);
  for (std::size_t l = 0;; ++l)
    if (e.at(l) == q) return l;
}

std::size_t rational_between(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  if (lo && hi && !(*lo < *hi)) throw OracleDomainError("empty rational interval");
  auto& e = enumeration();
  std::lock_guard lock(e.mutex);
  for (std::size_t l = 0;; ++l) {
    const Rational& q = e.at(l);
    if ((!lo || *lo < q) && (!hi || q < *hi)) return l;
  }
}

}  // namespace ogw
