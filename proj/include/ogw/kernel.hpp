#pragma once

// Type-2 computation model at desk scale: certified streams, names and
// monotone prefix functionals.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ogw {

using Digit = std::uint64_t;
using Digits = std::vector<Digit>;

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kDefaultBudget = 100000;

// Cantor pairing <j,i> = (j+i)(j+i+1)/2 + i.
Digit cantor_pair(Digit j, Digit i);
std::pair<Digit, Digit> cantor_unpair(Digit n);

class CertifiedStream;

struct Constant {
  Digit value = 0;
};

struct Periodic {
  Digits word;
};

// Position n >= prefix length reads column i at row j where <j,i> = n.
// Columns past the listed ones all follow `rest`.
struct Matrix {
  std::vector<CertifiedStream> columns;
  std::shared_ptr<const CertifiedStream> rest;
};

using TailRule = std::variant<Constant, Periodic, Matrix>;

class Name;

// An infinite sequence given as a finite prefix and a total tail rule.
// Oracles and assertions may inspect the rule; functionals only ever see
// digits through a Name.
class CertifiedStream {
 public:
  CertifiedStream() : tail_(Constant{0}) {}
  CertifiedStream(Digits prefix, TailRule tail);

  static CertifiedStream constant(Digit v, Digits prefix = {});
  static CertifiedStream periodic(Digits word, Digits prefix = {});
  static CertifiedStream matrix(std::vector<CertifiedStream> columns,
                                CertifiedStream rest, Digits prefix = {});

  const Digits& prefix() const { return prefix_; }
  const TailRule& tail() const { return tail_; }

  Digit at(std::size_t pos) const;
  Digits take(std::size_t n) const;
  Name name() const;

  bool contains(Digit v) const { return contains_from(0, v); }
  bool contains_from(std::size_t start, Digit v) const;
  Digit minimum() const { return minimum_from(0); }
  Digit minimum_from(std::size_t start) const;

  // Eventual value, when the tail settles on one digit.
  std::optional<Digit> limit() const;

  // Reading the stream as a matrix with column i = (p(<j,i>))_j.
  bool column_contains(std::size_t column, Digit v) const;
  // (exists a)(forall i > a)(exists j) p(<j,i>) = v
  bool almost_all_columns_contain(Digit v) const;
  // Number of columns never containing v; requires almost_all_columns_contain.
  std::size_t columns_missing(Digit v) const;

  // The digit every position >= start carries, if there is one.
  std::optional<Digit> uniform_from(std::size_t start) const;

 private:
  std::size_t first_unmasked_column() const;

  Digits prefix_;
  TailRule tail_;
};

// Text form: [prefix ':'] tail, tail = "c D" | "p D,D,.." | "m(S;S;..|S)".
// Example: "1,0 : p 0,1" or "m(c 0;c 1|c 1)".
CertifiedStream parse_stream(const std::string& text);
std::string format_stream(const CertifiedStream& s);

// A name: a deterministic digit source.
class Name {
 public:
  using Source = std::function<Digit(std::size_t)>;

  Name() = default;
  explicit Name(Source source) : source_(std::move(source)) {}
  static Name from_digits(Digits finite, Digit pad = 0);

  Digit operator()(std::size_t pos) const { return source_(pos); }
  Digits take(std::size_t n) const;
  explicit operator bool() const { return static_cast<bool>(source_); }

 private:
  Source source_;
};

// Reads a name one digit at a time.
struct Cursor {
  Name name;
  std::size_t position = 0;

  Digit pull() { return name(position++); }
};

// A pure function from finite input prefixes to finite output prefixes.
// `max_out` truncates the output; truncation commutes with extension.
struct MonotoneFunctional {
  using Step = std::function<Digits(std::span<const Digit>, std::size_t)>;

  std::string label;
  Step step;

  Digits operator()(std::span<const Digit> input,
                    std::size_t max_out = kUnbounded) const {
    return step(input, max_out);
  }
};

Digits extend(const MonotoneFunctional& f, std::span<const Digit> input,
              std::size_t max_out = kUnbounded);

MonotoneFunctional identity_functional();
MonotoneFunctional empty_functional();
// Digit-wise map on the input.
MonotoneFunctional pointwise_functional(std::string label,
                                        std::function<Digit(Digit)> map);

bool is_prefix(std::span<const Digit> shorter, std::span<const Digit> longer);

// <p,q> as p(0),q(0),p(1),q(1),...
Digits interleave(std::span<const Digit> p, std::span<const Digit> q);
Name interleave(const Name& p, const Name& q);
// Inverse of interleave on a finite prefix.
std::pair<Digits, Digits> deinterleave(std::span<const Digit> pq);

// Line-delimited record of one harness run.
class Transcript {
 public:
  void read(const std::string& stream, std::size_t pos, Digit d);
  void emit(const std::string& stream, std::size_t pos, Digit d);
  void oracle(const std::string& problem, std::span<const Digit> answer);
  void note(std::string line) { lines_.push_back(std::move(line)); }

  const std::vector<std::string>& lines() const { return lines_; }
  std::string str() const;
  // Highest read position + 1 for a stream, 0 if never read.
  std::size_t use(const std::string& stream) const;

 private:
  std::vector<std::string> lines_;
};

}  // namespace ogw
