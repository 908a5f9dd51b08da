#include "ogw/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ogw/errors.hpp"

namespace ogw {

Digit cantor_pair(Digit j, Digit i) {
  const Digit s = j + i;
  return s * (s + 1) / 2 + i;
}

std::pair<Digit, Digit> cantor_unpair(Digit n) {
  // w = floor((sqrt(8n+1)-1)/2), corrected for floating error.
  auto w = static_cast<Digit>((std::sqrt(8.0L * static_cast<long double>(n) + 1) - 1) / 2);
  while (w * (w + 1) / 2 > n) --w;
  while ((w + 1) * (w + 2) / 2 <= n) ++w;
  const Digit i = n - w * (w + 1) / 2;
  return {w - i, i};
}

namespace {

// Least row j with <j,column> >= start.
std::size_t first_row_from(std::size_t start, std::size_t column) {
  std::size_t j = 0;
  while (cantor_pair(j, column) < start) ++j;
  return j;
}

const CertifiedStream& column_rule(const Matrix& m, std::size_t i) {
  return i < m.columns.size() ? m.columns[i] : *m.rest;
}

}  // namespace

CertifiedStream::CertifiedStream(Digits prefix, TailRule tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  if (const auto* per = std::get_if<Periodic>(&tail_); per && per->word.empty())
    throw BadCertificate("periodic tail needs a nonempty word");
  if (const auto* m = std::get_if<Matrix>(&tail_); m && !m->rest)
    throw BadCertificate("matrix tail needs a rule for the remaining columns");
}

CertifiedStream CertifiedStream::constant(Digit v, Digits prefix) {
  return {std::move(prefix), Constant{v}};
}

CertifiedStream CertifiedStream::periodic(Digits word, Digits prefix) {
  return {std::move(prefix), Periodic{std::move(word)}};
}

CertifiedStream CertifiedStream::matrix(std::vector<CertifiedStream> columns,
                                        CertifiedStream rest, Digits prefix) {
  return {std::move(prefix),
          Matrix{std::move(columns), std::make_shared<const CertifiedStream>(std::move(rest))}};
}

Digit CertifiedStream::at(std::size_t pos) const {
  if (pos < prefix_.size()) return prefix_[pos];
  const std::size_t off = pos - prefix_.size();
  return std::visit(
      [&](const auto& rule) -> Digit {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return rule.value;
        } else if constexpr (std::is_same_v<T, Periodic>) {
          return rule.word[off % rule.word.size()];
        } else {
          const auto [j, i] = cantor_unpair(pos);
          return column_rule(rule, i).at(j);
        }
      },
      tail_);
}

Digits CertifiedStream::take(std::size_t n) const {
  Digits out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = at(k);
  return out;
}

Name CertifiedStream::name() const {
  auto self = std::make_shared<const CertifiedStream>(*this);
  return Name([self](std::size_t pos) { return self->at(pos); });
}

bool CertifiedStream::contains_from(std::size_t start, Digit v) const {
  for (std::size_t k = start; k < prefix_.size(); ++k)
    if (prefix_[k] == v) return true;
  const std::size_t from = std::max(start, prefix_.size());
  return std::visit(
      [&](const auto& rule) -> bool {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return rule.value == v;
        } else if constexpr (std::is_same_v<T, Periodic>) {
          return std::find(rule.word.begin(), rule.word.end(), v) != rule.word.end();
        } else {
          for (std::size_t i = 0; i < rule.columns.size(); ++i)
            if (rule.columns[i].contains_from(first_row_from(from, i), v)) return true;
          // Columns far enough out are read from row 0.
          return rule.rest->contains_from(0, v);
        }
      },
      tail_);
}

Digit CertifiedStream::minimum_from(std::size_t start) const {
  Digit best = std::numeric_limits<Digit>::max();
  for (std::size_t k = start; k < prefix_.size(); ++k) best = std::min(best, prefix_[k]);
  const std::size_t from = std::max(start, prefix_.size());
  const Digit tail_min = std::visit(
      [&](const auto& rule) -> Digit {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return rule.value;
        } else if constexpr (std::is_same_v<T, Periodic>) {
          return *std::min_element(rule.word.begin(), rule.word.end());
        } else {
          Digit m = rule.rest->minimum_from(0);
          for (std::size_t i = 0; i < rule.columns.size(); ++i)
            m = std::min(m, rule.columns[i].minimum_from(first_row_from(from, i)));
          return m;
        }
      },
      tail_);
  return std::min(best, tail_min);
}

std::optional<Digit> CertifiedStream::uniform_from(std::size_t start) const {
  std::optional<Digit> seen;
  for (std::size_t k = start; k < prefix_.size(); ++k) {
    if (seen && *seen != prefix_[k]) return std::nullopt;
    seen = prefix_[k];
  }
  const std::size_t from = std::max(start, prefix_.size());
  std::optional<Digit> tail_value = std::visit(
      [&](const auto& rule) -> std::optional<Digit> {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return rule.value;
        } else if constexpr (std::is_same_v<T, Periodic>) {
          for (Digit d : rule.word)
            if (d != rule.word.front()) return std::nullopt;
          return rule.word.front();
        } else {
          auto v = rule.rest->uniform_from(0);
          if (!v) return std::nullopt;
          for (std::size_t i = 0; i < rule.columns.size(); ++i)
            if (rule.columns[i].uniform_from(first_row_from(from, i)) != v) return std::nullopt;
          return v;
        }
      },
      tail_);
  if (!tail_value || (seen && *seen != *tail_value)) return std::nullopt;
  return tail_value;
}

std::optional<Digit> CertifiedStream::limit() const {
  return std::visit(
      [&](const auto& rule) -> std::optional<Digit> {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, Matrix>) {
          auto v = rule.rest->uniform_from(0);
          if (!v) return std::nullopt;
          for (const auto& col : rule.columns)
            if (col.limit() != v) return std::nullopt;
          return v;
        } else {
          return uniform_from(prefix_.size());
        }
      },
      tail_);
}

std::size_t CertifiedStream::first_unmasked_column() const {
  std::size_t i = 0;
  while (cantor_pair(0, i) < prefix_.size()) ++i;
  return i;
}

bool CertifiedStream::column_contains(std::size_t column, Digit v) const {
  std::size_t j = 0;
  for (; cantor_pair(j, column) < prefix_.size(); ++j)
    if (prefix_[cantor_pair(j, column)] == v) return true;
  const std::size_t j0 = j;
  return std::visit(
      [&](const auto& rule) -> bool {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return rule.value == v;
        } else if constexpr (std::is_same_v<T, Periodic>) {
          // <j,column> mod L repeats with period 2L in j.
          for (std::size_t r = j0; r < j0 + 2 * rule.word.size(); ++r)
            if (at(cantor_pair(r, column)) == v) return true;
          return false;
        } else {
          return column_rule(rule, column).contains_from(j0, v);
        }
      },
      tail_);
}

bool CertifiedStream::almost_all_columns_contain(Digit v) const {
  const std::size_t i0 = first_unmasked_column();
  return std::visit(
      [&](const auto& rule) -> bool {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return rule.value == v;
        } else if constexpr (std::is_same_v<T, Periodic>) {
          // Column contents repeat with period 2L in the column index.
          for (std::size_t i = i0; i < i0 + 2 * rule.word.size(); ++i)
            if (!column_contains(i, v)) return false;
          return true;
        } else {
          return rule.rest->contains_from(0, v);
        }
      },
      tail_);
}

std::size_t CertifiedStream::columns_missing(Digit v) const {
  if (!almost_all_columns_contain(v))
    throw NoLimit("infinitely many columns avoid the digit");
  std::size_t bound = first_unmasked_column();
  if (const auto* m = std::get_if<Matrix>(&tail_)) bound = std::max(bound, m->columns.size());
  std::size_t missing = 0;
  for (std::size_t i = 0; i < bound; ++i)
    if (!column_contains(i, v)) ++missing;
  return missing;
}

Name Name::from_digits(Digits finite, Digit pad) {
  auto data = std::make_shared<const Digits>(std::move(finite));
  return Name([data, pad](std::size_t pos) { return pos < data->size() ? (*data)[pos] : pad; });
}

Digits Name::take(std::size_t n) const {
  Digits out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = source_(k);
  return out;
}

Digits extend(const MonotoneFunctional& f, std::span<const Digit> input, std::size_t max_out) {
  return f.step(input, max_out);
}

MonotoneFunctional identity_functional() {
  return {"identity", [](std::span<const Digit> in, std::size_t max_out) {
            const auto n = std::min(in.size(), max_out);
            return Digits(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(n));
          }};
}

MonotoneFunctional empty_functional() {
  return {"empty", [](std::span<const Digit>, std::size_t) { return Digits{}; }};
}

MonotoneFunctional pointwise_functional(std::string label, std::function<Digit(Digit)> map) {
  return {std::move(label), [map = std::move(map)](std::span<const Digit> in, std::size_t max_out) {
            Digits out;
            for (std::size_t k = 0; k < in.size() && out.size() < max_out; ++k)
              out.push_back(map(in[k]));
            return out;
          }};
}

bool is_prefix(std::span<const Digit> shorter, std::span<const Digit> longer) {
  return shorter.size() <= longer.size() &&
         std::equal(shorter.begin(), shorter.end(), longer.begin());
}

Digits interleave(std::span<const Digit> p, std::span<const Digit> q) {
  Digits out;
  out.reserve(p.size() + q.size());
  for (std::size_t k = 0;; ++k) {
    if (k >= p.size()) break;
    out.push_back(p[k]);
    if (k >= q.size()) break;
    out.push_back(q[k]);
  }
  return out;
}

Name interleave(const Name& p, const Name& q) {
  return Name([p, q](std::size_t pos) { return pos % 2 == 0 ? p(pos / 2) : q(pos / 2); });
}

std::pair<Digits, Digits> deinterleave(std::span<const Digit> pq) {
  std::pair<Digits, Digits> out;
  for (std::size_t k = 0; k < pq.size(); ++k)
    (k % 2 == 0 ? out.first : out.second).push_back(pq[k]);
  return out;
}

void Transcript::read(const std::string& stream, std::size_t pos, Digit d) {
  lines_.push_back("read " + stream + " " + std::to_string(pos) + " " + std::to_string(d));
}

void Transcript::emit(const std::string& stream, std::size_t pos, Digit d) {
  lines_.push_back("emit " + stream + " " + std::to_string(pos) + " " + std::to_string(d));
}

void Transcript::oracle(const std::string& problem, std::span<const Digit> answer) {
  std::string line = "oracle " + problem;
  for (Digit d : answer) line += " " + std::to_string(d);
  lines_.push_back(std::move(line));
}

std::string Transcript::str() const {
  std::string out;
  for (const auto& l : lines_) out += l + "\n";
  return out;
}

std::size_t Transcript::use(const std::string& stream) const {
  std::size_t use = 0;
  const std::string head = "read " + stream + " ";
  for (const auto& l : lines_) {
    if (l.rfind(head, 0) != 0) continue;
    std::istringstream in(l.substr(head.size()));
    std::size_t pos = 0;
    in >> pos;
    use = std::max(use, pos + 1);
  }
  return use;
}

namespace {

struct StreamParser {
  const std::string& text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("stream '" + text + "' at " + std::to_string(pos) + ": " + what);
  }

  bool peek(char c) {
    skip();
    return pos < text.size() && text[pos] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  Digit number() {
    skip();
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (start == pos) fail("expected a digit");
    return std::stoull(text.substr(start, pos - start));
  }

  Digits numbers() {
    Digits out{number()};
    while (peek(',')) {
      ++pos;
      out.push_back(number());
    }
    return out;
  }

  CertifiedStream stream() {
    Digits prefix;
    skip();
    if (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      prefix = numbers();
      expect(':');
    }
    skip();
    if (pos >= text.size()) fail("missing tail");
    const char kind = text[pos++];
    if (kind == 'c') return CertifiedStream::constant(number(), std::move(prefix));
    if (kind == 'p') return CertifiedStream::periodic(numbers(), std::move(prefix));
    if (kind == 'm') {
      expect('(');
      std::vector<CertifiedStream> columns;
      if (!peek('|')) {
        columns.push_back(stream());
        while (peek(';')) {
          ++pos;
          columns.push_back(stream());
        }
      }
      expect('|');
      CertifiedStream rest = stream();
      expect(')');
      return CertifiedStream::matrix(std::move(columns), std::move(rest), std::move(prefix));
    }
    --pos;
    fail("unknown tail kind");
  }
};

std::string join_digits(const Digits& d) {
  std::string out;
  for (std::size_t k = 0; k < d.size(); ++k) out += (k ? "," : "") + std::to_string(d[k]);
  return out;
}

}  // namespace

CertifiedStream parse_stream(const std::string& text) {
  StreamParser p{text};
  CertifiedStream s = p.stream();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing text");
  return s;
}

std::string format_stream(const CertifiedStream& s) {
  std::string out = s.prefix().empty() ? "" : join_digits(s.prefix()) + ":";
  if (const auto* c = std::get_if<Constant>(&s.tail())) return out + "c " + std::to_string(c->value);
  if (const auto* p = std::get_if<Periodic>(&s.tail())) return out + "p " + join_digits(p->word);
  const auto& m = std::get<Matrix>(s.tail());
  out += "m(";
  for (std::size_t k = 0; k < m.columns.size(); ++k) out += (k ? ";" : "") + format_stream(m.columns[k]);
  return out + "|" + format_stream(*m.rest) + ")";
}

}  // namespace ogw
