#include "ogw/groups.hpp"

#include <algorithm>
#include <istream>
#include <mutex>
#include <sstream>

#include "ogw/errors.hpp"

namespace ogw {

namespace {

const std::shared_ptr<const LinearOrder>& common_order(const ZXElement& f, const ZXElement& g) {
  if (!f.order()) return g.order();
  if (!g.order() || f.order() == g.order()) return f.order();
  throw MismatchedOrder("elements live over different orders");
}

}  // namespace

ZXElement::ZXElement(std::shared_ptr<const LinearOrder> order, std::vector<Term> terms)
    : order_(std::move(order)) {
  std::sort(terms.begin(), terms.end());
  for (const auto& [x, c] : terms) {
    if (order_ && !order_->contains(x)) throw UnknownId("id " + std::to_string(x) + " not in X");
    if (!terms_.empty() && terms_.back().first == x)
      terms_.back().second += c;
    else
      terms_.emplace_back(x, c);
  }
  std::erase_if(terms_, [](const Term& t) { return t.second == 0; });
}

Coefficient ZXElement::at(Id x) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{x, 0},
                             [](const Term& a, const Term& b) { return a.first < b.first; });
  return it != terms_.end() && it->first == x ? it->second : 0;
}

std::optional<Id> ZXElement::top() const {
  std::optional<Id> best;
  for (const auto& [x, c] : terms_)
    if (!best || order_->compare(x, *best) == std::strong_ordering::greater) best = x;
  return best;
}

std::string ZXElement::str() const {
  std::vector<Term> sorted = terms_;
  if (order_)
    std::sort(sorted.begin(), sorted.end(), [&](const Term& a, const Term& b) {
      return order_->compare(a.first, b.first) == std::strong_ordering::less;
    });
  std::string out = "{";
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (k) out += ", ";
    out += (order_ ? order_->describe(sorted[k].first) : std::to_string(sorted[k].first)) + ":" +
           std::to_string(sorted[k].second);
  }
  return out + "}";
}

ZXElement zx_add(const ZXElement& f, const ZXElement& g) {
  const auto& order = common_order(f, g);
  std::vector<ZXElement::Term> terms = f.terms();
  terms.insert(terms.end(), g.terms().begin(), g.terms().end());
  return ZXElement(order, std::move(terms));
}

ZXElement zx_scale(const ZXElement& f, Coefficient n) {
  std::vector<ZXElement::Term> terms = f.terms();
  for (auto& t : terms) t.second *= n;
  return ZXElement(f.order(), std::move(terms));
}

ZXElement zx_negate(const ZXElement& f) { return zx_scale(f, -1); }

std::strong_ordering zx_compare(const ZXElement& f, const ZXElement& g) {
  common_order(f, g);
  const ZXElement d = zx_add(f, zx_negate(g));
  const auto top = d.top();
  if (!top) return std::strong_ordering::equal;
  return d.at(*top) <=> 0;
}

ZXElement zx_abs(const ZXElement& f) {
  const auto top = f.top();
  return top && f.at(*top) < 0 ? zx_negate(f) : f;
}

std::strong_ordering zaq_compare(const ZAQElement& u, const ZAQElement& v) {
  common_order(u.zpart, v.zpart);
  const auto q = u.qcoord <=> v.qcoord;
  if (q != std::strong_ordering::equal) return q;
  return zx_compare(u.zpart, v.zpart);
}

std::size_t fact_arity(FactKind kind) {
  switch (kind) {
    case FactKind::El:
    case FactKind::Id:
      return 1;
    case FactKind::Cmp:
    case FactKind::Inv:
      return 2;
    case FactKind::Mul:
      return 3;
  }
  throw ParseError("unknown fact kind");
}

void encode_fact(const GroupFact& f, Digits& out) {
  out.push_back(static_cast<Digit>(f.kind));
  const std::size_t n = fact_arity(f.kind);
  out.push_back(f.a);
  if (n > 1) out.push_back(f.b);
  if (n > 2) out.push_back(f.c);
}

Digits encode_facts(const std::vector<GroupFact>& facts) {
  Digits out;
  for (const auto& f : facts) encode_fact(f, out);
  return out;
}

std::vector<GroupFact> decode_facts(std::span<const Digit> digits, std::size_t* consumed) {
  std::vector<GroupFact> out;
  std::size_t pos = 0;
  while (pos < digits.size()) {
    const Digit tag = digits[pos];
    if (tag == 0) {
      ++pos;
      continue;
    }
    if (tag > static_cast<Digit>(FactKind::Inv))
      throw ParseError("unknown fact tag " + std::to_string(tag));
    const auto kind = static_cast<FactKind>(tag);
    const std::size_t n = fact_arity(kind);
    if (pos + n >= digits.size()) break;
    GroupFact f{kind, digits[pos + 1], n > 1 ? digits[pos + 2] : 0, n > 2 ? digits[pos + 3] : 0};
    out.push_back(f);
    pos += n + 1;
  }
  if (consumed) *consumed = pos;
  return out;
}

std::string format_fact(const GroupFact& f) {
  switch (f.kind) {
    case FactKind::El:
      return "el " + std::to_string(f.a);
    case FactKind::Id:
      return "id " + std::to_string(f.a);
    case FactKind::Cmp:
      return "cmp " + std::to_string(f.a) + " " + std::to_string(f.b);
    case FactKind::Mul:
      return "mul " + std::to_string(f.a) + " " + std::to_string(f.b) + " " + std::to_string(f.c);
    case FactKind::Inv:
      return "inv " + std::to_string(f.a) + " " + std::to_string(f.b);
  }
  throw ParseError("unknown fact kind");
}

GroupFact parse_fact(const std::string& line) {
  std::istringstream in(line);
  std::string word;
  in >> word;
  GroupFact f;
  if (word == "el")
    f.kind = FactKind::El;
  else if (word == "id")
    f.kind = FactKind::Id;
  else if (word == "cmp")
    f.kind = FactKind::Cmp;
  else if (word == "mul")
    f.kind = FactKind::Mul;
  else if (word == "inv")
    f.kind = FactKind::Inv;
  else
    throw ParseError("unknown fact '" + line + "'");
  const std::size_t n = fact_arity(f.kind);
  std::size_t* slots[3] = {&f.a, &f.b, &f.c};
  for (std::size_t k = 0; k < n; ++k)
    if (!(in >> *slots[k])) throw ParseError("fact '" + line + "' is missing an index");
  std::string extra;
  if (in >> extra) throw ParseError("trailing input in fact '" + line + "'");
  return f;
}

std::string format_facts(const std::vector<GroupFact>& facts) {
  std::string out;
  for (const auto& f : facts) out += format_fact(f) + "\n";
  return out;
}

std::vector<GroupFact> parse_facts(std::istream& in) {
  std::vector<GroupFact> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(parse_fact(line));
  return out;
}

struct EnumeratedOrderedGroup::Cache {
  std::mutex mutex;
  std::unique_ptr<FactSource> source;
  std::vector<GroupFact> facts;
  Digits digits;
  bool complete = false;

  bool grow() {
    if (complete) return false;
    const std::size_t before = facts.size();
    if (!source->advance(facts)) {
      complete = true;
      return false;
    }
    for (std::size_t k = before; k < facts.size(); ++k) encode_fact(facts[k], digits);
    return true;
  }
};

EnumeratedOrderedGroup::EnumeratedOrderedGroup(Factory factory, std::optional<OrderTypeCert> truth,
                                               std::string label)
    : factory_(std::move(factory)), cache_(std::make_shared<Cache>()), truth_(std::move(truth)),
      label_(std::move(label)) {
  cache_->source = factory_();
}

namespace {

class ListSource : public FactSource {
 public:
  explicit ListSource(std::shared_ptr<const std::vector<GroupFact>> facts) : facts_(std::move(facts)) {}
  bool advance(std::vector<GroupFact>& out) override {
    if (pos_ >= facts_->size()) return false;
    const auto& f = (*facts_)[pos_++];
    if (f.kind == FactKind::El) ++declared_;
    out.push_back(f);
    return true;
  }
  std::size_t declared() const override { return declared_; }

 private:
  std::shared_ptr<const std::vector<GroupFact>> facts_;
  std::size_t pos_ = 0;
  std::size_t declared_ = 0;
};

}  // namespace

EnumeratedOrderedGroup EnumeratedOrderedGroup::from_facts(std::vector<GroupFact> facts,
                                                          std::optional<OrderTypeCert> truth,
                                                          std::string label) {
  auto shared = std::make_shared<const std::vector<GroupFact>>(std::move(facts));
  return EnumeratedOrderedGroup([shared] { return std::make_unique<ListSource>(shared); },
                                std::move(truth), std::move(label));
}

std::vector<GroupFact> EnumeratedOrderedGroup::facts(std::size_t n) const {
  std::lock_guard lock(cache_->mutex);
  while (cache_->facts.size() < n && cache_->grow()) {
  }
  const std::size_t m = std::min(n, cache_->facts.size());
  return {cache_->facts.begin(), cache_->facts.begin() + static_cast<std::ptrdiff_t>(m)};
}

std::optional<GroupFact> EnumeratedOrderedGroup::fact_at(std::size_t k) const {
  std::lock_guard lock(cache_->mutex);
  while (cache_->facts.size() <= k && cache_->grow()) {
  }
  if (k >= cache_->facts.size()) return std::nullopt;
  return cache_->facts[k];
}

Digits EnumeratedOrderedGroup::digits(std::size_t n) const {
  std::lock_guard lock(cache_->mutex);
  while (cache_->digits.size() < n && cache_->grow()) {
  }
  Digits out(n, 0);
  std::copy_n(cache_->digits.begin(), std::min(n, cache_->digits.size()), out.begin());
  return out;
}

Name EnumeratedOrderedGroup::name() const {
  auto cache = cache_;
  return Name([cache](std::size_t pos) -> Digit {
    std::lock_guard lock(cache->mutex);
    while (cache->digits.size() <= pos && cache->grow()) {
    }
    return pos < cache->digits.size() ? cache->digits[pos] : 0;
  });
}

std::optional<ZXElement> EnumeratedOrderedGroup::element(std::size_t k) const {
  std::lock_guard lock(cache_->mutex);
  while (cache_->source->declared() <= k && cache_->grow()) {
  }
  if (cache_->source->declared() <= k) return std::nullopt;
  return cache_->source->element(k);
}

std::vector<GroupFact> EnumeratedOrderedGroup::facts_until_declared(std::size_t k) const {
  std::lock_guard lock(cache_->mutex);
  while (cache_->source->declared() < k && cache_->grow()) {
  }
  return cache_->facts;
}

EnumeratedOrderedGroup EnumeratedOrderedGroup::clone() const {
  return EnumeratedOrderedGroup(factory_, truth_, label_);
}

void FactReplay::feed(std::span<const Digit> digits) {
  if (digits.size() <= consumed_) return;
  std::size_t used = 0;
  const auto facts = decode_facts(digits.subspan(consumed_), &used);
  consumed_ += used;
  for (const auto& f : facts) apply(f);
}

void FactReplay::apply(const GroupFact& f) {
  auto known = [&](std::size_t i) {
    if (i >= count_) throw AssertionFailure("fact " + format_fact(f) + " names an undeclared element");
  };
  ++facts_seen_;
  switch (f.kind) {
    case FactKind::El:
      if (f.a != count_) throw AssertionFailure("fact " + format_fact(f) + " is out of sequence");
      ++count_;
      return;
    case FactKind::Id:
      known(f.a);
      if (identity_ && *identity_ != f.a) throw AssertionFailure("second identity " + format_fact(f));
      identity_ = f.a;
      return;
    case FactKind::Cmp:
      known(f.a);
      known(f.b);
      if (f.a == f.b || lt_.count({f.b, f.a}))
        throw AssertionFailure("contradictory comparison " + format_fact(f));
      lt_.insert({f.a, f.b});
      return;
    case FactKind::Inv: {
      known(f.a);
      known(f.b);
      auto [it, inserted] = inverse_.emplace(f.a, f.b);
      if (!inserted && it->second != f.b) throw AssertionFailure("conflicting inverse " + format_fact(f));
      return;
    }
    case FactKind::Mul: {
      known(f.a);
      known(f.b);
      known(f.c);
      auto [it, inserted] = mul_.emplace(std::pair{f.a, f.b}, f.c);
      if (!inserted && it->second != f.c) throw AssertionFailure("conflicting product " + format_fact(f));
      return;
    }
  }
}

std::optional<std::size_t> FactReplay::inverse(std::size_t a) const {
  auto it = inverse_.find(a);
  if (it == inverse_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FactReplay::product(std::size_t a, std::size_t b) const {
  auto it = mul_.find({a, b});
  if (it == mul_.end()) return std::nullopt;
  return it->second;
}

std::optional<bool> FactReplay::less(std::size_t a, std::size_t b) const {
  if (a == b) return false;
  if (lt_.count({a, b})) return true;
  if (lt_.count({b, a})) return false;
  return std::nullopt;
}

std::optional<std::size_t> FactReplay::abs(std::size_t a) const {
  if (!identity_) return std::nullopt;
  const auto below = less(a, *identity_);
  if (!below) return std::nullopt;
  if (!*below) return a;
  return inverse(a);
}

}  // namespace ogw
