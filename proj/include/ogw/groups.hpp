#pragma once

// Exact algebra for Z^X and Z^alpha Q^epsilon, group fact streams, and the
// generators of enumerated ordered groups.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ogw/kernel.hpp"
#include "ogw/orders.hpp"
#include "ogw/rational.hpp"

namespace ogw {

using Coefficient = std::int64_t;

// Finite-support map X -> Z; no zero coefficients are stored.
class ZXElement {
 public:
  using Term = std::pair<Id, Coefficient>;

  ZXElement() = default;
  explicit ZXElement(std::shared_ptr<const LinearOrder> order, std::vector<Term> terms = {});

  const std::shared_ptr<const LinearOrder>& order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }  // sorted by id
  Coefficient at(Id x) const;
  bool is_identity() const { return terms_.empty(); }
  // X-maximal point of the support.
  std::optional<Id> top() const;

  friend bool operator==(const ZXElement& a, const ZXElement& b) { return a.terms_ == b.terms_; }
  std::string str() const;  // "{x:c, ...}" with ids in X order

 private:
  std::shared_ptr<const LinearOrder> order_;
  std::vector<Term> terms_;
};

ZXElement zx_add(const ZXElement& f, const ZXElement& g);
ZXElement zx_negate(const ZXElement& f);
ZXElement zx_scale(const ZXElement& f, Coefficient n);
std::strong_ordering zx_compare(const ZXElement& f, const ZXElement& g);
ZXElement zx_abs(const ZXElement& f);

struct ZAQElement {
  Rational qcoord;
  ZXElement zpart;
};

std::strong_ordering zaq_compare(const ZAQElement& u, const ZAQElement& v);

enum class FactKind : Digit { El = 1, Id = 2, Cmp = 3, Mul = 4, Inv = 5 };

// el(a) | id(a) | cmp(a,b): g_a < g_b | mul(a,b,c): g_a g_b = g_c | inv(a,b)
struct GroupFact {
  FactKind kind = FactKind::El;
  std::size_t a = 0, b = 0, c = 0;

  friend bool operator==(const GroupFact&, const GroupFact&) = default;
};

std::size_t fact_arity(FactKind kind);
// Digit records: the tag followed by the indices. Digit 0 is padding.
void encode_fact(const GroupFact& f, Digits& out);
Digits encode_facts(const std::vector<GroupFact>& facts);
// Complete records only; `consumed` receives the number of digits used.
std::vector<GroupFact> decode_facts(std::span<const Digit> digits, std::size_t* consumed = nullptr);
std::string format_fact(const GroupFact& f);
GroupFact parse_fact(const std::string& line);
std::string format_facts(const std::vector<GroupFact>& facts);
std::vector<GroupFact> parse_facts(std::istream& in);

// Hidden ground truth: Z^exponent Q^epsilon, exponent absent for omega.
struct OrderTypeCert {
  std::optional<std::size_t> exponent;
  bool epsilon = false;
  std::vector<int> tree_bits;  // per-tree WF bits for forest groups
};

// A stateful fact generator; one instance per consumer.
class FactSource {
 public:
  virtual ~FactSource() = default;
  // Appends at least one fact, or returns false once the stream is complete.
  virtual bool advance(std::vector<GroupFact>& out) = 0;
  virtual std::size_t declared() const = 0;
  virtual std::optional<ZXElement> element(std::size_t k) const {
    (void)k;
    return std::nullopt;
  }
};

class EnumeratedOrderedGroup {
 public:
  using Factory = std::function<std::unique_ptr<FactSource>()>;

  EnumeratedOrderedGroup() = default;
  EnumeratedOrderedGroup(Factory factory, std::optional<OrderTypeCert> truth, std::string label);
  // A group presented by a fixed finite fact list.
  static EnumeratedOrderedGroup from_facts(std::vector<GroupFact> facts,
                                           std::optional<OrderTypeCert> truth = std::nullopt,
                                           std::string label = "facts");

  std::vector<GroupFact> facts(std::size_t n) const;  // fewer once complete
  std::optional<GroupFact> fact_at(std::size_t k) const;
  Digits digits(std::size_t n) const;                 // padded with 0
  Name name() const;
  // Ground-truth element for index k from the construction, if available.
  std::optional<ZXElement> element(std::size_t k) const;
  // Facts generated until at least `k` elements are declared.
  std::vector<GroupFact> facts_until_declared(std::size_t k) const;

  const std::optional<OrderTypeCert>& truth() const { return truth_; }
  void set_truth(std::optional<OrderTypeCert> t) { truth_ = std::move(t); }
  const std::string& label() const { return label_; }
  // Same presentation with its own generator state.
  EnumeratedOrderedGroup clone() const;

 private:
  struct Cache;
  Factory factory_;
  std::shared_ptr<Cache> cache_;
  std::optional<OrderTypeCert> truth_;
  std::string label_;
};

// Consumer-side bookkeeping of a fact stream.
class FactReplay {
 public:
  // Consumes complete records from the stream; throws AssertionFailure on a
  // contradiction or a dangling index.
  void feed(std::span<const Digit> digits);
  void apply(const GroupFact& f);

  std::size_t size() const { return count_; }
  std::optional<std::size_t> identity() const { return identity_; }
  std::optional<std::size_t> inverse(std::size_t a) const;
  std::optional<std::size_t> product(std::size_t a, std::size_t b) const;
  // g_a < g_b if decided by the facts.
  std::optional<bool> less(std::size_t a, std::size_t b) const;
  // |g_a| as an index, if identity, comparison and inverse are known.
  std::optional<std::size_t> abs(std::size_t a) const;
  std::size_t facts_seen() const { return facts_seen_; }

 private:
  std::size_t count_ = 0;
  std::size_t consumed_ = 0;
  std::size_t facts_seen_ = 0;
  std::optional<std::size_t> identity_;
  std::unordered_map<std::size_t, std::size_t> inverse_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> mul_;
  std::set<std::pair<std::size_t, std::size_t>> lt_;
};

using Vec = std::vector<Coefficient>;

// Elements of Z^d as integer vectors indexed by rank (0 = least generator),
// declared one at a time with the facts relating them to earlier elements.
class VectorGroupBuilder {
 public:
  explicit VectorGroupBuilder(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vecs_.size(); }
  const Vec& vec(std::size_t k) const { return vecs_.at(k); }
  std::optional<std::size_t> find(const Vec& v) const;

  // Index of v, declaring it and appending its facts when new: el, id,
  // inv, cmp against every earlier element, then mul.
  std::size_t declare(const Vec& v, std::vector<GroupFact>& out);
  // New coordinate of rank `pos`; existing elements get coefficient 0.
  void insert_coordinate(std::size_t pos);
  Coefficient max_abs(std::size_t c) const;
  // Substitutes a_{c-1} + a_c * l for coordinate c-1 and drops c, with
  // l = 2 max|a_{c-1}| + 1 over the declared elements. Returns l. Products
  // among declared elements that only become equal after the substitution
  // are appended to `new_facts`.
  Coefficient collapse(std::size_t c, std::vector<GroupFact>* new_facts = nullptr);

 private:
  struct VecHash {
    std::size_t operator()(const Vec& v) const;
  };
  void rebuild_index();
  // Pairs i <= k whose sum is declared.
  std::set<std::pair<std::size_t, std::size_t>> declared_sums() const;

  std::size_t dim_;
  std::vector<Vec> vecs_;
  std::unordered_map<Vec, std::size_t, VecHash> index_;
};

std::strong_ordering vec_compare(const Vec& u, const Vec& v);

// Free abelian group on tree nodes in Kleene-Brouwer order. Stage s >= 1
// asks for node s-1 in length-lexicographic order, then declares every
// element of L1 norm <= s.
class FreeAbelianMachine {
 public:
  enum class Supply { Node, Exhausted, Pending };
  using Supplier = std::function<Supply(std::size_t index, Node& out)>;

  explicit FreeAbelianMachine(Supplier supplier);
  // Appends the facts of one new element; false when the supplier is pending.
  bool advance(std::vector<GroupFact>& out);
  std::size_t declared() const { return builder_.size(); }
  ZXElement element(std::size_t k) const;
  const std::vector<Node>& generators() const { return generators_; }

 private:
  Supplier supplier_;
  std::shared_ptr<KBOrder> kb_;
  std::vector<Id> by_rank_;
  std::vector<Node> generators_;
  bool exhausted_ = false;
  VectorGroupBuilder builder_;
  std::vector<Vec> points_;
  std::size_t pos_ = 0;
  std::size_t stage_ = 0;
};

// Lattice points of Z^dim in a shape, ordered by L1 norm, then lexicographically.
std::vector<Vec> box_points(std::size_t dim, Coefficient bound);       // |a_j| <= bound
std::vector<Vec> ball_points(std::size_t dim, Coefficient l1_bound);   // sum |a_j| <= bound

// Stage s declares every element with coefficients bounded by s.
EnumeratedOrderedGroup standard_group_facts(const FiniteLinearOrder& x);
// Free abelian group on a_tau for tau in T, ordered by the Kleene-Brouwer
// order; stage s adds the s-th node in length-lexicographic order and
// declares every element of L1 norm <= s.
EnumeratedOrderedGroup free_abelian_facts(const TreeDesc& t);
EnumeratedOrderedGroup forest_group_facts(const std::vector<TreeDesc>& trees);

}  // namespace ogw
