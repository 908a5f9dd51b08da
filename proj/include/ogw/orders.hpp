#pragma once

// Finite linear orders, products, finitely-branching trees with
// certificates, and the Kleene-Brouwer order.

#include <compare>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ogw/kernel.hpp"

namespace ogw {

using Id = std::size_t;
// A finite string over N; the empty vector is lambda.
using Node = Digits;

std::string format_node(std::span<const Digit> node);  // "-" for lambda
Node parse_node(const std::string& text);

// sigma <_KB tau iff tau is a proper prefix of sigma, or sigma is left of
// tau at the first difference.
std::strong_ordering kb_compare(std::span<const Digit> sigma, std::span<const Digit> tau);

class LinearOrder {
 public:
  virtual ~LinearOrder() = default;
  virtual std::strong_ordering compare(Id a, Id b) const = 0;
  virtual bool contains(Id a) const = 0;
  virtual std::string describe(Id a) const { return std::to_string(a); }
};

class FiniteLinearOrder : public LinearOrder {
 public:
  FiniteLinearOrder() = default;
  // `ascending` lists the ids least first.
  explicit FiniteLinearOrder(std::vector<Id> ascending);
  static FiniteLinearOrder range(std::size_t n);

  std::strong_ordering compare(Id a, Id b) const override;
  bool contains(Id a) const override { return rank_.count(a) != 0; }

  std::size_t rank(Id a) const;
  std::size_t size() const { return elements_.size(); }
  const std::vector<Id>& elements() const { return elements_; }

 private:
  std::vector<Id> elements_;
  std::unordered_map<Id, std::size_t> rank_;
};

// Order on the product XY: the Y coordinate dominates.
std::strong_ordering product_compare(const LinearOrder& x_order, const LinearOrder& y_order,
                                     Id x0, Id y0, Id x1, Id y1);

// Kleene-Brouwer order on interned nodes.
class KBOrder : public LinearOrder {
 public:
  Id intern(const Node& node);
  std::optional<Id> find(const Node& node) const;
  const Node& node(Id a) const { return nodes_.at(a); }
  std::size_t size() const { return nodes_.size(); }

  std::strong_ordering compare(Id a, Id b) const override;
  bool contains(Id a) const override { return a < nodes_.size(); }
  std::string describe(Id a) const override { return format_node(node(a)); }

 private:
  std::vector<Node> nodes_;
  std::map<Node, Id> index_;
};

struct WellFounded {
  // Height bound when finite; nullopt when only well-foundedness is known.
  std::optional<std::size_t> max_rank;
};

struct PathCert {
  // The leftmost path, when an explicit one is available.
  std::optional<CertifiedStream> witness;
};

using TreeCertificate = std::variant<WellFounded, PathCert>;

struct TreeDesc {
  std::function<bool(std::span<const Digit>)> membership;
  Digit branch_bound = 0;
  std::optional<std::size_t> depth_hint;
  std::optional<TreeCertificate> certificate;
  std::string label;

  bool contains(std::span<const Digit> node) const;
  bool well_founded() const;  // from the certificate; Uncertified otherwise
};

TreeDesc finite_tree(std::vector<Node> nodes, std::string label = {});
// Prefixes of `witness` plus finitely many extra nodes.
TreeDesc path_tree(CertifiedStream witness, std::vector<Node> extra, Digit branch_bound,
                   std::string label = {});
TreeDesc full_tree(Digit branch_bound, std::string label = {});
// {lambda} together with i^T_i for each listed tree.
TreeDesc grafted_tree(const std::vector<TreeDesc>& trees);

// Members with length <= depth and labels <= width, length-lexicographic.
std::vector<Node> tree_enumerate(const TreeDesc& t, std::size_t depth, Digit width);
// Lexicographically least member of length exactly `depth` with labels <= width.
std::optional<Node> bounded_path_search(const TreeDesc& t, std::size_t depth, Digit width);

// Checks what a certificate claims, up to `depth` levels.
void validate_certificate(const TreeDesc& t, std::size_t depth);

// Name of a finitely-branching tree: the branch bound b, then level by
// level, for each member of the previous level in order, b+1 membership
// bits for its children. Zeros once a level is empty.
Name tree_name(const TreeDesc& t);

// Bijection N^{<N} -> N: lambda is 0 and sigma^x is <code(sigma), x> + 1.
Digit node_code(std::span<const Digit> node);
Node node_decode(Digit code);
// Characteristic name of any tree: digit n is membership of node_decode(n).
Name characteristic_name(const TreeDesc& t);

struct DecodedTree {
  Digit bound = 0;
  bool has_bound = false;
  std::vector<Node> members;         // length-lexicographic, including a partial last level
  std::size_t complete_levels = 0;   // levels 0..complete_levels-1 are final
  bool finished = false;             // an empty level was reached
};
DecodedTree decode_tree_name(std::span<const Digit> digits);

// Line format: one node per line ("-" for lambda, labels comma separated),
// optional "bound <b>", and "cert wf <max_rank>" or "cert path <prefix;tail>".
TreeDesc parse_tree(std::istream& in, const std::string& label = {});
std::string format_tree(const TreeDesc& t, std::size_t depth);

}  // namespace ogw
