#include "ogw/orders.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

#include "ogw/errors.hpp"

namespace ogw {

std::string format_node(std::span<const Digit> node) {
  if (node.empty()) return "-";
  std::string out;
  for (std::size_t k = 0; k < node.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(node[k]);
  }
  return out;
}

namespace {

Digits parse_digit_list(const std::string& text) {
  Digits out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw ParseError("bad label '" + item + "'");
    } catch (const std::logic_error&) {
      throw ParseError("bad label '" + item + "'");
    }
  }
  return out;
}

}  // namespace

Node parse_node(const std::string& text) {
  if (text == "-") return {};
  return parse_digit_list(text);
}

std::strong_ordering kb_compare(std::span<const Digit> sigma, std::span<const Digit> tau) {
  const std::size_t n = std::min(sigma.size(), tau.size());
  for (std::size_t j = 0; j < n; ++j)
    if (sigma[j] != tau[j]) return sigma[j] <=> tau[j];
  // One extends the other: longer is smaller.
  return tau.size() <=> sigma.size();
}

FiniteLinearOrder::FiniteLinearOrder(std::vector<Id> ascending) : elements_(std::move(ascending)) {
  for (std::size_t r = 0; r < elements_.size(); ++r)
    if (!rank_.emplace(elements_[r], r).second)
      throw UnknownId("duplicate id " + std::to_string(elements_[r]));
}

FiniteLinearOrder FiniteLinearOrder::range(std::size_t n) {
  std::vector<Id> ids(n);
  for (std::size_t k = 0; k < n; ++k) ids[k] = k;
  return FiniteLinearOrder(std::move(ids));
}

std::size_t FiniteLinearOrder::rank(Id a) const {
  auto it = rank_.find(a);
  if (it == rank_.end()) throw UnknownId("id " + std::to_string(a) + " not in order");
  return it->second;
}

std::strong_ordering FiniteLinearOrder::compare(Id a, Id b) const { return rank(a) <=> rank(b); }

std::strong_ordering product_compare(const LinearOrder& x_order, const LinearOrder& y_order,
                                     Id x0, Id y0, Id x1, Id y1) {
  for (auto [o, id] : {std::pair<const LinearOrder*, Id>{&x_order, x0}, {&x_order, x1},
                       {&y_order, y0}, {&y_order, y1}})
    if (!o->contains(id)) throw UnknownId("id " + std::to_string(id) + " not in order");
  const auto y = y_order.compare(y0, y1);
  if (y != std::strong_ordering::equal) return y;
  return x_order.compare(x0, x1);
}

Id KBOrder::intern(const Node& node) {
  auto [it, inserted] = index_.emplace(node, nodes_.size());
  if (inserted) nodes_.push_back(node);
  return it->second;
}

std::optional<Id> KBOrder::find(const Node& node) const {
  auto it = index_.find(node);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::strong_ordering KBOrder::compare(Id a, Id b) const { return kb_compare(node(a), node(b)); }

bool TreeDesc::contains(std::span<const Digit> node) const {
  for (Digit d : node)
    if (d > branch_bound) return false;
  return membership(node);
}

bool TreeDesc::well_founded() const {
  if (!certificate) throw Uncertified("tree '" + label + "' carries no certificate");
  return std::holds_alternative<WellFounded>(*certificate);
}

TreeDesc finite_tree(std::vector<Node> nodes, std::string label) {
  std::set<Node> members(nodes.begin(), nodes.end());
  members.insert(Node{});
  Digit bound = 0;
  std::size_t height = 0;
  for (const auto& n : members) {
    if (!n.empty() && !members.count(Node(n.begin(), n.end() - 1)))
      throw BadCertificate("node " + format_node(n) + " has no parent in the tree");
    for (Digit d : n) bound = std::max(bound, d);
    height = std::max(height, n.size());
  }
  auto shared = std::make_shared<const std::set<Node>>(std::move(members));
  TreeDesc t;
  t.membership = [shared](std::span<const Digit> s) {
    return shared->count(Node(s.begin(), s.end())) != 0;
  };
  t.branch_bound = bound;
  t.depth_hint = height;
  t.certificate = WellFounded{height + 1};
  t.label = std::move(label);
  return t;
}

TreeDesc path_tree(CertifiedStream witness, std::vector<Node> extra, Digit branch_bound,
                   std::string label) {
  auto extras = std::make_shared<std::set<Node>>();
  for (const auto& n : extra)
    for (std::size_t k = 0; k <= n.size(); ++k) extras->insert(Node(n.begin(), n.begin() + k));
  auto w = std::make_shared<const CertifiedStream>(witness);
  TreeDesc t;
  t.membership = [w, extras](std::span<const Digit> s) {
    if (extras->count(Node(s.begin(), s.end()))) return true;
    for (std::size_t k = 0; k < s.size(); ++k)
      if (w->at(k) != s[k]) return false;
    return true;
  };
  t.branch_bound = branch_bound;
  t.certificate = PathCert{std::move(witness)};
  t.label = std::move(label);
  return t;
}

TreeDesc full_tree(Digit branch_bound, std::string label) {
  TreeDesc t;
  t.membership = [](std::span<const Digit>) { return true; };
  t.branch_bound = branch_bound;
  t.certificate = PathCert{CertifiedStream::constant(0)};
  t.label = std::move(label);
  return t;
}

TreeDesc grafted_tree(const std::vector<TreeDesc>& trees) {
  auto parts = std::make_shared<const std::vector<TreeDesc>>(trees);
  TreeDesc t;
  t.membership = [parts](std::span<const Digit> s) {
    if (s.empty()) return true;
    if (s[0] >= parts->size()) return false;
    return (*parts)[s[0]].contains(s.subspan(1));
  };
  Digit bound = trees.empty() ? 0 : trees.size() - 1;
  std::optional<std::size_t> rank = 1;
  std::optional<TreeCertificate> cert;
  bool all_certified = true;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    bound = std::max(bound, trees[i].branch_bound);
    if (!trees[i].certificate) {
      all_certified = false;
      continue;
    }
    if (const auto* path = std::get_if<PathCert>(&*trees[i].certificate)) {
      if (!cert) {
        std::optional<CertifiedStream> witness;
        // i followed by the witness of T_i; leftmost since earlier blocks
        // carry no path. Matrix tails depend on absolute position.
        if (path->witness && !std::holds_alternative<Matrix>(path->witness->tail())) {
          Digits pre = path->witness->prefix();
          pre.insert(pre.begin(), static_cast<Digit>(i));
          witness = CertifiedStream(std::move(pre), path->witness->tail());
        }
        cert = PathCert{std::move(witness)};
      }
    } else if (rank) {
      const auto& wf = std::get<WellFounded>(*trees[i].certificate);
      if (wf.max_rank)
        rank = std::max(*rank, *wf.max_rank + 1);
      else
        rank.reset();
    }
  }
  if (!cert && all_certified) cert = WellFounded{rank};
  t.branch_bound = bound;
  t.certificate = cert;
  t.label = "graft";
  return t;
}

std::vector<Node> tree_enumerate(const TreeDesc& t, std::size_t depth, Digit width) {
  std::vector<Node> out;
  if (!t.contains(Node{})) return out;
  std::vector<Node> level{Node{}};
  out.push_back(Node{});
  const Digit top = std::min(width, t.branch_bound);
  for (std::size_t len = 1; len <= depth && !level.empty(); ++len) {
    std::vector<Node> next;
    for (const auto& parent : level) {
      for (Digit c = 0; c <= top; ++c) {
        Node child = parent;
        child.push_back(c);
        if (t.contains(child)) next.push_back(std::move(child));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

namespace {

bool search_from(const TreeDesc& t, Node& cur, std::size_t depth, Digit top) {
  if (cur.size() == depth) return true;
  for (Digit c = 0; c <= top; ++c) {
    cur.push_back(c);
    if (t.contains(cur) && search_from(t, cur, depth, top)) return true;
    cur.pop_back();
  }
  return false;
}

}  // namespace

std::optional<Node> bounded_path_search(const TreeDesc& t, std::size_t depth, Digit width) {
  Node cur;
  if (!t.contains(cur)) return std::nullopt;
  if (search_from(t, cur, depth, std::min(width, t.branch_bound))) return cur;
  return std::nullopt;
}

void validate_certificate(const TreeDesc& t, std::size_t depth) {
  if (!t.contains(Node{})) throw BadCertificate("tree lacks lambda");
  if (!t.certificate) throw Uncertified("tree '" + t.label + "' carries no certificate");
  if (const auto* wf = std::get_if<WellFounded>(&*t.certificate)) {
    if (wf->max_rank && *wf->max_rank <= depth && bounded_path_search(t, *wf->max_rank, t.branch_bound))
      throw BadCertificate("member longer than the declared rank");
    return;
  }
  const auto& path = std::get<PathCert>(*t.certificate);
  if (!path.witness) return;
  Node prefix;
  for (std::size_t k = 0; k < depth; ++k) {
    prefix.push_back(path.witness->at(k));
    if (!t.contains(prefix)) throw BadCertificate("witness prefix " + format_node(prefix) + " leaves the tree");
  }
}

namespace {

struct TreeNameState {
  TreeDesc tree;
  std::mutex mutex;
  Digits digits;
  std::vector<Node> level{Node{}};
  bool finished = false;

  void ensure(std::size_t n) {
    if (digits.empty()) digits.push_back(tree.branch_bound);
    while (digits.size() < n && !finished) {
      std::vector<Node> next;
      for (const auto& parent : level) {
        for (Digit c = 0; c <= tree.branch_bound; ++c) {
          Node child = parent;
          child.push_back(c);
          const bool in = tree.contains(child);
          digits.push_back(in ? 1 : 0);
          if (in) next.push_back(std::move(child));
        }
      }
      level = std::move(next);
      if (level.empty()) finished = true;
    }
  }
};

}  // namespace

Name tree_name(const TreeDesc& t) {
  auto state = std::make_shared<TreeNameState>();
  state->tree = t;
  return Name([state](std::size_t pos) -> Digit {
    std::lock_guard lock(state->mutex);
    state->ensure(pos + 1);
    return pos < state->digits.size() ? state->digits[pos] : 0;
  });
}

DecodedTree decode_tree_name(std::span<const Digit> digits) {
  DecodedTree out;
  if (digits.empty()) return out;
  out.bound = digits[0];
  out.has_bound = true;
  out.members.push_back(Node{});
  out.complete_levels = 1;
  std::vector<Node> level{Node{}};
  std::size_t pos = 1;
  const std::size_t width = out.bound + 1;
  while (!level.empty()) {
    const bool complete = pos + level.size() * width <= digits.size();
    std::vector<Node> next;
    for (const auto& parent : level) {
      for (Digit c = 0; c <= out.bound && pos < digits.size(); ++c) {
        if (digits[pos++] != 0) {
          Node child = parent;
          child.push_back(c);
          next.push_back(std::move(child));
        }
      }
    }
    out.members.insert(out.members.end(), next.begin(), next.end());
    if (!complete) return out;
    ++out.complete_levels;
    level = std::move(next);
  }
  out.finished = true;
  return out;
}

Digit node_code(std::span<const Digit> node) {
  Digit code = 0;
  for (Digit x : node) code = cantor_pair(code, x) + 1;
  return code;
}

Node node_decode(Digit code) {
  Node out;
  while (code != 0) {
    const auto [parent, x] = cantor_unpair(code - 1);
    out.push_back(x);
    code = parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Name characteristic_name(const TreeDesc& t) {
  auto tree = std::make_shared<const TreeDesc>(t);
  return Name([tree](std::size_t pos) -> Digit { return tree->contains(node_decode(pos)) ? 1 : 0; });
}

namespace {

CertifiedStream parse_path_cert(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw ParseError("path certificate needs '<prefix;tail>'");
  Digits prefix = parse_digit_list(text.substr(0, semi));
  Digits tail = parse_digit_list(text.substr(semi + 1));
  if (tail.empty()) throw ParseError("path certificate needs a nonempty tail");
  if (tail.size() == 1) return CertifiedStream::constant(tail[0], std::move(prefix));
  return CertifiedStream::periodic(std::move(tail), std::move(prefix));
}

std::string format_path_cert(const CertifiedStream& w) {
  std::string out = format_node(w.prefix());
  if (w.prefix().empty()) out.clear();
  out += ';';
  if (const auto* c = std::get_if<Constant>(&w.tail())) {
    out += std::to_string(c->value);
  } else if (const auto* p = std::get_if<Periodic>(&w.tail())) {
    out += format_node(p->word);
  } else {
    throw ParseError("matrix witnesses have no file form");
  }
  return out;
}

}  // namespace

TreeDesc parse_tree(std::istream& in, const std::string& label) {
  std::vector<Node> nodes;
  std::optional<TreeCertificate> cert;
  std::optional<Digit> bound;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    try {
      if (head == "cert") {
        std::string kind, arg;
        ls >> kind >> arg;
        if (kind == "wf") {
          cert = WellFounded{arg.empty() || arg == "?" ? std::nullopt
                                                       : std::optional<std::size_t>(std::stoull(arg))};
        } else if (kind == "path") {
          cert = PathCert{parse_path_cert(arg)};
        } else {
          throw ParseError("unknown certificate kind '" + kind + "'");
        }
      } else if (head == "bound") {
        Digit b = 0;
        if (!(ls >> b)) throw ParseError("bound needs a number");
        bound = b;
      } else {
        nodes.push_back(parse_node(head));
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::logic_error&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad number");
    }
  }
  if (!cert) throw Uncertified("tree file has no cert line");
  if (auto* path = std::get_if<PathCert>(&*cert)) {
    Digit b = 0;
    for (const auto& n : nodes)
      for (Digit d : n) b = std::max(b, d);
    for (std::size_t k = 0; k < path->witness->prefix().size() + 8; ++k)
      b = std::max(b, path->witness->at(k));
    TreeDesc t = path_tree(*path->witness, nodes, bound.value_or(b), label);
    return t;
  }
  TreeDesc t = finite_tree(nodes, label);
  if (bound) t.branch_bound = std::max(t.branch_bound, *bound);
  t.certificate = cert;
  return t;
}

std::string format_tree(const TreeDesc& t, std::size_t depth) {
  std::string out = "bound " + std::to_string(t.branch_bound) + "\n";
  for (const auto& n : tree_enumerate(t, depth, t.branch_bound)) out += format_node(n) + "\n";
  if (t.certificate) {
    if (const auto* wf = std::get_if<WellFounded>(&*t.certificate)) {
      out += "cert wf " + (wf->max_rank ? std::to_string(*wf->max_rank) : std::string("?")) + "\n";
    } else {
      const auto& path = std::get<PathCert>(*t.certificate);
      if (!path.witness) throw ParseError("path certificate without witness has no file form");
      out += "cert path " + format_path_cert(*path.witness) + "\n";
    }
  }
  return out;
}

}  // namespace ogw
