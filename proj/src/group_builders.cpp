#include <algorithm>
#include <cstdlib>
#include <deque>

#include "ogw/errors.hpp"
#include "ogw/groups.hpp"

namespace ogw {

std::strong_ordering vec_compare(const Vec& u, const Vec& v) {
  for (std::size_t c = u.size(); c-- > 0;)
    if (u[c] != v[c]) return u[c] <=> v[c];
  return std::strong_ordering::equal;
}

std::size_t VectorGroupBuilder::VecHash::operator()(const Vec& v) const {
  std::size_t h = v.size();
  for (Coefficient c : v) h = h * 1000003u ^ static_cast<std::size_t>(c + 0x9e3779b9);
  return h;
}

std::optional<std::size_t> VectorGroupBuilder::find(const Vec& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t VectorGroupBuilder::declare(const Vec& v, std::vector<GroupFact>& out) {
  if (v.size() != dim_) throw MismatchedOrder("vector of the wrong dimension");
  if (auto k = find(v)) return *k;
  const std::size_t k = vecs_.size();
  vecs_.push_back(v);
  index_.emplace(v, k);
  out.push_back({FactKind::El, k});
  if (std::all_of(v.begin(), v.end(), [](Coefficient c) { return c == 0; }))
    out.push_back({FactKind::Id, k});
  Vec w(dim_);
  for (std::size_t c = 0; c < dim_; ++c) w[c] = -v[c];
  if (auto j = find(w)) {
    out.push_back({FactKind::Inv, k, *j});
    if (*j != k) out.push_back({FactKind::Inv, *j, k});
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (vec_compare(vecs_[i], v) == std::strong_ordering::less)
      out.push_back({FactKind::Cmp, i, k});
    else
      out.push_back({FactKind::Cmp, k, i});
  }
  for (std::size_t i = 0; i <= k; ++i) {
    for (std::size_t c = 0; c < dim_; ++c) w[c] = vecs_[i][c] + v[c];
    if (auto m = find(w)) {
      out.push_back({FactKind::Mul, i, k, *m});
      if (i != k) out.push_back({FactKind::Mul, k, i, *m});
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < dim_; ++c) w[c] = v[c] - vecs_[i][c];
    if (auto j = find(w); j && *j < k) out.push_back({FactKind::Mul, i, *j, k});
  }
  return k;
}

void VectorGroupBuilder::rebuild_index() {
  index_.clear();
  for (std::size_t k = 0; k < vecs_.size(); ++k) index_.emplace(vecs_[k], k);
}

void VectorGroupBuilder::insert_coordinate(std::size_t pos) {
  if (pos > dim_) throw MismatchedOrder("coordinate position out of range");
  for (auto& v : vecs_) v.insert(v.begin() + static_cast<std::ptrdiff_t>(pos), 0);
  ++dim_;
  rebuild_index();
}

Coefficient VectorGroupBuilder::max_abs(std::size_t c) const {
  Coefficient m = 0;
  for (const auto& v : vecs_) m = std::max(m, std::abs(v.at(c)));
  return m;
}

std::set<std::pair<std::size_t, std::size_t>> VectorGroupBuilder::declared_sums() const {
  std::set<std::pair<std::size_t, std::size_t>> out;
  Vec w(dim_);
  for (std::size_t i = 0; i < vecs_.size(); ++i)
    for (std::size_t k = i; k < vecs_.size(); ++k) {
      for (std::size_t c = 0; c < dim_; ++c) w[c] = vecs_[i][c] + vecs_[k][c];
      if (find(w)) out.emplace(i, k);
    }
  return out;
}

Coefficient VectorGroupBuilder::collapse(std::size_t c, std::vector<GroupFact>* new_facts) {
  if (c == 0 || c >= dim_) throw MismatchedOrder("collapse needs a coordinate with one below it");
  const Coefficient l = 2 * max_abs(c - 1) + 1;
  std::set<std::pair<std::size_t, std::size_t>> before;
  if (new_facts) before = declared_sums();
  for (auto& v : vecs_) {
    v[c - 1] += v[c] * l;
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(c));
  }
  --dim_;
  rebuild_index();
  if (new_facts) {
    Vec w(dim_);
    for (const auto& [i, k] : declared_sums()) {
      if (before.count({i, k})) continue;
      for (std::size_t d = 0; d < dim_; ++d) w[d] = vecs_[i][d] + vecs_[k][d];
      const std::size_t m = *find(w);
      new_facts->push_back({FactKind::Mul, i, k, m});
      if (i != k) new_facts->push_back({FactKind::Mul, k, i, m});
    }
  }
  return l;
}

namespace {

Coefficient l1(const Vec& v) {
  Coefficient s = 0;
  for (Coefficient c : v) s += std::abs(c);
  return s;
}

void sort_points(std::vector<Vec>& points) {
  std::stable_sort(points.begin(), points.end(), [](const Vec& a, const Vec& b) {
    const Coefficient na = l1(a), nb = l1(b);
    if (na != nb) return na < nb;
    return a < b;
  });
}

void grow_points(std::size_t dim, Coefficient bound, bool ball, Vec& cur, Coefficient used,
                 std::vector<Vec>& out) {
  if (cur.size() == dim) {
    out.push_back(cur);
    return;
  }
  const Coefficient r = ball ? bound - used : bound;
  for (Coefficient c = -r; c <= r; ++c) {
    cur.push_back(c);
    grow_points(dim, bound, ball, cur, used + std::abs(c), out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Vec> box_points(std::size_t dim, Coefficient bound) {
  std::vector<Vec> out;
  Vec cur;
  grow_points(dim, bound, false, cur, 0, out);
  sort_points(out);
  return out;
}

std::vector<Vec> ball_points(std::size_t dim, Coefficient l1_bound) {
  std::vector<Vec> out;
  Vec cur;
  grow_points(dim, l1_bound, true, cur, 0, out);
  sort_points(out);
  return out;
}

namespace {

class StandardSource : public FactSource {
 public:
  explicit StandardSource(std::shared_ptr<const FiniteLinearOrder> x)
      : x_(std::move(x)), builder_(x_->size()) {}

  bool advance(std::vector<GroupFact>& out) override {
    for (;;) {
      while (pos_ < points_.size()) {
        const Vec& v = points_[pos_++];
        if (builder_.find(v)) continue;
        builder_.declare(v, out);
        return true;
      }
      if (stage_ > 0 && builder_.dim() == 0) return false;
      points_ = box_points(builder_.dim(), static_cast<Coefficient>(stage_++));
      pos_ = 0;
    }
  }

  std::size_t declared() const override { return builder_.size(); }

  std::optional<ZXElement> element(std::size_t k) const override {
    const Vec& v = builder_.vec(k);
    std::vector<ZXElement::Term> terms;
    for (std::size_t r = 0; r < v.size(); ++r) terms.emplace_back(x_->elements()[r], v[r]);
    return ZXElement(x_, std::move(terms));
  }

 private:
  std::shared_ptr<const FiniteLinearOrder> x_;
  VectorGroupBuilder builder_;
  std::vector<Vec> points_;
  std::size_t pos_ = 0;
  std::size_t stage_ = 0;
};

// Members of a tree one at a time in length-lexicographic order.
class NodeStream {
 public:
  explicit NodeStream(TreeDesc t) : tree_(std::move(t)) {
    if (tree_.contains(Node{})) pending_.push_back(Node{});
  }

  std::optional<Node> next() {
    if (pending_.empty()) return std::nullopt;
    Node n = std::move(pending_.front());
    pending_.pop_front();
    for (Digit c = 0; c <= tree_.branch_bound; ++c) {
      Node child = n;
      child.push_back(c);
      if (tree_.contains(child)) pending_.push_back(std::move(child));
    }
    return n;
  }

 private:
  TreeDesc tree_;
  std::deque<Node> pending_;
};

class FreeAbelianSource : public FactSource {
 public:
  explicit FreeAbelianSource(const TreeDesc& t)
      : nodes_(std::make_shared<NodeCache>(t)),
        machine_([cache = nodes_](std::size_t index, Node& out) {
          return cache->get(index, out);
        }) {}

  bool advance(std::vector<GroupFact>& out) override { return machine_.advance(out); }
  std::size_t declared() const override { return machine_.declared(); }
  std::optional<ZXElement> element(std::size_t k) const override { return machine_.element(k); }

 private:
  struct NodeCache {
    explicit NodeCache(const TreeDesc& t) : stream(t) {}
    FreeAbelianMachine::Supply get(std::size_t index, Node& out) {
      while (nodes.size() <= index) {
        auto n = stream.next();
        if (!n) return FreeAbelianMachine::Supply::Exhausted;
        nodes.push_back(std::move(*n));
      }
      out = nodes[index];
      return FreeAbelianMachine::Supply::Node;
    }
    NodeStream stream;
    std::vector<Node> nodes;
  };

  std::shared_ptr<NodeCache> nodes_;
  FreeAbelianMachine machine_;
};

OrderTypeCert tree_group_truth(const TreeDesc& t) {
  OrderTypeCert truth;
  truth.epsilon = !t.well_founded();
  if (!truth.epsilon) {
    const auto& wf = std::get<WellFounded>(*t.certificate);
    if (wf.max_rank) truth.exponent = tree_enumerate(t, *wf.max_rank, t.branch_bound).size();
  }
  return truth;
}

}  // namespace

FreeAbelianMachine::FreeAbelianMachine(Supplier supplier)
    : supplier_(std::move(supplier)), kb_(std::make_shared<KBOrder>()) {}

bool FreeAbelianMachine::advance(std::vector<GroupFact>& out) {
  for (;;) {
    while (pos_ < points_.size()) {
      const Vec& v = points_[pos_++];
      if (builder_.find(v)) continue;
      builder_.declare(v, out);
      return true;
    }
    if (stage_ > 0 && !exhausted_) {
      Node node;
      const Supply s = supplier_(generators_.size(), node);
      if (s == Supply::Pending) return false;
      if (s == Supply::Exhausted) {
        exhausted_ = true;
      } else {
        const Id id = kb_->intern(node);
        auto it = std::lower_bound(by_rank_.begin(), by_rank_.end(), id, [&](Id a, Id b) {
          return kb_->compare(a, b) == std::strong_ordering::less;
        });
        const auto rank = static_cast<std::size_t>(it - by_rank_.begin());
        by_rank_.insert(it, id);
        builder_.insert_coordinate(rank);
        generators_.push_back(std::move(node));
      }
    }
    points_ = ball_points(builder_.dim(), static_cast<Coefficient>(stage_++));
    pos_ = 0;
  }
}

ZXElement FreeAbelianMachine::element(std::size_t k) const {
  const Vec& v = builder_.vec(k);
  std::vector<ZXElement::Term> terms;
  for (std::size_t r = 0; r < v.size(); ++r) terms.emplace_back(by_rank_[r], v[r]);
  return ZXElement(kb_, std::move(terms));
}

EnumeratedOrderedGroup standard_group_facts(const FiniteLinearOrder& x) {
  auto shared = std::make_shared<const FiniteLinearOrder>(x);
  OrderTypeCert truth;
  truth.exponent = x.size();
  return EnumeratedOrderedGroup([shared] { return std::make_unique<StandardSource>(shared); },
                                truth, "Z^" + std::to_string(x.size()));
}

EnumeratedOrderedGroup free_abelian_facts(const TreeDesc& t) {
  std::optional<OrderTypeCert> truth;
  if (t.certificate) truth = tree_group_truth(t);
  return EnumeratedOrderedGroup([t] { return std::make_unique<FreeAbelianSource>(t); }, truth,
                                "Z^KB(" + t.label + ")");
}

EnumeratedOrderedGroup forest_group_facts(const std::vector<TreeDesc>& trees) {
  TreeDesc graft = grafted_tree(trees);
  auto group = free_abelian_facts(graft);
  if (auto truth = group.truth()) {
    for (const auto& t : trees) truth->tree_bits.push_back(t.well_founded() ? 0 : 1);
    group.set_truth(truth);
  }
  return group;
}

}  // namespace ogw
