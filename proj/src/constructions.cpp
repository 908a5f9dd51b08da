#include "ogw/constructions.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "ogw/errors.hpp"
#include "ogw/rational.hpp"

namespace ogw {

namespace {

constexpr Digit kUnboundedBranching = std::numeric_limits<Digit>::max() - 1;

}  // namespace

MonotoneFunctional membership_functional(std::string label, MembershipRule rule) {
  return MonotoneFunctional{std::move(label), [rule](std::span<const Digit> in, std::size_t max_out) {
                              FactReplay facts;
                              facts.feed(in);
                              Digits out;
                              for (Digit n = 0; out.size() < max_out; ++n) {
                                const auto m = rule(facts, node_decode(n));
                                if (!m) break;
                                out.push_back(*m ? 1 : 0);
                              }
                              return out;
                            }};
}

TreeDesc decided_tree(std::span<const Digit> facts, MembershipRule rule, std::string label) {
  auto replay = std::make_shared<FactReplay>();
  replay->feed(facts);
  TreeDesc t;
  t.membership = [replay, rule](std::span<const Digit> node) { return rule(*replay, node) == true; };
  t.branch_bound = replay->size() == 0 ? 0 : replay->size() - 1;
  t.label = std::move(label);
  return t;
}

std::string format_membership(std::span<const Digit> characteristic) {
  std::ostringstream out;
  for (std::size_t n = 0; n < characteristic.size(); ++n)
    out << (characteristic[n] ? "member " : "nonmember ") << format_node(node_decode(n)) << '\n';
  return out.str();
}

std::optional<bool> q_tree_member(const FactReplay& facts, std::span<const Digit> node) {
  bool open = false;
  for (Digit x : node)
    if (x >= facts.size()) open = true;
  for (std::size_t i = 0; i < node.size(); ++i) {
    for (std::size_t j = i + 1; j < node.size(); ++j) {
      if (node[i] == node[j]) return false;
      if (node[i] >= facts.size() || node[j] >= facts.size()) continue;
      const auto lt = facts.less(node[i], node[j]);
      if (!lt) {
        open = true;
        continue;
      }
      if (*lt != (rational_at(i) < rational_at(j))) return false;
    }
  }
  if (open) return std::nullopt;
  return true;
}

MonotoneFunctional embed_q_tree() { return membership_functional("embed_q_tree", q_tree_member); }

TreeDesc certified_q_tree(const EnumeratedOrderedGroup& g) {
  const auto& truth = g.truth();
  if (!truth) throw Uncertified("group '" + g.label() + "' carries no order-type certificate");
  TreeDesc t;
  t.membership = [g](std::span<const Digit> node) {
    std::vector<ZXElement> els;
    for (Digit x : node) {
      auto e = g.element(x);
      if (!e) throw Uncertified("group '" + g.label() + "' has no ground-truth element " + std::to_string(x));
      els.push_back(std::move(*e));
    }
    for (std::size_t i = 0; i < node.size(); ++i)
      for (std::size_t j = i + 1; j < node.size(); ++j) {
        if (node[i] == node[j]) return false;
        const bool lt = zx_compare(els[i], els[j]) == std::strong_ordering::less;
        if (lt != (rational_at(i) < rational_at(j))) return false;
      }
    return true;
  };
  t.branch_bound = kUnboundedBranching;
  if (truth->epsilon)
    t.certificate = PathCert{};
  else
    t.certificate = WellFounded{};
  t.label = "Q-tree(" + g.label() + ")";
  return t;
}

int epsilon_decode(int wf_bit) { return wf_bit; }

MonotoneFunctional free_abelian_forward() {
  return MonotoneFunctional{"free_abelian", [](std::span<const Digit> in, std::size_t max_out) {
                              const DecodedTree tree = decode_tree_name(in);
                              FreeAbelianMachine machine([&tree](std::size_t index, Node& out) {
                                if (index < tree.members.size()) {
                                  out = tree.members[index];
                                  return FreeAbelianMachine::Supply::Node;
                                }
                                return tree.finished ? FreeAbelianMachine::Supply::Exhausted
                                                     : FreeAbelianMachine::Supply::Pending;
                              });
                              Digits out;
                              if (!tree.has_bound) return out;
                              std::vector<GroupFact> facts;
                              while (out.size() < max_out) {
                                facts.clear();
                                if (!machine.advance(facts)) break;
                                for (const auto& f : facts) encode_fact(f, out);
                              }
                              if (out.size() > max_out) out.resize(max_out);
                              return out;
                            }};
}

namespace {

// Backward functional answering with f applied to the first oracle digit.
MonotoneFunctional first_answer_digit(std::string label, std::function<Digit(Digit)> f) {
  return MonotoneFunctional{std::move(label), [f](std::span<const Digit> in, std::size_t max_out) {
                              Digits out;
                              if (in.size() >= 2 && max_out > 0) out.push_back(f(in[1]));
                              return out;
                            }};
}

}  // namespace

Reduction og_epsilon_to_wf() {
  Reduction r;
  r.name = "og_epsilon<=wf";
  r.source = ProblemId::OgEpsilon;
  r.oracle = ProblemId::Wf;
  r.forward = embed_q_tree();
  r.backward = first_answer_digit("epsilon_decode", [](Digit d) {
    return static_cast<Digit>(epsilon_decode(static_cast<int>(d)));
  });
  r.certify = [](const ProblemInstance& x) -> ProblemInstance {
    return certified_q_tree(std::get<EnumeratedOrderedGroup>(x));
  };
  r.decode = tuple_decoder(1);
  r.oracle_name = [](const ProblemInstance& t) { return characteristic_name(std::get<TreeDesc>(t)); };
  r.check_digits = 64;
  return r;
}

Reduction wf_to_og_epsilon() {
  Reduction r;
  r.name = "wf<=og_epsilon";
  r.source = ProblemId::Wf;
  r.oracle = ProblemId::OgEpsilon;
  r.forward = free_abelian_forward();
  r.backward = first_answer_digit("wf_from_epsilon", [](Digit d) { return d; });
  r.certify = [](const ProblemInstance& x) -> ProblemInstance {
    return free_abelian_facts(std::get<TreeDesc>(x));
  };
  r.decode = tuple_decoder(1);
  return r;
}

ForestMap forest_embedding(const Forest& forest) {
  auto order = std::make_shared<const FiniteLinearOrder>(FiniteLinearOrder::range(forest.size()));
  ForestMap f;
  f.identity = ZAQElement{Rational(0), ZXElement(order)};
  bool dense = false;
  std::int64_t q = 0;
  for (std::size_t i = 0; i < forest.size(); ++i) {
    if (!forest[i].well_founded()) dense = true;
    if (dense)
      f.roots.push_back(ZAQElement{Rational(++q), ZXElement(order)});
    else
      f.roots.push_back(ZAQElement{Rational(0), ZXElement(order, {{i, 1}})});
  }
  return f;
}

std::optional<int> read_epsilon_from_f(const ForestMap& f, std::size_t i) {
  const auto& lower = i == 0 ? f.identity : (i - 1 < f.roots.size() ? f.roots[i - 1] : std::nullopt);
  const auto& upper = i < f.roots.size() ? f.roots[i] : std::nullopt;
  if (!lower || !upper) return std::nullopt;
  if (zaq_compare(*lower, *upper) != std::strong_ordering::less)
    throw MalformedMap("f does not preserve the order at root " + std::to_string(i));
  return lower->qcoord == upper->qcoord ? 0 : 1;
}

std::vector<int> decode_forest_bits(const ForestMap& f) {
  std::vector<int> out;
  for (std::size_t i = 0; i < f.roots.size(); ++i) {
    const auto b = read_epsilon_from_f(f, i);
    if (!b) break;
    out.push_back(*b);
  }
  return out;
}

}  // namespace ogw

namespace ogw {

namespace {

using Reader = std::function<std::optional<Digit>(std::size_t)>;

Reader prefix_reader(std::span<const Digit> digits) {
  return [digits](std::size_t pos) -> std::optional<Digit> {
    if (pos < digits.size()) return digits[pos];
    return std::nullopt;
  };
}

// Stage s reads its input, may reinterpret, then declares the box |a_j| <= s
// one element per advance.
class StageMachine {
 public:
  virtual ~StageMachine() = default;

  bool advance(const Reader& read, std::vector<GroupFact>& out, std::size_t last_stage = kUnbounded) {
    for (;;) {
      if (!pending_.empty()) {
        out.insert(out.end(), pending_.begin(), pending_.end());
        pending_.clear();
        return true;
      }
      while (pos_ < points_.size()) {
        const Vec& v = points_[pos_++];
        if (builder_.find(v)) continue;
        builder_.declare(v, out);
        plans_.back().elements = builder_.size();
        return true;
      }
      if (stage_ > last_stage) return false;
      StagePlan plan;
      plan.stage = stage_;
      if (!begin_stage(stage_, read, plan)) return false;
      plan.elements_emitted = static_cast<Coefficient>(stage_);
      plan.dim = builder_.dim();
      plan.elements = builder_.size();
      plans_.push_back(std::move(plan));
      points_ = box_points(builder_.dim(), static_cast<Coefficient>(stage_));
      pos_ = 0;
      ++stage_;
    }
  }

  const std::vector<StagePlan>& plans() const { return plans_; }
  const VectorGroupBuilder& builder() const { return builder_; }

 protected:
  // Reads the stage input and reinterprets; false without side effects when
  // the input is not yet available.
  virtual bool begin_stage(std::size_t s, const Reader& read, StagePlan& plan) = 0;

  Coefficient collapse(std::size_t c, StagePlan& plan) {
    const Coefficient l = builder_.collapse(c, &pending_);
    plan.reinterpretations.push_back({c, l});
    return l;
  }

  VectorGroupBuilder builder_;

 private:
  std::vector<GroupFact> pending_;
  std::vector<StagePlan> plans_;
  std::vector<Vec> points_;
  std::size_t pos_ = 0;
  std::size_t stage_ = 0;
};

class LpoStarMachine : public StageMachine {
 protected:
  bool begin_stage(std::size_t s, const Reader& read, StagePlan& plan) override {
    const auto d = read(s);
    if (!d) return false;
    if (s == 0) {
      k_ = *d;
      builder_ = VectorGroupBuilder(k_ + 1);
      zero_seen_.assign(k_, false);
      return true;
    }
    const auto [j, i] = cantor_unpair(s - 1);
    (void)j;
    if (i < k_ && *d == 0 && !zero_seen_[i]) {
      zero_seen_[i] = true;
      collapse(builder_.dim() - 1, plan);
    }
    return true;
  }

 private:
  std::size_t k_ = 0;
  std::vector<bool> zero_seen_;
};

class ChiMachine : public StageMachine {
 public:
  ChiMachine() { builder_ = VectorGroupBuilder(1); }

 protected:
  bool begin_stage(std::size_t s, const Reader& read, StagePlan& plan) override {
    const auto d = read(s);
    if (!d) return false;
    const auto [j, i] = cantor_unpair(s);
    if (columns_.size() <= i) columns_.resize(i + 1);
    Column& col = columns_[i];
    if (j == 0) {
      if (*d == 1) {
        col.has_one = true;
      } else {
        col.coordinate = builder_.dim();
        builder_.insert_coordinate(builder_.dim());
      }
    } else if (*d == 1 && !col.has_one) {
      col.has_one = true;
      if (col.coordinate) {
        const std::size_t c = *col.coordinate;
        collapse(c, plan);
        col.coordinate.reset();
        for (auto& other : columns_)
          if (other.coordinate && *other.coordinate > c) --*other.coordinate;
      }
    }
    return true;
  }

 private:
  struct Column {
    bool has_one = false;
    std::optional<std::size_t> coordinate;
  };
  std::vector<Column> columns_;
};

StageRun run_machine(StageMachine& m, std::span<const Digit> input, std::size_t stage) {
  StageRun run;
  const Reader read = prefix_reader(input);
  while (m.advance(read, run.facts, stage)) {
  }
  run.plans = m.plans();
  for (std::size_t k = 0; k < m.builder().size(); ++k) run.vectors.push_back(m.builder().vec(k));
  return run;
}

template <class Machine>
MonotoneFunctional machine_functional(std::string label) {
  return MonotoneFunctional{std::move(label), [](std::span<const Digit> in, std::size_t max_out) {
                              Machine m;
                              const Reader read = prefix_reader(in);
                              Digits out;
                              std::vector<GroupFact> facts;
                              while (out.size() < max_out) {
                                facts.clear();
                                if (!m.advance(read, facts)) break;
                                for (const auto& f : facts) encode_fact(f, out);
                              }
                              if (out.size() > max_out) out.resize(max_out);
                              return out;
                            }};
}

template <class Machine>
class MachineSource : public FactSource {
 public:
  explicit MachineSource(Name input)
      : input_(std::move(input)), read_([this](std::size_t pos) -> std::optional<Digit> {
          return input_(pos);
        }) {}
  bool advance(std::vector<GroupFact>& out) override { return machine_.advance(read_, out); }
  std::size_t declared() const override { return machine_.builder().size(); }

 private:
  Name input_;
  Reader read_;
  Machine machine_;
};

template <class Machine>
EnumeratedOrderedGroup machine_group(const Name& input, OrderTypeCert truth, std::string label) {
  return EnumeratedOrderedGroup([input] { return std::make_unique<MachineSource<Machine>>(input); },
                                truth, std::move(label));
}

// Tuple name prefix determined by the stream prefixes.
Digits tuple_prefix(std::size_t k, const std::vector<Digits>& streams) {
  if (streams.size() != k) throw ArityMismatch("expected " + std::to_string(k) + " stream prefixes");
  Digits out{k};
  for (std::size_t pos = 1;; ++pos) {
    const auto [j, i] = cantor_unpair(pos - 1);
    if (i >= k) {
      out.push_back(0);
      if (k == 0 && pos > 1) break;
      continue;
    }
    if (j >= streams[i].size()) break;
    out.push_back(streams[i][j]);
  }
  return out;
}

}  // namespace

StageRun lpo_star_forward(std::size_t k, const std::vector<Digits>& stream_prefixes,
                          std::size_t stage) {
  return lpo_star_forward_name(tuple_prefix(k, stream_prefixes), stage);
}

StageRun lpo_star_forward_name(std::span<const Digit> tuple_name, std::size_t stage) {
  LpoStarMachine m;
  return run_machine(m, tuple_name, stage);
}

std::optional<Digits> lpo_star_backward(std::size_t k, const std::vector<Digits>& stream_prefixes,
                                        std::span<const Digit> alpha_prefix) {
  if (stream_prefixes.size() != k)
    throw ArityMismatch("expected " + std::to_string(k) + " stream prefixes");
  Digits out{k};
  if (k == 0) return out;
  std::size_t zeros = 0;
  for (const auto& s : stream_prefixes) {
    const bool zero = std::find(s.begin(), s.end(), Digit{0}) != s.end();
    zeros += zero ? 1 : 0;
    out.push_back(zero ? 0 : 1);
  }
  if (copy_elements(alpha_prefix) != k + 1 - zeros) return std::nullopt;
  return out;
}

MonotoneFunctional lpo_star_forward_functional() {
  return machine_functional<LpoStarMachine>("lpo_star_forward");
}

MonotoneFunctional lpo_star_backward_functional() {
  return MonotoneFunctional{"lpo_star_backward", [](std::span<const Digit> in, std::size_t max_out) {
                              Digits out;
                              if (in.empty()) return out;
                              const std::size_t k = in[0];
                              std::vector<bool> zero(k, false);
                              std::size_t zeros = 0, elements = 0;
                              for (std::size_t n = 1;; ++n) {
                                if (elements == k + 1 - zeros) {
                                  out.push_back(k);
                                  for (std::size_t i = 0; i < k; ++i) out.push_back(zero[i] ? 0 : 1);
                                  break;
                                }
                                if (n >= in.size()) break;
                                if (n % 2 == 1) {
                                  elements += in[n] != 0 ? 1 : 0;
                                } else {
                                  const auto [j, i] = cantor_unpair(n / 2 - 1);
                                  if (i < k && in[n] == 0 && !zero[i]) {
                                    zero[i] = true;
                                    ++zeros;
                                  }
                                }
                              }
                              if (out.size() > max_out) out.resize(max_out);
                              return out;
                            }};
}

Reduction lpo_star_to_og_alpha() {
  Reduction r;
  r.name = "lpo_star<=og_alpha";
  r.source = ProblemId::LpoStar;
  r.oracle = ProblemId::OgAlpha;
  r.forward = lpo_star_forward_functional();
  r.backward = lpo_star_backward_functional();
  r.certify = [](const ProblemInstance& x) -> ProblemInstance {
    const auto& t = std::get<StreamTuple>(x);
    std::size_t zeros = 0;
    for (int b : lpo_star(t.k, t.streams)) zeros += b == 0 ? 1 : 0;
    OrderTypeCert truth;
    truth.exponent = t.k + 1 - zeros;
    return machine_group<LpoStarMachine>(instance_name(x), truth,
                                         "lpo_star_group(k=" + std::to_string(t.k) + ")");
  };
  r.decode = counted_tuple_decoder();
  return r;
}

StageRun chi_forward(std::span<const Digit> p_prefix, std::size_t stage) {
  ChiMachine m;
  return run_machine(m, p_prefix, stage);
}

Digits chi_backward(std::span<const Digit> c_prefix) {
  Digits q;
  for (Digit d : c_prefix) q.push_back(d == 1 ? 0 : 1);
  return q;
}

MonotoneFunctional chi_forward_functional() { return machine_functional<ChiMachine>("chi_forward"); }

MonotoneFunctional chi_backward_functional() {
  return MonotoneFunctional{"chi_backward", [](std::span<const Digit> in, std::size_t max_out) {
                              Digits c = deinterleave(in).second;
                              if (c.size() > max_out) c.resize(max_out);
                              return chi_backward(c);
                            }};
}

Reduction chi_to_og_alpha0() {
  Reduction r;
  r.name = "chi<=og_alpha0";
  r.source = ProblemId::Chi;
  r.oracle = ProblemId::OgAlpha0;
  r.forward = chi_forward_functional();
  r.backward = chi_backward_functional();
  r.certify = [](const ProblemInstance& x) -> ProblemInstance {
    const auto& p = std::get<CertifiedStream>(x);
    OrderTypeCert truth;
    if (sigma3_truth(p)) truth.exponent = 1 + p.columns_missing(1);
    return machine_group<ChiMachine>(p.name(), truth, "chi_group");
  };
  r.decode = stream_decoder();
  return r;
}

}  // namespace ogw

namespace ogw {

TargetOrder::TargetOrder(std::size_t alpha, bool epsilon)
    : dim_(alpha), epsilon_(epsilon),
      order_(std::make_shared<const FiniteLinearOrder>(FiniteLinearOrder::range(alpha))) {}

Vec TargetOrder::z_at(std::size_t index) const {
  for (Coefficient r = 0;; ++r) {
    const auto ball = ball_points(dim_, r);
    if (index < ball.size()) return ball[index];
    if (dim_ == 0) return {};
  }
}

std::optional<ZAQElement> TargetOrder::element(Digit label) const {
  std::size_t zi = label, qi = 0;
  if (epsilon_) std::tie(zi, qi) = cantor_unpair(label);
  if (dim_ == 0 && zi > 0) return std::nullopt;
  const Vec z = z_at(zi);
  std::vector<ZXElement::Term> terms;
  for (std::size_t r = 0; r < z.size(); ++r)
    if (z[r] != 0) terms.emplace_back(r, z[r]);
  return ZAQElement{epsilon_ ? rational_at(qi) : Rational(0), ZXElement(order_, std::move(terms))};
}

Digit TargetOrder::label_of(const Vec& z, std::size_t q_index) const {
  if (z.size() != dim_) throw ArityMismatch("vector of dimension " + std::to_string(z.size()));
  Coefficient l1 = 0;
  for (Coefficient c : z) l1 += c < 0 ? -c : c;
  const auto ball = ball_points(dim_, l1);
  const auto it = std::find(ball.begin(), ball.end(), z);
  const Digit zi = static_cast<Digit>(it - ball.begin());
  return epsilon_ ? cantor_pair(zi, q_index) : zi;
}

std::optional<bool> embedding_member(const FactReplay& facts, const TargetOrder& target,
                                     std::span<const Digit> node) {
  struct Pair {
    std::size_t g;
    Digit t;
    ZAQElement image;
  };
  std::vector<Pair> pairs;
  bool open = false;
  for (std::size_t k = 0; k < node.size(); ++k) {
    const std::size_t g = k % 2 == 0 ? k / 2 : node[k];
    const Digit t = k % 2 == 0 ? node[k] : k / 2;
    auto image = target.element(t);
    if (!image) return false;
    if (g >= facts.size()) open = true;
    pairs.push_back({g, t, std::move(*image)});
  }
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      const Pair& x = pairs[a];
      const Pair& y = pairs[b];
      if ((x.g == y.g) != (x.t == y.t)) return false;
      if (x.g == y.g) continue;
      if (x.g >= facts.size() || y.g >= facts.size()) continue;
      const auto lt = facts.less(x.g, y.g);
      if (!lt) {
        open = true;
        continue;
      }
      if (*lt != (zaq_compare(x.image, y.image) == std::strong_ordering::less)) return false;
    }
  }
  if (open) return std::nullopt;
  return true;
}

MonotoneFunctional embedding_tree(const OrdinalCopy& alpha, bool epsilon) {
  if (!alpha.size) throw OracleDomainError("embedding tree needs a finite exponent");
  auto target = std::make_shared<const TargetOrder>(*alpha.size, epsilon);
  return membership_functional("embedding_tree", [target](const FactReplay& f, std::span<const Digit> node) {
    return embedding_member(f, *target, node);
  });
}

namespace {

struct Simulation {
  std::size_t ordinal = 0;
  Digit value = 0;
};

std::optional<Simulation> simulate(const CertifiedStream& f, const MonotoneFunctional& psi0, Digit n) {
  const auto [l, i] = cantor_unpair(n);
  const Node tau = node_decode(i);
  const auto ordinal = least_finite_extension(tau);
  if (!ordinal) return std::nullopt;
  const Digits out = psi0(interleave(f.take(l), tau), 1);
  if (out.empty()) return std::nullopt;
  return Simulation{*ordinal, out[0]};
}

}  // namespace

FirstOrderRun first_order_forward(const CertifiedStream& f, const MonotoneFunctional& phi0,
                                  const MonotoneFunctional& psi0, std::size_t budget) {
  (void)phi0;
  FirstOrderRun run;
  for (Digit n = 0; n < budget; ++n) {
    ++run.examined;
    if (auto s = simulate(f, psi0, n)) run.digits.push_back(s->ordinal);
  }
  run.exhausted = run.digits.empty();
  return run;
}

Digit first_order_backward(const CertifiedStream& f, const MonotoneFunctional& psi0, Digit m,
                           std::size_t budget) {
  for (Digit n = 0; n < budget; ++n) {
    const auto s = simulate(f, psi0, n);
    if (s && s->ordinal == m) return s->value;
  }
  throw BudgetExhausted("no convergent simulation with copy ordinal " + std::to_string(m) +
                        " within budget " + std::to_string(budget));
}

FirstOrderPipeline first_order_pipeline(const CertifiedStream& f, const MonotoneFunctional& phi0,
                                        const MonotoneFunctional& psi0, const OrdinalCopy& alpha,
                                        std::size_t budget) {
  FirstOrderPipeline out;
  out.forward = first_order_forward(f, phi0, psi0, budget);
  if (out.forward.exhausted)
    throw BudgetExhausted("no simulation converged within budget " + std::to_string(budget));
  out.m = *std::min_element(out.forward.digits.begin(), out.forward.digits.end());
  out.value = first_order_backward(f, psi0, out.m, budget);
  const CertifiedStream copy = ordinal_copy_stream(alpha);
  for (std::size_t n = 1;; n *= 2) {
    const Digits d = psi0(interleave(f.take(n), copy.take(n)), 1);
    if (!d.empty()) {
      out.direct = d[0];
      break;
    }
    if (n >= budget) throw BudgetExhausted("direct evaluation undetermined within budget");
  }
  return out;
}

}  // namespace ogw
