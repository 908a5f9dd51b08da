#include <doctest.h>

#include "ogw/arch.hpp"
#include "ogw/constructions.hpp"
#include "ogw/corpus.hpp"
#include "ogw/errors.hpp"
#include "ogw/harness.hpp"
#include "ogw/rational.hpp"

using namespace ogw;

namespace {

// Index of the element with vector v among the declared vectors.
std::size_t index_of(const std::vector<GroupFact>& facts, const EnumeratedOrderedGroup& g, Coefficient v) {
  (void)facts;
  for (std::size_t k = 0;; ++k) {
    const auto e = g.element(k);
    REQUIRE(e);
    if (e->terms().empty() ? v == 0 : (e->terms().size() == 1 && e->terms()[0].second == v)) return k;
  }
}

Digits zeros_then(std::size_t pos) {
  Digits d(pos, 1);
  return d;
}

StreamTuple tuple(std::vector<CertifiedStream> s) { return StreamTuple{s.size(), std::move(s)}; }

}  // namespace

TEST_CASE("node codes are a bijection") {
  for (Digit n = 0; n < 2000; ++n) CHECK(node_code(node_decode(n)) == n);
  CHECK(node_decode(0).empty());
  CHECK(node_code(Node{0}) == 1);
}

TEST_CASE("q tree on Z^1 follows the rational enumeration") {
  const auto g = standard_group_facts(FiniteLinearOrder::range(1));
  const auto facts = g.facts(4000);
  FactReplay r;
  for (const auto& f : facts) r.apply(f);
  const std::size_t i3 = index_of(facts, g, 3), i5 = index_of(facts, g, 5);
  REQUIRE(rational_at(0) < rational_at(2));
  REQUIRE(rational_at(1) < rational_at(0));
  // q_0 = 0 and q_1 = -1: the image of q_1 must lie below the image of q_0.
  CHECK(q_tree_member(r, Node{i5, i3}) == true);
  CHECK(q_tree_member(r, Node{i3, i5}) == false);
  CHECK(q_tree_member(r, Node{i3, i3}) == false);
  CHECK_FALSE(q_tree_member(r, Node{i3, 100000}).has_value());
}

TEST_CASE("embed_q_tree output is monotone") {
  const auto g = free_abelian_facts(corpus_path_trees()[0]);
  const Digits in = g.digits(3000);
  const auto f = embed_q_tree();
  Digits prev;
  for (std::size_t n = 0; n <= in.size(); n += 300) {
    const Digits out = f(std::span<const Digit>(in.data(), n), 500);
    CHECK(is_prefix(prev, out));
    prev = out;
  }
  CHECK(!prev.empty());
}

TEST_CASE("embed_q_tree probe finds deep members on a Path group") {
  const auto g = free_abelian_facts(corpus_path_trees()[0]);
  const auto facts = g.facts_until_declared(60);
  Digits digits = encode_facts(facts);
  const TreeDesc t = decided_tree(digits, q_tree_member, "probe");
  const auto path = bounded_path_search(t, 4, 60);
  REQUIRE(path);
  CHECK(path->size() == 4);
}

TEST_CASE("epsilon decode and WF <-> epsilon reductions on the corpus") {
  CHECK(epsilon_decode(0) == 0);
  CHECK(epsilon_decode(1) == 1);
  const auto to_eps = wf_to_og_epsilon();
  const auto to_wf = og_epsilon_to_wf();
  for (const auto& t : corpus_trees()) {
    CAPTURE(t.label);
    const int want = wf(t);
    const auto res = run_reduction(to_eps, t);
    CHECK(res.answer.values == Digits{static_cast<Digit>(want)});
    const auto g = free_abelian_facts(t);
    CHECK(solve_og(g, OgWant::Epsilon).epsilon == want);
    const auto back = run_reduction(to_wf, g);
    CHECK(back.answer.values == Digits{static_cast<Digit>(want)});
  }
}

TEST_CASE("WF <= OG->epsilon realizer check over finite trees") {
  std::vector<ProblemInstance> xs;
  for (const auto& t : corpus_finite_trees()) xs.push_back(t);
  const auto report = check_realizer(reduction_realizer(wf_to_og_epsilon()), ProblemId::Wf, xs);
  CHECK(report.pass());
}

TEST_CASE("forward cross-check rejects a wrong certification") {
  auto r = wf_to_og_epsilon();
  r.certify = [](const ProblemInstance&) -> ProblemInstance {
    return free_abelian_facts(corpus_finite_trees()[4]);
  };
  CHECK_THROWS_AS(run_reduction(r, corpus_finite_trees()[0]), OracleDomainError);
}

TEST_CASE("forest decoding") {
  ForestMap f;
  auto order = std::make_shared<const FiniteLinearOrder>(FiniteLinearOrder::range(1));
  f.identity = ZAQElement{Rational(1, 2), ZXElement(order)};
  f.roots = {ZAQElement{Rational(1, 2), ZXElement(order, {{0, 1}})}, std::nullopt};
  CHECK(read_epsilon_from_f(f, 0) == 0);
  CHECK_FALSE(read_epsilon_from_f(f, 1).has_value());
  f.roots[1] = ZAQElement{Rational(1, 3), ZXElement(order)};
  CHECK_THROWS_AS(read_epsilon_from_f(f, 1), MalformedMap);
  f.roots[1] = ZAQElement{Rational(2, 3), ZXElement(order)};
  CHECK(read_epsilon_from_f(f, 1) == 1);

  const Forest forest{corpus_finite_trees()[1], corpus_path_trees()[0]};
  CHECK(decode_forest_bits(forest_embedding(forest)) == std::vector<int>{0, 1});
  CHECK(forest_group_facts(forest).truth()->tree_bits == std::vector<int>{0, 1});
}

TEST_CASE("lpo_star forward without zeros is the standard copy") {
  std::vector<Digits> streams{Digits(6, 1)};
  const StageRun run = lpo_star_forward(1, streams, 4);
  const auto standard = standard_group_facts(FiniteLinearOrder::range(2)).facts(run.facts.size());
  CHECK(run.facts == standard);
  CHECK(run.plans.size() == 5);
  for (const auto& p : run.plans) CHECK(p.reinterpretations.empty());
}

TEST_CASE("lpo_star reinterpretation uses 2 max + 1 and keeps facts") {
  std::vector<Digits> streams{Digits{1, 1, 1, 0}};
  const StageRun run = lpo_star_forward(1, streams, 12);
  std::size_t seen = 0;
  for (const auto& p : run.plans) {
    for (const auto& re : p.reinterpretations) {
      ++seen;
      // stream 0 digit 3 sits at name position 1 + <3,0> = 7; boxes up to 6 precede it
      CHECK(p.stage == 7);
      CHECK(re.l == 2 * 6 + 1);
    }
  }
  CHECK(seen == 1);
  FactReplay replay;
  for (const auto& f : run.facts) replay.apply(f);
  for (std::size_t a = 0; a < run.vectors.size(); ++a)
    for (std::size_t b = 0; b < run.vectors.size(); ++b) {
      const auto lt = replay.less(a, b);
      if (lt) CHECK(*lt == (vec_compare(run.vectors[a], run.vectors[b]) == std::strong_ordering::less));
    }
  CHECK(run.plans.back().dim == 1);
}

TEST_CASE("lpo_star group with two zeros collapses to Z^1") {
  const auto x = tuple({CertifiedStream::constant(0), CertifiedStream::constant(0)});
  const auto r = lpo_star_to_og_alpha();
  const auto g = std::get<EnumeratedOrderedGroup>(r.certify(x));
  CHECK(g.truth()->exponent == 1);
  const Digits name = instance_name(x).take(6);
  const StageRun run = lpo_star_forward_name(name, 5);
  CHECK(run.plans.back().dim == 1);
  CHECK(arch_representatives(g, 12, 40).size() == 2);
}

TEST_CASE("lpo_star backward matches counts") {
  CHECK(lpo_star_backward(0, {}, Digits{}) == Digits{0});
  CHECK(lpo_star_backward(1, {Digits{1, 1}}, Digits{1, 1}) == Digits{1, 1});
  CHECK_FALSE(lpo_star_backward(1, {Digits{1, 1}}, Digits{1}).has_value());
  CHECK(lpo_star_backward(2, {Digits{1, 0}, Digits{1}}, Digits{1, 0, 2}) == Digits{2, 0, 1});
}

TEST_CASE("lpo_star end to end") {
  const auto r = lpo_star_to_og_alpha();
  std::vector<ProblemInstance> xs;
  for (std::size_t k = 0; k <= 3; ++k) {
    for (std::size_t mask = 0; mask < (1u << k); ++mask) {
      std::vector<CertifiedStream> s;
      for (std::size_t i = 0; i < k; ++i)
        s.push_back((mask >> i) & 1 ? CertifiedStream::constant(1, zeros_then(i + 1)) : CertifiedStream::constant(1));
      for (std::size_t i = 0; i < k; ++i)
        if ((mask >> i) & 1) s[i] = CertifiedStream(Digits{1, 1, 0}, Constant{1});
      xs.push_back(tuple(s));
    }
  }
  const auto report = check_realizer(reduction_realizer(r), ProblemId::LpoStar, xs);
  CHECK_MESSAGE(report.pass(), report.str());
}

TEST_CASE("chi forward machine") {
  // column 0 opens with 0; column 1 (position 2) not read yet
  const Digits p{0, 0};
  const StageRun run = chi_forward(p, kUnbounded);
  CHECK(run.plans.back().dim == 2);

  // column 0 opens with 0 and shows its first 1 at row 2 (position 3)
  const Digits q{0, 0, 0, 1};
  REQUIRE(cantor_pair(2, 0) == 3);
  const StageRun r2 = chi_forward(q, kUnbounded);
  CHECK(r2.plans.back().dim == 2);
  std::size_t collapses = 0;
  for (const auto& pl : r2.plans) collapses += pl.reinterpretations.size();
  CHECK(collapses == 1);
}

TEST_CASE("chi backward rule") {
  CHECK(chi_backward(Digits{1, 0, 1, 0, 1, 0, 0}) == Digits{0, 1, 0, 1, 0, 1, 1});
  CHECK(chi_backward(Digits{}).empty());
  CHECK(chi_backward(Digits{1, 2, 1}) == Digits{0, 1, 0});
}

TEST_CASE("chi end to end on four-column matrices") {
  const auto r = chi_to_og_alpha0();
  std::vector<ProblemInstance> xs;
  for (std::size_t mask = 0; mask < 16; ++mask) {
    std::vector<CertifiedStream> cols;
    for (std::size_t i = 0; i < 4; ++i) cols.push_back(CertifiedStream::constant((mask >> i) & 1));
    xs.push_back(CertifiedStream::matrix(cols, CertifiedStream::constant(1)));
  }
  xs.push_back(CertifiedStream::constant(0));
  const auto report = check_realizer(reduction_realizer(r), ProblemId::Chi, xs);
  CHECK_MESSAGE(report.pass(), report.str());
  const auto g = std::get<EnumeratedOrderedGroup>(r.certify(xs[0b0101]));
  CHECK(g.truth()->exponent == 3);
  CHECK_FALSE(std::get<EnumeratedOrderedGroup>(r.certify(xs.back())).truth()->exponent);
}

TEST_CASE("embedding tree finds partial isomorphisms") {
  const auto g = standard_group_facts(FiniteLinearOrder::range(1));
  const Digits d = encode_facts(g.facts_until_declared(30));
  const TargetOrder target(1, false);
  const MembershipRule rule = [&target](const FactReplay& f, std::span<const Digit> node) {
    return embedding_member(f, target, node);
  };
  const TreeDesc t = decided_tree(d, rule, "iso");
  const auto path = bounded_path_search(t, 4, 30);
  REQUIRE(path);
  FactReplay replay;
  replay.feed(d);
  CHECK(embedding_member(replay, target, Node{0, 0}) == true);
  // g_0 = 0 -> 0 and g_1 = -1 -> 1 reverses the order
  CHECK(embedding_member(replay, target, Node{0, 0, target.label_of(Vec{1})}) == false);
  CHECK(embedding_member(replay, target, Node{0, 0, target.label_of(Vec{-1})}) == true);
  CHECK(embedding_tree(OrdinalCopy{1}, false)(d, 20).size() == 20);
}

TEST_CASE("first-order pipeline") {
  const MonotoneFunctional constant7{"seven", [](std::span<const Digit>, std::size_t m) {
                                       return m ? Digits{7} : Digits{};
                                     }};
  const MonotoneFunctional one_after_element{
      "one-after-element", [](std::span<const Digit> in, std::size_t m) {
        const Digits c = deinterleave(in).second;
        for (Digit d : c)
          if (d != 0 && m) return Digits{1};
        return Digits{};
      }};
  const MonotoneFunctional never{"never", [](std::span<const Digit>, std::size_t) { return Digits{}; }};
  const auto f = CertifiedStream::constant(1, {2});
  const auto run = first_order_forward(f, identity_functional(), constant7, 50);
  REQUIRE(!run.digits.empty());
  CHECK(run.digits[0] == 0);
  CHECK(first_order_backward(f, constant7, 0, 50) == 7);
  CHECK(first_order_forward(f, identity_functional(), never, 50).exhausted);
  CHECK_THROWS_AS(first_order_backward(f, never, 0, 50), BudgetExhausted);

  const auto p = first_order_pipeline(f, identity_functional(), one_after_element, OrdinalCopy{2}, 400);
  CHECK(p.m == 1);
  CHECK(p.m <= 2);
  CHECK(p.value == p.direct);
}
