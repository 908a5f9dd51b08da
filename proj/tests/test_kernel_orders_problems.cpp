#include <doctest.h>

#include <random>
#include <sstream>

#include "ogw/constructions.hpp"
#include "ogw/corpus.hpp"
#include "ogw/errors.hpp"
#include "ogw/harness.hpp"
#include "ogw/kernel.hpp"
#include "ogw/orders.hpp"
#include "ogw/problems.hpp"

using namespace ogw;

TEST_CASE("cantor pairing round trips") {
  CHECK(cantor_pair(0, 0) == 0);
  CHECK(cantor_pair(1, 0) == 1);
  CHECK(cantor_pair(0, 1) == 2);
  for (Digit n = 0; n < 5000; ++n) {
    const auto [j, i] = cantor_unpair(n);
    CHECK(cantor_pair(j, i) == n);
  }
}

TEST_CASE("certified streams expose prefix then tail") {
  const auto s = CertifiedStream::periodic({2, 3}, {7});
  CHECK(s.take(5) == Digits{7, 2, 3, 2, 3});
  CHECK(s.name().take(5) == s.take(5));
  CHECK(s.minimum() == 2);
  CHECK_FALSE(s.limit());
  const auto m = CertifiedStream::matrix({CertifiedStream::constant(0), CertifiedStream::constant(1)},
                                         CertifiedStream::constant(2));
  for (Digit n = 0; n < 50; ++n) {
    const auto [j, i] = cantor_unpair(n);
    CHECK(m.at(n) == std::min<Digit>(i, 2));
  }
  CHECK(m.column_contains(1, 1));
  CHECK_FALSE(m.column_contains(0, 1));
}

TEST_CASE("names are deterministic") {
  const Name n = CertifiedStream::constant(4, {1, 2}).name();
  CHECK(n.take(10) == n.take(10));
  Cursor c{n};
  CHECK(c.pull() == 1);
  CHECK(c.pull() == 2);
  CHECK(c.position == 2);
}

TEST_CASE("extend on trivial functionals") {
  const Digits in{3, 1, 4};
  CHECK(extend(identity_functional(), in) == in);
  CHECK(extend(empty_functional(), Digits{9, 9}).empty());
}

TEST_CASE("shipped functionals are monotone on nested prefixes") {
  std::mt19937 rng(7);
  const std::vector<MonotoneFunctional> fs{embed_q_tree(), free_abelian_forward(), lpo_star_forward_functional(),
                                           lpo_star_backward_functional(), chi_forward_functional(),
                                           chi_backward_functional()};
  for (const auto& f : fs) {
    CAPTURE(f.label);
    for (int trial = 0; trial < 20; ++trial) {
      Digits in;
      if (f.label == "embed_q_tree")
        in = standard_group_facts(FiniteLinearOrder::range(2)).digits(400);
      else if (f.label == "free_abelian")
        in = tree_name(corpus_trees()[trial % 10]).take(60);
      else if (f.label == "lpo_star_forward" || f.label == "lpo_star_backward")
        in = Digits{2};
      for (std::size_t k = in.size(); k < 14; ++k) in.push_back(rng() % 3);
      const std::size_t cut = rng() % in.size();
      const Digits a = f(std::span<const Digit>(in.data(), cut), 300);
      const Digits b = f(in, 300);
      CHECK(is_prefix(a, b));
    }
  }
}

TEST_CASE("obliviousness: equal prefixes give equal outputs") {
  const auto x = CertifiedStream(Digits{0, 0, 1, 0}, Constant{1});
  const auto y = CertifiedStream(Digits{0, 0, 1, 0}, Constant{0});
  const auto f = chi_forward_functional();
  CHECK(f(x.take(4)) == f(y.take(4)));
}

TEST_CASE("run_reduction examples and determinism") {
  const auto r1 = run_reduction(wf_to_og_epsilon(), finite_tree({{0}}));
  CHECK(r1.answer.values == Digits{0});
  const StreamTuple t{1, {CertifiedStream::constant(1)}};
  const auto r2 = run_reduction(lpo_star_to_og_alpha(), t);
  CHECK(r2.answer.values == Digits{1, 1});
  const auto p = CertifiedStream::matrix({}, CertifiedStream::periodic({0, 1}));
  const auto r3 = run_reduction(chi_to_og_alpha0(), p);
  REQUIRE(r3.answer.stream);
  CHECK(sigma2_truth(*r3.answer.stream));
  CHECK(run_reduction(lpo_star_to_og_alpha(), t).transcript.str() == r2.transcript.str());
  CHECK(r2.transcript.use("input") == r2.input_use);
}

TEST_CASE("budget exhaustion is an error") {
  const StreamTuple t{3, {CertifiedStream::constant(1), CertifiedStream::constant(1), CertifiedStream::constant(1)}};
  CHECK_THROWS_AS(run_reduction(lpo_star_to_og_alpha(), t, RunConfig{2, false}), BudgetExhausted);
  CHECK_NOTHROW(run_reduction(lpo_star_to_og_alpha(), t));
}

TEST_CASE("check_realizer on LPO") {
  const auto good = functional_realizer("lpo", [](const ProblemInstance& x) {
    return Answer{{static_cast<Digit>(lpo(std::get<CertifiedStream>(x)))}, std::nullopt};
  });
  const auto zero = functional_realizer("zero", [](const ProblemInstance&) { return Answer{{0}, std::nullopt}; });
  const std::vector<ProblemInstance> xs{CertifiedStream::constant(1)};
  CHECK(check_realizer(good, ProblemId::Lpo, xs).pass());
  CHECK_FALSE(check_realizer(zero, ProblemId::Lpo, xs).pass());
  std::vector<ProblemInstance> groups;
  for (const auto& tr : corpus_finite_trees()) groups.push_back(free_abelian_facts(tr));
  CHECK(check_realizer(reduction_realizer(og_epsilon_to_wf()), ProblemId::OgEpsilon, groups).pass());
}

TEST_CASE("kb_compare") {
  CHECK(kb_compare(Node{1}, Node{0}) == std::strong_ordering::greater);
  CHECK(kb_compare(Node{0, 3}, Node{0}) == std::strong_ordering::less);
  CHECK(kb_compare(Node{2, 1}, Node{2, 1}) == std::strong_ordering::equal);
  const auto nodes = tree_enumerate(full_tree(2), 3, 2);
  for (const auto& a : nodes)
    for (const auto& b : nodes) {
      CHECK(kb_compare(a, b) == 0 <=> kb_compare(b, a));
      for (const auto& c : {Node{}, Node{1}, Node{0, 2}})
        if (kb_compare(a, b) < 0 && kb_compare(b, c) < 0) CHECK(kb_compare(a, c) < 0);
      if (b.size() > a.size() && std::equal(a.begin(), a.end(), b.begin())) CHECK(kb_compare(b, a) < 0);
    }
}

TEST_CASE("product_compare") {
  const auto x = FiniteLinearOrder::range(2);
  const Id a = 0, b = 1;
  CHECK(product_compare(x, x, a, b, b, a) == std::strong_ordering::greater);
  CHECK(product_compare(x, x, a, b, b, b) == std::strong_ordering::less);
  CHECK(product_compare(x, x, b, a, b, a) == std::strong_ordering::equal);
  CHECK_THROWS_AS(product_compare(x, x, a, 5, b, b), UnknownId);
}

TEST_CASE("tree enumeration and search") {
  CHECK(tree_enumerate(finite_tree({{0}}), 2, 3) == std::vector<Node>{{}, {0}});
  CHECK(tree_enumerate(full_tree(1), 2, 1) ==
        std::vector<Node>{{}, {0}, {1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK_FALSE(bounded_path_search(finite_tree({{0}}), 2, 5));
  CHECK(bounded_path_search(path_tree(CertifiedStream::periodic({0}), {}, 0), 4, 4) == Node{0, 0, 0, 0});
  const auto g = standard_group_facts(FiniteLinearOrder::range(2));
  const TreeDesc q = decided_tree(encode_facts(g.facts_until_declared(50)), q_tree_member, "q");
  CHECK(bounded_path_search(q, 3, 50));
  const auto listed = tree_enumerate(q, 2, 5);
  CHECK(!listed.empty());
  for (const auto& n : listed)
    if (!n.empty()) CHECK(std::find(listed.begin(), listed.end(), Node(n.begin(), n.end() - 1)) != listed.end());
}

TEST_CASE("finite trees are KB well-ordered") {
  for (const auto& t : corpus_finite_trees()) {
    auto nodes = tree_enumerate(t, 8, t.branch_bound);
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return kb_compare(a, b) < 0; });
    for (std::size_t k = 1; k < nodes.size(); ++k) CHECK(kb_compare(nodes[k - 1], nodes[k]) < 0);
  }
}

TEST_CASE("tree file round trip") {
  std::istringstream in("# sample\n-\n0\n0,1\nbound 1\ncert wf 3\n");
  const TreeDesc t = parse_tree(in, "sample");
  CHECK(t.contains(Node{0, 1}));
  CHECK_FALSE(t.contains(Node{1}));
  CHECK(wf(t) == 0);
  std::istringstream back(format_tree(t, 4));
  CHECK(tree_enumerate(parse_tree(back), 4, 1) == tree_enumerate(t, 4, 1));
  std::istringstream path("-\n0\ncert path ;0\n");
  CHECK(wf(parse_tree(path)) == 1);
}

TEST_CASE("tree names decode") {
  for (const auto& t : corpus_trees()) {
    const Digits d = tree_name(t).take(40);
    const auto dec = decode_tree_name(d);
    const auto direct = tree_enumerate(t, dec.complete_levels == 0 ? 0 : dec.complete_levels - 1, t.branch_bound);
    CHECK(std::vector<Node>(dec.members.begin(), dec.members.begin() + direct.size()) == direct);
  }
}

TEST_CASE("problem solvers") {
  CHECK(lpo(CertifiedStream::constant(1, {1, 1})) == 1);
  CHECK(lpo(CertifiedStream::constant(3, {5, 0, 2})) == 0);
  CHECK(lpo(CertifiedStream::periodic({2, 3})) == 1);
  CHECK(lpo_star(0, {}).empty());
  CHECK(lpo_star(2, {CertifiedStream::constant(1), CertifiedStream::constant(1, {0})}) == std::vector<int>{1, 0});
  CHECK_THROWS_AS(lpo_star(2, {CertifiedStream::constant(1)}), ArityMismatch);
  CHECK(min_op(CertifiedStream::constant(7, {5, 3})) == 3);
  CHECK(min_op(CertifiedStream::constant(0)) == 0);
  CHECK(min_op(CertifiedStream::periodic({4, 9}, {6})) == 4);
  CHECK(lim2(CertifiedStream::constant(1, {0, 1, 0})) == 1);
  CHECK(lim2(CertifiedStream::constant(0)) == 0);
  CHECK_THROWS_AS(lim2(CertifiedStream::periodic({0, 1})), NoLimit);
  CHECK(wf(finite_tree({{0}})) == 0);
  CHECK(wf(path_tree(CertifiedStream::periodic({0}), {}, 0)) == 1);
  CHECK(wf_hat({}).empty());
  CHECK(wf_hat({finite_tree({{0}}), full_tree(0)}) == std::vector<int>{0, 1});
  TreeDesc bare = finite_tree({{0}});
  bare.certificate.reset();
  CHECK_THROWS_AS(wf(bare), Uncertified);
  TreeDesc lying = path_tree(CertifiedStream::constant(1), {}, 1);
  lying.membership = [](std::span<const Digit> s) { return s.size() < 2; };
  CHECK_THROWS_AS(wf(lying), BadCertificate);
}

TEST_CASE("lpo_star agrees with componentwise lpo on random tuples") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = rng() % 6;
    std::vector<CertifiedStream> s;
    for (std::size_t i = 0; i < k; ++i) {
      Digits pre;
      for (int j = 0; j < 4; ++j) pre.push_back(rng() % 3);
      s.push_back(CertifiedStream::constant(1 + rng() % 2, pre));
    }
    const auto got = lpo_star(k, s);
    for (std::size_t i = 0; i < k; ++i) CHECK(got[i] == lpo(s[i]));
    for (std::size_t i = 0; i < k; ++i)
      for (Digit d : s[i].take(1000)) CHECK(min_op(s[i]) <= d);
  }
}

TEST_CASE("solve_og") {
  const auto z2 = solve_og(standard_group_facts(FiniteLinearOrder::range(2)), OgWant::AlphaEpsilon);
  CHECK(z2.alpha->size == 2);
  CHECK(z2.epsilon == 0);
  CHECK(solve_og(free_abelian_facts(full_tree(0)), OgWant::Epsilon).epsilon == 1);
  CHECK_THROWS_AS(solve_og(EnumeratedOrderedGroup::from_facts({}), OgWant::Epsilon), Uncertified);
  // all columns hit 1 except columns 0 and 2
  const auto p = CertifiedStream::matrix({CertifiedStream::constant(0), CertifiedStream::constant(1),
                                          CertifiedStream::constant(0)},
                                         CertifiedStream::constant(1));
  const auto g = std::get<EnumeratedOrderedGroup>(chi_to_og_alpha0().certify(p));
  CHECK(solve_og(g, OgWant::Alpha0).alpha->size == 3);
}

TEST_CASE("ordinal copy format") {
  const auto c = ordinal_copy_stream(OrdinalCopy{3});
  CHECK(c.take(5) == Digits{1, 1, 1, 0, 0});
  CHECK(copy_elements(c.take(5)) == 3);
  CHECK(least_finite_extension(Digits{1, 0, 2}) == 2);
  CHECK(least_finite_extension(Digits{}) == 0);
  CHECK_FALSE(least_finite_extension(Digits{3}));
  const std::string lines = format_copy_lines(c.take(5), true);
  std::istringstream in(lines);
  bool finished = false;
  const Digits back = parse_copy_lines(in, &finished);
  CHECK(finished);
  CHECK(copy_elements(back) == 3);
}
