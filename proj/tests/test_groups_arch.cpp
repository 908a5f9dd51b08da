#include <random>

#include "doctest.h"
#include "ogw/arch.hpp"
#include "ogw/errors.hpp"
#include "ogw/groups.hpp"

using namespace ogw;

namespace {

std::shared_ptr<const LinearOrder> chain(std::size_t n) {
  return std::make_shared<FiniteLinearOrder>(FiniteLinearOrder::range(n));
}

}  // namespace

TEST_CASE("zx_add drops zeros and sums coefficients") {
  auto x = chain(2);
  ZXElement a(x, {{0, 2}}), b(x, {{0, -2}});
  CHECK(zx_add(a, b).is_identity());
  ZXElement c(x, {{0, 1}}), d(x, {{1, 3}});
  CHECK(zx_add(c, d) == ZXElement(x, {{0, 1}, {1, 3}}));
}

TEST_CASE("zx_compare reads the sign at the top disagreement") {
  auto x = chain(2);
  CHECK(zx_compare(ZXElement(x, {{0, 2}}), ZXElement(x, {{1, 1}})) == std::strong_ordering::less);
  CHECK(zx_compare(ZXElement(x, {{1, -1}}), ZXElement(x, {{0, 100}})) == std::strong_ordering::less);
  CHECK(zx_compare(ZXElement(x), ZXElement(x)) == std::strong_ordering::equal);
}

TEST_CASE("elements over different orders do not mix") {
  ZXElement a(chain(2), {{0, 1}}), b(chain(2), {{0, 1}});
  CHECK_THROWS_AS(zx_add(a, b), MismatchedOrder);
  CHECK_THROWS_AS(zx_compare(a, b), MismatchedOrder);
}

TEST_CASE("zx_abs") {
  auto x = chain(1);
  CHECK(zx_abs(ZXElement(x, {{0, -3}})) == ZXElement(x, {{0, 3}}));
  CHECK(zx_abs(ZXElement(x)).is_identity());
  std::mt19937_64 rng(7);
  auto x4 = chain(4);
  for (int k = 0; k < 200; ++k) {
    std::vector<ZXElement::Term> t;
    for (Id i = 0; i < 4; ++i) t.emplace_back(i, static_cast<Coefficient>(rng() % 11) - 5);
    ZXElement f(x4, t);
    CHECK(zx_compare(zx_abs(f), ZXElement(x4)) != std::strong_ordering::less);
  }
}

TEST_CASE("zaq_compare is dominated by the Q-coordinate") {
  auto x = chain(1);
  ZAQElement u{Rational(0), ZXElement(x, {{0, 5}})}, v{Rational(1), ZXElement(x)};
  CHECK(zaq_compare(u, v) == std::strong_ordering::less);
  ZAQElement a{Rational(1, 2), ZXElement(x)}, b{Rational(1, 2), ZXElement(x, {{0, 1}})};
  CHECK(zaq_compare(a, b) == std::strong_ordering::less);
  CHECK(zaq_compare(a, a) == std::strong_ordering::equal);
}

TEST_CASE("rational enumeration") {
  const std::vector<Rational> head{Rational(0),     Rational(-1),   Rational(1), Rational(-2),
                                   Rational(-1, 2), Rational(1, 2), Rational(2)};
  for (std::size_t l = 0; l < head.size(); ++l) {
    CHECK(rational_at(l) == head[l]);
    CHECK(rational_index(head[l]) == l);
  }
  CHECK(rational_at(rational_between(Rational(0), Rational(1))) == Rational(1, 2));
  CHECK(rational_at(rational_between(std::nullopt, Rational(-1))) == Rational(-2));
}

TEST_CASE("fact lines round-trip") {
  for (const char* line : {"el 3", "id 0", "cmp 1 2", "mul 1 2 3", "inv 4 5"})
    CHECK(format_fact(parse_fact(line)) == line);
  CHECK_THROWS_AS(parse_fact("cmp 1"), ParseError);
  CHECK_THROWS_AS(parse_fact("foo 1"), ParseError);
  std::vector<GroupFact> facts{{FactKind::El, 0}, {FactKind::Id, 0}, {FactKind::Mul, 0, 0, 0}};
  Digits d = encode_facts(facts);
  CHECK(decode_facts(d) == facts);
  std::size_t used = 0;
  CHECK(decode_facts(std::span(d).first(d.size() - 1), &used).size() == 2);
  CHECK(used == 4);
}

TEST_CASE("standard Z^1 facts agree with integer arithmetic") {
  auto g = standard_group_facts(FiniteLinearOrder::range(1));
  const auto facts = g.facts(2000);
  FactReplay r;
  for (const auto& f : facts) r.apply(f);
  REQUIRE(r.identity());
  for (const auto& f : facts) {
    auto val = [&](std::size_t k) { return g.element(k)->at(0); };
    if (f.kind == FactKind::Cmp) CHECK(val(f.a) < val(f.b));
    if (f.kind == FactKind::Mul) CHECK(val(f.a) + val(f.b) == val(f.c));
    if (f.kind == FactKind::Inv) CHECK(val(f.a) == -val(f.b));
    if (f.kind == FactKind::Id) CHECK(val(f.a) == 0);
  }
  for (std::size_t k = 0; k + 1 < r.size(); ++k) CHECK(r.product(*r.identity(), k) == k);
}

TEST_CASE("standard Z^2: the top generator is above the bottom coordinate line") {
  auto g = standard_group_facts(FiniteLinearOrder::range(2));
  auto facts = g.facts(4000);
  FactReplay r;
  for (const auto& f : facts) r.apply(f);
  std::optional<std::size_t> top;
  for (std::size_t k = 0; k < r.size(); ++k)
    if (*g.element(k) == ZXElement(g.element(k)->order(), {{1, 1}})) top = k;
  REQUIRE(top);
  for (std::size_t k = 0; k < r.size(); ++k)
    if (g.element(k)->at(1) == 0) CHECK(r.less(k, *top) == true);
}

TEST_CASE("every pair declared by stage s is compared") {
  auto g = standard_group_facts(FiniteLinearOrder::range(2));
  FactReplay r;
  for (const auto& f : g.facts(3000)) r.apply(f);
  REQUIRE(r.size() > 10);
  // The newest element may still be mid-declaration.
  for (std::size_t a = 0; a + 1 < r.size(); ++a)
    for (std::size_t b = 0; b + 1 < r.size(); ++b) CHECK(r.less(a, b).has_value());
}

TEST_CASE("free abelian group of a three-node tree") {
  auto t = finite_tree({{}, {0}, {1}});
  auto g = free_abelian_facts(t);
  REQUIRE(g.truth());
  CHECK(g.truth()->exponent == 3u);
  CHECK_FALSE(g.truth()->epsilon);
  auto reps = arch_representatives(g, 40, 3);
  REQUIRE(reps.size() == 4);
  std::vector<std::string> tops;
  for (Id k : reps.elements()) {
    auto e = *g.element(k);
    tops.push_back(e.top() ? e.order()->describe(*e.top()) : "e");
  }
  CHECK(tops == std::vector<std::string>{"e", "0", "1", "-"});
}

TEST_CASE("free abelian group of {lambda} is Z") {
  auto g = free_abelian_facts(finite_tree({{}}));
  CHECK(arch_representatives(g, 2).size() == 2);
  CHECK(arch_representatives(g, 6, 4).size() == 2);
}

TEST_CASE("forest certificates") {
  auto g = forest_group_facts({finite_tree({{}}), finite_tree({{}, {0}})});
  CHECK(g.truth()->tree_bits == std::vector<int>{0, 0});
  CHECK_FALSE(g.truth()->epsilon);
  auto h = forest_group_facts({finite_tree({{}}), full_tree(1)});
  CHECK(h.truth()->tree_bits == std::vector<int>{0, 1});
  CHECK(h.truth()->epsilon);
}

TEST_CASE("arch_compare") {
  auto x = chain(2);
  CHECK(arch_compare(ZXElement(x, {{0, 5}}), ZXElement(x, {{1, 1}})) == ArchVerdict::Less);
  CHECK(arch_compare(ZXElement(x, {{0, 1}}), ZXElement(x, {{0, -3}})) == ArchVerdict::Equivalent);
  CHECK(arch_compare(ZXElement(x), ZXElement(x)) == ArchVerdict::Equivalent);
}

TEST_CASE("jump approximations on Z^2") {
  auto g = standard_group_facts(FiniteLinearOrder::range(2));
  std::optional<std::size_t> x0, x1;
  for (std::size_t k = 0; k < 20; ++k) {
    auto e = *g.element(k);
    if (e == ZXElement(e.order(), {{0, 1}})) x0 = k;
    if (e == ZXElement(e.order(), {{1, 1}})) x1 = k;
  }
  REQUIRE(x0);
  REQUIRE(x1);
  CHECK(jump_approx(g, 5, *x0, *x1) == 1);
  CHECK(jump_approx(g, 2, *x0, *x0) == 0);
}

TEST_CASE("collapse preserves earlier comparisons") {
  VectorGroupBuilder b(3);
  std::vector<GroupFact> facts;
  for (const auto& v : box_points(3, 2)) b.declare(v, facts);
  CHECK(b.max_abs(1) == 2);
  CHECK(b.collapse(2) == 5);
  for (const auto& f : facts) {
    if (f.kind == FactKind::Cmp) CHECK(vec_compare(b.vec(f.a), b.vec(f.b)) == std::strong_ordering::less);
    if (f.kind == FactKind::Mul) {
      for (std::size_t c = 0; c < b.dim(); ++c) CHECK(b.vec(f.a)[c] + b.vec(f.b)[c] == b.vec(f.c)[c]);
    }
  }
}
