#include "ogw/arch.hpp"

#include <algorithm>

#include "ogw/errors.hpp"

namespace ogw {

std::string format_verdict(ArchVerdict v) {
  switch (v) {
    case ArchVerdict::Less:
      return "<<";
    case ArchVerdict::Equivalent:
      return "~";
    case ArchVerdict::Greater:
      return ">>";
  }
  return "?";
}

ArchVerdict arch_compare(const ZXElement& f, const ZXElement& g) {
  zx_compare(f, g);  // order check
  const auto tf = f.top();
  const auto tg = g.top();
  if (!tf && !tg) return ArchVerdict::Equivalent;
  if (!tf) return ArchVerdict::Less;
  if (!tg) return ArchVerdict::Greater;
  const auto& order = f.order() ? f.order() : g.order();
  const auto c = order->compare(*tf, *tg);
  if (c == std::strong_ordering::less) return ArchVerdict::Less;
  if (c == std::strong_ordering::greater) return ArchVerdict::Greater;
  return ArchVerdict::Equivalent;
}

GroupProbe::GroupProbe(EnumeratedOrderedGroup group, std::size_t fact_budget)
    : group_(std::move(group)), budget_(fact_budget) {}

bool GroupProbe::pull() {
  if (read_ >= budget_) return false;
  auto f = group_.fact_at(read_);
  if (!f) return false;
  replay_.apply(*f);
  ++read_;
  return true;
}

void GroupProbe::exhausted(const std::string& what) const {
  throw BudgetExhausted(what + " not decided within " + std::to_string(read_) + " facts");
}

void GroupProbe::declare_through(std::size_t k) {
  while (replay_.size() < k)
    if (!pull()) exhausted("element " + std::to_string(k - 1));
}

std::size_t GroupProbe::power(std::size_t n, std::size_t i) {
  declare_through(n + 1);
  if (i == 0) {
    while (!replay_.identity())
      if (!pull()) exhausted("identity");
    return *replay_.identity();
  }
  std::size_t cur = n;
  for (std::size_t k = 1; k < i; ++k) {
    std::optional<std::size_t> next;
    while (!(next = replay_.product(cur, n)))
      if (!pull()) exhausted("power " + std::to_string(k + 1) + " of g_" + std::to_string(n));
    cur = *next;
  }
  return cur;
}

std::size_t GroupProbe::abs(std::size_t n) {
  declare_through(n + 1);
  for (;;) {
    if (replay_.identity()) {
      if (auto below = replay_.less(n, *replay_.identity())) {
        if (!*below) return n;
        if (auto inv = replay_.inverse(n)) return *inv;
      }
    }
    if (!pull()) exhausted("|g_" + std::to_string(n) + "|");
  }
}

bool GroupProbe::less(std::size_t a, std::size_t b) {
  for (;;) {
    if (auto r = replay_.less(a, b)) return *r;
    if (!pull()) exhausted("comparison of g_" + std::to_string(a) + " and g_" + std::to_string(b));
  }
}

int jump_approx(GroupProbe& probe, std::size_t i, std::size_t n, std::size_t m) {
  const std::size_t p = probe.abs(probe.power(n, i));
  return probe.less(p, probe.abs(m)) ? 1 : 0;
}

int jump_approx(const EnumeratedOrderedGroup& g, std::size_t i, std::size_t n, std::size_t m,
                std::size_t fact_budget) {
  GroupProbe probe(g, fact_budget);
  return jump_approx(probe, i, n, m);
}

std::size_t predicted_stabilization(const ZXElement& gn, const ZXElement& gm) {
  (void)gn;
  const auto top = gm.top();
  if (!top) return 1;
  return static_cast<std::size_t>(std::abs(gm.at(*top))) + 1;
}

bool arch_less(GroupProbe& probe, std::size_t n, std::size_t m, std::size_t max_power) {
  for (std::size_t i = 0; i <= max_power; ++i)
    if (jump_approx(probe, i, n, m) == 0) return false;
  return true;
}

FiniteLinearOrder arch_representatives(const EnumeratedOrderedGroup& g, std::size_t element_bound,
                                       std::size_t max_power, std::size_t fact_budget) {
  GroupProbe probe(g, fact_budget);
  std::vector<std::size_t> reps;
  for (std::size_t n = 0; n <= element_bound; ++n) {
    try {
      probe.declare_through(n + 1);
    } catch (const BudgetExhausted&) {
      if (probe.facts_read() < fact_budget) break;  // finite stream
      throw;
    }
    bool fresh = true;
    for (std::size_t r : reps) {
      if (!arch_less(probe, n, r, max_power) && !arch_less(probe, r, n, max_power)) {
        fresh = false;
        break;
      }
    }
    if (fresh) reps.push_back(n);
  }
  std::stable_sort(reps.begin(), reps.end(), [&](std::size_t a, std::size_t b) {
    return a != b && arch_less(probe, a, b, max_power);
  });
  return FiniteLinearOrder(std::move(reps));
}

}  // namespace ogw
