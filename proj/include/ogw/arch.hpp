#pragma once

// Archimedean comparison, jump approximations and class representatives.

#include <cstddef>
#include <optional>
#include <string>

#include "ogw/groups.hpp"

namespace ogw {

enum class ArchVerdict { Less, Equivalent, Greater };  // <<, ~, >>

std::string format_verdict(ArchVerdict v);
ArchVerdict arch_compare(const ZXElement& f, const ZXElement& g);

// Pulls facts from a group on demand, up to a fact budget.
class GroupProbe {
 public:
  explicit GroupProbe(EnumeratedOrderedGroup group, std::size_t fact_budget = kDefaultBudget);

  const FactReplay& replay() const { return replay_; }
  // Reads one more fact; false once the budget or the stream is exhausted.
  bool pull();
  // Reads facts until `k` elements are declared.
  void declare_through(std::size_t k);
  // Index of g_n^i, reading facts as needed.
  std::size_t power(std::size_t n, std::size_t i);
  std::size_t abs(std::size_t n);
  bool less(std::size_t a, std::size_t b);
  std::size_t facts_read() const { return read_; }

 private:
  [[noreturn]] void exhausted(const std::string& what) const;

  EnumeratedOrderedGroup group_;
  FactReplay replay_;
  std::size_t budget_;
  std::size_t read_ = 0;
};

// p_i(<n,m>) = 1 iff |g_n^i| < |g_m| per the declared facts.
int jump_approx(GroupProbe& probe, std::size_t i, std::size_t n, std::size_t m);
int jump_approx(const EnumeratedOrderedGroup& g, std::size_t i, std::size_t n, std::size_t m,
                std::size_t fact_budget = kDefaultBudget);

// Least i0 after which p_i(<n,m>) is constant, bounded by |top coefficient of g_m| + 1.
std::size_t predicted_stabilization(const ZXElement& gn, const ZXElement& gm);

// g_n << g_m read as p_i(<n,m>) = 1 for every i <= max_power.
bool arch_less(GroupProbe& probe, std::size_t n, std::size_t m, std::size_t max_power);

// Least-index representatives of the Archimedean classes among
// g_0..g_{element_bound}, in <<-order.
FiniteLinearOrder arch_representatives(const EnumeratedOrderedGroup& g, std::size_t element_bound,
                                       std::size_t max_power = 2,
                                       std::size_t fact_budget = 40 * kDefaultBudget);

}  // namespace ogw
