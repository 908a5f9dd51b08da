#pragma once

// Diagonalization games against candidate reductions: LPO x LPO to WF and
// lim2 x lim2 to WF x Min.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ogw/harness.hpp"

namespace ogw {

struct Candidate {
  std::string label;
  MonotoneFunctional phi;  // source pair name -> oracle instance name
  MonotoneFunctional psi;  // <source name, oracle answer> -> two digits
  // The oracle instance phi names, with certificates; empty for black boxes,
  // which are then played against every admissible oracle answer.
  std::function<ProblemInstance(const ProblemInstance&)> certify;
};

Reduction candidate_reduction(const Candidate& c, ProblemId source, ProblemId oracle);

struct Counterexample {
  ProblemInstance instance;
  std::size_t round = 0;
  Answer expected;
  Answer got;
  Transcript transcript;
};

struct Exhausted {
  std::size_t rounds = 0;
  std::size_t budget = 0;
};

struct AdversaryReport {
  std::variant<Counterexample, Exhausted> verdict;
  std::vector<Digit> bounds;     // b_0 > b_1 > ... in the descending-minimum game
  std::vector<std::string> log;  // one line per instance played

  bool found() const { return std::holds_alternative<Counterexample>(verdict); }
  std::string str() const;
};

// Rounds count the flips after the initial instance; 0 plays nothing.
AdversaryReport falsify_lpo_pair_vs_wf(const Candidate& c, std::size_t rounds,
                                       std::size_t budget = kDefaultBudget);
AdversaryReport falsify_lpo_pair_vs_wf(const MonotoneFunctional& phi, const MonotoneFunctional& psi,
                                       std::size_t rounds, std::size_t budget = kDefaultBudget);
AdversaryReport falsify_lim2_pair_vs_wf_min(const Candidate& c, std::size_t rounds,
                                            std::size_t budget = kDefaultBudget);
AdversaryReport falsify_lim2_pair_vs_wf_min(const MonotoneFunctional& phi,
                                            const MonotoneFunctional& psi, std::size_t rounds,
                                            std::size_t budget = kDefaultBudget);

// Shipped candidates.
// phi names the one-node tree, psi answers (1,1).
Candidate constant_lpo_candidate();
// phi names the spine cut at the first zero of either stream; psi answers
// (eps, eps).
Candidate spine_lpo_candidate();
// phi names the spine cut at the first 1 of p and passes q through; psi
// answers (1 - eps, 0).
Candidate min_ignoring_lim2_candidate();

}  // namespace ogw
