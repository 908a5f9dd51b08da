#include <doctest.h>

#include "ogw/adversaries.hpp"
#include "ogw/errors.hpp"

using namespace ogw;

namespace {

void check_replay(const Candidate& c, ProblemId source, ProblemId oracle, const AdversaryReport& rep) {
  const auto& ce = std::get<Counterexample>(rep.verdict);
  const Reduction r = candidate_reduction(c, source, oracle);
  const auto again = run_reduction(r, ce.instance);
  CHECK(again.answer == ce.got);
  CHECK(again.transcript.str() == ce.transcript.str());
  const auto report = check_realizer(reduction_realizer(r), source, {ce.instance});
  CHECK_FALSE(report.pass());
}

}  // namespace

TEST_CASE("constant candidate loses at round 1") {
  const Candidate c = constant_lpo_candidate();
  const auto rep = falsify_lpo_pair_vs_wf(c, 2);
  REQUIRE(rep.found());
  const auto& ce = std::get<Counterexample>(rep.verdict);
  CHECK(ce.round == 1);
  CHECK(ce.expected.values == Digits{0, 1});
  CHECK(ce.got.values == Digits{1, 1});
  check_replay(c, ProblemId::LpoPair, ProblemId::Wf, rep);
}

TEST_CASE("spine candidate loses and the use matches the transcript") {
  const Candidate c = spine_lpo_candidate();
  const auto rep = falsify_lpo_pair_vs_wf(c, 2);
  REQUIRE(rep.found());
  const auto& ce = std::get<Counterexample>(rep.verdict);
  CHECK(ce.round == 1);
  CHECK(ce.transcript.use("input") == run_reduction(candidate_reduction(c, ProblemId::LpoPair, ProblemId::Wf),
                                                    ce.instance)
                                          .input_use);
  check_replay(c, ProblemId::LpoPair, ProblemId::Wf, rep);
}

TEST_CASE("black-box candidate is played against both oracle answers") {
  const Candidate c = constant_lpo_candidate();
  const auto rep = falsify_lpo_pair_vs_wf(c.phi, c.psi, 2);
  REQUIRE(rep.found());
  CHECK(std::get<Counterexample>(rep.verdict).round == 1);
}

TEST_CASE("rounds = 0 plays nothing") {
  const auto rep = falsify_lim2_pair_vs_wf_min(min_ignoring_lim2_candidate(), 0, 500);
  REQUIRE_FALSE(rep.found());
  CHECK(std::get<Exhausted>(rep.verdict).rounds == 0);
  CHECK(std::get<Exhausted>(rep.verdict).budget == 500);
  CHECK(rep.log.empty());
}

TEST_CASE("min-ignoring candidate loses within two rounds") {
  const Candidate c = min_ignoring_lim2_candidate();
  const auto rep = falsify_lim2_pair_vs_wf_min(c, 2);
  REQUIRE(rep.found());
  CHECK(std::get<Counterexample>(rep.verdict).round <= 2);
  for (std::size_t k = 1; k < rep.bounds.size(); ++k) CHECK(rep.bounds[k] <= rep.bounds[k - 1]);
  check_replay(c, ProblemId::Lim2Pair, ProblemId::WfMin, rep);
}
