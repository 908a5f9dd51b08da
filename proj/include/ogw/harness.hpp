#pragma once

// Weihrauch reductions as pairs of monotone functionals run against a
// certified oracle, and realizer checks.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ogw/kernel.hpp"
#include "ogw/problems.hpp"

namespace ogw {

// Reads the answer off the backward output; nullopt while undetermined.
using Decoder = std::function<std::optional<Answer>(std::span<const Digit> out,
                                                    const CertifiedStream& oracle_answer)>;

Decoder tuple_decoder(std::size_t width);
// k followed by k+1 values.
Decoder counted_tuple_decoder();
// A chi answer: the backward output copies the oracle answer digitwise, so
// its tail repeats the digit at the end of the oracle prefix.
Decoder stream_decoder();

struct Reduction {
  std::string name;
  ProblemId source = ProblemId::Lpo;
  ProblemId oracle = ProblemId::Lpo;
  MonotoneFunctional forward;   // source name -> oracle instance name
  MonotoneFunctional backward;  // <source name, oracle answer> -> answer name
  // The oracle instance the forward functional names, with its certificate.
  std::function<ProblemInstance(const ProblemInstance&)> certify;
  Decoder decode;
  // Name the forward output is compared against; instance_name by default.
  std::function<Name(const ProblemInstance&)> oracle_name;
  // Forward digits cross-checked against the certified instance; 0 skips.
  std::size_t check_digits = 256;
};

struct RunConfig {
  std::size_t budget = kDefaultBudget;
  bool trace = false;
};

struct RunResult {
  Answer answer;
  Digits forward_output;   // checked prefix of the oracle instance name
  Digits backward_output;  // at the minimal use
  CertifiedStream oracle_answer;
  std::size_t input_use = 0;   // source digits read by the backward functional
  std::size_t answer_use = 0;  // oracle answer digits read
  Transcript transcript;
};

// Throws BudgetExhausted when the backward functional needs more than
// `budget` digits, and OracleDomainError when the forward output leaves the
// certified instance.
RunResult run_reduction(const Reduction& r, const ProblemInstance& instance,
                        const RunConfig& config = {});

// Least n such that decode(backward(<x|n, a|n>)) is defined, within budget.
std::optional<std::size_t> backward_use(const Reduction& r, const Name& source,
                                        const CertifiedStream& answer, std::size_t budget);

struct Realizer {
  std::string label;
  std::function<Answer(const ProblemInstance&, std::size_t budget, Transcript*)> solve;
};

Realizer reduction_realizer(const Reduction& r);
// A realizer computing its answer directly from the instance.
Realizer functional_realizer(std::string label,
                             std::function<Answer(const ProblemInstance&)> f);

enum class CheckStatus { Valid, Invalid, BudgetExhausted, Error };

struct CheckEntry {
  std::string instance;
  CheckStatus status = CheckStatus::Valid;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckEntry> entries;
  bool pass() const;
  std::string str() const;
};

CheckReport check_realizer(const Realizer& realizer, ProblemId problem,
                           const std::vector<ProblemInstance>& instances,
                           std::size_t budget = kDefaultBudget);

}  // namespace ogw
