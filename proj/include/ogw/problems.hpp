#pragma once

// Certified solvers for the oracle problems, instance names, and answer
// validation.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ogw/groups.hpp"
#include "ogw/kernel.hpp"
#include "ogw/orders.hpp"

namespace ogw {

enum class ProblemId {
  Lpo,
  LpoStar,
  Min,
  Lim2,
  Wf,
  WfHat,
  OgAlpha,
  OgAlpha0,
  OgEpsilon,
  OgAlphaEpsilon,
  Chi,
  LpoPair,   // LPO x LPO
  Lim2Pair,  // lim2 x lim2
  WfMin,     // WF x Min
};

std::string problem_name(ProblemId id);
ProblemId parse_problem(const std::string& name);

struct StreamTuple {
  std::size_t k = 0;
  std::vector<CertifiedStream> streams;
};

struct StreamPair {
  CertifiedStream first, second;
};

struct TreeStream {
  TreeDesc tree;
  CertifiedStream stream;
};

using Forest = std::vector<TreeDesc>;

using ProblemInstance =
    std::variant<CertifiedStream, StreamTuple, TreeDesc, Forest, EnumeratedOrderedGroup, StreamPair,
                 TreeStream>;

// Name of an instance as functionals see it.
//   stream: its digits
//   tuple: k, then position 1+<j,i> carries p_i(j) (0 for i >= k)
//   tree: tree_name; forest: k, then position 1+<j,i> carries tree_name(T_i)(j)
//   group: fact digits; pairs: interleaving of the two names
Name instance_name(const ProblemInstance& instance);
std::string describe_instance(const ProblemInstance& instance);

int lpo(const CertifiedStream& s);
std::vector<int> lpo_star(std::size_t k, const std::vector<CertifiedStream>& streams);
Digit min_op(const CertifiedStream& s);
int lim2(const CertifiedStream& s);
int wf(const TreeDesc& t, std::size_t validation_depth = 64);
std::vector<int> wf_hat(const std::vector<TreeDesc>& trees, std::size_t validation_depth = 64);

// (exists a)(forall b > a) q(b) = 1
bool sigma2_truth(const CertifiedStream& q);
// (exists a)(forall i > a)(exists j) p(<j,i>) = 1
bool sigma3_truth(const CertifiedStream& p);

// A copy of a linear order streamed one digit per record: 0 reveals
// nothing, d >= 1 reveals a new element with exactly d-1 earlier elements
// above it. A copy of n in increasing order is 1^n 0^omega; omega is 1^omega.
struct OrdinalCopy {
  std::optional<std::size_t> size;  // nullopt for omega
};

CertifiedStream ordinal_copy_stream(const OrdinalCopy& alpha);
// Number of elements revealed by a copy prefix.
std::size_t copy_elements(std::span<const Digit> digits);
// Least finite n with a copy extending the prefix, if the prefix is a
// valid copy prefix of some finite linear order.
std::optional<std::size_t> least_finite_extension(std::span<const Digit> digits);
// Line format: "elt <id>", "lt <id> <id>", and "end" for finite copies.
std::string format_copy_lines(std::span<const Digit> digits, bool finished);
Digits parse_copy_lines(std::istream& in, bool* finished = nullptr);

enum class OgWant { Alpha, Alpha0, Epsilon, AlphaEpsilon };

struct OgAnswer {
  std::optional<OrdinalCopy> alpha;
  std::optional<int> epsilon;
};

OgAnswer solve_og(const EnumeratedOrderedGroup& g, OgWant want);

// The certified answer of an oracle problem, as a stream. Tuple answers are
// their values followed by zeros.
CertifiedStream solve(ProblemId problem, const ProblemInstance& instance);

// A decoded solution: a finite tuple, or a stream for chi.
struct Answer {
  Digits values;
  std::optional<CertifiedStream> stream;

  friend bool operator==(const Answer& a, const Answer& b) {
    return a.values == b.values && a.stream.has_value() == b.stream.has_value();
  }
};

std::string format_answer(const Answer& a);
// Whether `answer` solves the instance, checked against the certificate.
bool is_valid_answer(ProblemId problem, const ProblemInstance& instance, const Answer& answer);
// The answer a correct solver gives (tuple-valued problems only).
Answer expected_answer(ProblemId problem, const ProblemInstance& instance);

}  // namespace ogw
