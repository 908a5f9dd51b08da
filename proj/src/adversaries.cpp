#include "ogw/adversaries.hpp"

#include <algorithm>
#include <sstream>

#include "ogw/errors.hpp"

namespace ogw {

Reduction candidate_reduction(const Candidate& c, ProblemId source, ProblemId oracle) {
  Reduction r;
  r.name = c.label;
  r.source = source;
  r.oracle = oracle;
  r.forward = c.phi;
  r.backward = c.psi;
  r.certify = c.certify;
  r.decode = tuple_decoder(2);
  r.check_digits = 64;
  return r;
}

std::string AdversaryReport::str() const {
  std::ostringstream out;
  for (const auto& l : log) out << l << '\n';
  if (!bounds.empty()) {
    out << "bounds";
    for (Digit b : bounds) out << ' ' << b;
    out << '\n';
  }
  if (const auto* c = std::get_if<Counterexample>(&verdict)) {
    out << "counterexample round " << c->round << " instance " << describe_instance(c->instance)
        << " expected " << format_answer(c->expected) << " got " << format_answer(c->got) << '\n';
    out << c->transcript.str();
  } else {
    const auto& e = std::get<Exhausted>(verdict);
    out << "exhausted rounds " << e.rounds << " budget " << e.budget << '\n';
  }
  return out.str();
}

namespace {

struct Play {
  Answer answer;
  Answer expected;
  bool valid = false;
  std::size_t use = 0;
  CertifiedStream oracle_answer;
  Transcript transcript;
};

CertifiedStream answer_stream(Digits values) { return CertifiedStream::constant(0, std::move(values)); }

// Runs the candidate on x; without a certificate every admissible oracle
// answer is tried and the first one making psi correct is kept.
Play play(const Reduction& r, const StreamPair& x, std::size_t budget,
          const std::function<std::vector<CertifiedStream>(const StreamPair&)>& admissible) {
  Play p;
  p.expected = expected_answer(r.source, x);
  if (r.certify) {
    RunResult res = run_reduction(r, x, RunConfig{budget, false});
    p.answer = res.answer;
    p.use = res.input_use;
    p.oracle_answer = res.oracle_answer;
    p.transcript = std::move(res.transcript);
    p.valid = is_valid_answer(r.source, x, p.answer);
    return p;
  }
  const Name source = instance_name(x);
  std::optional<Play> first;
  for (const auto& a : admissible(x)) {
    const auto use = backward_use(r, source, a, budget);
    if (!use) continue;
    Play q;
    q.expected = p.expected;
    q.use = *use;
    q.oracle_answer = a;
    const Digits in = source.take(q.use), ans = a.take(q.use);
    const Digits out = r.backward(interleave(in, ans));
    q.answer = *r.decode(out, a);
    for (std::size_t k = 0; k < q.use; ++k) q.transcript.read("input", k, in[k]);
    q.transcript.oracle(problem_name(r.oracle), ans);
    for (std::size_t k = 0; k < out.size(); ++k) q.transcript.emit("output", k, out[k]);
    q.valid = is_valid_answer(r.source, x, q.answer);
    if (q.valid) return q;
    if (!first) first = std::move(q);
  }
  if (!first) throw BudgetExhausted(r.name + ": no admissible oracle answer decodes within budget");
  return *first;
}

std::size_t stream_cut(std::size_t name_use) { return (name_use + 1) / 2; }

CertifiedStream flip(const CertifiedStream& s, std::size_t keep, Digit tail) {
  return CertifiedStream(s.take(keep), Constant{tail});
}

std::string log_line(std::size_t round, const StreamPair& x, const Play& p) {
  std::ostringstream out;
  out << "round " << round << " instance " << describe_instance(x) << " answer " << format_answer(p.answer)
      << " expected " << format_answer(p.expected) << " use " << p.use;
  return out.str();
}

Counterexample counterexample(const StreamPair& x, std::size_t round, Play p) {
  return Counterexample{x, round, std::move(p.expected), std::move(p.answer), std::move(p.transcript)};
}

std::vector<CertifiedStream> lpo_answers(const StreamPair&) {
  return {answer_stream({0}), answer_stream({1})};
}

}  // namespace

AdversaryReport falsify_lpo_pair_vs_wf(const Candidate& c, std::size_t rounds, std::size_t budget) {
  AdversaryReport report;
  report.verdict = Exhausted{0, budget};
  if (rounds == 0) return report;
  const Reduction r = candidate_reduction(c, ProblemId::LpoPair, ProblemId::Wf);
  const std::size_t last = std::min<std::size_t>(rounds, 2);
  StreamPair x{CertifiedStream::constant(1), CertifiedStream::constant(1)};
  std::size_t use = 0;
  try {
    for (std::size_t round = 0; round <= last; ++round) {
      if (round == 1) x.first = flip(x.first, stream_cut(use), 0);
      if (round == 2) x.second = flip(x.second, stream_cut(use), 0);
      Play p = play(r, x, budget, lpo_answers);
      report.log.push_back(log_line(round, x, p));
      use = std::max(use, p.use);
      if (!p.valid) {
        report.verdict = counterexample(x, round, std::move(p));
        return report;
      }
      report.verdict = Exhausted{round, budget};
    }
  } catch (const BudgetExhausted& e) {
    report.log.push_back(std::string("budget ") + e.what());
  }
  return report;
}

AdversaryReport falsify_lpo_pair_vs_wf(const MonotoneFunctional& phi, const MonotoneFunctional& psi,
                                       std::size_t rounds, std::size_t budget) {
  return falsify_lpo_pair_vs_wf(Candidate{"candidate", phi, psi, nullptr}, rounds, budget);
}

namespace {

// Least name prefix after which phi's second stream shows b.
std::size_t min_use(const MonotoneFunctional& phi, const StreamPair& x, Digit b, std::size_t budget) {
  const Name source = instance_name(x);
  auto shows = [&](std::size_t n) {
    const Digits a = deinterleave(phi(source.take(n))).second;
    return std::find(a.begin(), a.end(), b) != a.end();
  };
  std::size_t lo = 0, hi = 1;
  while (!shows(hi)) {
    if (hi >= budget) throw BudgetExhausted("phi never shows the minimum " + std::to_string(b));
    lo = hi;
    hi = std::min(budget, hi * 2);
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (shows(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

AdversaryReport falsify_lim2_pair_vs_wf_min(const Candidate& c, std::size_t rounds,
                                            std::size_t budget) {
  AdversaryReport report;
  report.verdict = Exhausted{0, budget};
  if (rounds == 0) return report;
  const Reduction r = candidate_reduction(c, ProblemId::Lim2Pair, ProblemId::WfMin);
  const auto admissible = [&c, budget](const StreamPair& x) {
    const Digits a = deinterleave(c.phi(instance_name(x).take(std::min<std::size_t>(budget, 256)))).second;
    const Digit top = a.empty() ? 0 : *std::min_element(a.begin(), a.end());
    std::vector<CertifiedStream> out;
    for (Digit eps = 0; eps <= 1; ++eps)
      for (Digit b = 0; b <= top; ++b) out.push_back(answer_stream({eps, b}));
    return out;
  };
  // One instance: its play, the bound it locks and the uses it needs.
  struct Step {
    StreamPair x;
    Play p;
    Digit b = 0;
    std::size_t w = 0;
  };
  auto step = [&](std::size_t round, const StreamPair& x, std::size_t w) -> std::optional<Step> {
    Play p = play(r, x, budget, admissible);
    report.log.push_back(log_line(round, x, p));
    if (!p.valid) {
      report.verdict = counterexample(x, round, std::move(p));
      return std::nullopt;
    }
    const Digit b = p.oracle_answer.at(1);
    const std::size_t v = min_use(c.phi, x, b, budget);
    const std::size_t wn = std::max({w, p.use, v});
    return Step{x, std::move(p), b, wn};
  };
  try {
    auto cur = step(0, StreamPair{CertifiedStream::constant(0), CertifiedStream::constant(0)}, 0);
    if (!cur) return report;
    report.bounds.push_back(cur->b);
    report.verdict = Exhausted{0, budget};
    for (std::size_t round = 1; round <= rounds; ++round) {
      const std::size_t keep = stream_cut(cur->w);
      const Digit lp = static_cast<Digit>(lim2(cur->x.first));
      StreamPair x0{flip(cur->x.first, keep, 1 - lp), cur->x.second};
      auto s0 = step(round, x0, cur->w);
      if (!s0) return report;
      const std::size_t keep0 = stream_cut(s0->w);
      const Digit lp0 = static_cast<Digit>(lim2(x0.first));
      const Digit lq0 = static_cast<Digit>(lim2(x0.second));
      StreamPair x1{flip(x0.first, keep0, 1 - lp0), flip(x0.second, keep0, 1 - lq0)};
      auto s1 = step(round, x1, s0->w);
      if (!s1) return report;
      const std::size_t w = s1->w;
      cur = s0->b < s1->b ? std::move(s0) : std::move(s1);
      cur->w = w;
      report.bounds.push_back(std::min(cur->b, report.bounds.back()));
      report.verdict = Exhausted{round, budget};
    }
  } catch (const BudgetExhausted& e) {
    report.log.push_back(std::string("budget ") + e.what());
  } catch (const NoLimit& e) {
    report.log.push_back(std::string("no limit ") + e.what());
  }
  return report;
}

AdversaryReport falsify_lim2_pair_vs_wf_min(const MonotoneFunctional& phi,
                                            const MonotoneFunctional& psi, std::size_t rounds,
                                            std::size_t budget) {
  return falsify_lim2_pair_vs_wf_min(Candidate{"candidate", phi, psi, nullptr}, rounds, budget);
}

namespace {

// Tree name of the spine {0^n : n <= cut} for bound 0, with cut read from
// how many leading positions stay alive.
Digits spine_name(std::size_t alive_known, bool died, std::size_t max_out) {
  Digits out{0};
  for (std::size_t n = 0; n < alive_known && out.size() < max_out; ++n) out.push_back(1);
  if (died)
    while (out.size() < max_out && out.size() < alive_known + 1 + 64) out.push_back(0);
  if (out.size() > max_out) out.resize(max_out);
  return out;
}

TreeDesc spine_tree(std::optional<std::size_t> cut, std::string label) {
  TreeDesc t;
  t.membership = [cut](std::span<const Digit> s) { return !cut || s.size() <= *cut; };
  t.branch_bound = 0;
  if (cut)
    t.certificate = WellFounded{*cut + 1};
  else
    t.certificate = PathCert{CertifiedStream::constant(0)};
  t.label = std::move(label);
  return t;
}

std::optional<std::size_t> first_index(const CertifiedStream& s, Digit v) {
  if (!s.contains(v)) return std::nullopt;
  for (std::size_t k = 0;; ++k)
    if (s.at(k) == v) return k;
}

MonotoneFunctional constant_output(std::string label, Digits out) {
  return MonotoneFunctional{std::move(label), [out](std::span<const Digit>, std::size_t max_out) {
                              return Digits(out.begin(), out.begin() + std::min(max_out, out.size()));
                            }};
}

}  // namespace

Candidate constant_lpo_candidate() {
  Candidate c;
  c.label = "constant";
  c.phi = MonotoneFunctional{"one-node", [](std::span<const Digit> in, std::size_t max_out) {
                               return Digits(std::min(max_out, in.size() + 1), 0);
                             }};
  c.psi = constant_output("ones", {1, 1});
  c.certify = [](const ProblemInstance&) -> ProblemInstance { return finite_tree({}, "lambda"); };
  return c;
}

Candidate spine_lpo_candidate() {
  Candidate c;
  c.label = "spine";
  c.phi = MonotoneFunctional{"spine", [](std::span<const Digit> in, std::size_t max_out) {
                               const auto [p, q] = deinterleave(in);
                               const std::size_t n = std::min(p.size(), q.size());
                               std::size_t alive = 0;
                               while (alive < n && p[alive] != 0 && q[alive] != 0) ++alive;
                               const bool died = alive < n;
                               return spine_name(alive, died, std::min(max_out, in.size() + 1));
                             }};
  c.psi = MonotoneFunctional{"eps-eps", [](std::span<const Digit> in, std::size_t max_out) {
                               Digits out;
                               if (in.size() >= 2) out = {in[1], in[1]};
                               if (out.size() > max_out) out.resize(max_out);
                               return out;
                             }};
  c.certify = [](const ProblemInstance& x) -> ProblemInstance {
    const auto& s = std::get<StreamPair>(x);
    const auto a = first_index(s.first, 0), b = first_index(s.second, 0);
    std::optional<std::size_t> cut;
    if (a || b) cut = std::min(a.value_or(*b), b.value_or(*a));
    return spine_tree(cut, "spine");
  };
  return c;
}

Candidate min_ignoring_lim2_candidate() {
  Candidate c;
  c.label = "min-ignoring";
  c.phi = MonotoneFunctional{"spine-and-q", [](std::span<const Digit> in, std::size_t max_out) {
                               const auto [p, q] = deinterleave(in);
                               std::size_t alive = 0;
                               while (alive < p.size() && p[alive] != 1) ++alive;
                               const bool died = alive < p.size();
                               const Digits tree = spine_name(alive, died, in.size() + 1);
                               Digits out = interleave(tree, q);
                               if (out.size() > max_out) out.resize(max_out);
                               return out;
                             }};
  c.psi = MonotoneFunctional{"flip-eps", [](std::span<const Digit> in, std::size_t max_out) {
                               Digits out;
                               // the oracle answer is read from position 1 of <x, <eps, b>>
                               if (in.size() >= 2) out = {1 - std::min<Digit>(in[1], 1), 0};
                               if (out.size() > max_out) out.resize(max_out);
                               return out;
                             }};
  c.certify = [](const ProblemInstance& x) -> ProblemInstance {
    const auto& s = std::get<StreamPair>(x);
    return TreeStream{spine_tree(first_index(s.first, 1), "spine"), s.second};
  };
  return c;
}

}  // namespace ogw
