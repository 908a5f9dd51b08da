#include "ogw/harness.hpp"

#include <sstream>

#include "ogw/errors.hpp"

namespace ogw {

Decoder tuple_decoder(std::size_t width) {
  return [width](std::span<const Digit> out, const CertifiedStream&) -> std::optional<Answer> {
    if (out.size() < width) return std::nullopt;
    return Answer{Digits(out.begin(), out.begin() + width), std::nullopt};
  };
}

Decoder counted_tuple_decoder() {
  return [](std::span<const Digit> out, const CertifiedStream&) -> std::optional<Answer> {
    if (out.empty() || out.size() < out[0] + 1) return std::nullopt;
    return Answer{Digits(out.begin(), out.begin() + out[0] + 1), std::nullopt};
  };
}

Decoder stream_decoder() {
  return [](std::span<const Digit> out, const CertifiedStream& a) -> std::optional<Answer> {
    const std::size_t settle = a.prefix().size();
    if (out.size() <= settle) return std::nullopt;
    Digits prefix(out.begin(), out.begin() + settle);
    return Answer{{}, CertifiedStream::constant(out[settle], std::move(prefix))};
  };
}

std::optional<std::size_t> backward_use(const Reduction& r, const Name& source,
                                        const CertifiedStream& answer, std::size_t budget) {
  auto decodes = [&](std::size_t n) {
    const Digits in = interleave(source.take(n), answer.take(n));
    return r.decode(r.backward(in), answer).has_value();
  };
  if (decodes(0)) return 0;
  std::size_t lo = 0, hi = 1;
  while (!decodes(hi)) {
    if (hi >= budget) return std::nullopt;
    lo = hi;
    hi = std::min(budget, hi * 2);
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (decodes(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

RunResult run_reduction(const Reduction& r, const ProblemInstance& instance,
                        const RunConfig& config) {
  RunResult res;
  const Name source = instance_name(instance);
  const ProblemInstance oracle_instance = r.certify(instance);

  if (r.check_digits > 0) {
    const Name expected = r.oracle_name ? r.oracle_name(oracle_instance) : instance_name(oracle_instance);
    std::size_t n = 1;
    Digits out;
    while (true) {
      out = r.forward(source.take(n), r.check_digits);
      if (out.size() >= r.check_digits) break;
      if (n >= config.budget)
        throw BudgetExhausted(r.name + ": forward produced " + std::to_string(out.size()) +
                              " digits within budget " + std::to_string(config.budget));
      n = std::min(config.budget, n * 2);
    }
    const Digits want = expected.take(out.size());
    for (std::size_t k = 0; k < out.size(); ++k)
      if (out[k] != want[k])
        throw OracleDomainError(r.name + ": forward digit " + std::to_string(k) + " is " +
                                std::to_string(out[k]) + ", certified instance has " +
                                std::to_string(want[k]));
    res.forward_output = std::move(out);
    if (config.trace)
      for (std::size_t k = 0; k < res.forward_output.size(); ++k)
        res.transcript.emit("forward", k, res.forward_output[k]);
  }

  res.oracle_answer = solve(r.oracle, oracle_instance);
  const auto use = backward_use(r, source, res.oracle_answer, config.budget);
  if (!use)
    throw BudgetExhausted(r.name + ": backward undetermined within budget " +
                          std::to_string(config.budget));
  const std::size_t n = *use;
  const Digits in = source.take(n);
  const Digits ans = res.oracle_answer.take(n);
  res.backward_output = r.backward(interleave(in, ans));
  res.answer = *r.decode(res.backward_output, res.oracle_answer);
  res.input_use = n;
  res.answer_use = n;
  for (std::size_t k = 0; k < n; ++k) res.transcript.read("input", k, in[k]);
  res.transcript.oracle(problem_name(r.oracle), ans);
  for (std::size_t k = 0; k < res.backward_output.size(); ++k)
    res.transcript.emit("output", k, res.backward_output[k]);
  return res;
}

Realizer reduction_realizer(const Reduction& r) {
  return Realizer{r.name, [r](const ProblemInstance& x, std::size_t budget, Transcript* t) {
                    RunResult res = run_reduction(r, x, RunConfig{budget, false});
                    if (t) *t = res.transcript;
                    return res.answer;
                  }};
}

Realizer functional_realizer(std::string label, std::function<Answer(const ProblemInstance&)> f) {
  return Realizer{std::move(label),
                  [f](const ProblemInstance& x, std::size_t, Transcript*) { return f(x); }};
}

bool CheckReport::pass() const {
  for (const auto& e : entries)
    if (e.status != CheckStatus::Valid) return false;
  return true;
}

std::string CheckReport::str() const {
  std::ostringstream out;
  for (const auto& e : entries) {
    const char* s = e.status == CheckStatus::Valid            ? "valid"
                    : e.status == CheckStatus::Invalid        ? "invalid"
                    : e.status == CheckStatus::BudgetExhausted ? "budget"
                                                               : "error";
    out << s << ' ' << e.instance;
    if (!e.detail.empty()) out << " : " << e.detail;
    out << '\n';
  }
  out << (pass() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

CheckReport check_realizer(const Realizer& realizer, ProblemId problem,
                           const std::vector<ProblemInstance>& instances, std::size_t budget) {
  CheckReport report;
  for (const auto& x : instances) {
    CheckEntry e;
    e.instance = describe_instance(x);
    try {
      const Answer a = realizer.solve(x, budget, nullptr);
      e.status = is_valid_answer(problem, x, a) ? CheckStatus::Valid : CheckStatus::Invalid;
      e.detail = format_answer(a);
    } catch (const BudgetExhausted& err) {
      e.status = CheckStatus::BudgetExhausted;
      e.detail = err.what();
    } catch (const Error& err) {
      e.status = CheckStatus::Error;
      e.detail = err.what();
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace ogw
