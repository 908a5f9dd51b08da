#include "ogw/scenario.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "ogw/arch.hpp"
#include "ogw/constructions.hpp"
#include "ogw/corpus.hpp"
#include "ogw/errors.hpp"

namespace ogw {

std::vector<std::string> reduction_names() {
  return {"og_epsilon<=wf", "wf<=og_epsilon", "lpo_star<=og_alpha", "chi<=og_alpha0"};
}

Reduction reduction_by_name(const std::string& name) {
  if (name == "og_epsilon<=wf") return og_epsilon_to_wf();
  if (name == "wf<=og_epsilon") return wf_to_og_epsilon();
  if (name == "lpo_star<=og_alpha") return lpo_star_to_og_alpha();
  if (name == "chi<=og_alpha0") return chi_to_og_alpha0();
  throw UnknownId("no reduction '" + name + "'");
}

std::vector<std::string> candidate_names() { return {"constant", "spine", "min-ignoring"}; }

Candidate candidate_by_name(const std::string& name) {
  if (name == "constant") return constant_lpo_candidate();
  if (name == "spine") return spine_lpo_candidate();
  if (name == "min-ignoring") return min_ignoring_lim2_candidate();
  throw UnknownId("no candidate '" + name + "'");
}

std::vector<std::string> game_names() { return {"lpo_pair_vs_wf", "lim2_pair_vs_wf_min"}; }

AdversaryReport play_game(const std::string& game, const Candidate& c, std::size_t rounds,
                          std::size_t budget) {
  if (game == "lpo_pair_vs_wf") return falsify_lpo_pair_vs_wf(c, rounds, budget);
  if (game == "lim2_pair_vs_wf_min") return falsify_lim2_pair_vs_wf_min(c, rounds, budget);
  throw UnknownId("no game '" + game + "'");
}

AdversaryReport play_game(const std::string& game, const MonotoneFunctional& phi,
                          const MonotoneFunctional& psi, std::size_t rounds, std::size_t budget) {
  if (game == "lpo_pair_vs_wf") return falsify_lpo_pair_vs_wf(phi, psi, rounds, budget);
  if (game == "lim2_pair_vs_wf_min") return falsify_lim2_pair_vs_wf_min(phi, psi, rounds, budget);
  throw UnknownId("no game '" + game + "'");
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

Digits run_command(const std::string& command, const std::string& label, std::span<const Digit> in) {
  static std::atomic<unsigned> counter{0};
  const auto path = std::filesystem::temp_directory_path() /
                    ("ogw-in-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  {
    std::ofstream f(path);
    for (std::size_t k = 0; k < in.size(); ++k) f << (k ? " " : "") << in[k];
    f << '\n';
  }
  const std::string cmd = command + " " + shell_quote(label) + " < " + shell_quote(path.string());
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw Error("cannot run '" + command + "'");
  std::string text;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, n);
  const int status = ::pclose(pipe);
  std::filesystem::remove(path);
  if (status != 0) throw Error("'" + command + "' exited with status " + std::to_string(status));
  std::istringstream s(text);
  Digits out;
  std::string tok;
  while (s >> tok) {
    try {
      out.push_back(std::stoull(tok));
    } catch (const std::exception&) {
      throw ParseError("'" + command + "' printed '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

MonotoneFunctional command_functional(const std::string& command, const std::string& label) {
  return MonotoneFunctional{label, [command, label](std::span<const Digit> in, std::size_t max_out) {
                              Digits out = run_command(command, label, in);
                              if (out.size() > max_out) out.resize(max_out);
                              return out;
                            }};
}

std::string ScenarioStep::get(const std::string& key, const std::string& fallback) const {
  const auto it = keys.find(key);
  return it == keys.end() ? fallback : it->second;
}

std::vector<std::string> ScenarioStep::all(const std::string& key) const {
  std::vector<std::string> out;
  for (auto [it, end] = keys.equal_range(key); it != end; ++it) out.push_back(it->second);
  return out;
}

namespace {

std::vector<std::string> tokenize(const std::string& line, std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, any = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
      any = true;
    } else if (c == ' ' && !quoted) {
      if (any) out.push_back(cur);
      cur.clear();
      any = false;
    } else {
      cur += c;
      any = true;
    }
  }
  if (quoted) throw ParseError("line " + std::to_string(lineno) + ": unterminated quote");
  if (any) out.push_back(cur);
  return out;
}

std::size_t to_size(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used != text.size()) throw ParseError(what);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(what + ": not a number '" + text + "'");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::filesystem::path& base) {
  Scenario s;
  s.base = base;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos && line.find('"') == std::string::npos) line.resize(hash);
    const auto toks = tokenize(line, lineno);
    if (toks.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    const std::string& key = toks[0];
    if (key == "name") {
      if (toks.size() < 2) throw ParseError(where + ": name needs a value");
      s.name = toks[1];
    } else if (key == "seed" && toks.size() == 2) {
      s.seed = to_size(toks[1], where);
    } else if (key == "budget" && toks.size() == 2) {
      s.budget = to_size(toks[1], where);
    } else if (key == "input" && toks.size() == 3) {
      s.inputs[toks[1]] = toks[2];
    } else if (key == "step" && toks.size() >= 2) {
      ScenarioStep st;
      st.line = lineno;
      st.op = toks[1];
      for (std::size_t k = 2; k < toks.size(); ++k) {
        const auto eq = toks[k].find('=');
        const bool keyed = eq != std::string::npos && eq > 0 &&
                           std::all_of(toks[k].begin(), toks[k].begin() + eq,
                                       [](char c) { return std::islower(c) || c == '_'; });
        if (!keyed)
          st.args.push_back(toks[k]);
        else
          st.keys.emplace(toks[k].substr(0, eq), toks[k].substr(eq + 1));
      }
      s.steps.push_back(std::move(st));
    } else {
      throw ParseError(where + ": cannot read '" + line + "'");
    }
  }
  if (s.name.empty()) throw ParseError("scenario has no name");
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path.string());
  return parse_scenario(f, path.parent_path());
}

namespace {

class Runner {
 public:
  explicit Runner(const Scenario& s) : s_(s) {}

  ScenarioResult run() {
    report_ << "scenario " << s_.name << "\nseed " << s_.seed << "\nbudget " << s_.budget << '\n';
    for (const auto& [id, path] : s_.inputs) {
      const auto full = path.is_absolute() ? path : s_.base / path;
      if (!std::filesystem::exists(full)) throw ParseError("input " + id + " not found: " + path.string());
    }
    for (std::size_t k = 0; k < s_.steps.size(); ++k) {
      index_ = k + 1;
      step_ = &s_.steps[k];
      const std::string result = dispatch();
      report_ << "step " << index_ << ' ' << step_->op << ": " << result << '\n';
    }
    report_ << "ok\n";
    return ScenarioResult{report_.str(), std::move(artifacts_)};
  }

 private:
  const ScenarioStep& st() const { return *step_; }

  std::string where() const {
    return "step " + std::to_string(index_) + " (" + st().op + ", line " + std::to_string(st().line) + ")";
  }

  [[noreturn]] void bad(const std::string& what) const { throw ParseError(where() + ": " + what); }

  const std::string& arg(std::size_t k) const {
    if (st().args.size() <= k) bad("missing argument " + std::to_string(k + 1));
    return st().args[k];
  }

  std::size_t num(const std::string& key, std::size_t fallback) const {
    return st().has(key) ? to_size(st().get(key), where() + " " + key) : fallback;
  }

  void expect(const std::string& got) const {
    if (!st().has("expect")) return;
    const std::string want = st().get("expect");
    if (want != got)
      throw AssertionFailure(where() + ": expected '" + want + "', got '" + got + "'");
  }

  void artifact(const std::string& tag, std::string contents) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02zu", index_);
    artifacts_.emplace_back(std::string(buf) + "-" + tag + ".txt", std::move(contents));
  }

  const TreeDesc& tree(const std::string& var) const {
    const auto it = trees_.find(var);
    if (it == trees_.end()) bad("no tree '" + var + "'");
    return it->second;
  }

  const EnumeratedOrderedGroup& group(const std::string& var) const {
    const auto it = groups_.find(var);
    if (it == groups_.end()) bad("no group '" + var + "'");
    return it->second;
  }

  Forest forest(const std::string& list) const {
    Forest f;
    for (const auto& v : split(list, ',')) f.push_back(tree(v));
    return f;
  }

  std::vector<CertifiedStream> streams() const {
    std::vector<CertifiedStream> out;
    for (const auto& t : st().all("stream")) out.push_back(parse_stream(t));
    return out;
  }

  std::string dispatch() {
    const std::string& op = st().op;
    if (op == "tree") return do_tree();
    if (op == "group") return do_group();
    if (op == "facts") return do_facts();
    if (op == "epsilon") return do_epsilon();
    if (op == "embed") return do_embed();
    if (op == "arch") return do_arch();
    if (op == "forest") return do_forest();
    if (op == "reduce") return do_reduce();
    if (op == "sample") return do_sample();
    if (op == "falsify") return do_falsify();
    if (op == "verify") return do_verify();
    bad("unknown op");
  }

  std::string do_tree() {
    const std::string var = arg(0);
    TreeDesc t;
    if (st().has("corpus")) {
      t = corpus_tree(st().get("corpus"));
    } else if (st().has("file")) {
      const auto it = s_.inputs.find(st().get("file"));
      if (it == s_.inputs.end()) bad("no input '" + st().get("file") + "'");
      std::ifstream f(it->second.is_absolute() ? it->second : s_.base / it->second);
      t = parse_tree(f, st().get("file"));
    } else {
      bad("tree needs corpus= or file=");
    }
    const std::string text = format_tree(t, num("depth", 4));
    artifact("tree-" + var, text);
    trees_[var] = std::move(t);
    return var + " wf " + std::to_string(wf(trees_[var]));
  }

  std::string do_group() {
    const std::string var = arg(0);
    EnumeratedOrderedGroup g;
    if (st().has("tree")) {
      g = free_abelian_facts(tree(st().get("tree")));
    } else if (st().has("order")) {
      g = standard_group_facts(FiniteLinearOrder::range(num("order", 0)));
    } else if (st().has("forest")) {
      g = forest_group_facts(forest(st().get("forest")));
    } else if (st().has("lpo_star")) {
      const Reduction r = lpo_star_to_og_alpha();
      g = std::get<EnumeratedOrderedGroup>(r.certify(StreamTuple{num("lpo_star", 0), streams()}));
    } else if (st().has("chi")) {
      g = std::get<EnumeratedOrderedGroup>(chi_to_og_alpha0().certify(parse_stream(st().get("chi"))));
    } else {
      bad("group needs tree=, order=, forest=, lpo_star= or chi=");
    }
    groups_[var] = std::move(g);
    return var + " " + groups_[var].label();
  }

  std::string do_facts() {
    const auto& g = group(arg(0));
    const auto facts = g.facts(num("count", 40));
    artifact("facts-" + arg(0), format_facts(facts));
    return std::to_string(facts.size()) + " facts";
  }

  std::string do_epsilon() {
    const int e = *solve_og(group(arg(0)), OgWant::Epsilon).epsilon;
    expect(std::to_string(e));
    return std::to_string(e);
  }

  std::string do_embed() {
    const std::string var = arg(0);
    const auto& g = group(arg(1));
    const std::size_t depth = num("depth", 4), bound = num("bound", 200);
    const Digits facts = encode_facts(g.facts_until_declared(bound));
    const TreeDesc q = decided_tree(facts, q_tree_member, "Q-tree(" + g.label() + ")");
    const auto path = bounded_path_search(q, depth, bound);
    const Digits chars = embed_q_tree()(facts, 64);
    artifact("embed-" + var, format_membership(chars));
    trees_[var] = q;
    const std::string got = path ? "path" : "none";
    expect(got);
    return path ? "path " + format_node(*path) : "none";
  }

  std::string do_arch() {
    const auto reps = arch_representatives(group(arg(0)), num("bound", 12), num("power", 3));
    std::string text;
    for (Id a : reps.elements()) text += "rep " + std::to_string(a) + '\n';
    artifact("arch-" + arg(0), text);
    const std::string got = std::to_string(reps.size());
    expect(got);
    return got + " classes";
  }

  std::string do_forest() {
    const Forest f = forest(arg(0));
    const auto bits = decode_forest_bits(forest_embedding(f));
    std::string got;
    for (int b : bits) got += std::to_string(b);
    expect(got);
    std::string want;
    for (int b : wf_hat(f)) want += std::to_string(b);
    return got + " wf_hat " + want;
  }

  ProblemInstance reduce_input(const Reduction& r) const {
    switch (r.source) {
      case ProblemId::Wf:
        return tree(st().get("tree"));
      case ProblemId::OgEpsilon:
        return group(st().get("group"));
      case ProblemId::LpoStar:
        return StreamTuple{num("k", 0), streams()};
      default: {
        const auto s = streams();
        if (s.size() != 1) bad("expected one stream=");
        return s[0];
      }
    }
  }

  std::string do_reduce() {
    const Reduction r = reduction_by_name(arg(0));
    const ProblemInstance x = reduce_input(r);
    const RunResult res = run_reduction(r, x, RunConfig{s_.budget, st().has("trace")});
    artifact("transcript", res.transcript.str());
    std::string got = format_answer(res.answer);
    if (res.answer.stream) got = "sigma2 " + std::to_string(sigma2_truth(*res.answer.stream) ? 1 : 0);
    expect(got);
    return got + " use " + std::to_string(res.input_use);
  }

  std::string do_sample() {
    if (arg(0) != "lpo_star") bad("only lpo_star can be sampled");
    std::mt19937_64 rng(s_.seed);
    const std::size_t k = num("k", 2), count = num("count", 8);
    const Reduction r = lpo_star_to_og_alpha();
    std::string text;
    for (std::size_t n = 0; n < count; ++n) {
      StreamTuple t{k, {}};
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t zero_at = rng() % 7;
        Digits prefix(zero_at < 5 ? zero_at + 1 : 0, 1);
        if (!prefix.empty()) prefix.back() = 0;
        t.streams.push_back(CertifiedStream::constant(1, prefix));
      }
      const RunResult res = run_reduction(r, t, RunConfig{s_.budget, false});
      const Answer want = expected_answer(ProblemId::LpoStar, t);
      text += describe_instance(t) + " -> " + format_answer(res.answer) + '\n';
      if (!(res.answer == want) || res.answer.values != want.values)
        throw AssertionFailure(where() + ": sample " + std::to_string(n) + " gave " + format_answer(res.answer) +
                               ", expected " + format_answer(want));
    }
    artifact("sample", text);
    return std::to_string(count) + " agree";
  }

  std::string do_falsify() {
    const Candidate c = candidate_by_name(st().get("candidate", "constant"));
    const AdversaryReport rep = play_game(arg(0), c, num("rounds", 2), s_.budget);
    artifact("falsify", rep.str());
    std::string got = rep.found() ? "found" : "exhausted";
    expect(got);
    if (const auto* ce = std::get_if<Counterexample>(&rep.verdict)) got += " round " + std::to_string(ce->round);
    return got;
  }

  std::string do_verify() {
    const Reduction r = reduction_by_name(arg(0));
    std::vector<ProblemInstance> xs;
    for (const auto& t : corpus_trees()) {
      if (r.source == ProblemId::Wf) xs.push_back(t);
      if (r.source == ProblemId::OgEpsilon) xs.push_back(free_abelian_facts(t));
    }
    if (xs.empty()) bad("verify supports reductions from WF or OG->epsilon");
    const CheckReport rep = check_realizer(reduction_realizer(r), r.source, xs, s_.budget);
    artifact("verify", rep.str());
    const std::string got = rep.pass() ? "pass" : "fail";
    expect(got);
    return got;
  }

  const Scenario& s_;
  std::size_t index_ = 0;
  const ScenarioStep* step_ = nullptr;
  std::ostringstream report_;
  std::vector<std::pair<std::string, std::string>> artifacts_;
  std::map<std::string, TreeDesc> trees_;
  std::map<std::string, EnumeratedOrderedGroup> groups_;
};

}  // namespace

ScenarioResult run_scenario(const Scenario& s) { return Runner(s).run(); }

void write_scenario_result(const ScenarioResult& r, const std::filesystem::path& out) {
  std::filesystem::create_directories(out);
  std::ofstream(out / "report.txt", std::ios::binary) << r.report;
  for (const auto& [name, contents] : r.artifacts) std::ofstream(out / name, std::ios::binary) << contents;
}

}  // namespace ogw
