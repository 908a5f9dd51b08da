#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ogw/arch.hpp"
#include "ogw/constructions.hpp"
#include "ogw/corpus.hpp"
#include "ogw/errors.hpp"
#include "ogw/scenario.hpp"

using namespace ogw;

namespace {

struct Globals {
  std::size_t budget = kDefaultBudget;
  std::size_t depth = 4;
  std::size_t width = 200;
  bool trace = false;
  std::string out;
  std::uint64_t seed = 0;
};

struct Inputs {
  std::string tree_file;
  std::string corpus;
  std::vector<std::string> forest;
  std::string facts_file;
  std::size_t order = 0;
  bool has_order = false;
  std::size_t k = 0;
  std::vector<std::string> streams;
};

void add_inputs(CLI::App* app, Inputs& in) {
  app->add_option("--tree", in.tree_file, "tree file");
  app->add_option("--corpus", in.corpus, "corpus tree label");
  app->add_option("--forest", in.forest, "corpus tree labels")->expected(1, -1);
  app->add_option("--facts", in.facts_file, "fact stream file");
  app->add_option_function<std::size_t>(
      "--order", [&in](std::size_t n) { in.order = n, in.has_order = true; }, "standard group over n points");
  app->add_option("--k", in.k, "tuple size");
  app->add_option("--stream", in.streams, "certified stream, e.g. \"1,0:c 1\"")->expected(1, -1);
}

std::vector<CertifiedStream> read_streams(const Inputs& in) {
  std::vector<CertifiedStream> out;
  for (const auto& s : in.streams) out.push_back(parse_stream(s));
  return out;
}

std::string slurp_path(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::optional<TreeDesc> read_tree(const Inputs& in) {
  if (!in.corpus.empty()) return corpus_tree(in.corpus);
  if (!in.tree_file.empty()) {
    std::istringstream s(slurp_path(in.tree_file));
    return parse_tree(s, std::filesystem::path(in.tree_file).stem().string());
  }
  return std::nullopt;
}

EnumeratedOrderedGroup read_group(const Inputs& in) {
  if (in.has_order) return standard_group_facts(FiniteLinearOrder::range(in.order));
  if (!in.forest.empty()) {
    Forest f;
    for (const auto& l : in.forest) f.push_back(corpus_tree(l));
    return forest_group_facts(f);
  }
  if (!in.facts_file.empty()) {
    std::istringstream s(slurp_path(in.facts_file));
    return EnumeratedOrderedGroup::from_facts(parse_facts(s), std::nullopt, in.facts_file);
  }
  if (auto t = read_tree(in)) return free_abelian_facts(*t);
  throw ParseError("no group given: use --order, --forest, --facts, --tree or --corpus");
}

void emit(const Globals& g, const std::string& file, const std::string& text) {
  std::cout << text;
  if (g.out.empty()) return;
  std::filesystem::create_directories(g.out);
  std::ofstream(std::filesystem::path(g.out) / file, std::ios::binary) << text;
}

std::string format_plans(const StageRun& run) {
  std::ostringstream s;
  for (const auto& p : run.plans) {
    s << "stage " << p.stage << " dim " << p.dim << " box " << p.elements_emitted << " elements " << p.elements;
    for (const auto& r : p.reinterpretations) s << " collapse " << r.coordinate << " l " << r.l;
    s << '\n';
  }
  s << format_facts(run.facts);
  return s.str();
}

int group_build(const Globals& g, const Inputs& in, std::size_t count) {
  const auto grp = read_group(in);
  emit(g, "facts.txt", format_facts(grp.facts(count)));
  return 0;
}

int arch_cmd(const Globals& g, const Inputs& in, std::size_t power) {
  const auto grp = read_group(in);
  const auto reps = arch_representatives(grp, g.depth, power, 40 * g.budget);
  std::string text;
  for (Id a : reps.elements()) text += "rep " + std::to_string(a) + '\n';
  emit(g, "arch.txt", text);
  return 0;
}

int construct(const Globals& g, const Inputs& in, const std::string& name, std::size_t alpha, bool epsilon) {
  if (name == "embed_q_tree") {
    const auto grp = read_group(in);
    const Digits facts = encode_facts(grp.facts_until_declared(g.width));
    const Digits chars = embed_q_tree()(facts, g.budget);
    std::string text = format_membership(chars);
    const TreeDesc q = decided_tree(facts, q_tree_member, "q");
    const auto path = bounded_path_search(q, g.depth, g.width);
    text += path ? "probe path " + format_node(*path) + "\n" : std::string("probe none\n");
    emit(g, "embed_q_tree.txt", text);
  } else if (name == "free_abelian") {
    const auto t = read_tree(in);
    if (!t) throw ParseError("free_abelian needs --tree or --corpus");
    const Digits out = free_abelian_forward()(tree_name(*t).take(g.budget), g.budget);
    std::size_t used = 0;
    emit(g, "free_abelian.txt", format_facts(decode_facts(out, &used)));
  } else if (name == "embedding_tree") {
    const auto grp = read_group(in);
    const Digits facts = encode_facts(grp.facts_until_declared(g.width));
    emit(g, "embedding_tree.txt",
         format_membership(embedding_tree(OrdinalCopy{alpha}, epsilon)(facts, g.budget)));
  } else if (name == "lpo_star") {
    const StreamTuple t{in.k, read_streams(in)};
    if (t.streams.size() != t.k) throw ArityMismatch("--k and --stream disagree");
    emit(g, "lpo_star.txt", format_plans(lpo_star_forward_name(instance_name(t).take(g.depth + 1), g.depth)));
  } else if (name == "chi") {
    const auto s = read_streams(in);
    if (s.size() != 1) throw ArityMismatch("chi needs one --stream");
    emit(g, "chi.txt", format_plans(chi_forward(s[0].take(g.depth), g.depth)));
  } else {
    throw UnknownId("no construction '" + name + "'");
  }
  return 0;
}

ProblemInstance reduce_input(const Reduction& r, const Inputs& in) {
  switch (r.source) {
    case ProblemId::Wf: {
      auto t = read_tree(in);
      if (!t) throw ParseError("reduction needs --tree or --corpus");
      return *t;
    }
    case ProblemId::OgEpsilon:
      return read_group(in);
    case ProblemId::LpoStar: {
      StreamTuple t{in.k, read_streams(in)};
      if (t.streams.size() != t.k) throw ArityMismatch("--k and --stream disagree");
      return t;
    }
    default: {
      const auto s = read_streams(in);
      if (s.size() != 1) throw ArityMismatch("reduction needs one --stream");
      return s[0];
    }
  }
}

int reduce_run(const Globals& g, const Inputs& in, const std::string& name) {
  const Reduction r = reduction_by_name(name);
  const RunResult res = run_reduction(r, reduce_input(r, in), RunConfig{g.budget, g.trace});
  std::string text = "answer " + format_answer(res.answer) + "\n";
  text += "input_use " + std::to_string(res.input_use) + "\nanswer_use " + std::to_string(res.answer_use) + "\n";
  text += res.transcript.str();
  emit(g, "reduce.txt", text);
  return 0;
}

int falsify(const Globals& g, const std::string& game, const std::string& candidate,
            const std::string& command, std::size_t rounds) {
  AdversaryReport rep;
  if (!command.empty())
    rep = play_game(game, command_functional(command, "phi"), command_functional(command, "psi"), rounds, g.budget);
  else
    rep = play_game(game, candidate_by_name(candidate), rounds, g.budget);
  emit(g, "falsify.txt", rep.str());
  return rep.found() ? 0 : 3;
}

int verify(const Globals& g, const std::string& name, std::size_t samples) {
  const Reduction r = reduction_by_name(name);
  std::vector<ProblemInstance> xs;
  std::mt19937_64 rng(g.seed);
  switch (r.source) {
    case ProblemId::Wf:
      for (const auto& t : corpus_trees()) xs.push_back(t);
      break;
    case ProblemId::OgEpsilon:
      for (const auto& t : corpus_trees()) xs.push_back(free_abelian_facts(t));
      break;
    case ProblemId::LpoStar:
      for (std::size_t n = 0; n < samples; ++n) {
        StreamTuple t{rng() % 4, {}};
        for (std::size_t i = 0; i < t.k; ++i) {
          Digits prefix(rng() % 6, 1);
          if (!prefix.empty() && rng() % 2) prefix.back() = 0;
          t.streams.push_back(CertifiedStream::constant(1, prefix));
        }
        xs.push_back(t);
      }
      break;
    default:
      for (std::size_t n = 0; n < samples; ++n) {
        std::vector<CertifiedStream> cols;
        for (int c = 0; c < 3; ++c) cols.push_back(CertifiedStream::constant(rng() % 2));
        xs.push_back(CertifiedStream::matrix(std::move(cols), CertifiedStream::constant(1)));
      }
  }
  const CheckReport rep = check_realizer(reduction_realizer(r), r.source, xs, g.budget);
  emit(g, "verify.txt", "seed " + std::to_string(g.seed) + "\n" + rep.str() + (rep.pass() ? "pass\n" : "fail\n"));
  return rep.pass() ? 0 : 1;
}

int scenario_run(const Globals& g, const std::string& path, bool seed_given, bool budget_given) {
  Scenario s = load_scenario(path);
  if (seed_given) s.seed = g.seed;
  if (budget_given) s.budget = g.budget;
  const ScenarioResult r = run_scenario(s);
  if (!g.out.empty()) write_scenario_result(r, g.out);
  std::cout << r.report;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordered groups and Weihrauch reductions"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--budget", g.budget, "digit budget")->capture_default_str();
  app.add_option("--depth", g.depth, "search depth or stage bound")->capture_default_str();
  app.add_option("--width", g.width, "label bound or element bound")->capture_default_str();
  app.add_flag("--trace", g.trace, "record forward digits in transcripts");
  app.add_option("--out", g.out, "output directory");
  auto* seed_opt = app.add_option("--seed", g.seed, "random seed");
  auto* budget_opt = app.get_option("--budget");
  app.fallthrough();

  Inputs in;
  int status = 0;

  auto* group = app.add_subcommand("group", "group presentations");
  group->require_subcommand(1);
  auto* build = group->add_subcommand("build", "print the fact stream of a group");
  std::size_t count = 40;
  add_inputs(build, in);
  build->add_option("--count", count, "number of facts")->capture_default_str();
  build->callback([&] { status = group_build(g, in, count); });

  auto* arch = app.add_subcommand("arch", "Archimedean class representatives among g_0..g_depth");
  add_inputs(arch, in);
  std::size_t power = 3;
  arch->add_option("--power", power, "largest power tried")->capture_default_str();
  arch->callback([&] { status = arch_cmd(g, in, power); });

  auto* cons = app.add_subcommand("construct", "run a construction");
  std::string cons_name;
  std::size_t alpha = 1;
  bool epsilon = false;
  cons->add_option("name", cons_name, "embed_q_tree | free_abelian | embedding_tree | lpo_star | chi")->required();
  cons->add_option("--alpha", alpha, "finite exponent for embedding_tree");
  cons->add_flag("--epsilon", epsilon, "target carries a Q factor");
  add_inputs(cons, in);
  cons->callback([&] { status = construct(g, in, cons_name, alpha, epsilon); });

  auto* reduce = app.add_subcommand("reduce", "reductions");
  reduce->require_subcommand(1);
  auto* run = reduce->add_subcommand("run", "run a shipped reduction on one instance");
  std::string red_name;
  run->add_option("reduction", red_name, "og_epsilon<=wf | wf<=og_epsilon | lpo_star<=og_alpha | chi<=og_alpha0")
      ->required();
  add_inputs(run, in);
  run->callback([&] { status = reduce_run(g, in, red_name); });

  auto* fals = app.add_subcommand("falsify", "play a diagonalization game");
  std::string game, candidate = "constant", command;
  std::size_t rounds = 2;
  fals->add_option("game", game, "lpo_pair_vs_wf | lim2_pair_vs_wf_min")->required();
  fals->add_option("--candidate", candidate, "constant | spine | min-ignoring")->capture_default_str();
  fals->add_option("--command", command, "external program run as '<command> phi|psi' with digits on stdin");
  fals->add_option("--rounds", rounds, "rounds")->capture_default_str();
  fals->callback([&] { status = falsify(g, game, candidate, command, rounds); });

  auto* ver = app.add_subcommand("verify", "check realizers");
  ver->require_subcommand(1);
  auto* real = ver->add_subcommand("realizer", "check a shipped reduction as a realizer");
  std::string ver_name;
  std::size_t samples = 16;
  real->add_option("reduction", ver_name, "reduction name")->required();
  real->add_option("--samples", samples, "random instances for stream sources")->capture_default_str();
  real->callback([&] { status = verify(g, ver_name, samples); });

  auto* scen = app.add_subcommand("scenario", "scenario files");
  scen->require_subcommand(1);
  auto* srun = scen->add_subcommand("run", "run a scenario file");
  std::string scen_path;
  srun->add_option("file", scen_path, "scenario file")->required()->check(CLI::ExistingFile);
  srun->callback([&] { status = scenario_run(g, scen_path, seed_opt->count() > 0, budget_opt->count() > 0); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const AssertionFailure& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return status;
}
