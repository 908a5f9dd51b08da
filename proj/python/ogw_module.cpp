#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "ogw/arch.hpp"
#include "ogw/constructions.hpp"
#include "ogw/corpus.hpp"
#include "ogw/errors.hpp"
#include "ogw/scenario.hpp"

namespace py = pybind11;
using namespace ogw;

namespace {

py::dict run_dict(const RunResult& r) {
  py::dict d;
  d["answer"] = r.answer.values;
  d["stream"] = r.answer.stream ? py::object(py::str(format_stream(*r.answer.stream))) : py::none();
  d["input_use"] = r.input_use;
  d["answer_use"] = r.answer_use;
  d["transcript"] = r.transcript.lines();
  return d;
}

std::vector<CertifiedStream> streams(const std::vector<std::string>& texts) {
  std::vector<CertifiedStream> out;
  for (const auto& t : texts) out.push_back(parse_stream(t));
  return out;
}

ZXElement zx(const std::shared_ptr<const FiniteLinearOrder>& x, const std::vector<Coefficient>& c) {
  std::vector<ZXElement::Term> terms;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0) terms.emplace_back(k, c[k]);
  return ZXElement(x, terms);
}

}  // namespace

PYBIND11_MODULE(_ogw, m) {
  m.doc() = "Ordered groups and Weihrauch reductions";

  py::register_exception<Error>(m, "Error");
  py::register_exception<BudgetExhausted>(m, "BudgetExhausted", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<AssertionFailure>(m, "AssertionFailure", PyExc_AssertionError);
  py::register_exception<NoLimit>(m, "NoLimit", PyExc_ValueError);

  m.attr("DEFAULT_BUDGET") = kDefaultBudget;

  m.def("cantor_pair", &cantor_pair, py::arg("j"), py::arg("i"));
  m.def("cantor_unpair", &cantor_unpair, py::arg("n"));

  m.def("stream_take", [](const std::string& s, std::size_t n) { return parse_stream(s).take(n); },
        py::arg("stream"), py::arg("n"));
  m.def("normalize_stream", [](const std::string& s) { return format_stream(parse_stream(s)); }, py::arg("stream"));
  m.def("lpo", [](const std::string& s) { return lpo(parse_stream(s)); }, py::arg("stream"));
  m.def("lpo_star", [](const std::vector<std::string>& s) { return lpo_star(s.size(), streams(s)); },
        py::arg("streams"));
  m.def("min", [](const std::string& s) { return min_op(parse_stream(s)); }, py::arg("stream"));
  m.def("lim2", [](const std::string& s) { return lim2(parse_stream(s)); }, py::arg("stream"));

  m.def("zx_compare",
        [](const std::vector<Coefficient>& f, const std::vector<Coefficient>& g) {
          const std::size_t n = std::max(f.size(), g.size());
          auto x = std::make_shared<const FiniteLinearOrder>(FiniteLinearOrder::range(n));
          const auto c = zx_compare(zx(x, f), zx(x, g));
          return c < 0 ? -1 : c > 0 ? 1 : 0;
        },
        py::arg("f"), py::arg("g"), "Compare coefficient vectors over X = 0 < 1 < ... ; -1, 0 or 1.");
  m.def("kb_compare",
        [](const Node& a, const Node& b) {
          const auto c = kb_compare(a, b);
          return c < 0 ? -1 : c > 0 ? 1 : 0;
        },
        py::arg("a"), py::arg("b"));

  m.def("corpus_labels", [] {
    std::vector<std::string> out;
    for (const auto& t : corpus_trees()) out.push_back(t.label);
    return out;
  });
  m.def("wf", [](const std::string& label) { return wf(corpus_tree(label)); }, py::arg("label"));
  m.def("tree_text", [](const std::string& label, std::size_t depth) { return format_tree(corpus_tree(label), depth); },
        py::arg("label"), py::arg("depth") = 3);
  m.def("group_epsilon", [](const std::string& label) {
    return *solve_og(free_abelian_facts(corpus_tree(label)), OgWant::Epsilon).epsilon;
  }, py::arg("label"));
  m.def("standard_facts", [](std::size_t n, std::size_t count) {
    return format_facts(standard_group_facts(FiniteLinearOrder::range(n)).facts(count));
  }, py::arg("n"), py::arg("count") = 40);
  m.def("arch_representatives",
        [](std::size_t n, std::size_t bound, std::size_t power) {
          return arch_representatives(standard_group_facts(FiniteLinearOrder::range(n)), bound, power).elements();
        },
        py::arg("n"), py::arg("bound"), py::arg("power") = 2);

  m.def("reductions", &reduction_names);
  m.def("run_wf_reduction",
        [](const std::string& name, const std::string& label, std::size_t budget) {
          const Reduction r = reduction_by_name(name);
          const TreeDesc t = corpus_tree(label);
          const ProblemInstance x = r.source == ProblemId::Wf ? ProblemInstance(t) : ProblemInstance(free_abelian_facts(t));
          return run_dict(run_reduction(r, x, RunConfig{budget, false}));
        },
        py::arg("name"), py::arg("label"), py::arg("budget") = kDefaultBudget);
  m.def("run_lpo_star",
        [](const std::vector<std::string>& s, std::size_t budget) {
          return run_dict(run_reduction(lpo_star_to_og_alpha(), StreamTuple{s.size(), streams(s)}, RunConfig{budget, false}));
        },
        py::arg("streams"), py::arg("budget") = kDefaultBudget);
  m.def("run_chi",
        [](const std::string& p, std::size_t budget) {
          const RunResult r = run_reduction(chi_to_og_alpha0(), parse_stream(p), RunConfig{budget, false});
          py::dict d = run_dict(r);
          d["sigma2"] = r.answer.stream && sigma2_truth(*r.answer.stream);
          return d;
        },
        py::arg("matrix"), py::arg("budget") = kDefaultBudget);

  m.def("candidates", &candidate_names);
  m.def("games", &game_names);
  m.def("falsify",
        [](const std::string& game, const std::string& candidate, std::size_t rounds, std::size_t budget) {
          const AdversaryReport rep = play_game(game, candidate_by_name(candidate), rounds, budget);
          py::dict d;
          d["found"] = rep.found();
          d["round"] = rep.found() ? py::object(py::int_(std::get<Counterexample>(rep.verdict).round)) : py::none();
          d["bounds"] = rep.bounds;
          d["report"] = rep.str();
          return d;
        },
        py::arg("game"), py::arg("candidate"), py::arg("rounds") = 2, py::arg("budget") = kDefaultBudget);

  m.def("run_scenario",
        [](const std::string& path, const std::string& out) {
          const ScenarioResult r = run_scenario(load_scenario(path));
          if (!out.empty()) write_scenario_result(r, out);
          return r.report;
        },
        py::arg("path"), py::arg("out") = "");
  m.def("run_scenario_text",
        [](const std::string& text) {
          std::istringstream in(text);
          return run_scenario(parse_scenario(in)).report;
        },
        py::arg("text"));
}
