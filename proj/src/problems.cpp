#include "ogw/problems.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>

#include "ogw/errors.hpp"

namespace ogw {

namespace {

const std::vector<std::pair<ProblemId, std::string>>& problem_table() {
  static const std::vector<std::pair<ProblemId, std::string>> table{
      {ProblemId::Lpo, "lpo"},
      {ProblemId::LpoStar, "lpo_star"},
      {ProblemId::Min, "min"},
      {ProblemId::Lim2, "lim2"},
      {ProblemId::Wf, "wf"},
      {ProblemId::WfHat, "wf_hat"},
      {ProblemId::OgAlpha, "og_alpha"},
      {ProblemId::OgAlpha0, "og_alpha0"},
      {ProblemId::OgEpsilon, "og_epsilon"},
      {ProblemId::OgAlphaEpsilon, "og_alpha_epsilon"},
      {ProblemId::Chi, "chi"},
      {ProblemId::LpoPair, "lpo_pair"},
      {ProblemId::Lim2Pair, "lim2_pair"},
      {ProblemId::WfMin, "wf_min"},
  };
  return table;
}

template <class T>
const T& payload(const ProblemInstance& instance, ProblemId problem) {
  if (const auto* p = std::get_if<T>(&instance)) return *p;
  throw OracleDomainError("instance has the wrong shape for " + problem_name(problem));
}

}  // namespace

std::string problem_name(ProblemId id) {
  for (const auto& [p, name] : problem_table())
    if (p == id) return name;
  return "?";
}

ProblemId parse_problem(const std::string& name) {
  for (const auto& [p, n] : problem_table())
    if (n == name) return p;
  throw ParseError("unknown problem '" + name + "'");
}

Name instance_name(const ProblemInstance& instance) {
  return std::visit(
      [](const auto& x) -> Name {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CertifiedStream>) {
          return x.name();
        } else if constexpr (std::is_same_v<T, StreamTuple>) {
          auto tuple = std::make_shared<const StreamTuple>(x);
          return Name([tuple](std::size_t pos) -> Digit {
            if (pos == 0) return tuple->k;
            const auto [j, i] = cantor_unpair(pos - 1);
            return i < tuple->streams.size() ? tuple->streams[i].at(j) : 0;
          });
        } else if constexpr (std::is_same_v<T, TreeDesc>) {
          return tree_name(x);
        } else if constexpr (std::is_same_v<T, Forest>) {
          auto names = std::make_shared<std::vector<Name>>();
          for (const auto& t : x) names->push_back(tree_name(t));
          return Name([names](std::size_t pos) -> Digit {
            if (pos == 0) return names->size();
            const auto [j, i] = cantor_unpair(pos - 1);
            return i < names->size() ? (*names)[i](j) : 0;
          });
        } else if constexpr (std::is_same_v<T, EnumeratedOrderedGroup>) {
          return x.name();
        } else if constexpr (std::is_same_v<T, StreamPair>) {
          return interleave(x.first.name(), x.second.name());
        } else {
          return interleave(tree_name(x.tree), x.stream.name());
        }
      },
      instance);
}

namespace {

std::string describe_stream(const CertifiedStream& s) {
  std::string out = "[" + (s.prefix().empty() ? std::string() : format_node(s.prefix())) + "|";
  std::visit(
      [&](const auto& rule) {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, Constant>)
          out += "const " + std::to_string(rule.value);
        else if constexpr (std::is_same_v<T, Periodic>)
          out += "per " + format_node(rule.word);
        else
          out += "matrix " + std::to_string(rule.columns.size()) + " cols";
      },
      s.tail());
  return out + "]";
}

}  // namespace

std::string describe_instance(const ProblemInstance& instance) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CertifiedStream>) {
          return describe_stream(x);
        } else if constexpr (std::is_same_v<T, StreamTuple>) {
          std::string out = "k=" + std::to_string(x.k);
          for (const auto& s : x.streams) out += " " + describe_stream(s);
          return out;
        } else if constexpr (std::is_same_v<T, TreeDesc>) {
          return "tree " + x.label;
        } else if constexpr (std::is_same_v<T, Forest>) {
          std::string out = "forest";
          for (const auto& t : x) out += " " + t.label;
          return out;
        } else if constexpr (std::is_same_v<T, EnumeratedOrderedGroup>) {
          return "group " + x.label();
        } else if constexpr (std::is_same_v<T, StreamPair>) {
          return describe_stream(x.first) + " " + describe_stream(x.second);
        } else {
          return "tree " + x.tree.label + " " + describe_stream(x.stream);
        }
      },
      instance);
}

int lpo(const CertifiedStream& s) { return s.contains(0) ? 0 : 1; }

std::vector<int> lpo_star(std::size_t k, const std::vector<CertifiedStream>& streams) {
  if (streams.size() != k)
    throw ArityMismatch("k=" + std::to_string(k) + " but " + std::to_string(streams.size()) +
                        " streams");
  std::vector<int> out;
  for (const auto& s : streams) out.push_back(lpo(s));
  return out;
}

Digit min_op(const CertifiedStream& s) { return s.minimum(); }

int lim2(const CertifiedStream& s) {
  const auto v = s.limit();
  if (!v || *v > 1) throw NoLimit("stream has no binary limit");
  return static_cast<int>(*v);
}

int wf(const TreeDesc& t, std::size_t validation_depth) {
  if (!t.certificate) throw Uncertified("tree '" + t.label + "' carries no certificate");
  validate_certificate(t, validation_depth);
  return t.well_founded() ? 0 : 1;
}

std::vector<int> wf_hat(const std::vector<TreeDesc>& trees, std::size_t validation_depth) {
  std::vector<int> out;
  for (const auto& t : trees) out.push_back(wf(t, validation_depth));
  return out;
}

bool sigma2_truth(const CertifiedStream& q) { return q.limit() == Digit{1}; }

bool sigma3_truth(const CertifiedStream& p) { return p.almost_all_columns_contain(1); }

CertifiedStream ordinal_copy_stream(const OrdinalCopy& alpha) {
  if (!alpha.size) return CertifiedStream::constant(1);
  return CertifiedStream::constant(0, Digits(*alpha.size, 1));
}

std::size_t copy_elements(std::span<const Digit> digits) {
  return static_cast<std::size_t>(std::count_if(digits.begin(), digits.end(), [](Digit d) { return d != 0; }));
}

std::optional<std::size_t> least_finite_extension(std::span<const Digit> digits) {
  std::size_t count = 0;
  for (Digit d : digits) {
    if (d == 0) continue;
    if (d - 1 > count) return std::nullopt;
    ++count;
  }
  return count;
}

std::string format_copy_lines(std::span<const Digit> digits, bool finished) {
  std::vector<std::size_t> ascending;
  std::string out;
  std::size_t next = 0;
  for (Digit d : digits) {
    if (d == 0) continue;
    if (d - 1 > ascending.size()) throw ParseError("copy digit places an element out of range");
    const std::size_t id = next++;
    const std::size_t at = ascending.size() - (d - 1);
    out += "elt " + std::to_string(id) + "\n";
    for (std::size_t r = 0; r < ascending.size(); ++r) {
      if (r < at)
        out += "lt " + std::to_string(ascending[r]) + " " + std::to_string(id) + "\n";
      else
        out += "lt " + std::to_string(id) + " " + std::to_string(ascending[r]) + "\n";
    }
    ascending.insert(ascending.begin() + static_cast<std::ptrdiff_t>(at), id);
  }
  if (finished) out += "end\n";
  return out;
}

Digits parse_copy_lines(std::istream& in, bool* finished) {
  Digits out;
  std::string line;
  std::optional<std::size_t> current;
  std::size_t above = 0;
  if (finished) *finished = false;
  auto flush = [&] {
    if (current) out.push_back(above + 1);
    current.reset();
    above = 0;
  };
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "elt") {
      flush();
      std::size_t id = 0;
      if (!(ls >> id) || id != out.size()) throw ParseError("elt ids must be 0,1,2,... in order");
      current = id;
    } else if (word == "lt") {
      std::size_t a = 0, b = 0;
      if (!(ls >> a >> b)) throw ParseError("lt needs two ids");
      if (!current || (a != *current && b != *current))
        throw ParseError("lt line does not involve the newest element");
      if (a == *current) ++above;
    } else if (word == "end") {
      flush();
      if (finished) *finished = true;
      break;
    } else {
      throw ParseError("unknown copy record '" + word + "'");
    }
  }
  flush();
  return out;
}

OgAnswer solve_og(const EnumeratedOrderedGroup& g, OgWant want) {
  const auto& truth = g.truth();
  if (!truth) throw Uncertified("group '" + g.label() + "' carries no order-type certificate");
  OgAnswer out;
  if (want == OgWant::Alpha0 && truth->epsilon)
    throw OracleDomainError("group '" + g.label() + "' has a Q part");
  if (want != OgWant::Alpha && want != OgWant::Alpha0) out.epsilon = truth->epsilon ? 1 : 0;
  if (want != OgWant::Epsilon) {
    if (!truth->exponent && truth->epsilon)
      throw Uncertified("group '" + g.label() + "' certifies epsilon but not alpha");
    out.alpha = OrdinalCopy{truth->exponent};
  }
  return out;
}

namespace {

Digits to_digits(const std::vector<int>& bits) { return Digits(bits.begin(), bits.end()); }

CertifiedStream tuple_stream(Digits values) { return CertifiedStream::constant(0, std::move(values)); }

}  // namespace

CertifiedStream solve(ProblemId problem, const ProblemInstance& instance) {
  switch (problem) {
    case ProblemId::Lpo:
      return tuple_stream({static_cast<Digit>(lpo(payload<CertifiedStream>(instance, problem)))});
    case ProblemId::LpoStar: {
      const auto& t = payload<StreamTuple>(instance, problem);
      Digits v{t.k};
      for (int b : lpo_star(t.k, t.streams)) v.push_back(b);
      return tuple_stream(std::move(v));
    }
    case ProblemId::Min:
      return tuple_stream({min_op(payload<CertifiedStream>(instance, problem))});
    case ProblemId::Lim2:
      return tuple_stream({static_cast<Digit>(lim2(payload<CertifiedStream>(instance, problem)))});
    case ProblemId::Wf:
      return tuple_stream({static_cast<Digit>(wf(payload<TreeDesc>(instance, problem)))});
    case ProblemId::WfHat:
      return tuple_stream(to_digits(wf_hat(payload<Forest>(instance, problem))));
    case ProblemId::OgAlpha:
    case ProblemId::OgAlpha0: {
      const auto want = problem == ProblemId::OgAlpha ? OgWant::Alpha : OgWant::Alpha0;
      return ordinal_copy_stream(*solve_og(payload<EnumeratedOrderedGroup>(instance, problem), want).alpha);
    }
    case ProblemId::OgEpsilon: {
      const auto a = solve_og(payload<EnumeratedOrderedGroup>(instance, problem), OgWant::Epsilon);
      return tuple_stream({static_cast<Digit>(*a.epsilon)});
    }
    case ProblemId::OgAlphaEpsilon: {
      const auto a = solve_og(payload<EnumeratedOrderedGroup>(instance, problem), OgWant::AlphaEpsilon);
      const CertifiedStream copy = ordinal_copy_stream(*a.alpha);
      Digits prefix{static_cast<Digit>(*a.epsilon)};
      prefix.insert(prefix.end(), copy.prefix().begin(), copy.prefix().end());
      return CertifiedStream(std::move(prefix), copy.tail());
    }
    case ProblemId::Chi:
      return CertifiedStream::constant(sigma3_truth(payload<CertifiedStream>(instance, problem)) ? 1 : 0);
    case ProblemId::LpoPair: {
      const auto& p = payload<StreamPair>(instance, problem);
      return tuple_stream({static_cast<Digit>(lpo(p.first)), static_cast<Digit>(lpo(p.second))});
    }
    case ProblemId::Lim2Pair: {
      const auto& p = payload<StreamPair>(instance, problem);
      return tuple_stream({static_cast<Digit>(lim2(p.first)), static_cast<Digit>(lim2(p.second))});
    }
    case ProblemId::WfMin: {
      const auto& p = payload<TreeStream>(instance, problem);
      return tuple_stream({static_cast<Digit>(wf(p.tree)), min_op(p.stream)});
    }
  }
  throw OracleDomainError("unknown problem");
}

std::string format_answer(const Answer& a) {
  std::string out;
  for (std::size_t k = 0; k < a.values.size(); ++k) out += (k ? " " : "") + std::to_string(a.values[k]);
  if (a.stream) out += (out.empty() ? "" : " ") + std::string("stream ") + describe_stream(*a.stream);
  return out;
}

Answer expected_answer(ProblemId problem, const ProblemInstance& instance) {
  std::size_t width = 1;
  switch (problem) {
    case ProblemId::LpoStar:
      width = payload<StreamTuple>(instance, problem).k + 1;
      break;
    case ProblemId::WfHat:
      width = payload<Forest>(instance, problem).size();
      break;
    case ProblemId::LpoPair:
    case ProblemId::Lim2Pair:
    case ProblemId::WfMin:
      width = 2;
      break;
    case ProblemId::Chi:
    case ProblemId::OgAlpha:
    case ProblemId::OgAlpha0:
    case ProblemId::OgAlphaEpsilon:
      throw OracleDomainError(problem_name(problem) + " has no finite tuple answer");
    default:
      break;
  }
  return Answer{solve(problem, instance).take(width), std::nullopt};
}

bool is_valid_answer(ProblemId problem, const ProblemInstance& instance, const Answer& answer) {
  if (problem == ProblemId::Chi) {
    if (!answer.stream) return false;
    return sigma2_truth(*answer.stream) == sigma3_truth(payload<CertifiedStream>(instance, problem));
  }
  return answer.values == expected_answer(problem, instance).values;
}

}  // namespace ogw
