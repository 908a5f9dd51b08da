#include "ogw/corpus.hpp"

#include "ogw/errors.hpp"

namespace ogw {

std::vector<TreeDesc> corpus_finite_trees() {
  return {
      finite_tree({}, "lambda"),
      finite_tree({{0}}, "one-child"),
      finite_tree({{0}, {1}}, "two-children"),
      finite_tree({{0}, {0, 0}, {1}}, "lopsided"),
      finite_tree({{1}, {1, 0}, {1, 1}, {2}}, "bushy"),
  };
}

std::vector<TreeDesc> corpus_path_trees() {
  return {
      full_tree(0, "spine"),
      full_tree(1, "binary"),
      path_tree(CertifiedStream::constant(1), {{0, 0}}, 1, "right-path"),
      path_tree(CertifiedStream::periodic({0, 1}), {{1, 1}}, 1, "zigzag"),
      path_tree(CertifiedStream::constant(2, {0, 1}), {{0, 0}, {2}}, 2, "late-path"),
  };
}

std::vector<TreeDesc> corpus_trees() {
  auto out = corpus_finite_trees();
  for (auto& t : corpus_path_trees()) out.push_back(std::move(t));
  return out;
}

TreeDesc corpus_tree(const std::string& label) {
  for (auto& t : corpus_trees())
    if (t.label == label) return t;
  throw UnknownId("no corpus tree '" + label + "'");
}

std::vector<Forest> corpus_forests(const std::vector<TreeDesc>& trees, std::size_t max_size) {
  std::vector<Forest> out;
  std::vector<std::size_t> idx;
  for (std::size_t size = 1; size <= max_size && !trees.empty(); ++size) {
    idx.assign(size, 0);
    for (;;) {
      Forest f;
      for (std::size_t i : idx) f.push_back(trees[i]);
      out.push_back(std::move(f));
      std::size_t pos = size;
      while (pos > 0 && ++idx[pos - 1] == trees.size()) idx[--pos] = 0;
      if (pos == 0) break;
    }
  }
  return out;
}

}  // namespace ogw
