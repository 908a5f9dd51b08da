#pragma once

// Fixed certified trees used by tests, the CLI and the acceptance run.

#include <string>
#include <vector>

#include "ogw/orders.hpp"
#include "ogw/problems.hpp"

namespace ogw {

std::vector<TreeDesc> corpus_finite_trees();
// Each carries a leftmost witness path.
std::vector<TreeDesc> corpus_path_trees();
std::vector<TreeDesc> corpus_trees();
// Corpus tree by label; UnknownId if absent.
TreeDesc corpus_tree(const std::string& label);
// Every forest of size 1..max_size over the given trees, in lexicographic
// order of tree indices.
std::vector<Forest> corpus_forests(const std::vector<TreeDesc>& trees, std::size_t max_size);

}  // namespace ogw
