#pragma once

#include <cstddef>
#include <vector>

#include "sacks/perfect_tree.hpp"

namespace sacks {

/// A bounded family of skeleton trees used by the exhaustive property suites.
///
/// Every tree has skeleton depth `depth`; the stem has at most `max_stem`
/// bits and each entry extends its parent entry plus the branching bit by at
/// most `max_gap` further bits. Trees of smaller depth are included through
/// their canonical deepening (gap 0 below their frontier).
struct TreeClass {
  std::size_t depth = 2;
  std::size_t max_stem = 2;
  std::size_t max_gap = 1;
};

std::vector<SkeletonTree> enumerate_trees(const TreeClass& cls);

/// Same family shifted so that every stem extends `base`.
std::vector<SkeletonTree> enumerate_trees_above(const TreeClass& cls, const BitString& base);

}  // namespace sacks
