#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "sacks/bitstring.hpp"

namespace sacks {

/// A finitely presented perfect tree.
///
/// The skeleton assigns to every address sigma of length at most depth() the
/// splitting node e(sigma). The represented tree is the downward closure of
/// { e(sigma) + rho : |sigma| = depth, rho arbitrary }, i.e. the tree is full
/// binary above each frontier entry. Entries must satisfy
/// e(sigma + i) extends e(sigma) + i, which makes e(sigma) exactly the
/// sigma-indexed splitting node of the tree.
///
/// Equality is equality of trees: skeletons are compared after deepening both
/// to a common depth.
class SkeletonTree {
 public:
  /// Entries in heap order: index(sigma) = 2^|sigma| - 1 + value(sigma).
  /// Throws Precondition when the extension invariant fails.
  SkeletonTree(std::size_t depth, std::vector<BitString> entries);

  /// Throws Input when an address of length <= depth is missing or a key is too long.
  static SkeletonTree from_map(std::size_t depth, const std::map<BitString, BitString>& skeleton);

  /// The full binary tree 2^{<omega}.
  static SkeletonTree full();

  /// The full binary tree above `node`, i.e. every string comparable with it.
  static SkeletonTree cone(const BitString& node);

  std::size_t depth() const noexcept { return depth_; }

  /// e(sigma); requires |sigma| <= depth().
  const BitString& entry(const BitString& sigma) const;

  std::span<const BitString> entries() const noexcept { return entries_; }
  std::span<const BitString> frontier() const noexcept;

  std::size_t max_entry_length() const noexcept;
  std::size_t min_frontier_length() const noexcept;

  friend bool operator==(const SkeletonTree& a, const SkeletonTree& b);

 private:
  std::size_t depth_;
  std::vector<BitString> entries_;
};

std::size_t heap_index(const BitString& sigma) noexcept;

SkeletonTree full_tree();

bool membership(const SkeletonTree& tree, const BitString& node);

/// The shortest splitting node.
const BitString& stem(const SkeletonTree& tree);

/// The sigma-indexed splitting node rt_sigma; addresses beyond the skeleton
/// continue through the full binary part above the frontier.
BitString splitting_node(const SkeletonTree& tree, const BitString& sigma);

/// { splitting_node(tree, sigma) : |sigma| = n }, listed in address order.
std::vector<BitString> splitting_level(const SkeletonTree& tree, std::size_t n);

/// { rho in tree : rho <= node or node <= rho }. Throws NotANode when node is not in the tree.
SkeletonTree restrict_node(const SkeletonTree& tree, const BitString& node);

/// The cell above the sigma-indexed splitting node.
SkeletonTree restrict_cell(const SkeletonTree& tree, const BitString& sigma);

/// Same tree with a deeper skeleton. Throws Precondition when new_depth < depth.
SkeletonTree deepen(const SkeletonTree& tree, std::size_t new_depth);

/// Node-set inclusion sub <= super.
bool subtree_leq(const SkeletonTree& sub, const SkeletonTree& super);

/// sub <= super and the splitting levels below n coincide.
bool leq_n(const SkeletonTree& sub, const SkeletonTree& super, std::size_t n);

/// The cellwise characterization: every level-n cell of sub lies in the
/// matching cell of super. Agrees with leq_n on every pair of trees.
bool leq_n_by_cells(const SkeletonTree& sub, const SkeletonTree& super, std::size_t n);

/// Replaces the sigma-cell of tree by part, keeping every other level-|sigma|
/// cell. Throws AmalgamationDomain unless part <= restrict_cell(tree, sigma).
SkeletonTree amalgamate(const SkeletonTree& tree, const BitString& sigma, const SkeletonTree& part);

/// The intersection of a finite fusion sequence prefix, after checking that
/// the sequence is decreasing and that schedule[j] stabilizes level j for
/// every j <= n. The result is <=_n every seq[m] with m >= schedule[n].
/// Throws FusionPrecondition when either check fails.
SkeletonTree fusion_prefix(std::span<const SkeletonTree> seq, std::span<const std::size_t> schedule,
                           std::size_t n);

/// Every node of the tree of length exactly n, in lexicographic order.
std::vector<BitString> nodes_of_length(const SkeletonTree& tree, std::size_t n);

}  // namespace sacks
