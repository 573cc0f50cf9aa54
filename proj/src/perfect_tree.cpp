#include "sacks/perfect_tree.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "sacks/error.hpp"

namespace sacks {

namespace {

std::size_t entry_count(std::size_t depth) { return (std::size_t{2} << depth) - 1; }

// The subtree hanging at skeleton address sigma, |sigma| <= depth.
SkeletonTree cell_at(const SkeletonTree& tree, const BitString& sigma) {
  const std::size_t sub_depth = tree.depth() - sigma.size();
  std::vector<BitString> entries;
  entries.reserve(entry_count(sub_depth));
  for (std::size_t k = 0; k <= sub_depth; ++k) {
    for (const auto& rho : BitString::all_of_length(k)) entries.push_back(tree.entry(sigma + rho));
  }
  return SkeletonTree(sub_depth, std::move(entries));
}

// True iff every string extending `node` belongs to the tree. Walks the
// skeleton from address index `idx` at skeleton level `level`.
bool covers_cone(const SkeletonTree& tree, std::size_t idx, std::size_t level, const BitString& node) {
  const BitString& e = tree.entries()[idx];
  if (!e.comparable(node)) return false;
  if (node.size() < e.size()) return false;  // node sits strictly below a split: one side is missing
  if (level == tree.depth()) return true;
  if (node.size() > e.size()) {
    return covers_cone(tree, 2 * idx + 1 + node[e.size()], level + 1, node);
  }
  return covers_cone(tree, 2 * idx + 1, level + 1, node.with(false)) &&
         covers_cone(tree, 2 * idx + 2, level + 1, node.with(true));
}

std::set<BitString> level_set(const SkeletonTree& tree, std::size_t n) {
  auto level = splitting_level(tree, n);
  return {level.begin(), level.end()};
}

}  // namespace

std::size_t heap_index(const BitString& sigma) noexcept {
  return (std::size_t{1} << sigma.size()) - 1 + static_cast<std::size_t>(sigma.value());
}

SkeletonTree::SkeletonTree(std::size_t depth, std::vector<BitString> entries)
    : depth_(depth), entries_(std::move(entries)) {
  if (depth_ > 24) fail(ErrorKind::Resource, "skeleton depth " + std::to_string(depth_) + " is too large");
  if (entries_.size() != entry_count(depth_)) {
    fail(ErrorKind::Precondition, "a depth-" + std::to_string(depth_) + " skeleton needs " +
                                      std::to_string(entry_count(depth_)) + " entries, got " +
                                      std::to_string(entries_.size()));
  }
  for (std::size_t idx = 0; 2 * idx + 2 < entries_.size(); ++idx) {
    for (int i = 0; i < 2; ++i) {
      const BitString expected = entries_[idx].with(i == 1);
      const BitString& child = entries_[2 * idx + 1 + i];
      if (!expected.is_prefix_of(child)) {
        fail(ErrorKind::Precondition, "skeleton entry '" + child.str() + "' does not extend '" +
                                          expected.str() + "'");
      }
    }
  }
}

SkeletonTree SkeletonTree::from_map(std::size_t depth, const std::map<BitString, BitString>& skeleton) {
  std::vector<BitString> entries(entry_count(depth));
  std::vector<bool> seen(entries.size(), false);
  for (const auto& [sigma, node] : skeleton) {
    if (sigma.size() > depth) {
      fail(ErrorKind::Input, "skeleton key '" + sigma.str() + "' is longer than depth " + std::to_string(depth));
    }
    entries[heap_index(sigma)] = node;
    seen[heap_index(sigma)] = true;
  }
  for (std::size_t k = 0; k <= depth; ++k) {
    for (const auto& sigma : BitString::all_of_length(k)) {
      if (!seen[heap_index(sigma)]) fail(ErrorKind::Input, "skeleton key '" + sigma.str() + "' is missing");
    }
  }
  return SkeletonTree(depth, std::move(entries));
}

SkeletonTree SkeletonTree::full() { return SkeletonTree(0, {BitString()}); }

SkeletonTree SkeletonTree::cone(const BitString& node) { return SkeletonTree(0, {node}); }

const BitString& SkeletonTree::entry(const BitString& sigma) const {
  if (sigma.size() > depth_) {
    fail(ErrorKind::Domain, "address '" + sigma.str() + "' is deeper than the skeleton (depth " +
                                std::to_string(depth_) + ")");
  }
  return entries_[heap_index(sigma)];
}

std::span<const BitString> SkeletonTree::frontier() const noexcept {
  const std::size_t first = (std::size_t{1} << depth_) - 1;
  return std::span<const BitString>(entries_).subspan(first);
}

std::size_t SkeletonTree::max_entry_length() const noexcept {
  std::size_t best = 0;
  for (const auto& e : frontier()) best = std::max(best, e.size());
  return best;
}

std::size_t SkeletonTree::min_frontier_length() const noexcept {
  std::size_t best = frontier().front().size();
  for (const auto& e : frontier()) best = std::min(best, e.size());
  return best;
}

bool operator==(const SkeletonTree& a, const SkeletonTree& b) {
  if (a.depth_ == b.depth_) return a.entries_ == b.entries_;
  const std::size_t d = std::max(a.depth_, b.depth_);
  return deepen(a, d).entries_ == deepen(b, d).entries_;
}

SkeletonTree full_tree() { return SkeletonTree::full(); }

bool membership(const SkeletonTree& tree, const BitString& node) {
  std::size_t idx = 0;
  for (std::size_t level = 0;; ++level) {
    const BitString& e = tree.entries()[idx];
    if (node.is_prefix_of(e)) return true;
    if (!e.is_prefix_of(node)) return false;
    if (level == tree.depth()) return true;
    idx = 2 * idx + 1 + node[e.size()];
  }
}

const BitString& stem(const SkeletonTree& tree) { return tree.entries().front(); }

BitString splitting_node(const SkeletonTree& tree, const BitString& sigma) {
  if (sigma.size() <= tree.depth()) return tree.entry(sigma);
  return tree.entry(sigma.prefix(tree.depth())) + sigma.drop(tree.depth());
}

std::vector<BitString> splitting_level(const SkeletonTree& tree, std::size_t n) {
  std::vector<BitString> out;
  for (const auto& sigma : BitString::all_of_length(n)) out.push_back(splitting_node(tree, sigma));
  return out;
}

SkeletonTree restrict_node(const SkeletonTree& tree, const BitString& node) {
  BitString sigma;
  for (;;) {
    const BitString& e = tree.entry(sigma);
    if (node.is_prefix_of(e)) return sigma.empty() ? tree : cell_at(tree, sigma);
    if (!e.is_prefix_of(node)) break;
    if (sigma.size() == tree.depth()) return SkeletonTree::cone(node);
    sigma.push_back(node[e.size()]);
  }
  fail(ErrorKind::NotANode, "'" + node.str() + "' is not a node of the tree");
}

SkeletonTree restrict_cell(const SkeletonTree& tree, const BitString& sigma) {
  if (sigma.empty()) return tree;
  if (sigma.size() <= tree.depth()) return cell_at(tree, sigma);
  return SkeletonTree::cone(splitting_node(tree, sigma));
}

SkeletonTree deepen(const SkeletonTree& tree, std::size_t new_depth) {
  if (new_depth < tree.depth()) {
    fail(ErrorKind::Precondition, "cannot deepen a depth-" + std::to_string(tree.depth()) +
                                      " skeleton to depth " + std::to_string(new_depth));
  }
  if (new_depth == tree.depth()) return tree;
  std::vector<BitString> entries;
  entries.reserve(entry_count(new_depth));
  for (std::size_t k = 0; k <= new_depth; ++k) {
    for (const auto& sigma : BitString::all_of_length(k)) entries.push_back(splitting_node(tree, sigma));
  }
  return SkeletonTree(new_depth, std::move(entries));
}

bool subtree_leq(const SkeletonTree& sub, const SkeletonTree& super) {
  // The cone above every frontier node of `sub` has to lie inside `super`;
  // the rest of `sub` is the downward closure of those frontier nodes.
  return std::ranges::all_of(sub.frontier(),
                             [&](const BitString& node) { return covers_cone(super, 0, 0, node); });
}

bool leq_n(const SkeletonTree& sub, const SkeletonTree& super, std::size_t n) {
  if (!subtree_leq(sub, super)) return false;
  for (std::size_t m = 0; m < n; ++m) {
    if (level_set(sub, m) != level_set(super, m)) return false;
  }
  return true;
}

bool leq_n_by_cells(const SkeletonTree& sub, const SkeletonTree& super, std::size_t n) {
  for (const auto& sigma : BitString::all_of_length(n)) {
    if (!subtree_leq(restrict_cell(sub, sigma), restrict_cell(super, sigma))) return false;
  }
  return true;
}

SkeletonTree amalgamate(const SkeletonTree& tree, const BitString& sigma, const SkeletonTree& part) {
  if (!subtree_leq(part, restrict_cell(tree, sigma))) {
    fail(ErrorKind::AmalgamationDomain,
         "the inserted tree is not contained in the cell at '" + sigma.str() + "'");
  }
  const std::size_t n = sigma.size();
  const std::size_t depth = std::max(tree.depth(), n + part.depth());
  const SkeletonTree outer = deepen(tree, depth);
  const SkeletonTree inner = deepen(part, depth - n);
  std::vector<BitString> entries;
  entries.reserve(entry_count(depth));
  for (std::size_t k = 0; k <= depth; ++k) {
    for (const auto& pi : BitString::all_of_length(k)) {
      if (k >= n && pi.prefix(n) == sigma) {
        entries.push_back(inner.entry(pi.drop(n)));
      } else {
        entries.push_back(outer.entry(pi));
      }
    }
  }
  return SkeletonTree(depth, std::move(entries));
}

SkeletonTree fusion_prefix(std::span<const SkeletonTree> seq, std::span<const std::size_t> schedule,
                           std::size_t n) {
  if (seq.empty()) fail(ErrorKind::FusionPrecondition, "empty sequence");
  if (schedule.size() <= n) {
    fail(ErrorKind::FusionPrecondition, "schedule has no entry for level " + std::to_string(n));
  }
  for (std::size_t m = 0; m + 1 < seq.size(); ++m) {
    if (!subtree_leq(seq[m + 1], seq[m])) {
      fail(ErrorKind::FusionPrecondition, "sequence is not decreasing at position " + std::to_string(m + 1));
    }
  }
  for (std::size_t j = 0; j <= n; ++j) {
    const std::size_t k = schedule[j];
    if (k >= seq.size()) {
      fail(ErrorKind::FusionPrecondition, "schedule entry " + std::to_string(j) + " = " +
                                              std::to_string(k) + " is past the end of the sequence");
    }
    for (std::size_t m = k; m < seq.size(); ++m) {
      for (std::size_t later = m + 1; later < seq.size(); ++later) {
        if (!leq_n(seq[later], seq[m], j)) {
          fail(ErrorKind::FusionPrecondition, "level " + std::to_string(j) + " is not stable from position " +
                                                  std::to_string(k) + " (fails between " + std::to_string(m) +
                                                  " and " + std::to_string(later) + ")");
        }
      }
    }
  }
  return seq.back();
}

std::vector<BitString> nodes_of_length(const SkeletonTree& tree, std::size_t n) {
  std::vector<BitString> out;
  std::vector<BitString> stack{BitString()};
  while (!stack.empty()) {
    BitString node = std::move(stack.back());
    stack.pop_back();
    if (!membership(tree, node)) continue;
    if (node.size() == n) {
      out.push_back(std::move(node));
      continue;
    }
    stack.push_back(node.with(true));
    stack.push_back(node.with(false));
  }
  return out;
}

}  // namespace sacks
