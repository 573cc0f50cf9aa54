#pragma once

// Test-only oracles for perfect trees. They read the skeleton straight from
// the downward-closure definition and never call the library's walks.

#include <algorithm>
#include <set>

#include "sacks/perfect_tree.hpp"

namespace oracle {

using sacks::BitString;
using sacks::SkeletonTree;

// nu is in T iff it is comparable with some frontier entry.
inline bool member(const SkeletonTree& t, const BitString& nu) {
  return std::ranges::any_of(t.frontier(), [&](const BitString& e) { return e.comparable(nu); });
}

inline std::set<BitString> nodes_up_to(const SkeletonTree& t, std::size_t len) {
  std::set<BitString> out;
  for (const auto& nu : BitString::all_up_to(len)) {
    if (member(t, nu)) out.insert(nu);
  }
  return out;
}

// Node-set inclusion. A shortest node of sub missing from super has length
// at most max_entry(super) + 1, so checking up to that bound is exact.
inline bool subset(const SkeletonTree& sub, const SkeletonTree& super) {
  const std::size_t bound = super.max_entry_length() + 1;
  for (const auto& nu : BitString::all_up_to(bound)) {
    if (member(sub, nu) && !member(super, nu)) return false;
  }
  return true;
}

inline bool splits(const SkeletonTree& t, const BitString& nu) {
  return member(t, nu.with(false)) && member(t, nu.with(true));
}

}  // namespace oracle
