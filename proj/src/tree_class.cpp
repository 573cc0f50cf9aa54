#include "sacks/tree_class.hpp"

namespace sacks {

namespace {

void extend(const TreeClass& cls, std::vector<BitString>& entries, std::size_t idx,
            const std::vector<BitString>& gaps, std::vector<SkeletonTree>& out) {
  const std::size_t total = (std::size_t{2} << cls.depth) - 1;
  if (idx == total) {
    out.emplace_back(cls.depth, entries);
    return;
  }
  const std::size_t parent = (idx - 1) / 2;
  const bool bit = (idx - 1) % 2 == 1;
  for (const auto& gap : gaps) {
    entries[idx] = entries[parent].with(bit) + gap;
    extend(cls, entries, idx + 1, gaps, out);
  }
}

}  // namespace

std::vector<SkeletonTree> enumerate_trees_above(const TreeClass& cls, const BitString& base) {
  const auto gaps = BitString::all_up_to(cls.max_gap);
  std::vector<SkeletonTree> out;
  std::vector<BitString> entries((std::size_t{2} << cls.depth) - 1);
  for (const auto& stem_tail : BitString::all_up_to(cls.max_stem)) {
    entries[0] = base + stem_tail;
    extend(cls, entries, 1, gaps, out);
  }
  return out;
}

std::vector<SkeletonTree> enumerate_trees(const TreeClass& cls) { return enumerate_trees_above(cls, BitString()); }

}  // namespace sacks
