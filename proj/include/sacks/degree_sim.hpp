#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sacks/bitstring.hpp"
#include "sacks/ordinal.hpp"
#include "sacks/step_kind.hpp"

namespace sacks {

/// Step kinds of a finite iteration of length kinds.size().
struct TowerRecipe {
  std::vector<StepKind> kinds;

  friend bool operator==(const TowerRecipe&, const TowerRecipe&) = default;
};

/// A finite partial order given by its covering edges (lower, upper).
class DegreePoset {
 public:
  DegreePoset(std::vector<std::string> labels, std::vector<std::pair<std::size_t, std::size_t>> edges);

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return labels_.size(); }

  /// Throws Domain on an unknown label.
  std::size_t index_of(const std::string& label) const;

  bool leq(std::size_t a, std::size_t b) const { return below_[a][b]; }
  bool comparable(std::size_t a, std::size_t b) const { return leq(a, b) || leq(b, a); }

  /// Greatest lower / least upper bound, if one exists.
  std::optional<std::size_t> meet(std::size_t a, std::size_t b) const;
  std::optional<std::size_t> join(std::size_t a, std::size_t b) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<bool>> below_;
};

/// Chain d0 < d1 < ... < d_alpha with an incomparable pair d{b}.0, d{b}.1
/// between d_b and d_{b+1} for every pair step b. Throws Precondition when
/// the first step is a pair.
DegreePoset tower_degrees(const TowerRecipe& recipe);

/// Graphviz rendering; node and edge order follow the poset, so the bytes
/// depend only on the input.
std::string to_dot(const DegreePoset& poset);

// ---------------------------------------------------------------------------
// Tower census coding of a bit function on {gamma + n}

enum class Count { One, Many };

using BitFunction = std::map<Ordinal2, bool>;
using TowerCensus = std::map<Ordinal2, Count>;

/// Height gamma+2n+1 is One iff x(gamma+n) = 0; height gamma+2n+2 is Many.
/// x must be defined exactly on gamma + n for gamma = w*a, a < limit_bound,
/// n < n_bound (Domain error otherwise).
TowerCensus census_encode(const BitFunction& x, std::size_t limit_bound, std::size_t n_bound);

/// Inverse on the encoder's range. Throws Decode when an even-offset height is One
/// or a height is a limit or zero.
BitFunction census_decode(const TowerCensus& census);

/// Towers of a product of iterations, keyed by (length, copy), valued by the
/// tower length after any cutting. The height of a tower is its length + 1.
using TowerFamily = std::map<std::pair<Ordinal2, std::uint64_t>, Ordinal2>;

/// Every length gamma+m (gamma = w*a, a < limit_bound, m < 2*n_bound) with
/// `copies` copies each.
TowerFamily product_towers(std::size_t limit_bound, std::size_t n_bound, std::uint64_t copies);

/// The towers kept when x(gamma+n) = 0 leaves only copy 0 of length gamma+2n.
TowerFamily surviving_towers(const TowerFamily& all, const BitFunction& x);

/// Re-indexed family: new copy m of length gamma+2n is old copy 2m of length
/// gamma+2n+1 cut down by one step; new copy m of length gamma+2n+1 is old
/// copy 2m+1. Reads only the odd-offset lengths of `kept`.
TowerFamily reindexed_towers(const TowerFamily& kept);

/// Number of towers of each height, collapsed to One / Many.
TowerCensus census_of(const TowerFamily& towers);

// ---------------------------------------------------------------------------
// Self-coding schedules

enum class Level { Line, Diamond };
using ScPattern = std::vector<Level>;

/// The first k steps of SC_n driven by a fixed g. Throws Domain when k > n+2+|g|.
TowerRecipe sc_schedule(std::uint64_t n, const BitString& g, std::size_t k);

ScPattern sc_pattern(const TowerRecipe& recipe);

struct ScCode {
  std::uint64_t n = 0;
  BitString g;

  friend bool operator==(const ScCode&, const ScCode&) = default;
};

/// Base = first diamond - 1; g(j) = 1 iff level n+2+j is a diamond.
/// Throws UndecodablePattern without a diamond and MalformedPattern when the
/// first diamond is level 0.
ScCode sc_decode(const ScPattern& pattern);

/// n is One iff h(n) = 1 (a single copy survives) and Many otherwise
/// (alpha_bound copies survive). Throws Precondition when alpha_bound < 2.
std::map<std::uint64_t, Count> sc_census_encode(const BitString& h, std::uint64_t alpha_bound);

/// Throws Decode unless the keys are exactly 0..k-1.
BitString sc_census_decode(const std::map<std::uint64_t, Count>& census);

}  // namespace sacks
