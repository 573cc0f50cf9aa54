#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "sacks/bitstring.hpp"
#include "sacks/ordinal.hpp"
#include "sacks/perfect_tree.hpp"
#include "sacks/step_kind.hpp"

namespace sacks {

// ---------------------------------------------------------------------------
// Pairs of trees

struct PairCondition {
  SkeletonTree left = full_tree();
  SkeletonTree right = full_tree();

  friend bool operator==(const PairCondition&, const PairCondition&) = default;
};

/// ((left)_(l(sigma)), (right)_(r(sigma))).
PairCondition pair_restrict(const PairCondition& p, const BitString& sigma);

/// Componentwise subtree order.
bool pair_leq(const PairCondition& sub, const PairCondition& super);

bool pair_leq_n(const PairCondition& sub, const PairCondition& super, std::size_t n);

/// Throws AmalgamationDomain unless q <= pair_restrict(p, sigma).
PairCondition pair_amalgamate(const PairCondition& p, const BitString& sigma, const PairCondition& q);

// ---------------------------------------------------------------------------
// Finite iterations

/// Finite prefixes of the generic reals of earlier coordinates. A SINGLE
/// coordinate stores a prefix of its real; a PAIR coordinate stores a prefix
/// of the join of its two reals.
struct GenericContext {
  std::map<std::size_t, BitString> commitments;
};

/// Step kinds of a finite iteration: either a fixed list or the self-coding
/// schedule with base n, where step n+1 is a pair and step n+2+j is a pair
/// exactly when bit j of the join of the earlier generics is 1.
class IterSchedule {
 public:
  /// kinds[0] must be Single.
  static IterSchedule fixed(std::vector<StepKind> kinds);
  static IterSchedule self_coding(std::uint64_t base, std::size_t length);

  std::size_t length() const noexcept { return length_; }
  bool is_fixed() const noexcept { return !base_.has_value(); }
  std::optional<std::uint64_t> sc_base() const noexcept { return base_; }
  const std::vector<StepKind>& fixed_kinds() const noexcept { return kinds_; }

  /// Coordinate and bit position whose value decides the kind of step beta.
  std::optional<std::pair<std::size_t, std::size_t>> dependency(std::size_t beta) const;

  /// Empty when the context is too short to decide.
  std::optional<StepKind> kind(std::size_t beta, const GenericContext& ctx) const;

  friend bool operator==(const IterSchedule&, const IterSchedule&) = default;

 private:
  std::size_t length_ = 0;
  std::vector<StepKind> kinds_;
  std::optional<std::uint64_t> base_;
};

/// "The generic real at coordinate `coord` extends `node`". For a PAIR
/// coordinate side 0 and 1 select the left and right real; a SINGLE
/// coordinate only has side 0.
struct GuardAtom {
  std::size_t coord = 0;
  std::uint8_t side = 0;
  BitString node;

  auto operator<=>(const GuardAtom&) const = default;
};

/// A conjunction of atoms, kept sorted with one atom per (coord, side).
class Guard {
 public:
  Guard() = default;

  /// Empty when the atoms contradict each other.
  static std::optional<Guard> of(std::vector<GuardAtom> atoms);
  static std::optional<Guard> conjoin(const Guard& a, const Guard& b);

  std::span<const GuardAtom> atoms() const noexcept { return atoms_; }
  bool empty() const noexcept { return atoms_.empty(); }

  friend bool operator==(const Guard&, const Guard&) = default;

 private:
  std::vector<GuardAtom> atoms_;
};

using Payload = std::variant<SkeletonTree, PairCondition>;

struct GuardedEntry {
  Guard guard;
  Payload payload;

  friend bool operator==(const GuardedEntry&, const GuardedEntry&) = default;
};

/// A condition in a finite iteration. Coordinate beta is a table of guarded
/// payloads whose guards mention only coordinates below beta; in every
/// generic world through the earlier coordinates exactly one guard holds.
struct IterCondition {
  IterSchedule schedule;
  std::vector<std::vector<GuardedEntry>> coords;

  /// Single empty-guard entry per coordinate; payload kinds must follow a fixed schedule.
  static IterCondition unconditional(const IterSchedule& schedule, std::vector<Payload> payloads);
};

enum class Decomposition { Column, Pairwise };

/// Addresses for each coordinate: the columns of sigma, or its left and
/// right parts. Column needs width(|sigma|) <= length (Width error); Pairwise
/// needs length 2 (Precondition error).
std::vector<BitString> decompose(const BitString& sigma, std::size_t length, Decomposition mode);

/// The weakest condition: full trees everywhere.
IterCondition trivial_condition(const IterSchedule& schedule);

/// Throws Precondition when a table is not a partition of the worlds through
/// the earlier coordinates, or a payload does not match its step kind.
void validate(const IterCondition& p);

/// Worlds through coordinates below `upto`, refined enough to decide every
/// guard of p at coordinates <= upto and every atom of `extra`.
std::vector<GenericContext> worlds(const IterCondition& p, std::size_t upto, std::span<const Guard> extra = {});

/// Ground payloads of the first `count` coordinates in a context. Throws
/// Domain when the context does not decide a guard or leaves one of the trees.
std::vector<Payload> resolve(const IterCondition& p, const GenericContext& ctx,
                             std::size_t count = static_cast<std::size_t>(-1));

IterCondition iter_restrict(const IterCondition& p, const BitString& sigma, Decomposition mode);

/// p' <= p: in every world of p' below beta, the payload of p' at beta is
/// contained in that of p. Throws IncompatibleConditions on schedule mismatch.
bool iter_leq(const IterCondition& sub, const IterCondition& super);
bool iter_equivalent(const IterCondition& a, const IterCondition& b);

bool iter_leq_n(const IterCondition& sub, const IterCondition& super, std::size_t n, Decomposition mode);

/// Throws AmalgamationDomain unless q <= iter_restrict(p, sigma, mode).
IterCondition iter_amalgamate(const IterCondition& p, const BitString& sigma, const IterCondition& q,
                              Decomposition mode);

/// Drops entries no world reaches and merges a table whose reachable
/// payloads all coincide into one unguarded entry. Equivalent to the input.
IterCondition simplify(const IterCondition& p);

// ---------------------------------------------------------------------------
// Finite-support products

/// Factors outside `coords` are trivial. `fresh` is the schedule of a trivial
/// factor that a restriction or amalgamation may have to instantiate.
struct ProductCondition {
  std::map<Index, IterCondition> coords;
  std::optional<IterSchedule> fresh;

  std::vector<Index> support() const;
};

/// Coordinate slots[k] restricted at column k of sigma; others unchanged.
/// Throws Width when slots are fewer than width(|sigma|) and Precondition on
/// repeated slots.
ProductCondition prod_restrict(const ProductCondition& p, const BitString& sigma, std::span<const Index> slots);

/// Coordinatewise iter_leq, missing factors being trivial.
bool product_leq(const ProductCondition& sub, const ProductCondition& super);

bool prod_leq(const ProductCondition& sub, const ProductCondition& super, std::size_t n,
              std::span<const Index> slots);

/// Throws AmalgamationDomain unless q <= prod_restrict(p, sigma, slots).
ProductCondition prod_amalgamate(const ProductCondition& p, const BitString& sigma, std::span<const Index> slots,
                                 const ProductCondition& q);

/// Relabels every support index by pi. Throws Precondition when pi misses a
/// support index or sends two of them to the same label.
ProductCondition permute_indices(const ProductCondition& p, const std::map<Index, Index>& pi);

}  // namespace sacks
