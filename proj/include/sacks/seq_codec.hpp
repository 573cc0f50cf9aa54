#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sacks/bitstring.hpp"

namespace sacks {

/// Interleaves x and y: result(2k) = x(k), result(2k+1) = y(k).
/// Requires |y| == |x| or |y| == |x| - 1; anything else is a precondition error.
BitString join_pair(const BitString& x, const BitString& y);

struct PairParts {
  BitString left;
  BitString right;

  bool operator==(const PairParts&) const = default;
};

/// Even positions go left, odd positions go right. Total on every string.
PairParts split_pair(const BitString& z);

/// Cantor-style pairing (m+n)(m+n+1)/2 + m. Bijective on N x N, strictly
/// increasing in each argument, [0,0]=0, [0,1]=1 and [m,n] > max(m,n) elsewhere.
std::uint64_t pair_index(std::uint64_t m, std::uint64_t n);

/// Inverse of pair_index.
std::pair<std::uint64_t, std::uint64_t> unpair_index(std::uint64_t p);

/// The n-th column of sigma: column(sigma, n)(m) = sigma(pair_index(n, m)).
/// Columns have contiguous domains because the pairing is monotone.
BitString column(const BitString& sigma, std::uint64_t n);

/// Number of nonempty columns of any string of length k.
std::uint64_t width(std::uint64_t k);

/// Reassembles a string of the given length from its columns:
/// result(pair_index(n, m)) = xs[n](m). Throws IncompleteFamily when some
/// required source bit is missing.
BitString join_family(std::span<const BitString> xs, std::uint64_t length);

/// All columns of sigma, i.e. column(sigma, n) for n < width(|sigma|).
std::vector<BitString> columns(const BitString& sigma);

}  // namespace sacks
