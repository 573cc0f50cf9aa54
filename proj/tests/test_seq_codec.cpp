#include <random>
#include <set>

#include "doctest.h"
#include "sacks/error.hpp"
#include "sacks/seq_codec.hpp"

using sacks::BitString;

namespace {

BitString bs(const char* s) { return BitString::parse(s); }

// Direct reading of the interleave definition, independent of join_pair.
BitString interleave_oracle(const BitString& x, const BitString& y) {
  BitString out;
  const std::size_t total = x.size() + y.size();
  for (std::size_t n = 0; n < total; ++n) out.push_back(n % 2 == 0 ? x[n / 2] : y[n / 2]);
  return out;
}

// Width by brute force: the last column index that receives a bit from some
// position below k, plus one.
std::uint64_t width_oracle(std::uint64_t k) {
  std::uint64_t w = 0;
  for (std::uint64_t n = 0; n <= k; ++n) {
    for (std::uint64_t m = 0; m <= k; ++m) {
      if (sacks::pair_index(n, m) < k) w = std::max(w, n + 1);
    }
  }
  return w;
}

}  // namespace

TEST_CASE("join_pair interleaves and enforces the length relation") {
  CHECK(sacks::join_pair(BitString(), BitString()) == BitString());
  CHECK(sacks::join_pair(bs("10"), bs("1")) == bs("110"));
  CHECK(sacks::join_pair(bs("10"), bs("11")) == bs("1101"));
  CHECK_THROWS_AS(sacks::join_pair(bs("1"), bs("111")), sacks::Error);
  CHECK(sacks::join_pair(bs("1"), bs("")) == bs("1"));
  try {
    sacks::join_pair(bs("1"), bs("01"));
    FAIL("expected a precondition error");
  } catch (const sacks::Error& e) {
    CHECK(e.kind() == sacks::ErrorKind::Precondition);
  }
}

TEST_CASE("split_pair examples") {
  CHECK(sacks::split_pair(BitString()) == sacks::PairParts{});
  CHECK(sacks::split_pair(bs("110")) == sacks::PairParts{bs("10"), bs("1")});
  CHECK(sacks::split_pair(bs("01")) == sacks::PairParts{bs("0"), bs("1")});
}

TEST_CASE("split_pair inverts join_pair on every legal pair up to length 10") {
  for (std::size_t n = 0; n <= 5; ++n) {
    for (const auto& x : BitString::all_of_length(n)) {
      for (std::size_t ylen : {n, n == 0 ? n : n - 1}) {
        for (const auto& y : BitString::all_of_length(ylen)) {
          const BitString z = sacks::join_pair(x, y);
          CHECK(z == interleave_oracle(x, y));
          CHECK(sacks::split_pair(z) == sacks::PairParts{x, y});
        }
      }
    }
  }
}

TEST_CASE("pair_index fixed values and constraints") {
  CHECK(sacks::pair_index(0, 0) == 0);
  CHECK(sacks::pair_index(0, 1) == 1);
  CHECK(sacks::pair_index(1, 0) == 2);
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < 100; ++m) {
    for (std::uint64_t n = 0; n < 100; ++n) {
      const auto p = sacks::pair_index(m, n);
      CHECK(p < sacks::pair_index(m + 1, n));
      CHECK(p < sacks::pair_index(m, n + 1));
      if (!((m == 0 && n == 0) || (m == 0 && n == 1))) CHECK(p > std::max(m, n));
      CHECK(sacks::unpair_index(p) == std::pair{m, n});
      if (m + n < 100) seen.insert(p);
    }
  }
  // the triangle m + n < 100 is mapped onto [0, 5050)
  CHECK(seen.size() == 5050);
  CHECK(*seen.rbegin() == 5049);
}

TEST_CASE("column examples") {
  const BitString sigma = bs("10110");
  CHECK(sacks::column(sigma, 0) == bs("101"));  // positions 0, 1, 3
  CHECK(sacks::column(sigma, 1) == bs("10"));   // positions 2, 4
  CHECK(sacks::column(sigma, 2) == BitString());
  CHECK(sacks::column(BitString(), 7) == BitString());
}

TEST_CASE("width matches the brute-force oracle") {
  CHECK(sacks::width(0) == 0);
  CHECK(sacks::width(1) == 1);
  CHECK(sacks::width(5) == 2);
  for (std::uint64_t k = 0; k < 200; ++k) CHECK(sacks::width(k) == width_oracle(k));
  for (std::uint64_t k = 0; k <= 10; ++k) {
    for (const auto& sigma : BitString::all_of_length(k)) {
      for (std::uint64_t m = sacks::width(k); m < sacks::width(k) + 3; ++m) {
        CHECK(sacks::column(sigma, m).empty());
      }
    }
  }
}

TEST_CASE("join_family examples and errors") {
  CHECK(sacks::join_family({}, 0) == BitString());
  const std::vector<BitString> xs{bs("10"), bs("1")};
  // positions 0 and 1 come from column 0, position 2 = [1,0] from column 1
  CHECK(sacks::join_family(xs, 3) == bs("101"));
  try {
    (void)sacks::join_family(xs, 4);  // position 3 = [0,2] needs xs[0](2)
    FAIL("expected an incomplete-family error");
  } catch (const sacks::Error& e) {
    CHECK(e.kind() == sacks::ErrorKind::IncompleteFamily);
  }
}

TEST_CASE("columns reassemble every string up to length 12") {
  for (std::size_t k = 0; k <= 12; ++k) {
    for (const auto& sigma : BitString::all_of_length(k)) {
      const auto cols = sacks::columns(sigma);
      REQUIRE(sacks::join_family(cols, k) == sigma);
    }
  }
}

TEST_CASE("columns of a joined random family are prefixes of the sources") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t length = rng() % 40;
    std::vector<BitString> xs;
    for (std::uint64_t n = 0; n < sacks::width(length); ++n) {
      BitString x;
      for (std::uint64_t m = 0; m < length; ++m) x.push_back(rng() & 1U);
      xs.push_back(x);
    }
    const BitString joined = sacks::join_family(xs, length);
    for (std::uint64_t n = 0; n < xs.size(); ++n) CHECK(sacks::column(joined, n).is_prefix_of(xs[n]));
  }
}
