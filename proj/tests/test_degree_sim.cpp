#include "doctest.h"
#include "sacks/degree_sim.hpp"
#include "sacks/error.hpp"

using namespace sacks;

namespace {

ErrorKind error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Input;
}

constexpr StepKind S = StepKind::Single;
constexpr StepKind P = StepKind::Pair;

std::vector<TowerRecipe> recipes_up_to(std::size_t max_len) {
  std::vector<TowerRecipe> out{TowerRecipe{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (len - 1)); ++mask) {
      TowerRecipe r{{S}};
      for (std::size_t i = 1; i < len; ++i) r.kinds.push_back((mask >> (i - 1)) & 1U ? P : S);
      out.push_back(r);
    }
  }
  return out;
}

BitString bits(std::uint64_t v, std::size_t len) { return BitString::from_value(v, len); }

}  // namespace

TEST_CASE("tower degrees: examples") {
  const auto chain = tower_degrees({{S}});
  CHECK(chain.size() == 2);
  CHECK(chain.edges().size() == 1);
  CHECK(chain.leq(chain.index_of("d0"), chain.index_of("d1")));

  const auto diamond = tower_degrees({{S, P}});
  CHECK(diamond.size() == 5);
  CHECK(diamond.edges().size() == 5);
  const auto a = diamond.index_of("d1.0");
  const auto b = diamond.index_of("d1.1");
  CHECK_FALSE(diamond.comparable(a, b));
  CHECK(diamond.meet(a, b) == diamond.index_of("d1"));
  CHECK(diamond.join(a, b) == diamond.index_of("d2"));
  CHECK(error_of([] { tower_degrees({{P}}); }) == ErrorKind::Precondition);
  CHECK(error_of([&] { diamond.index_of("d9"); }) == ErrorKind::Domain);
}

TEST_CASE("tower degrees: counts, order and lattice property for every recipe up to length 6") {
  std::size_t checked = 0;
  for (const auto& r : recipes_up_to(6)) {
    const auto poset = tower_degrees(r);
    const std::size_t alpha = r.kinds.size();
    const auto pairs = static_cast<std::size_t>(std::count(r.kinds.begin(), r.kinds.end(), P));
    REQUIRE(poset.size() == alpha + 1 + 2 * pairs);
    REQUIRE(poset.edges().size() == (alpha - pairs) + 4 * pairs);
    for (std::size_t i = 0; i <= alpha; ++i) {
      for (std::size_t j = 0; j <= alpha; ++j) {
        REQUIRE(poset.leq(poset.index_of("d" + std::to_string(i)), poset.index_of("d" + std::to_string(j))) ==
                (i <= j));
      }
    }
    const auto bottom = poset.index_of("d0");
    for (std::size_t x = 0; x < poset.size(); ++x) REQUIRE(poset.leq(bottom, x));
    for (std::size_t beta = 0; beta < alpha; ++beta) {
      if (r.kinds[beta] != P) continue;
      const auto b = std::to_string(beta);
      const auto x = poset.index_of("d" + b + ".0");
      const auto y = poset.index_of("d" + b + ".1");
      REQUIRE_FALSE(poset.comparable(x, y));
      REQUIRE(poset.meet(x, y) == poset.index_of("d" + b));
      REQUIRE(poset.join(x, y) == poset.index_of("d" + std::to_string(beta + 1)));
    }
    ++checked;
  }
  CHECK(checked == 1 + 1 + 2 + 4 + 8 + 16 + 32);
}

TEST_CASE("dot output") {
  const auto dot = to_dot(tower_degrees({{S, P}}));
  CHECK(dot == to_dot(tower_degrees({{S, P}})));
  CHECK(std::count(dot.begin(), dot.end(), '>') == 5);
  CHECK(dot.find("\"d1\" -> \"d1.0\";") != std::string::npos);
  const auto chain = to_dot(tower_degrees({{S}}));
  CHECK(chain == "digraph degrees {\n  rankdir=BT;\n  \"d0\";\n  \"d1\";\n  \"d0\" -> \"d1\";\n}\n");
}

TEST_CASE("posets reject cycles") {
  CHECK(error_of([] { DegreePoset({"a", "b"}, {{0, 1}, {1, 0}}); }) == ErrorKind::Input);
  CHECK(error_of([] { DegreePoset({"a"}, {{0, 3}}); }) == ErrorKind::Input);
}

TEST_CASE("census coding examples") {
  BitFunction zero;
  for (std::uint64_t a = 0; a < 2; ++a)
    for (std::uint64_t n = 0; n < 4; ++n) zero[{a, n}] = false;
  const auto c0 = census_encode(zero, 2, 4);
  for (const auto& [h, count] : c0) CHECK(count == (h.b % 2 == 1 ? Count::One : Count::Many));

  BitFunction x = zero;
  x[{0, 0}] = true;
  CHECK(census_encode(x, 2, 4).at({0, 1}) == Count::Many);
  CHECK(census_encode(x, 2, 4).at({1, 1}) == Count::One);

  TowerCensus many;
  for (std::uint64_t n = 1; n <= 6; ++n) many[{0, n}] = Count::Many;
  for (const auto& [_, bit] : census_decode(many)) CHECK(bit);
  CHECK(census_decode({{{0, 1}, Count::One}}).at({0, 0}) == false);

  CHECK(error_of([] { census_decode({{{0, 2}, Count::One}}); }) == ErrorKind::Decode);
  CHECK(error_of([] { census_decode({{{1, 0}, Count::Many}}); }) == ErrorKind::Decode);
  CHECK(error_of([&] { census_encode(zero, 1, 4); }) == ErrorKind::Domain);
  CHECK(error_of([&] { census_encode(zero, 2, 5); }) == ErrorKind::Domain);
}

TEST_CASE("census round trip and agreement with the tower simulation") {
  const auto all = product_towers(2, 4, 6);
  const auto full_census = census_of(all);
  for (const auto& [_, count] : full_census) REQUIRE(count == Count::Many);
  for (std::uint64_t v = 0; v < 256; ++v) {
    BitFunction x;
    for (std::uint64_t i = 0; i < 8; ++i) x[{i / 4, i % 4}] = (v >> i) & 1U;
    const auto census = census_encode(x, 2, 4);
    REQUIRE(census_decode(census) == x);
    for (const auto& [h, count] : census) {
      if (h.b % 2 == 0) REQUIRE(count == Count::Many);
    }
    // Counting the towers that survive in the intermediate model gives the same census.
    const auto kept = surviving_towers(all, x);
    REQUIRE(census_of(kept) == census);
    // Cutting half of the next-height towers down restores the full census.
    REQUIRE(census_of(reindexed_towers(kept)) == full_census);
  }
}

TEST_CASE("self-coding schedules") {
  CHECK(sc_schedule(1, bits(0b10, 2), 5) == TowerRecipe{{S, S, P, P, S}});
  CHECK(sc_schedule(0, BitString(), 2) == TowerRecipe{{S, P}});
  CHECK(error_of([] { sc_schedule(0, BitString(), 3); }) == ErrorKind::Domain);
  CHECK(sc_pattern(sc_schedule(1, bits(0b10, 2), 5)) ==
        ScPattern{Level::Line, Level::Line, Level::Diamond, Level::Diamond, Level::Line});
  CHECK(sc_pattern({{S, S, S}}) == ScPattern(3, Level::Line));
  CHECK(sc_decode({Level::Line, Level::Line, Level::Diamond, Level::Diamond, Level::Line}) ==
        ScCode{1, bits(0b10, 2)});
  CHECK(sc_decode({Level::Line, Level::Diamond}) == ScCode{0, BitString()});
  CHECK(error_of([] { sc_decode({Level::Line, Level::Line}); }) == ErrorKind::UndecodablePattern);
  CHECK(error_of([] { sc_decode({Level::Diamond}); }) == ErrorKind::MalformedPattern);
}

TEST_CASE("self-coding round trips and pattern injectivity") {
  std::map<ScPattern, ScCode> seen;
  for (std::uint64_t n = 0; n < 4; ++n) {
    for (std::size_t len = 0; len <= 6; ++len) {
      for (const auto& g : BitString::all_of_length(len)) {
        const auto recipe = sc_schedule(n, g, n + 2 + len);
        REQUIRE(recipe.kinds.front() == S);
        const auto pattern = sc_pattern(recipe);
        REQUIRE(pattern.size() == recipe.kinds.size());
        REQUIRE(sc_decode(pattern) == ScCode{n, g});
        REQUIRE(seen.emplace(pattern, ScCode{n, g}).second);
      }
    }
  }
  CHECK(seen.size() == 4 * 127);
}

TEST_CASE("self-coding census") {
  const auto c = sc_census_encode(bits(0b10, 2), 3);
  CHECK(c.at(0) == Count::One);
  CHECK(c.at(1) == Count::Many);
  for (const auto& [_, count] : sc_census_encode(bits(0, 5), 4)) CHECK(count == Count::Many);
  for (std::size_t len = 0; len <= 8; ++len) {
    for (const auto& h : BitString::all_of_length(len)) REQUIRE(sc_census_decode(sc_census_encode(h, 2)) == h);
  }
  CHECK(error_of([] { sc_census_encode(BitString(), 1); }) == ErrorKind::Precondition);
  CHECK(error_of([] { sc_census_decode({{1, Count::One}}); }) == ErrorKind::Decode);
}
