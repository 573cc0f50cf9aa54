// Acceptance gate: one PASS/FAIL line per criterion, each with its time limit.
// Exit status is nonzero when any criterion fails.

#include <bitset>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "imp_oracle.hpp"
#include "sacks/condition_algebra.hpp"
#include "sacks/degree_sim.hpp"
#include "sacks/error.hpp"
#include "sacks/imp_core.hpp"
#include "sacks/perfect_tree.hpp"
#include "sacks/seq_codec.hpp"
#include "sacks/tree_class.hpp"
#include "tree_oracles.hpp"

using namespace sacks;

namespace {

struct Tally {
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (!ok && failures++ == 0) first = what;
  }
};

int failed_criteria = 0;

void criterion(int number, const char* title, double limit_seconds, const std::function<void(Tally&)>& body) {
  Tally t;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(t);
  } catch (const std::exception& e) {
    ++t.failures;
    if (t.first.empty()) t.first = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit_seconds;
  const bool pass = t.failures == 0 && t.cases > 0 && in_time;
  if (!pass) ++failed_criteria;
  std::printf("criterion %2d %s  %s  cases=%llu failures=%llu time=%.2fs limit=%.0fs\n", number, pass ? "PASS" : "FAIL",
              title, static_cast<unsigned long long>(t.cases), static_cast<unsigned long long>(t.failures), secs,
              limit_seconds);
  if (t.failures != 0) std::printf("             first failure: %s\n", t.first.c_str());
  if (t.cases == 0) std::printf("             no cases were checked\n");
  if (!in_time) std::printf("             time limit exceeded\n");
  std::fflush(stdout);
}

BitString bs(const char* s) { return BitString::parse(s); }

template <typename F>
bool throws(ErrorKind kind, F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

// ---------------------------------------------------------------------------
// 1, 2

void pairing(Tally& t) {
  t.check(pair_index(0, 0) == 0, "[0,0]");
  t.check(pair_index(0, 1) == 1, "[0,1]");
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < 100; ++m)
    for (std::uint64_t n = 0; n < 100; ++n) {
      const auto p = pair_index(m, n);
      const auto at = "[" + std::to_string(m) + "," + std::to_string(n) + "]";
      if (!(m == 0 && n <= 1)) t.check(p > std::max(m, n), at + " <= max");
      t.check(p < pair_index(m + 1, n) && p < pair_index(m, n + 1), at + " not monotone");
      t.check(seen.insert(p).second, at + " collides");
      if (m + n < 100) t.check(p < 5050, at + " outside the first 100 diagonals");
    }
  // Injective on the first 100 diagonals and landing in [0, 5050): onto.
  std::size_t below = 0;
  for (const auto p : seen) below += p < 5050;
  t.check(below == 5050, "first 100 diagonals do not cover [0,5050)");
}

void column_round_trip(Tally& t) {
  std::uint64_t count = 0;
  for (std::size_t k = 0; k <= 12; ++k)
    for (const auto& sigma : BitString::all_of_length(k)) {
      if (k == 0) continue;
      ++count;
      const auto cols = columns(sigma);
      // Column n holds sigma at positions (n+m)(n+m+1)/2 + n, m = 0, 1, ...
      bool ok = true;
      for (std::size_t n = 0; n < cols.size() && ok; ++n)
        for (std::size_t m = 0; m < cols[n].size() && ok; ++m) {
          const auto pos = (n + m) * (n + m + 1) / 2 + n;
          ok = pos < k && cols[n][m] == sigma[pos];
        }
      t.check(ok && join_family(cols, k) == sigma, "sigma = " + sigma.str());
    }
  t.check(count == 8190, "case count");  // 2^13 - 2 nonempty strings, plus the empty one below
  t.check(join_family(columns(BitString()), 0) == BitString(), "empty string");
}

// ---------------------------------------------------------------------------
// 3

// Splitting levels read off node membership alone: the root is the shortest
// splitting node, and each child level continues a branch until it splits.
std::vector<std::vector<BitString>> oracle_levels(const SkeletonTree& t, std::size_t count) {
  BitString root;
  while (!oracle::splits(t, root)) root.push_back(oracle::member(t, root.with(true)));
  std::vector<std::vector<BitString>> out{{root}};
  while (out.size() < count) {
    std::vector<BitString> next;
    for (const auto& nu : out.back())
      for (bool b : {false, true}) {
        BitString x = nu.with(b);
        while (!oracle::splits(t, x)) x.push_back(oracle::member(t, x.with(true)));
        next.push_back(x);
      }
    out.push_back(next);
  }
  return out;
}

constexpr std::size_t kNodeBound = 7;  // entries of the small trees have at most 4 bits

using NodeSet = std::bitset<(1U << (kNodeBound + 1)) - 1>;

NodeSet node_set(const SkeletonTree& t) {
  NodeSet s;
  for (const auto& nu : BitString::all_up_to(kNodeBound))
    if (oracle::member(t, nu)) s.set(heap_index(nu));
  return s;
}

void perfect_trees(Tally& t) {
  const auto trees = enumerate_trees({.depth = 2, .max_stem = 2, .max_gap = 1});
  t.check(trees.size() == 5103, "class size");
  const auto addrs = BitString::all_up_to(3);
  for (const auto& tree : trees) {
    const auto levels = oracle_levels(tree, 4);
    const std::size_t long_len = tree.max_entry_length() + 1;
    for (std::size_t n = 0; n < 4; ++n) {
      const auto lib = splitting_level(tree, n);
      t.check(lib == levels[n], "S_n differs from the membership oracle");
      // Maximal antichain: pairwise incomparable, every long node extends exactly one.
      bool antichain = true;
      for (std::size_t i = 0; i < lib.size(); ++i)
        for (std::size_t j = i + 1; j < lib.size(); ++j) antichain = antichain && !lib[i].comparable(lib[j]);
      t.check(antichain, "S_n is not an antichain");
      const std::size_t len = std::max(long_len, lib.back().size());
      std::vector<SkeletonTree> cells;
      for (const auto& sigma : BitString::all_of_length(n)) cells.push_back(restrict_cell(tree, sigma));
      for (const auto& nu : BitString::all_of_length(len)) {
        if (!oracle::member(tree, nu)) continue;
        std::size_t above = 0;
        for (const auto& x : lib) above += x.is_prefix_of(nu);
        t.check(above == 1, "node " + nu.str() + " extends " + std::to_string(above) + " members of S_n");
        std::size_t in = 0;
        for (const auto& c : cells) in += oracle::member(c, nu);
        t.check(in == 1, "node " + nu.str() + " lies in " + std::to_string(in) + " cells");
      }
    }
    std::vector<BitString> rts;
    for (const auto& a : addrs) rts.push_back(splitting_node(tree, a));
    for (std::size_t i = 0; i < addrs.size(); ++i)
      for (std::size_t j = 0; j < addrs.size(); ++j)
        t.check(addrs[i].is_prefix_of(addrs[j]) == rts[i].is_prefix_of(rts[j]), "rt is not an order embedding");

    // Amalgamation: R_(sigma) = S, R_(tau) = T_(tau), and R is T with the sigma-cell replaced.
    for (std::size_t n = 0; n <= 2; ++n)
      for (const auto& sigma : BitString::all_of_length(n)) {
        const auto cell = restrict_cell(tree, sigma);
        const auto root = splitting_node(tree, sigma);
        std::vector<BitString> nodes{root.with(false), root.with(true)};
        for (const auto& a : BitString::all_up_to(2)) nodes.push_back(splitting_node(cell, a));
        for (const auto& node : nodes) {
          const auto part = restrict_node(cell, node);
          const auto r = amalgamate(tree, sigma, part);
          t.check(restrict_cell(r, sigma) == part, "R_(sigma) != S at " + sigma.str());
          for (const auto& tau : BitString::all_of_length(n))
            if (tau != sigma) t.check(restrict_cell(r, tau) == restrict_cell(tree, tau), "R_(tau) != T_(tau)");
          t.check(leq_n(r, tree, n), "R not <=_n T");
          const std::size_t len = std::max({tree.max_entry_length(), part.max_entry_length(), r.max_entry_length()}) + 1;
          bool same = true;
          for (const auto& nu : BitString::all_of_length(len))
            same = same && oracle::member(r, nu) == (root.is_prefix_of(nu) ? oracle::member(part, nu)
                                                                           : oracle::member(tree, nu));
          t.check(same, "R is not (T outside the cell) + S");
        }
      }
  }

  // Both <=_n characterizations against the definition, entries of at most 4 bits.
  std::vector<const SkeletonTree*> small;
  for (const auto& tree : trees)
    if (tree.max_entry_length() <= 4) small.push_back(&tree);
  t.check(small.size() == 975, "small class size");
  std::vector<NodeSet> sets;
  std::vector<std::vector<std::vector<BitString>>> levels;
  for (const auto* x : small) {
    sets.push_back(node_set(*x));
    levels.push_back(oracle_levels(*x, 3));
  }
  for (std::size_t i = 0; i < small.size(); ++i)
    for (std::size_t j = 0; j < small.size(); ++j) {
      const bool incl = (sets[i] & ~sets[j]).none();
      for (std::size_t n = 0; n <= 3; ++n) {
        bool expected = incl;
        for (std::size_t m = 0; m < n && expected; ++m) expected = levels[i][m] == levels[j][m];
        const bool a = leq_n(*small[i], *small[j], n);
        const bool b = leq_n_by_cells(*small[i], *small[j], n);
        if (a != expected || b != expected)
          t.check(false, "<=_" + std::to_string(n) + " disagrees with the definition");
        else
          t.check(true, "");
      }
      t.check(subtree_leq(*small[i], *small[j]) == incl, "<= disagrees with node inclusion");
    }
}

// ---------------------------------------------------------------------------
// 4, 5

const IterSchedule& two_singles() {
  static const auto s = IterSchedule::fixed({StepKind::Single, StepKind::Single});
  return s;
}

void worked_example(Tally& t) {
  const SkeletonTree T(1, {bs("0"), bs("00"), bs("011")});
  const SkeletonTree Tp(1, {bs("1"), bs("10"), bs("110")});
  const auto p = IterCondition::unconditional(two_singles(), {T, Tp});
  const auto sigma = join_pair(bs("0"), bs("0"));
  const auto S = restrict_node(T, bs("0010"));
  const auto Sp = amalgamate(restrict_cell(Tp, bs("0")), bs("1"), restrict_cell(Tp, bs("011")));
  const auto q = IterCondition::unconditional(two_singles(), {S, Sp});
  const auto r = iter_amalgamate(p, sigma, q, Decomposition::Pairwise);
  const auto at = [](const IterCondition& c, const char* l, const char* rr) {
    return iter_restrict(c, join_pair(bs(l), bs(rr)), Decomposition::Pairwise);
  };
  t.check(iter_equivalent(at(r, "0", "0"), q), "r_(<0>+<0>) = q");
  t.check(iter_equivalent(at(r, "0", "1"), IterCondition::unconditional(two_singles(), {S, restrict_cell(Tp, bs("1"))})),
          "r_(<0>+<1>) = <S, T'_(<1>)>");
  t.check(iter_equivalent(at(r, "1", "0"), at(p, "1", "0")), "r_(<1>+<0>) = p_(<1>+<0>)");
  t.check(iter_equivalent(at(r, "1", "1"), at(p, "1", "1")), "r_(<1>+<1>) = p_(<1>+<1>)");
}

void product_partial_equality(Tally& t) {
  const auto cls = enumerate_trees({.depth = 1, .max_stem = 1, .max_gap = 1});
  const auto one = IterSchedule::fixed({StepKind::Single});
  const std::vector<Index> slots{Index(Ordinal2{0, 0}), Index(Ordinal2{0, 1})};
  const auto b = [](const BitString& x) { return column(column(x, 0), 0); };
  // A factor given by the full tree is left out of the support.
  std::vector<std::optional<SkeletonTree>> factors{std::nullopt};
  for (const auto& x : cls)
    if (!(x == full_tree())) factors.emplace_back(x);
  const auto make = [&](const std::optional<SkeletonTree>& f0, const std::optional<SkeletonTree>& f1) {
    ProductCondition p;
    p.fresh = one;
    if (f0) p.coords.emplace(slots[0], IterCondition::unconditional(one, {*f0}));
    if (f1) p.coords.emplace(slots[1], IterCondition::unconditional(one, {*f1}));
    return p;
  };
  const auto tree_at = [&](const ProductCondition& p, std::size_t k) {
    const auto it = p.coords.find(slots[k]);
    return it == p.coords.end() ? full_tree() : std::get<SkeletonTree>(it->second.coords[0].front().payload);
  };
  for (const auto& f0 : factors)
    for (const auto& f1 : factors) {
      const auto p = make(f0, f1);
      for (const auto& sigma : BitString::all_up_to(2)) {
        const auto cell = prod_restrict(p, sigma, slots);
        const auto c0 = tree_at(cell, 0);
        const auto c1 = tree_at(cell, 1);
        for (const auto& q0 : factors) {
          if (!subtree_leq(q0.value_or(full_tree()), c0)) continue;
          for (const auto& q1 : factors) {
            if (!subtree_leq(q1.value_or(full_tree()), c1)) continue;
            const auto q = make(q0, q1);
            const auto r = prod_amalgamate(p, sigma, slots, q);
            for (const auto& tau : BitString::all_of_length(sigma.size())) {
              if (b(tau) == b(sigma)) continue;
              t.check(tree_at(prod_restrict(r, tau, slots), 0) == tree_at(prod_restrict(p, tau, slots), 0),
                      "coordinate i(0) changed: sigma=" + sigma.str() + " tau=" + tau.str());
            }
            const auto back = prod_restrict(r, sigma, slots);
            t.check(tree_at(back, 0) == tree_at(q, 0) && tree_at(back, 1) == tree_at(q, 1), "r_(sigma) != q");
          }
        }
      }
    }
}

// ---------------------------------------------------------------------------
// 6, 7, 8

void census(Tally& t) {
  for (std::uint64_t v = 0; v < 256; ++v) {
    BitFunction x;
    for (std::uint64_t i = 0; i < 8; ++i) x[{i / 4, i % 4}] = (v >> i) & 1U;
    const auto c = census_encode(x, 2, 4);
    // Heights w*a + 2n + 1 carry the bit, w*a + 2n + 2 are always MANY.
    bool shape = c.size() == 16;
    for (const auto& [h, count] : x)
      shape = shape && c.at({h.a, 2 * h.b + 1}) == (count ? Count::Many : Count::One) &&
              c.at({h.a, 2 * h.b + 2}) == Count::Many;
    t.check(shape, "census layout for x = " + std::to_string(v));
    t.check(census_decode(c) == x, "round trip for x = " + std::to_string(v));
  }
  t.check(throws(ErrorKind::Decode, [] { census_decode({{{0, 2}, Count::One}}); }), "ONE at an even offset accepted");
  t.check(throws(ErrorKind::Decode, [] { census_decode({{{1, 0}, Count::Many}}); }), "limit height accepted");
  t.check(throws(ErrorKind::Decode, [] { census_decode({{{0, 0}, Count::Many}}); }), "height 0 accepted");
}

void self_coding(Tally& t) {
  std::map<ScPattern, std::pair<std::uint64_t, BitString>> seen;
  for (std::uint64_t n = 0; n < 4; ++n)
    for (std::size_t len = 0; len <= 6; ++len)
      for (const auto& g : BitString::all_of_length(len)) {
        const auto pattern = sc_pattern(sc_schedule(n, g, n + 2 + len));
        // Direct reading: level n+1 is the first diamond, level n+2+j is g(j).
        bool shape = pattern.size() == n + 2 + len && pattern[n + 1] == Level::Diamond;
        for (std::size_t i = 0; i <= n; ++i) shape = shape && pattern[i] == Level::Line;
        for (std::size_t j = 0; j < len; ++j) shape = shape && (pattern[n + 2 + j] == Level::Diamond) == g[j];
        t.check(shape, "pattern layout");
        const auto code = sc_decode(pattern);
        t.check(code.n == n && code.g == g, "round trip n=" + std::to_string(n) + " g=" + g.str());
        t.check(seen.emplace(pattern, std::pair{n, g}).second, "two codes share a pattern");
      }
  for (std::size_t len = 0; len <= 8; ++len)
    for (const auto& h : BitString::all_of_length(len))
      t.check(sc_census_decode(sc_census_encode(h, 2)) == h, "sc census h=" + h.str());
}

void tower_structure(Tally& t) {
  for (std::size_t len = 0; len <= 6; ++len)
    for (std::uint64_t mask = 0; mask < (len == 0 ? 1 : std::uint64_t{1} << (len - 1)); ++mask) {
      TowerRecipe r;
      for (std::size_t i = 0; i < len; ++i)
        r.kinds.push_back(i > 0 && ((mask >> (i - 1)) & 1U) ? StepKind::Pair : StepKind::Single);
      const auto poset = tower_degrees(r);
      const auto pairs = static_cast<std::size_t>(std::count(r.kinds.begin(), r.kinds.end(), StepKind::Pair));
      t.check(poset.size() == len + 1 + 2 * pairs, "node count");
      t.check(poset.edges().size() == (len - pairs) + 4 * pairs, "edge count");
      for (std::size_t beta = 0; beta < len; ++beta) {
        if (r.kinds[beta] != StepKind::Pair) continue;
        const auto tag = "d" + std::to_string(beta);
        const auto x = poset.index_of(tag + ".0");
        const auto y = poset.index_of(tag + ".1");
        t.check(!poset.comparable(x, y), "pair degrees comparable");
        t.check(poset.meet(x, y) == poset.index_of(tag), "meet at a pair level");
        t.check(poset.join(x, y) == poset.index_of("d" + std::to_string(beta + 1)), "join at a pair level");
      }
    }
}

// ---------------------------------------------------------------------------
// 9, 10

constexpr std::size_t kFixtureBudget = 11;

void imp_levels_criterion(Tally& t) {
  const auto vn = vn_levels(4);
  for (std::size_t budget = 3; budget <= kFixtureBudget + 2; ++budget) {
    const auto imp = imp_levels(4, ImpBounds{budget});
    t.check(imp[1] == SetFamily{0}, "Imp_1 != {0} at budget " + std::to_string(budget));
    for (std::size_t k = 0; k <= 4; ++k)
      t.check(std::includes(vn[k].begin(), vn[k].end(), imp[k].begin(), imp[k].end()),
              "Imp_" + std::to_string(k) + " not inside V_" + std::to_string(k));
    if (budget >= kFixtureBudget)
      for (std::size_t k = 0; k <= 4; ++k)
        t.check(imp[k] == vn[k], "Imp_" + std::to_string(k) + " != V_" + std::to_string(k) + " at budget " +
                                     std::to_string(budget));
  }
  t.check(imp_levels(1, ImpBounds{kFixtureBudget})[1] == SetFamily{0}, "imp_levels(1)");
}

void imp_oracle_agreement(Tally& t) {
  const auto structures = oracle::all_small_structures();
  t.check(structures.size() == 12, "structure count");
  const auto by_size = oracle::formulas_by_size(7);
  for (const auto& x : structures) {
    const auto rel = oracle::relation_of(x);
    for (std::size_t size = 2; size <= 7; ++size)
      for (const auto& f : by_size[size]) {
        if (!oracle::closed(f)) continue;
        for (const auto& tup : oracle::tuples(x.size(), param_slots_used(f))) {
          std::vector<SetCode> params;
          for (const auto e : tup) params.push_back(x.universe()[e]);
          const bool ok = implicitly_defined_by(x, f, params) == oracle::unique_subset(f, rel, tup);
          if (ok) ++t.cases;
          else t.check(false, to_string(f));
        }
      }
  }
}

}  // namespace

int main() {
  criterion(1, "pairing constraints, m,n < 100", 1, pairing);
  criterion(2, "column round trip, |sigma| <= 12", 5, column_round_trip);
  criterion(3, "perfect-tree suite over the depth-2 class", 60, perfect_trees);
  criterion(4, "two-step amalgamation worked example", 1, worked_example);
  criterion(5, "product amalgamation partial equality", 30, product_partial_equality);
  criterion(6, "census round trip and malformed rejection", 1, census);
  criterion(7, "self-coding round trips and injectivity", 1, self_coding);
  criterion(8, "tower degree counts and pair-level lattice", 5, tower_structure);
  criterion(9, "Imp levels against V_n", 300, imp_levels_criterion);
  criterion(10, "implicit definability against the double-loop oracle", 120, imp_oracle_agreement);
  std::printf("%s: %d criteria failed\n", failed_criteria == 0 ? "ACCEPTED" : "REJECTED", failed_criteria);
  return failed_criteria == 0 ? 0 : 1;
}
