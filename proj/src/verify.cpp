#include "sacks/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "sacks/condition_algebra.hpp"
#include "sacks/degree_sim.hpp"
#include "sacks/error.hpp"
#include "sacks/imp_core.hpp"
#include "sacks/perfect_tree.hpp"
#include "sacks/seq_codec.hpp"
#include "sacks/tree_class.hpp"

namespace sacks {

bool SuiteReport::passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.failures == 0; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"codec", "tree", "conditions", "degrees", "imp"};
  return names;
}

namespace {

constexpr std::size_t kImpFixtureBudget = 11;

class Check {
 public:
  explicit Check(PropertyResult& r) : r_(r) {}

  void operator()(bool ok, const std::function<std::string()>& describe) {
    ++r_.cases;
    if (ok) return;
    if (r_.failures++ == 0) r_.first_failure = describe();
  }

  void operator()(bool ok, const std::string& what) {
    (*this)(ok, [&] { return what; });
  }

 private:
  PropertyResult& r_;
};

class Suite {
 public:
  explicit Suite(std::string name) { report_.suite = std::move(name); }

  void property(const std::string& name, const std::function<void(Check&)>& body) {
    PropertyResult r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    Check check(r);
    try {
      body(check);
    } catch (const std::exception& e) {
      ++r.failures;
      if (r.first_failure.empty()) r.first_failure = std::string("unexpected exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report_.properties.push_back(std::move(r));
  }

  SuiteReport take() { return std::move(report_); }

 private:
  SuiteReport report_;
};

template <typename F>
bool throws_kind(ErrorKind kind, F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

// ---------------------------------------------------------------------------

SuiteReport codec_suite() {
  Suite s("codec");
  s.property("pairing_fixed_values", [](Check& check) {
    check(pair_index(0, 0) == 0, "[0,0] != 0");
    check(pair_index(0, 1) == 1, "[0,1] != 1");
  });
  s.property("pairing_exceeds_max", [](Check& check) {
    for (std::uint64_t m = 0; m < 100; ++m)
      for (std::uint64_t n = 0; n < 100; ++n) {
        if ((m == 0 && n == 0) || (m == 0 && n == 1)) continue;
        check(pair_index(m, n) > std::max(m, n), [&] { return "[" + std::to_string(m) + "," + std::to_string(n) + "]"; });
      }
  });
  s.property("pairing_strictly_monotone", [](Check& check) {
    for (std::uint64_t m = 0; m < 100; ++m)
      for (std::uint64_t n = 0; n < 100; ++n) {
        check(pair_index(m, n) < pair_index(m + 1, n) && pair_index(m, n) < pair_index(m, n + 1),
              [&] { return "at [" + std::to_string(m) + "," + std::to_string(n) + "]"; });
      }
  });
  s.property("pairing_bijective", [](Check& check) {
    std::set<std::uint64_t> triangle;
    for (std::uint64_t m = 0; m < 100; ++m)
      for (std::uint64_t n = 0; n < 100; ++n) {
        const auto p = pair_index(m, n);
        check(unpair_index(p) == std::pair{m, n}, [&] { return "unpair([" + std::to_string(m) + "," + std::to_string(n) + "])"; });
        if (m + n < 100) triangle.insert(p);
      }
    check(triangle.size() == 5050 && *triangle.rbegin() == 5049, "m+n<100 does not fill [0,5050)");
  });
  s.property("column_round_trip", [](Check& check) {
    for (std::size_t k = 0; k <= 12; ++k)
      for (const auto& sigma : BitString::all_of_length(k))
        check(join_family(columns(sigma), k) == sigma, [&] { return "sigma = " + sigma.str(); });
  });
  s.property("split_inverts_join", [](Check& check) {
    for (std::size_t n = 0; n <= 5; ++n)
      for (const auto& x : BitString::all_of_length(n))
        for (std::size_t ylen : {n, n == 0 ? n : n - 1})
          for (const auto& y : BitString::all_of_length(ylen)) {
            const auto z = join_pair(x, y);
            bool interleaved = z.size() == x.size() + y.size();
            for (std::size_t i = 0; interleaved && i < z.size(); ++i)
              interleaved = z[i] == (i % 2 == 0 ? x[i / 2] : y[i / 2]);
            check(interleaved && split_pair(z) == PairParts{x, y}, [&] { return x.str() + " (+) " + y.str(); });
          }
  });
  s.property("width_brute_force", [](Check& check) {
    for (std::uint64_t k = 0; k < 200; ++k) {
      std::uint64_t w = 0;
      for (std::uint64_t n = 0; n <= k; ++n)
        for (std::uint64_t m = 0; m <= k; ++m)
          if (pair_index(n, m) < k) w = std::max(w, n + 1);
      check(width(k) == w, [&] { return "W(" + std::to_string(k) + ")"; });
    }
  });
  return s.take();
}

// ---------------------------------------------------------------------------

bool frontier_member(const SkeletonTree& t, const BitString& nu) {
  return std::any_of(t.frontier().begin(), t.frontier().end(), [&](const BitString& e) { return e.comparable(nu); });
}

SuiteReport tree_suite(const VerifyBounds& b) {
  Suite s("tree");
  const auto trees = enumerate_trees({.depth = b.depth, .max_stem = 2, .max_gap = 1});
  const std::size_t levels = b.depth + 1;
  s.property("membership_definition", [&](Check& check) {
    for (const auto& t : trees)
      for (const auto& nu : BitString::all_up_to(t.max_entry_length() + 1))
        check(membership(t, nu) == frontier_member(t, nu), [&] { return "node " + nu.str(); });
  });
  s.property("rt_order_isomorphism", [&](Check& check) {
    const auto addrs = BitString::all_up_to(3);
    for (const auto& t : trees) {
      std::vector<BitString> rts;
      for (const auto& a : addrs) rts.push_back(splitting_node(t, a));
      for (std::size_t i = 0; i < addrs.size(); ++i)
        for (std::size_t j = 0; j < addrs.size(); ++j)
          check(addrs[i].is_prefix_of(addrs[j]) == rts[i].is_prefix_of(rts[j]) &&
                    addrs[i].comparable(addrs[j]) == rts[i].comparable(rts[j]),
                [&] { return addrs[i].str() + " vs " + addrs[j].str(); });
    }
  });
  s.property("antichain_maximality", [&](Check& check) {
    for (const auto& t : trees)
      for (std::size_t n = 0; n <= levels; ++n) {
        const auto level = splitting_level(t, n);
        std::size_t longest = 0;
        bool antichain = level.size() == (std::size_t{1} << n);
        for (std::size_t i = 0; i < level.size(); ++i) {
          longest = std::max(longest, level[i].size());
          for (std::size_t j = i + 1; j < level.size(); ++j) antichain = antichain && !level[i].comparable(level[j]);
        }
        check(antichain, [&] { return "level " + std::to_string(n) + " is not an antichain"; });
        for (const auto& nu : BitString::all_of_length(longest)) {
          if (!frontier_member(t, nu)) continue;
          const auto above = std::count_if(level.begin(), level.end(), [&](const BitString& x) { return x.is_prefix_of(nu); });
          check(above == 1, [&] { return "node " + nu.str() + " extends " + std::to_string(above) + " level nodes"; });
        }
      }
  });
  s.property("cell_partition", [&](Check& check) {
    for (const auto& t : trees)
      for (std::size_t n = 0; n <= levels; ++n) {
        std::vector<SkeletonTree> cells;
        std::size_t longest = 0;
        for (const auto& sigma : BitString::all_of_length(n)) {
          cells.push_back(restrict_cell(t, sigma));
          longest = std::max(longest, splitting_node(t, sigma).size());
        }
        for (const auto& nu : BitString::all_of_length(longest + 1)) {
          if (!frontier_member(t, nu)) continue;
          const auto in = std::count_if(cells.begin(), cells.end(), [&](const SkeletonTree& c) { return frontier_member(c, nu); });
          check(in == 1, [&] { return "node " + nu.str() + " lies in " + std::to_string(in) + " cells"; });
        }
      }
  });
  s.property("leq_n_characterizations_agree", [&](Check& check) {
    std::vector<const SkeletonTree*> small;
    for (const auto& t : trees)
      if (t.max_entry_length() <= 4) small.push_back(&t);
    for (const auto* x : small)
      for (const auto* y : small) {
        check(leq_n(*x, *y, 0) == subtree_leq(*x, *y), "leq_0 differs from inclusion");
        for (std::size_t n = 1; n <= levels; ++n)
          check(leq_n(*x, *y, n) == leq_n_by_cells(*x, *y, n), [&] { return "n = " + std::to_string(n); });
      }
  });
  s.property("amalgamation_cells", [&](Check& check) {
    for (const auto& t : trees)
      for (std::size_t n = 0; n <= b.depth; ++n)
        for (const auto& sigma : BitString::all_of_length(n)) {
          const auto cell = restrict_cell(t, sigma);
          std::vector<BitString> nodes{stem(cell).with(false), stem(cell).with(true)};
          for (const auto& a : BitString::all_up_to(2)) nodes.push_back(splitting_node(cell, a));
          for (const auto& node : nodes) {
            const auto part = restrict_node(cell, node);
            const auto r = amalgamate(t, sigma, part);
            check(restrict_cell(r, sigma) == part && leq_n(r, t, n), [&] { return "sigma = " + sigma.str(); });
            for (const auto& tau : BitString::all_of_length(n))
              if (tau != sigma)
                check(restrict_cell(r, tau) == restrict_cell(t, tau), [&] { return "tau = " + tau.str(); });
          }
          check(amalgamate(t, sigma, cell) == t, "re-inserting a cell changed the tree");
        }
  });
  return s.take();
}

// ---------------------------------------------------------------------------

const std::vector<SkeletonTree>& depth1_trees() {
  static const auto trees = enumerate_trees({.depth = 1, .max_stem = 1, .max_gap = 1});
  return trees;
}

// The tree itself and its restrictions to the two successors of its stem.
std::vector<SkeletonTree> one_step_shrinks(const SkeletonTree& t) {
  const auto root = stem(t);
  return {t, restrict_node(t, root.with(false)), restrict_node(t, root.with(true))};
}

SuiteReport conditions_suite(const VerifyBounds& b) {
  Suite s("conditions");
  const auto& cls = depth1_trees();
  const auto two_singles = IterSchedule::fixed({StepKind::Single, StepKind::Single});
  s.property("pair_leq_n_translated_levels", [&](Check& check) {
    std::vector<std::pair<std::size_t, std::size_t>> below;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t j = 0; j < cls.size(); ++j)
        if (subtree_leq(cls[i], cls[j])) below.emplace_back(i, j);
    for (std::size_t n = 0; n <= 3; ++n)
      for (const auto& [sl, l] : below)
        for (const auto& [sr, r] : below) {
          const bool componentwise = leq_n(cls[sl], cls[l], (n + 1) / 2) && leq_n(cls[sr], cls[r], n / 2);
          check(pair_leq_n({cls[sl], cls[sr]}, {cls[l], cls[r]}, n) == componentwise, "pair_leq_n mismatch");
        }
  });
  s.property("pair_amalgamation_equalities", [&](Check& check) {
    for (const auto& l : cls)
      for (const auto& r : cls) {
        const PairCondition p{l, r};
        for (const auto& sigma : BitString::all_up_to(2)) {
          const auto cell = pair_restrict(p, sigma);
          for (const auto& ql : one_step_shrinks(cell.left))
            for (const auto& qr : one_step_shrinks(cell.right)) {
              const PairCondition q{ql, qr};
              const auto am = pair_amalgamate(p, sigma, q);
              check(pair_restrict(am, sigma) == q, "r_(sigma) != q");
              for (const auto& tau : BitString::all_of_length(sigma.size())) {
                const auto rt = pair_restrict(am, tau);
                const auto pt = pair_restrict(p, tau);
                check(pair_leq(rt, pt), "r_(tau) not below p_(tau)");
                if (split_pair(tau).left != split_pair(sigma).left)
                  check(rt.left == pt.left, "left coordinate changed outside l(sigma)");
              }
            }
        }
      }
  });
  s.property("two_step_worked_example", [&](Check& check) {
    const auto bs = [](const char* t) { return BitString::parse(t); };
    const SkeletonTree T(1, {bs("0"), bs("00"), bs("011")});
    const SkeletonTree Tp(1, {bs("1"), bs("10"), bs("110")});
    const auto p = IterCondition::unconditional(two_singles, {T, Tp});
    const auto sigma = join_pair(bs("0"), bs("0"));
    const auto S = restrict_node(T, bs("0010"));
    const auto Sp = amalgamate(restrict_cell(Tp, bs("0")), bs("1"), restrict_cell(Tp, bs("011")));
    const auto q = IterCondition::unconditional(two_singles, {S, Sp});
    const auto at = [&](const IterCondition& c, const char* l, const char* r) {
      return iter_restrict(c, join_pair(bs(l), bs(r)), Decomposition::Pairwise);
    };
    check(iter_equivalent(iter_restrict(p, sigma, Decomposition::Pairwise),
                          IterCondition::unconditional(two_singles, {restrict_cell(T, bs("0")), restrict_cell(Tp, bs("0"))})),
          "p_(<0>+<0>)");
    const auto r = iter_amalgamate(p, sigma, q, Decomposition::Pairwise);
    check(iter_equivalent(at(r, "0", "0"), q), "r_(<0>+<0>) != q");
    check(iter_equivalent(at(r, "0", "1"), IterCondition::unconditional(two_singles, {S, restrict_cell(Tp, bs("1"))})),
          "r_(<0>+<1>) != <S, T'_(<1>)>");
    check(iter_equivalent(at(r, "1", "0"), at(p, "1", "0")), "r_(<1>+<0>) != p_(<1>+<0>)");
    check(iter_equivalent(at(r, "1", "1"), at(p, "1", "1")), "r_(<1>+<1>) != p_(<1>+<1>)");
  });
  s.property("iteration_amalgamation_equalities", [&](Check& check) {
    std::mt19937_64 rng(b.seed);
    for (int trial = 0; trial < 300; ++trial) {
      const auto p = IterCondition::unconditional(two_singles, {cls[rng() % cls.size()], cls[rng() % cls.size()]});
      const auto sigma = BitString::from_value(rng() % 8, 3);
      const auto cell = iter_restrict(p, sigma, Decomposition::Column);
      const auto c0 = std::get<SkeletonTree>(cell.coords[0].front().payload);
      const auto c1 = std::get<SkeletonTree>(cell.coords[1].front().payload);
      const auto s0 = one_step_shrinks(c0);
      const auto s1 = one_step_shrinks(c1);
      const auto q = IterCondition::unconditional(two_singles, {s0[rng() % 3], s1[rng() % 3]});
      const auto r = iter_amalgamate(p, sigma, q, Decomposition::Column);
      validate(r);
      check(iter_equivalent(iter_restrict(r, sigma, Decomposition::Column), q), "r_(sigma) != q");
      check(iter_leq_n(r, p, sigma.size(), Decomposition::Column), "r not <=_n p");
      for (const auto& tau : BitString::all_of_length(3)) {
        const auto rt = iter_restrict(r, tau, Decomposition::Column);
        const auto pt = iter_restrict(p, tau, Decomposition::Column);
        check(iter_leq(rt, pt), "r_(tau) not below p_(tau)");
        if (column(tau, 0) != column(sigma, 0))
          check(iter_equivalent(rt, pt), [&] { return "r_(" + tau.str() + ") != p_(" + tau.str() + ")"; });
      }
    }
  });
  s.property("product_amalgamation_partial_equality", [&](Check& check) {
    const auto one = IterSchedule::fixed({StepKind::Single});
    const auto factor = [&](const SkeletonTree& t) { return IterCondition::unconditional(one, {t}); };
    const std::vector<Index> slots{Index(Ordinal2{0, 0}), Index(Ordinal2{0, 1})};
    const auto b_of = [](const BitString& t) { return column(column(t, 0), 0); };
    for (const auto& t0 : cls)
      for (const auto& t1 : cls) {
        ProductCondition p;
        p.coords.emplace(slots[0], factor(t0));
        p.coords.emplace(slots[1], factor(t1));
        for (const auto& sigma : BitString::all_up_to(2)) {
          const auto cell = prod_restrict(p, sigma, slots);
          const auto& cell0 = std::get<SkeletonTree>(cell.coords.at(slots[0]).coords[0].front().payload);
          for (const auto& q0 : cls) {
            if (!subtree_leq(q0, cell0)) continue;
            for (const auto& q1 : cls) {
              if (!subtree_leq(q1, t1)) continue;
              ProductCondition q;
              q.coords.emplace(slots[0], factor(q0));
              q.coords.emplace(slots[1], factor(q1));
              const auto r = prod_amalgamate(p, sigma, slots, q);
              const auto back = prod_restrict(r, sigma, slots);
              check(product_leq(back, q) && product_leq(q, back), "r_(sigma) != q");
              for (const auto& tau : BitString::all_of_length(sigma.size())) {
                const auto rt = prod_restrict(r, tau, slots);
                const auto pt = prod_restrict(p, tau, slots);
                check(product_leq(rt, pt), "r_(tau) not below p_(tau)");
                if (b_of(tau) != b_of(sigma))
                  check(iter_equivalent(rt.coords.at(slots[0]), pt.coords.at(slots[0])),
                        [&] { return "coordinate i(0) changed at tau = " + tau.str(); });
              }
            }
          }
        }
      }
  });
  s.property("permutation_order_isomorphism", [&](Check& check) {
    std::mt19937_64 rng(b.seed + 1);
    const auto one = IterSchedule::fixed({StepKind::Single});
    const Index a(Ordinal2{0, 0}), c(Ordinal2{1, 2});
    const std::map<Index, Index> swap{{a, c}, {c, a}};
    for (int trial = 0; trial < 200; ++trial) {
      ProductCondition x, y;
      for (const auto& i : {a, c}) {
        x.coords.emplace(i, IterCondition::unconditional(one, {cls[rng() % cls.size()]}));
        y.coords.emplace(i, IterCondition::unconditional(one, {cls[rng() % cls.size()]}));
      }
      check(product_leq(x, y) == product_leq(permute_indices(x, swap), permute_indices(y, swap)), "order not preserved");
    }
  });
  return s.take();
}

// ---------------------------------------------------------------------------

SuiteReport degrees_suite(const VerifyBounds& b) {
  Suite s("degrees");
  std::vector<TowerRecipe> recipes{TowerRecipe{}};
  for (std::size_t len = 1; len <= 6; ++len)
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (len - 1)); ++mask) {
      TowerRecipe r{{StepKind::Single}};
      for (std::size_t i = 1; i < len; ++i) r.kinds.push_back((mask >> (i - 1)) & 1U ? StepKind::Pair : StepKind::Single);
      recipes.push_back(r);
    }
  s.property("tower_counts", [&](Check& check) {
    for (const auto& r : recipes) {
      const auto poset = tower_degrees(r);
      const auto pairs = static_cast<std::size_t>(std::count(r.kinds.begin(), r.kinds.end(), StepKind::Pair));
      const std::size_t alpha = r.kinds.size();
      check(poset.size() == alpha + 1 + 2 * pairs, "node count");
      check(poset.edges().size() == alpha - pairs + 4 * pairs, "edge count");
    }
  });
  s.property("tower_lattice_at_pair_levels", [&](Check& check) {
    for (const auto& r : recipes) {
      const auto poset = tower_degrees(r);
      for (std::size_t i = 0; i <= r.kinds.size(); ++i)
        for (std::size_t j = 0; j <= r.kinds.size(); ++j)
          check(poset.leq(poset.index_of("d" + std::to_string(i)), poset.index_of("d" + std::to_string(j))) == (i <= j),
                "chain order");
      for (std::size_t beta = 0; beta < r.kinds.size(); ++beta) {
        if (r.kinds[beta] != StepKind::Pair) continue;
        const auto tag = "d" + std::to_string(beta);
        const auto x = poset.index_of(tag + ".0");
        const auto y = poset.index_of(tag + ".1");
        check(!poset.comparable(x, y) && poset.meet(x, y) == poset.index_of(tag) &&
                  poset.join(x, y) == poset.index_of("d" + std::to_string(beta + 1)),
              [&] { return "diamond at step " + std::to_string(beta); });
      }
    }
  });
  s.property("dot_deterministic", [&](Check& check) {
    for (const auto& r : recipes) check(to_dot(tower_degrees(r)) == to_dot(tower_degrees(r)), "dot differs");
  });
  s.property("census_round_trip", [&](Check& check) {
    const std::size_t bits = 2 * b.n_bound;
    const auto all = product_towers(2, b.n_bound, 6);
    const auto full = census_of(all);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) {
      BitFunction x;
      for (std::size_t i = 0; i < bits; ++i) x[{i / b.n_bound, i % b.n_bound}] = (v >> i) & 1U;
      const auto census = census_encode(x, 2, b.n_bound);
      check(census_decode(census) == x, [&] { return "bit function " + std::to_string(v); });
      const auto kept = surviving_towers(all, x);
      check(census_of(kept) == census, "tower simulation disagrees");
      check(census_of(reindexed_towers(kept)) == full, "re-indexed census is not full");
    }
  });
  s.property("malformed_census_rejected", [&](Check& check) {
    check(throws_kind(ErrorKind::Decode, [] { census_decode({{{0, 2}, Count::One}}); }), "even height ONE accepted");
    check(throws_kind(ErrorKind::Decode, [] { census_decode({{{1, 0}, Count::Many}}); }), "limit height accepted");
    check(throws_kind(ErrorKind::Decode, [] { sc_census_decode({{1, Count::One}}); }), "gapped SC census accepted");
  });
  s.property("sc_round_trip_and_injectivity", [&](Check& check) {
    std::map<ScPattern, ScCode> seen;
    for (std::uint64_t n = 0; n < b.n_bound; ++n)
      for (std::size_t len = 0; len <= 6; ++len)
        for (const auto& g : BitString::all_of_length(len)) {
          const auto pattern = sc_pattern(sc_schedule(n, g, n + 2 + len));
          check(sc_decode(pattern) == ScCode{n, g}, [&] { return "n=" + std::to_string(n) + " g=" + g.str(); });
          check(seen.emplace(pattern, ScCode{n, g}).second, "pattern collision");
        }
  });
  s.property("sc_census_round_trip", [&](Check& check) {
    for (std::size_t len = 0; len <= 8; ++len)
      for (const auto& h : BitString::all_of_length(len))
        check(sc_census_decode(sc_census_encode(h, 2)) == h, [&] { return "h = " + h.str(); });
  });
  return s.take();
}

// ---------------------------------------------------------------------------
// Naive reference for implicit definability, separate from the library's
// evaluator and table search.

std::vector<std::vector<Formula>> formulas_up_to(std::size_t max_size) {
  const std::vector<Term> terms{Term::variable("x"), Term::variable("y"), Term::parameter(0), Term::parameter(1)};
  std::vector<std::vector<Formula>> by(max_size + 1);
  for (std::size_t n = 2; n <= max_size; ++n) {
    if (n == 2)
      for (const auto& t : terms) by[n].push_back(Formula::pred(t));
    if (n == 3)
      for (const auto& t : terms)
        for (const auto& u : terms) {
          by[n].push_back(Formula::in(t, u));
          by[n].push_back(Formula::eq(t, u));
        }
    for (const auto& f : by[n - 1]) {
      by[n].push_back(Formula::negation(f));
      for (const char* v : {"x", "y"}) {
        by[n].push_back(Formula::quantifier(Formula::Op::Forall, v, f));
        by[n].push_back(Formula::quantifier(Formula::Op::Exists, v, f));
      }
    }
    for (std::size_t n1 = 2; n1 + 3 <= n; ++n1)
      for (const auto& f : by[n1])
        for (const auto& g : by[n - 1 - n1])
          for (auto op : {Formula::Op::And, Formula::Op::Or, Formula::Op::Implies, Formula::Op::Iff})
            by[n].push_back(Formula::binary(op, f, g));
  }
  return by;
}

bool sentence(const Formula& f, std::vector<std::string>& bound) {
  for (const auto& t : f.terms)
    if (!t.is_param && std::find(bound.begin(), bound.end(), t.var) == bound.end()) return false;
  const bool q = f.op == Formula::Op::Forall || f.op == Formula::Op::Exists;
  if (q) bound.push_back(f.var);
  bool ok = std::all_of(f.kids.begin(), f.kids.end(), [&](const Formula& k) { return sentence(k, bound); });
  if (q) bound.pop_back();
  return ok;
}

bool naive_holds(const Formula& f, const FinStructure& x, Subset s, const std::vector<std::size_t>& params,
                 std::map<std::string, std::size_t>& env) {
  const auto val = [&](const Term& t) { return t.is_param ? params.at(t.param) : env.at(t.var); };
  using Op = Formula::Op;
  switch (f.op) {
    case Op::In: return code_member(x.universe()[val(f.terms[0])], x.universe()[val(f.terms[1])]);
    case Op::Eq: return val(f.terms[0]) == val(f.terms[1]);
    case Op::Pred: return (s >> val(f.terms[0])) & 1U;
    case Op::Not: return !naive_holds(f.kids[0], x, s, params, env);
    case Op::And: return naive_holds(f.kids[0], x, s, params, env) & naive_holds(f.kids[1], x, s, params, env);
    case Op::Or: return naive_holds(f.kids[0], x, s, params, env) | naive_holds(f.kids[1], x, s, params, env);
    case Op::Implies: return !naive_holds(f.kids[0], x, s, params, env) | naive_holds(f.kids[1], x, s, params, env);
    case Op::Iff: return naive_holds(f.kids[0], x, s, params, env) == naive_holds(f.kids[1], x, s, params, env);
    case Op::Forall:
    case Op::Exists: {
      const auto saved = env.find(f.var) == env.end() ? std::optional<std::size_t>{} : env.at(f.var);
      std::size_t count = 0;
      for (std::size_t e = 0; e < x.size(); ++e) {
        env[f.var] = e;
        count += naive_holds(f.kids[0], x, s, params, env);
      }
      if (saved) env[f.var] = *saved;
      else env.erase(f.var);
      return f.op == Op::Forall ? count == x.size() : count > 0;
    }
  }
  return false;
}

// One structure per membership relation on at most three elements.
std::vector<FinStructure> small_structures() {
  std::map<std::vector<int>, FinStructure> seen;
  for (SetCode a = 0; a < 64; ++a)
    for (SetCode c = a; c < 64; ++c)
      for (SetCode d = c; d < 64; ++d) {
        const FinStructure x({a, c, d});
        std::vector<int> key{static_cast<int>(x.size())};
        for (std::size_t i = 0; i < x.size(); ++i)
          for (std::size_t j = 0; j < x.size(); ++j) key.push_back(x.member(i, j));
        seen.emplace(key, x);
      }
  std::vector<FinStructure> out{FinStructure{}};
  for (const auto& [_, x] : seen) out.push_back(x);
  return out;
}

Formula random_sentence(std::mt19937_64& rng, int depth, std::vector<std::string>& bound) {
  const auto term = [&] {
    return bound.empty() || rng() % 3 == 0 ? Term::parameter(rng() % 2) : Term::variable(bound[rng() % bound.size()]);
  };
  const auto r = depth <= 0 ? rng() % 3 : rng() % 10;
  if (r == 0) return Formula::pred(term());
  if (r == 1) return Formula::in(term(), term());
  if (r == 2) return Formula::eq(term(), term());
  if (r == 3) return Formula::negation(random_sentence(rng, depth - 1, bound));
  if (r <= 5) {
    const auto v = "v" + std::to_string(rng() % 3);
    bound.push_back(v);
    auto body = random_sentence(rng, depth - 1, bound);
    bound.pop_back();
    return Formula::quantifier(r == 4 ? Formula::Op::Forall : Formula::Op::Exists, v, std::move(body));
  }
  static constexpr Formula::Op ops[] = {Formula::Op::And, Formula::Op::Or, Formula::Op::Implies, Formula::Op::Iff};
  auto a = random_sentence(rng, depth - 1, bound);
  auto c = random_sentence(rng, depth - 1, bound);
  return Formula::binary(ops[r - 6], std::move(a), std::move(c));
}

Formula rename_bound(const Formula& f, std::map<std::string, std::string> env, std::size_t& counter) {
  Formula out = f;
  for (auto& t : out.terms)
    if (!t.is_param && env.contains(t.var)) t.var = env.at(t.var);
  if (f.op == Formula::Op::Forall || f.op == Formula::Op::Exists) {
    out.var = "z" + std::to_string(counter++);
    env[f.var] = out.var;
  }
  for (auto& k : out.kids) k = rename_bound(k, env, counter);
  return out;
}

SuiteReport imp_suite(const VerifyBounds& b) {
  Suite s("imp");
  const auto vn = vn_levels(4);
  s.property("imp_1_is_empty_set_only", [&](Check& check) {
    for (std::size_t budget = 3; budget <= b.budget; ++budget)
      check(imp_levels(1, ImpBounds{budget})[1] == SetFamily{0}, [&] { return "budget " + std::to_string(budget); });
  });
  s.property("levels_inside_vn", [&](Check& check) {
    for (std::size_t budget = 0; budget <= b.budget; ++budget) {
      const auto imp = imp_levels(4, ImpBounds{budget});
      for (std::size_t k = 0; k <= 4; ++k)
        check(std::includes(vn[k].begin(), vn[k].end(), imp[k].begin(), imp[k].end()),
              [&] { return "level " + std::to_string(k) + " at budget " + std::to_string(budget); });
    }
  });
  s.property("levels_equal_vn_at_fixture_budget", [&](Check& check) {
    // Below the fixture budget equality is not expected; nothing to check.
    if (b.budget < kImpFixtureBudget) return;
    check(imp_levels(4, ImpBounds{b.budget}) == vn, "imp_levels(4) != V_4 levels");
  });
  s.property("witnesses_recheck", [&](Check& check) {
    const auto levels = imp_levels(3, ImpBounds{b.budget});
    const FinStructure x(std::vector<SetCode>(levels[3].begin(), levels[3].end()));
    for (const auto& [sub, w] : implicit_witnesses(x, ImpBounds{b.budget}))
      check(formula_size(w.formula) <= b.budget && implicitly_defined_by(x, w.formula, w.params) == sub,
            [&] { return "witness " + to_string(w.formula); });
  });
  s.property("oracle_agreement", [&](Check& check) {
    const auto by = formulas_up_to(7);
    for (const auto& x : small_structures()) {
      for (std::size_t size = 2; size <= 7; ++size)
        for (const auto& f : by[size]) {
          std::vector<std::string> bound;
          if (!sentence(f, bound)) continue;
          const std::size_t k = param_slots_used(f);
          std::size_t tuples = 1;
          for (std::size_t i = 0; i < k; ++i) tuples *= x.size();
          for (std::size_t t = 0; t < tuples; ++t) {
            std::vector<std::size_t> params;
            std::vector<SetCode> codes;
            for (std::size_t i = 0, rest = t; i < k; ++i, rest /= x.size()) {
              params.push_back(rest % x.size());
              codes.push_back(x.universe()[params.back()]);
            }
            std::vector<Subset> sat;
            for (Subset sub = 0; sub < (Subset{1} << x.size()); ++sub) {
              std::map<std::string, std::size_t> env;
              if (naive_holds(f, x, sub, params, env)) sat.push_back(sub);
            }
            const auto expected = sat.size() == 1 ? std::optional<Subset>(sat.front()) : std::nullopt;
            check(implicitly_defined_by(x, f, codes) == expected, [&] { return to_string(f); });
          }
        }
    }
  });
  s.property("alpha_renaming", [&](Check& check) {
    std::mt19937_64 rng(b.seed + 2);
    const FinStructure x({0, 1, 2, 3});
    const std::vector<SetCode> params{1, 3};
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<std::string> bound;
      const auto f = random_sentence(rng, 5, bound);
      std::size_t counter = 0;
      const auto g = rename_bound(f, {}, counter);
      for (Subset sub = 0; sub < 16; ++sub)
        check(eval_formula(f, x, sub, params) == eval_formula(g, x, sub, params), [&] { return to_string(f); });
    }
  });
  s.property("printer_round_trip", [&](Check& check) {
    std::mt19937_64 rng(b.seed + 3);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<std::string> bound;
      const auto f = random_sentence(rng, 5, bound);
      check(parse_formula(to_string(f)) == f, [&] { return to_string(f); });
    }
  });
  return s.take();
}

}  // namespace

std::vector<SuiteReport> run_suites(const std::string& name, const VerifyBounds& bounds) {
  if (name == "all") {
    std::vector<SuiteReport> out;
    for (const auto& n : suite_names()) out.push_back(run_suites(n, bounds).front());
    return out;
  }
  if (name == "codec") return {codec_suite()};
  if (name == "tree") {
    // Depth 3 already has 5103 * 3^8 trees.
    if (bounds.depth > 2) fail(ErrorKind::Resource, "tree suite depth is limited to 2");
    return {tree_suite(bounds)};
  }
  if (name == "conditions") return {conditions_suite(bounds)};
  if (name == "degrees") return {degrees_suite(bounds)};
  if (name == "imp") return {imp_suite(bounds)};
  fail(ErrorKind::Input, "unknown suite '" + name + "'");
}

nlohmann::json report_json(const std::vector<SuiteReport>& reports, const VerifyBounds& bounds) {
  nlohmann::json suites = nlohmann::json::array();
  bool passed = true;
  for (const auto& r : reports) {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : r.properties) {
      nlohmann::json entry{{"name", p.name}, {"cases", p.cases}, {"failures", p.failures}, {"seconds", p.seconds}};
      if (p.failures != 0) entry["first_failure"] = p.first_failure;
      props.push_back(entry);
    }
    suites.push_back({{"suite", r.suite}, {"passed", r.passed()}, {"properties", props}});
    passed = passed && r.passed();
  }
  return {{"passed", passed},
          {"bounds", {{"seed", bounds.seed}, {"depth", bounds.depth}, {"budget", bounds.budget}, {"n_bound", bounds.n_bound}}},
          {"suites", suites}};
}

}  // namespace sacks
