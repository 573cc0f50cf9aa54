#include "sacks/condition_algebra.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "sacks/error.hpp"
#include "sacks/seq_codec.hpp"

namespace sacks {

// ---------------------------------------------------------------------------
// Pairs

PairCondition pair_restrict(const PairCondition& p, const BitString& sigma) {
  const auto parts = split_pair(sigma);
  return {restrict_cell(p.left, parts.left), restrict_cell(p.right, parts.right)};
}

bool pair_leq(const PairCondition& sub, const PairCondition& super) {
  return subtree_leq(sub.left, super.left) && subtree_leq(sub.right, super.right);
}

bool pair_leq_n(const PairCondition& sub, const PairCondition& super, std::size_t n) {
  for (const auto& sigma : BitString::all_of_length(n)) {
    if (!pair_leq(pair_restrict(sub, sigma), pair_restrict(super, sigma))) return false;
  }
  return true;
}

PairCondition pair_amalgamate(const PairCondition& p, const BitString& sigma, const PairCondition& q) {
  if (!pair_leq(q, pair_restrict(p, sigma))) {
    fail(ErrorKind::AmalgamationDomain, "pair amalgamation: q is not below the " + sigma.str() + "-cell of p");
  }
  const auto parts = split_pair(sigma);
  return {amalgamate(p.left, parts.left, q.left), amalgamate(p.right, parts.right, q.right)};
}

// ---------------------------------------------------------------------------
// Schedules and guards

IterSchedule IterSchedule::fixed(std::vector<StepKind> kinds) {
  if (!kinds.empty() && kinds.front() != StepKind::Single) {
    fail(ErrorKind::Precondition, "the first step of an iteration must be a single Sacks step");
  }
  IterSchedule s;
  s.length_ = kinds.size();
  s.kinds_ = std::move(kinds);
  return s;
}

IterSchedule IterSchedule::self_coding(std::uint64_t base, std::size_t length) {
  IterSchedule s;
  s.length_ = length;
  s.base_ = base;
  return s;
}

std::optional<std::pair<std::size_t, std::size_t>> IterSchedule::dependency(std::size_t beta) const {
  if (!base_ || beta < *base_ + 2) return std::nullopt;
  const auto [a, b] = unpair_index(beta - *base_ - 2);
  return std::pair<std::size_t, std::size_t>{a, b};
}

std::optional<StepKind> IterSchedule::kind(std::size_t beta, const GenericContext& ctx) const {
  if (beta >= length_) fail(ErrorKind::Domain, "step " + std::to_string(beta) + " beyond iteration length");
  if (!base_) return kinds_[beta];
  if (beta <= *base_) return StepKind::Single;
  if (beta == *base_ + 1) return StepKind::Pair;
  const auto [a, b] = *dependency(beta);
  const auto it = ctx.commitments.find(a);
  if (it == ctx.commitments.end() || it->second.size() <= b) return std::nullopt;
  return it->second[b] ? StepKind::Pair : StepKind::Single;
}

std::optional<Guard> Guard::of(std::vector<GuardAtom> atoms) {
  std::sort(atoms.begin(), atoms.end());
  Guard g;
  for (auto& atom : atoms) {
    if (!g.atoms_.empty() && g.atoms_.back().coord == atom.coord && g.atoms_.back().side == atom.side) {
      auto& last = g.atoms_.back();
      if (!last.node.comparable(atom.node)) return std::nullopt;
      if (last.node.size() < atom.node.size()) last.node = std::move(atom.node);
      continue;
    }
    g.atoms_.push_back(std::move(atom));
  }
  return g;
}

std::optional<Guard> Guard::conjoin(const Guard& a, const Guard& b) {
  std::vector<GuardAtom> atoms(a.atoms_);
  atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
  return of(std::move(atoms));
}

namespace {

std::optional<Guard> conjoin_all(std::initializer_list<const Guard*> guards) {
  std::vector<GuardAtom> atoms;
  for (const Guard* g : guards) atoms.insert(atoms.end(), g->atoms().begin(), g->atoms().end());
  return Guard::of(std::move(atoms));
}

StepKind kind_of(const Payload& p) {
  return std::holds_alternative<SkeletonTree>(p) ? StepKind::Single : StepKind::Pair;
}

std::string kind_name(StepKind k) { return k == StepKind::Single ? "single" : "pair"; }

Payload full_payload(StepKind k) {
  if (k == StepKind::Single) return full_tree();
  return PairCondition{};
}

Payload restrict_payload(const Payload& p, const BitString& address) {
  if (address.empty()) return p;
  if (const auto* t = std::get_if<SkeletonTree>(&p)) return restrict_cell(*t, address);
  return pair_restrict(std::get<PairCondition>(p), address);
}

Payload amalgamate_payload(const Payload& p, const BitString& address, const Payload& q) {
  if (kind_of(p) != kind_of(q)) fail(ErrorKind::Precondition, "amalgamating payloads of different kinds");
  if (const auto* t = std::get_if<SkeletonTree>(&p)) return amalgamate(*t, address, std::get<SkeletonTree>(q));
  return pair_amalgamate(std::get<PairCondition>(p), address, std::get<PairCondition>(q));
}

bool payload_leq(const Payload& sub, const Payload& super) {
  if (kind_of(sub) != kind_of(super)) fail(ErrorKind::IncompatibleConditions, "payloads of different kinds");
  if (const auto* t = std::get_if<SkeletonTree>(&sub)) return subtree_leq(*t, std::get<SkeletonTree>(super));
  return pair_leq(std::get<PairCondition>(sub), std::get<PairCondition>(super));
}

// ---- worlds ---------------------------------------------------------------

struct World {
  GenericContext ctx;
  std::vector<StepKind> kinds;
};

enum class Truth { False, True, Unknown };

Truth atom_value(const GuardAtom& atom, const World& w) {
  if (atom.coord >= w.kinds.size()) return Truth::Unknown;
  const auto it = w.ctx.commitments.find(atom.coord);
  const BitString committed = it == w.ctx.commitments.end() ? BitString() : it->second;
  BitString part;
  if (w.kinds[atom.coord] == StepKind::Single) {
    if (atom.side != 0) return Truth::False;
    part = committed;
  } else {
    auto parts = split_pair(committed);
    part = atom.side == 0 ? parts.left : parts.right;
  }
  if (atom.node.is_prefix_of(part)) return Truth::True;
  if (part.is_prefix_of(atom.node)) return Truth::Unknown;
  return Truth::False;
}

Truth guard_value(const Guard& g, const World& w) {
  Truth out = Truth::True;
  for (const auto& atom : g.atoms()) {
    const Truth t = atom_value(atom, w);
    if (t == Truth::False) return Truth::False;
    if (t == Truth::Unknown) out = Truth::Unknown;
  }
  return out;
}

const GuardedEntry& select(const std::vector<GuardedEntry>& table, const World& w, std::size_t beta) {
  const GuardedEntry* found = nullptr;
  for (const auto& e : table) {
    switch (guard_value(e.guard, w)) {
      case Truth::False:
        break;
      case Truth::Unknown:
        fail(ErrorKind::Domain, "context does not decide a guard at coordinate " + std::to_string(beta));
      case Truth::True:
        if (found) fail(ErrorKind::Precondition, "overlapping guards at coordinate " + std::to_string(beta));
        found = &e;
        break;
    }
  }
  if (!found) fail(ErrorKind::Precondition, "guards at coordinate " + std::to_string(beta) + " are not exhaustive");
  if (kind_of(found->payload) != w.kinds[beta]) {
    fail(ErrorKind::Precondition, "coordinate " + std::to_string(beta) + " holds a " +
                                      kind_name(kind_of(found->payload)) + " payload on a " +
                                      kind_name(w.kinds[beta]) + " step");
  }
  return *found;
}

/// Lengths of commitments needed to decide a set of atoms, per coordinate and per kind.
struct Needs {
  std::map<std::size_t, std::size_t> single;
  std::map<std::size_t, std::size_t> join;

  void bump(std::map<std::size_t, std::size_t>& m, std::size_t k, std::size_t len) {
    auto& v = m[k];
    v = std::max(v, len);
  }
  void atom(const GuardAtom& a) {
    const std::size_t len = a.node.size();
    if (len == 0) return;
    if (a.side == 0) {
      bump(single, a.coord, len);
      bump(join, a.coord, 2 * len - 1);
    } else {
      bump(join, a.coord, 2 * len);
    }
  }
  void guard(const Guard& g) {
    for (const auto& a : g.atoms()) atom(a);
  }
  void table(const std::vector<GuardedEntry>& t) {
    for (const auto& e : t) guard(e.guard);
  }
  void bit(std::size_t coord, std::size_t position) {
    bump(single, coord, position + 1);
    bump(join, coord, position + 1);
  }
  void tables(const IterCondition& p, std::size_t last_inclusive) {
    for (std::size_t k = 0; k < p.coords.size() && k <= last_inclusive; ++k) table(p.coords[k]);
  }
  void schedule(const IterSchedule& s, std::size_t upto) {
    for (std::size_t k = 0; k < upto && k < s.length(); ++k) {
      if (const auto dep = s.dependency(k)) bit(dep->first, dep->second);
    }
  }
  static std::size_t get(const std::map<std::size_t, std::size_t>& m, std::size_t k) {
    const auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
  }
};

/// Calls visit(world) for every world through coordinates below `upto`;
/// visit returns false to stop. Returns false iff stopped.
template <class Visit>
bool walk(const IterCondition& p, std::size_t upto, const Needs& needs, Visit&& visit) {
  World w;
  auto rec = [&](auto& self, std::size_t k) -> bool {
    if (k == upto) return visit(static_cast<const World&>(w));
    const auto kind = p.schedule.kind(k, w.ctx);
    if (!kind) fail(ErrorKind::Domain, "schedule undecided at step " + std::to_string(k));
    w.kinds.push_back(*kind);
    const Payload& payload = select(p.coords[k], w, k).payload;
    bool go = true;
    if (*kind == StepKind::Single) {
      for (auto& node : nodes_of_length(std::get<SkeletonTree>(payload), Needs::get(needs.single, k))) {
        w.ctx.commitments[k] = std::move(node);
        if (!(go = self(self, k + 1))) break;
      }
    } else {
      const auto& pair = std::get<PairCondition>(payload);
      const std::size_t j = Needs::get(needs.join, k);
      const auto lefts = nodes_of_length(pair.left, (j + 1) / 2);
      const auto rights = nodes_of_length(pair.right, j / 2);
      for (const auto& l : lefts) {
        for (const auto& r : rights) {
          w.ctx.commitments[k] = join_pair(l, r);
          if (!(go = self(self, k + 1))) break;
        }
        if (!go) break;
      }
    }
    w.ctx.commitments.erase(k);
    w.kinds.pop_back();
    return go;
  };
  return rec(rec, 0);
}

bool satisfiable(const IterCondition& r, std::size_t upto, const Guard& g) {
  if (g.empty()) return true;
  Needs needs;
  needs.tables(r, upto == 0 ? 0 : upto - 1);
  needs.schedule(r.schedule, upto);
  needs.guard(g);
  bool found = false;
  walk(r, upto, needs, [&](const World& w) {
    found = guard_value(g, w) == Truth::True;
    return !found;
  });
  return found;
}

void check_same_schedule(const IterCondition& a, const IterCondition& b) {
  if (!(a.schedule == b.schedule) || a.coords.size() != b.coords.size()) {
    fail(ErrorKind::IncompatibleConditions, "iteration conditions have different schedules");
  }
}

/// Level-|address| cells of a payload at coordinate k, each as guard atoms
/// plus whether it is the cell named by the address.
std::vector<std::pair<Guard, bool>> cells(const Payload& payload, const BitString& address, std::size_t k) {
  std::vector<std::pair<Guard, bool>> out;
  if (const auto* t = std::get_if<SkeletonTree>(&payload)) {
    for (const auto& c : BitString::all_of_length(address.size())) {
      out.emplace_back(*Guard::of({GuardAtom{k, 0, splitting_node(*t, c)}}), c == address);
    }
    return out;
  }
  const auto& pair = std::get<PairCondition>(payload);
  const auto parts = split_pair(address);
  for (const auto& l : BitString::all_of_length(parts.left.size())) {
    for (const auto& r : BitString::all_of_length(parts.right.size())) {
      std::vector<GuardAtom> atoms;
      if (!l.empty()) atoms.push_back({k, 0, splitting_node(pair.left, l)});
      if (!r.empty()) atoms.push_back({k, 1, splitting_node(pair.right, r)});
      out.emplace_back(*Guard::of(std::move(atoms)), l == parts.left && r == parts.right);
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Iterations

IterCondition IterCondition::unconditional(const IterSchedule& schedule, std::vector<Payload> payloads) {
  if (payloads.size() != schedule.length()) {
    fail(ErrorKind::Precondition, "expected " + std::to_string(schedule.length()) + " payloads, got " +
                                      std::to_string(payloads.size()));
  }
  IterCondition p{schedule, {}};
  for (std::size_t k = 0; k < payloads.size(); ++k) {
    const auto kind = schedule.kind(k, {});
    if (!kind) fail(ErrorKind::Precondition, "step " + std::to_string(k) + " has a generic-dependent kind");
    if (*kind != kind_of(payloads[k])) {
      fail(ErrorKind::Precondition, "payload " + std::to_string(k) + " is not a " + kind_name(*kind));
    }
    p.coords.push_back({GuardedEntry{Guard{}, std::move(payloads[k])}});
  }
  return p;
}

std::vector<BitString> decompose(const BitString& sigma, std::size_t length, Decomposition mode) {
  if (mode == Decomposition::Pairwise) {
    if (length != 2) fail(ErrorKind::Precondition, "pairwise decomposition needs a two-step iteration");
    auto parts = split_pair(sigma);
    return {std::move(parts.left), std::move(parts.right)};
  }
  if (width(sigma.size()) > length) {
    fail(ErrorKind::Width, "address of length " + std::to_string(sigma.size()) + " needs " +
                               std::to_string(width(sigma.size())) + " coordinates, iteration has " +
                               std::to_string(length));
  }
  std::vector<BitString> out;
  out.reserve(length);
  for (std::size_t m = 0; m < length; ++m) out.push_back(column(sigma, m));
  return out;
}

IterCondition trivial_condition(const IterSchedule& schedule) {
  IterCondition p{schedule, {}};
  for (std::size_t k = 0; k < schedule.length(); ++k) {
    const auto dep = schedule.dependency(k);
    if (!dep) {
      p.coords.push_back({GuardedEntry{Guard{}, full_payload(*schedule.kind(k, {}))}});
      continue;
    }
    const auto [a, b] = *dep;
    Needs needs;
    needs.schedule(schedule, k + 1);
    std::vector<GuardedEntry> table;
    walk(p, k, needs, [&](const World& w) {
      const BitString prefix = w.ctx.commitments.at(a).prefix(b + 1);
      std::vector<GuardAtom> atoms;
      if (w.kinds[a] == StepKind::Single) {
        atoms.push_back({a, 0, prefix});
      } else {
        auto parts = split_pair(prefix);
        atoms.push_back({a, 0, parts.left});
        if (!parts.right.empty()) atoms.push_back({a, 1, parts.right});
      }
      Guard g = *Guard::of(std::move(atoms));
      const bool seen = std::any_of(table.begin(), table.end(), [&](const auto& e) { return e.guard == g; });
      if (!seen) table.push_back({std::move(g), full_payload(*schedule.kind(k, w.ctx))});
      return true;
    });
    p.coords.push_back(std::move(table));
  }
  return p;
}

void validate(const IterCondition& p) {
  const std::size_t length = p.schedule.length();
  if (p.coords.size() != length) {
    fail(ErrorKind::Precondition, "condition has " + std::to_string(p.coords.size()) + " coordinates, schedule " +
                                      std::to_string(length));
  }
  for (std::size_t k = 0; k < length; ++k) {
    for (const auto& e : p.coords[k]) {
      for (const auto& atom : e.guard.atoms()) {
        if (atom.coord >= k || atom.side > 1) {
          fail(ErrorKind::Precondition, "guard at coordinate " + std::to_string(k) + " mentions coordinate " +
                                            std::to_string(atom.coord) + " side " + std::to_string(atom.side));
        }
      }
    }
  }
  Needs needs;
  needs.tables(p, length);
  needs.schedule(p.schedule, length);
  walk(p, length, needs, [](const World&) { return true; });
}

std::vector<GenericContext> worlds(const IterCondition& p, std::size_t upto, std::span<const Guard> extra) {
  Needs needs;
  needs.tables(p, upto);
  needs.schedule(p.schedule, upto + 1);
  for (const auto& g : extra) needs.guard(g);
  std::vector<GenericContext> out;
  walk(p, std::min(upto, p.coords.size()), needs, [&](const World& w) {
    out.push_back(w.ctx);
    return true;
  });
  return out;
}

std::vector<Payload> resolve(const IterCondition& p, const GenericContext& ctx, std::size_t count) {
  World w{ctx, {}};
  std::vector<Payload> out;
  for (std::size_t k = 0; k < std::min(count, p.coords.size()); ++k) {
    const auto kind = p.schedule.kind(k, ctx);
    if (!kind) fail(ErrorKind::Domain, "context does not decide the kind of step " + std::to_string(k));
    w.kinds.push_back(*kind);
    const Payload& payload = select(p.coords[k], w, k).payload;
    if (const auto it = ctx.commitments.find(k); it != ctx.commitments.end()) {
      bool inside;
      if (const auto* t = std::get_if<SkeletonTree>(&payload)) {
        inside = membership(*t, it->second);
      } else {
        const auto parts = split_pair(it->second);
        const auto& pair = std::get<PairCondition>(payload);
        inside = membership(pair.left, parts.left) && membership(pair.right, parts.right);
      }
      if (!inside) fail(ErrorKind::Domain, "commitment at coordinate " + std::to_string(k) + " leaves the condition");
    }
    out.push_back(payload);
  }
  return out;
}

IterCondition iter_restrict(const IterCondition& p, const BitString& sigma, Decomposition mode) {
  const auto addresses = decompose(sigma, p.coords.size(), mode);
  IterCondition out = p;
  for (std::size_t m = 0; m < out.coords.size(); ++m) {
    if (addresses[m].empty()) continue;
    for (auto& e : out.coords[m]) e.payload = restrict_payload(e.payload, addresses[m]);
  }
  return out;
}

bool iter_leq(const IterCondition& sub, const IterCondition& super) {
  check_same_schedule(sub, super);
  for (std::size_t beta = 0; beta < sub.coords.size(); ++beta) {
    Needs needs;
    needs.tables(sub, beta);
    needs.tables(super, beta);
    needs.schedule(sub.schedule, beta + 1);
    const bool ok = walk(sub, beta, needs, [&](const World& w) {
      World here = w;
      here.kinds.push_back(*sub.schedule.kind(beta, w.ctx));
      return payload_leq(select(sub.coords[beta], here, beta).payload,
                         select(super.coords[beta], here, beta).payload);
    });
    if (!ok) return false;
  }
  return true;
}

bool iter_equivalent(const IterCondition& a, const IterCondition& b) { return iter_leq(a, b) && iter_leq(b, a); }

bool iter_leq_n(const IterCondition& sub, const IterCondition& super, std::size_t n, Decomposition mode) {
  check_same_schedule(sub, super);
  for (const auto& sigma : BitString::all_of_length(n)) {
    if (!iter_leq(iter_restrict(sub, sigma, mode), iter_restrict(super, sigma, mode))) return false;
  }
  return true;
}

IterCondition iter_amalgamate(const IterCondition& p, const BitString& sigma, const IterCondition& q,
                              Decomposition mode) {
  check_same_schedule(p, q);
  const std::size_t length = p.coords.size();
  const auto addresses = decompose(sigma, length, mode);
  if (!iter_leq(q, iter_restrict(p, sigma, mode))) {
    fail(ErrorKind::AmalgamationDomain, "iteration amalgamation: q is not below the " + sigma.str() + "-cell of p");
  }

  // A piece is a region of the worlds through the coordinates built so far:
  // either every earlier coordinate passed through its addressed cell of p,
  // or some coordinate left it.
  struct Piece {
    Guard guard;
    bool pass;
  };
  std::vector<Piece> pieces{{Guard{}, true}};
  IterCondition r{p.schedule, {}};

  for (std::size_t m = 0; m < length; ++m) {
    std::vector<GuardedEntry> table;
    for (const auto& piece : pieces) {
      for (const auto& ep : p.coords[m]) {
        if (!piece.pass) {
          const auto g = conjoin_all({&piece.guard, &ep.guard});
          if (g && satisfiable(r, m, *g)) table.push_back({*g, ep.payload});
          continue;
        }
        for (const auto& eq : q.coords[m]) {
          const auto g = conjoin_all({&piece.guard, &ep.guard, &eq.guard});
          if (!g || !satisfiable(r, m, *g)) continue;
          table.push_back({*g, amalgamate_payload(ep.payload, addresses[m], eq.payload)});
        }
      }
    }
    r.coords.push_back(std::move(table));
    if (m + 1 == length || addresses[m].empty()) continue;

    std::vector<Piece> next;
    for (auto& piece : pieces) {
      if (!piece.pass) {
        next.push_back(std::move(piece));
        continue;
      }
      for (const auto& ep : p.coords[m]) {
        for (const auto& [cell, pass] : cells(ep.payload, addresses[m], m)) {
          const auto g = conjoin_all({&piece.guard, &ep.guard, &cell});
          if (g && satisfiable(r, m + 1, *g)) next.push_back({*g, pass});
        }
      }
    }
    pieces = std::move(next);
  }
  return r;
}

IterCondition simplify(const IterCondition& p) {
  IterCondition out{p.schedule, {}};
  for (std::size_t m = 0; m < p.coords.size(); ++m) {
    const auto& table = p.coords[m];
    Needs needs;
    needs.tables(out, m);
    needs.table(table);
    needs.schedule(p.schedule, m + 1);
    std::vector<bool> reached(table.size(), false);
    walk(out, m, needs, [&](const World& w) {
      World here = w;
      here.kinds.push_back(*p.schedule.kind(m, w.ctx));
      const auto* chosen = &select(table, here, m);
      reached[static_cast<std::size_t>(chosen - table.data())] = true;
      return true;
    });
    std::vector<GuardedEntry> kept;
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (reached[i]) kept.push_back(table[i]);
    }
    const bool uniform = std::all_of(kept.begin(), kept.end(),
                                     [&](const GuardedEntry& e) { return e.payload == kept.front().payload; });
    if (uniform && !kept.empty()) kept = {GuardedEntry{Guard{}, kept.front().payload}};
    out.coords.push_back(std::move(kept));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Products

std::vector<Index> ProductCondition::support() const {
  std::vector<Index> out;
  for (const auto& [i, _] : coords) out.push_back(i);
  return out;
}

namespace {

void check_slots(std::span<const Index> slots, std::size_t n) {
  if (slots.size() < width(n)) {
    fail(ErrorKind::Width, "level " + std::to_string(n) + " needs " + std::to_string(width(n)) +
                               " enumerated indices, got " + std::to_string(slots.size()));
  }
  std::set<Index> seen;
  for (const auto& i : slots) {
    if (!seen.insert(i).second) fail(ErrorKind::Precondition, "index " + i.str() + " enumerated twice");
  }
}

/// The factor of p at i, instantiating a trivial one when i is outside the support.
std::optional<IterCondition> factor(const ProductCondition& p, const Index& i, const IterSchedule* hint) {
  if (const auto it = p.coords.find(i); it != p.coords.end()) return it->second;
  if (hint) return trivial_condition(*hint);
  if (p.fresh) return trivial_condition(*p.fresh);
  return std::nullopt;
}

}  // namespace

ProductCondition prod_restrict(const ProductCondition& p, const BitString& sigma, std::span<const Index> slots) {
  check_slots(slots, sigma.size());
  ProductCondition out = p;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const BitString address = column(sigma, k);
    if (address.empty()) continue;
    const auto base = factor(p, slots[k], nullptr);
    if (!base) fail(ErrorKind::Precondition, "index " + slots[k].str() + " is outside the support and no factor schedule is known");
    out.coords.insert_or_assign(slots[k], iter_restrict(*base, address, Decomposition::Column));
  }
  return out;
}

bool product_leq(const ProductCondition& sub, const ProductCondition& super) {
  for (const auto& [i, sup] : super.coords) {
    const auto mine = factor(sub, i, &sup.schedule);
    if (!iter_leq(*mine, sup)) return false;
  }
  return true;
}

bool prod_leq(const ProductCondition& sub, const ProductCondition& super, std::size_t n,
              std::span<const Index> slots) {
  check_slots(slots, n);
  for (const auto& sigma : BitString::all_of_length(n)) {
    if (!product_leq(prod_restrict(sub, sigma, slots), prod_restrict(super, sigma, slots))) return false;
  }
  return true;
}

ProductCondition prod_amalgamate(const ProductCondition& p, const BitString& sigma, std::span<const Index> slots,
                                 const ProductCondition& q) {
  check_slots(slots, sigma.size());
  if (!product_leq(q, prod_restrict(p, sigma, slots))) {
    fail(ErrorKind::AmalgamationDomain, "product amalgamation: q is not below the " + sigma.str() + "-cell of p");
  }
  ProductCondition out = q;
  out.fresh = p.fresh;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const Index& i = slots[k];
    const auto pi = p.coords.find(i);
    const auto qi = q.coords.find(i);
    if (pi == p.coords.end() && qi == q.coords.end()) continue;
    const auto pk = factor(p, i, qi == q.coords.end() ? nullptr : &qi->second.schedule);
    const auto qk = factor(q, i, pi == p.coords.end() ? nullptr : &pi->second.schedule);
    out.coords.insert_or_assign(i, iter_amalgamate(*pk, column(sigma, k), *qk, Decomposition::Column));
  }
  return out;
}

ProductCondition permute_indices(const ProductCondition& p, const std::map<Index, Index>& pi) {
  ProductCondition out{{}, p.fresh};
  for (const auto& [i, cond] : p.coords) {
    const auto it = pi.find(i);
    if (it == pi.end()) fail(ErrorKind::Precondition, "permutation does not move support index " + i.str());
    if (!out.coords.emplace(it->second, cond).second) {
      fail(ErrorKind::Precondition, "permutation is not injective at " + it->second.str());
    }
  }
  return out;
}

}  // namespace sacks
