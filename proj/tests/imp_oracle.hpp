#pragma once

// Independent reference for implicit definability: syntactic formula
// enumeration, a map-based evaluator and a plain subset sweep.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sacks/imp_core.hpp"

namespace oracle {

using sacks::Formula;
using sacks::SetCode;
using sacks::Term;

/// All formulas over variables {x, y} and parameters {#0, #1}, by size.
inline std::vector<std::vector<Formula>> formulas_by_size(std::size_t max_size) {
  const std::vector<Term> terms{Term::variable("x"), Term::variable("y"), Term::parameter(0), Term::parameter(1)};
  std::vector<std::vector<Formula>> by(max_size + 1);
  for (std::size_t s = 2; s <= max_size; ++s) {
    auto& out = by[s];
    if (s == 2) {
      for (const auto& t : terms) out.push_back(Formula::pred(t));
    }
    if (s == 3) {
      for (const auto& a : terms) {
        for (const auto& b : terms) {
          out.push_back(Formula::in(a, b));
          out.push_back(Formula::eq(a, b));
        }
      }
    }
    for (const auto& f : by[s - 1]) {
      out.push_back(Formula::negation(f));
      for (const char* v : {"x", "y"}) {
        out.push_back(Formula::quantifier(Formula::Op::Forall, v, f));
        out.push_back(Formula::quantifier(Formula::Op::Exists, v, f));
      }
    }
    for (std::size_t s1 = 2; s1 + 3 <= s; ++s1) {
      const std::size_t s2 = s - 1 - s1;
      for (const auto& a : by[s1]) {
        for (const auto& b : by[s2]) {
          for (auto op : {Formula::Op::And, Formula::Op::Or, Formula::Op::Implies, Formula::Op::Iff})
            out.push_back(Formula::binary(op, a, b));
        }
      }
    }
  }
  return by;
}

inline bool closed(const Formula& f, std::set<std::string> bound = {}) {
  for (const auto& t : f.terms) {
    if (!t.is_param && !bound.contains(t.var)) return false;
  }
  if (f.op == Formula::Op::Forall || f.op == Formula::Op::Exists) bound.insert(f.var);
  for (const auto& k : f.kids) {
    if (!closed(k, bound)) return false;
  }
  return true;
}

/// A structure given directly by its membership matrix.
struct Relation {
  std::size_t n = 0;
  std::vector<std::vector<bool>> in;  // in[i][j]: element i is a member of element j
};

inline bool holds(const Formula& f, const Relation& r, std::uint64_t s, const std::vector<std::size_t>& params,
                  std::map<std::string, std::size_t>& env) {
  const auto val = [&](const Term& t) { return t.is_param ? params.at(t.param) : env.at(t.var); };
  switch (f.op) {
    case Formula::Op::In: return r.in[val(f.terms[0])][val(f.terms[1])];
    case Formula::Op::Eq: return val(f.terms[0]) == val(f.terms[1]);
    case Formula::Op::Pred: return (s >> val(f.terms[0])) & 1U;
    case Formula::Op::Not: return !holds(f.kids[0], r, s, params, env);
    case Formula::Op::And: return holds(f.kids[0], r, s, params, env) && holds(f.kids[1], r, s, params, env);
    case Formula::Op::Or: return holds(f.kids[0], r, s, params, env) || holds(f.kids[1], r, s, params, env);
    case Formula::Op::Implies: return !holds(f.kids[0], r, s, params, env) || holds(f.kids[1], r, s, params, env);
    case Formula::Op::Iff: return holds(f.kids[0], r, s, params, env) == holds(f.kids[1], r, s, params, env);
    case Formula::Op::Forall:
    case Formula::Op::Exists: {
      const auto shadowed = env.find(f.var);
      const std::optional<std::size_t> saved =
          shadowed == env.end() ? std::nullopt : std::optional<std::size_t>(shadowed->second);
      std::size_t hits = 0;
      for (std::size_t e = 0; e < r.n; ++e) {
        env[f.var] = e;
        hits += holds(f.kids[0], r, s, params, env) ? 1 : 0;
      }
      if (saved) env[f.var] = *saved;
      else env.erase(f.var);
      return f.op == Formula::Op::Forall ? hits == r.n : hits > 0;
    }
  }
  return false;
}

/// Subsets first, satisfaction second.
inline std::optional<std::uint64_t> unique_subset(const Formula& f, const Relation& r,
                                                  const std::vector<std::size_t>& params) {
  std::vector<std::uint64_t> sat;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << r.n); ++s) {
    std::map<std::string, std::size_t> env;
    if (holds(f, r, s, params, env)) sat.push_back(s);
  }
  if (sat.size() != 1) return std::nullopt;
  return sat.front();
}

inline Relation relation_of(const sacks::FinStructure& x) {
  Relation r{x.size(), std::vector<std::vector<bool>>(x.size(), std::vector<bool>(x.size()))};
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) r.in[i][j] = x.member(i, j);
  return r;
}

/// One universe of hereditarily finite sets for each membership relation on
/// at most three (ordered) elements. Relations that no universe realizes
/// are absent; the caller checks the count.
inline std::vector<sacks::FinStructure> all_small_structures() {
  std::map<std::vector<std::vector<bool>>, sacks::FinStructure> seen;
  seen.emplace(std::vector<std::vector<bool>>{}, sacks::FinStructure{});
  for (SetCode a = 0; a < 64; ++a) {
    for (SetCode b = a; b < 64; ++b) {
      for (SetCode c = b; c < 64; ++c) {
        const sacks::FinStructure x(std::vector<SetCode>{a, b, c});
        seen.emplace(relation_of(x).in, x);
      }
    }
  }
  std::vector<sacks::FinStructure> out;
  for (const auto& [_, x] : seen) out.push_back(x);
  return out;
}

inline std::vector<std::vector<std::size_t>> tuples(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& t : out) {
      for (std::size_t e = 0; e < n; ++e) {
        auto u = t;
        u.push_back(e);
        next.push_back(u);
      }
    }
    out = next;
  }
  return out;
}

}  // namespace oracle
