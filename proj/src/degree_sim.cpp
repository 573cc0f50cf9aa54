#include "sacks/degree_sim.hpp"

#include <algorithm>
#include <sstream>

#include "sacks/error.hpp"

namespace sacks {

DegreePoset::DegreePoset(std::vector<std::string> labels, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
  const std::size_t n = labels_.size();
  below_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) below_[i][i] = true;
  for (const auto& [lo, hi] : edges_) {
    if (lo >= n || hi >= n) fail(ErrorKind::Input, "edge endpoint outside the node list");
    if (lo == hi) fail(ErrorKind::Input, "self-loop at " + labels_[lo]);
    below_[lo][hi] = true;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (below_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (below_[k][j]) below_[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (below_[i][j] && below_[j][i]) fail(ErrorKind::Input, "cycle through " + labels_[i] + " and " + labels_[j]);
}

std::size_t DegreePoset::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) fail(ErrorKind::Domain, "no degree labelled " + label);
  return static_cast<std::size_t>(it - labels_.begin());
}

std::optional<std::size_t> DegreePoset::meet(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> lower;
  for (std::size_t i = 0; i < size(); ++i)
    if (leq(i, a) && leq(i, b)) lower.push_back(i);
  for (std::size_t c : lower) {
    if (std::all_of(lower.begin(), lower.end(), [&](std::size_t d) { return leq(d, c); })) return c;
  }
  return std::nullopt;
}

std::optional<std::size_t> DegreePoset::join(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> upper;
  for (std::size_t i = 0; i < size(); ++i)
    if (leq(a, i) && leq(b, i)) upper.push_back(i);
  for (std::size_t c : upper) {
    if (std::all_of(upper.begin(), upper.end(), [&](std::size_t d) { return leq(c, d); })) return c;
  }
  return std::nullopt;
}

DegreePoset tower_degrees(const TowerRecipe& recipe) {
  if (!recipe.kinds.empty() && recipe.kinds.front() != StepKind::Single) {
    fail(ErrorKind::Precondition, "the first step of a tower recipe must be single");
  }
  std::vector<std::string> labels{"d0"};
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t current = 0;
  for (std::size_t beta = 0; beta < recipe.kinds.size(); ++beta) {
    const std::string b = std::to_string(beta);
    if (recipe.kinds[beta] == StepKind::Single) {
      labels.push_back("d" + std::to_string(beta + 1));
      edges.emplace_back(current, labels.size() - 1);
    } else {
      labels.push_back("d" + b + ".0");
      labels.push_back("d" + b + ".1");
      labels.push_back("d" + std::to_string(beta + 1));
      const std::size_t top = labels.size() - 1;
      edges.emplace_back(current, top - 2);
      edges.emplace_back(current, top - 1);
      edges.emplace_back(top - 2, top);
      edges.emplace_back(top - 1, top);
    }
    current = labels.size() - 1;
  }
  return DegreePoset(std::move(labels), std::move(edges));
}

std::string to_dot(const DegreePoset& poset) {
  std::ostringstream out;
  out << "digraph degrees {\n  rankdir=BT;\n";
  for (const auto& label : poset.labels()) out << "  \"" << label << "\";\n";
  auto edges = poset.edges();
  std::sort(edges.begin(), edges.end());
  for (const auto& [lo, hi] : edges) {
    out << "  \"" << poset.labels()[lo] << "\" -> \"" << poset.labels()[hi] << "\";\n";
  }
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------

TowerCensus census_encode(const BitFunction& x, std::size_t limit_bound, std::size_t n_bound) {
  for (const auto& [idx, _] : x) {
    if (idx.a >= limit_bound || idx.b >= n_bound) {
      fail(ErrorKind::Domain, "bit function defined at " + idx.str() + ", outside the bounds");
    }
  }
  TowerCensus out;
  for (std::uint64_t a = 0; a < limit_bound; ++a) {
    for (std::uint64_t n = 0; n < n_bound; ++n) {
      const auto it = x.find(Ordinal2{a, n});
      if (it == x.end()) fail(ErrorKind::Domain, "bit function undefined at " + Ordinal2{a, n}.str());
      out[Ordinal2{a, 2 * n + 1}] = it->second ? Count::Many : Count::One;
      out[Ordinal2{a, 2 * n + 2}] = Count::Many;
    }
  }
  return out;
}

BitFunction census_decode(const TowerCensus& census) {
  BitFunction x;
  for (const auto& [height, count] : census) {
    if (height.b == 0) fail(ErrorKind::Decode, "census height " + height.str() + " is not a successor");
    if (height.b % 2 == 1) {
      x[Ordinal2{height.a, (height.b - 1) / 2}] = count == Count::Many;
    } else if (count == Count::One) {
      fail(ErrorKind::Decode, "census marks height " + height.str() + " unique; even offsets always have many towers");
    }
  }
  return x;
}

TowerFamily product_towers(std::size_t limit_bound, std::size_t n_bound, std::uint64_t copies) {
  TowerFamily out;
  for (std::uint64_t a = 0; a < limit_bound; ++a)
    for (std::uint64_t m = 0; m < 2 * n_bound; ++m)
      for (std::uint64_t c = 0; c < copies; ++c) out[{Ordinal2{a, m}, c}] = Ordinal2{a, m};
  return out;
}

TowerFamily surviving_towers(const TowerFamily& all, const BitFunction& x) {
  TowerFamily out;
  for (const auto& [key, length] : all) {
    const auto& [alpha, copy] = key;
    if (alpha.b % 2 == 0 && copy != 0) {
      const auto it = x.find(Ordinal2{alpha.a, alpha.b / 2});
      if (it == x.end()) fail(ErrorKind::Domain, "bit function undefined at " + Ordinal2{alpha.a, alpha.b / 2}.str());
      if (!it->second) continue;
    }
    out.emplace(key, length);
  }
  return out;
}

TowerFamily reindexed_towers(const TowerFamily& kept) {
  TowerFamily out;
  for (const auto& [key, length] : kept) {
    const auto& [alpha, copy] = key;
    if (alpha.b % 2 == 0) continue;
    if (copy % 2 == 0) {
      const Ordinal2 cut{alpha.a, alpha.b - 1};
      out[{cut, copy / 2}] = cut;
    } else {
      out[{alpha, copy / 2}] = length;
    }
  }
  return out;
}

TowerCensus census_of(const TowerFamily& towers) {
  std::map<Ordinal2, std::uint64_t> counts;
  for (const auto& [_, length] : towers) ++counts[length.plus(1)];
  TowerCensus out;
  for (const auto& [height, count] : counts) out[height] = count > 1 ? Count::Many : Count::One;
  return out;
}

// ---------------------------------------------------------------------------

TowerRecipe sc_schedule(std::uint64_t n, const BitString& g, std::size_t k) {
  if (k > n + 2 + g.size()) {
    fail(ErrorKind::Domain, std::to_string(k) + " steps of SC_" + std::to_string(n) + " need " +
                                std::to_string(k - n - 2) + " bits of g, have " + std::to_string(g.size()));
  }
  TowerRecipe r;
  for (std::uint64_t step = 0; step < k; ++step) {
    bool pair = false;
    if (step == n + 1) pair = true;
    if (step >= n + 2) pair = g[step - n - 2];
    r.kinds.push_back(pair ? StepKind::Pair : StepKind::Single);
  }
  return r;
}

ScPattern sc_pattern(const TowerRecipe& recipe) {
  ScPattern out;
  for (auto k : recipe.kinds) out.push_back(k == StepKind::Single ? Level::Line : Level::Diamond);
  return out;
}

ScCode sc_decode(const ScPattern& pattern) {
  const auto first = std::find(pattern.begin(), pattern.end(), Level::Diamond);
  if (first == pattern.end()) fail(ErrorKind::UndecodablePattern, "pattern has no diamond");
  if (first == pattern.begin()) fail(ErrorKind::MalformedPattern, "level 0 of a self-coding pattern is a line");
  ScCode code;
  code.n = static_cast<std::uint64_t>(first - pattern.begin()) - 1;
  for (auto it = first + 1; it != pattern.end(); ++it) code.g.push_back(*it == Level::Diamond);
  return code;
}

std::map<std::uint64_t, Count> sc_census_encode(const BitString& h, std::uint64_t alpha_bound) {
  if (alpha_bound < 2) fail(ErrorKind::Precondition, "alpha bound must allow at least two copies");
  std::map<std::uint64_t, Count> out;
  for (std::uint64_t n = 0; n < h.size(); ++n) {
    const std::uint64_t copies = h[n] ? 1 : alpha_bound;
    out[n] = copies > 1 ? Count::Many : Count::One;
  }
  return out;
}

BitString sc_census_decode(const std::map<std::uint64_t, Count>& census) {
  BitString h;
  std::uint64_t expect = 0;
  for (const auto& [n, count] : census) {
    if (n != expect++) fail(ErrorKind::Decode, "census skips base " + std::to_string(expect - 1));
    h.push_back(count == Count::One);
  }
  return h;
}

}  // namespace sacks
