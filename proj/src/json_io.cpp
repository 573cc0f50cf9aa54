#include "sacks/json_io.hpp"

#include "sacks/error.hpp"

namespace sacks::io {

namespace {

std::string kind_name(StepKind k) { return k == StepKind::Single ? "single" : "pair"; }

std::string count_name(Count c) { return c == Count::One ? "one" : "many"; }

}  // namespace

Reader Reader::at(const std::string& key) const {
  if (!value_.is_object()) fail("expected an object");
  const auto it = value_.find(key);
  if (it == value_.end()) fail("missing field '" + key + "'");
  return Reader(*it, path_ + "/" + key);
}

Reader Reader::at(std::size_t i) const {
  if (!value_.is_array()) fail("expected an array");
  if (i >= value_.size()) fail("missing element " + std::to_string(i));
  return Reader(value_[i], path_ + "/" + std::to_string(i));
}

std::size_t Reader::size() const {
  if (!value_.is_array()) fail("expected an array");
  return value_.size();
}

void Reader::fail(const std::string& what) const {
  sacks::fail(ErrorKind::Input, "at " + (path_.empty() ? std::string("/") : path_) + ": " + what);
}

std::uint64_t Reader::u64() const {
  if (!value_.is_number_unsigned() && !(value_.is_number_integer() && value_.get<std::int64_t>() >= 0))
    fail("expected a non-negative integer");
  return value_.get<std::uint64_t>();
}

bool Reader::boolean() const {
  if (value_.is_boolean()) return value_.get<bool>();
  if (value_.is_number_integer() && (value_.get<std::int64_t>() == 0 || value_.get<std::int64_t>() == 1))
    return value_.get<std::int64_t>() == 1;
  fail("expected a boolean");
}

std::string Reader::str() const {
  if (!value_.is_string()) fail("expected a string");
  return value_.get<std::string>();
}

BitString Reader::bits() const {
  try {
    return BitString::parse(str());
  } catch (const Error&) {
    fail("expected a string of 0s and 1s");
  }
}

std::vector<BitString> Reader::bits_list() const {
  std::vector<BitString> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).bits());
  return out;
}

SkeletonTree Reader::tree() const {
  if (value_.is_string() && value_.get<std::string>() == "full") return full_tree();
  if (has("cone")) return SkeletonTree::cone(at("cone").bits());
  const std::size_t depth = at("depth").u64();
  if (depth > 20) at("depth").fail("depth is too large");
  const Reader sk = at("skeleton");
  if (!sk.value().is_object()) sk.fail("expected an object");
  std::map<BitString, BitString> skeleton;
  for (const auto& [key, _] : sk.value().items()) {
    BitString sigma;
    try {
      sigma = BitString::parse(key);
    } catch (const Error&) {
      sk.fail("key '" + key + "' is not a string of 0s and 1s");
    }
    skeleton[sigma] = sk.at(key).bits();
  }
  try {
    return SkeletonTree::from_map(depth, skeleton);
  } catch (const Error& e) {
    sk.fail(e.what());
  }
}

std::vector<SkeletonTree> Reader::tree_list() const {
  std::vector<SkeletonTree> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).tree());
  return out;
}

PairCondition Reader::pair() const { return PairCondition{at("left").tree(), at("right").tree()}; }

StepKind Reader::step_kind() const {
  const auto s = str();
  if (s == "single") return StepKind::Single;
  if (s == "pair") return StepKind::Pair;
  fail("expected \"single\" or \"pair\"");
}

IterSchedule Reader::schedule() const {
  if (has("builtin")) {
    if (at("builtin").str() != "sc") at("builtin").fail("unknown builtin schedule");
    return IterSchedule::self_coding(at("n").u64(), at("length").u64());
  }
  const Reader kinds = at("kinds");
  std::vector<StepKind> out;
  for (std::size_t i = 0; i < kinds.size(); ++i) out.push_back(kinds.at(i).step_kind());
  try {
    return IterSchedule::fixed(std::move(out));
  } catch (const Error& e) {
    kinds.fail(e.what());
  }
}

Guard Reader::guard() const {
  std::vector<GuardAtom> atoms;
  for (std::size_t i = 0; i < size(); ++i) {
    const Reader a = at(i);
    const auto side = a.has("side") ? a.at("side").u64() : 0;
    if (side > 1) a.at("side").fail("side must be 0 or 1");
    atoms.push_back(GuardAtom{a.at("coord").u64(), static_cast<std::uint8_t>(side), a.at("node").bits()});
  }
  auto g = Guard::of(std::move(atoms));
  if (!g) fail("contradictory guard");
  return *g;
}

Payload Reader::payload() const {
  if (has("left")) return pair();
  return tree();
}

IterCondition Reader::iter() const {
  const IterSchedule schedule = at("schedule").schedule();
  if (has("payloads")) {
    const Reader ps = at("payloads");
    std::vector<Payload> payloads;
    for (std::size_t i = 0; i < ps.size(); ++i) payloads.push_back(ps.at(i).payload());
    try {
      return IterCondition::unconditional(schedule, std::move(payloads));
    } catch (const Error& e) {
      ps.fail(e.what());
    }
  }
  IterCondition p{schedule, {}};
  const Reader coords = at("coords");
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const Reader table = coords.at(k);
    std::vector<GuardedEntry> entries;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const Reader e = table.at(i);
      entries.push_back(GuardedEntry{e.has("guard") ? e.at("guard").guard() : Guard{}, e.at("payload").payload()});
    }
    p.coords.push_back(std::move(entries));
  }
  try {
    validate(p);
  } catch (const Error& e) {
    coords.fail(e.what());
  }
  return p;
}

Index Reader::index() const {
  try {
    return Index::parse(str());
  } catch (const Error&) {
    fail("expected an index such as \"3\", \"w+1\" or \"(w,2)\"");
  }
}

std::vector<Index> Reader::index_list() const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).index());
  return out;
}

ProductCondition Reader::product() const {
  ProductCondition p;
  const Reader coords = at("coords");
  if (!coords.value().is_object()) coords.fail("expected an object");
  for (const auto& [key, _] : coords.value().items()) {
    Index idx;
    try {
      idx = Index::parse(key);
    } catch (const Error&) {
      coords.fail("key '" + key + "' is not an index");
    }
    p.coords.emplace(idx, coords.at(key).iter());
  }
  if (has("fresh")) p.fresh = at("fresh").schedule();
  return p;
}

Decomposition Reader::decomposition() const {
  const auto s = str();
  if (s == "column") return Decomposition::Column;
  if (s == "pairwise") return Decomposition::Pairwise;
  fail("expected \"column\" or \"pairwise\"");
}

TowerRecipe Reader::recipe() const {
  const Reader kinds = value_.is_array() ? *this : at("kinds");
  TowerRecipe r;
  for (std::size_t i = 0; i < kinds.size(); ++i) r.kinds.push_back(kinds.at(i).step_kind());
  return r;
}

DegreePoset Reader::poset() const {
  const Reader labels = at("labels");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < labels.size(); ++i) names.push_back(labels.at(i).str());
  const Reader edges = at("edges");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Reader e = edges.at(i);
    if (e.size() != 2) e.fail("an edge is a pair [lower, upper]");
    out.emplace_back(e.at(std::size_t{0}).u64(), e.at(std::size_t{1}).u64());
  }
  try {
    return DegreePoset(std::move(names), std::move(out));
  } catch (const Error& e) {
    edges.fail(e.what());
  }
}

Ordinal2 Reader::ordinal() const {
  try {
    return value_.is_number() ? Ordinal2{0, u64()} : Ordinal2::parse(str());
  } catch (const Error&) {
    fail("expected an ordinal such as \"w+3\"");
  }
}

BitFunction Reader::bit_function() const {
  if (!value_.is_object()) fail("expected an object");
  BitFunction out;
  for (const auto& [key, _] : value_.items()) {
    Ordinal2 h;
    try {
      h = Ordinal2::parse(key);
    } catch (const Error&) {
      fail("key '" + key + "' is not an ordinal");
    }
    out[h] = at(key).boolean();
  }
  return out;
}

TowerCensus Reader::census() const {
  if (!value_.is_object()) fail("expected an object");
  TowerCensus out;
  for (const auto& [key, _] : value_.items()) {
    Ordinal2 h;
    try {
      h = Ordinal2::parse(key);
    } catch (const Error&) {
      fail("key '" + key + "' is not an ordinal");
    }
    const auto v = at(key).str();
    if (v != "one" && v != "many") at(key).fail("expected \"one\" or \"many\"");
    out[h] = v == "one" ? Count::One : Count::Many;
  }
  return out;
}

ScPattern Reader::pattern() const {
  ScPattern out;
  for (std::size_t i = 0; i < size(); ++i) {
    const auto s = at(i).str();
    if (s != "line" && s != "diamond") at(i).fail("expected \"line\" or \"diamond\"");
    out.push_back(s == "line" ? Level::Line : Level::Diamond);
  }
  return out;
}

std::map<std::uint64_t, Count> Reader::sc_census() const {
  if (!value_.is_object()) fail("expected an object");
  std::map<std::uint64_t, Count> out;
  for (const auto& [key, _] : value_.items()) {
    if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos || key.size() > 18)
      fail("key '" + key + "' is not a natural number");
    const auto v = at(key).str();
    if (v != "one" && v != "many") at(key).fail("expected \"one\" or \"many\"");
    out[std::stoull(key)] = v == "one" ? Count::One : Count::Many;
  }
  return out;
}

Formula Reader::formula() const { return parse_formula(str()); }

std::vector<SetCode> Reader::codes() const {
  std::vector<SetCode> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).u64());
  return out;
}

FinStructure Reader::structure() const { return FinStructure(codes()); }

ImpBounds Reader::imp_bounds() const {
  ImpBounds b;
  b.budget = at("budget").u64();
  if (has("param_slots")) b.param_slots = at("param_slots").u64();
  if (has("var_slots")) b.var_slots = at("var_slots").u64();
  return b;
}

// ---------------------------------------------------------------------------

json to_json(const BitString& s) { return s.str(); }

json to_json(const SkeletonTree& t) {
  json sk = json::object();
  for (const auto& sigma : BitString::all_up_to(t.depth())) sk[sigma.str()] = t.entry(sigma).str();
  return json{{"depth", t.depth()}, {"skeleton", sk}};
}

json to_json(const PairCondition& p) { return json{{"left", to_json(p.left)}, {"right", to_json(p.right)}}; }

json to_json(StepKind k) { return kind_name(k); }

json to_json(const IterSchedule& s) {
  if (!s.is_fixed()) return json{{"builtin", "sc"}, {"n", *s.sc_base()}, {"length", s.length()}};
  json kinds = json::array();
  for (const auto k : s.fixed_kinds()) kinds.push_back(kind_name(k));
  return json{{"kinds", kinds}};
}

json to_json(const Guard& g) {
  json out = json::array();
  for (const auto& a : g.atoms()) out.push_back(json{{"coord", a.coord}, {"side", a.side}, {"node", a.node.str()}});
  return out;
}

json to_json(const Payload& p) {
  return std::visit([](const auto& v) { return to_json(v); }, p);
}

json to_json(const IterCondition& p) {
  json coords = json::array();
  for (const auto& table : p.coords) {
    json t = json::array();
    for (const auto& e : table) t.push_back(json{{"guard", to_json(e.guard)}, {"payload", to_json(e.payload)}});
    coords.push_back(t);
  }
  return json{{"schedule", to_json(p.schedule)}, {"coords", coords}};
}

json to_json(const ProductCondition& p) {
  json coords = json::object();
  for (const auto& [idx, c] : p.coords) coords[idx.str()] = to_json(c);
  json out{{"coords", coords}};
  if (p.fresh) out["fresh"] = to_json(*p.fresh);
  return out;
}

json to_json(const TowerRecipe& r) {
  json kinds = json::array();
  for (const auto k : r.kinds) kinds.push_back(kind_name(k));
  return json{{"kinds", kinds}};
}

json to_json(const DegreePoset& p) {
  json edges = json::array();
  for (const auto& [a, b] : p.edges()) edges.push_back(json::array({a, b}));
  return json{{"labels", p.labels()}, {"edges", edges}};
}

json to_json(Count c) { return count_name(c); }

json to_json(const BitFunction& x) {
  json out = json::object();
  for (const auto& [k, v] : x) out[k.str()] = v ? 1 : 0;
  return out;
}

json to_json(const TowerCensus& c) {
  json out = json::object();
  for (const auto& [k, v] : c) out[k.str()] = count_name(v);
  return out;
}

json to_json(const ScPattern& p) {
  json out = json::array();
  for (const auto l : p) out.push_back(l == Level::Line ? "line" : "diamond");
  return out;
}

json to_json(const ScCode& c) { return json{{"n", c.n}, {"g", c.g.str()}}; }

json to_json(const std::map<std::uint64_t, Count>& c) {
  json out = json::object();
  for (const auto& [k, v] : c) out[std::to_string(k)] = count_name(v);
  return out;
}

json to_json(const Formula& f) { return to_string(f); }

json to_json(const SetFamily& f) { return json(std::vector<SetCode>(f.begin(), f.end())); }

json to_json(const std::vector<SetFamily>& levels) {
  json out = json::array();
  for (const auto& l : levels) out.push_back(to_json(l));
  return out;
}

json subset_json(const FinStructure& x, Subset s) {
  json out = json::array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if ((s >> i) & 1U) out.push_back(x.universe()[i]);
  }
  return out;
}

}  // namespace sacks::io
