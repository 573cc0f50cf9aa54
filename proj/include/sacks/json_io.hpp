#pragma once

#include <string>

#include "json.hpp"
#include "sacks/bitstring.hpp"
#include "sacks/condition_algebra.hpp"
#include "sacks/degree_sim.hpp"
#include "sacks/imp_core.hpp"
#include "sacks/perfect_tree.hpp"

namespace sacks::io {

using nlohmann::json;

/// Reading side: every reader takes the JSON path of its argument and throws
/// Error(Input) naming the offending field.
class Reader {
 public:
  Reader(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const json& value() const noexcept { return value_; }
  const std::string& path() const noexcept { return path_; }

  bool has(const std::string& key) const { return value_.is_object() && value_.contains(key); }
  Reader at(const std::string& key) const;
  Reader at(std::size_t i) const;
  std::size_t size() const;  // array length

  [[noreturn]] void fail(const std::string& what) const;

  std::uint64_t u64() const;
  bool boolean() const;
  std::string str() const;

  BitString bits() const;
  std::vector<BitString> bits_list() const;
  SkeletonTree tree() const;
  std::vector<SkeletonTree> tree_list() const;
  PairCondition pair() const;
  IterSchedule schedule() const;
  Guard guard() const;
  Payload payload() const;
  IterCondition iter() const;
  Index index() const;
  std::vector<Index> index_list() const;
  ProductCondition product() const;
  Decomposition decomposition() const;
  StepKind step_kind() const;
  TowerRecipe recipe() const;
  DegreePoset poset() const;
  Ordinal2 ordinal() const;
  BitFunction bit_function() const;
  TowerCensus census() const;
  ScPattern pattern() const;
  std::map<std::uint64_t, Count> sc_census() const;
  Formula formula() const;
  FinStructure structure() const;
  std::vector<SetCode> codes() const;
  ImpBounds imp_bounds() const;

 private:
  const json& value_;
  std::string path_;
};

json to_json(const BitString& s);
json to_json(const SkeletonTree& t);
json to_json(const PairCondition& p);
json to_json(const IterSchedule& s);
json to_json(const Guard& g);
json to_json(const Payload& p);
json to_json(const IterCondition& p);
json to_json(const ProductCondition& p);
json to_json(StepKind k);
json to_json(const TowerRecipe& r);
json to_json(const DegreePoset& p);
json to_json(Count c);
json to_json(const BitFunction& x);
json to_json(const TowerCensus& c);
json to_json(const ScPattern& p);
json to_json(const ScCode& c);
json to_json(const std::map<std::uint64_t, Count>& c);
json to_json(const Formula& f);
json to_json(const SetFamily& f);
json to_json(const std::vector<SetFamily>& levels);

/// Members of a subset of x, as set codes.
json subset_json(const FinStructure& x, Subset s);

}  // namespace sacks::io
