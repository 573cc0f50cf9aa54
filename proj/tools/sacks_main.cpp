#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sacks/condition_algebra.hpp"
#include "sacks/degree_sim.hpp"
#include "sacks/error.hpp"
#include "sacks/imp_core.hpp"
#include "sacks/json_io.hpp"
#include "sacks/perfect_tree.hpp"
#include "sacks/seq_codec.hpp"
#include "sacks/verify.hpp"

using namespace sacks;
using io::json;
using io::Reader;
using io::to_json;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Input, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Input, path + ": " + e.what());
  }
}

Subset subset_of(const FinStructure& x, const Reader& r) {
  Subset s = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto idx = x.index_of(r.at(i).u64());
    if (!idx) fail(ErrorKind::Domain, "at " + r.at(i).path() + ": not an element of the structure");
    s |= Subset{1} << *idx;
  }
  return s;
}

std::vector<SetCode> params_of(const Reader& in) {
  return in.has("params") ? in.at("params").codes() : std::vector<SetCode>{};
}

json subsets_json(const FinStructure& x, const std::map<Subset, ImpWitness>& w) {
  json out = json::array();
  for (const auto& [s, wit] : w)
    out.push_back({{"subset", io::subset_json(x, s)}, {"witness", to_json(wit.formula)}, {"params", wit.params}});
  return out;
}

using Op = std::function<json(const Reader&)>;

const std::map<std::string, Op>& operations() {
  static const std::map<std::string, Op> ops{
      // seq_codec
      {"join_pair", [](const Reader& in) { return to_json(join_pair(in.at("x").bits(), in.at("y").bits())); }},
      {"split_pair",
       [](const Reader& in) {
         const auto parts = split_pair(in.at("z").bits());
         return json{{"left", to_json(parts.left)}, {"right", to_json(parts.right)}};
       }},
      {"pair_index", [](const Reader& in) { return json(pair_index(in.at("m").u64(), in.at("n").u64())); }},
      {"unpair_index",
       [](const Reader& in) {
         const auto [m, n] = unpair_index(in.at("p").u64());
         return json::array({m, n});
       }},
      {"column", [](const Reader& in) { return to_json(column(in.at("sigma").bits(), in.at("n").u64())); }},
      {"columns",
       [](const Reader& in) {
         json out = json::array();
         for (const auto& c : columns(in.at("sigma").bits())) out.push_back(to_json(c));
         return out;
       }},
      {"width", [](const Reader& in) { return json(width(in.at("k").u64())); }},
      {"join_family",
       [](const Reader& in) { return to_json(join_family(in.at("columns").bits_list(), in.at("length").u64())); }},
      // perfect_tree
      {"full_tree", [](const Reader&) { return to_json(full_tree()); }},
      {"membership", [](const Reader& in) { return json(membership(in.at("tree").tree(), in.at("node").bits())); }},
      {"stem", [](const Reader& in) { return to_json(stem(in.at("tree").tree())); }},
      {"rt", [](const Reader& in) { return to_json(splitting_node(in.at("tree").tree(), in.at("sigma").bits())); }},
      {"splitting_level",
       [](const Reader& in) {
         json out = json::array();
         for (const auto& s : splitting_level(in.at("tree").tree(), in.at("n").u64())) out.push_back(to_json(s));
         return out;
       }},
      {"restrict_node",
       [](const Reader& in) { return to_json(restrict_node(in.at("tree").tree(), in.at("node").bits())); }},
      {"restrict_cell",
       [](const Reader& in) { return to_json(restrict_cell(in.at("tree").tree(), in.at("sigma").bits())); }},
      {"deepen", [](const Reader& in) { return to_json(deepen(in.at("tree").tree(), in.at("depth").u64())); }},
      {"subtree_leq", [](const Reader& in) { return json(subtree_leq(in.at("sub").tree(), in.at("super").tree())); }},
      {"leq_n",
       [](const Reader& in) { return json(leq_n(in.at("sub").tree(), in.at("super").tree(), in.at("n").u64())); }},
      {"amalgamate",
       [](const Reader& in) {
         return to_json(amalgamate(in.at("tree").tree(), in.at("sigma").bits(), in.at("part").tree()));
       }},
      {"fusion_prefix",
       [](const Reader& in) {
         const auto seq = in.at("seq").tree_list();
         const Reader sched = in.at("schedule");
         std::vector<std::size_t> ks;
         for (std::size_t i = 0; i < sched.size(); ++i) ks.push_back(sched.at(i).u64());
         return to_json(fusion_prefix(seq, ks, in.at("n").u64()));
       }},
      // condition_algebra
      {"pair_restrict", [](const Reader& in) { return to_json(pair_restrict(in.at("p").pair(), in.at("sigma").bits())); }},
      {"pair_leq_n",
       [](const Reader& in) { return json(pair_leq_n(in.at("sub").pair(), in.at("super").pair(), in.at("n").u64())); }},
      {"pair_amalgamate",
       [](const Reader& in) {
         return to_json(pair_amalgamate(in.at("p").pair(), in.at("sigma").bits(), in.at("q").pair()));
       }},
      {"iter_restrict",
       [](const Reader& in) {
         return to_json(iter_restrict(in.at("p").iter(), in.at("sigma").bits(), in.at("mode").decomposition()));
       }},
      {"iter_amalgamate",
       [](const Reader& in) {
         return to_json(iter_amalgamate(in.at("p").iter(), in.at("sigma").bits(), in.at("q").iter(),
                                        in.at("mode").decomposition()));
       }},
      {"iter_leq_n",
       [](const Reader& in) {
         return json(iter_leq_n(in.at("sub").iter(), in.at("super").iter(), in.at("n").u64(),
                                in.at("mode").decomposition()));
       }},
      {"prod_restrict",
       [](const Reader& in) {
         return to_json(prod_restrict(in.at("p").product(), in.at("sigma").bits(), in.at("slots").index_list()));
       }},
      {"prod_leq",
       [](const Reader& in) {
         return json(prod_leq(in.at("sub").product(), in.at("super").product(), in.at("n").u64(),
                              in.at("slots").index_list()));
       }},
      {"prod_amalgamate",
       [](const Reader& in) {
         return to_json(prod_amalgamate(in.at("p").product(), in.at("sigma").bits(), in.at("slots").index_list(),
                                        in.at("q").product()));
       }},
      {"permute_indices",
       [](const Reader& in) {
         const Reader pi = in.at("pi");
         if (!pi.value().is_object()) pi.fail("expected an object mapping index to index");
         std::map<Index, Index> map;
         for (const auto& [key, _] : pi.value().items()) {
           Index from;
           try {
             from = Index::parse(key);
           } catch (const Error&) {
             pi.fail("key '" + key + "' is not an index");
           }
           map.emplace(from, pi.at(key).index());
         }
         return to_json(permute_indices(in.at("p").product(), map));
       }},
      // degree_sim
      {"tower_degrees", [](const Reader& in) { return to_json(tower_degrees(in.at("recipe").recipe())); }},
      {"census_encode",
       [](const Reader& in) {
         return to_json(census_encode(in.at("x").bit_function(), in.at("limit_bound").u64(), in.at("n_bound").u64()));
       }},
      {"census_decode", [](const Reader& in) { return to_json(census_decode(in.at("census").census())); }},
      {"sc_schedule",
       [](const Reader& in) {
         return to_json(sc_schedule(in.at("n").u64(), in.at("g").bits(), in.at("k").u64()));
       }},
      {"sc_pattern", [](const Reader& in) { return to_json(sc_pattern(in.at("recipe").recipe())); }},
      {"sc_decode", [](const Reader& in) { return to_json(sc_decode(in.at("pattern").pattern())); }},
      {"sc_census_encode",
       [](const Reader& in) { return to_json(sc_census_encode(in.at("h").bits(), in.at("alpha_bound").u64())); }},
      {"sc_census_decode", [](const Reader& in) { return to_json(sc_census_decode(in.at("census").sc_census())); }},
      // imp_core
      {"parse_formula",
       [](const Reader& in) {
         const auto f = in.at("formula").formula();
         return json{{"formula", to_json(f)}, {"size", formula_size(f)}, {"param_slots", param_slots_used(f)}};
       }},
      {"eval_formula",
       [](const Reader& in) {
         const auto x = in.at("structure").structure();
         return json(eval_formula(in.at("formula").formula(), x, subset_of(x, in.at("subset")), params_of(in)));
       }},
      {"implicitly_defined_by",
       [](const Reader& in) {
         const auto x = in.at("structure").structure();
         const auto s = implicitly_defined_by(x, in.at("formula").formula(), params_of(in));
         return s ? io::subset_json(x, *s) : json(nullptr);
       }},
      {"implicit_subsets",
       [](const Reader& in) {
         const auto x = in.at("structure").structure();
         return subsets_json(x, implicit_witnesses(x, in.at("bounds").imp_bounds()));
       }},
      {"imp_levels",
       [](const Reader& in) { return to_json(imp_levels(in.at("n").u64(), in.at("bounds").imp_bounds())); }},
      {"vn_levels", [](const Reader& in) { return to_json(vn_levels(in.at("n").u64())); }},
  };
  return ops;
}

std::string dot_string(const std::string& s) { return s.empty() ? "<>" : s; }

std::string tree_dot(const SkeletonTree& t) {
  std::ostringstream out;
  out << "digraph tree {\n";
  const auto entries = t.entries();
  for (std::size_t i = 0; i < entries.size(); ++i)
    out << "  n" << i << " [label=\"" << dot_string(entries[i].str()) << "\"];\n";
  for (std::size_t i = 1; i < entries.size(); ++i)
    out << "  n" << (i - 1) / 2 << " -> n" << i << " [label=\"" << (i - 1) % 2 << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string object_dot(const json& object) {
  const Reader r(object, "");
  if (r.has("labels") && r.has("edges")) return to_dot(r.poset());
  if ((object.is_string() && object.get<std::string>() == "full") || r.has("cone") || r.has("skeleton"))
    return tree_dot(r.tree());
  throw UsageError("dot expects a degree poset {labels, edges} or a skeleton tree");
}

void print_report(const std::vector<SuiteReport>& reports) {
  for (const auto& r : reports) {
    for (const auto& p : r.properties) {
      std::printf("%s %s/%s cases=%llu failures=%llu %.2fs\n", p.failures == 0 ? "PASS" : "FAIL", r.suite.c_str(),
                  p.name.c_str(), static_cast<unsigned long long>(p.cases),
                  static_cast<unsigned long long>(p.failures), p.seconds);
      if (p.failures != 0) std::printf("  first failure: %s\n", p.first_failure.c_str());
    }
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Input, "cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite checks for perfect-tree conditions, tower degrees and Imp levels", "sacks"};
  app.require_subcommand(1);

  VerifyBounds bounds;
  std::string suite;
  std::string report_path;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", suite, "codec, tree, conditions, degrees, imp or all")->required();
  verify->add_option("--seed", bounds.seed, "Seed of the randomized properties");
  verify->add_option("--depth", bounds.depth, "Skeleton depth of the exhaustive tree class");
  verify->add_option("--budget", bounds.budget, "Formula budget for the Imp levels");
  verify->add_option("--n-bound", bounds.n_bound, "Heights per limit in the census and SC bases");
  verify->add_option("--json-report", report_path, "Write a JSON report to this path");

  std::string op;
  std::string input_path;
  auto* eval = app.add_subcommand("eval", "Evaluate one operation on a JSON input and print JSON");
  eval->add_option("op", op, "Operation name")->required();
  eval->add_option("input", input_path, "JSON input file")->required();

  std::string object_path;
  std::string out_path;
  auto* dot = app.add_subcommand("dot", "Render a degree poset or skeleton tree as DOT");
  dot->add_option("object", object_path, "JSON file holding the object")->required();
  dot->add_option("--out", out_path, "Output path; standard output when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (verify->parsed()) {
      const auto& names = suite_names();
      if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
        throw UsageError("unknown suite '" + suite + "'");
      const auto reports = run_suites(suite, bounds);
      print_report(reports);
      const auto report = report_json(reports, bounds);
      if (!report_path.empty()) write_file(report_path, report.dump(2) + "\n");
      return report.at("passed").get<bool>() ? kOk : kFailure;
    }
    if (eval->parsed()) {
      const auto it = operations().find(op);
      if (it == operations().end()) throw UsageError("unknown operation '" + op + "'");
      const json input = read_json_file(input_path);
      std::cout << it->second(Reader(input, "")).dump() << "\n";
      return kOk;
    }
    const std::string text = object_dot(read_json_file(object_path));
    if (out_path.empty()) std::cout << text;
    else write_file(out_path, text);
    return kOk;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const SyntaxError& e) {
    std::cerr << "error (" << to_string(e.kind()) << " at offset " << e.position() << "): " << e.what() << "\n";
    return kFailure;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kFailure;
  }
}
