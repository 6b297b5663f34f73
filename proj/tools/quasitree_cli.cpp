// Command-line surface: parsing, matrices, quasi-tree enumeration, the
// partial-dual pipeline for general ribbon graphs, and the random
// cross-validation harness.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "quasitree/quasitree.hpp"

namespace {

using namespace quasitree;

struct CommonOptions {
  std::string method = "gf2";
  std::string format = "text";
  std::optional<int> cap;
  bool force = false;
};

int default_enumeration_cap() {
  if (const char* env = std::getenv("QUASITREE_CAP")) {
    try {
      int v = std::stoi(env);
      if (v >= 0) return v;
    } catch (...) {
    }
    std::cerr << "warning: ignoring unparsable QUASITREE_CAP\n";
  }
  return 26;
}

EnumerationOptions build_options(const CommonOptions& common) {
  EnumerationOptions opts;
  opts.cap = default_enumeration_cap();
  if (common.cap) {
    // --cap applies to the cap of the selected method.
    if (common.method == "symbolic")
      opts.symbolic_cap = *common.cap;
    else if (common.method == "oracle")
      opts.oracle_cap = *common.cap;
    else
      opts.cap = *common.cap;
  }
  opts.force = common.force;
  unsigned hw = std::thread::hardware_concurrency();
  opts.threads = static_cast<int>(hw == 0 ? 1 : (hw > 8 ? 8 : hw));
  return opts;
}

Method parse_method(const std::string& name) {
  if (name == "gf2") return Method::gf2;
  if (name == "integer") return Method::integer;
  if (name == "symbolic") return Method::symbolic;
  return Method::oracle;
}

void print_caret(const std::string& input, std::size_t offset, std::ostream& err) {
  std::size_t line_start = input.rfind('\n', offset == 0 ? 0 : offset - 1);
  line_start = line_start == std::string::npos ? 0 : line_start + 1;
  std::size_t line_end = input.find('\n', offset);
  if (line_end == std::string::npos) line_end = input.size();
  err << "  " << input.substr(line_start, line_end - line_start) << "\n  ";
  for (std::size_t i = line_start; i < offset && i < line_end; ++i)
    err << (input[i] == '\t' ? '\t' : ' ');
  err << "^\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::malformed_token, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Rotation text comes from the positional argument or, with --file, a file.
struct RotationInput {
  std::string text;
  std::string file;

  std::string fetch() const { return file.empty() ? text : read_file(file); }
};

void report_label_map(const SignedRotation& rot) {
  if (!rot.relabelled()) return;
  std::cerr << "labels:";
  for (int i = 1; i <= rot.n(); ++i)
    std::cerr << ' ' << i << '=' << rot.original_labels()[static_cast<std::size_t>(i - 1)];
  std::cerr << '\n';
}

nlohmann::json label_map_json(const std::vector<int>& original) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t i = 0; i < original.size(); ++i)
    out[std::to_string(i + 1)] = original[i];
  return out;
}

int cmd_matrix(const RotationInput& input, const CommonOptions& common) {
  std::string text = input.fetch();
  Bouquet b = parse_bouquet(text);
  report_label_map(b.rotation());
  SymbolicSkewMatrix s = symbolic_skew_adjacency(b);
  IntegerSkewMatrix u = unsymbolic(s);
  BinaryMatrix m = adjacency(b);
  if (common.format == "json") {
    nlohmann::json out = matrices_to_json(s, u, m);
    if (b.rotation().relabelled()) out["label_map"] = label_map_json(b.rotation().original_labels());
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "symbolic skew-adjacency matrix:\n" << render_matrix(s);
  std::cout << "integer skew-adjacency matrix (x = 1):\n" << render_matrix(u);
  std::cout << "adjacency matrix (GF(2)):\n" << render_matrix(m);
  return 0;
}

QuasiTreeReport run_report(const Bouquet& b, const CommonOptions& common) {
  return quasi_tree_polynomial(b, parse_method(common.method), build_options(common));
}

int cmd_count(const RotationInput& input, const CommonOptions& common) {
  Bouquet b = parse_bouquet(input.fetch());
  report_label_map(b.rotation());
  auto rep = run_report(b, common);
  if (common.format == "json") {
    std::cout << nlohmann::json{{"schema", dump_schema_version},
                                {"n", rep.n},
                                {"method", method_name(rep.method)},
                                {"tau", rep.tau}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << rep.tau << "\n";
  }
  return 0;
}

int cmd_list(const RotationInput& input, const CommonOptions& common) {
  Bouquet b = parse_bouquet(input.fetch());
  report_label_map(b.rotation());
  auto rep = run_report(b, common);
  if (common.format == "json") {
    std::cout << report_to_json(rep).dump(2) << "\n";
  } else {
    for (EdgeSubset x : rep.feasible) std::cout << x.to_string() << "\n";
  }
  return 0;
}

int cmd_poly(const RotationInput& input, const CommonOptions& common, bool with_integer) {
  Bouquet b = parse_bouquet(input.fetch());
  report_label_map(b.rotation());
  CommonOptions adjusted = common;
  if (with_integer && adjusted.method == "oracle")
    throw Error(errc::malformed_token,
                "--integer needs --method integer or symbolic, not oracle");
  if (with_integer && adjusted.method == "gf2") adjusted.method = "integer";
  auto rep = run_report(b, adjusted);
  if (common.format == "json") {
    nlohmann::json out = report_to_json(rep);
    if (!with_integer) out.erase("integer");
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "mod2: " << rep.mod2_poly.to_text() << "\n";
  if (with_integer) {
    if (!rep.integer_poly)
      throw Error(errc::internal_error, "integer coefficients unavailable for this method");
    std::cout << "integer: " << rep.integer_poly->to_text() << "\n";
  }
  return 0;
}

int cmd_ribbon(const std::string& path, const std::string& quasi_tree_arg,
               const CommonOptions& common) {
  RibbonGraph g = load_ribbon_graph(path);
  if (!g.connected()) throw Error(errc::not_connected, "ribbon graph in " + path + " is not connected");
  std::optional<EdgeSubset> t;
  if (!quasi_tree_arg.empty()) {
    // --quasi-tree is given in the file's own edge labels.
    EdgeSubset raw = parse_edge_subset(quasi_tree_arg);
    EdgeSubset mapped;
    for (int label : raw.elements()) {
      const auto& originals = g.original_labels();
      auto it = std::find(originals.begin(), originals.end(), label);
      if (it == originals.end())
        throw Error(errc::malformed_token,
                    "--quasi-tree mentions edge " + std::to_string(label) + " not in the file");
      mapped = mapped.with(static_cast<int>(it - originals.begin()) + 1);
    }
    t = mapped;
  }
  auto rep = quasi_trees_via_partial_dual(g, t, parse_method(common.method),
                                          build_options(common));
  bool relabelled = false;
  for (std::size_t i = 0; i < g.original_labels().size(); ++i)
    relabelled |= g.original_labels()[i] != static_cast<int>(i) + 1;
  if (common.format == "json") {
    nlohmann::json out = {{"schema", dump_schema_version},
                          {"n", g.n()},
                          {"method", common.method},
                          {"tau", rep.tau},
                          {"quasi_tree_used", subset_to_json(rep.quasi_tree_used)},
                          {"bouquet_rotation", rep.bouquet.rotation().to_string()}};
    nlohmann::json feasible = nlohmann::json::array();
    for (EdgeSubset x : rep.feasible) feasible.push_back(subset_to_json(x));
    out["feasible"] = std::move(feasible);
    if (relabelled) out["label_map"] = label_map_json(g.original_labels());
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (relabelled) {
    std::cerr << "labels:";
    for (std::size_t i = 0; i < g.original_labels().size(); ++i)
      std::cerr << ' ' << i + 1 << '=' << g.original_labels()[i];
    std::cerr << '\n';
  }
  std::cout << "n: " << g.n() << "\n";
  std::cout << "tau: " << rep.tau << "\n";
  std::cout << "quasi-tree used: " << rep.quasi_tree_used.to_string() << "\n";
  std::cout << "bouquet: " << rep.bouquet.rotation().to_string() << "\n";
  std::cout << "feasible:\n";
  for (EdgeSubset x : rep.feasible) std::cout << x.to_string() << "\n";
  return 0;
}

int cmd_check(std::uint64_t seed, int count, int n, double p, const CommonOptions& common) {
  CheckConfig config;
  config.seed = seed;
  config.count = count;
  config.n = n;
  config.p = p;
  config.opts = build_options(common);
  CheckSummary summary = run_random_checks(config);
  if (common.format == "json") {
    nlohmann::json out = {{"schema", dump_schema_version}, {"seed", seed},
                          {"count", count},               {"n", n},
                          {"p", p},                       {"passed", summary.passed},
                          {"failed", summary.failed},
                          {"pre_mod2_findings", summary.pre_mod2_findings}};
    if (summary.first_failure) {
      out["first_failure"] = {{"instance", summary.first_failure->instance},
                              {"rotation", summary.first_failure->rotation},
                              {"detail", summary.first_failure->detail}};
    } else {
      out["first_failure"] = nullptr;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::ostringstream header;
    header << "check: seed=" << seed << " count=" << count << " n=" << n << " p=" << p;
    std::cout << header.str() << "\n";
    std::cout << "passed: " << summary.passed << "/" << summary.total << "\n";
    std::cout << "failed: " << summary.failed << "\n";
    std::cout << "pre-mod-2 findings: " << summary.pre_mod2_findings << "\n";
    if (summary.first_failure) {
      std::cout << "first failure: instance " << summary.first_failure->instance << "\n";
      std::cout << "rotation: " << summary.first_failure->rotation << "\n";
      std::cout << "detail: " << summary.first_failure->detail << "\n";
    }
  }
  return summary.failed == 0 ? 0 : 7;
}

void add_common(CLI::App* cmd, CommonOptions& common, bool with_method = true) {
  if (with_method)
    cmd->add_option("--method", common.method, "enumeration method")
        ->check(CLI::IsMember({"gf2", "integer", "symbolic", "oracle"}));
  cmd->add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--cap", common.cap, "size cap for the selected method");
  cmd->add_flag("--force", common.force, "bypass size caps");
}

void add_rotation_input(CLI::App* cmd, RotationInput& input) {
  auto* group = cmd->add_option_group("input", "rotation source");
  group->add_option("rotation", input.text, "signed rotation, e.g. \"[-1a, 2a, 1b, 2b]\"");
  group->add_option("--file", input.file, "read the rotation from a file");
  group->require_option(1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spanning quasi-tree enumeration for ribbon graphs"};
  app.require_subcommand(1);

  CommonOptions matrix_common, count_common, list_common, poly_common, ribbon_common,
      check_common;
  RotationInput matrix_input, count_input, list_input, poly_input;
  bool poly_integer = false;
  std::string ribbon_path, ribbon_quasi_tree;
  std::uint64_t check_seed = 1;
  int check_count = 100;
  int check_n = 8;
  double check_p = 0.5;

  auto* matrix_cmd = app.add_subcommand("matrix", "print the three matrices of a bouquet");
  add_rotation_input(matrix_cmd, matrix_input);
  add_common(matrix_cmd, matrix_common, false);

  auto* count_cmd = app.add_subcommand("count", "count spanning quasi-trees");
  add_rotation_input(count_cmd, count_input);
  add_common(count_cmd, count_common);

  auto* list_cmd = app.add_subcommand("list", "list spanning quasi-tree edge sets");
  add_rotation_input(list_cmd, list_input);
  add_common(list_cmd, list_common);

  auto* poly_cmd = app.add_subcommand("poly", "print the quasi-tree subset polynomial");
  add_rotation_input(poly_cmd, poly_input);
  poly_cmd->add_flag("--integer", poly_integer, "also print the pre-mod-2 coefficients");
  add_common(poly_cmd, poly_common);

  auto* ribbon_cmd = app.add_subcommand("ribbon", "enumerate quasi-trees of a ribbon graph file");
  ribbon_cmd->add_option("file", ribbon_path, "ribbon graph JSON file")->required();
  ribbon_cmd->add_option("--quasi-tree", ribbon_quasi_tree,
                         "edge set of a known spanning quasi-tree, e.g. \"{1 3}\"");
  add_common(ribbon_cmd, ribbon_common);

  auto* check_cmd = app.add_subcommand("check", "run the random cross-validation harness");
  check_cmd->add_option("--seed", check_seed, "harness seed");
  check_cmd->add_option("--count", check_count, "number of random instances")
      ->check(CLI::NonNegativeNumber);
  check_cmd->add_option("--n", check_n, "loops per random bouquet")
      ->check(CLI::Range(0, 20));
  check_cmd->add_option("--p", check_p, "probability that a loop is non-orientable")
      ->check(CLI::Range(0.0, 1.0));
  add_common(check_cmd, check_common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string current_input;  // for caret diagnostics
  try {
    if (matrix_cmd->parsed()) {
      current_input = matrix_input.fetch();
      return cmd_matrix(matrix_input, matrix_common);
    }
    if (count_cmd->parsed()) {
      current_input = count_input.fetch();
      return cmd_count(count_input, count_common);
    }
    if (list_cmd->parsed()) {
      current_input = list_input.fetch();
      return cmd_list(list_input, list_common);
    }
    if (poly_cmd->parsed()) {
      current_input = poly_input.fetch();
      return cmd_poly(poly_input, poly_common, poly_integer);
    }
    if (ribbon_cmd->parsed()) {
      std::ifstream in(ribbon_path);
      if (in) {
        std::ostringstream buf;
        buf << in.rdbuf();
        current_input = buf.str();
      }
      return cmd_ribbon(ribbon_path, ribbon_quasi_tree, ribbon_common);
    }
    if (check_cmd->parsed())
      return cmd_check(check_seed, check_count, check_n, check_p, check_common);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!current_input.empty() && e.offset() <= current_input.size())
      print_caret(current_input, e.offset(), std::cerr);
    return exit_code_for(e.code());
  } catch (const NotAQuasiTreeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
