// sandtree — batch analysis of SAND attack trees: normalization,
// equivalence, SP semantics, attribute evaluation, and attribute-domain
// compatibility checking.
//
// Exit codes: 0 success (equivalent / compatible); 1 negative result (not
// equivalent / incompatible domain); 2 input error (syntax, schema, unknown
// domain, bad usage); 3 size cap exceeded; 4 missing assignment.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sandtree/attributes.hpp"
#include "sandtree/errors.hpp"
#include "sandtree/rewrite.hpp"
#include "sandtree/semantics.hpp"
#include "sandtree/text_format.hpp"

namespace {

using namespace sandtree;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;
constexpr int kExitAssignment = 4;

struct GlobalOptions {
  std::size_t cap_graphs = kDefaultGraphCap;
  std::size_t cap_nodes = kDefaultNodeCap;
  std::string strategy = "innermost";
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::string output = "text";
  std::string format;  // "", "sat", or "json"
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Term load_tree(const std::string& path, const GlobalOptions& opts) {
  std::string text = read_file(path);
  std::string format = opts.format;
  if (format.empty()) {
    format = std::filesystem::path(path).extension() == ".json" ? "json" : "sat";
  }
  return format == "json" ? from_json(text) : parse(text);
}

Strategy strategy_of(const GlobalOptions& opts) {
  if (opts.strategy == "innermost") {
    return {StrategyKind::LeftmostInnermost, 0};
  }
  if (opts.strategy == "outermost") {
    return {StrategyKind::LeftmostOutermost, 0};
  }
  if (opts.strategy == "random") {
    return {StrategyKind::SeededRandom, opts.seed};
  }
  throw Error("unknown strategy '" + opts.strategy +
              "' (expected innermost, outermost, or random)");
}

void print_term(const Term& t, const GlobalOptions& opts) {
  if (opts.output == "json") {
    std::cout << to_json(t) << "\n";
  } else if (opts.output == "dot") {
    std::cout << term_to_dot(t);
  } else {
    std::cout << serialize(t) << "\n";
  }
}

int cmd_normalize(const std::string& input, bool with_trace,
                  const GlobalOptions& opts) {
  Term t = load_tree(input, opts);
  NormalizeOptions norm_opts{strategy_of(opts), opts.cap_nodes};
  if (with_trace) {
    RewriteTrace trace;
    Term result = normalize(t, trace, norm_opts);
    std::cout << trace_to_json_lines(trace);
    print_term(result, opts);
  } else {
    print_term(normalize(t, norm_opts), opts);
  }
  return kExitOk;
}

int cmd_equiv(const std::string& a, const std::string& b,
              const GlobalOptions& opts) {
  NormalizeOptions norm_opts{strategy_of(opts), opts.cap_nodes};
  Term na = normalize(load_tree(a, opts), norm_opts);
  Term nb = normalize(load_tree(b, opts), norm_opts);
  if (na == nb) {
    std::cout << "equivalent\n";
    return kExitOk;
  }
  std::cout << "not equivalent\n"
            << "  " << a << ": " << serialize(na) << "\n"
            << "  " << b << ": " << serialize(nb) << "\n";
  return kExitNegative;
}

int cmd_semantics(const std::string& input, const GlobalOptions& opts) {
  Term t = load_tree(input, opts);
  GraphSet gs = sp_semantics(t, opts.cap_graphs);
  if (opts.output == "json") {
    std::cout << graphset_to_json(gs) << "\n";
  } else if (opts.output == "dot") {
    std::cout << graphset_to_dot(gs);
  } else {
    std::cout << gs.size() << (gs.size() == 1 ? " graph\n" : " graphs\n");
    for (const SPGraph& g : gs.members()) {
      std::cout << g.canon().to_string() << "\n";
    }
  }
  return kExitOk;
}

int cmd_eval(const std::string& input, const std::string& domain_name,
             const std::string& domain_spec, const std::string& assign_path,
             const GlobalOptions& opts) {
  Term t = load_tree(input, opts);
  AttributeDomain domain = domain_spec.empty()
                               ? builtin_domain(domain_name)
                               : domain_from_json(read_file(domain_spec));
  BasicAssignment beta = assignment_from_json(read_file(assign_path));
  AttrValue value = eval_attribute(t, domain, beta);
  if (std::holds_alternative<bool>(value)) {
    std::cout << (std::get<bool>(value) ? "true" : "false") << "\n";
  } else {
    std::cout << std::get<double>(value) << "\n";
  }
  return kExitOk;
}

std::string value_to_text(const AttrValue& v) {
  if (std::holds_alternative<bool>(v)) {
    return std::get<bool>(v) ? "true" : "false";
  }
  std::ostringstream out;
  out << std::get<double>(v);
  return out.str();
}

int cmd_check_domain(const std::string& domain_name,
                     const std::string& domain_spec, int trials,
                     const GlobalOptions& opts) {
  AttributeDomain domain = domain_spec.empty()
                               ? builtin_domain(domain_name)
                               : domain_from_json(read_file(domain_spec));
  CompatibilityConfig cfg;
  cfg.trials = trials;
  cfg.seed = opts.seed;
  cfg.tolerance = opts.tolerance;
  CompatibilityReport report = check_compatibility(domain, cfg);
  if (opts.output == "json") {
    std::cout << report_to_json(report) << "\n";
  } else {
    std::cout << "domain " << report.domain << " (seed " << report.seed
              << ")\n";
    for (const AxiomOutcome& a : report.axioms) {
      std::cout << "  " << a.axiom << (a.axiom.size() < 3 ? "   " : "  ")
                << (a.passed ? "pass" : "FAIL") << "  ("
                << (a.exhaustive ? "exhaustive, " : "") << a.trials
                << " comparisons)";
      if (a.counterexample) {
        std::cout << "  counterexample [" << a.counterexample->arities << "]";
        for (const auto& [name, value] : a.counterexample->values) {
          std::cout << " " << name << "=" << value_to_text(value);
        }
        std::cout << " lhs=" << value_to_text(a.counterexample->lhs)
                  << " rhs=" << value_to_text(a.counterexample->rhs);
      }
      std::cout << "\n";
    }
    std::cout << (report.all_passed ? "compatible" : "NOT compatible")
              << " with the SP semantics\n";
  }
  return report.all_passed ? kExitOk : kExitNegative;
}

int cmd_dot(const std::string& input, const GlobalOptions& opts) {
  std::cout << term_to_dot(load_tree(input, opts));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SAND attack tree analysis"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--cap-graphs", opts.cap_graphs,
                 "Largest graph set the semantics may build")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap-nodes", opts.cap_nodes,
                 "Largest term the rewriter may build")
      ->check(CLI::PositiveNumber);
  app.add_option("--strategy", opts.strategy,
                 "Rewriting strategy: innermost, outermost, random");
  app.add_option("--seed", opts.seed, "Seed for random strategy and checks");
  app.add_option("--tolerance", opts.tolerance,
                 "Relative tolerance for numeric comparisons");
  app.add_option("--output", opts.output, "Output format: text, json, dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--format", opts.format,
                 "Input tree format override: sat, json")
      ->check(CLI::IsMember({"sat", "json"}));

  std::string input, input_b, domain_name, domain_spec, assign_path;
  bool with_trace = false;
  int trials = 64;

  // Global flags may appear after the subcommand name.
  auto add_subcommand = [&app](const std::string& name,
                               const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };

  auto* normalize_cmd =
      add_subcommand("normalize", "Rewrite a tree to normal form");
  normalize_cmd->add_option("input", input, "Tree file (.sat or .json)")
      ->required();
  normalize_cmd->add_flag("--trace", with_trace,
                          "Print the rewrite trace as JSON lines");

  auto* equiv_cmd =
      add_subcommand("equiv", "Decide SP-semantic equivalence");
  equiv_cmd->add_option("a", input, "First tree file")->required();
  equiv_cmd->add_option("b", input_b, "Second tree file")->required();

  auto* semantics_cmd =
      add_subcommand("semantics", "List the SP graphs a tree denotes");
  semantics_cmd->add_option("input", input, "Tree file")->required();

  auto* eval_cmd =
      add_subcommand("eval", "Evaluate an attribute bottom-up");
  eval_cmd->add_option("input", input, "Tree file")->required();
  eval_cmd->add_option("--domain", domain_name, "Built-in domain name");
  eval_cmd->add_option("--domain-spec", domain_spec, "Domain JSON file");
  eval_cmd->add_option("--assign", assign_path, "Assignment JSON file")
      ->required();

  auto* check_cmd = add_subcommand(
      "check-domain", "Check an attribute domain against the axioms");
  check_cmd->add_option("--domain", domain_name, "Built-in domain name");
  check_cmd->add_option("--domain-spec", domain_spec, "Domain JSON file");
  check_cmd->add_option("--trials", trials, "Random draws per axiom instance")
      ->check(CLI::PositiveNumber);

  auto* dot_cmd = add_subcommand("dot", "Render a tree as a DOT digraph");
  dot_cmd->add_option("input", input, "Tree file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 would exit 1; usage problems are input errors here.
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (normalize_cmd->parsed()) return cmd_normalize(input, with_trace, opts);
    if (equiv_cmd->parsed()) return cmd_equiv(input, input_b, opts);
    if (semantics_cmd->parsed()) return cmd_semantics(input, opts);
    if (eval_cmd->parsed()) {
      if (domain_name.empty() == domain_spec.empty()) {
        std::cerr << "eval needs exactly one of --domain or --domain-spec\n";
        return kExitInput;
      }
      return cmd_eval(input, domain_name, domain_spec, assign_path, opts);
    }
    if (check_cmd->parsed()) {
      if (domain_name.empty() == domain_spec.empty()) {
        std::cerr
            << "check-domain needs exactly one of --domain or --domain-spec\n";
        return kExitInput;
      }
      return cmd_check_domain(domain_name, domain_spec, trials, opts);
    }
    if (dot_cmd->parsed()) return cmd_dot(input, opts);
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const MissingAssignmentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssignment;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
