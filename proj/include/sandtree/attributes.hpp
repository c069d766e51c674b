#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sandtree/term.hpp"

namespace sandtree {

using AttrValue = std::variant<bool, double>;

enum class ValueKind : std::uint8_t { Number, Boolean };

// A variadic combinator; total for every arity k >= 1 on the domain's
// value kind.
using Combinator = std::function<AttrValue(const std::vector<AttrValue>&)>;

// An attribute domain: the value carrier and one combinator per refinement
// operator.  Whether OR/AND combinators really are permutation invariant
// (and the rest of the axioms hold) is checked by check_compatibility, not
// assumed.
struct AttributeDomain {
  std::string name;
  ValueKind kind = ValueKind::Number;
  Combinator or_combine;
  Combinator and_combine;
  Combinator sand_combine;
  bool artifact_defined = false;  // not taken from the literature
};

using BasicAssignment = std::map<std::string, AttrValue>;

// Bottom-up evaluation: the assignment on leaves, the matching combinator
// on OR/AND/SAND nodes.  Throws MissingAssignmentError naming the first
// action the assignment does not cover.
AttrValue eval_attribute(const Term& t, const AttributeDomain& d,
                         const BasicAssignment& beta);

// Built-in domains:
//   min-time     OR=min, AND=max, SAND=sum
//   min-cost     OR=min, AND=sum, SAND=sum   (artifact-defined)
//   satisfiable  OR=any, AND=all, SAND=all
// Throws UnknownDomainError for other names.
AttributeDomain builtin_domain(const std::string& name);
std::vector<std::string> builtin_domain_names();

// Domain-spec JSON: {"name":...,"kind":"number"|"boolean","or":...,
// "and":...,"sand":...} where the combinators are named from a fixed
// vocabulary (numbers: min,max,sum,product,first,last; booleans:
// any,all,first,last).
AttributeDomain domain_from_json(std::string_view text);

// Assignment JSON: an object mapping action labels to numbers or booleans.
BasicAssignment assignment_from_json(std::string_view text);

struct CompatibilityConfig {
  int trials = 64;           // random draws per axiom instantiation
  std::uint64_t seed = 0;
  double tolerance = 1e-9;   // relative, numeric comparison
  long long value_min = 0;   // integer draw range for numeric domains
  long long value_max = 100;
};

struct Counterexample {
  std::string arities;                     // e.g. "k=1,l=2"
  std::map<std::string, AttrValue> values; // variable -> drawn value
  AttrValue lhs;
  AttrValue rhs;
};

struct AxiomOutcome {
  std::string axiom;
  std::vector<std::string> arities_tested;
  long trials = 0;          // comparisons evaluated
  bool exhaustive = false;  // boolean domains enumerate every assignment
  bool passed = true;
  std::optional<Counterexample> counterexample;
};

struct CompatibilityReport {
  std::string domain;
  std::uint64_t seed = 0;
  bool all_passed = true;
  std::vector<AxiomOutcome> axioms;
};

// Checks the domain against every axiom of the SP semantics by evaluating
// both sides of each instantiated scheme on drawn values: arities k,m range
// over 0..2 and l over 1..3, values are random for numeric domains and
// exhaustively enumerated for boolean ones.  Failures are reported as data
// (with the first counterexample), not thrown.
CompatibilityReport check_compatibility(const AttributeDomain& d,
                                        const CompatibilityConfig& cfg = {});

std::string report_to_json(const CompatibilityReport& report);

}  // namespace sandtree
