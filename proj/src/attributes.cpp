#include "sandtree/attributes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <json.hpp>

#include "sandtree/errors.hpp"

namespace sandtree {

AttrValue eval_attribute(const Term& t, const AttributeDomain& d,
                         const BasicAssignment& beta) {
  if (t.is_action()) {
    auto it = beta.find(t.label());
    if (it == beta.end()) throw MissingAssignmentError(t.label());
    bool is_bool = std::holds_alternative<bool>(it->second);
    if (is_bool != (d.kind == ValueKind::Boolean)) {
      throw Error("assignment for '" + t.label() + "' does not match the " +
                  d.name + " domain's value kind");
    }
    return it->second;
  }
  std::vector<AttrValue> parts;
  parts.reserve(t.arity());
  for (const Term& c : t.children()) parts.push_back(eval_attribute(c, d, beta));
  switch (t.kind()) {
    case TermKind::Or:
      return d.or_combine(parts);
    case TermKind::And:
      return d.and_combine(parts);
    default:
      return d.sand_combine(parts);
  }
}

namespace {

double as_number(const AttrValue& v) {
  if (!std::holds_alternative<double>(v)) {
    throw Error("numeric combinator applied to a boolean value");
  }
  return std::get<double>(v);
}

bool as_boolean(const AttrValue& v) {
  if (!std::holds_alternative<bool>(v)) {
    throw Error("boolean combinator applied to a number");
  }
  return std::get<bool>(v);
}

Combinator make_named_combinator(const std::string& name, ValueKind kind) {
  if (name == "first") {
    return [](const std::vector<AttrValue>& v) { return v.front(); };
  }
  if (name == "last") {
    return [](const std::vector<AttrValue>& v) { return v.back(); };
  }
  if (kind == ValueKind::Number) {
    if (name == "min") {
      return [](const std::vector<AttrValue>& v) {
        double out = as_number(v.front());
        for (const AttrValue& x : v) out = std::min(out, as_number(x));
        return AttrValue{out};
      };
    }
    if (name == "max") {
      return [](const std::vector<AttrValue>& v) {
        double out = as_number(v.front());
        for (const AttrValue& x : v) out = std::max(out, as_number(x));
        return AttrValue{out};
      };
    }
    if (name == "sum") {
      return [](const std::vector<AttrValue>& v) {
        double out = 0;
        for (const AttrValue& x : v) out += as_number(x);
        return AttrValue{out};
      };
    }
    if (name == "product") {
      return [](const std::vector<AttrValue>& v) {
        double out = 1;
        for (const AttrValue& x : v) out *= as_number(x);
        return AttrValue{out};
      };
    }
  } else {
    if (name == "any") {
      return [](const std::vector<AttrValue>& v) {
        bool out = false;
        for (const AttrValue& x : v) out = out || as_boolean(x);
        return AttrValue{out};
      };
    }
    if (name == "all") {
      return [](const std::vector<AttrValue>& v) {
        bool out = true;
        for (const AttrValue& x : v) out = out && as_boolean(x);
        return AttrValue{out};
      };
    }
  }
  return nullptr;
}

}  // namespace

AttributeDomain builtin_domain(const std::string& name) {
  const ValueKind num = ValueKind::Number;
  if (name == "min-time") {
    return AttributeDomain{name, num, make_named_combinator("min", num),
                           make_named_combinator("max", num),
                           make_named_combinator("sum", num), false};
  }
  if (name == "min-cost") {
    return AttributeDomain{name, num, make_named_combinator("min", num),
                           make_named_combinator("sum", num),
                           make_named_combinator("sum", num), true};
  }
  if (name == "satisfiable") {
    const ValueKind b = ValueKind::Boolean;
    return AttributeDomain{name, b, make_named_combinator("any", b),
                           make_named_combinator("all", b),
                           make_named_combinator("all", b), false};
  }
  throw UnknownDomainError(name);
}

std::vector<std::string> builtin_domain_names() {
  return {"min-time", "min-cost", "satisfiable"};
}

AttributeDomain domain_from_json(std::string_view text) {
  nlohmann::json v = nlohmann::json::parse(text, nullptr, false);
  if (v.is_discarded()) throw JsonSchemaError("input is not valid JSON", "");
  if (!v.is_object()) throw JsonSchemaError("expected an object", "");
  for (const char* key : {"name", "kind", "or", "and", "sand"}) {
    if (!v.contains(key) || !v[key].is_string()) {
      throw JsonSchemaError("missing or non-string field",
                            std::string("/") + key);
    }
  }
  std::string kind_name = v["kind"].get<std::string>();
  if (kind_name != "number" && kind_name != "boolean") {
    throw JsonSchemaError("kind must be \"number\" or \"boolean\"", "/kind");
  }
  ValueKind kind =
      kind_name == "number" ? ValueKind::Number : ValueKind::Boolean;
  AttributeDomain d;
  d.name = v["name"].get<std::string>();
  d.kind = kind;
  d.artifact_defined = true;
  struct {
    const char* key;
    Combinator AttributeDomain::*member;
  } slots[] = {{"or", &AttributeDomain::or_combine},
               {"and", &AttributeDomain::and_combine},
               {"sand", &AttributeDomain::sand_combine}};
  for (const auto& slot : slots) {
    std::string name = v[slot.key].get<std::string>();
    Combinator c = make_named_combinator(name, kind);
    if (!c) {
      throw JsonSchemaError("unknown combinator '" + name + "' for " +
                                kind_name + " values",
                            std::string("/") + slot.key);
    }
    d.*slot.member = std::move(c);
  }
  return d;
}

BasicAssignment assignment_from_json(std::string_view text) {
  nlohmann::json v = nlohmann::json::parse(text, nullptr, false);
  if (v.is_discarded()) throw JsonSchemaError("input is not valid JSON", "");
  if (!v.is_object()) {
    throw JsonSchemaError("expected an object mapping labels to values", "");
  }
  BasicAssignment beta;
  for (const auto& [key, value] : v.items()) {
    if (value.is_boolean()) {
      beta[key] = value.get<bool>();
    } else if (value.is_number()) {
      beta[key] = value.get<double>();
    } else {
      throw JsonSchemaError("value must be a number or boolean", "/" + key);
    }
  }
  return beta;
}

namespace {

using Vals = std::vector<AttrValue>;

Vals concat(const Vals& a, const Vals& b) {
  Vals out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Vals concat(const Vals& a, const AttrValue& v, const Vals& b) {
  Vals out = a;
  out.push_back(v);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// One drawn instantiation of an axiom scheme's variables.
struct Draw {
  Vals x, y, z;
  AttrValue a;
};

using SideComparisons =
    std::vector<std::pair<AttrValue, AttrValue>>;  // (lhs, rhs)

// Evaluates both sides of one axiom scheme under sigma = the domain's
// combinators.  E1/E2 yield one comparison per permutation of the
// arguments; the other schemes yield a single comparison.
SideComparisons axiom_sides(const std::string& axiom, const AttributeDomain& d,
                            const Draw& w) {
  const Combinator& OR = d.or_combine;
  const Combinator& AND = d.and_combine;
  const Combinator& SAND = d.sand_combine;
  if (axiom == "E1" || axiom == "E2") {
    const Combinator& f = axiom == "E1" ? OR : AND;
    AttrValue lhs = f(w.y);
    SideComparisons out;
    std::vector<std::size_t> idx(w.y.size());
    std::iota(idx.begin(), idx.end(), 0);
    do {
      Vals permuted;
      permuted.reserve(w.y.size());
      for (std::size_t i : idx) permuted.push_back(w.y[i]);
      out.emplace_back(lhs, f(permuted));
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
  }
  if (axiom == "E3") return {{OR(concat(w.x, OR(w.y), {})), OR(concat(w.x, w.y))}};
  if (axiom == "E4") {
    return {{AND(concat(w.x, AND(w.y), {})), AND(concat(w.x, w.y))}};
  }
  if (axiom == "E4'") {
    return {{SAND(concat(w.x, SAND(w.y), w.z)),
             SAND(concat(w.x, concat(w.y, w.z)))}};
  }
  if (axiom == "E5") return {{OR({w.a}), w.a}};
  if (axiom == "E6") return {{AND({w.a}), w.a}};
  if (axiom == "E6'") return {{SAND({w.a}), w.a}};
  if (axiom == "E10") {
    Vals branches;
    for (const AttrValue& yi : w.y) branches.push_back(AND(concat(w.x, {yi})));
    return {{AND(concat(w.x, OR(w.y), {})), OR(branches)}};
  }
  if (axiom == "E10'") {
    Vals branches;
    for (const AttrValue& yi : w.y) branches.push_back(SAND(concat(w.x, yi, w.z)));
    return {{SAND(concat(w.x, OR(w.y), w.z)), OR(branches)}};
  }
  if (axiom == "E11") {
    return {{OR(concat({w.a, w.a}, w.x)), OR(concat({w.a}, w.x))}};
  }
  throw Error("unknown axiom " + axiom);
}

struct AxiomScheme {
  std::string id;
  bool uses_k, uses_l, uses_m, uses_a;
};

const std::vector<AxiomScheme>& axiom_schemes() {
  static const std::vector<AxiomScheme> schemes = {
      {"E1", false, true, false, false},  {"E2", false, true, false, false},
      {"E3", true, true, false, false},   {"E4", true, true, false, false},
      {"E4'", true, true, true, false},   {"E5", false, false, false, true},
      {"E6", false, false, false, true},  {"E6'", false, false, false, true},
      {"E10", true, true, false, false},  {"E10'", true, true, true, false},
      {"E11", true, false, false, true},
  };
  return schemes;
}

bool values_equal(const AttrValue& a, const AttrValue& b, double tolerance) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<bool>(a)) {
    return std::get<bool>(a) == std::get<bool>(b);
  }
  double x = std::get<double>(a);
  double y = std::get<double>(b);
  double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
  return std::fabs(x - y) <= tolerance * scale;
}

std::map<std::string, AttrValue> name_values(const AxiomScheme& scheme,
                                             const Draw& w) {
  std::map<std::string, AttrValue> named;
  for (std::size_t i = 0; i < w.x.size(); ++i) {
    named["X" + std::to_string(i + 1)] = w.x[i];
  }
  for (std::size_t i = 0; i < w.y.size(); ++i) {
    named["Y" + std::to_string(i + 1)] = w.y[i];
  }
  for (std::size_t i = 0; i < w.z.size(); ++i) {
    named["Z" + std::to_string(i + 1)] = w.z[i];
  }
  if (scheme.uses_a) named["A"] = w.a;
  return named;
}

std::string arity_label(const AxiomScheme& scheme, std::size_t k, std::size_t l,
                        std::size_t m) {
  std::string out;
  auto add = [&out](const char* name, std::size_t v) {
    if (!out.empty()) out += ',';
    out += name;
    out += '=';
    out += std::to_string(v);
  };
  if (scheme.uses_k) add("k", k);
  if (scheme.uses_l) add("l", l);
  if (scheme.uses_m) add("m", m);
  return out;
}

// Runs every value draw for one (axiom, arity) instantiation.  Returns the
// first counterexample, if any, and counts comparisons into trials.
std::optional<Counterexample> run_instance(
    const AttributeDomain& d, const AxiomScheme& scheme,
    const CompatibilityConfig& cfg, std::size_t k, std::size_t l, std::size_t m,
    std::mt19937_64& rng, long& trials) {
  const std::size_t var_count =
      (scheme.uses_k ? k : 0) + (scheme.uses_l ? l : 0) +
      (scheme.uses_m ? m : 0) + (scheme.uses_a ? 1 : 0);

  auto build_draw = [&](const std::vector<AttrValue>& flat) {
    Draw w;
    std::size_t at = 0;
    if (scheme.uses_k) {
      w.x.assign(flat.begin(), flat.begin() + k);
      at += k;
    }
    if (scheme.uses_l) {
      w.y.assign(flat.begin() + at, flat.begin() + at + l);
      at += l;
    }
    if (scheme.uses_m) {
      w.z.assign(flat.begin() + at, flat.begin() + at + m);
      at += m;
    }
    if (scheme.uses_a) w.a = flat[at];
    return w;
  };

  auto check_draw = [&](const Draw& w) -> std::optional<Counterexample> {
    for (const auto& [lhs, rhs] : axiom_sides(scheme.id, d, w)) {
      ++trials;
      if (!values_equal(lhs, rhs, cfg.tolerance)) {
        return Counterexample{arity_label(scheme, k, l, m),
                              name_values(scheme, w), lhs, rhs};
      }
    }
    return std::nullopt;
  };

  if (d.kind == ValueKind::Boolean) {
    // Exhaustive over all boolean assignments.
    for (std::uint64_t bits = 0; bits < (1ull << var_count); ++bits) {
      std::vector<AttrValue> flat;
      flat.reserve(var_count);
      for (std::size_t i = 0; i < var_count; ++i) {
        flat.emplace_back(((bits >> i) & 1) != 0);
      }
      if (auto cex = check_draw(build_draw(flat))) return cex;
    }
    return std::nullopt;
  }

  std::uniform_int_distribution<long long> dist(cfg.value_min, cfg.value_max);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    std::vector<AttrValue> flat;
    flat.reserve(var_count);
    for (std::size_t i = 0; i < var_count; ++i) {
      flat.emplace_back(static_cast<double>(dist(rng)));
    }
    if (auto cex = check_draw(build_draw(flat))) return cex;
  }
  return std::nullopt;
}

}  // namespace

CompatibilityReport check_compatibility(const AttributeDomain& d,
                                        const CompatibilityConfig& cfg) {
  if (cfg.trials < 1) throw Error("trial count must be at least 1");
  CompatibilityReport report;
  report.domain = d.name;
  report.seed = cfg.seed;
  std::mt19937_64 rng(cfg.seed);

  for (const AxiomScheme& scheme : axiom_schemes()) {
    AxiomOutcome outcome;
    outcome.axiom = scheme.id;
    outcome.exhaustive = d.kind == ValueKind::Boolean;
    for (std::size_t k = 0; k <= (scheme.uses_k ? 2u : 0u); ++k) {
      for (std::size_t l = scheme.uses_l ? 1u : 0u;
           l <= (scheme.uses_l ? 3u : 0u); ++l) {
        for (std::size_t m = 0; m <= (scheme.uses_m ? 2u : 0u); ++m) {
          outcome.arities_tested.push_back(arity_label(scheme, k, l, m));
          if (outcome.passed) {
            if (auto cex = run_instance(d, scheme, cfg, k, l, m, rng,
                                        outcome.trials)) {
              outcome.passed = false;
              outcome.counterexample = std::move(cex);
            }
          }
        }
      }
    }
    report.all_passed = report.all_passed && outcome.passed;
    report.axioms.push_back(std::move(outcome));
  }
  return report;
}

namespace {

nlohmann::json value_to_json(const AttrValue& v) {
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v);
  return std::get<double>(v);
}

}  // namespace

std::string report_to_json(const CompatibilityReport& report) {
  nlohmann::json out;
  out["domain"] = report.domain;
  out["seed"] = report.seed;
  out["all_passed"] = report.all_passed;
  auto axioms = nlohmann::json::array();
  for (const AxiomOutcome& a : report.axioms) {
    nlohmann::json entry;
    entry["axiom"] = a.axiom;
    entry["arities"] = a.arities_tested;
    entry["trials"] = a.trials;
    entry["exhaustive"] = a.exhaustive;
    entry["passed"] = a.passed;
    if (a.counterexample) {
      nlohmann::json cex;
      cex["arities"] = a.counterexample->arities;
      nlohmann::json values;
      for (const auto& [name, value] : a.counterexample->values) {
        values[name] = value_to_json(value);
      }
      cex["values"] = std::move(values);
      cex["lhs"] = value_to_json(a.counterexample->lhs);
      cex["rhs"] = value_to_json(a.counterexample->rhs);
      entry["counterexample"] = std::move(cex);
    }
    axioms.push_back(std::move(entry));
  }
  out["axioms"] = std::move(axioms);
  return out.dump(2);
}

}  // namespace sandtree
