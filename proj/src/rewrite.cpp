#include "sandtree/rewrite.hpp"

#include <algorithm>
#include <random>

#include <json.hpp>

#include "sandtree/errors.hpp"
#include "sandtree/text_format.hpp"

namespace sandtree {

std::string_view rule_name(RuleId id) {
  switch (id) {
    case RuleId::E3:
      return "E3";
    case RuleId::E4:
      return "E4";
    case RuleId::E4Prime:
      return "E4'";
    case RuleId::E5:
      return "E5";
    case RuleId::E6:
      return "E6";
    case RuleId::E6Prime:
      return "E6'";
    case RuleId::E10:
      return "E10";
    case RuleId::E10Prime:
      return "E10'";
    case RuleId::E11:
      return "E11";
  }
  return "?";
}

namespace {

bool has_child_of_kind(const Term& t, TermKind kind) {
  for (const Term& c : t.children()) {
    if (c.kind() == kind) return true;
  }
  return false;
}

// First pair of OR children equal modulo commutativity, if any.
std::optional<std::pair<std::size_t, std::size_t>> duplicate_pair(const Term& t) {
  std::vector<Term> sorted;
  sorted.reserve(t.arity());
  for (const Term& c : t.children()) sorted.push_back(sort_commutative(c));
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (sorted[i] == sorted[j]) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

// Rules applicable at the root of t, in the fixed priority order used by
// the deterministic strategies: flatten, collapse unary, dedupe,
// distribute.
std::vector<RuleId> rules_at(const Term& t) {
  std::vector<RuleId> out;
  switch (t.kind()) {
    case TermKind::Action:
      break;
    case TermKind::Or:
      if (has_child_of_kind(t, TermKind::Or)) out.push_back(RuleId::E3);
      if (t.arity() == 1) out.push_back(RuleId::E5);
      if (t.arity() >= 2 && duplicate_pair(t)) out.push_back(RuleId::E11);
      break;
    case TermKind::And:
      if (has_child_of_kind(t, TermKind::And)) out.push_back(RuleId::E4);
      if (t.arity() == 1) out.push_back(RuleId::E6);
      if (has_child_of_kind(t, TermKind::Or)) out.push_back(RuleId::E10);
      break;
    case TermKind::Sand:
      if (has_child_of_kind(t, TermKind::Sand)) out.push_back(RuleId::E4Prime);
      if (t.arity() == 1) out.push_back(RuleId::E6Prime);
      if (has_child_of_kind(t, TermKind::Or)) out.push_back(RuleId::E10Prime);
      break;
  }
  return out;
}

std::size_t first_child_of_kind(const Term& t, TermKind kind) {
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (t.child(i).kind() == kind) return i;
  }
  throw Error("no child of the requested kind");  // unreachable on redexes
}

Term splice_child(const Term& t, std::size_t at) {
  std::vector<Term> kids;
  kids.reserve(t.arity() + t.child(at).arity() - 1);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i == at) {
      auto nested = t.child(at).children();
      kids.insert(kids.end(), nested.begin(), nested.end());
    } else {
      kids.push_back(t.child(i));
    }
  }
  return Term::make(t.kind(), std::move(kids));
}

Term distribute_over_or(const Term& t, std::size_t at) {
  const Term& alternatives = t.child(at);
  std::vector<Term> branches;
  branches.reserve(alternatives.arity());
  for (const Term& pick : alternatives.children()) {
    std::vector<Term> kids;
    kids.reserve(t.arity());
    for (std::size_t i = 0; i < t.arity(); ++i) {
      kids.push_back(i == at ? pick : t.child(i));
    }
    branches.push_back(Term::make(t.kind(), std::move(kids)));
  }
  return Term::or_of(std::move(branches));
}

Term apply_rule(const Term& t, RuleId rule) {
  switch (rule) {
    case RuleId::E3:
      return splice_child(t, first_child_of_kind(t, TermKind::Or));
    case RuleId::E4:
      return splice_child(t, first_child_of_kind(t, TermKind::And));
    case RuleId::E4Prime:
      return splice_child(t, first_child_of_kind(t, TermKind::Sand));
    case RuleId::E5:
    case RuleId::E6:
    case RuleId::E6Prime:
      return t.child(0);
    case RuleId::E10:
    case RuleId::E10Prime:
      return distribute_over_or(t, first_child_of_kind(t, TermKind::Or));
    case RuleId::E11: {
      auto pair = duplicate_pair(t);
      if (!pair) throw Error("E11 applied to a duplicate-free OR");
      std::vector<Term> kids;
      kids.reserve(t.arity() - 1);
      for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i != pair->second) kids.push_back(t.child(i));
      }
      return Term::make(t.kind(), std::move(kids));
    }
  }
  throw Error("unknown rule");
}

// Post-order search; position is accumulated in reverse.
std::optional<RewriteStep> step_innermost(const Term& t) {
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (auto sub = step_innermost(t.child(i))) {
      std::vector<Term> kids(t.children().begin(), t.children().end());
      kids[i] = std::move(sub->result);
      sub->result = Term::make(t.kind(), std::move(kids));
      sub->position.push_back(i);
      return sub;
    }
  }
  std::vector<RuleId> rules = rules_at(t);
  if (rules.empty()) return std::nullopt;
  return RewriteStep{rules.front(), {}, apply_rule(t, rules.front())};
}

// Pre-order search; position accumulated in reverse.
std::optional<RewriteStep> step_outermost(const Term& t) {
  std::vector<RuleId> rules = rules_at(t);
  if (!rules.empty()) {
    return RewriteStep{rules.front(), {}, apply_rule(t, rules.front())};
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (auto sub = step_outermost(t.child(i))) {
      std::vector<Term> kids(t.children().begin(), t.children().end());
      kids[i] = std::move(sub->result);
      sub->result = Term::make(t.kind(), std::move(kids));
      sub->position.push_back(i);
      return sub;
    }
  }
  return std::nullopt;
}

struct Redex {
  Position position;
  RuleId rule;
};

void collect_redexes(const Term& t, Position& prefix, std::vector<Redex>& out) {
  for (RuleId rule : rules_at(t)) out.push_back(Redex{prefix, rule});
  for (std::size_t i = 0; i < t.arity(); ++i) {
    prefix.push_back(i);
    collect_redexes(t.child(i), prefix, out);
    prefix.pop_back();
  }
}

Term rewrite_at(const Term& t, std::span<const std::size_t> path, RuleId rule) {
  if (path.empty()) return apply_rule(t, rule);
  std::vector<Term> kids(t.children().begin(), t.children().end());
  kids[path.front()] = rewrite_at(kids[path.front()], path.subspan(1), rule);
  return Term::make(t.kind(), std::move(kids));
}

}  // namespace

std::optional<RewriteStep> rewrite_step(const Term& t, const Strategy& s) {
  switch (s.kind) {
    case StrategyKind::LeftmostInnermost: {
      auto step = step_innermost(t);
      if (step) std::reverse(step->position.begin(), step->position.end());
      return step;
    }
    case StrategyKind::LeftmostOutermost: {
      auto step = step_outermost(t);
      if (step) std::reverse(step->position.begin(), step->position.end());
      return step;
    }
    case StrategyKind::SeededRandom: {
      std::vector<Redex> redexes;
      Position prefix;
      collect_redexes(t, prefix, redexes);
      if (redexes.empty()) return std::nullopt;
      std::mt19937_64 rng(s.seed ^ hash_value(t));
      const Redex& chosen =
          redexes[std::uniform_int_distribution<std::size_t>(
              0, redexes.size() - 1)(rng)];
      return RewriteStep{chosen.rule, chosen.position,
                         rewrite_at(t, chosen.position, chosen.rule)};
    }
  }
  return std::nullopt;
}

std::string trace_to_json_lines(const RewriteTrace& trace) {
  std::string out;
  for (const RewriteStep& step : trace.steps) {
    nlohmann::json line;
    line["rule"] = std::string(rule_name(step.rule));
    line["position"] = step.position;
    line["term"] = serialize(step.result);
    out += line.dump();
    out += '\n';
  }
  return out;
}

namespace {

Term normalize_impl(const Term& t, RewriteTrace* trace,
                    const NormalizeOptions& opts) {
  Term current = t;
  while (auto step = rewrite_step(current, opts.strategy)) {
    current = step->result;
    if (node_count(current) > opts.node_cap) {
      throw CapExceededError("term grew past the node cap of " +
                             std::to_string(opts.node_cap));
    }
    if (trace) trace->steps.push_back(std::move(*step));
  }
  return sort_commutative(current);
}

}  // namespace

Term normalize(const Term& t, const NormalizeOptions& opts) {
  return normalize_impl(t, nullptr, opts);
}

Term normalize(const Term& t, RewriteTrace& trace, const NormalizeOptions& opts) {
  return normalize_impl(t, &trace, opts);
}

namespace {

void check_alt_budget(const std::vector<Term>& alts, std::size_t node_cap) {
  std::size_t total = 0;
  for (const Term& alt : alts) {
    total += node_count(alt);
    if (total > node_cap) {
      throw CapExceededError("term grew past the node cap of " +
                             std::to_string(node_cap));
    }
  }
}

// Alternatives of the normal form of t: the OR children when the normal
// form is OR-rooted, otherwise a single element.  Every returned term is a
// sorted AND/SAND alternation; the list itself is sorted and duplicate
// free.
std::vector<Term> normal_alternatives(const Term& t, std::size_t node_cap) {
  switch (t.kind()) {
    case TermKind::Action:
      return {t};

    case TermKind::Or: {
      std::vector<Term> alts;
      for (const Term& c : t.children()) {
        std::vector<Term> part = normal_alternatives(c, node_cap);
        alts.insert(alts.end(), std::make_move_iterator(part.begin()),
                    std::make_move_iterator(part.end()));
      }
      std::sort(alts.begin(), alts.end());
      alts.erase(std::unique(alts.begin(), alts.end()), alts.end());
      check_alt_budget(alts, node_cap);
      return alts;
    }

    case TermKind::And:
    case TermKind::Sand: {
      const bool commutative = t.kind() == TermKind::And;
      std::vector<std::vector<Term>> parts;
      parts.reserve(t.arity());
      std::size_t combos = 1;
      for (const Term& c : t.children()) {
        parts.push_back(normal_alternatives(c, node_cap));
        std::size_t n = parts.back().size();
        if (combos > node_cap / n) {
          throw CapExceededError("term grew past the node cap of " +
                                 std::to_string(node_cap));
        }
        combos *= n;
      }
      std::vector<Term> alts;
      alts.reserve(combos);
      std::vector<std::size_t> index(parts.size(), 0);
      for (std::size_t step = 0; step < combos; ++step) {
        std::vector<Term> kids;
        for (std::size_t i = 0; i < parts.size(); ++i) {
          const Term& pick = parts[i][index[i]];
          if (pick.kind() == t.kind()) {
            auto nested = pick.children();
            kids.insert(kids.end(), nested.begin(), nested.end());
          } else {
            kids.push_back(pick);
          }
        }
        if (commutative) std::sort(kids.begin(), kids.end());
        alts.push_back(kids.size() == 1 ? std::move(kids.front())
                                        : Term::make(t.kind(), std::move(kids)));
        for (std::size_t i = parts.size(); i-- > 0;) {
          if (++index[i] < parts[i].size()) break;
          index[i] = 0;
        }
      }
      std::sort(alts.begin(), alts.end());
      alts.erase(std::unique(alts.begin(), alts.end()), alts.end());
      check_alt_budget(alts, node_cap);
      return alts;
    }
  }
  return {};
}

}  // namespace

Term canonical_normalize(const Term& t, std::size_t node_cap) {
  std::vector<Term> alts = normal_alternatives(t, node_cap);
  if (alts.size() == 1) return alts.front();
  return Term::or_of(std::move(alts));
}

namespace {

bool is_andterm(const Term& t);
bool is_sandterm(const Term& t);

bool is_andterm(const Term& t) {
  if (t.is_action()) return true;
  if (t.kind() != TermKind::And || t.arity() < 2) return false;
  return std::all_of(t.children().begin(), t.children().end(), is_sandterm);
}

bool is_sandterm(const Term& t) {
  if (t.is_action()) return true;
  if (t.kind() != TermKind::Sand || t.arity() < 2) return false;
  return std::all_of(t.children().begin(), t.children().end(), is_andterm);
}

bool is_asterm(const Term& t) { return is_andterm(t) || is_sandterm(t); }

}  // namespace

bool is_normal_form(const Term& t) {
  if (t.kind() != TermKind::Or) return is_asterm(t);
  if (t.arity() < 2) return false;
  std::vector<Term> sorted;
  sorted.reserve(t.arity());
  for (const Term& c : t.children()) {
    if (!is_asterm(c)) return false;
    sorted.push_back(sort_commutative(c));
  }
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

}  // namespace sandtree
