#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sandtree/term.hpp"

namespace sandtree {

// The oriented rules of the rewriting system, named after the equations
// they orient left to right:
//   E3   OR(..., OR(Ys), ...)        -> OR(..., Ys, ...)
//   E4   AND(..., AND(Ys), ...)      -> AND(..., Ys, ...)
//   E4'  SAND(Xs, SAND(Ys), Zs)      -> SAND(Xs, Ys, Zs)
//   E5   OR(A)                       -> A
//   E6   AND(A)                      -> A
//   E6'  SAND(A)                     -> A
//   E10  AND(Xs, OR(Ys))             -> OR(AND(Xs,Y1), ..., AND(Xs,Yl))
//   E10' SAND(Xs, OR(Ys), Zs)        -> OR(SAND(Xs,Y1,Zs), ..., SAND(Xs,Yl,Zs))
//   E11  OR(A, A, Xs)                -> OR(A, Xs)
// Matching is modulo commutativity of OR and AND; in particular E11 treats
// OR children as a multiset and compares them after sort_commutative.
enum class RuleId : std::uint8_t {
  E3,
  E4,
  E4Prime,
  E5,
  E6,
  E6Prime,
  E10,
  E10Prime,
  E11,
};

// Display name, e.g. "E4'".
std::string_view rule_name(RuleId id);

enum class StrategyKind : std::uint8_t {
  LeftmostInnermost,
  LeftmostOutermost,
  SeededRandom,
};

struct Strategy {
  StrategyKind kind = StrategyKind::LeftmostInnermost;
  std::uint64_t seed = 0;  // SeededRandom only
};

// Path of child indices from the root to the rewritten node.
using Position = std::vector<std::size_t>;

struct RewriteStep {
  RuleId rule;
  Position position;
  Term result;  // whole term after the step
};

// Applies one rule at one redex chosen by the strategy; empty when t is a
// normal form.  SeededRandom derives its choice from the seed and the
// term's structural hash, so repeated calls on the same term agree while
// successive terms of a derivation vary.
std::optional<RewriteStep> rewrite_step(const Term& t, const Strategy& s = {});

struct RewriteTrace {
  std::vector<RewriteStep> steps;
};

// One JSON object per line: {"rule":...,"position":[...],"term":...}.
std::string trace_to_json_lines(const RewriteTrace& trace);

inline constexpr std::size_t kDefaultNodeCap = 100'000;

struct NormalizeOptions {
  Strategy strategy;
  std::size_t node_cap = kDefaultNodeCap;
};

// Rewrites to the fixpoint of the rule system and sorts the result
// commutatively.  The fixpoint is unique regardless of strategy.  Throws
// CapExceededError when an intermediate term grows past node_cap (the
// distributivity rules can square the term size per layer).
Term normalize(const Term& t, const NormalizeOptions& opts = {});
Term normalize(const Term& t, RewriteTrace& trace,
               const NormalizeOptions& opts = {});

// Single-pass bottom-up normalizer (flatten, collapse unary, distribute,
// dedupe, sort in one recursion); agrees with normalize on every input and
// is the fast path for large terms.
Term canonical_normalize(const Term& t, std::size_t node_cap = kDefaultNodeCap);

// Recognizes the normal-form grammar: a basic action, an AND/SAND
// alternation with every arity >= 2, or an OR root over >= 2 such subterms,
// pairwise distinct after sort_commutative.
bool is_normal_form(const Term& t);

}  // namespace sandtree
