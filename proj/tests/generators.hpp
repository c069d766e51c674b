#pragma once

// Seeded random generators for terms, normal forms, and SP graphs, shared by
// the property tests and the acceptance suite.  Everything is deterministic
// given the seed.

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sandtree/rewrite.hpp"
#include "sandtree/sp_graph.hpp"
#include "sandtree/term.hpp"

namespace sandtree::testing {

template <typename Fn>
Term transform_at(const Term& t, std::span<const std::size_t> path, Fn&& fn) {
  if (path.empty()) return fn(t);
  std::vector<Term> kids(t.children().begin(), t.children().end());
  kids[path.front()] =
      transform_at(kids[path.front()], path.subspan(1), std::forward<Fn>(fn));
  return Term::make(t.kind(), std::move(kids));
}

inline void collect_positions(const Term& t, Position& prefix,
                              std::vector<Position>& out) {
  out.push_back(prefix);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    prefix.push_back(i);
    collect_positions(t.child(i), prefix, out);
    prefix.pop_back();
  }
}

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  std::string action_label(int action_count) {
    int i = pick(0, action_count - 1);
    return std::string(1, static_cast<char>('a' + i));
  }

  // Random term with depth <= max_depth and arity <= max_arity over a pool
  // of action_count single-letter labels.  Leaf probability rises with
  // depth so sizes stay desk-scale.
  Term term(int max_depth = 6, int max_arity = 4, int action_count = 5,
            bool allow_sand = true) {
    return term_rec(max_depth, max_depth, max_arity, action_count, allow_sand);
  }

  Term standard_term(int max_depth = 6, int max_arity = 4,
                     int action_count = 5) {
    return term(max_depth, max_arity, action_count, false);
  }

  // Random term from the normal-form grammar: an AND/SAND alternation or an
  // OR of 2..3 pairwise-distinct alternations.
  Term normal_form(int max_depth = 4, int action_count = 5) {
    if (chance(0.4)) return alternation(max_depth, action_count);
    std::vector<Term> alts;
    int want = pick(2, 3);
    for (int attempt = 0; attempt < want * 8 && (int)alts.size() < want;
         ++attempt) {
      Term candidate = sort_commutative(alternation(max_depth, action_count));
      bool fresh = std::none_of(alts.begin(), alts.end(), [&](const Term& a) {
        return a == candidate;
      });
      if (fresh) alts.push_back(std::move(candidate));
    }
    if (alts.size() < 2) return alts.empty() ? Term::action("a") : alts.front();
    std::sort(alts.begin(), alts.end());
    return Term::or_of(std::move(alts));
  }

  // Random SP graph built compositionally.
  SPGraph sp_graph(int max_depth = 3, int action_count = 5) {
    if (max_depth == 0 || chance(0.45)) {
      return edge_graph(action_label(action_count));
    }
    bool sequential = chance(0.5);
    SPGraph acc = sp_graph(max_depth - 1, action_count);
    int extra = pick(1, 2);
    for (int i = 0; i < extra; ++i) {
      SPGraph next = sp_graph(max_depth - 1, action_count);
      acc = sequential ? seq_compose(acc, next) : par_compose(acc, next);
    }
    return acc;
  }

  // Semantics-preserving mutation: commutative shuffles, unary wraps,
  // same-operator nesting, OR-child duplication, forward rewrite steps.
  Term mutate_equivalent(const Term& t, int rounds = 3, bool allow_sand = true) {
    Term current = t;
    for (int i = 0; i < rounds; ++i) {
      current = mutate_once(current, allow_sand);
    }
    return current;
  }

  bool chance(double p) {
    return std::bernoulli_distribution(p)(rng_);
  }

  int pick(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

 private:
  Term term_rec(int remaining, int max_depth, int max_arity, int action_count,
                bool allow_sand) {
    double depth_used = 1.0 - static_cast<double>(remaining) / max_depth;
    if (remaining == 0 || chance(0.32 + 0.5 * depth_used)) {
      return Term::action(action_label(action_count));
    }
    TermKind kind;
    switch (pick(0, allow_sand ? 2 : 1)) {
      case 0:
        kind = TermKind::Or;
        break;
      case 1:
        kind = TermKind::And;
        break;
      default:
        kind = TermKind::Sand;
        break;
    }
    int arity = std::min(max_arity, weighted_arity());
    std::vector<Term> kids;
    kids.reserve(arity);
    for (int i = 0; i < arity; ++i) {
      kids.push_back(
          term_rec(remaining - 1, max_depth, max_arity, action_count,
                   allow_sand));
    }
    return Term::make(kind, std::move(kids));
  }

  int weighted_arity() {
    int roll = pick(1, 100);
    if (roll <= 15) return 1;
    if (roll <= 65) return 2;
    if (roll <= 90) return 3;
    return 4;
  }

  // Grammar-(3) alternations; parent_kind is the operator the parent used
  // (children must alternate), Action at the top picks freely.
  Term alternation(int max_depth, int action_count,
                   TermKind parent = TermKind::Action) {
    bool can_nest = max_depth > 0;
    if (!can_nest || chance(0.45)) {
      return Term::action(action_label(action_count));
    }
    TermKind kind;
    if (parent == TermKind::And) {
      kind = TermKind::Sand;
    } else if (parent == TermKind::Sand) {
      kind = TermKind::And;
    } else {
      kind = chance(0.5) ? TermKind::And : TermKind::Sand;
    }
    int arity = pick(2, 3);
    std::vector<Term> kids;
    kids.reserve(arity);
    for (int i = 0; i < arity; ++i) {
      kids.push_back(alternation(max_depth - 1, action_count, kind));
    }
    return Term::make(kind, std::move(kids));
  }

  Term mutate_once(const Term& t, bool allow_sand) {
    std::vector<Position> positions;
    Position prefix;
    collect_positions(t, prefix, positions);
    const Position& at = positions[pick(0, (int)positions.size() - 1)];
    switch (pick(0, 4)) {
      case 0:  // commutative shuffle (E1/E2)
        return transform_at(t, at, [this](const Term& n) {
          if (n.is_action() || n.kind() == TermKind::Sand || n.arity() < 2) {
            return n;
          }
          std::vector<Term> kids(n.children().begin(), n.children().end());
          std::shuffle(kids.begin(), kids.end(), rng_);
          return Term::make(n.kind(), std::move(kids));
        });
      case 1: {  // unary wrap (E5/E6/E6' right to left)
        int choice = pick(0, allow_sand ? 2 : 1);
        return transform_at(t, at, [choice](const Term& n) {
          TermKind kind = choice == 0   ? TermKind::Or
                          : choice == 1 ? TermKind::And
                                        : TermKind::Sand;
          return Term::make(kind, {n});
        });
      }
      case 2:  // nest a child range under the same operator (E3/E4/E4')
        return transform_at(t, at, [this](const Term& n) {
          if (n.is_action() || n.arity() < 2) return n;
          int len = pick(1, (int)n.arity());
          int start = pick(0, (int)n.arity() - len);
          std::vector<Term> inner(n.children().begin() + start,
                                  n.children().begin() + start + len);
          std::vector<Term> kids(n.children().begin(),
                                 n.children().begin() + start);
          kids.push_back(Term::make(n.kind(), std::move(inner)));
          kids.insert(kids.end(), n.children().begin() + start + len,
                      n.children().end());
          return Term::make(n.kind(), std::move(kids));
        });
      case 3:  // duplicate an OR child (E11 right to left)
        return transform_at(t, at, [this](const Term& n) {
          if (n.kind() != TermKind::Or) return n;
          std::vector<Term> kids(n.children().begin(), n.children().end());
          kids.push_back(kids[pick(0, (int)kids.size() - 1)]);
          return Term::make(n.kind(), std::move(kids));
        });
      default: {  // one forward rewrite step
        Strategy s{StrategyKind::SeededRandom, rng_()};
        if (auto step = rewrite_step(t, s)) return step->result;
        return t;
      }
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace sandtree::testing
