#include "sandtree/term.hpp"

#include <algorithm>
#include <cctype>

#include "sandtree/errors.hpp"

namespace sandtree {

std::string_view kind_name(TermKind kind) {
  switch (kind) {
    case TermKind::Action:
      return "ACTION";
    case TermKind::Or:
      return "OR";
    case TermKind::And:
      return "AND";
    case TermKind::Sand:
      return "SAND";
  }
  return "?";
}

bool is_valid_action_label(std::string_view label) {
  if (label.empty()) return false;
  auto head = static_cast<unsigned char>(label.front());
  if (!std::isalpha(head) && label.front() != '_') return false;
  for (char c : label.substr(1)) {
    auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_' && c != '-') return false;
  }
  return label != "OR" && label != "AND" && label != "SAND";
}

Term Term::action(std::string label) {
  if (!is_valid_action_label(label)) {
    throw Error("invalid basic action label '" + label + "'");
  }
  return Term(std::make_shared<const Node>(
      Node{TermKind::Action, std::move(label), {}}));
}

Term Term::make(TermKind kind, std::vector<Term> children) {
  if (kind == TermKind::Action) {
    throw Error("Term::make handles operator nodes; use Term::action");
  }
  if (children.empty()) {
    throw Error(std::string(kind_name(kind)) + " node needs at least one child");
  }
  return Term(std::make_shared<const Node>(Node{kind, {}, std::move(children)}));
}

Term Term::or_of(std::vector<Term> children) {
  return make(TermKind::Or, std::move(children));
}

Term Term::and_of(std::vector<Term> children) {
  return make(TermKind::And, std::move(children));
}

Term Term::sand_of(std::vector<Term> children) {
  return make(TermKind::Sand, std::move(children));
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.is_action()) return a.label() <=> b.label();
  auto ak = a.children();
  auto bk = b.children();
  return std::lexicographical_compare_three_way(ak.begin(), ak.end(),
                                                bk.begin(), bk.end());
}

bool operator==(const Term& a, const Term& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::size_t node_count(const Term& t) {
  std::size_t n = 1;
  for (const Term& c : t.children()) n += node_count(c);
  return n;
}

std::size_t hash_value(const Term& t) {
  // FNV-1a over the structure.
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::size_t>(t.kind()));
  if (t.is_action()) {
    mix(std::hash<std::string>{}(t.label()));
  } else {
    for (const Term& c : t.children()) mix(hash_value(c));
  }
  return h;
}

bool is_standard(const Term& t) {
  if (t.kind() == TermKind::Sand) return false;
  for (const Term& c : t.children()) {
    if (!is_standard(c)) return false;
  }
  return true;
}

Term sort_commutative(const Term& t) {
  if (t.is_action()) return t;
  std::vector<Term> kids;
  kids.reserve(t.arity());
  bool changed = false;
  for (const Term& c : t.children()) {
    Term sc = sort_commutative(c);
    changed = changed || !sc.same_node(c);
    kids.push_back(std::move(sc));
  }
  if (t.kind() != TermKind::Sand && !std::is_sorted(kids.begin(), kids.end())) {
    std::stable_sort(kids.begin(), kids.end());
    changed = true;
  }
  if (!changed) return t;
  return Term::make(t.kind(), std::move(kids));
}

Norm norm(const Term& t) {
  switch (t.kind()) {
    case TermKind::Action:
      return 1;
    case TermKind::Or: {
      Norm sum = 2;
      for (const Term& c : t.children()) sum += norm(c);
      return sum;
    }
    case TermKind::And:
    case TermKind::Sand: {
      Norm product = 2;
      for (const Term& c : t.children()) product *= norm(c);
      return product;
    }
  }
  return 0;  // unreachable
}

}  // namespace sandtree
