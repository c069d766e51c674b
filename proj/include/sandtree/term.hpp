#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sandtree {

// Node tags in canonical order; the order is load-bearing for the total
// order on terms (Action < Or < And < Sand).
enum class TermKind : std::uint8_t { Action, Or, And, Sand };

// Keyword of the operator in the textual syntax ("OR", "AND", "SAND").
std::string_view kind_name(TermKind kind);

// true for a nonempty [A-Za-z_][A-Za-z0-9_-]* string that is not one of the
// operator keywords.
bool is_valid_action_label(std::string_view label);

// A term of the SAND attack tree algebra: a basic action leaf or an
// OR/AND/SAND node with one or more children.  Terms are immutable and
// share structure; copies are cheap and values are safe to use across
// threads.
class Term {
 public:
  static Term action(std::string label);
  static Term make(TermKind kind, std::vector<Term> children);
  static Term or_of(std::vector<Term> children);
  static Term and_of(std::vector<Term> children);
  static Term sand_of(std::vector<Term> children);

  TermKind kind() const { return node_->kind; }
  bool is_action() const { return node_->kind == TermKind::Action; }

  // Action nodes only.
  const std::string& label() const { return node_->label; }

  // Operator nodes; empty span for actions.
  std::span<const Term> children() const { return node_->children; }
  std::size_t arity() const { return node_->children.size(); }
  const Term& child(std::size_t i) const { return node_->children[i]; }

  // Total structural order: kind tag, then action label, then children
  // lexicographically.  Equality holds exactly for structurally identical
  // terms, which makes the order usable as a canonical key.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b);

  friend Term sort_commutative(const Term& t);

 private:
  struct Node {
    TermKind kind;
    std::string label;
    std::vector<Term> children;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  bool same_node(const Term& other) const { return node_ == other.node_; }

  std::shared_ptr<const Node> node_;
};

std::size_t node_count(const Term& t);

// Structural hash, consistent with operator==.
std::size_t hash_value(const Term& t);

// true iff t contains no SAND node, i.e. t is a standard attack tree.
bool is_standard(const Term& t);

// Children of every OR and AND node recursively sorted into the canonical
// order; SAND children keep their order.  Idempotent, and semantics
// preserving since OR and AND are commutative.
Term sort_commutative(const Term& t);

using Norm = boost::multiprecision::cpp_int;

// Termination measure of the rewriting system: actions weigh 1, an OR node
// weighs the sum of its children plus 2, AND and SAND nodes weigh twice the
// product of their children.  The product form outgrows 64 bits on modest
// trees, hence the big integer.
Norm norm(const Term& t);

}  // namespace sandtree
