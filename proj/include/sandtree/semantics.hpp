#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sandtree/sp_graph.hpp"
#include "sandtree/term.hpp"

namespace sandtree {

inline constexpr std::size_t kDefaultGraphCap = 10'000;

// A finite set of SP graphs, deduplicated and ordered by canonical
// decomposition so iteration and comparison are deterministic.
class GraphSet {
 public:
  GraphSet() = default;
  explicit GraphSet(std::vector<SPGraph> members);

  std::span<const SPGraph> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const SPGraph& g) const;

  friend bool operator==(const GraphSet& a, const GraphSet& b);

 private:
  std::vector<SPGraph> members_;
};

// The SP semantics: a basic action denotes its single-edge graph, OR the
// union of its children's sets, AND the pointwise parallel composition over
// the children's product, SAND the pointwise sequential composition.
// Throws CapExceededError when an intermediate product would exceed cap.
GraphSet sp_semantics(const Term& t, std::size_t cap = kDefaultGraphCap);

// A multiset of basic-action labels, kept sorted.
using ActionMultiset = std::vector<std::string>;

// The multiset semantics of a standard attack tree: a set of label
// multisets, deduplicated and ordered.
class MultisetDenotation {
 public:
  MultisetDenotation() = default;
  explicit MultisetDenotation(std::vector<ActionMultiset> members);

  std::span<const ActionMultiset> members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  friend bool operator==(const MultisetDenotation& a,
                         const MultisetDenotation& b) = default;

 private:
  std::vector<ActionMultiset> members_;
};

// Projects each graph of the SP semantics to the multiset of its edge
// labels.  For SAND-free trees every denoted graph is purely parallel, so
// the projection loses nothing.  Throws NotStandardTreeError when t
// contains a SAND node.
MultisetDenotation multiset_semantics(const Term& t,
                                      std::size_t cap = kDefaultGraphCap);

// The inverse reading of the semantics on normal forms: each member graph's
// decomposition becomes a term (Leaf -> action, Seq -> SAND, Par -> AND)
// and two or more members are wrapped in OR; the result is commutatively
// sorted and in normal form.  Throws EmptyGraphSetError on the empty set,
// which no term denotes.
Term term_of_graphset(const GraphSet& gs);

// Equivalence under the SP semantics, decided by comparing normal forms.
bool equivalent(const Term& t1, const Term& t2);

// The same decision computed directly on the semantic domain; kept as an
// independent route for cross-checking the rewriting path.
bool equivalent_by_semantics(const Term& t1, const Term& t2,
                             std::size_t cap = kDefaultGraphCap);

// GraphSet export: concatenated DOT digraphs (one per member) or a JSON
// array of raw graphs.
std::string graphset_to_dot(const GraphSet& gs);
std::string graphset_to_json(const GraphSet& gs);

}  // namespace sandtree
