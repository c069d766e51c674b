#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sandtree/errors.hpp"

namespace sandtree {

enum class DecompKind : std::uint8_t { Leaf, Seq, Par };

// Canonical series-parallel decomposition of an SP graph.  The factories
// keep it canonical: Seq and Par are flattened (never nested under the same
// kind) and Par children are key-sorted with duplicates retained, so two SP
// graphs are equal exactly when their decompositions compare equal.
class DecompTerm {
 public:
  static DecompTerm leaf(std::string label);
  static DecompTerm seq(std::vector<DecompTerm> parts);
  static DecompTerm par(std::vector<DecompTerm> parts);

  DecompKind kind() const { return node_->kind; }
  bool is_leaf() const { return node_->kind == DecompKind::Leaf; }
  const std::string& label() const { return node_->label; }
  std::span<const DecompTerm> children() const { return node_->children; }

  // Total order: Leaf < Seq < Par, then label, then children
  // lexicographically.
  friend std::strong_ordering operator<=>(const DecompTerm&, const DecompTerm&);
  friend bool operator==(const DecompTerm&, const DecompTerm&);

  // Composition expression: '.' for sequence, '|' for parallel, parentheses
  // around nested composites, e.g. "(a|b|b).c".
  std::string to_string() const;

 private:
  struct Node {
    DecompKind kind;
    std::string label;
    std::vector<DecompTerm> children;
  };

  explicit DecompTerm(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

using VertexId = std::uint32_t;

// One labeled edge of a source-sink multigraph.  Distinct Edge entries with
// identical fields are distinct multiset members.
struct Edge {
  VertexId from;
  std::string label;
  VertexId to;
};

// A series-parallel source-sink graph over basic actions.  Vertices are the
// dense ids 0..vertex_count()-1 and carry no meaning beyond the current
// value; composition renumbers freely.  The canonical decomposition is
// maintained from construction and serves as the graph's identity.
class SPGraph {
 public:
  VertexId source() const { return data_->source; }
  VertexId sink() const { return data_->sink; }
  std::size_t vertex_count() const { return data_->vertex_count; }
  std::span<const Edge> edges() const { return data_->edges; }
  const DecompTerm& canon() const { return data_->canon; }

  friend SPGraph edge_graph(std::string label);
  friend SPGraph seq_compose(const SPGraph& g, const SPGraph& h);
  friend SPGraph par_compose(const SPGraph& g, const SPGraph& h);

 private:
  struct Data {
    std::size_t vertex_count;
    std::vector<Edge> edges;
    VertexId source;
    VertexId sink;
    DecompTerm canon;
  };

  explicit SPGraph(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

// The single-edge graph for a basic action.
SPGraph edge_graph(std::string label);

// Disjoint union identifying g's sink with h's source.
SPGraph seq_compose(const SPGraph& g, const SPGraph& h);

// Disjoint union identifying the two sources and the two sinks.
SPGraph par_compose(const SPGraph& g, const SPGraph& h);

// Equality up to a label-preserving vertex bijection, decided on the
// canonical decompositions.
bool graphs_equal(const SPGraph& g, const SPGraph& h);

// Ordering on graphs via their decompositions, for deterministic sets.
std::strong_ordering compare_graphs(const SPGraph& g, const SPGraph& h);

// Series-parallel recognition over raw fields.  Validates the source-sink
// invariants (MalformedGraphError on failure), then reduces: every parallel
// edge bundle collapses to one edge, every internal vertex with in-degree 1
// and out-degree 1 contracts to a sequence edge, until a single source-sink
// edge remains.  Throws NotSeriesParallelError when the reduction stalls.
DecompTerm decompose(std::size_t vertex_count, std::span<const Edge> edges,
                     VertexId source, VertexId sink);

// Builds the graph a decomposition describes, by composition.
SPGraph graph_of_decomp(const DecompTerm& d);

// DOT digraph with labeled edges; source and sink are drawn as double
// circles marked "s" and "z".
std::string graph_to_dot(const SPGraph& g);

// Raw-graph JSON:
//   {"vertices":[...ids...],
//    "edges":[{"from":id,"label":string,"to":id}...],
//    "source":id,"sink":id}
// Import accepts string or integer ids, validates, and recognizes the graph
// via decompose.
std::string graph_to_json(const SPGraph& g);
SPGraph graph_from_json(std::string_view text);

}  // namespace sandtree
