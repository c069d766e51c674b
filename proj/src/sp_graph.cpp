#include "sandtree/sp_graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace sandtree {

DecompTerm DecompTerm::leaf(std::string label) {
  if (label.empty()) throw Error("edge label must be nonempty");
  return DecompTerm(std::make_shared<const Node>(
      Node{DecompKind::Leaf, std::move(label), {}}));
}

DecompTerm DecompTerm::seq(std::vector<DecompTerm> parts) {
  std::vector<DecompTerm> flat;
  for (DecompTerm& p : parts) {
    if (p.kind() == DecompKind::Seq) {
      auto kids = p.children();
      flat.insert(flat.end(), kids.begin(), kids.end());
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.size() == 1) return flat.front();
  if (flat.size() < 2) throw Error("sequence needs at least two parts");
  return DecompTerm(
      std::make_shared<const Node>(Node{DecompKind::Seq, {}, std::move(flat)}));
}

DecompTerm DecompTerm::par(std::vector<DecompTerm> parts) {
  std::vector<DecompTerm> flat;
  for (DecompTerm& p : parts) {
    if (p.kind() == DecompKind::Par) {
      auto kids = p.children();
      flat.insert(flat.end(), kids.begin(), kids.end());
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.size() == 1) return flat.front();
  if (flat.size() < 2) throw Error("parallel needs at least two parts");
  std::sort(flat.begin(), flat.end());
  return DecompTerm(
      std::make_shared<const Node>(Node{DecompKind::Par, {}, std::move(flat)}));
}

std::strong_ordering operator<=>(const DecompTerm& a, const DecompTerm& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.is_leaf()) return a.label() <=> b.label();
  auto ak = a.children();
  auto bk = b.children();
  return std::lexicographical_compare_three_way(ak.begin(), ak.end(),
                                                bk.begin(), bk.end());
}

bool operator==(const DecompTerm& a, const DecompTerm& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::string DecompTerm::to_string() const {
  if (is_leaf()) return label();
  std::string out;
  const char sep = kind() == DecompKind::Seq ? '.' : '|';
  bool first = true;
  for (const DecompTerm& c : children()) {
    if (!first) out += sep;
    first = false;
    if (c.is_leaf()) {
      out += c.label();
    } else {
      out += '(';
      out += c.to_string();
      out += ')';
    }
  }
  return out;
}

SPGraph edge_graph(std::string label) {
  DecompTerm canon = DecompTerm::leaf(label);
  return SPGraph(std::make_shared<const SPGraph::Data>(SPGraph::Data{
      2, {Edge{0, std::move(label), 1}}, 0, 1, std::move(canon)}));
}

SPGraph seq_compose(const SPGraph& g, const SPGraph& h) {
  // h's source becomes g's sink; the rest of h gets fresh ids.
  std::vector<VertexId> remap(h.vertex_count());
  VertexId next = static_cast<VertexId>(g.vertex_count());
  for (VertexId v = 0; v < h.vertex_count(); ++v) {
    remap[v] = (v == h.source()) ? g.sink() : next++;
  }
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  edges.reserve(edges.size() + h.edges().size());
  for (const Edge& e : h.edges()) {
    edges.push_back(Edge{remap[e.from], e.label, remap[e.to]});
  }
  DecompTerm canon = DecompTerm::seq({g.canon(), h.canon()});
  return SPGraph(std::make_shared<const SPGraph::Data>(
      SPGraph::Data{g.vertex_count() + h.vertex_count() - 1, std::move(edges),
                    g.source(), remap[h.sink()], std::move(canon)}));
}

SPGraph par_compose(const SPGraph& g, const SPGraph& h) {
  std::vector<VertexId> remap(h.vertex_count());
  VertexId next = static_cast<VertexId>(g.vertex_count());
  for (VertexId v = 0; v < h.vertex_count(); ++v) {
    remap[v] = (v == h.source()) ? g.source()
             : (v == h.sink())   ? g.sink()
                                 : next++;
  }
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  edges.reserve(edges.size() + h.edges().size());
  for (const Edge& e : h.edges()) {
    edges.push_back(Edge{remap[e.from], e.label, remap[e.to]});
  }
  DecompTerm canon = DecompTerm::par({g.canon(), h.canon()});
  return SPGraph(std::make_shared<const SPGraph::Data>(
      SPGraph::Data{g.vertex_count() + h.vertex_count() - 2, std::move(edges),
                    g.source(), g.sink(), std::move(canon)}));
}

bool graphs_equal(const SPGraph& g, const SPGraph& h) {
  return g.canon() == h.canon();
}

std::strong_ordering compare_graphs(const SPGraph& g, const SPGraph& h) {
  return g.canon() <=> h.canon();
}

namespace {

// One reducible edge during recognition: its endpoints plus the
// decomposition of everything already merged into it.
struct WorkEdge {
  VertexId from;
  VertexId to;
  DecompTerm decomp;
};

void validate_source_sink(std::size_t vertex_count, std::span<const Edge> edges,
                          VertexId source, VertexId sink) {
  if (source >= vertex_count || sink >= vertex_count) {
    throw MalformedGraphError("source or sink id out of range");
  }
  if (source == sink) {
    throw MalformedGraphError("source and sink must differ");
  }
  std::vector<std::size_t> indeg(vertex_count, 0), outdeg(vertex_count, 0);
  for (const Edge& e : edges) {
    if (e.from >= vertex_count || e.to >= vertex_count) {
      throw MalformedGraphError("edge endpoint out of range");
    }
    if (e.label.empty()) {
      throw MalformedGraphError("edge label must be nonempty");
    }
    ++outdeg[e.from];
    ++indeg[e.to];
  }
  if (indeg[source] != 0) {
    throw MalformedGraphError("source has incoming edges");
  }
  if (outdeg[sink] != 0) {
    throw MalformedGraphError("sink has outgoing edges");
  }
  for (VertexId v = 0; v < vertex_count; ++v) {
    if (v != source && indeg[v] == 0) {
      throw MalformedGraphError("vertex " + std::to_string(v) +
                                " is a second source");
    }
    if (v != sink && outdeg[v] == 0) {
      throw MalformedGraphError("vertex " + std::to_string(v) +
                                " is a second sink");
    }
  }
}

}  // namespace

DecompTerm decompose(std::size_t vertex_count, std::span<const Edge> edges,
                     VertexId source, VertexId sink) {
  validate_source_sink(vertex_count, edges, source, sink);

  std::vector<WorkEdge> work;
  work.reserve(edges.size());
  for (const Edge& e : edges) {
    work.push_back(WorkEdge{e.from, e.to, DecompTerm::leaf(e.label)});
  }

  bool changed = true;
  while (changed) {
    changed = false;

    // Parallel step: merge every bundle of edges sharing (from, to).
    std::map<std::pair<VertexId, VertexId>, std::vector<std::size_t>> bundles;
    for (std::size_t i = 0; i < work.size(); ++i) {
      bundles[{work[i].from, work[i].to}].push_back(i);
    }
    if (bundles.size() < work.size()) {
      std::vector<WorkEdge> merged;
      merged.reserve(bundles.size());
      for (auto& [ends, members] : bundles) {
        if (members.size() == 1) {
          merged.push_back(std::move(work[members.front()]));
        } else {
          std::vector<DecompTerm> parts;
          parts.reserve(members.size());
          for (std::size_t i : members) parts.push_back(std::move(work[i].decomp));
          merged.push_back(
              WorkEdge{ends.first, ends.second, DecompTerm::par(std::move(parts))});
        }
      }
      work = std::move(merged);
      changed = true;
      continue;
    }

    // Series step: contract one internal vertex with in-degree 1 and
    // out-degree 1.  Skipped when contraction would create a self loop,
    // which only arises on cyclic (hence non-SP) input.
    std::vector<std::size_t> indeg(vertex_count, 0), outdeg(vertex_count, 0);
    std::vector<std::size_t> in_edge(vertex_count, 0), out_edge(vertex_count, 0);
    for (std::size_t i = 0; i < work.size(); ++i) {
      ++outdeg[work[i].from];
      out_edge[work[i].from] = i;
      ++indeg[work[i].to];
      in_edge[work[i].to] = i;
    }
    for (VertexId v = 0; v < vertex_count; ++v) {
      if (v == source || v == sink) continue;
      if (indeg[v] != 1 || outdeg[v] != 1) continue;
      std::size_t ei = in_edge[v];
      std::size_t eo = out_edge[v];
      if (ei == eo) continue;  // self loop at v
      if (work[ei].from == work[eo].to) continue;  // would create a self loop
      WorkEdge joined{work[ei].from, work[eo].to,
                      DecompTerm::seq({std::move(work[ei].decomp),
                                       std::move(work[eo].decomp)})};
      std::vector<WorkEdge> next;
      next.reserve(work.size() - 1);
      for (std::size_t i = 0; i < work.size(); ++i) {
        if (i != ei && i != eo) next.push_back(std::move(work[i]));
      }
      next.push_back(std::move(joined));
      work = std::move(next);
      changed = true;
      break;
    }
  }

  if (work.size() == 1 && work.front().from == source &&
      work.front().to == sink) {
    return work.front().decomp;
  }
  throw NotSeriesParallelError(
      "reduction stalled with " + std::to_string(work.size()) +
      " edges remaining; graph is not series-parallel");
}

SPGraph graph_of_decomp(const DecompTerm& d) {
  if (d.is_leaf()) return edge_graph(d.label());
  auto kids = d.children();
  SPGraph acc = graph_of_decomp(kids.front());
  for (std::size_t i = 1; i < kids.size(); ++i) {
    SPGraph next = graph_of_decomp(kids[i]);
    acc = d.kind() == DecompKind::Seq ? seq_compose(acc, next)
                                      : par_compose(acc, next);
  }
  return acc;
}

std::string graph_to_dot(const SPGraph& g) {
  std::ostringstream out;
  out << "digraph sp {\n  rankdir=LR;\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (v == g.source()) {
      out << "  v" << v << " [shape=doublecircle label=\"s\"];\n";
    } else if (v == g.sink()) {
      out << "  v" << v << " [shape=doublecircle label=\"z\"];\n";
    } else {
      out << "  v" << v << " [shape=circle label=\"\"];\n";
    }
  }
  for (const Edge& e : g.edges()) {
    out << "  v" << e.from << " -> v" << e.to << " [label=\"" << e.label
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string graph_to_json(const SPGraph& g) {
  nlohmann::json v;
  auto verts = nlohmann::json::array();
  for (VertexId i = 0; i < g.vertex_count(); ++i) verts.push_back(i);
  v["vertices"] = std::move(verts);
  auto edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back({{"from", e.from}, {"label", e.label}, {"to", e.to}});
  }
  v["edges"] = std::move(edges);
  v["source"] = g.source();
  v["sink"] = g.sink();
  return v.dump();
}

namespace {

std::string json_id_to_key(const nlohmann::json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw JsonSchemaError("vertex id must be a string or integer", path);
}

}  // namespace

SPGraph graph_from_json(std::string_view text) {
  nlohmann::json v = nlohmann::json::parse(text, nullptr, false);
  if (v.is_discarded()) throw JsonSchemaError("input is not valid JSON", "");
  if (!v.is_object()) throw JsonSchemaError("expected an object", "");
  for (const char* key : {"vertices", "edges", "source", "sink"}) {
    if (!v.contains(key)) {
      throw JsonSchemaError("missing field", std::string("/") + key);
    }
  }
  if (!v["vertices"].is_array()) {
    throw JsonSchemaError("\"vertices\" must be an array", "/vertices");
  }
  std::map<std::string, VertexId> ids;
  for (std::size_t i = 0; i < v["vertices"].size(); ++i) {
    std::string key =
        json_id_to_key(v["vertices"][i], "/vertices/" + std::to_string(i));
    if (!ids.emplace(key, static_cast<VertexId>(ids.size())).second) {
      throw JsonSchemaError("duplicate vertex id '" + key + "'",
                            "/vertices/" + std::to_string(i));
    }
  }
  auto lookup = [&ids](const std::string& key,
                       const std::string& path) -> VertexId {
    auto it = ids.find(key);
    if (it == ids.end()) {
      throw JsonSchemaError("unknown vertex id '" + key + "'", path);
    }
    return it->second;
  };
  if (!v["edges"].is_array()) {
    throw JsonSchemaError("\"edges\" must be an array", "/edges");
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < v["edges"].size(); ++i) {
    const auto& e = v["edges"][i];
    std::string path = "/edges/" + std::to_string(i);
    if (!e.is_object() || !e.contains("from") || !e.contains("label") ||
        !e.contains("to")) {
      throw JsonSchemaError("edge needs \"from\", \"label\", \"to\"", path);
    }
    if (!e["label"].is_string()) {
      throw JsonSchemaError("edge label must be a string", path + "/label");
    }
    edges.push_back(Edge{lookup(json_id_to_key(e["from"], path + "/from"),
                                path + "/from"),
                         e["label"].get<std::string>(),
                         lookup(json_id_to_key(e["to"], path + "/to"),
                                path + "/to")});
  }
  VertexId source = lookup(json_id_to_key(v["source"], "/source"), "/source");
  VertexId sink = lookup(json_id_to_key(v["sink"], "/sink"), "/sink");
  DecompTerm canon = decompose(ids.size(), edges, source, sink);
  return graph_of_decomp(canon);
}

}  // namespace sandtree
