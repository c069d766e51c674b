#include "sandtree/semantics.hpp"

#include <algorithm>

#include <json.hpp>

#include "sandtree/errors.hpp"
#include "sandtree/rewrite.hpp"

namespace sandtree {

namespace {

void sort_and_dedup(std::vector<SPGraph>& graphs) {
  std::sort(graphs.begin(), graphs.end(), [](const SPGraph& a, const SPGraph& b) {
    return compare_graphs(a, b) < 0;
  });
  graphs.erase(std::unique(graphs.begin(), graphs.end(),
                           [](const SPGraph& a, const SPGraph& b) {
                             return graphs_equal(a, b);
                           }),
               graphs.end());
}

}  // namespace

GraphSet::GraphSet(std::vector<SPGraph> members) : members_(std::move(members)) {
  sort_and_dedup(members_);
}

bool GraphSet::contains(const SPGraph& g) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), g,
                             [](const SPGraph& a, const SPGraph& b) {
                               return compare_graphs(a, b) < 0;
                             });
  return it != members_.end() && graphs_equal(*it, g);
}

bool operator==(const GraphSet& a, const GraphSet& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!graphs_equal(a.members_[i], b.members_[i])) return false;
  }
  return true;
}

namespace {

std::vector<SPGraph> denote(const Term& t, std::size_t cap) {
  switch (t.kind()) {
    case TermKind::Action:
      return {edge_graph(t.label())};

    case TermKind::Or: {
      std::vector<SPGraph> acc;
      for (const Term& c : t.children()) {
        std::vector<SPGraph> part = denote(c, cap);
        acc.insert(acc.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
      }
      sort_and_dedup(acc);
      if (acc.size() > cap) {
        throw CapExceededError("graph set exceeds cap of " + std::to_string(cap));
      }
      return acc;
    }

    case TermKind::And:
    case TermKind::Sand: {
      std::vector<std::vector<SPGraph>> parts;
      parts.reserve(t.arity());
      std::size_t product = 1;
      for (const Term& c : t.children()) {
        parts.push_back(denote(c, cap));
        std::size_t n = parts.back().size();
        if (product > cap / n) {
          throw CapExceededError("graph product exceeds cap of " +
                                 std::to_string(cap));
        }
        product *= n;
      }
      const bool sequential = t.kind() == TermKind::Sand;
      std::vector<SPGraph> acc;
      acc.reserve(product);
      std::vector<std::size_t> index(parts.size(), 0);
      for (std::size_t step = 0; step < product; ++step) {
        SPGraph combined = parts[0][index[0]];
        for (std::size_t i = 1; i < parts.size(); ++i) {
          combined = sequential ? seq_compose(combined, parts[i][index[i]])
                                : par_compose(combined, parts[i][index[i]]);
        }
        acc.push_back(std::move(combined));
        for (std::size_t i = parts.size(); i-- > 0;) {
          if (++index[i] < parts[i].size()) break;
          index[i] = 0;
        }
      }
      sort_and_dedup(acc);
      return acc;
    }
  }
  return {};
}

}  // namespace

GraphSet sp_semantics(const Term& t, std::size_t cap) {
  return GraphSet(denote(t, cap));
}

MultisetDenotation::MultisetDenotation(std::vector<ActionMultiset> members)
    : members_(std::move(members)) {
  for (ActionMultiset& m : members_) std::sort(m.begin(), m.end());
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

MultisetDenotation multiset_semantics(const Term& t, std::size_t cap) {
  if (!is_standard(t)) {
    throw NotStandardTreeError(
        "multiset semantics is defined for SAND-free trees only");
  }
  GraphSet gs = sp_semantics(t, cap);
  std::vector<ActionMultiset> members;
  members.reserve(gs.size());
  for (const SPGraph& g : gs.members()) {
    ActionMultiset labels;
    labels.reserve(g.edges().size());
    for (const Edge& e : g.edges()) labels.push_back(e.label);
    members.push_back(std::move(labels));
  }
  return MultisetDenotation(std::move(members));
}

namespace {

Term term_of_decomp(const DecompTerm& d) {
  if (d.is_leaf()) return Term::action(d.label());
  std::vector<Term> kids;
  kids.reserve(d.children().size());
  for (const DecompTerm& c : d.children()) kids.push_back(term_of_decomp(c));
  return Term::make(
      d.kind() == DecompKind::Seq ? TermKind::Sand : TermKind::And,
      std::move(kids));
}

}  // namespace

Term term_of_graphset(const GraphSet& gs) {
  if (gs.empty()) {
    throw EmptyGraphSetError("no term denotes the empty graph set");
  }
  std::vector<Term> alternatives;
  alternatives.reserve(gs.size());
  for (const SPGraph& g : gs.members()) {
    alternatives.push_back(term_of_decomp(g.canon()));
  }
  Term result = alternatives.size() == 1 ? alternatives.front()
                                         : Term::or_of(std::move(alternatives));
  return sort_commutative(result);
}

bool equivalent(const Term& t1, const Term& t2) {
  return normalize(t1) == normalize(t2);
}

bool equivalent_by_semantics(const Term& t1, const Term& t2, std::size_t cap) {
  return sp_semantics(t1, cap) == sp_semantics(t2, cap);
}

std::string graphset_to_dot(const GraphSet& gs) {
  std::string out;
  for (const SPGraph& g : gs.members()) out += graph_to_dot(g);
  return out;
}

std::string graphset_to_json(const GraphSet& gs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SPGraph& g : gs.members()) {
    arr.push_back(nlohmann::json::parse(graph_to_json(g)));
  }
  return arr.dump();
}

}  // namespace sandtree
