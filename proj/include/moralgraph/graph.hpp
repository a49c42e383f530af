#pragma once

// Simple undirected graphs, DAGs, vertex orderings and the elimination
// primitives the rest of the library is built on.
//
// Vertices are identified by dense indices in insertion order; the index is
// the stable total order used for every tie-break and every set-valued
// output. Names are opaque tokens kept for I/O.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "moralgraph/errors.hpp"

namespace moralgraph {

using VertexId = std::size_t;
using VertexSet = boost::dynamic_bitset<std::uint64_t>;

/// Unordered vertex pair stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(VertexId a, VertexId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Sorted, duplicate-free list of edges.
using EdgeList = std::vector<Edge>;

/// Edges added to a graph by a triangulation or by moralization. Never
/// contains an edge of the graph it was computed from.
using FillSet = EdgeList;

inline void normalize(EdgeList& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

template <class Fn>
void for_each_member(const VertexSet& s, Fn&& fn) {
  for (auto i = s.find_first(); i != VertexSet::npos; i = s.find_next(i)) fn(static_cast<VertexId>(i));
}

inline std::vector<VertexId> members(const VertexSet& s) {
  std::vector<VertexId> out;
  out.reserve(s.count());
  for_each_member(s, [&](VertexId v) { out.push_back(v); });
  return out;
}

class UndirectedGraph {
 public:
  UndirectedGraph() = default;

  explicit UndirectedGraph(const std::vector<std::string>& names) {
    for (const auto& n : names) add_vertex(n);
  }

  VertexId add_vertex(std::string name) {
    if (name.empty()) throw DomainError("vertex name must be non-empty");
    if (index_.contains(name)) throw DomainError("duplicate vertex '" + name + "'");
    const VertexId id = names_.size();
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    for (auto& row : adj_) row.push_back(false);
    adj_.emplace_back(names_.size());
    return id;
  }

  VertexId ensure_vertex(std::string_view name) {
    if (auto id = find(name)) return *id;
    return add_vertex(std::string(name));
  }

  /// Returns false when the edge already exists.
  bool add_edge(VertexId a, VertexId b) {
    check_vertex(a);
    check_vertex(b);
    if (a == b) throw DomainError("self-loop on '" + names_[a] + "'");
    if (adj_[a][b]) return false;
    adj_[a][b] = true;
    adj_[b][a] = true;
    ++num_edges_;
    return true;
  }

  bool add_edge(std::string_view a, std::string_view b) { return add_edge(id(a), id(b)); }

  void add_edges(const EdgeList& edges) {
    for (const auto& e : edges) add_edge(e.u, e.v);
  }

  bool remove_edge(VertexId a, VertexId b) {
    check_vertex(a);
    check_vertex(b);
    if (a == b || !adj_[a][b]) return false;
    adj_[a][b] = false;
    adj_[b][a] = false;
    --num_edges_;
    return true;
  }

  std::size_t num_vertices() const noexcept { return names_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }

  bool has_edge(VertexId a, VertexId b) const {
    check_vertex(a);
    check_vertex(b);
    return adj_[a][b];
  }

  const VertexSet& neighbors(VertexId v) const {
    check_vertex(v);
    return adj_[v];
  }

  std::size_t degree(VertexId v) const { return neighbors(v).count(); }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (const auto& row : adj_) best = std::max(best, row.count());
    return best;
  }

  const std::string& name(VertexId v) const {
    check_vertex(v);
    return names_[v];
  }

  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<VertexId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  VertexId id(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw DomainError("unknown vertex '" + std::string(name) + "'");
  }

  EdgeList edges() const {
    EdgeList out;
    out.reserve(num_edges_);
    for (VertexId u = 0; u < adj_.size(); ++u)
      for (auto v = adj_[u].find_next(u); v != VertexSet::npos; v = adj_[u].find_next(v)) out.push_back({u, v});
    return out;
  }

  VertexSet empty_set() const { return VertexSet(num_vertices()); }

  VertexSet full_set() const {
    VertexSet s(num_vertices());
    s.set();
    return s;
  }

  bool is_connected() const {
    const auto n = num_vertices();
    if (n == 0) return true;
    VertexSet seen(n), frontier(n);
    seen[0] = true;
    frontier[0] = true;
    while (frontier.any()) {
      VertexSet next(n);
      for_each_member(frontier, [&](VertexId v) { next |= adj_[v]; });
      next -= seen;
      seen |= next;
      frontier = std::move(next);
    }
    return seen.all();
  }

  /// Subgraph induced by `keep`, vertices in their original relative order.
  UndirectedGraph induced(const VertexSet& keep) const {
    UndirectedGraph out;
    std::vector<VertexId> remap(num_vertices(), VertexId(-1));
    for_each_member(keep, [&](VertexId v) { remap[v] = out.add_vertex(names_[v]); });
    for (const auto& e : edges())
      if (keep[e.u] && keep[e.v]) out.add_edge(remap[e.u], remap[e.v]);
    return out;
  }

  UndirectedGraph without_vertex(VertexId v) const {
    auto keep = full_set();
    keep[v] = false;
    return induced(keep);
  }

  UndirectedGraph with_edges(const EdgeList& extra) const {
    UndirectedGraph out = *this;
    out.add_edges(extra);
    return out;
  }

  std::string edge_name(const Edge& e) const { return name(e.u) + "-" + name(e.v); }

  friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
    return a.names_ == b.names_ && a.adj_ == b.adj_;
  }

 private:
  void check_vertex(VertexId v) const {
    if (v >= names_.size()) throw DomainError("vertex index " + std::to_string(v) + " out of range");
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<VertexSet> adj_;
  std::size_t num_edges_ = 0;
};

/// Directed acyclic graph; acyclicity is checked by consumers through
/// topological_order(), arcs in both directions are rejected on insertion.
class Dag {
 public:
  VertexId add_vertex(std::string name) {
    if (name.empty()) throw DomainError("vertex name must be non-empty");
    if (index_.contains(name)) throw DomainError("duplicate vertex '" + name + "'");
    const VertexId id = names_.size();
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    for (auto& row : parents_) row.push_back(false);
    parents_.emplace_back(names_.size());
    return id;
  }

  VertexId ensure_vertex(std::string_view name) {
    if (auto id = find(name)) return *id;
    return add_vertex(std::string(name));
  }

  std::optional<VertexId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool add_arc(VertexId from, VertexId to) {
    check_vertex(from);
    check_vertex(to);
    if (from == to) throw DomainError("self-loop on '" + names_[from] + "'");
    if (parents_[from][to])
      throw DomainError("arcs in both directions between '" + names_[from] + "' and '" + names_[to] + "'");
    if (parents_[to][from]) return false;
    parents_[to][from] = true;
    ++num_arcs_;
    return true;
  }

  bool add_arc(std::string_view from, std::string_view to) { return add_arc(id(from), id(to)); }

  std::size_t num_vertices() const noexcept { return names_.size(); }
  std::size_t num_arcs() const noexcept { return num_arcs_; }

  const VertexSet& parents(VertexId v) const {
    check_vertex(v);
    return parents_[v];
  }

  bool has_arc(VertexId from, VertexId to) const { return parents(to)[from]; }

  const std::string& name(VertexId v) const {
    check_vertex(v);
    return names_[v];
  }

  const std::vector<std::string>& names() const noexcept { return names_; }

  VertexId id(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw DomainError("unknown vertex '" + std::string(name) + "'");
    return it->second;
  }

  /// Arcs as (from, to), sorted by (from, to).
  std::vector<std::pair<VertexId, VertexId>> arcs() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (VertexId to = 0; to < parents_.size(); ++to)
      for_each_member(parents_[to], [&](VertexId from) { out.emplace_back(from, to); });
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Kahn's algorithm, smallest ready vertex first; nullopt if cyclic.
  std::optional<std::vector<VertexId>> topological_order() const {
    const auto n = num_vertices();
    std::vector<std::size_t> indeg(n);
    for (VertexId v = 0; v < n; ++v) indeg[v] = parents_[v].count();
    std::vector<VertexId> order;
    VertexSet ready(n);
    for (VertexId v = 0; v < n; ++v)
      if (indeg[v] == 0) ready[v] = true;
    while (ready.any()) {
      const auto v = static_cast<VertexId>(ready.find_first());
      ready[v] = false;
      order.push_back(v);
      for (VertexId c = 0; c < n; ++c)
        if (parents_[c][v] && --indeg[c] == 0) ready[c] = true;
    }
    if (order.size() != n) return std::nullopt;
    return order;
  }

 private:
  void check_vertex(VertexId v) const {
    if (v >= names_.size()) throw DomainError("vertex index " + std::to_string(v) + " out of range");
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<VertexSet> parents_;
  std::size_t num_arcs_ = 0;
};

/// Bijection between positions 0..n-1 and vertex ids 0..n-1. Position p
/// here is position p+1 in the usual 1-based notation.
class VertexOrdering {
 public:
  VertexOrdering() = default;

  explicit VertexOrdering(std::vector<VertexId> order) : order_(std::move(order)), position_(order_.size()) {
    std::vector<bool> seen(order_.size(), false);
    for (std::size_t p = 0; p < order_.size(); ++p) {
      const auto v = order_[p];
      if (v >= order_.size() || seen[v]) throw DomainError("ordering is not a permutation of 0.." +
                                                           std::to_string(order_.size()) + "-1");
      seen[v] = true;
      position_[v] = p;
    }
  }

  static VertexOrdering identity(std::size_t n) {
    std::vector<VertexId> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    return VertexOrdering(std::move(order));
  }

  std::size_t size() const noexcept { return order_.size(); }
  VertexId operator[](std::size_t pos) const { return order_.at(pos); }
  std::size_t position(VertexId v) const { return position_.at(v); }
  std::span<const VertexId> vertices() const noexcept { return order_; }

  VertexOrdering reversed() const { return VertexOrdering(std::vector<VertexId>(order_.rbegin(), order_.rend())); }

  friend bool operator==(const VertexOrdering&, const VertexOrdering&) = default;

 private:
  std::vector<VertexId> order_;
  std::vector<std::size_t> position_;
};

inline void check_ordering(const UndirectedGraph& g, const VertexOrdering& alpha) {
  if (alpha.size() != g.num_vertices())
    throw DomainError("ordering covers " + std::to_string(alpha.size()) + " vertices, graph has " +
                      std::to_string(g.num_vertices()));
}

inline VertexOrdering ordering_from_names(const UndirectedGraph& g, const std::vector<std::string>& names) {
  std::vector<VertexId> order;
  order.reserve(names.size());
  for (const auto& n : names) order.push_back(g.id(n));
  VertexOrdering alpha(std::move(order));
  check_ordering(g, alpha);
  return alpha;
}

/// Restricts an ordering search to orderings that place one vertex first or
/// last.
struct OrderingRestriction {
  enum class Kind { None, FixFirst, FixLast };

  Kind kind = Kind::None;
  VertexId vertex = 0;

  static OrderingRestriction none() { return {}; }
  static OrderingRestriction first(VertexId v) { return {Kind::FixFirst, v}; }
  static OrderingRestriction last(VertexId v) { return {Kind::FixLast, v}; }

  bool admits(const VertexOrdering& alpha) const {
    if (alpha.size() == 0 || kind == Kind::None) return true;
    if (kind == Kind::FixFirst) return alpha[0] == vertex;
    return alpha[alpha.size() - 1] == vertex;
  }

  void check(std::size_t n) const {
    if (kind != Kind::None && vertex >= n)
      throw DomainError("restricted vertex " + std::to_string(vertex) + " out of range");
  }
};

/// An ordering together with one excess edge set per vertex (indexed by
/// vertex id). The excess of a vertex is removed together with it.
struct EliminationKit {
  VertexOrdering ordering;
  std::vector<EdgeList> excess;

  static EliminationKit with_empty_excesses(VertexOrdering alpha) {
    EliminationKit kit{std::move(alpha), {}};
    kit.excess.resize(kit.ordering.size());
    return kit;
  }
};

// ---------------------------------------------------------------------------
// Elimination primitives

/// Missing edges among the neighbours of x.
inline EdgeList deficiency(const UndirectedGraph& g, VertexId x) {
  const auto nbrs = members(g.neighbors(x));
  EdgeList out;
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j)
      if (!g.has_edge(nbrs[i], nbrs[j])) out.push_back({nbrs[i], nbrs[j]});
  return out;
}

inline bool is_clique(const UndirectedGraph& g, const VertexSet& s) {
  bool ok = true;
  for_each_member(s, [&](VertexId v) {
    if (!ok) return;
    auto rest = s;
    rest[v] = false;
    if (!rest.is_subset_of(g.neighbors(v))) ok = false;
  });
  return ok;
}

inline bool is_simplicial(const UndirectedGraph& g, VertexId x) { return is_clique(g, g.neighbors(x)); }

/// g minus v, minus v's incident edges, minus the excess edges. The excess
/// must consist of existing edges between neighbours of v.
inline UndirectedGraph eliminate(const UndirectedGraph& g, VertexId v, const EdgeList& excess) {
  const auto& nbrs = g.neighbors(v);
  UndirectedGraph work = g;
  for (const auto& e : excess) {
    if (e.u >= g.num_vertices() || e.v >= g.num_vertices() || !nbrs[e.u] || !nbrs[e.v])
      throw ContractViolation("excess edge is not inside the neighbourhood of '" + g.name(v) + "'", 0);
    if (!work.remove_edge(e.u, e.v))
      throw ContractViolation("excess edge " + g.edge_name(e) + " is not an edge of the graph", 0);
  }
  return work.without_vertex(v);
}

struct ChordalityResult {
  bool chordal = false;
  std::optional<VertexOrdering> peo;  // perfect elimination ordering, present iff chordal
};

/// Maximum cardinality search (ties by smallest id); the reverse visit order
/// is checked for zero deficiency at every step.
inline ChordalityResult is_chordal(const UndirectedGraph& g) {
  const auto n = g.num_vertices();
  std::vector<std::size_t> weight(n, 0);
  VertexSet numbered(n);
  std::vector<VertexId> visit;
  visit.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    VertexId best = n;
    for (VertexId v = 0; v < n; ++v)
      if (!numbered[v] && (best == n || weight[v] > weight[best])) best = v;
    numbered[best] = true;
    visit.push_back(best);
    for_each_member(g.neighbors(best), [&](VertexId u) {
      if (!numbered[u]) ++weight[u];
    });
  }
  VertexOrdering peo(std::vector<VertexId>(visit.rbegin(), visit.rend()));
  VertexSet later = g.full_set();
  for (std::size_t p = 0; p < n; ++p) {
    const auto v = peo[p];
    later[v] = false;
    if (!is_clique(g, g.neighbors(v) & later)) return {};
  }
  return {true, std::move(peo)};
}

namespace detail {

inline void bron_kerbosch(const UndirectedGraph& g, VertexSet& r, VertexSet p, VertexSet x,
                          std::vector<std::vector<VertexId>>& out) {
  if (p.none() && x.none()) {
    out.push_back(members(r));
    return;
  }
  // Pivot maximising |P ∩ N(u)|.
  VertexId pivot = 0;
  std::size_t best = 0;
  bool have = false;
  for_each_member(p | x, [&](VertexId u) {
    const auto c = (p & g.neighbors(u)).count();
    if (!have || c > best) {
      pivot = u;
      best = c;
      have = true;
    }
  });
  const VertexSet candidates = p - g.neighbors(pivot);
  for_each_member(candidates, [&](VertexId v) {
    r[v] = true;
    bron_kerbosch(g, r, p & g.neighbors(v), x & g.neighbors(v), out);
    r[v] = false;
    p[v] = false;
    x[v] = true;
  });
}

inline std::vector<std::vector<VertexId>> cliques_from_peo(const UndirectedGraph& g, const VertexOrdering& peo) {
  const auto n = g.num_vertices();
  std::vector<VertexSet> candidates;
  VertexSet later = g.full_set();
  for (std::size_t p = 0; p < n; ++p) {
    const auto v = peo[p];
    later[v] = false;
    VertexSet c = g.neighbors(v) & later;
    c[v] = true;
    candidates.push_back(std::move(c));
  }
  std::vector<std::vector<VertexId>> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < candidates.size() && maximal; ++j)
      if (i != j && candidates[i].is_proper_subset_of(candidates[j])) maximal = false;
    // equal candidates cannot occur: each contains its own vertex, eliminated first
    if (maximal) out.push_back(members(candidates[i]));
  }
  return out;
}

}  // namespace detail

/// Inclusion-maximal cliques, each sorted by id, the list sorted
/// lexicographically. Chordal inputs go through their PEO, anything else
/// through pivoted Bron-Kerbosch.
inline std::vector<std::vector<VertexId>> maximal_cliques(const UndirectedGraph& g) {
  std::vector<std::vector<VertexId>> out;
  if (g.num_vertices() == 0) return out;
  if (auto chordal = is_chordal(g); chordal.chordal) {
    out = detail::cliques_from_peo(g, *chordal.peo);
  } else {
    VertexSet r = g.empty_set();
    detail::bron_kerbosch(g, r, g.full_set(), g.empty_set(), out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t max_clique_size(const UndirectedGraph& g) {
  std::size_t best = 0;
  for (const auto& c : maximal_cliques(g)) best = std::max(best, c.size());
  return best;
}

}  // namespace moralgraph
