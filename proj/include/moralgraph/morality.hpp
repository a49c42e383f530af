#pragma once

// Moralization of DAGs and morality recognition through perfect elimination
// kits: a kit is perfect when every vertex is simplicial at its turn, where
// each turn removes the vertex together with its excess edges.

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "moralgraph/graph.hpp"

namespace moralgraph {

struct Moralization {
  UndirectedGraph graph;
  FillSet fill;  // marriage edges between non-adjacent parents
};

inline Moralization moralize(const Dag& d) {
  if (!d.topological_order()) throw DomainError("moralize: input graph has a directed cycle");
  Moralization out{UndirectedGraph(d.names()), {}};
  for (const auto& [from, to] : d.arcs()) out.graph.add_edge(from, to);
  for (VertexId child = 0; child < d.num_vertices(); ++child) {
    const auto pa = members(d.parents(child));
    for (std::size_t i = 0; i < pa.size(); ++i)
      for (std::size_t j = i + 1; j < pa.size(); ++j)
        if (!d.has_arc(pa[i], pa[j]) && !d.has_arc(pa[j], pa[i])) out.fill.push_back(make_edge(pa[i], pa[j]));
  }
  normalize(out.fill);
  out.graph.add_edges(out.fill);
  return out;
}

namespace detail {

// Mutable elimination state over the original vertex ids.
struct WorkGraph {
  std::vector<VertexSet> adj;
  VertexSet alive;

  explicit WorkGraph(const UndirectedGraph& g) : alive(g.full_set()) {
    adj.reserve(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) adj.push_back(g.neighbors(v));
  }

  VertexSet nbrs(VertexId v) const { return adj[v] & alive; }

  bool clique(const VertexSet& s) const {
    bool ok = true;
    for_each_member(s, [&](VertexId v) {
      if (!ok) return;
      auto missing = s - adj[v];
      missing[v] = false;
      ok = missing.none();
    });
    return ok;
  }

  bool simplicial(VertexId v) const { return clique(nbrs(v)); }

  void remove_edge(const Edge& e) {
    adj[e.u][e.v] = false;
    adj[e.v][e.u] = false;
  }

  void remove_vertex(VertexId v) {
    alive[v] = false;
    for (auto& row : adj) row[v] = false;
  }

  EdgeList neighbourhood_edges(VertexId v) const {
    const auto nb = members(nbrs(v));
    EdgeList out;
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (adj[nb[i]][nb[j]]) out.push_back({nb[i], nb[j]});
    return out;
  }

  std::vector<std::uint64_t> key() const {
    std::vector<std::uint64_t> k;
    boost::to_block_range(alive, std::back_inserter(k));
    for_each_member(alive, [&](VertexId v) { boost::to_block_range(adj[v] & alive, std::back_inserter(k)); });
    return k;
  }

  UndirectedGraph to_graph(const UndirectedGraph& like, std::vector<VertexId>& ids) const {
    UndirectedGraph out;
    ids = members(alive);
    std::vector<VertexId> local(adj.size(), VertexId(-1));
    for (auto v : ids) local[v] = out.add_vertex(like.name(v));
    for (auto v : ids)
      for_each_member(adj[v] & alive, [&](VertexId u) {
        if (u > v) out.add_edge(local[v], local[u]);
      });
    return out;
  }
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& k) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto w : k) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ULL;
    return h;
  }
};

}  // namespace detail

/// True iff eliminating the vertices in kit order, each together with its
/// excess, finds every vertex simplicial at its turn.
inline bool verify_pek(const UndirectedGraph& g, const EliminationKit& kit) {
  check_ordering(g, kit.ordering);
  if (kit.excess.size() != g.num_vertices())
    throw DomainError("kit has " + std::to_string(kit.excess.size()) + " excess entries, graph has " +
                      std::to_string(g.num_vertices()) + " vertices");
  detail::WorkGraph work(g);
  for (std::size_t step = 0; step < kit.ordering.size(); ++step) {
    const auto x = kit.ordering[step];
    const auto nb = work.nbrs(x);
    for (const auto& e : kit.excess[x]) {
      if (e.u >= g.num_vertices() || e.v >= g.num_vertices() || !nb[e.u] || !nb[e.v] || !work.adj[e.u][e.v])
        throw ContractViolation("excess edge " + g.edge_name(e) + " of '" + g.name(x) +
                                    "' is not an edge inside its neighbourhood",
                                step + 1);
    }
    if (!work.clique(nb)) return false;
    for (const auto& e : kit.excess[x]) work.remove_edge(e);
    work.remove_vertex(x);
  }
  return true;
}

struct PekSearchOptions {
  std::size_t vertex_cap = 12;
  std::size_t node_budget = 20'000'000;
};

namespace detail {

class PekSearch {
 public:
  PekSearch(const UndirectedGraph& g, const PekSearchOptions& opt) : g_(g), opt_(opt) {}

  std::optional<EliminationKit> run() {
    WorkGraph work(g_);
    if (!search(work)) return std::nullopt;
    EliminationKit kit{VertexOrdering(order_), std::vector<EdgeList>(g_.num_vertices())};
    for (std::size_t i = 0; i < order_.size(); ++i) kit.excess[order_[i]] = excess_[i];
    return kit;
  }

 private:
  bool search(const WorkGraph& work) {
    if (++nodes_ > opt_.node_budget) throw ResourceError("find_pek search budget exhausted", nodes_, opt_.node_budget);
    if (work.alive.none()) return true;

    // A chordal remainder finishes with its PEO and empty excesses.
    std::vector<VertexId> ids;
    const auto rest = work.to_graph(g_, ids);
    if (auto ch = is_chordal(rest); ch.chordal) {
      for (auto local : ch.peo->vertices()) {
        order_.push_back(ids[local]);
        excess_.emplace_back();
      }
      return true;
    }

    auto key = work.key();
    if (failed_.contains(key)) return false;

    for (auto x = work.alive.find_first(); x != VertexSet::npos; x = work.alive.find_next(x))
      if (work.simplicial(x) && try_vertex(work, static_cast<VertexId>(x))) return true;
    failed_.insert(std::move(key));
    return false;
  }

  // Excess subsets: empty first, then the whole neighbourhood edge set, then
  // the remaining subsets by ascending cardinality.
  bool try_vertex(const WorkGraph& work, VertexId x) {
    const auto edges = work.neighbourhood_edges(x);
    const auto m = edges.size();
    auto attempt = [&](const std::vector<std::size_t>& pick) {
      WorkGraph next = work;
      EdgeList ex;
      for (auto i : pick) {
        next.remove_edge(edges[i]);
        ex.push_back(edges[i]);
      }
      next.remove_vertex(x);
      order_.push_back(x);
      excess_.push_back(ex);
      if (search(next)) return true;
      order_.pop_back();
      excess_.pop_back();
      return false;
    };
    std::vector<std::size_t> pick;
    if (attempt(pick)) return true;
    if (m == 0) return false;
    for (std::size_t i = 0; i < m; ++i) pick.push_back(i);
    if (attempt(pick)) return true;
    for (std::size_t k = 1; k < m; ++k) {
      pick.assign(k, 0);
      for (std::size_t i = 0; i < k; ++i) pick[i] = i;
      while (true) {
        if (attempt(pick)) return true;
        // next k-combination of 0..m-1 in lexicographic order
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    return false;
  }

  const UndirectedGraph& g_;
  PekSearchOptions opt_;
  std::size_t nodes_ = 0;
  std::vector<VertexId> order_;
  std::vector<EdgeList> excess_;
  std::unordered_set<std::vector<std::uint64_t>, KeyHash> failed_;
};

}  // namespace detail

/// A perfect elimination kit of g, or nullopt when none exists. Exact
/// backtracking over simplicial vertices (ascending id) and excess subsets,
/// with failed remainders memoized by their edge set.
inline std::optional<EliminationKit> find_pek(const UndirectedGraph& g, const PekSearchOptions& opt = {}) {
  if (g.num_vertices() > opt.vertex_cap)
    throw ResourceError("find_pek vertex cap exceeded", g.num_vertices(), opt.vertex_cap);
  return detail::PekSearch(g, opt).run();
}

inline bool is_moral(const UndirectedGraph& g, const PekSearchOptions& opt = {}) { return find_pek(g, opt).has_value(); }

}  // namespace moralgraph
