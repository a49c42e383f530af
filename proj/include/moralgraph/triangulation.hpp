#pragma once

// Triangulation by elimination orderings, the three optimality objectives
// (fill-in, treewidth, total states) with exact desk-scale solvers, and
// junction trees over the maximal cliques of a chordal graph.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "moralgraph/graph.hpp"

namespace moralgraph {

using BigInt = boost::multiprecision::cpp_int;

/// Per-step record of the elimination game: the vertex eliminated at each
/// position and its neighbourhood in the elimination graph at that moment.
struct EliminationTrace {
  FillSet fill;
  std::vector<VertexSet> higher;  // indexed by position
};

inline EliminationTrace eliminate_in_order(const UndirectedGraph& g, const VertexOrdering& alpha) {
  check_ordering(g, alpha);
  const auto n = g.num_vertices();
  std::vector<VertexSet> adj;
  adj.reserve(n);
  for (VertexId v = 0; v < n; ++v) adj.push_back(g.neighbors(v));
  VertexSet alive = g.full_set();
  EliminationTrace trace;
  trace.higher.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    const auto v = alpha[p];
    alive[v] = false;
    const VertexSet h = adj[v] & alive;
    const auto nb = members(h);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (!adj[nb[i]][nb[j]]) {
          adj[nb[i]][nb[j]] = true;
          adj[nb[j]][nb[i]] = true;
          trace.fill.push_back({nb[i], nb[j]});
        }
    trace.higher.push_back(h);
  }
  normalize(trace.fill);
  return trace;
}

/// Fill edges H_G(alpha): the union of deficiencies met while eliminating
/// alpha(1), alpha(2), ... and completing each neighbourhood.
inline FillSet triangulate_by_ordering(const UndirectedGraph& g, const VertexOrdering& alpha) {
  return eliminate_in_order(g, alpha).fill;
}

/// Largest neighbourhood met during elimination, i.e. the size of the
/// largest clique of the induced triangulation minus one.
inline std::size_t width_of_ordering(const UndirectedGraph& g, const VertexOrdering& alpha) {
  std::size_t best = 0;
  for (const auto& h : eliminate_in_order(g, alpha).higher) best = std::max(best, h.count());
  return best;
}

/// Number of states per vertex, binary unless overridden.
class StateMap {
 public:
  explicit StateMap(std::size_t n, std::uint64_t fill = 2) : states_(n, fill) {
    if (fill == 0) throw DomainError("state counts must be positive");
  }

  void set(VertexId v, std::uint64_t count) {
    if (count == 0) throw DomainError("state counts must be positive");
    states_.at(v) = count;
  }

  std::uint64_t operator[](VertexId v) const { return states_.at(v); }
  std::size_t size() const noexcept { return states_.size(); }

 private:
  std::vector<std::uint64_t> states_;
};

inline BigInt clique_states(const std::vector<VertexId>& clique, const StateMap& s) {
  BigInt prod = 1;
  for (auto v : clique) prod *= s[v];
  return prod;
}

/// Sum over the maximal cliques of a chordal graph of the product of the
/// state counts of their members.
inline BigInt total_states(const UndirectedGraph& g_tri, const StateMap& s) {
  if (s.size() != g_tri.num_vertices()) throw DomainError("state map does not match the graph");
  if (!is_chordal(g_tri).chordal) throw DomainError("total_states: graph is not chordal");
  BigInt sum = 0;
  for (const auto& c : maximal_cliques(g_tri)) sum += clique_states(c, s);
  return sum;
}

struct ExactOptions {
  std::size_t cap = 20;
  OrderingRestriction restriction{};
};

struct MinFillResult {
  std::size_t fill_in = 0;  // lambda*
  FillSet fill;
  VertexOrdering witness;
};

struct TreewidthResult {
  std::size_t width = 0;
  VertexOrdering witness;
};

namespace detail {

// Dynamic programming over eliminated prefixes. Eliminating v after the set
// S costs |Q(S, v)|, the vertices outside S reachable from v through S; the
// sum over an ordering is the edge count of its triangulation, the maximum
// is its width. The elimination graph after S is independent of the order
// inside S, which is what makes the recursion exact.
enum class Aggregate { Sum, Max };

inline VertexOrdering subset_dp(const UndirectedGraph& g, const ExactOptions& opt, Aggregate agg, std::size_t& best,
                                const char* what) {
  constexpr std::size_t hard_limit = 24;
  const auto n = g.num_vertices();
  if (n > opt.cap || n > hard_limit)
    throw ResourceError(std::string(what) + " vertex cap exceeded", n, std::min(opt.cap, hard_limit));
  opt.restriction.check(n);
  if (n == 0) {
    best = 0;
    return VertexOrdering{};
  }
  std::vector<std::uint64_t> adj(n, 0);
  for (const auto& e : g.edges()) {
    adj[e.u] |= std::uint64_t{1} << e.v;
    adj[e.v] |= std::uint64_t{1} << e.u;
  }
  const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  constexpr std::uint32_t inf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> cost(std::size_t{1} << n, inf);
  std::vector<std::uint8_t> parent(std::size_t{1} << n, 0xff);

  using Kind = OrderingRestriction::Kind;
  const auto& r = opt.restriction;
  std::uint64_t start = 0;
  if (r.kind == Kind::FixFirst) {
    start = std::uint64_t{1} << r.vertex;
    cost[start] = static_cast<std::uint32_t>(std::popcount(adj[r.vertex]));
    parent[start] = static_cast<std::uint8_t>(r.vertex);
  } else {
    cost[0] = 0;
  }
  const std::uint64_t last_bit = r.kind == Kind::FixLast ? (std::uint64_t{1} << r.vertex) : 0;

  std::vector<std::uint64_t> comp_mask, comp_nbrs;
  for (std::uint64_t s = start; s < full; ++s) {
    if (cost[s] == inf) continue;
    // components of G[S] and their outer neighbourhoods
    comp_mask.clear();
    comp_nbrs.clear();
    std::uint64_t left = s;
    while (left) {
      std::uint64_t comp = left & (~left + 1);
      std::uint64_t frontier = comp;
      std::uint64_t reach = 0;
      while (frontier) {
        const int x = std::countr_zero(frontier);
        frontier &= frontier - 1;
        reach |= adj[x];
        const std::uint64_t fresh = adj[x] & s & ~comp;
        comp |= fresh;
        frontier |= fresh;
      }
      left &= ~comp;
      comp_mask.push_back(comp);
      comp_nbrs.push_back(reach & ~s);
    }
    std::uint64_t avail = full & ~s;
    if (last_bit && avail != last_bit) avail &= ~last_bit;
    while (avail) {
      const int v = std::countr_zero(avail);
      avail &= avail - 1;
      const std::uint64_t bit = std::uint64_t{1} << v;
      std::uint64_t q = adj[v] & ~s;
      for (std::size_t c = 0; c < comp_mask.size(); ++c)
        if (adj[v] & comp_mask[c]) q |= comp_nbrs[c];
      q &= ~bit;
      const auto k = static_cast<std::uint32_t>(std::popcount(q));
      const std::uint32_t next = agg == Aggregate::Sum ? cost[s] + k : std::max(cost[s], k);
      if (next < cost[s | bit]) {
        cost[s | bit] = next;
        parent[s | bit] = static_cast<std::uint8_t>(v);
      }
    }
  }
  best = cost[full];
  std::vector<VertexId> order;
  for (std::uint64_t t = full; t != 0;) {
    const auto v = parent[t];
    order.push_back(v);
    t &= ~(std::uint64_t{1} << v);
  }
  std::reverse(order.begin(), order.end());
  return VertexOrdering(std::move(order));
}

}  // namespace detail

/// Minimum fill-in over all elimination orderings admitted by the
/// restriction (subset DP, n <= opt.cap).
inline MinFillResult min_fill_exact(const UndirectedGraph& g, const ExactOptions& opt = {}) {
  std::size_t total = 0;
  auto witness = detail::subset_dp(g, opt, detail::Aggregate::Sum, total, "min_fill_exact");
  MinFillResult out;
  out.fill_in = total - g.num_edges();
  out.fill = triangulate_by_ordering(g, witness);
  out.witness = std::move(witness);
  return out;
}

inline TreewidthResult treewidth_exact(const UndirectedGraph& g, const ExactOptions& opt = {}) {
  TreewidthResult out;
  out.witness = detail::subset_dp(g, opt, detail::Aggregate::Max, out.width, "treewidth_exact");
  return out;
}

struct TotalStatesResult {
  BigInt states = 0;
  VertexOrdering witness;
  FillSet fill;
};

namespace detail {

class StatesSearch {
 public:
  StatesSearch(const UndirectedGraph& g, const StateMap& s, const OrderingRestriction& r) : g_(g), s_(s), r_(r) {}

  TotalStatesResult run() {
    const auto n = g_.num_vertices();
    std::vector<VertexSet> adj;
    for (VertexId v = 0; v < n; ++v) adj.push_back(g_.neighbors(v));
    std::vector<VertexSet> cliques;
    std::vector<VertexId> prefix;
    dfs(adj, g_.full_set(), cliques, prefix, 0);
    TotalStatesResult out;
    out.states = best_;
    out.witness = VertexOrdering(best_order_);
    out.fill = triangulate_by_ordering(g_, out.witness);
    return out;
  }

 private:
  void dfs(const std::vector<VertexSet>& adj, const VertexSet& alive, std::vector<VertexSet>& cliques,
           std::vector<VertexId>& prefix, const BigInt& sum) {
    if (have_best_ && sum >= best_) return;
    if (alive.none()) {
      best_ = sum;
      best_order_ = prefix;
      have_best_ = true;
      return;
    }
    using Kind = OrderingRestriction::Kind;
    for_each_member(alive, [&](VertexId v) {
      if (r_.kind == Kind::FixFirst && prefix.empty() && v != r_.vertex) return;
      if (r_.kind == Kind::FixFirst && !prefix.empty() && v == r_.vertex) return;
      if (r_.kind == Kind::FixLast && v == r_.vertex && alive.count() > 1) return;
      VertexSet rest = alive;
      rest[v] = false;
      VertexSet clique = adj[v] & rest;
      auto next = adj;
      for_each_member(clique, [&](VertexId a) { next[a] |= clique; next[a][a] = false; });
      clique[v] = true;
      bool maximal = true;
      for (const auto& c : cliques)
        if (clique.is_subset_of(c)) {
          maximal = false;
          break;
        }
      BigInt add = 0;
      if (maximal) add = clique_states(members(clique), s_);
      cliques.push_back(clique);
      prefix.push_back(v);
      dfs(next, rest, cliques, prefix, sum + add);
      prefix.pop_back();
      cliques.pop_back();
    });
  }

  const UndirectedGraph& g_;
  const StateMap& s_;
  OrderingRestriction r_;
  BigInt best_ = 0;
  bool have_best_ = false;
  std::vector<VertexId> best_order_;
};

}  // namespace detail

/// Minimum total states over elimination orderings; branch and bound on the
/// running sum over cliques already known to be maximal.
inline TotalStatesResult total_states_exact(const UndirectedGraph& g, const StateMap& s,
                                            const ExactOptions& opt = {10, {}}) {
  if (g.num_vertices() > opt.cap) throw ResourceError("total_states_exact vertex cap exceeded", g.num_vertices(), opt.cap);
  if (s.size() != g.num_vertices()) throw DomainError("state map does not match the graph");
  opt.restriction.check(g.num_vertices());
  return detail::StatesSearch(g, s, opt.restriction).run();
}

struct GreedyResult {
  VertexOrdering ordering;
  FillSet fill;
};

/// Repeatedly eliminates a vertex of smallest deficiency, ties by id.
inline GreedyResult greedy_min_fill(const UndirectedGraph& g) {
  const auto n = g.num_vertices();
  std::vector<VertexSet> adj;
  for (VertexId v = 0; v < n; ++v) adj.push_back(g.neighbors(v));
  VertexSet alive = g.full_set();
  std::vector<VertexId> order;
  auto missing = [&](VertexId v) {
    const auto nb = members(adj[v] & alive);
    std::size_t count = 0;
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (!adj[nb[i]][nb[j]]) ++count;
    return count;
  };
  for (std::size_t step = 0; step < n; ++step) {
    VertexId best = n;
    std::size_t best_missing = 0;
    for_each_member(alive, [&](VertexId v) {
      const auto m = missing(v);
      if (best == n || m < best_missing) {
        best = v;
        best_missing = m;
      }
    });
    const VertexSet h = adj[best] & alive;
    for_each_member(h, [&](VertexId a) { adj[a] |= h; adj[a][a] = false; });
    alive[best] = false;
    order.push_back(best);
  }
  GreedyResult out{VertexOrdering(std::move(order)), {}};
  out.fill = triangulate_by_ordering(g, out.ordering);
  return out;
}

// ---------------------------------------------------------------------------
// Junction trees

struct CliqueTree {
  std::vector<std::vector<VertexId>> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<VertexId>> separators;  // parallel to edges
};

inline std::vector<VertexId> intersect(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  std::vector<VertexId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Maximum-weight spanning tree over the maximal cliques, weight being the
/// separator size; ties by lexicographic clique pair.
inline CliqueTree junction_tree(const UndirectedGraph& g_tri) {
  if (!is_chordal(g_tri).chordal) throw DomainError("junction_tree: graph is not chordal");
  CliqueTree t;
  t.nodes = maximal_cliques(g_tri);
  const auto m = t.nodes.size();
  struct Candidate {
    std::size_t weight, i, j;
  };
  std::vector<Candidate> cand;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) cand.push_back({intersect(t.nodes[i], t.nodes[j]).size(), i, j});
  std::stable_sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) { return a.weight > b.weight; });
  std::vector<std::size_t> root(m);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (const auto& c : cand) {
    const auto a = find(c.i), b = find(c.j);
    if (a == b) continue;
    root[a] = b;
    t.edges.emplace_back(c.i, c.j);
    t.separators.push_back(intersect(t.nodes[c.i], t.nodes[c.j]));
  }
  return t;
}

struct DecompositionCheck {
  bool valid = true;
  // 0: not a tree, 1: vertex cover, 2: edge cover, 3: running intersection,
  // 4: a node is not a clique of the graph
  int failed_condition = -1;
  std::string detail;
};

inline DecompositionCheck validate_tree_decomposition(const UndirectedGraph& g, const CliqueTree& t) {
  auto fail = [](int cond, std::string why) { return DecompositionCheck{false, cond, std::move(why)}; };
  const auto n = g.num_vertices();
  const auto m = t.nodes.size();

  if (m == 0) {
    if (n == 0) return {};
    return fail(1, "no tree nodes");
  }
  if (t.edges.size() != m - 1) return fail(0, "edge count is not node count minus one");
  std::vector<std::vector<std::size_t>> tree_adj(m);
  for (const auto& [a, b] : t.edges) {
    if (a >= m || b >= m || a == b) return fail(0, "bad tree edge");
    tree_adj[a].push_back(b);
    tree_adj[b].push_back(a);
  }
  {
    std::vector<bool> seen(m, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (auto y : tree_adj[x])
        if (!seen[y]) {
          seen[y] = true;
          ++count;
          stack.push_back(y);
        }
    }
    if (count != m) return fail(0, "tree is disconnected");
  }

  std::vector<VertexSet> bags;
  for (const auto& node : t.nodes) {
    VertexSet b = g.empty_set();
    for (auto v : node) {
      if (v >= n) return fail(1, "node holds unknown vertex");
      b[v] = true;
    }
    bags.push_back(std::move(b));
  }

  VertexSet covered = g.empty_set();
  for (const auto& b : bags) covered |= b;
  if (!covered.all()) return fail(1, "vertex '" + g.name(members(~covered).front()) + "' is in no node");

  for (const auto& e : g.edges()) {
    bool found = false;
    for (const auto& b : bags)
      if (b[e.u] && b[e.v]) {
        found = true;
        break;
      }
    if (!found) return fail(2, "edge " + g.edge_name(e) + " is in no node");
  }

  // Condition 3 holds iff the nodes holding each vertex form a subtree.
  for (VertexId v = 0; v < n; ++v) {
    std::vector<std::size_t> holding;
    for (std::size_t i = 0; i < m; ++i)
      if (bags[i][v]) holding.push_back(i);
    std::vector<bool> seen(m, false);
    std::vector<std::size_t> stack{holding.front()};
    seen[holding.front()] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (auto y : tree_adj[x])
        if (!seen[y] && bags[y][v]) {
          seen[y] = true;
          ++count;
          stack.push_back(y);
        }
    }
    if (count != holding.size()) return fail(3, "nodes holding '" + g.name(v) + "' are not connected in the tree");
  }

  for (std::size_t i = 0; i < m; ++i)
    if (!is_clique(g, bags[i])) return fail(4, "node " + std::to_string(i) + " is not a clique");
  return {};
}

}  // namespace moralgraph
