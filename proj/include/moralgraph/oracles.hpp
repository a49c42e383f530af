#pragma once

// Brute-force reference solvers. They enumerate orderings in lexicographic
// order of vertex ids and keep the first optimum, and they deliberately use
// nothing beyond the graph primitives so they can cross-check the exact
// solvers and the closed forms independently.

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "moralgraph/graph.hpp"

namespace moralgraph {

struct OracleResult {
  std::size_t value = 0;
  VertexOrdering witness;
};

namespace detail {

inline void check_oracle_cap(const char* what, std::size_t n, std::size_t cap) {
  if (n > cap) throw ResourceError(std::string(what) + ": too many vertices for enumeration", n, cap);
}

// Visits every admitted ordering in lexicographic order; stops early when the
// visitor returns false.
template <typename Visit>
void for_each_ordering(std::size_t n, const OrderingRestriction& r, Visit&& visit) {
  r.check(n);
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  do {
    if (r.kind == OrderingRestriction::Kind::FixFirst && n > 0 && perm.front() != r.vertex) continue;
    if (r.kind == OrderingRestriction::Kind::FixLast && n > 0 && perm.back() != r.vertex) continue;
    if (!visit(perm)) return;
  } while (std::next_permutation(perm.begin(), perm.end()));
}

template <typename Objective>
OracleResult brute_minimum(const UndirectedGraph& g, const OrderingRestriction& r, Objective&& objective) {
  std::optional<OracleResult> best;
  for_each_ordering(g.num_vertices(), r, [&](const std::vector<VertexId>& perm) {
    const auto value = objective(perm);
    if (!best || value < best->value) best = OracleResult{value, VertexOrdering(perm)};
    return true;
  });
  return *best;
}

inline std::vector<std::size_t> positions_of(const std::vector<VertexId>& perm) {
  std::vector<std::size_t> pos(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = i;
  return pos;
}

}  // namespace detail

inline constexpr std::size_t arrangement_oracle_cap = 9;
inline constexpr std::size_t fill_oracle_cap = 7;
inline constexpr std::size_t morality_oracle_cap = 6;

/// Minimum of sum |pos(u) - pos(v)| over edges.
inline OracleResult brute_min_ola(const UndirectedGraph& g, const OrderingRestriction& r = {}) {
  detail::check_oracle_cap("brute_min_ola", g.num_vertices(), arrangement_oracle_cap);
  const auto edges = g.edges();
  return detail::brute_minimum(g, r, [&](const std::vector<VertexId>& perm) {
    const auto pos = detail::positions_of(perm);
    std::size_t cost = 0;
    for (const auto& e : edges) cost += pos[e.u] > pos[e.v] ? pos[e.u] - pos[e.v] : pos[e.v] - pos[e.u];
    return cost;
  });
}

/// Minimum over orderings of the largest number of edges crossing a gap.
inline OracleResult brute_min_mcla(const UndirectedGraph& g, const OrderingRestriction& r = {}) {
  detail::check_oracle_cap("brute_min_mcla", g.num_vertices(), arrangement_oracle_cap);
  const auto edges = g.edges();
  return detail::brute_minimum(g, r, [&](const std::vector<VertexId>& perm) {
    const auto pos = detail::positions_of(perm);
    std::size_t worst = 0;
    for (std::size_t gap = 0; gap + 1 < perm.size(); ++gap) {
      std::size_t crossing = 0;
      for (const auto& e : edges)
        if (std::min(pos[e.u], pos[e.v]) <= gap && gap < std::max(pos[e.u], pos[e.v])) ++crossing;
      worst = std::max(worst, crossing);
    }
    return worst;
  });
}

/// First ordering in which the vertex at position i has exactly d[i]
/// neighbours placed after it, if any.
inline std::optional<VertexOrdering> eds_feasible(const UndirectedGraph& g, std::span<const std::size_t> d,
                                                  const OrderingRestriction& r = {}) {
  detail::check_oracle_cap("eds_feasible", g.num_vertices(), arrangement_oracle_cap);
  if (d.size() != g.num_vertices()) throw DomainError("degree sequence length does not match |V|");
  std::optional<VertexOrdering> found;
  detail::for_each_ordering(g.num_vertices(), r, [&](const std::vector<VertexId>& perm) {
    const auto pos = detail::positions_of(perm);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      std::size_t later = 0;
      for (VertexId u = 0; u < perm.size(); ++u)
        if (g.has_edge(perm[i], u) && pos[u] > i) ++later;
      if (later != d[i]) return true;
    }
    found = VertexOrdering(perm);
    return false;
  });
  return found;
}

/// Minimum number of fill edges over all elimination orderings, each run by
/// a plain elimination game on an adjacency matrix.
inline OracleResult brute_min_fill_orderings(const UndirectedGraph& g) {
  const auto n = g.num_vertices();
  detail::check_oracle_cap("brute_min_fill_orderings", n, fill_oracle_cap);
  return detail::brute_minimum(g, {}, [&](const std::vector<VertexId>& perm) {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = true;
    std::vector<bool> gone(n, false);
    std::size_t fill = 0;
    for (auto v : perm) {
      gone[v] = true;
      for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b)
          if (!gone[a] && !gone[b] && adj[v][a] && adj[v][b] && !adj[a][b]) {
            adj[a][b] = adj[b][a] = true;
            ++fill;
          }
    }
    return fill;
  });
}

namespace detail {

// Unrolls the weakly-recursively-simplicial definition: some simplicial
// vertex, removed with some subset of the edges among its neighbours, leaves
// a graph with the same property.
inline bool wrs_unrolled(const UndirectedGraph& g) {
  if (g.num_vertices() == 0) return true;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    if (!is_simplicial(g, x)) continue;
    EdgeList inside;
    const auto nb = members(g.neighbors(x));
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) inside.push_back(make_edge(nb[i], nb[j]));
    const std::size_t subsets = std::size_t{1} << inside.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      EdgeList excess;
      for (std::size_t i = 0; i < inside.size(); ++i)
        if (mask >> i & 1) excess.push_back(inside[i]);
      if (wrs_unrolled(eliminate(g, x, excess))) return true;
    }
  }
  return false;
}

}  // namespace detail

/// Exhaustive morality test straight from the recursive definition, with no
/// memoization or shortcuts.
inline bool brute_is_moral(const UndirectedGraph& g) {
  detail::check_oracle_cap("brute_is_moral", g.num_vertices(), morality_oracle_cap);
  return detail::wrs_unrolled(g);
}

}  // namespace moralgraph
