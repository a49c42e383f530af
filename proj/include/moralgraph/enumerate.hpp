#pragma once

// Instance families: exhaustive small graphs (up to isomorphism), raw
// bipartite graphs, seeded random DAGs / chordal graphs / chain graphs, and
// the small fixed graphs used throughout the tests.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "moralgraph/graph.hpp"
#include "moralgraph/reductions.hpp"
#include "moralgraph/triangulation.hpp"

namespace moralgraph {

inline UndirectedGraph graph_from_edges(const std::vector<std::string>& names,
                                        const std::vector<std::pair<std::string, std::string>>& edges) {
  UndirectedGraph g(names);
  for (const auto& [a, b] : edges) g.add_edge(g.id(a), g.id(b));
  return g;
}

inline std::vector<std::string> numbered_names(std::size_t n, const std::string& prefix = "v") {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

namespace detail {

// Upper-triangle adjacency bits of g under a relabelling; the bit for pair
// (i, j), i < j, is at index j(j-1)/2 + i.
inline std::uint64_t adjacency_code(const std::vector<std::uint32_t>& rows, const std::vector<VertexId>& perm) {
  std::uint64_t code = 0;
  const auto n = perm.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (rows[perm[i]] >> perm[j] & 1u) code |= std::uint64_t{1} << (j * (j - 1) / 2 + i);
  return code;
}

// Canonical code: the largest adjacency code over relabellings that list the
// vertices by non-increasing degree. Permuting only within degree classes
// keeps this cheap at the sizes enumerated here.
inline std::uint64_t canonical_code(const std::vector<std::uint32_t>& rows) {
  const auto n = rows.size();
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  auto deg = [&](VertexId v) { return std::popcount(rows[v]); };
  std::stable_sort(perm.begin(), perm.end(), [&](VertexId a, VertexId b) { return deg(a) > deg(b); });
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && deg(perm[j]) == deg(perm[i])) ++j;
    blocks.emplace_back(i, j);
    std::sort(perm.begin() + static_cast<std::ptrdiff_t>(i), perm.begin() + static_cast<std::ptrdiff_t>(j));
    i = j;
  }
  std::uint64_t best = 0;
  // odometer over the permutations of every degree block
  while (true) {
    best = std::max(best, adjacency_code(rows, perm));
    std::size_t b = blocks.size();
    while (b > 0) {
      auto [lo, hi] = blocks[b - 1];
      if (std::next_permutation(perm.begin() + static_cast<std::ptrdiff_t>(lo),
                                perm.begin() + static_cast<std::ptrdiff_t>(hi)))
        break;
      --b;
    }
    if (b == 0) break;
  }
  return best;
}

inline UndirectedGraph graph_from_rows(const std::vector<std::uint32_t>& rows) {
  UndirectedGraph g(numbered_names(rows.size()));
  for (VertexId a = 0; a < rows.size(); ++a)
    for (VertexId b = a + 1; b < rows.size(); ++b)
      if (rows[a] >> b & 1u) g.add_edge(a, b);
  return g;
}

}  // namespace detail

/// One representative of every isomorphism class of graphs on n vertices,
/// vertices named v1..vn. Built by extending each class on n-1 vertices with
/// a new vertex and every neighbour subset.
inline std::vector<UndirectedGraph> all_graphs(std::size_t n) {
  if (n > 9) throw ResourceError("all_graphs: isomorphism-class enumeration", n, 9);
  std::vector<std::vector<std::uint32_t>> level{{}};
  for (std::size_t k = 1; k <= n; ++k) {
    std::set<std::uint64_t> seen;
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& rows : level)
      for (std::uint32_t mask = 0; mask < (1u << (k - 1)); ++mask) {
        auto grown = rows;
        grown.push_back(mask);
        for (std::size_t v = 0; v + 1 < k; ++v)
          if (mask >> v & 1u) grown[v] |= 1u << (k - 1);
        if (seen.insert(detail::canonical_code(grown)).second) next.push_back(std::move(grown));
      }
    level = std::move(next);
  }
  std::vector<UndirectedGraph> out;
  for (const auto& rows : level) out.push_back(detail::graph_from_rows(rows));
  return out;
}

inline std::vector<UndirectedGraph> connected_graphs(std::size_t n) {
  std::vector<UndirectedGraph> out;
  for (auto& g : all_graphs(n))
    if (g.is_connected()) out.push_back(std::move(g));
  return out;
}

/// Connected graphs with min_n..max_n vertices, in order of size.
inline std::vector<UndirectedGraph> connected_graphs_up_to(std::size_t max_n, std::size_t min_n = 1) {
  std::vector<UndirectedGraph> out;
  for (auto n = min_n; n <= max_n; ++n)
    for (auto& g : connected_graphs(n)) out.push_back(std::move(g));
  return out;
}

/// Every labelled bipartite graph with the given side sizes; P is named
/// p1..pn and Q q1..qm. The visitor sees graphs in edge-mask order.
template <typename Visit>
void for_each_bipartite(std::size_t p, std::size_t q, Visit&& visit) {
  if (p * q > 24) throw ResourceError("for_each_bipartite: raw edge-subset enumeration", p * q, 24);
  const std::uint64_t subsets = std::uint64_t{1} << (p * q);
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    BipartiteGraph b;
    for (std::size_t i = 1; i <= p; ++i) b.add_vertex("p" + std::to_string(i), Side::P);
    for (std::size_t j = 1; j <= q; ++j) b.add_vertex("q" + std::to_string(j), Side::Q);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j)
        if (mask >> (i * q + j) & 1u) b.add_edge(i, p + j);
    visit(b);
  }
}

/// Random DAG on n vertices: arcs go forward along a shuffled order, each
/// present with probability density.
inline Dag random_dag(std::size_t n, double density, std::mt19937_64& rng) {
  Dag d;
  for (const auto& name : numbered_names(n)) d.add_vertex(name);
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution coin(density);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) d.add_arc(order[i], order[j]);
  return d;
}

inline UndirectedGraph random_graph(std::size_t n, double density, std::mt19937_64& rng) {
  UndirectedGraph g(numbered_names(n));
  std::bernoulli_distribution coin(density);
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      if (coin(rng)) g.add_edge(a, b);
  return g;
}

/// Random chordal graph: a random graph triangulated along a random
/// elimination ordering.
inline UndirectedGraph random_chordal(std::size_t n, double density, std::mt19937_64& rng) {
  auto g = random_graph(n, density, rng);
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::shuffle(order.begin(), order.end(), rng);
  return g.with_edges(triangulate_by_ordering(g, VertexOrdering(std::move(order))));
}

/// Random chain graph with p + q vertices: each Q vertex is joined to a
/// random-length prefix of a shuffled P order.
inline BipartiteGraph random_chain(std::size_t p, std::size_t q, std::mt19937_64& rng) {
  BipartiteGraph b;
  for (std::size_t i = 1; i <= p; ++i) b.add_vertex("p" + std::to_string(i), Side::P);
  for (std::size_t j = 1; j <= q; ++j) b.add_vertex("q" + std::to_string(j), Side::Q);
  std::vector<VertexId> order(p);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_int_distribution<std::size_t> reach(0, p);
  for (std::size_t j = 0; j < q; ++j) {
    const auto t = reach(rng);
    for (std::size_t i = 0; i < t; ++i) b.add_edge(order[i], p + j);
  }
  return b;
}

namespace fixtures {

/// DAG v1->v2, v1->v3, v2->v4, v3->v5, v4->v5.
inline Dag house_dag() {
  Dag d;
  for (const auto& name : numbered_names(5)) d.add_vertex(name);
  for (auto [a, b] : std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {0, 2}, {1, 3}, {2, 4}, {3, 4}})
    d.add_arc(a, b);
  return d;
}

/// Moral graph of house_dag: a 4-cycle v1 v2 v4 v3 with roof v5 on v3 v4.
inline UndirectedGraph house() {
  return graph_from_edges(numbered_names(5),
                          {{"v1", "v2"}, {"v1", "v3"}, {"v2", "v4"}, {"v3", "v4"}, {"v3", "v5"}, {"v4", "v5"}});
}

/// The same 4-cycle with v5 hanging off v3 only; not moral.
inline UndirectedGraph banner() {
  return graph_from_edges(numbered_names(5), {{"v1", "v2"}, {"v1", "v3"}, {"v2", "v4"}, {"v3", "v4"}, {"v3", "v5"}});
}

/// Triangle a b c with pendant d on c.
inline UndirectedGraph paw() {
  return graph_from_edges({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "c"}, {"c", "d"}});
}

/// P = {1, 2}, Q = {a, b, c}; edges 1a 1b 2b 2c, plus 2a when with_2a.
inline BipartiteGraph chain_example(bool with_2a) {
  BipartiteGraph b;
  const auto p1 = b.add_vertex("1", Side::P), p2 = b.add_vertex("2", Side::P);
  const auto a = b.add_vertex("a", Side::Q), bb = b.add_vertex("b", Side::Q), c = b.add_vertex("c", Side::Q);
  b.add_edge(p1, a);
  b.add_edge(p1, bb);
  b.add_edge(p2, bb);
  b.add_edge(p2, c);
  if (with_2a) b.add_edge(p2, a);
  return b;
}

inline UndirectedGraph path(const std::vector<std::string>& names) {
  UndirectedGraph g(names);
  for (VertexId v = 1; v < names.size(); ++v) g.add_edge(v - 1, v);
  return g;
}

inline UndirectedGraph path(std::size_t n) { return path(numbered_names(n)); }

inline UndirectedGraph cycle(std::size_t n) {
  auto g = path(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

inline UndirectedGraph complete(std::size_t n) {
  UndirectedGraph g(numbered_names(n));
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

}  // namespace fixtures

}  // namespace moralgraph
