#pragma once

// Small helpers shared by the unit tests.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "moralgraph/graph.hpp"

namespace mgtest {

using namespace moralgraph;

// Edges as sorted "a-b" strings, with the endpoint names sorted too, so
// expectations do not depend on vertex ids.
inline std::vector<std::string> edge_names(const UndirectedGraph& g, const EdgeList& edges) {
  std::vector<std::string> out;
  for (const auto& e : edges) {
    auto a = g.name(e.u), b = g.name(e.v);
    if (b < a) std::swap(a, b);
    out.push_back(a + "-" + b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> edge_names(const UndirectedGraph& g) { return edge_names(g, g.edges()); }

inline std::vector<std::vector<std::string>> clique_names(const UndirectedGraph& g,
                                                          const std::vector<std::vector<VertexId>>& cliques) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : cliques) {
    std::vector<std::string> names;
    for (auto v : c) names.push_back(g.name(v));
    std::sort(names.begin(), names.end());
    out.push_back(std::move(names));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline EdgeList edges_of(const UndirectedGraph& g, const std::vector<std::pair<std::string, std::string>>& names) {
  EdgeList out;
  for (const auto& [a, b] : names) out.push_back(make_edge(g.id(a), g.id(b)));
  normalize(out);
  return out;
}

template <typename Visit>
void for_each_permutation(std::size_t n, Visit&& visit) {
  std::vector<VertexId> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  do {
    visit(VertexOrdering(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

// Exhaustive search for an ordering in which every vertex is simplicial when
// it is removed. Independent of maximum cardinality search.
inline bool has_zero_fill_ordering(const UndirectedGraph& g) {
  if (g.num_vertices() == 0) return true;
  for (VertexId x = 0; x < g.num_vertices(); ++x)
    if (is_simplicial(g, x) && has_zero_fill_ordering(g.without_vertex(x))) return true;
  return false;
}

// Every clique of the graph by subset enumeration (n <= 12).
inline std::vector<std::vector<VertexId>> brute_maximal_cliques(const UndirectedGraph& g) {
  const auto n = g.num_vertices();
  std::vector<unsigned> cliques;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (VertexId a = 0; a < n && ok; ++a)
      for (VertexId b = a + 1; b < n && ok; ++b)
        if ((mask >> a & 1) && (mask >> b & 1) && !g.has_edge(a, b)) ok = false;
    if (ok) cliques.push_back(mask);
  }
  std::vector<std::vector<VertexId>> out;
  for (auto c : cliques) {
    bool maximal = true;
    for (auto d : cliques)
      if (d != c && (c & d) == c) maximal = false;
    if (!maximal) continue;
    std::vector<VertexId> members;
    for (VertexId v = 0; v < n; ++v)
      if (c >> v & 1) members.push_back(v);
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mgtest
