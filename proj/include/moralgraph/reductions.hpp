#pragma once

// Bipartite gadgets that turn instances of optimal linear arrangement (OLA),
// minimum cut linear arrangement (MCLA) and elimination degree sequence (EDS)
// into moral graphs, together with chain-graph machinery and the closed-form
// quantities that relate source orderings to triangulations of the gadgets.
//
// Every gadget is bipartite: P holds copies of the source vertices, Q holds
// edge nodes and residual nodes. A saturating step then connects every copy
// of one chosen source vertex w to all of Q, which is what makes the
// partition completion of the gadget moral.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moralgraph/graph.hpp"
#include "moralgraph/triangulation.hpp"

namespace moralgraph {

enum class Side : std::uint8_t { P, Q };

/// Undirected bipartite graph with an explicit side for every vertex.
struct BipartiteGraph {
  UndirectedGraph graph;
  std::vector<Side> side;

  VertexId add_vertex(std::string name, Side s) {
    const auto v = graph.add_vertex(std::move(name));
    side.push_back(s);
    return v;
  }

  bool add_edge(VertexId a, VertexId b) {
    if (side.at(a) == side.at(b))
      throw DomainError("edge " + graph.name(a) + "-" + graph.name(b) + " does not cross the partition");
    return graph.add_edge(a, b);
  }

  std::vector<VertexId> vertices(Side s) const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < side.size(); ++v)
      if (side[v] == s) out.push_back(v);
    return out;
  }

  VertexSet side_set(Side s) const {
    VertexSet out = graph.empty_set();
    for (VertexId v = 0; v < side.size(); ++v)
      if (side[v] == s) out[v] = true;
    return out;
  }
};

enum class GadgetKind { Ola, Mcla, Eds };

inline const char* to_string(GadgetKind k) {
  switch (k) {
    case GadgetKind::Ola:
      return "ola";
    case GadgetKind::Mcla:
      return "mcla";
    case GadgetKind::Eds:
      return "eds";
  }
  return "?";
}

enum class RoleKind : std::uint8_t { Copy, EdgeNode, Residual };

/// What a gadget vertex stands for. `index` is the 1-based copy, edge-node
/// or residual number j.
struct Role {
  RoleKind kind = RoleKind::Copy;
  VertexId source = 0;   // source vertex of a copy or residual
  Edge source_edge{};    // source edge of an edge node
  std::size_t index = 1;
};

struct BipartiteGadget {
  GadgetKind kind = GadgetKind::Ola;
  UndirectedGraph source;
  std::optional<VertexId> saturated;  // w; absent for the unsaturated base construction
  BipartiteGraph bip;
  std::vector<Role> roles;
  EdgeList saturation;  // the edges added by the saturating step, S(w)
  std::size_t copies_per_vertex = 1;
  std::size_t nodes_per_edge = 2;

  std::vector<std::vector<VertexId>> copy_ids;      // [source vertex][j-1]
  std::vector<std::vector<VertexId>> residual_ids;  // [source vertex][j-1]
  std::vector<std::vector<VertexId>> edge_node_ids;  // [source edge index][j-1]

  const UndirectedGraph& graph() const noexcept { return bip.graph; }
  std::vector<VertexId> left() const { return bip.vertices(Side::P); }
  std::vector<VertexId> right() const { return bip.vertices(Side::Q); }
};

namespace detail {

struct GadgetShape {
  std::size_t copies;
  std::size_t nodes_per_edge;
  bool residuals_to_max_degree;  // |R(u)| = Δ+1-d(u) instead of |V|-d(u)
};

inline GadgetShape shape_of(GadgetKind kind, const UndirectedGraph& g) {
  switch (kind) {
    case GadgetKind::Ola:
      return {1, 2, false};
    case GadgetKind::Mcla:
      return {g.max_degree() + 1, 2, true};
    case GadgetKind::Eds:
      return {1, 1, true};
  }
  return {1, 2, false};
}

inline BipartiteGadget build_gadget(GadgetKind kind, const UndirectedGraph& g, std::optional<VertexId> w) {
  if (g.num_vertices() < 2) throw DomainError("gadget source must have at least two vertices");
  if (!g.is_connected()) throw DomainError("gadget source graph must be connected");
  if (w && *w >= g.num_vertices()) throw DomainError("saturated vertex out of range");

  const auto shape = shape_of(kind, g);
  const auto n = g.num_vertices();
  const auto delta = g.max_degree();
  BipartiteGadget out;
  out.kind = kind;
  out.source = g;
  out.saturated = w;
  out.copies_per_vertex = shape.copies;
  out.nodes_per_edge = shape.nodes_per_edge;

  auto add = [&](std::string name, Side side, Role role) {
    out.roles.push_back(role);
    return out.bip.add_vertex(std::move(name), side);
  };

  out.copy_ids.resize(n);
  for (VertexId u = 0; u < n; ++u)
    for (std::size_t j = 1; j <= shape.copies; ++j)
      out.copy_ids[u].push_back(
          add(g.name(u) + "#" + std::to_string(j), Side::P, {RoleKind::Copy, u, {}, j}));

  const auto edges = g.edges();
  out.edge_node_ids.resize(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    for (std::size_t j = 1; j <= shape.nodes_per_edge; ++j) {
      const auto q = add("e:" + g.name(e.u) + "-" + g.name(e.v) + "#" + std::to_string(j), Side::Q,
                         {RoleKind::EdgeNode, 0, e, j});
      out.edge_node_ids[i].push_back(q);
      for (auto c : out.copy_ids[e.u]) out.bip.add_edge(c, q);
      for (auto c : out.copy_ids[e.v]) out.bip.add_edge(c, q);
    }
  }

  out.residual_ids.resize(n);
  for (VertexId u = 0; u < n; ++u) {
    const auto count = (shape.residuals_to_max_degree ? delta + 1 : n) - g.degree(u);
    for (std::size_t j = 1; j <= count; ++j) {
      const auto q = add("r:" + g.name(u) + "#" + std::to_string(j), Side::Q, {RoleKind::Residual, u, {}, j});
      out.residual_ids[u].push_back(q);
      for (auto c : out.copy_ids[u]) out.bip.add_edge(c, q);
    }
  }

  if (w) {
    const auto q_side = out.bip.vertices(Side::Q);
    for (auto c : out.copy_ids[*w])
      for (auto q : q_side)
        if (out.bip.add_edge(c, q)) out.saturation.push_back(make_edge(c, q));
    normalize(out.saturation);
  }
  return out;
}

}  // namespace detail

/// OLA gadget: one copy per vertex, two edge nodes per edge, |V|-d(u)
/// residuals per vertex, every copy of w saturated.
inline BipartiteGadget build_ola_gadget(const UndirectedGraph& g, VertexId w) {
  return detail::build_gadget(GadgetKind::Ola, g, w);
}

/// MCLA gadget: Δ+1 copies per vertex, two edge nodes per edge adjacent to
/// all copies of both endpoints, Δ+1-d(u) residuals per vertex.
inline BipartiteGadget build_mcla_gadget(const UndirectedGraph& g, VertexId w) {
  return detail::build_gadget(GadgetKind::Mcla, g, w);
}

/// EDS gadget: one copy per vertex, one edge node per edge, Δ+1-d(u)
/// residuals per vertex.
inline BipartiteGadget build_eds_gadget(const UndirectedGraph& g, VertexId w) {
  return detail::build_gadget(GadgetKind::Eds, g, w);
}

/// The same constructions without the saturating step.
inline BipartiteGadget build_base_gadget(GadgetKind kind, const UndirectedGraph& g) {
  return detail::build_gadget(kind, g, std::nullopt);
}

inline BipartiteGadget build_gadget(GadgetKind kind, const UndirectedGraph& g, VertexId w) {
  return detail::build_gadget(kind, g, w);
}

enum class CompletionScope { Both, LeftOnly };

/// Bipartite edges plus a clique on P, and on Q when scope is Both.
inline UndirectedGraph partition_completion(const BipartiteGraph& b, CompletionScope scope = CompletionScope::Both) {
  UndirectedGraph out = b.graph;
  auto complete = [&](const std::vector<VertexId>& part) {
    for (std::size_t i = 0; i < part.size(); ++i)
      for (std::size_t j = i + 1; j < part.size(); ++j) out.add_edge(part[i], part[j]);
  };
  complete(b.vertices(Side::P));
  if (scope == CompletionScope::Both) complete(b.vertices(Side::Q));
  return out;
}

struct ChainCheck {
  bool chain = false;
  // P vertices with N(order[0]) ⊇ N(order[1]) ⊇ ..., present iff chain
  std::optional<std::vector<VertexId>> order;
};

inline ChainCheck is_chain(const BipartiteGraph& b) {
  auto p = b.vertices(Side::P);
  std::stable_sort(p.begin(), p.end(),
                   [&](VertexId x, VertexId y) { return b.graph.degree(x) > b.graph.degree(y); });
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!b.graph.neighbors(p[i]).is_subset_of(b.graph.neighbors(p[i - 1]))) return {};
  return {true, std::move(p)};
}

/// Vertices adjacent to every vertex of the opposite side.
inline std::vector<VertexId> saturated_vertices(const BipartiteGraph& b) {
  const VertexSet ps = b.side_set(Side::P), qs = b.side_set(Side::Q);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < b.side.size(); ++v) {
    const auto& other = b.side[v] == Side::P ? qs : ps;
    if (other.is_subset_of(b.graph.neighbors(v))) out.push_back(v);
  }
  return out;
}

struct ChainFillResult {
  std::vector<std::pair<VertexId, std::size_t>> sigma;  // Q vertex -> 1-based position of its last P neighbour
  FillSet fill;
};

/// Completion of b to a chain graph along the P ordering `p_order`: every Q
/// vertex u is joined to all P vertices placed before sigma(u), the position
/// of its last neighbour.
inline ChainFillResult chain_fill_set(const BipartiteGraph& b, std::span<const VertexId> p_order) {
  const auto p = b.vertices(Side::P);
  {
    std::vector<VertexId> sorted(p_order.begin(), p_order.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted != p) throw DomainError("chain_fill_set: ordering does not cover exactly the P side");
  }
  ChainFillResult out;
  for (auto u : b.vertices(Side::Q)) {
    std::size_t sigma = 0;
    for (std::size_t i = 0; i < p_order.size(); ++i)
      if (b.graph.has_edge(u, p_order[i])) sigma = i + 1;
    if (sigma == 0) throw DomainError("chain_fill_set: Q vertex '" + b.graph.name(u) + "' has no neighbour");
    out.sigma.emplace_back(u, sigma);
    for (std::size_t j = 0; j + 1 < sigma; ++j)
      if (!b.graph.has_edge(u, p_order[j])) out.fill.push_back(make_edge(u, p_order[j]));
  }
  normalize(out.fill);
  return out;
}

inline BipartiteGraph with_fill(BipartiteGraph b, const FillSet& fill) {
  for (const auto& e : fill) b.add_edge(e.u, e.v);
  return b;
}

// ---------------------------------------------------------------------------
// Objectives of the source problems

/// Sum over edges of the distance between endpoint positions.
inline std::size_t ola_cost(const UndirectedGraph& g, const VertexOrdering& alpha) {
  check_ordering(g, alpha);
  std::size_t cost = 0;
  for (const auto& e : g.edges()) {
    const auto a = alpha.position(e.u), b = alpha.position(e.v);
    cost += a > b ? a - b : b - a;
  }
  return cost;
}

/// |E_1^i| for i = 1..|V|: edges with one endpoint at position <= i and the
/// other after it. The last entry is always 0.
inline std::vector<std::size_t> cut_profile(const UndirectedGraph& g, const VertexOrdering& alpha) {
  check_ordering(g, alpha);
  const auto n = g.num_vertices();
  std::vector<std::size_t> cut(n, 0);
  for (const auto& e : g.edges()) {
    const auto lo = std::min(alpha.position(e.u), alpha.position(e.v));
    const auto hi = std::max(alpha.position(e.u), alpha.position(e.v));
    for (auto i = lo; i < hi; ++i) ++cut[i];
  }
  return cut;
}

/// Maximum of the cut profile over i in [1, |V|-1].
inline std::size_t linear_cut_value(const UndirectedGraph& g, const VertexOrdering& alpha) {
  const auto cut = cut_profile(g, alpha);
  return cut.empty() ? 0 : *std::max_element(cut.begin(), cut.end());
}

/// N(i): neighbours of alpha(i) placed after position i.
inline std::vector<std::size_t> elim_degree_sequence(const UndirectedGraph& g, const VertexOrdering& alpha) {
  check_ordering(g, alpha);
  std::vector<std::size_t> out(g.num_vertices(), 0);
  for (const auto& e : g.edges()) ++out[std::min(alpha.position(e.u), alpha.position(e.v))];
  return out;
}

// ---------------------------------------------------------------------------
// Closed forms

/// Fill-in of the saturated OLA gadget along a source ordering with w first:
/// k + |V|(|V|-1)(|V|-2)/2 - 2|E| + d(w).
inline long long eval_lambda(const UndirectedGraph& g, VertexId w, long long k) {
  const auto n = static_cast<long long>(g.num_vertices());
  return k + n * (n - 1) * (n - 2) / 2 - 2 * static_cast<long long>(g.num_edges()) +
         static_cast<long long>(g.degree(w));
}

/// Fill-in of the unsaturated OLA gadget along any ordering:
/// c + |V|^2(|V|-1)/2 - 2|E|.
inline long long eval_base_fill(const UndirectedGraph& g, long long cost) {
  const auto n = static_cast<long long>(g.num_vertices());
  return cost + n * n * (n - 1) / 2 - 2 * static_cast<long long>(g.num_edges());
}

/// |S(w)| of the OLA gadget: |V|(|V|-1) - d(w).
inline long long eval_saturation(const UndirectedGraph& g, VertexId w) {
  const auto n = static_cast<long long>(g.num_vertices());
  return n * (n - 1) - static_cast<long long>(g.degree(w));
}

/// Target of the MCLA gadget for cut value k. `max_clique_size` is the
/// closed form (Δ+1)(|V|+1)+k; the matching elimination degree (treewidth)
/// is one less.
struct OmegaPrediction {
  long long max_clique_size = 0;
  long long max_elimination_degree = 0;
};

inline OmegaPrediction eval_omega(const UndirectedGraph& g, long long k) {
  const auto n = static_cast<long long>(g.num_vertices());
  const auto delta = static_cast<long long>(g.max_degree());
  const long long omega = (delta + 1) * (n + 1) + k;
  return {omega, omega - 1};
}

/// Per-position terms of the elimination degree of the first copy of
/// alpha(i) in the MCLA gadget: cut edges E_1^i, edges E_2^i with both ends
/// at or before i, the unsimplified degree sum and its closed form.
struct WidthBreakdown {
  std::size_t position = 0;  // 1-based i
  std::size_t cut_edges = 0;
  std::size_t inner_edges = 0;
  long long degree_sum = 0;
  long long closed_form = 0;
};

inline std::vector<WidthBreakdown> width_breakdown(const UndirectedGraph& g, const VertexOrdering& alpha) {
  check_ordering(g, alpha);
  const auto n = static_cast<long long>(g.num_vertices());
  const auto delta = static_cast<long long>(g.max_degree());
  const auto cut = cut_profile(g, alpha);
  std::vector<WidthBreakdown> out;
  long long degree_prefix = 0;
  for (std::size_t p = 0; p < alpha.size(); ++p) {
    const auto i = static_cast<long long>(p + 1);
    degree_prefix += static_cast<long long>(g.degree(alpha[p]));
    std::size_t inner = 0;
    for (const auto& e : g.edges())
      if (std::max(alpha.position(e.u), alpha.position(e.v)) <= p) ++inner;
    WidthBreakdown row;
    row.position = p + 1;
    row.cut_edges = cut[p];
    row.inner_edges = inner;
    row.degree_sum = delta + (delta + 1) * (n - i) + ((delta + 1) * i - degree_prefix) +
                     2 * static_cast<long long>(cut[p]) + 2 * static_cast<long long>(inner);
    row.closed_form = (delta + 1) * (n + 1) - 1 + static_cast<long long>(cut[p]);
    out.push_back(row);
  }
  return out;
}

/// Clique sizes k_i of the triangulated EDS gadget for an ordering whose
/// degree sequence is d, and both readings of the total-states target: the
/// plain sum of the k_i and the binary total states sum of 2^{k_i}.
struct KiDelta {
  std::vector<long long> k;
  long long delta_sum = 0;
  BigInt delta_binary = 0;
};

inline KiDelta eval_ki_delta(const UndirectedGraph& g, const VertexOrdering& alpha, std::span<const std::size_t> d) {
  check_ordering(g, alpha);
  const auto n = g.num_vertices();
  if (d.size() != n) throw DomainError("degree sequence length does not match |V|");
  for (auto x : d)
    if (n > 0 && x > n - 1) throw DomainError("degree sequence entry exceeds |V|-1");
  const auto delta = static_cast<long long>(g.max_degree());
  KiDelta out;
  long long running = 0;
  for (std::size_t p = 0; p < n; ++p) {
    const auto i = static_cast<long long>(p + 1);
    running += static_cast<long long>(d[p]) - static_cast<long long>(g.degree(alpha[p]));
    const long long k = static_cast<long long>(n) + delta * i + 1 + running;
    out.k.push_back(k);
    out.delta_sum += k;
    out.delta_binary += BigInt(1) << static_cast<unsigned>(k);
  }
  return out;
}

/// 1-based position of copy j of alpha(i) under pi_P: (Δ+1)i - j + 1.
inline std::size_t pi_p_position(std::size_t max_degree, std::size_t i, std::size_t j) {
  return (max_degree + 1) * i - j + 1;
}

/// P vertices of an MCLA gadget ordered block by block along alpha, copy
/// Δ+1 first inside each block.
inline std::vector<VertexId> pi_p_from_alpha(const BipartiteGadget& gadget, const VertexOrdering& alpha) {
  check_ordering(gadget.source, alpha);
  const auto delta = gadget.source.max_degree();
  const auto copies = gadget.copies_per_vertex;
  std::vector<VertexId> out(alpha.size() * copies);
  for (std::size_t p = 0; p < alpha.size(); ++p)
    for (std::size_t j = 1; j <= copies; ++j) {
      const auto pos = gadget.kind == GadgetKind::Mcla ? pi_p_position(delta, p + 1, j) : p + 1;
      out.at(pos - 1) = gadget.copy_ids[alpha[p]][j - 1];
    }
  return out;
}

/// P copies in source order (one copy per vertex gadgets).
inline std::vector<VertexId> p_order_from_alpha(const BipartiteGadget& gadget, const VertexOrdering& alpha) {
  check_ordering(gadget.source, alpha);
  if (gadget.copies_per_vertex != 1) return pi_p_from_alpha(gadget, alpha);
  std::vector<VertexId> out;
  for (auto v : alpha.vertices()) out.push_back(gadget.copy_ids[v][0]);
  return out;
}

/// Elimination ordering of a whole bipartite graph: the given P vertices,
/// then Q by ascending id.
inline VertexOrdering p_then_q(const BipartiteGraph& b, std::span<const VertexId> p_order) {
  std::vector<VertexId> order(p_order.begin(), p_order.end());
  for (auto q : b.vertices(Side::Q)) order.push_back(q);
  return VertexOrdering(std::move(order));
}

/// Perfect elimination kit of the completed saturated gadget: the first
/// residual of w goes first and takes with it the saturation edges and every
/// Q-Q edge; what is left is a bipartite graph with only P completed, which
/// is eliminated Q first (ascending) and then P (ascending) with empty
/// excesses.
inline EliminationKit morality_witness(const BipartiteGadget& gadget) {
  if (!gadget.saturated) throw DomainError("morality_witness needs a saturated gadget");
  const auto w = *gadget.saturated;
  if (gadget.residual_ids[w].empty()) throw DomainError("saturated vertex has no residual node");
  const auto r = gadget.residual_ids[w][0];
  const auto q = gadget.right();
  const auto p = gadget.left();

  std::vector<VertexId> order{r};
  for (auto v : q)
    if (v != r) order.push_back(v);
  order.insert(order.end(), p.begin(), p.end());

  auto kit = EliminationKit::with_empty_excesses(VertexOrdering(std::move(order)));
  EdgeList& ex = kit.excess[r];
  ex = gadget.saturation;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j)
      if (q[i] != r && q[j] != r) ex.push_back(make_edge(q[i], q[j]));
  normalize(ex);
  return kit;
}

/// Predicted versus measured value of one closed-form quantity on one
/// instance. The verdict depends on nothing else.
struct ReductionReport {
  std::string instance;
  std::string quantity;
  std::string mode;
  std::vector<std::pair<std::string, std::string>> parameters;
  BigInt predicted = 0;
  BigInt measured = 0;

  bool equal() const { return predicted == measured; }
  BigInt delta() const { return measured - predicted; }
};

}  // namespace moralgraph
