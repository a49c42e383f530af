#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "moralgraph/enumerate.hpp"
#include "moralgraph/morality.hpp"
#include "moralgraph/oracles.hpp"
#include "moralgraph/reductions.hpp"
#include "moralgraph/triangulation.hpp"
#include "test_util.hpp"

using namespace moralgraph;
using namespace moralgraph::fixtures;

namespace {

using Names = std::vector<std::string>;

UndirectedGraph k2() { return graph_from_edges({"u", "v"}, {{"u", "v"}}); }
UndirectedGraph p3() { return path(Names{"u", "v", "w"}); }
UndirectedGraph k3() { return graph_from_edges({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}); }

Names names_of(const BipartiteGadget& b, const std::vector<VertexId>& ids) {
  Names out;
  for (auto v : ids) out.push_back(b.graph().name(v));
  std::sort(out.begin(), out.end());
  return out;
}

VertexOrdering by_names(const UndirectedGraph& g, const Names& names) { return ordering_from_names(g, names); }

// Roles, id tables and sides must describe the same vertices.
void expect_consistent(const BipartiteGadget& b) {
  const auto& g = b.source;
  ASSERT_EQ(b.roles.size(), b.graph().num_vertices());
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    ASSERT_EQ(b.copy_ids[u].size(), b.copies_per_vertex);
    for (std::size_t j = 0; j < b.copies_per_vertex; ++j) {
      const auto c = b.copy_ids[u][j];
      EXPECT_EQ(b.bip.side[c], Side::P);
      EXPECT_EQ(b.roles[c].kind, RoleKind::Copy);
      EXPECT_EQ(b.roles[c].source, u);
      EXPECT_EQ(b.roles[c].index, j + 1);
    }
    for (auto r : b.residual_ids[u]) {
      EXPECT_EQ(b.bip.side[r], Side::Q);
      EXPECT_EQ(b.roles[r].kind, RoleKind::Residual);
      // a residual is adjacent exactly to the copies of its vertex, plus w's copies
      for (VertexId v = 0; v < g.num_vertices(); ++v)
        for (auto c : b.copy_ids[v])
          EXPECT_EQ(b.graph().has_edge(c, r), v == u || (b.saturated && v == *b.saturated));
    }
  }
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    ASSERT_EQ(b.edge_node_ids[i].size(), b.nodes_per_edge);
    for (auto q : b.edge_node_ids[i]) {
      EXPECT_EQ(b.roles[q].kind, RoleKind::EdgeNode);
      EXPECT_EQ(b.roles[q].source_edge, edges[i]);
    }
  }
  for (const auto& e : b.graph().edges()) EXPECT_NE(b.bip.side[e.u], b.bip.side[e.v]);
}

// --- construction -----------------------------------------------------------

TEST(OlaGadget, PawSaturatedAtC) {
  const auto g = paw();
  const auto b = build_ola_gadget(g, g.id("c"));
  EXPECT_EQ(b.left().size(), 4u);
  EXPECT_EQ(b.right().size(), 16u);
  EXPECT_EQ(b.saturation.size(), 9u);
  expect_consistent(b);
}

TEST(OlaGadget, SingleEdge) {
  const auto g = k2();
  const auto b = build_ola_gadget(g, g.id("u"));
  EXPECT_EQ(names_of(b, b.right()), (Names{"e:u-v#1", "e:u-v#2", "r:u#1", "r:v#1"}));
  EXPECT_EQ(mgtest::edge_names(b.graph(), b.saturation), Names{"r:v#1-u#1"});
  expect_consistent(b);
}

TEST(OlaGadget, Triangle) {
  const auto g = k3();
  const auto b = build_ola_gadget(g, g.id("a"));
  EXPECT_EQ(b.right().size(), 9u);
  EXPECT_EQ(b.saturation.size(), 4u);
  EXPECT_EQ(static_cast<long long>(b.saturation.size()), eval_saturation(g, g.id("a")));
}

TEST(OlaGadget, RejectsBadSources) {
  auto disconnected = k2();
  disconnected.add_vertex("z");
  EXPECT_THROW(build_ola_gadget(disconnected, 0), DomainError);
  EXPECT_THROW(build_ola_gadget(UndirectedGraph({"solo"}), 0), DomainError);
  EXPECT_THROW(build_ola_gadget(k2(), 5), DomainError);
}

TEST(McLaGadget, PawSaturatedAtC) {
  const auto g = paw();
  const auto b = build_mcla_gadget(g, g.id("c"));
  EXPECT_EQ(b.left().size(), 16u);
  EXPECT_EQ(b.right().size(), 16u);
  const auto sat = saturated_vertices(b.bip);
  for (auto c : b.copy_ids[g.id("c")]) EXPECT_TRUE(std::count(sat.begin(), sat.end(), c));
  expect_consistent(b);
}

TEST(McLaGadget, SingleEdgeAndPath) {
  const auto e = build_mcla_gadget(k2(), 0);
  EXPECT_EQ(e.copies_per_vertex, 2u);
  EXPECT_EQ(e.residual_ids[0].size(), 1u);
  EXPECT_EQ(e.residual_ids[1].size(), 1u);
  EXPECT_EQ(e.right().size(), 4u);
  const auto g = p3();
  const auto p = build_mcla_gadget(g, g.id("v"));
  EXPECT_EQ(p.copies_per_vertex, 3u);
  EXPECT_EQ(p.right().size(), 9u);
  expect_consistent(p);
}

TEST(EdsGadget, PawSaturatedAtC) {
  const auto g = paw();
  const auto b = build_eds_gadget(g, g.id("c"));
  EXPECT_EQ(b.right().size(), 12u);
  EXPECT_EQ(b.saturation.size(), 8u);
  expect_consistent(b);
}

TEST(EdsGadget, SingleEdgeAndTriangle) {
  const auto e = build_eds_gadget(k2(), 0);
  EXPECT_EQ(names_of(e, e.right()), (Names{"e:u-v#1", "r:u#1", "r:v#1"}));
  const auto t = build_eds_gadget(k3(), 0);
  std::size_t edge_nodes = 0, residuals = 0;
  for (auto q : t.right()) (t.roles[q].kind == RoleKind::EdgeNode ? edge_nodes : residuals)++;
  EXPECT_EQ(edge_nodes, 3u);
  EXPECT_EQ(residuals, 3u);
}

// --- completion, chains, saturation ---------------------------------------

TEST(PartitionCompletion, ChainExample) {
  const auto full = chain_example(true);
  EXPECT_TRUE(is_chordal(partition_completion(full)).chordal);
  EXPECT_FALSE(is_chordal(partition_completion(chain_example(false))).chordal);
  EXPECT_TRUE(is_chordal(partition_completion(chain_example(false), CompletionScope::LeftOnly)).chordal);
}

TEST(PartitionCompletion, SingletonSidesAddNothing) {
  BipartiteGraph b;
  b.add_vertex("p", Side::P);
  b.add_vertex("q", Side::Q);
  const auto c = partition_completion(b);
  EXPECT_EQ(c.num_vertices(), 2u);
  EXPECT_EQ(c.num_edges(), 0u);
}

TEST(PartitionCompletion, EdgesMustCrossSides) {
  BipartiteGraph b;
  b.add_vertex("p1", Side::P);
  b.add_vertex("p2", Side::P);
  EXPECT_THROW(b.add_edge(0, 1), DomainError);
}

TEST(IsChain, ChainExample) {
  EXPECT_FALSE(is_chain(chain_example(false)).chain);
  const auto full = chain_example(true);
  const auto r = is_chain(full);
  ASSERT_TRUE(r.chain);
  Names order;
  for (auto v : *r.order) order.push_back(full.graph.name(v));
  EXPECT_EQ(order, (Names{"2", "1"}));
}

TEST(IsChain, StarIsChain) {
  BipartiteGraph b;
  b.add_vertex("hub", Side::P);
  for (int i = 0; i < 4; ++i) b.add_edge(0, b.add_vertex("q" + std::to_string(i), Side::Q));
  EXPECT_TRUE(is_chain(b).chain);
}

TEST(SaturatedVertices, ChainExample) {
  const auto full = chain_example(true);
  Names sat;
  for (auto v : saturated_vertices(full)) sat.push_back(full.graph.name(v));
  std::sort(sat.begin(), sat.end());
  // 2 sees all of Q; a and b see both P vertices and so qualify as well
  EXPECT_TRUE(std::count(sat.begin(), sat.end(), "2"));
  EXPECT_EQ(sat, (Names{"2", "a", "b"}));
}

TEST(SaturatedVertices, BaseOlaGadgetHasNone) {
  EXPECT_TRUE(saturated_vertices(build_base_gadget(GadgetKind::Ola, paw()).bip).empty());
}

TEST(SaturatedVertices, CompleteBipartiteAll) {
  BipartiteGraph b;
  for (int i = 0; i < 2; ++i) b.add_vertex("p" + std::to_string(i), Side::P);
  for (int j = 0; j < 3; ++j) {
    const auto q = b.add_vertex("q" + std::to_string(j), Side::Q);
    b.add_edge(0, q);
    b.add_edge(1, q);
  }
  EXPECT_EQ(saturated_vertices(b).size(), 5u);
}

TEST(ChainFillSet, SingleEdgeBaseGadget) {
  const auto g = k2();
  const auto b = build_base_gadget(GadgetKind::Ola, g);
  const auto r = chain_fill_set(b.bip, p_order_from_alpha(b, by_names(g, {"u", "v"})));
  EXPECT_EQ(mgtest::edge_names(b.graph(), r.fill), Names{"r:v#1-u#1"});
  EXPECT_EQ(static_cast<long long>(r.fill.size()), eval_base_fill(g, 1));
}

TEST(ChainFillSet, ChainNeedsNothingAlongItsWitness) {
  // neighbourhoods shrink along (2, 1), so every Q vertex sees a prefix
  const auto full = chain_example(true);
  EXPECT_TRUE(chain_fill_set(full, *is_chain(full).order).fill.empty());
  const auto w = *is_chain(full).order;
  const std::vector<VertexId> reverse(w.rbegin(), w.rend());
  EXPECT_EQ(mgtest::edge_names(full.graph, chain_fill_set(full, reverse).fill), Names{"1-c"});
}

TEST(ChainFillSet, PawGadgetMatchesLambda) {
  const auto g = paw();
  const auto b = build_ola_gadget(g, g.id("c"));
  const auto alpha = by_names(g, {"c", "a", "b", "d"});
  const auto r = chain_fill_set(b.bip, p_order_from_alpha(b, alpha));
  EXPECT_EQ(static_cast<long long>(r.fill.size()), eval_lambda(g, g.id("c"), ola_cost(g, alpha)));
  EXPECT_TRUE(is_chain(with_fill(b.bip, r.fill)).chain);
}

TEST(ChainFillSet, Errors) {
  const auto full = chain_example(true);
  const auto p = full.vertices(Side::P);
  EXPECT_THROW(chain_fill_set(full, std::vector<VertexId>{p[0]}), DomainError);
  BipartiteGraph lonely;
  lonely.add_vertex("p", Side::P);
  lonely.add_vertex("q", Side::Q);
  EXPECT_THROW(chain_fill_set(lonely, std::vector<VertexId>{0}), DomainError);
}

// --- objectives and closed forms ------------------------------------------

TEST(Objectives, PathAndPaw) {
  const auto g = p3();
  const auto a = by_names(g, {"u", "v", "w"});
  EXPECT_EQ(ola_cost(g, a), 2u);
  EXPECT_EQ(linear_cut_value(g, a), 1u);
  EXPECT_EQ(elim_degree_sequence(g, a), (std::vector<std::size_t>{1, 1, 0}));

  const auto pw = paw();
  const auto b = by_names(pw, {"d", "c", "a", "b"});
  EXPECT_EQ(ola_cost(pw, b), 5u);
  EXPECT_EQ(linear_cut_value(pw, b), 2u);

  const auto e = k2();
  const auto c = by_names(e, {"u", "v"});
  EXPECT_EQ(ola_cost(e, c), 1u);
  EXPECT_EQ(linear_cut_value(e, c), 1u);
  EXPECT_EQ(elim_degree_sequence(e, c), (std::vector<std::size_t>{1, 0}));
  EXPECT_THROW(ola_cost(e, VertexOrdering::identity(3)), DomainError);
}

TEST(ClosedForms, KnownValues) {
  const auto pw = paw();
  EXPECT_EQ(eval_saturation(pw, pw.id("c")), 9);
  EXPECT_EQ(brute_min_mcla(pw).value, 2u);
  EXPECT_EQ(eval_omega(pw, 2).max_clique_size, 22);
  EXPECT_EQ(eval_omega(pw, 2).max_elimination_degree, 21);
  EXPECT_EQ(eval_lambda(k2(), 0, 1), 0);
}

TEST(ClosedForms, BlockPositions) {
  EXPECT_EQ(pi_p_position(3, 2, 1), 8u);
  EXPECT_EQ(pi_p_position(3, 1, 4), 1u);
  const auto g = p3();
  const auto b = build_mcla_gadget(g, g.id("v"));
  const auto order = pi_p_from_alpha(b, by_names(g, {"u", "v", "w"}));
  ASSERT_EQ(order.size(), 9u);
  EXPECT_EQ(b.graph().name(order[3]), "v#3");
  EXPECT_EQ(b.graph().name(order[4]), "v#2");
  EXPECT_EQ(b.graph().name(order[5]), "v#1");
}

TEST(ClosedForms, KiDeltaInputChecks) {
  const auto g = p3();
  const std::vector<std::size_t> short_d{1, 1};
  EXPECT_THROW(eval_ki_delta(g, VertexOrdering::identity(3), short_d), DomainError);
  const std::vector<std::size_t> big{3, 0, 0};
  EXPECT_THROW(eval_ki_delta(g, VertexOrdering::identity(3), big), DomainError);
}

TEST(MoralityWitness, PawGadgets) {
  const auto g = paw();
  for (auto kind : {GadgetKind::Ola, GadgetKind::Mcla, GadgetKind::Eds}) {
    const auto b = build_gadget(kind, g, g.id("c"));
    const auto kit = morality_witness(b);
    EXPECT_EQ(kit.ordering[0], b.residual_ids[g.id("c")][0]);
    EXPECT_TRUE(verify_pek(partition_completion(b.bip), kit)) << to_string(kind);
  }
  EXPECT_THROW(morality_witness(build_base_gadget(GadgetKind::Ola, g)), DomainError);
}

// --- properties ----------------------------------------------------------

TEST(ReductionProperties, ChordalCompletionIffChain) {
  for (std::size_t total = 2; total <= 6; ++total)
    for (std::size_t p = 1; p < total; ++p)
      for_each_bipartite(p, total - p, [&](const BipartiteGraph& b) {
        ASSERT_EQ(is_chordal(partition_completion(b)).chordal, is_chain(b).chain);
      });
}

TEST(ReductionProperties, NoSaturatedVertexNoSimplicialVertex) {
  for (std::size_t total = 2; total <= 7; ++total)
    for (std::size_t p = 1; p < total; ++p)
      for_each_bipartite(p, total - p, [&](const BipartiteGraph& b) {
        if (!b.graph.is_connected() || !saturated_vertices(b).empty()) return;
        const auto c = partition_completion(b);
        for (VertexId v = 0; v < c.num_vertices(); ++v) ASSERT_FALSE(is_simplicial(c, v));
      });
}

TEST(ReductionProperties, LeftCompletionIsChordal) {
  for (std::size_t total = 2; total <= 6; ++total)
    for (std::size_t p = 1; p < total; ++p)
      for_each_bipartite(p, total - p, [&](const BipartiteGraph& b) {
        ASSERT_TRUE(is_chordal(partition_completion(b, CompletionScope::LeftOnly)).chordal);
      });
}

TEST(ReductionProperties, WitnessKitsForAllSmallSources) {
  for (const auto& g : connected_graphs_up_to(4, 2))
    for (VertexId w = 0; w < g.num_vertices(); ++w)
      for (auto kind : {GadgetKind::Ola, GadgetKind::Mcla, GadgetKind::Eds}) {
        const auto b = build_gadget(kind, g, w);
        expect_consistent(b);
        const auto c = partition_completion(b.bip);
        ASSERT_TRUE(is_simplicial(c, b.residual_ids[w][0]));
        ASSERT_TRUE(verify_pek(c, morality_witness(b)));
      }
}

TEST(ReductionProperties, BaseFillForEveryOrdering) {
  for (const auto& g : connected_graphs_up_to(5, 2)) {
    const auto b = build_base_gadget(GadgetKind::Ola, g);
    mgtest::for_each_permutation(g.num_vertices(), [&](const VertexOrdering& alpha) {
      const auto r = chain_fill_set(b.bip, p_order_from_alpha(b, alpha));
      ASSERT_EQ(static_cast<long long>(r.fill.size()), eval_base_fill(g, static_cast<long long>(ola_cost(g, alpha))));
    });
  }
}

TEST(ReductionProperties, SaturatedFillWithWFirst) {
  for (const auto& g : connected_graphs_up_to(4, 2))
    for (VertexId w = 0; w < g.num_vertices(); ++w) {
      const auto b = build_ola_gadget(g, w);
      EXPECT_EQ(static_cast<long long>(b.saturation.size()), eval_saturation(g, w));
      mgtest::for_each_permutation(g.num_vertices(), [&](const VertexOrdering& alpha) {
        if (alpha[0] != w) return;
        const auto r = chain_fill_set(b.bip, p_order_from_alpha(b, alpha));
        ASSERT_EQ(static_cast<long long>(r.fill.size()),
                  eval_lambda(g, w, static_cast<long long>(ola_cost(g, alpha))));
        // the chain fill is the triangulation of the completion along reversed P, then Q
        const auto c = partition_completion(b.bip);
        auto p = p_order_from_alpha(b, alpha);
        std::reverse(p.begin(), p.end());
        EXPECT_EQ(triangulate_by_ordering(c, p_then_q(b.bip, p)), r.fill);
      });
    }
}

TEST(ReductionProperties, ReverseChainOrderIsPerfect) {
  std::mt19937_64 rng(41);
  for (int s = 0; s < 200; ++s) {
    std::uniform_int_distribution<std::size_t> total_d(2, 12);
    const auto total = total_d(rng);
    const auto p = std::uniform_int_distribution<std::size_t>(1, total - 1)(rng);
    const auto b = random_chain(p, total - p, rng);
    const auto chain = is_chain(b);
    ASSERT_TRUE(chain.chain);
    auto q = b.vertices(Side::Q);
    std::shuffle(q.begin(), q.end(), rng);
    std::vector<VertexId> order(chain.order->rbegin(), chain.order->rend());
    order.insert(order.end(), q.begin(), q.end());
    EXPECT_TRUE(verify_pek(partition_completion(b), EliminationKit::with_empty_excesses(VertexOrdering(order))));
  }
}

// The width and clique-size closed forms hold with w placed last.
TEST(ReductionProperties, BlockOrderingWidthWithWLast) {
  for (const auto& g : {p3(), paw()})
    for (VertexId w = 0; w < g.num_vertices(); ++w) {
      const auto b = build_mcla_gadget(g, w);
      const auto c = partition_completion(b.bip);
      const auto n = static_cast<long long>(g.num_vertices());
      const auto delta = static_cast<long long>(g.max_degree());
      std::size_t best = SIZE_MAX;
      mgtest::for_each_permutation(g.num_vertices(), [&](const VertexOrdering& alpha) {
        if (alpha[alpha.size() - 1] != w) return;
        const auto width = width_of_ordering(c, p_then_q(b.bip, pi_p_from_alpha(b, alpha)));
        const auto cut = static_cast<long long>(linear_cut_value(g, alpha));
        ASSERT_EQ(static_cast<long long>(width), (delta + 1) * (n + 1) - 1 + cut);
        best = std::min(best, width);
      });
      const auto k = brute_min_mcla(g, OrderingRestriction::last(w)).value;
      EXPECT_EQ(static_cast<long long>(best), eval_omega(g, static_cast<long long>(k)).max_elimination_degree);
    }
}

TEST(ReductionProperties, EdsCliqueSizesWithWLast) {
  for (const auto& g : connected_graphs_up_to(4, 2))
    for (VertexId w = 0; w < g.num_vertices(); ++w) {
      const auto b = build_eds_gadget(g, w);
      const auto c = partition_completion(b.bip);
      mgtest::for_each_permutation(g.num_vertices(), [&](const VertexOrdering& alpha) {
        if (alpha[alpha.size() - 1] != w) return;
        const auto t = c.with_edges(triangulate_by_ordering(c, p_then_q(b.bip, p_order_from_alpha(b, alpha))));
        std::vector<long long> sizes;
        for (const auto& cl : maximal_cliques(t)) sizes.push_back(static_cast<long long>(cl.size()));
        std::sort(sizes.begin(), sizes.end());
        const auto d = elim_degree_sequence(g, alpha);
        const auto kd = eval_ki_delta(g, alpha, d);
        auto k = kd.k;
        std::sort(k.begin(), k.end());
        ASSERT_EQ(sizes, k);
        EXPECT_EQ(kd.delta_sum, std::accumulate(sizes.begin(), sizes.end(), 0LL));
        EXPECT_EQ(kd.delta_binary, total_states(t, StateMap(t.num_vertices())));
      });
    }
}

}  // namespace
