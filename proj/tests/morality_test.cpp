#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "moralgraph/enumerate.hpp"
#include "moralgraph/morality.hpp"
#include "moralgraph/reductions.hpp"
#include "test_util.hpp"

using namespace moralgraph;
using namespace moralgraph::fixtures;
using mgtest::edge_names;

namespace {

using Names = std::vector<std::string>;

// The house kit: v5 goes first and takes v3v4 with it.
EliminationKit house_kit(const UndirectedGraph& g) {
  auto kit = EliminationKit::with_empty_excesses(ordering_from_names(g, {"v5", "v3", "v4", "v1", "v2"}));
  kit.excess[g.id("v5")] = mgtest::edges_of(g, {{"v3", "v4"}});
  return kit;
}

TEST(Moralize, HouseDagMarriesV3V4) {
  const auto m = moralize(house_dag());
  EXPECT_EQ(edge_names(m.graph, m.fill), Names{"v3-v4"});
  EXPECT_EQ(edge_names(m.graph), edge_names(house()));
}

TEST(Moralize, DirectedPathNeedsNoMarriage) {
  Dag d;
  for (auto n : {"v1", "v2", "v3"}) d.add_vertex(n);
  d.add_arc("v1", "v2");
  d.add_arc("v2", "v3");
  const auto m = moralize(d);
  EXPECT_TRUE(m.fill.empty());
  EXPECT_EQ(edge_names(m.graph), (Names{"v1-v2", "v2-v3"}));
}

TEST(Moralize, ColliderBecomesTriangle) {
  Dag d;
  for (auto n : {"u", "v", "x"}) d.add_vertex(n);
  d.add_arc("u", "x");
  d.add_arc("v", "x");
  const auto m = moralize(d);
  EXPECT_EQ(edge_names(m.graph, m.fill), Names{"u-v"});
  EXPECT_EQ(m.graph.num_edges(), 3u);
}

TEST(Moralize, SharedChildrenReportFillOnce) {
  Dag d;
  for (auto n : {"a", "b", "x", "y"}) d.add_vertex(n);
  for (auto c : {"x", "y"}) {
    d.add_arc("a", c);
    d.add_arc("b", c);
  }
  EXPECT_EQ(moralize(d).fill.size(), 1u);
}

TEST(Moralize, CyclicInputIsDomainError) {
  Dag d;
  for (auto n : {"a", "b", "c"}) d.add_vertex(n);
  d.add_arc("a", "b");
  d.add_arc("b", "c");
  d.add_arc("c", "a");
  EXPECT_THROW(moralize(d), DomainError);
}

TEST(VerifyPek, HouseKitAccepted) {
  const auto g = house();
  EXPECT_TRUE(verify_pek(g, house_kit(g)));
}

TEST(VerifyPek, BannerRejectsEveryEmptyKitStartingAtV1) {
  const auto g = banner();
  const auto v1 = g.id("v1");
  std::size_t tried = 0;
  mgtest::for_each_permutation(g.num_vertices(), [&](const VertexOrdering& alpha) {
    if (alpha[0] != v1) return;
    ++tried;
    EXPECT_FALSE(verify_pek(g, EliminationKit::with_empty_excesses(alpha)));
  });
  EXPECT_EQ(tried, 24u);
}

TEST(VerifyPek, ChordalPeoWithEmptyExcesses) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    const auto g = random_chordal(7, 0.4, rng);
    EXPECT_TRUE(verify_pek(g, EliminationKit::with_empty_excesses(*is_chordal(g).peo)));
  }
}

TEST(VerifyPek, WrongSizeIsDomainError) {
  const auto g = house();
  EXPECT_THROW(verify_pek(g, EliminationKit::with_empty_excesses(VertexOrdering::identity(4))), DomainError);
  auto kit = house_kit(g);
  kit.excess.pop_back();
  EXPECT_THROW(verify_pek(g, kit), DomainError);
}

TEST(VerifyPek, BadExcessReportsStep) {
  const auto g = house();
  auto kit = house_kit(g);
  // v3 is the second vertex; v1v2 is not inside its neighbourhood
  kit.excess[g.id("v3")] = mgtest::edges_of(g, {{"v1", "v2"}});
  try {
    verify_pek(g, kit);
    FAIL() << "expected a contract violation";
  } catch (const ContractViolation& e) {
    EXPECT_EQ(e.step(), 2u);
  }
}

TEST(FindPek, HouseHasKit) {
  const auto g = house();
  const auto kit = find_pek(g);
  ASSERT_TRUE(kit.has_value());
  EXPECT_TRUE(verify_pek(g, *kit));
  EXPECT_EQ(kit->ordering[0], g.id("v5"));
}

TEST(FindPek, BannerAndCyclesHaveNone) {
  EXPECT_FALSE(find_pek(banner()).has_value());
  for (std::size_t n = 4; n <= 8; ++n) EXPECT_FALSE(find_pek(cycle(n)).has_value()) << n;
}

TEST(FindPek, VertexCapIsResourceError) {
  PekSearchOptions opt;
  opt.vertex_cap = 4;
  EXPECT_THROW(find_pek(house(), opt), ResourceError);
  try {
    find_pek(house(), opt);
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.required(), 5u);
    EXPECT_EQ(e.cap(), 4u);
  }
}

TEST(IsMoral, PawGadgetNeedsSaturation) {
  const auto g = paw();
  PekSearchOptions wide;
  wide.vertex_cap = 32;
  EXPECT_TRUE(is_moral(partition_completion(build_ola_gadget(g, g.id("c")).bip), wide));
  EXPECT_FALSE(is_moral(partition_completion(build_base_gadget(GadgetKind::Ola, g).bip), wide));
}

TEST(IsMoral, ChordalGraphsAreMoral) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) EXPECT_TRUE(is_moral(random_chordal(9, 0.3, rng)));
}

TEST(MoralityProperties, MoralClosureOfRandomDags) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + i % 7;
    const auto m = moralize(random_dag(n, 0.45, rng));
    const auto kit = find_pek(m.graph);
    ASSERT_TRUE(kit.has_value()) << "dag " << i;
    EXPECT_TRUE(verify_pek(m.graph, *kit));
  }
}

TEST(MoralityProperties, ChordalKitsHaveEmptyExcesses) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_chordal(1 + i % 8, 0.35, rng);
    const auto kit = find_pek(g);
    ASSERT_TRUE(kit.has_value());
    for (const auto& ex : kit->excess) EXPECT_TRUE(ex.empty());
    EXPECT_TRUE(verify_pek(g, *kit));
  }
}

TEST(MoralityProperties, FirstStepUnrollsOneLevel) {
  for (std::size_t n = 2; n <= 6; ++n)
    for (const auto& g : connected_graphs(n)) {
      const auto kit = find_pek(g);
      if (!kit) continue;
      const auto x = kit->ordering[0];
      ASSERT_TRUE(is_simplicial(g, x));
      EXPECT_TRUE(find_pek(eliminate(g, x, kit->excess[x])).has_value());
    }
}

// verify_pek against a step-by-step replay with the graph-core primitives.
TEST(MoralityProperties, KitCheckIsSequentialElimination) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto g = random_graph(6, 0.55, rng);
    std::vector<VertexId> perm(g.num_vertices());
    std::iota(perm.begin(), perm.end(), VertexId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    auto kit = EliminationKit::with_empty_excesses(VertexOrdering(perm));
    // random excess for the first vertex, drawn from its neighbourhood
    const auto x = perm[0];
    std::bernoulli_distribution coin(0.5);
    const auto nb = members(g.neighbors(x));
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        if (g.has_edge(nb[a], nb[b]) && coin(rng)) kit.excess[x].push_back(make_edge(nb[a], nb[b]));

    bool replay = true;
    auto work = g;
    for (std::size_t step = 0; step < perm.size() && replay; ++step) {
      const auto v = perm[step];
      const auto local = work.id(g.name(v));
      if (!is_simplicial(work, local)) {
        replay = false;
        break;
      }
      EdgeList ex;
      for (const auto& e : kit.excess[v]) ex.push_back(make_edge(work.id(g.name(e.u)), work.id(g.name(e.v))));
      normalize(ex);
      work = eliminate(work, local, ex);
    }
    EXPECT_EQ(verify_pek(g, kit), replay);
  }
}

}  // namespace
