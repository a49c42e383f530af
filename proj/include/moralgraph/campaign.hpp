#pragma once

// Verification campaigns: each one sweeps an instance family, evaluates a
// closed form or a structural claim about the gadgets, measures the same
// quantity with a solver or an oracle, and records both.
//
// Claims that depend on where the chosen vertex w sits in the source
// ordering are measured with w fixed first, with w fixed last, or both
// (Mode::Auto). Under Auto the report names the modes in which every record
// agrees and passes iff there is at least one.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "moralgraph/enumerate.hpp"
#include "moralgraph/graph.hpp"
#include "moralgraph/morality.hpp"
#include "moralgraph/oracles.hpp"
#include "moralgraph/reductions.hpp"
#include "moralgraph/triangulation.hpp"

namespace moralgraph {

enum class Mode { First, Last, Auto };

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::First:
      return "first";
    case Mode::Last:
      return "last";
    case Mode::Auto:
      return "auto";
  }
  return "?";
}

inline Mode parse_mode(const std::string& s) {
  if (s == "first") return Mode::First;
  if (s == "last") return Mode::Last;
  if (s == "auto") return Mode::Auto;
  throw DomainError("unknown mode '" + s + "' (expected first, last or auto)");
}

struct CampaignOptions {
  std::optional<std::size_t> max_n;  // per-campaign default when absent
  std::uint64_t seed = 1;
  Mode mode = Mode::Auto;
  std::size_t samples = 200;
};

struct CampaignRecord {
  std::string instance;
  std::string quantity;
  std::string mode;  // "first" / "last" for mode-dependent records, empty otherwise
  BigInt predicted = 0;
  BigInt measured = 0;
  std::string note;

  bool equal() const { return predicted == measured; }
  BigInt delta() const { return measured - predicted; }
};

struct CampaignReport {
  std::string lemma;
  std::string title;
  std::size_t max_n = 0;
  std::uint64_t seed = 0;
  Mode mode = Mode::Auto;
  bool mode_dependent = false;
  std::vector<CampaignRecord> records;

  // Modes (among those run) in which no mode-tagged record mismatches.
  std::vector<std::string> consistent_modes() const {
    std::vector<std::string> out;
    for (const char* m : {"first", "last"}) {
      bool ran = false, clean = true;
      for (const auto& r : records)
        if (r.mode == m) {
          ran = true;
          clean = clean && r.equal();
        }
      if (ran && clean) out.emplace_back(m);
    }
    return out;
  }

  std::optional<std::string> selected_mode() const {
    if (!mode_dependent) return std::nullopt;
    const auto ok = consistent_modes();
    if (ok.empty()) return std::nullopt;
    return ok.front();
  }

  bool counts(const CampaignRecord& r) const {
    if (r.mode.empty() || mode != Mode::Auto) return true;
    const auto sel = selected_mode();
    return !sel || r.mode == *sel;
  }

  std::size_t mismatches() const {
    std::size_t bad = 0;
    for (const auto& r : records)
      if (counts(r) && !r.equal()) ++bad;
    return bad;
  }

  bool passed() const {
    if (mode_dependent && mode == Mode::Auto && !selected_mode()) return false;
    return mismatches() == 0;
  }

  const CampaignRecord* first_mismatch() const {
    for (const auto& r : records)
      if (counts(r) && !r.equal()) return &r;
    return nullptr;
  }
};

namespace detail {

inline nlohmann::json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

}  // namespace detail

inline nlohmann::json to_json(const CampaignReport& rep) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : rep.records) {
    nlohmann::json j{{"instance", r.instance},
                     {"quantity", r.quantity},
                     {"predicted", detail::big_to_json(r.predicted)},
                     {"measured", detail::big_to_json(r.measured)},
                     {"verdict", r.equal() ? "equal" : "mismatch"},
                     {"delta", detail::big_to_json(r.delta())}};
    if (!r.mode.empty()) j["mode"] = r.mode;
    if (!r.note.empty()) j["note"] = r.note;
    records.push_back(std::move(j));
  }
  nlohmann::json out{{"lemma", rep.lemma},
                     {"title", rep.title},
                     {"max_n", rep.max_n},
                     {"seed", rep.seed},
                     {"mode", to_string(rep.mode)},
                     {"records", std::move(records)},
                     {"total_records", rep.records.size()},
                     {"mismatches", rep.mismatches()},
                     {"passed", rep.passed()}};
  if (rep.mode_dependent) {
    out["consistent_modes"] = rep.consistent_modes();
    const auto sel = rep.selected_mode();
    out["selected_mode"] = sel ? nlohmann::json(*sel) : nlohmann::json(nullptr);
  }
  return out;
}

namespace detail {

inline std::string describe(const UndirectedGraph& g) {
  std::ostringstream s;
  s << "n=" << g.num_vertices() << " E={";
  bool first = true;
  for (const auto& e : g.edges()) {
    s << (first ? "" : ",") << g.name(e.u) << g.name(e.v);
    first = false;
  }
  s << '}';
  return s.str();
}

inline std::string describe(const UndirectedGraph& g, const VertexOrdering& alpha) {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < alpha.size(); ++i) s << (i ? "," : "") << g.name(alpha[i]);
  s << ')';
  return s.str();
}

inline std::string describe_bipartite(const BipartiteGraph& b) {
  std::ostringstream s;
  s << "P=" << b.vertices(Side::P).size() << " Q=" << b.vertices(Side::Q).size() << " E={";
  bool first = true;
  for (const auto& e : b.graph.edges()) {
    s << (first ? "" : ",") << b.graph.name(e.u) << b.graph.name(e.v);
    first = false;
  }
  s << '}';
  return s.str();
}

inline std::vector<VertexOrdering> admitted_orderings(std::size_t n, const OrderingRestriction& r) {
  std::vector<VertexOrdering> out;
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  do {
    VertexOrdering alpha(perm);
    if (r.admits(alpha)) out.push_back(std::move(alpha));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline std::vector<Mode> modes_to_run(Mode m) {
  if (m == Mode::Auto) return {Mode::First, Mode::Last};
  return {m};
}

inline OrderingRestriction restriction_for(Mode m, VertexId w) {
  return m == Mode::First ? OrderingRestriction::first(w) : OrderingRestriction::last(w);
}

inline CampaignRecord record(std::string instance, std::string quantity, BigInt predicted, BigInt measured,
                             std::string mode = {}, std::string note = {}) {
  return {std::move(instance), std::move(quantity), std::move(mode), std::move(predicted), std::move(measured),
          std::move(note)};
}

inline BigInt flag(bool b) { return b ? 1 : 0; }

// Connected instances with 2..max_n vertices.
inline std::vector<UndirectedGraph> gadget_sources(std::size_t max_n) { return connected_graphs_up_to(max_n, 2); }

// Elimination ordering of a completed gadget: P copies along alpha (the
// pi_P block order for multi-copy gadgets), then Q ascending.
inline VertexOrdering gadget_elimination_order(const BipartiteGadget& gadget, const VertexOrdering& alpha) {
  const auto p = p_order_from_alpha(gadget, alpha);
  return p_then_q(gadget.bip, p);
}

// Morality of the completed saturated gadget, witnessed by the kit that
// starts at the first residual of w.
inline void morality_records(CampaignReport& rep, GadgetKind kind, std::size_t max_n) {
  for (const auto& g : gadget_sources(max_n))
    for (VertexId w = 0; w < g.num_vertices(); ++w) {
      const auto gadget = build_gadget(kind, g, w);
      const auto c = partition_completion(gadget.bip);
      const auto inst = describe(g) + " w=" + g.name(w);
      const auto r1 = gadget.residual_ids[w].front();
      rep.records.push_back(record(inst, "first residual of w is simplicial", 1, flag(is_simplicial(c, r1))));
      rep.records.push_back(record(inst, "witness kit is perfect", 1, flag(verify_pek(c, morality_witness(gadget)))));
    }
}

}  // namespace detail

// Largest completed gadgets handed to the exact treewidth and total states
// solvers inside campaigns.
inline constexpr std::size_t exact_width_gadget_limit = 20;
inline constexpr std::size_t exact_states_gadget_limit = 10;

/// Default and maximum --max-n per campaign.
struct CampaignLimits {
  std::size_t default_n;
  std::size_t cap;
};

inline std::map<std::string, CampaignLimits> campaign_limits() {
  return {{"1", {7, 8}},  {"2", {8, 8}},  {"3", {7, 8}}, {"4", {4, 5}},  {"5", {4, 4}},  {"6", {4, 4}},
          {"7", {12, 16}}, {"9", {4, 5}}, {"10", {4, 4}}, {"eq2", {5, 6}}, {"eq3", {5, 7}}};
}

inline std::string canonical_lemma(const std::string& key) { return key == "8" ? "6" : key; }

inline CampaignReport run_campaign(const std::string& key, const CampaignOptions& opt = {}) {
  const auto lemma = canonical_lemma(key);
  const auto limits = campaign_limits();
  const auto it = limits.find(lemma);
  if (it == limits.end()) throw DomainError("unknown campaign '" + key + "'");
  const auto n = opt.max_n.value_or(it->second.default_n);
  if (n > it->second.cap) throw ResourceError("campaign " + lemma + " --max-n", n, it->second.cap);

  CampaignReport rep;
  rep.lemma = lemma;
  rep.max_n = n;
  rep.seed = opt.seed;
  rep.mode = opt.mode;
  auto& out = rep.records;
  using namespace detail;

  if (lemma == "1") {
    rep.title = "completion of a bipartite graph is chordal iff the graph is a chain graph";
    for (std::size_t total = 1; total <= n; ++total)
      for (std::size_t p = 0; p <= total; ++p) {
        std::size_t count = 0, agree = 0;
        std::string note;
        for_each_bipartite(p, total - p, [&](const BipartiteGraph& b) {
          ++count;
          const bool ok = is_chordal(partition_completion(b)).chordal == is_chain(b).chain;
          agree += ok;
          if (!ok && note.empty()) note = "first disagreement: " + describe_bipartite(b);
        });
        out.push_back(record("all bipartite P=" + std::to_string(p) + " Q=" + std::to_string(total - p),
                             "graphs where chordality of the completion equals chain-ness", count, agree, {}, note));
      }
  } else if (lemma == "2") {
    rep.title = "no saturated vertex implies no simplicial vertex in the completion";
    for (std::size_t total = 2; total <= n; ++total)
      for (std::size_t p = 1; p < total; ++p) {
        std::size_t count = 0, agree = 0;
        std::string note;
        for_each_bipartite(p, total - p, [&](const BipartiteGraph& b) {
          if (!b.graph.is_connected() || !saturated_vertices(b).empty()) return;
          ++count;
          const auto c = partition_completion(b);
          bool none = true;
          for (VertexId v = 0; v < c.num_vertices() && none; ++v) none = !is_simplicial(c, v);
          agree += none;
          if (!none && note.empty()) note = "first counterexample: " + describe_bipartite(b);
        });
        out.push_back(record("connected bipartite without saturated vertex P=" + std::to_string(p) +
                                 " Q=" + std::to_string(total - p),
                             "graphs whose completion has no simplicial vertex", count, agree, {}, note));
      }
    // the minimum fill-in gadget before and after saturating w
    for (const auto& g : gadget_sources(std::min<std::size_t>(n, 5))) {
      if (g.num_vertices() < 3) continue;
      const auto base = build_base_gadget(GadgetKind::Ola, g);
      out.push_back(record(describe(g), "saturated vertices of the unsaturated gadget", 0,
                           saturated_vertices(base.bip).size()));
    }
    const auto paw = fixtures::paw();
    const auto base = partition_completion(build_base_gadget(GadgetKind::Ola, paw).bip);
    PekSearchOptions wide{base.num_vertices(), 20'000'000};
    out.push_back(record(describe(paw), "completion of the unsaturated gadget is moral", 0, flag(is_moral(base, wide))));
    const auto sat = build_ola_gadget(paw, paw.id("c"));
    const auto c = partition_completion(sat.bip);
    out.push_back(record(describe(paw) + " w=c", "witness kit of the saturated gadget is perfect", 1,
                         flag(verify_pek(c, morality_witness(sat)))));
    out.push_back(record(describe(paw) + " w=c", "kit search finds the saturated gadget moral", 1,
                         flag(is_moral(c, PekSearchOptions{c.num_vertices(), 20'000'000}))));
  } else if (lemma == "3") {
    rep.title = "completing only P always gives a chordal graph";
    for (std::size_t total = 1; total <= n; ++total)
      for (std::size_t p = 0; p <= total; ++p) {
        std::size_t count = 0, chordal = 0;
        for_each_bipartite(p, total - p, [&](const BipartiteGraph& b) {
          ++count;
          chordal += is_chordal(partition_completion(b, CompletionScope::LeftOnly)).chordal;
        });
        out.push_back(record("all bipartite P=" + std::to_string(p) + " Q=" + std::to_string(total - p),
                             "graphs with chordal P-completion", count, chordal));
      }
  } else if (lemma == "4") {
    rep.title = "completed minimum fill-in gadget is moral";
    morality_records(rep, GadgetKind::Ola, n);
  } else if (lemma == "9") {
    rep.title = "completed total states gadget is moral";
    morality_records(rep, GadgetKind::Eds, n);
  } else if (lemma == "eq3") {
    rep.title = "number of saturation edges of the minimum fill-in gadget";
    for (const auto& g : gadget_sources(n))
      for (VertexId w = 0; w < g.num_vertices(); ++w)
        out.push_back(record(describe(g) + " w=" + g.name(w), "|S(w)|", eval_saturation(g, w),
                             build_ola_gadget(g, w).saturation.size()));
  } else if (lemma == "eq2") {
    rep.title = "chain fill-in of the unsaturated gadget along any ordering";
    for (const auto& g : gadget_sources(n)) {
      const auto base = build_base_gadget(GadgetKind::Ola, g);
      for (const auto& alpha : admitted_orderings(g.num_vertices(), {})) {
        const auto fill = chain_fill_set(base.bip, p_order_from_alpha(base, alpha)).fill.size();
        out.push_back(record(describe(g) + " alpha=" + describe(g, alpha), "chain fill-in",
                             eval_base_fill(g, static_cast<long long>(ola_cost(g, alpha))), fill));
      }
    }
  } else if (lemma == "5") {
    rep.title = "minimum fill-in of the completed gadget against the arrangement optimum";
    rep.mode_dependent = true;
    for (const auto& g : gadget_sources(n))
      for (VertexId w = 0; w < g.num_vertices(); ++w) {
        const auto inst = describe(g) + " w=" + g.name(w);
        const auto gadget = build_ola_gadget(g, w);
        out.push_back(record(inst, "|S(w)|", eval_saturation(g, w), gadget.saturation.size()));
        const auto c = partition_completion(gadget.bip);
        const auto measured = min_fill_exact(c, ExactOptions{c.num_vertices(), {}}).fill_in;
        for (auto m : modes_to_run(opt.mode)) {
          const auto r = restriction_for(m, w);
          for (const auto& alpha : admitted_orderings(g.num_vertices(), r)) {
            const auto fill = chain_fill_set(gadget.bip, p_order_from_alpha(gadget, alpha)).fill.size();
            out.push_back(record(inst + " alpha=" + describe(g, alpha), "chain fill-in along alpha",
                                 eval_lambda(g, w, static_cast<long long>(ola_cost(g, alpha))), fill, to_string(m)));
          }
          const auto k = brute_min_ola(g, r).value;
          out.push_back(record(inst, "minimum fill-in (lambda)", eval_lambda(g, w, static_cast<long long>(k)), measured,
                               to_string(m), "k=" + std::to_string(k)));
        }
      }
  } else if (lemma == "6") {
    rep.title = "treewidth gadget: width along block orderings and the omega target";
    rep.mode_dependent = true;
    morality_records(rep, GadgetKind::Mcla, n);
    for (const auto& g : gadget_sources(n))
      for (VertexId w = 0; w < g.num_vertices(); ++w) {
        const auto inst = describe(g) + " w=" + g.name(w);
        const auto gadget = build_mcla_gadget(g, w);
        const auto c = partition_completion(gadget.bip);
        const auto nn = static_cast<long long>(g.num_vertices());
        const auto delta = static_cast<long long>(g.max_degree());
        std::optional<std::size_t> exact_width;
        if (c.num_vertices() <= exact_width_gadget_limit)
          exact_width = treewidth_exact(c, ExactOptions{c.num_vertices(), {}}).width;
        for (auto m : modes_to_run(opt.mode)) {
          const auto r = restriction_for(m, w);
          std::optional<std::size_t> best;
          for (const auto& alpha : admitted_orderings(g.num_vertices(), r)) {
            const auto order = gadget_elimination_order(gadget, alpha);
            const auto trace = eliminate_in_order(c, order);
            std::size_t width = 0;
            for (const auto& h : trace.higher) width = std::max(width, h.count());
            const auto cut = cut_profile(g, alpha);
            const auto max_cut = static_cast<long long>(*std::max_element(cut.begin(), cut.end()));
            const auto ainst = inst + " alpha=" + describe(g, alpha);
            out.push_back(record(ainst, "width along block ordering", (delta + 1) * (nn + 1) - 1 + max_cut, width,
                                 to_string(m)));
            // elimination degree of the first copy in every block
            for (const auto& row : width_breakdown(g, alpha)) {
              const auto pos = (static_cast<std::size_t>(delta) + 1) * (row.position - 1);
              out.push_back(record(ainst + " i=" + std::to_string(row.position), "degree of first copy in block",
                                   row.closed_form, trace.higher[pos].count(), to_string(m)));
            }
            best = std::min(best.value_or(width), width);
          }
          const auto k = brute_min_mcla(g, r).value;
          const auto omega = eval_omega(g, static_cast<long long>(k));
          out.push_back(record(inst, "minimum max-clique size over block orderings (omega)", omega.max_clique_size,
                               *best + 1, to_string(m), "k=" + std::to_string(k)));
          out.push_back(record(inst, "minimum width over block orderings (omega-1)", omega.max_elimination_degree,
                               *best, to_string(m), "k=" + std::to_string(k)));
          if (exact_width)
            out.push_back(record(inst, "treewidth of the completed gadget (omega-1)", omega.max_elimination_degree,
                                 *exact_width, to_string(m), "k=" + std::to_string(k)));
        }
      }
  } else if (lemma == "7") {
    rep.title = "reverse chain ordering followed by any Q ordering is perfect";
    std::mt19937_64 rng(opt.seed);
    for (std::size_t s = 0; s < opt.samples; ++s) {
      std::uniform_int_distribution<std::size_t> total_d(2, std::max<std::size_t>(2, n));
      const auto total = total_d(rng);
      std::uniform_int_distribution<std::size_t> p_d(1, total - 1);
      const auto p = p_d(rng);
      const auto b = random_chain(p, total - p, rng);
      const auto chain = is_chain(b);
      auto q = b.vertices(Side::Q);
      std::shuffle(q.begin(), q.end(), rng);
      std::vector<VertexId> order(chain.order->rbegin(), chain.order->rend());
      order.insert(order.end(), q.begin(), q.end());
      const auto c = partition_completion(b);
      const auto ok = verify_pek(c, EliminationKit::with_empty_excesses(VertexOrdering(std::move(order))));
      out.push_back(record("sample " + std::to_string(s + 1) + " " + describe_bipartite(b), "ordering is perfect", 1,
                           flag(ok)));
    }
  } else if (lemma == "10") {
    rep.title = "total states gadget: clique sizes along the source ordering";
    rep.mode_dependent = true;
    for (const auto& g : gadget_sources(n))
      for (VertexId w = 0; w < g.num_vertices(); ++w) {
        const auto inst = describe(g) + " w=" + g.name(w);
        const auto gadget = build_eds_gadget(g, w);
        const auto c = partition_completion(gadget.bip);
        std::optional<BigInt> exact_states;
        if (c.num_vertices() <= exact_states_gadget_limit)
          exact_states = total_states_exact(c, StateMap(c.num_vertices()), ExactOptions{c.num_vertices(), {}}).states;
        for (auto m : modes_to_run(opt.mode)) {
          std::optional<BigInt> best;
          for (const auto& alpha : admitted_orderings(g.num_vertices(), restriction_for(m, w))) {
            const auto ainst = inst + " alpha=" + describe(g, alpha);
            const auto t = c.with_edges(triangulate_by_ordering(c, gadget_elimination_order(gadget, alpha)));
            const auto cliques = maximal_cliques(t);
            std::vector<long long> sizes;
            for (const auto& cl : cliques) sizes.push_back(static_cast<long long>(cl.size()));
            const auto d = elim_degree_sequence(g, alpha);
            const auto kd = eval_ki_delta(g, alpha, d);
            auto k_sorted = kd.k;
            std::sort(k_sorted.begin(), k_sorted.end());
            std::sort(sizes.begin(), sizes.end());
            auto show = [](const std::vector<long long>& v) {
              std::string s;
              for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
              return s;
            };
            const auto mode = to_string(m);
            out.push_back(record(ainst, "number of maximal cliques", kd.k.size(), cliques.size(), mode));
            out.push_back(record(ainst, "sorted clique sizes equal the k_i", 1, flag(sizes == k_sorted), mode,
                                 "k=" + show(k_sorted) + " measured=" + show(sizes)));
            out.push_back(record(ainst, "delta as the sum of k_i", kd.delta_sum,
                                 std::accumulate(sizes.begin(), sizes.end(), 0LL), mode));
            out.push_back(record(ainst, "delta as total binary states", kd.delta_binary,
                                 total_states(t, StateMap(t.num_vertices())), mode));
            if (!best || kd.delta_binary < *best) best = kd.delta_binary;
          }
          if (exact_states)
            out.push_back(record(inst, "minimum total states of the completed gadget", *best, *exact_states,
                                 to_string(m)));
        }
      }
  }
  return rep;
}

}  // namespace moralgraph
