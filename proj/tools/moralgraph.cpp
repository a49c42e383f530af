// Command-line front end: graph ingestion, gadget construction, solvers and
// verification campaigns.
//
// Exit codes: 0 ok, 1 verification mismatch, 2 parse/usage error,
// 3 semantic error, 4 resource cap exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "moralgraph/campaign.hpp"
#include "moralgraph/io.hpp"
#include "moralgraph/morality.hpp"
#include "moralgraph/reductions.hpp"
#include "moralgraph/triangulation.hpp"

namespace mg = moralgraph;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kParse = 2, kSemantic = 3, kResource = 4 };

std::size_t env_cap(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    const auto n = std::stoull(v, &used);
    if (used == std::string(v).size()) return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
  }
  throw mg::DomainError(std::string("environment variable ") + name + " is not a non-negative integer");
}

std::string format_edges(const mg::UndirectedGraph& g, const mg::EdgeList& edges) {
  std::string s = "{";
  for (std::size_t i = 0; i < edges.size(); ++i) s += (i ? "," : "") + g.edge_name(edges[i]);
  return s + "}";
}

std::string format_ordering(const mg::UndirectedGraph& g, const mg::VertexOrdering& alpha) {
  std::string s = "(";
  for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? "," : "") + g.name(alpha[i]);
  return s + ")";
}

// Reads an undirected graph, moralizing directed input.
mg::UndirectedGraph load_undirected(const std::string& path, bool announce) {
  auto file = mg::read_graph_file(path);
  if (auto* g = std::get_if<mg::UndirectedGraph>(&file.graph)) return std::move(*g);
  auto m = mg::moralize(std::get<mg::Dag>(file.graph));
  if (announce) std::cout << "moralized F=" << format_edges(m.graph, m.fill) << '\n';
  return std::move(m.graph);
}

void write_to(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw mg::DomainError("cannot write '" + path + "'");
  out << content;
}

struct TransformArgs {
  std::string input, problem = "ola", w, out_prefix;
  bool base = false;
};

int cmd_transform(const TransformArgs& a) {
  const auto g = load_undirected(a.input, false);
  const auto kind = mg::parse_gadget_kind(a.problem);
  const auto w = g.id(a.w);
  const auto gadget = a.base ? mg::build_base_gadget(kind, g) : mg::build_gadget(kind, g, w);
  std::cout << "|P|=" << gadget.left().size() << " |Q|=" << gadget.right().size() << " |S(" << a.w
            << ")|=" << gadget.saturation.size() << '\n';
  if (!a.out_prefix.empty()) {
    const auto stem = a.out_prefix;
    std::ostringstream gadget_text, completion_text, dot_text;
    mg::write_gadget(gadget_text, gadget, a.problem);
    mg::write_graph(completion_text, mg::partition_completion(gadget.bip), a.problem + "-completion");
    mg::write_dot(dot_text, gadget, a.problem);
    write_to(stem + ".gadget", gadget_text.str());
    write_to(stem + ".graph", completion_text.str());
    write_to(stem + ".dot", dot_text.str());
  }
  return kOk;
}

struct SolveArgs {
  std::string input, objective = "fillin", fix_first, fix_last;
  bool greedy = false;
  std::optional<std::size_t> cap;
};

int cmd_solve(const SolveArgs& a) {
  const auto g = load_undirected(a.input, true);
  mg::OrderingRestriction r;
  if (!a.fix_first.empty()) r = mg::OrderingRestriction::first(g.id(a.fix_first));
  if (!a.fix_last.empty()) r = mg::OrderingRestriction::last(g.id(a.fix_last));

  if (a.greedy) {
    if (a.objective != "fillin") throw mg::DomainError("--greedy is only available for fillin");
    if (r.kind != mg::OrderingRestriction::Kind::None) throw mg::DomainError("--greedy takes no ordering restriction");
    const auto res = mg::greedy_min_fill(g);
    std::cout << "lambda=" << res.fill.size() << " (greedy)\n"
              << "witness=" << format_ordering(g, res.ordering) << '\n'
              << "fill=" << format_edges(g, res.fill) << '\n';
    return kOk;
  }
  if (a.objective == "fillin" || a.objective == "treewidth") {
    const mg::ExactOptions opt{a.cap.value_or(env_cap("MORALGRAPH_EXACT_CAP", 20)), r};
    if (a.objective == "fillin") {
      const auto res = mg::min_fill_exact(g, opt);
      std::cout << "lambda*=" << res.fill_in << '\n'
                << "witness=" << format_ordering(g, res.witness) << '\n'
                << "fill=" << format_edges(g, res.fill) << '\n';
    } else {
      const auto res = mg::treewidth_exact(g, opt);
      std::cout << "tw=" << res.width << '\n'
                << "witness=" << format_ordering(g, res.witness) << '\n'
                << "fill=" << format_edges(g, mg::triangulate_by_ordering(g, res.witness)) << '\n';
    }
    return kOk;
  }
  if (a.objective == "states") {
    const mg::ExactOptions opt{a.cap.value_or(env_cap("MORALGRAPH_STATES_CAP", 10)), r};
    const auto res = mg::total_states_exact(g, mg::StateMap(g.num_vertices()), opt);
    std::cout << "states*=" << res.states << '\n'
              << "witness=" << format_ordering(g, res.witness) << '\n'
              << "fill=" << format_edges(g, res.fill) << '\n';
    return kOk;
  }
  throw mg::DomainError("unknown objective '" + a.objective + "' (expected fillin, treewidth or states)");
}

struct VerifyArgs {
  std::string lemma, mode = "auto", out;
  std::optional<std::size_t> max_n;
  std::uint64_t seed = 1;
  std::size_t samples = 200;
};

int cmd_verify(const VerifyArgs& a) {
  mg::CampaignOptions opt;
  opt.max_n = a.max_n;
  opt.seed = a.seed;
  opt.mode = mg::parse_mode(a.mode);
  opt.samples = a.samples;
  const auto rep = mg::run_campaign(a.lemma, opt);
  const auto json = mg::to_json(rep).dump(2);
  std::ostringstream summary;
  summary << "lemma " << rep.lemma << ": " << rep.records.size() << " records, " << rep.mismatches()
          << " mismatches";
  if (rep.mode_dependent) {
    const auto sel = rep.selected_mode();
    summary << ", selected mode " << (sel ? *sel : std::string("none"));
  }
  summary << (rep.passed() ? ", PASS" : ", FAIL");
  if (a.out.empty()) {
    std::cout << json << '\n';
    std::cerr << summary.str() << '\n';
  } else {
    write_to(a.out, json + "\n");
    std::cout << summary.str() << '\n';
  }
  return rep.passed() ? kOk : kMismatch;
}

int cmd_moralize(const std::string& input, const std::string& out) {
  auto file = mg::read_graph_file(input);
  const auto* d = std::get_if<mg::Dag>(&file.graph);
  if (!d) throw mg::DomainError("moralize expects a directed graph");
  const auto m = mg::moralize(*d);
  const auto text = mg::graph_to_string(m.graph, file.name + "-moral");
  std::cout << "F=" << format_edges(m.graph, m.fill) << '\n';
  if (out.empty())
    std::cout << text;
  else
    write_to(out, text);
  return kOk;
}

int cmd_morality(const std::string& input, std::optional<std::size_t> cap) {
  const auto g = load_undirected(input, true);
  mg::PekSearchOptions opt;
  opt.vertex_cap = cap.value_or(env_cap("MORALGRAPH_PEK_CAP", opt.vertex_cap));
  const auto kit = mg::find_pek(g, opt);
  if (!kit) {
    std::cout << "moral=false\n";
    return kOk;
  }
  std::cout << "moral=true\nkit=";
  for (std::size_t i = 0; i < kit->ordering.size(); ++i) {
    const auto v = kit->ordering[i];
    std::cout << (i ? " " : "") << g.name(v) << format_edges(g, kit->excess[v]);
  }
  std::cout << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moral graph triangulation toolkit"};
  app.require_subcommand(1);

  TransformArgs ta;
  auto* transform = app.add_subcommand("transform", "build a reduction gadget and print |P|, |Q|, |S(w)|");
  transform->add_option("input", ta.input, "graph file")->required();
  transform->add_option("--problem,-p", ta.problem, "ola, mcla or eds")->capture_default_str();
  transform->add_option("--w,-w", ta.w, "vertex to saturate")->required();
  transform->add_option("--out-prefix,-o", ta.out_prefix, "write PREFIX.gadget, PREFIX.graph and PREFIX.dot");
  transform->add_flag("--base", ta.base, "skip the saturating step");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "optimal triangulation of a graph");
  solve->add_option("input", sa.input, "graph file")->required();
  solve->add_option("--objective", sa.objective, "fillin, treewidth or states")->capture_default_str();
  auto* exact = solve->add_flag("--exact", "exact solver (default)");
  auto* greedy = solve->add_flag("--greedy", sa.greedy, "greedy minimum-deficiency heuristic (fillin only)");
  exact->excludes(greedy);
  auto* ff = solve->add_option("--fix-first", sa.fix_first, "only orderings that start with this vertex");
  solve->add_option("--fix-last", sa.fix_last, "only orderings that end with this vertex")->excludes(ff);
  solve->add_option("--cap", sa.cap, "vertex cap for the exact solver");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a verification campaign and emit a JSON report");
  verify->add_option("lemma", va.lemma, "1, 2, 3, 4, 5, 6, 7, 9, 10, eq2 or eq3")->required();
  verify->add_option("--max-n", va.max_n, "largest instance size");
  verify->add_option("--seed", va.seed, "seed for sampled campaigns")->capture_default_str();
  verify->add_option("--mode", va.mode, "first, last or auto")->capture_default_str();
  verify->add_option("--samples", va.samples, "instances for sampled campaigns")->capture_default_str();
  verify->add_option("--out", va.out, "write the report here and print a summary line");

  std::string mor_in, mor_out;
  auto* moralize = app.add_subcommand("moralize", "moral graph of a DAG");
  moralize->add_option("input", mor_in, "directed graph file")->required();
  moralize->add_option("--out", mor_out, "write the moral graph here");

  std::string chk_in;
  std::optional<std::size_t> chk_cap;
  auto* morality = app.add_subcommand("morality", "decide morality with a perfect elimination kit search");
  morality->add_option("input", chk_in, "graph file")->required();
  morality->add_option("--cap", chk_cap, "vertex cap for the search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (transform->parsed()) return cmd_transform(ta);
    if (solve->parsed()) return cmd_solve(sa);
    if (verify->parsed()) return cmd_verify(va);
    if (moralize->parsed()) return cmd_moralize(mor_in, mor_out);
    if (morality->parsed()) return cmd_morality(chk_in, chk_cap);
  } catch (const mg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const mg::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return kResource;
  } catch (const mg::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSemantic;
  } catch (const mg::ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSemantic;
  }
  return kOk;
}
