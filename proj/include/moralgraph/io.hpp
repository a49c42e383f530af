#pragma once

// Line-oriented text formats for graphs and gadgets, and DOT rendering.
//
// Graph file:
//   graph <name> directed|undirected
//   vertex <id>
//   edge <u> <v>
// Gadget file:
//   gadget <name> ola|mcla|eds saturated <w>|none
//   source-vertex <id>
//   source-edge <u> <v>
//   vertex <id> P copy <u> <j>
//   vertex <id> Q edge <u> <v> <j>
//   vertex <id> Q residual <u> <j>
//   edge <x> <y>
//   saturation <x> <y>
// Blank lines and text after '#' are ignored. Tokens are separated by
// spaces or tabs; ids contain no whitespace and do not start with '#'.

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "moralgraph/graph.hpp"
#include "moralgraph/reductions.hpp"

namespace moralgraph {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct GraphFile {
  std::string name;
  std::variant<UndirectedGraph, Dag> graph;

  bool directed() const { return std::holds_alternative<Dag>(graph); }
};

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> out;
  std::string text;
  for (std::size_t number = 1; std::getline(in, text); ++number) {
    if (auto hash = text.find('#'); hash != std::string::npos) {
      // '#' starts a comment only at the beginning of a token
      for (auto pos = hash; pos != std::string::npos; pos = text.find('#', pos + 1))
        if (pos == 0 || text[pos - 1] == ' ' || text[pos - 1] == '\t') {
          text.erase(pos);
          break;
        }
    }
    std::istringstream words(text);
    Line line{number, {}};
    for (std::string w; words >> w;) line.tokens.push_back(w);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

inline void expect_arity(const Line& l, std::size_t n) {
  if (l.tokens.size() != n)
    throw ParseError("'" + l.tokens[0] + "' expects " + std::to_string(n - 1) + " argument(s), got " +
                         std::to_string(l.tokens.size() - 1),
                     l.number);
}

inline std::size_t parse_index(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-' || s[0] == '+' || v == 0)
    throw ParseError("expected a positive integer, got '" + s + "'", line);
  return static_cast<std::size_t>(v);
}

}  // namespace detail

inline GraphFile read_graph(std::istream& in) {
  const auto lines = detail::tokenize(in);
  if (lines.empty()) throw ParseError("missing 'graph <name> directed|undirected' header", 1);
  const auto& head = lines.front();
  if (head.tokens[0] != "graph") throw ParseError("expected 'graph' header, got '" + head.tokens[0] + "'", head.number);
  detail::expect_arity(head, 3);
  const auto& kind = head.tokens[2];
  if (kind != "directed" && kind != "undirected")
    throw ParseError("graph kind must be 'directed' or 'undirected', got '" + kind + "'", head.number);

  GraphFile out{head.tokens[1], UndirectedGraph{}};
  if (kind == "directed") out.graph = Dag{};

  auto ensure = [&](const std::string& id) {
    return std::visit([&](auto& g) { return g.ensure_vertex(id); }, out.graph);
  };

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const auto& word = l.tokens[0];
    if (word == "vertex") {
      detail::expect_arity(l, 2);
      const bool fresh = std::visit([&](auto& g) { return !g.find(l.tokens[1]).has_value(); }, out.graph);
      if (!fresh) throw ParseError("duplicate vertex '" + l.tokens[1] + "'", l.number);
      ensure(l.tokens[1]);
    } else if (word == "edge") {
      detail::expect_arity(l, 3);
      if (l.tokens[1] == l.tokens[2]) throw ParseError("self-loop on '" + l.tokens[1] + "'", l.number);
      const auto a = ensure(l.tokens[1]);
      const auto b = ensure(l.tokens[2]);
      bool added = false;
      try {
        if (auto* g = std::get_if<UndirectedGraph>(&out.graph))
          added = g->add_edge(a, b);
        else
          added = std::get<Dag>(out.graph).add_arc(a, b);
      } catch (const DomainError& e) {
        throw ParseError(e.what(), l.number);
      }
      if (!added) throw ParseError("duplicate edge " + l.tokens[1] + " " + l.tokens[2], l.number);
    } else if (word == "graph") {
      throw ParseError("second 'graph' header", l.number);
    } else {
      throw ParseError("unknown directive '" + word + "'", l.number);
    }
  }
  return out;
}

inline GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return read_graph(in);
}

inline void write_graph(std::ostream& out, const UndirectedGraph& g, const std::string& name) {
  out << "graph " << name << " undirected\n";
  for (VertexId v = 0; v < g.num_vertices(); ++v) out << "vertex " << g.name(v) << '\n';
  for (const auto& e : g.edges()) out << "edge " << g.name(e.u) << ' ' << g.name(e.v) << '\n';
}

inline void write_graph(std::ostream& out, const Dag& d, const std::string& name) {
  out << "graph " << name << " directed\n";
  for (VertexId v = 0; v < d.num_vertices(); ++v) out << "vertex " << d.name(v) << '\n';
  for (const auto& [from, to] : d.arcs()) out << "edge " << d.name(from) << ' ' << d.name(to) << '\n';
}

inline std::string graph_to_string(const UndirectedGraph& g, const std::string& name) {
  std::ostringstream s;
  write_graph(s, g, name);
  return s.str();
}

// ---------------------------------------------------------------------------
// Gadgets

inline GadgetKind parse_gadget_kind(const std::string& s) {
  if (s == "ola") return GadgetKind::Ola;
  if (s == "mcla") return GadgetKind::Mcla;
  if (s == "eds") return GadgetKind::Eds;
  throw DomainError("unknown problem '" + s + "' (expected ola, mcla or eds)");
}

inline void write_gadget(std::ostream& out, const BipartiteGadget& gadget, const std::string& name) {
  const auto& src = gadget.source;
  const auto& g = gadget.graph();
  out << "gadget " << name << ' ' << to_string(gadget.kind) << " saturated "
      << (gadget.saturated ? src.name(*gadget.saturated) : std::string("none")) << '\n';
  for (VertexId v = 0; v < src.num_vertices(); ++v) out << "source-vertex " << src.name(v) << '\n';
  for (const auto& e : src.edges()) out << "source-edge " << src.name(e.u) << ' ' << src.name(e.v) << '\n';
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto& role = gadget.roles[v];
    out << "vertex " << g.name(v) << ' ' << (gadget.bip.side[v] == Side::P ? 'P' : 'Q') << ' ';
    switch (role.kind) {
      case RoleKind::Copy:
        out << "copy " << src.name(role.source);
        break;
      case RoleKind::EdgeNode:
        out << "edge " << src.name(role.source_edge.u) << ' ' << src.name(role.source_edge.v);
        break;
      case RoleKind::Residual:
        out << "residual " << src.name(role.source);
        break;
    }
    out << ' ' << role.index << '\n';
  }
  EdgeList base;
  for (const auto& e : g.edges())
    if (!std::binary_search(gadget.saturation.begin(), gadget.saturation.end(), e)) base.push_back(e);
  for (const auto& e : base) out << "edge " << g.name(e.u) << ' ' << g.name(e.v) << '\n';
  for (const auto& e : gadget.saturation) out << "saturation " << g.name(e.u) << ' ' << g.name(e.v) << '\n';
}

inline BipartiteGadget read_gadget(std::istream& in) {
  const auto lines = detail::tokenize(in);
  if (lines.empty()) throw ParseError("missing 'gadget' header", 1);
  const auto& head = lines.front();
  if (head.tokens[0] != "gadget") throw ParseError("expected 'gadget' header, got '" + head.tokens[0] + "'", head.number);
  detail::expect_arity(head, 5);
  if (head.tokens[3] != "saturated") throw ParseError("expected 'saturated <w>|none'", head.number);

  BipartiteGadget out;
  try {
    out.kind = parse_gadget_kind(head.tokens[2]);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), head.number);
  }
  std::optional<std::string> w_name;
  if (head.tokens[4] != "none") w_name = head.tokens[4];

  auto wrap = [](std::size_t line, auto&& f) {
    try {
      return f();
    } catch (const DomainError& e) {
      throw ParseError(e.what(), line);
    }
  };
  auto lookup = [&](const UndirectedGraph& g, const std::string& id, std::size_t line) {
    auto v = g.find(id);
    if (!v) throw ParseError("unknown vertex '" + id + "'", line);
    return *v;
  };

  std::map<std::pair<VertexId, VertexId>, std::size_t> edge_index;
  bool source_done = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const auto& word = l.tokens[0];
    if (word == "source-vertex" || word == "source-edge") {
      if (source_done) throw ParseError("source lines must precede gadget vertices", l.number);
      if (word == "source-vertex") {
        detail::expect_arity(l, 2);
        wrap(l.number, [&] { return out.source.add_vertex(l.tokens[1]); });
      } else {
        detail::expect_arity(l, 3);
        const auto a = lookup(out.source, l.tokens[1], l.number), b = lookup(out.source, l.tokens[2], l.number);
        if (!wrap(l.number, [&] { return out.source.add_edge(a, b); }))
          throw ParseError("duplicate source edge", l.number);
      }
      continue;
    }
    if (!source_done) {
      source_done = true;
      const auto edges = out.source.edges();
      for (std::size_t k = 0; k < edges.size(); ++k) edge_index[{edges[k].u, edges[k].v}] = k;
      out.copy_ids.assign(out.source.num_vertices(), {});
      out.residual_ids.assign(out.source.num_vertices(), {});
      out.edge_node_ids.assign(edges.size(), {});
      if (w_name) out.saturated = lookup(out.source, *w_name, head.number);
    }
    if (word == "vertex") {
      if (l.tokens.size() < 5) throw ParseError("'vertex' in a gadget needs an id, a side and a role", l.number);
      const auto& side_tok = l.tokens[2];
      if (side_tok != "P" && side_tok != "Q") throw ParseError("side must be P or Q", l.number);
      const Side side = side_tok == "P" ? Side::P : Side::Q;
      const auto& role_tok = l.tokens[3];
      Role role;
      std::vector<std::vector<VertexId>>* bucket = nullptr;
      std::size_t slot = 0;
      if (role_tok == "copy" || role_tok == "residual") {
        detail::expect_arity(l, 6);
        role.kind = role_tok == "copy" ? RoleKind::Copy : RoleKind::Residual;
        role.source = lookup(out.source, l.tokens[4], l.number);
        role.index = detail::parse_index(l.tokens[5], l.number);
        if ((role.kind == RoleKind::Copy) != (side == Side::P))
          throw ParseError("copies belong to P, residuals to Q", l.number);
        bucket = role.kind == RoleKind::Copy ? &out.copy_ids : &out.residual_ids;
        slot = role.source;
      } else if (role_tok == "edge") {
        detail::expect_arity(l, 7);
        if (side != Side::Q) throw ParseError("edge nodes belong to Q", l.number);
        role.kind = RoleKind::EdgeNode;
        role.source_edge =
            make_edge(lookup(out.source, l.tokens[4], l.number), lookup(out.source, l.tokens[5], l.number));
        auto it = edge_index.find({role.source_edge.u, role.source_edge.v});
        if (it == edge_index.end()) throw ParseError("edge node for a missing source edge", l.number);
        role.index = detail::parse_index(l.tokens[6], l.number);
        bucket = &out.edge_node_ids;
        slot = it->second;
      } else {
        throw ParseError("unknown role '" + role_tok + "'", l.number);
      }
      auto& list = (*bucket)[slot];
      if (role.index != list.size() + 1)
        throw ParseError("role index " + std::to_string(role.index) + " out of sequence (expected " +
                             std::to_string(list.size() + 1) + ")",
                         l.number);
      const auto v = wrap(l.number, [&] { return out.bip.add_vertex(l.tokens[1], side); });
      list.push_back(v);
      out.roles.push_back(role);
    } else if (word == "edge" || word == "saturation") {
      detail::expect_arity(l, 3);
      const auto a = lookup(out.graph(), l.tokens[1], l.number), b = lookup(out.graph(), l.tokens[2], l.number);
      if (!wrap(l.number, [&] { return out.bip.add_edge(a, b); })) throw ParseError("duplicate edge", l.number);
      if (word == "saturation") out.saturation.push_back(make_edge(a, b));
    } else {
      throw ParseError("unknown directive '" + word + "'", l.number);
    }
  }
  if (!source_done && w_name) out.saturated = lookup(out.source, *w_name, head.number);
  normalize(out.saturation);
  for (const auto& ids : out.copy_ids) out.copies_per_vertex = std::max(out.copies_per_vertex, ids.size());
  out.nodes_per_edge = 0;
  for (const auto& ids : out.edge_node_ids) out.nodes_per_edge = std::max(out.nodes_per_edge, ids.size());
  return out;
}

inline BipartiteGadget read_gadget_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return read_gadget(in);
}

// ---------------------------------------------------------------------------
// DOT

namespace detail {
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}
}  // namespace detail

inline void write_dot(std::ostream& out, const UndirectedGraph& g, const std::string& name) {
  out << "graph " << detail::dot_quote(name) << " {\n";
  for (VertexId v = 0; v < g.num_vertices(); ++v) out << "  " << detail::dot_quote(g.name(v)) << ";\n";
  for (const auto& e : g.edges())
    out << "  " << detail::dot_quote(g.name(e.u)) << " -- " << detail::dot_quote(g.name(e.v)) << ";\n";
  out << "}\n";
}

/// Copies are circles, edge nodes boxes, residuals diamonds; saturation
/// edges are dashed. P and Q are drawn as two ranks.
inline void write_dot(std::ostream& out, const BipartiteGadget& gadget, const std::string& name) {
  const auto& g = gadget.graph();
  out << "graph " << detail::dot_quote(name) << " {\n  rankdir=LR;\n";
  for (Side side : {Side::P, Side::Q}) {
    out << "  subgraph " << (side == Side::P ? "cluster_P" : "cluster_Q") << " {\n    label="
        << (side == Side::P ? "P" : "Q") << ";\n";
    for (auto v : gadget.bip.vertices(side)) {
      const char* shape = gadget.roles[v].kind == RoleKind::Copy       ? "circle"
                          : gadget.roles[v].kind == RoleKind::EdgeNode ? "box"
                                                                       : "diamond";
      out << "    " << detail::dot_quote(g.name(v)) << " [shape=" << shape << "];\n";
    }
    out << "  }\n";
  }
  for (const auto& e : g.edges()) {
    out << "  " << detail::dot_quote(g.name(e.u)) << " -- " << detail::dot_quote(g.name(e.v));
    if (std::binary_search(gadget.saturation.begin(), gadget.saturation.end(), e)) out << " [style=dashed]";
    out << ";\n";
  }
  out << "}\n";
}

}  // namespace moralgraph
