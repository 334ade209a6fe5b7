#ifndef LPA_GRAPH_HPP
#define LPA_GRAPH_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "lpa/errors.hpp"

namespace lpa {

class DirectedGraph;
using GraphPtr = std::shared_ptr<const DirectedGraph>;

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s.substr(1))
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// Finite directed multigraph with named vertices and edges.  Immutable after
// construction; loops and parallel edges allowed.
class DirectedGraph {
 public:
  struct Edge {
    std::string id;
    int src;
    int dst;
    bool operator==(const Edge&) const = default;
  };

  static GraphPtr create(std::vector<std::string> vertices,
                         std::vector<std::tuple<std::string, std::string, std::string>> edges) {
    auto g = std::make_shared<DirectedGraph>(Private{});
    if (vertices.empty()) throw ValidationError("graph needs at least one vertex");
    for (const auto& v : vertices) {
      if (!is_identifier(v)) throw ValidationError("bad vertex identifier: " + v);
      if (!g->vindex_.emplace(v, static_cast<int>(g->vertices_.size())).second)
        throw ValidationError("duplicate identifier: " + v);
      g->vertices_.push_back(v);
    }
    g->out_.resize(vertices.size());
    g->in_.resize(vertices.size());
    for (const auto& [id, src, dst] : edges) {
      if (!is_identifier(id)) throw ValidationError("bad edge identifier: " + id);
      if (g->vindex_.count(id)) throw ValidationError("duplicate identifier: " + id);
      if (!g->eindex_.emplace(id, static_cast<int>(g->edges_.size())).second)
        throw ValidationError("duplicate identifier: " + id);
      auto sv = g->vindex_.find(src);
      auto dv = g->vindex_.find(dst);
      if (sv == g->vindex_.end()) throw ValidationError("unknown vertex: " + src);
      if (dv == g->vindex_.end()) throw ValidationError("unknown vertex: " + dst);
      int e = static_cast<int>(g->edges_.size());
      g->edges_.push_back(Edge{id, sv->second, dv->second});
      g->out_[static_cast<std::size_t>(sv->second)].push_back(e);
      g->in_[static_cast<std::size_t>(dv->second)].push_back(e);
    }
    g->compute_reach();
    return g;
  }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::string& vertex_name(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& out_edges(int v) const { return out_.at(static_cast<std::size_t>(v)); }
  const std::vector<int>& in_edges(int v) const { return in_.at(static_cast<std::size_t>(v)); }
  bool is_sink(int v) const { return out_edges(v).empty(); }

  int vertex_index(std::string_view name) const {
    auto it = vindex_.find(std::string(name));
    if (it == vindex_.end()) throw ValidationError("unknown vertex: " + std::string(name));
    return it->second;
  }
  int edge_index(std::string_view name) const {
    auto it = eindex_.find(std::string(name));
    if (it == eindex_.end()) throw ValidationError("unknown edge: " + std::string(name));
    return it->second;
  }
  bool has_vertex(std::string_view name) const { return vindex_.count(std::string(name)) != 0; }
  bool has_edge(std::string_view name) const { return eindex_.count(std::string(name)) != 0; }

  // v >= w: v = w or some path from v to w exists.
  bool reaches(int v, int w) const {
    return reach_.at(static_cast<std::size_t>(v)).at(static_cast<std::size_t>(w));
  }
  bool reaches(std::string_view v, std::string_view w) const {
    return reaches(vertex_index(v), vertex_index(w));
  }

  bool operator==(const DirectedGraph& o) const {
    return vertices_ == o.vertices_ && edges_ == o.edges_;
  }

  std::string serialize() const {
    std::string out = "vertices:";
    for (const auto& v : vertices_) out += " " + v;
    out += "\n";
    for (const auto& e : edges_)
      out += "edge " + e.id + ": " + vertex_name(e.src) + " -> " + vertex_name(e.dst) + "\n";
    return out;
  }

  std::string to_dot() const {
    std::string out = "digraph graph_view {\n";
    for (const auto& v : vertices_) out += "  \"" + v + "\";\n";
    for (const auto& e : edges_)
      out += "  \"" + vertex_name(e.src) + "\" -> \"" + vertex_name(e.dst) +
             "\" [label=\"" + e.id + "\"];\n";
    out += "}\n";
    return out;
  }

  struct Private {};
  explicit DirectedGraph(Private) {}

 private:
  void compute_reach() {
    std::size_t n = vertices_.size();
    reach_.assign(n, std::vector<bool>(n, false));
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<int> stack{static_cast<int>(v)};
      reach_[v][v] = true;
      while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        for (int e : out_[static_cast<std::size_t>(cur)]) {
          int w = edges_[static_cast<std::size_t>(e)].dst;
          if (!reach_[v][static_cast<std::size_t>(w)]) {
            reach_[v][static_cast<std::size_t>(w)] = true;
            stack.push_back(w);
          }
        }
      }
    }
  }

  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::map<std::string, int> vindex_, eindex_;
  std::vector<std::vector<int>> out_, in_;
  std::vector<std::vector<bool>> reach_;
};

// ---------------------------------------------------------------------------
// Vertex sets: sorted unique vertex indices of a specific graph.

using VertexSet = std::vector<int>;

inline VertexSet vs_make(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline VertexSet vs_from_names(const DirectedGraph& g, const std::vector<std::string>& names) {
  std::vector<int> v;
  v.reserve(names.size());
  for (const auto& n : names) v.push_back(g.vertex_index(n));
  return vs_make(std::move(v));
}

inline bool vs_contains(const VertexSet& s, int v) {
  return std::binary_search(s.begin(), s.end(), v);
}

inline bool vs_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline VertexSet vs_union(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

inline VertexSet vs_complement(const DirectedGraph& g, const VertexSet& s) {
  VertexSet r;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!vs_contains(s, v)) r.push_back(v);
  return r;
}

inline VertexSet vs_full(const DirectedGraph& g) {
  VertexSet r(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) r[static_cast<std::size_t>(v)] = v;
  return r;
}

// Vertex names of s in lexicographic order (canonical presentation).
inline std::vector<std::string> vs_names(const DirectedGraph& g, const VertexSet& s) {
  std::vector<std::string> names;
  names.reserve(s.size());
  for (int v : s) names.push_back(g.vertex_name(v));
  std::sort(names.begin(), names.end());
  return names;
}

// (cardinality, lexicographic name list) order used for all set sequences.
inline bool vs_output_less(const DirectedGraph& g, const VertexSet& a, const VertexSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return vs_names(g, a) < vs_names(g, b);
}

// ---------------------------------------------------------------------------
// Paths and cycles.

// Path of composable edges; the anchor is the source vertex, which carries
// all the data for the empty path.
struct GraphPath {
  int anchor = -1;
  std::vector<int> edges;

  static GraphPath at_vertex(const DirectedGraph& g, int v) {
    if (v < 0 || v >= g.vertex_count()) throw ValidationError("vertex index out of range");
    return GraphPath{v, {}};
  }

  static GraphPath of_edges(const DirectedGraph& g, const std::vector<int>& edges) {
    if (edges.empty()) throw ValidationError("empty path needs an anchor vertex");
    GraphPath p{g.edge(edges.front()).src, edges};
    p.validate(g);
    return p;
  }

  void validate(const DirectedGraph& g) const {
    if (anchor < 0 || anchor >= g.vertex_count())
      throw ValidationError("path anchor out of range");
    int at = anchor;
    for (int e : edges) {
      if (g.edge(e).src != at) throw ValidationError("path edges are not composable");
      at = g.edge(e).dst;
    }
  }

  int source() const { return anchor; }
  int range(const DirectedGraph& g) const {
    return edges.empty() ? anchor : g.edge(edges.back()).dst;
  }
  std::size_t length() const { return edges.size(); }

  GraphPath appended(const DirectedGraph& g, int e) const {
    if (g.edge(e).src != range(g)) throw ValidationError("path edges are not composable");
    GraphPath p = *this;
    p.edges.push_back(e);
    return p;
  }

  GraphPath dropped_last() const {
    GraphPath p = *this;
    p.edges.pop_back();
    return p;
  }

  bool operator==(const GraphPath&) const = default;
};

// Closed vertex-simple path, stored in the canonical rotation that starts at
// the smallest source-vertex name.
struct Cycle {
  GraphPath path;

  static Cycle from_path(const DirectedGraph& g, const GraphPath& p) {
    p.validate(g);
    if (p.edges.empty()) throw ValidationError("a cycle has at least one edge");
    if (p.range(g) != p.source()) throw ValidationError("cycle path is not closed");
    std::vector<int> sources;
    sources.reserve(p.edges.size());
    for (int e : p.edges) sources.push_back(g.edge(e).src);
    std::size_t best = 0;
    for (std::size_t i = 1; i < sources.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j)
        if (sources[i] == sources[j])
          throw ValidationError("cycle revisits a vertex");
      if (g.vertex_name(sources[i]) < g.vertex_name(sources[best])) best = i;
    }
    std::vector<int> rotated(p.edges.begin() + static_cast<std::ptrdiff_t>(best), p.edges.end());
    rotated.insert(rotated.end(), p.edges.begin(), p.edges.begin() + static_cast<std::ptrdiff_t>(best));
    return Cycle{GraphPath{sources[best], std::move(rotated)}};
  }

  int base() const { return path.anchor; }
  std::size_t length() const { return path.length(); }

  std::vector<std::string> edge_names(const DirectedGraph& g) const {
    std::vector<std::string> names;
    names.reserve(path.edges.size());
    for (int e : path.edges) names.push_back(g.edge(e).id);
    return names;
  }

  bool operator==(const Cycle&) const = default;
};

// ---------------------------------------------------------------------------
// Graph-level operations.

// All vertex-simple cycles up to rotation, canonical, sorted by edge-name
// sequence.  Exhaustive search; guarded by max_cycles.
inline std::vector<Cycle> enumerate_cycles(const DirectedGraph& g,
                                           std::size_t max_cycles = 100000) {
  std::vector<Cycle> out;
  int n = g.vertex_count();
  std::vector<bool> onpath(static_cast<std::size_t>(n), false);
  std::vector<int> stack;

  auto dfs = [&](auto&& self, int v0, int v) -> void {
    for (int e : g.out_edges(v)) {
      int w = g.edge(e).dst;
      if (w == v0) {
        stack.push_back(e);
        out.push_back(Cycle{GraphPath{v0, stack}});
        if (out.size() > max_cycles)
          throw ResourceError("cycle enumeration exceeded " + std::to_string(max_cycles));
        stack.pop_back();
      } else if (!onpath[static_cast<std::size_t>(w)] &&
                 g.vertex_name(w) > g.vertex_name(v0)) {
        onpath[static_cast<std::size_t>(w)] = true;
        stack.push_back(e);
        self(self, v0, w);
        stack.pop_back();
        onpath[static_cast<std::size_t>(w)] = false;
      }
    }
  };

  for (int v0 = 0; v0 < n; ++v0) {
    onpath[static_cast<std::size_t>(v0)] = true;
    dfs(dfs, v0, v0);
    onpath[static_cast<std::size_t>(v0)] = false;
  }
  std::sort(out.begin(), out.end(), [&](const Cycle& a, const Cycle& b) {
    return a.edge_names(g) < b.edge_names(g);
  });
  return out;
}

// True iff some edge leaves a vertex of c, differs from c's edge there, and
// has range in M (i.e. survives in the subgraph on M).
inline bool cycle_has_exit_in(const DirectedGraph& g, const Cycle& c, const VertexSet& m) {
  for (std::size_t i = 0; i < c.path.edges.size(); ++i) {
    int ce = c.path.edges[i];
    int v = g.edge(ce).src;
    if (!vs_contains(m, v)) throw ValidationError("cycle is not contained in the vertex set");
    for (int e : g.out_edges(v))
      if (e != ce && vs_contains(m, g.edge(e).dst)) return true;
  }
  return false;
}

inline bool satisfies_condition_L(const DirectedGraph& g) {
  VertexSet all = vs_full(g);
  for (const Cycle& c : enumerate_cycles(g))
    if (!cycle_has_exit_in(g, c, all)) return false;
  return true;
}

// One-step heredity test (closure under single edges is equivalent to closure
// under the reaches relation).
inline bool hereditary_check(const DirectedGraph& g, const VertexSet& h) {
  for (int v : h)
    for (int e : g.out_edges(v))
      if (!vs_contains(h, g.edge(e).dst)) return false;
  return true;
}

// E/H: delete H and every edge whose range lies in H; identifiers preserved.
inline GraphPtr quotient_graph(const DirectedGraph& g, const VertexSet& h) {
  if (!hereditary_check(g, h)) throw ValidationError("quotient requires a hereditary set");
  std::vector<std::string> vertices;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!vs_contains(h, v)) vertices.push_back(g.vertex_name(v));
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (const auto& e : g.edges())
    if (!vs_contains(h, e.dst))
      edges.emplace_back(e.id, g.vertex_name(e.src), g.vertex_name(e.dst));
  return DirectedGraph::create(std::move(vertices), std::move(edges));
}

// ---------------------------------------------------------------------------
// Graph file format:
//   # comment lines
//   vertices: <id> <id> ...
//   edge <id>: <src> -> <tgt>

inline GraphPtr parse_graph(std::string_view text) {
  std::vector<std::string> vertices;
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  bool saw_vertices = false;
  int lineno = 0;
  std::size_t pos = 0;

  auto fail = [&](const std::string& msg, std::size_t col) -> ParseError {
    return ParseError(msg, lineno, static_cast<int>(col) + 1);
  };

  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++lineno;

    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    };
    auto token = [&]() -> std::string_view {
      skip_ws();
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
      return line.substr(start, i - start);
    };

    skip_ws();
    if (i < line.size() && line[i] != '#') {
      if (!saw_vertices) {
        std::size_t kw = i;
        std::string_view head = token();
        if (head != "vertices:") throw fail("expected 'vertices:' line", kw);
        for (;;) {
          std::size_t col = i;
          std::string_view id = token();
          if (id.empty()) break;
          if (!is_identifier(id)) throw fail("bad vertex identifier: " + std::string(id), col);
          vertices.emplace_back(id);
        }
        if (vertices.empty()) throw fail("empty vertex list", line.size());
        saw_vertices = true;
      } else {
        std::size_t kw = i;
        std::string_view head = token();
        if (head != "edge") throw fail("expected 'edge' line", kw);
        std::size_t col = i;
        std::string_view id = token();
        if (id.empty() || id.back() != ':')
          throw fail("expected '<id>:' after 'edge'", col);
        id.remove_suffix(1);
        if (!is_identifier(id)) throw fail("bad edge identifier: " + std::string(id), col);
        col = i;
        std::string_view src = token();
        if (!is_identifier(src)) throw fail("bad source identifier", col);
        col = i;
        std::string_view arrow = token();
        if (arrow != "->") throw fail("expected '->'", col);
        col = i;
        std::string_view dst = token();
        if (!is_identifier(dst)) throw fail("bad target identifier", col);
        skip_ws();
        if (i < line.size()) throw fail("trailing text after edge", i);
        edges.emplace_back(std::string(id), std::string(src), std::string(dst));
      }
    }
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  if (!saw_vertices) throw ParseError("missing 'vertices:' line", lineno, 1);
  try {
    return DirectedGraph::create(std::move(vertices), std::move(edges));
  } catch (const ValidationError& e) {
    throw ParseError(std::string(e.what()), lineno, 1);
  }
}

}  // namespace lpa

#endif
