#ifndef LPA_IDEAL_LATTICE_HPP
#define LPA_IDEAL_LATTICE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/graph.hpp"

namespace lpa {

inline void check_vertex_set(const DirectedGraph& g, const VertexSet& s) {
  for (int v : s)
    if (v < 0 || v >= g.vertex_count()) throw ValidationError("vertex index out of range");
}

inline bool is_hereditary(const DirectedGraph& g, const VertexSet& h) {
  check_vertex_set(g, h);
  return hereditary_check(g, h);
}

// Smallest superset of h closed under: v a non-sink with all edge ranges in
// the set => v in the set.  Fixed-point iteration; idempotent, monotone,
// extensive.
inline VertexSet saturate(const DirectedGraph& g, const VertexSet& h) {
  check_vertex_set(g, h);
  std::vector<bool> in(static_cast<std::size_t>(g.vertex_count()), false);
  for (int v : h) in[static_cast<std::size_t>(v)] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (in[static_cast<std::size_t>(v)] || g.is_sink(v)) continue;
      bool all = true;
      for (int e : g.out_edges(v))
        if (!in[static_cast<std::size_t>(g.edge(e).dst)]) {
          all = false;
          break;
        }
      if (all) {
        in[static_cast<std::size_t>(v)] = true;
        changed = true;
      }
    }
  }
  VertexSet out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (in[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

inline bool is_saturated(const DirectedGraph& g, const VertexSet& h) {
  check_vertex_set(g, h);
  return saturate(g, h) == h;
}

// Hereditary saturated closure: forward-close under reachability, then
// saturate.  Saturation preserves heredity, so one pass suffices.
inline VertexSet hereditary_saturated_closure(const DirectedGraph& g, const VertexSet& s) {
  check_vertex_set(g, s);
  VertexSet fwd;
  for (int w = 0; w < g.vertex_count(); ++w)
    for (int v : s)
      if (g.reaches(v, w)) {
        fwd.push_back(w);
        break;
      }
  return saturate(g, fwd);
}

// Hereditary and saturated vertex set with its owning graph.
struct HereditarySaturatedSet {
  GraphPtr graph;
  VertexSet vertices;

  bool operator==(const HereditarySaturatedSet& o) const {
    return *graph == *o.graph && vertices == o.vertices;
  }
};

inline HereditarySaturatedSet make_hereditary_saturated(GraphPtr g, const VertexSet& h) {
  if (!is_hereditary(*g, h)) throw ValidationError("set is not hereditary");
  if (!is_saturated(*g, h)) throw ValidationError("set is not saturated");
  return HereditarySaturatedSet{std::move(g), h};
}

// All hereditary saturated subsets, sorted by (size, lexicographic names).
inline std::vector<HereditarySaturatedSet> enumerate_hereditary_saturated(
    GraphPtr g, int max_vertices = 20) {
  int n = g->vertex_count();
  if (n > max_vertices)
    throw ResourceError("hereditary-saturated enumeration capped at " +
                        std::to_string(max_vertices) + " vertices");
  std::vector<std::uint64_t> targets(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    for (int e : g->out_edges(v))
      targets[static_cast<std::size_t>(v)] |= std::uint64_t{1} << g->edge(e).dst;
  std::vector<VertexSet> found;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      bool inside = (mask >> v) & 1;
      if (inside) {
        if ((targets[static_cast<std::size_t>(v)] & ~mask) != 0) ok = false;  // hereditary
      } else if (!g->is_sink(v)) {
        if ((targets[static_cast<std::size_t>(v)] & ~mask) == 0) ok = false;  // saturated
      }
    }
    if (!ok) continue;
    VertexSet s;
    for (int v = 0; v < n; ++v)
      if ((mask >> v) & 1) s.push_back(v);
    found.push_back(std::move(s));
  }
  std::sort(found.begin(), found.end(), [&](const VertexSet& a, const VertexSet& b) {
    return vs_output_less(*g, a, b);
  });
  std::vector<HereditarySaturatedSet> out;
  out.reserve(found.size());
  for (auto& s : found) out.push_back(HereditarySaturatedSet{g, std::move(s)});
  return out;
}

// Maximal tail: nonempty M with
//   (1) v >= w and w in M imply v in M,
//   (2) every non-sink of M keeps an edge inside M,
//   (3) M downward directed: any v, w reach a common y in M.
inline bool is_maximal_tail(const DirectedGraph& g, const VertexSet& m) {
  check_vertex_set(g, m);
  if (m.empty()) return false;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (vs_contains(m, v)) continue;
    for (int w : m)
      if (g.reaches(v, w)) return false;
  }
  for (int v : m) {
    if (g.is_sink(v)) continue;
    bool keeps = false;
    for (int e : g.out_edges(v))
      if (vs_contains(m, g.edge(e).dst)) {
        keeps = true;
        break;
      }
    if (!keeps) return false;
  }
  for (int v : m)
    for (int w : m) {
      bool met = false;
      for (int y : m)
        if (g.reaches(v, y) && g.reaches(w, y)) {
          met = true;
          break;
        }
      if (!met) return false;
    }
  return true;
}

enum class TailClass { Gamma, Tau };

// Maximal tail plus its gamma/tau classification; Tau stores the unique
// exit-less cycle.
struct TailDescriptor {
  GraphPtr graph;
  VertexSet m;
  TailClass cls;
  std::optional<Cycle> no_exit_cycle;

  bool operator==(const TailDescriptor& o) const {
    return *graph == *o.graph && m == o.m && cls == o.cls && no_exit_cycle == o.no_exit_cycle;
  }
};

inline TailDescriptor classify_tail(GraphPtr g, const VertexSet& m,
                                    std::size_t max_cycles = 100000) {
  if (!is_maximal_tail(*g, m)) throw ValidationError("set is not a maximal tail");
  std::vector<Cycle> exitless;
  for (const Cycle& c : enumerate_cycles(*g, max_cycles)) {
    bool inside = true;
    for (int e : c.path.edges)
      if (!vs_contains(m, g->edge(e).src)) {
        inside = false;
        break;
      }
    if (inside && !cycle_has_exit_in(*g, c, m)) exitless.push_back(c);
  }
  if (exitless.empty()) return TailDescriptor{std::move(g), m, TailClass::Gamma, std::nullopt};
  if (exitless.size() > 1)
    throw Error("internal: maximal tail with multiple exit-less cycles");
  return TailDescriptor{std::move(g), m, TailClass::Tau, exitless.front()};
}

// Complements of the hereditary saturated sets that are maximal tails, in the
// enumeration order of their complements, each classified.
inline std::vector<TailDescriptor> enumerate_maximal_tails(GraphPtr g, int max_vertices = 20,
                                                           std::size_t max_cycles = 100000) {
  std::vector<TailDescriptor> out;
  for (const auto& h : enumerate_hereditary_saturated(g, max_vertices)) {
    VertexSet m = vs_complement(*g, h.vertices);
    if (!m.empty() && is_maximal_tail(*g, m))
      out.push_back(classify_tail(g, m, max_cycles));
  }
  return out;
}

}  // namespace lpa

#endif
