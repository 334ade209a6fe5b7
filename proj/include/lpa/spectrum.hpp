#ifndef LPA_SPECTRUM_HPP
#define LPA_SPECTRUM_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpa/engine.hpp"
#include "lpa/errors.hpp"
#include "lpa/field.hpp"
#include "lpa/graph.hpp"
#include "lpa/ideal_lattice.hpp"
#include "lpa/laurent.hpp"

namespace lpa {

enum class StratumShape { Point, LaurentLine };
enum class PrimeKind { Graded, NonGraded };

// Prime ideal datum: vertex content H plus, for non-graded primes, the
// exit-less cycle of the tail and a canonical irreducible Laurent generator.
struct PrimeDescriptor {
  PrimeKind kind;
  HereditarySaturatedSet h;
  TailDescriptor tail;
  std::optional<Cycle> cycle;
  std::optional<LaurentPoly> generator;
};

inline PrimeDescriptor graded_prime_of_tail(const TailDescriptor& t) {
  VertexSet hv = vs_complement(*t.graph, t.m);
  return PrimeDescriptor{PrimeKind::Graded, make_hereditary_saturated(t.graph, hv), t,
                         std::nullopt, std::nullopt};
}

inline PrimeDescriptor make_nongraded_prime(const TailDescriptor& t, const LaurentPoly& f) {
  if (t.cls != TailClass::Tau)
    throw ValidationError("non-graded primes require a Tau tail");
  LaurentPoly can = f.canonical_generator();
  if (can.is_unit() || !can.is_irreducible())
    throw ValidationError("non-graded generator must be a non-unit irreducible");
  PrimeDescriptor p = graded_prime_of_tail(t);
  p.kind = PrimeKind::NonGraded;
  p.cycle = t.no_exit_cycle;
  p.generator = can;
  return p;
}

struct Stratum {
  TailDescriptor tail;
  StratumShape shape;
  PrimeDescriptor graded;
  bool primitive = false;
  bool locally_closed = false;
  bool rational = false;
};

struct SpectrumBounds {
  int max_vertices = 20;
  std::size_t max_cycles = 100000;
};

struct SpectrumDescription {
  GraphPtr graph;
  FieldDescriptor field;
  std::vector<HereditarySaturatedSet> lattice;
  std::vector<Stratum> strata;
  std::vector<std::pair<int, int>> cover_edges;  // stratum indices, lower -> higher
};

// Primitivity by stratum class: graded primes are primitive exactly on Gamma
// tails; non-graded primes always are.
inline bool is_primitive(const PrimeDescriptor& p) {
  if (p.kind == PrimeKind::NonGraded) return true;
  return p.tail.cls == TailClass::Gamma;
}

// Locally closed iff no one-dimensional family of primes sits directly above
// and intersects back to p.  Decided on the quotient graph by following
// out-degree-one chains: a cycle all of whose vertices keep a single edge is
// exactly an exit-less cycle, whose Laurent family of primes intersects to
// the graded prime (distinct irreducibles are coprime).  Deliberately avoids
// the tail classification used by is_primitive.
inline bool is_locally_closed(const PrimeDescriptor& p) {
  if (p.kind == PrimeKind::NonGraded) return true;
  GraphPtr q = quotient_graph(*p.tail.graph, p.h.vertices);
  int n = q->vertex_count();
  for (int v = 0; v < n; ++v) {
    if (q->out_edges(v).size() != 1) continue;
    int cur = v;
    for (int steps = 0; steps < n; ++steps) {
      if (q->out_edges(cur).size() != 1) break;
      cur = q->edge(q->out_edges(cur)[0]).dst;
      if (cur == v) return false;
    }
  }
  return true;
}

// Rationality via the Dixmier-Moeglin equivalence for these algebras; the
// extended centroid is not constructed.
inline bool is_rational(const PrimeDescriptor& p) { return is_primitive(p); }

inline SpectrumDescription compute_spectrum(GraphPtr g, const FieldDescriptor& field,
                                            const SpectrumBounds& bounds = {}) {
  SpectrumDescription s;
  s.graph = g;
  s.field = field;
  s.lattice = enumerate_hereditary_saturated(g, bounds.max_vertices);
  for (const TailDescriptor& t : enumerate_maximal_tails(g, bounds.max_vertices, bounds.max_cycles)) {
    Stratum st;
    st.tail = t;
    st.shape = t.cls == TailClass::Tau ? StratumShape::LaurentLine : StratumShape::Point;
    st.graded = graded_prime_of_tail(t);
    st.primitive = is_primitive(st.graded);
    st.locally_closed = is_locally_closed(st.graded);
    st.rational = is_rational(st.graded);
    s.strata.push_back(std::move(st));
  }
  int n = static_cast<int>(s.strata.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const VertexSet& hi = s.strata[static_cast<std::size_t>(i)].graded.h.vertices;
      const VertexSet& hj = s.strata[static_cast<std::size_t>(j)].graded.h.vertices;
      if (!(vs_subset(hi, hj) && hi != hj)) continue;
      bool covered = true;
      for (int k = 0; k < n && covered; ++k) {
        if (k == i || k == j) continue;
        const VertexSet& hk = s.strata[static_cast<std::size_t>(k)].graded.h.vertices;
        if (vs_subset(hi, hk) && hi != hk && vs_subset(hk, hj) && hk != hj) covered = false;
      }
      if (covered) s.cover_edges.emplace_back(i, j);
    }
  return s;
}

// Specialization (containment) predicate on descriptors:
//   Graded(H) <= R(H')              iff H included in H'
//   NonGraded(H,c,f) <= Graded(H')  iff closure(H + base(c)) included in H'
//   NonGraded <= NonGraded          additionally via equal (cycle, generator)
inline bool specialization_leq(const PrimeDescriptor& p, const PrimeDescriptor& q) {
  if (!(*p.tail.graph == *q.tail.graph))
    throw ValidationError("descriptors from different spectra");
  if (p.kind == PrimeKind::Graded) return vs_subset(p.h.vertices, q.h.vertices);
  const DirectedGraph& g = *p.tail.graph;
  VertexSet closure =
      hereditary_saturated_closure(g, vs_union(p.h.vertices, VertexSet{p.cycle->base()}));
  if (vs_subset(closure, q.h.vertices)) return true;
  if (q.kind == PrimeKind::Graded) return false;
  return vs_subset(p.h.vertices, q.h.vertices) && *p.cycle == *q.cycle &&
         *p.generator == *q.generator;
}

// Graded primes in stratum order, then each Tau stratum's non-graded family
// instantiated over a prime field up to the degree bound.
inline std::vector<PrimeDescriptor> instantiate_primes(const SpectrumDescription& s,
                                                       long long degree_bound) {
  std::vector<PrimeDescriptor> out;
  for (const Stratum& st : s.strata) out.push_back(st.graded);
  bool has_tau = false;
  for (const Stratum& st : s.strata) has_tau |= st.shape == StratumShape::LaurentLine;
  if (!has_tau) return out;
  if (s.field.kind != FieldKind::Prime)
    throw UnsupportedError("explicit non-graded instantiation requires a prime field");
  std::vector<LaurentPoly> irreducibles = enumerate_canonical_irreducibles(s.field, degree_bound);
  for (const Stratum& st : s.strata) {
    if (st.shape != StratumShape::LaurentLine) continue;
    for (const LaurentPoly& f : irreducibles) out.push_back(make_nongraded_prime(st.tail, f));
  }
  return out;
}

// Ideal generators of the descriptor: the vertex idempotents of H, plus the
// evaluated polynomial for non-graded primes.
inline std::vector<AlgebraElement> prime_generators(const PrimeDescriptor& p,
                                                    const FieldDescriptor& field) {
  std::vector<AlgebraElement> gens;
  for (int v : p.h.vertices) gens.push_back(AlgebraElement::vertex(p.h.graph, field, v));
  if (p.kind == PrimeKind::NonGraded) {
    if (!(p.generator->field() == field))
      throw ValidationError("generator field mismatch");
    gens.push_back(eval_poly_at_cycle(p.h.graph, *p.generator, *p.cycle));
  }
  return gens;
}

// ---------------------------------------------------------------------------
// DOT rendering: Hasse diagram of the graded primes plus one dashed family
// node per Tau stratum.

inline std::string poset_node_name(const DirectedGraph& g, const VertexSet& h,
                                   const std::string& prefix) {
  std::string name = prefix + "_H_";
  bool first = true;
  for (const auto& v : vs_names(g, h)) {
    if (!first) name += "_";
    name += v;
    first = false;
  }
  return name;
}

inline std::string poset_node_label(const DirectedGraph& g, const VertexSet& h) {
  if (h.empty()) return "(0)";
  std::string label = "(";
  bool first = true;
  for (const auto& v : vs_names(g, h)) {
    if (!first) label += ",";
    label += v;
    first = false;
  }
  return label + ")";
}

inline std::string poset_dot(const SpectrumDescription& s) {
  const DirectedGraph& g = *s.graph;
  std::string out = "digraph prime_spectrum {\n  rankdir=BT;\n";
  for (const Stratum& st : s.strata)
    out += "  \"" + poset_node_name(g, st.graded.h.vertices, "P") + "\" [label=\"" +
           poset_node_label(g, st.graded.h.vertices) + "\"];\n";
  for (const Stratum& st : s.strata) {
    if (st.shape != StratumShape::LaurentLine) continue;
    out += "  \"" + poset_node_name(g, st.graded.h.vertices, "Fam") +
           "\" [label=\"{(f(c_" + g.vertex_name(st.tail.no_exit_cycle->base()) +
           ")) : f irreducible}\", shape=box, style=dashed];\n";
  }
  for (const auto& [i, j] : s.cover_edges)
    out += "  \"" +
           poset_node_name(g, s.strata[static_cast<std::size_t>(i)].graded.h.vertices, "P") +
           "\" -> \"" +
           poset_node_name(g, s.strata[static_cast<std::size_t>(j)].graded.h.vertices, "P") +
           "\";\n";
  for (const Stratum& st : s.strata) {
    if (st.shape != StratumShape::LaurentLine) continue;
    out += "  \"" + poset_node_name(g, st.graded.h.vertices, "P") + "\" -> \"" +
           poset_node_name(g, st.graded.h.vertices, "Fam") + "\" [style=dashed];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace lpa

#endif
