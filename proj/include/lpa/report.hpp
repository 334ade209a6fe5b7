#ifndef LPA_REPORT_HPP
#define LPA_REPORT_HPP

#include <string>

#include <json.hpp>

#include "lpa/spectrum.hpp"

namespace lpa {

inline constexpr const char* kToolVersion = "0.1.0";

struct ReportBounds {
  int max_vertices = 20;
  long long max_cycles = 100000;
  long long oracle_length_bound = 0;  // 0: per-call default of 2 + 2*longest monomial
  long long instantiation_degree_bound = 3;
};

inline nlohmann::json cycle_json(const DirectedGraph& g, const Cycle& c) {
  nlohmann::json j;
  j["base"] = g.vertex_name(c.base());
  j["edges"] = c.edge_names(g);
  return j;
}

// Canonical JSON report for a computed spectrum: sorted keys, no floating
// point, deterministic ordering of every sequence.
inline nlohmann::json spectrum_report(const SpectrumDescription& s,
                                      const ReportBounds& bounds = {}) {
  const DirectedGraph& g = *s.graph;
  nlohmann::json j;

  j["bounds"] = {{"instantiation_degree_bound", bounds.instantiation_degree_bound},
                 {"max_cycles", bounds.max_cycles},
                 {"max_vertices", bounds.max_vertices},
                 {"oracle_length_bound", bounds.oracle_length_bound}};

  if (s.field.kind == FieldKind::Rationals) {
    j["field"] = {{"kind", "rationals"}};
  } else {
    j["field"] = {{"kind", "prime"}, {"p", s.field.p}};
  }

  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"dst", g.vertex_name(e.dst)}, {"id", e.id}, {"src", g.vertex_name(e.src)}});
  j["graph"] = {{"edges", edges}, {"vertices", g.vertices()}};

  nlohmann::json lattice = nlohmann::json::array();
  for (const auto& h : s.lattice) lattice.push_back(vs_names(g, h.vertices));
  j["hereditary_saturated_sets"] = lattice;

  nlohmann::json tails = nlohmann::json::array();
  for (const Stratum& st : s.strata) {
    nlohmann::json t;
    t["class"] = st.tail.cls == TailClass::Tau ? "tau" : "gamma";
    t["cycle"] = st.tail.no_exit_cycle ? cycle_json(g, *st.tail.no_exit_cycle)
                                       : nlohmann::json(nullptr);
    t["vertices"] = vs_names(g, st.tail.m);
    tails.push_back(t);
  }
  j["maximal_tails"] = tails;

  nlohmann::json strata = nlohmann::json::array();
  for (const Stratum& st : s.strata) {
    nlohmann::json e;
    e["flags"] = {{"locally_closed", st.locally_closed},
                  {"primitive", st.primitive},
                  {"rational", st.rational}};
    e["graded_prime"] = {{"vertices", vs_names(g, st.graded.h.vertices)}};
    if (st.shape == StratumShape::LaurentLine) {
      e["nongraded_family"] = {
          {"cycle", cycle_json(g, *st.tail.no_exit_cycle)},
          {"description", "(f(c)) for f a non-unit irreducible of K[x,x^-1]"}};
      e["shape"] = "laurent_line";
    } else {
      e["nongraded_family"] = nullptr;
      e["shape"] = "point";
    }
    e["tail"] = vs_names(g, st.tail.m);
    strata.push_back(e);
  }
  j["strata"] = strata;

  nlohmann::json cover = nlohmann::json::array();
  for (const auto& [a, b] : s.cover_edges) cover.push_back({a, b});
  j["specialization_edges"] = cover;

  j["version"] = kToolVersion;
  return j;
}

}  // namespace lpa

#endif
