#ifndef LPA_CLI_HPP
#define LPA_CLI_HPP

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpa/engine.hpp"
#include "lpa/errors.hpp"
#include "lpa/families.hpp"
#include "lpa/report.hpp"
#include "lpa/spectrum.hpp"

namespace lpa {
namespace cli {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fixed checks over the built-in graph corpus; prints one line per check.
inline bool run_selftest(std::ostream& out) {
  bool all_ok = true;
  auto check = [&](const std::string& label, bool ok) {
    out << (ok ? "ok" : "FAIL") << ": " << label << "\n";
    all_ok = all_ok && ok;
  };
  const FieldDescriptor q = FieldDescriptor::rationals();
  const FieldDescriptor f2 = FieldDescriptor::prime(2);
  const FieldDescriptor f5 = FieldDescriptor::prime(5);

  {
    GraphPtr g = make_figure4();
    SpectrumDescription s = compute_spectrum(g, q);
    check("figure4: 6 hereditary saturated sets", s.lattice.size() == 6);
    std::vector<std::vector<std::string>> lattice;
    for (const auto& h : s.lattice) lattice.push_back(vs_names(*g, h.vertices));
    check("figure4: lattice contents",
          lattice == std::vector<std::vector<std::string>>{{},
                                                           {"v2"},
                                                           {"v1", "v2"},
                                                           {"v2", "v3"},
                                                           {"v1", "v2", "v3"},
                                                           {"v1", "v2", "v3", "v4"}});
    check("figure4: 4 maximal tails", s.strata.size() == 4);
    if (s.strata.size() == 4) {
      check("figure4: tail classes gamma,tau,tau,gamma",
            s.strata[0].tail.cls == TailClass::Gamma && s.strata[1].tail.cls == TailClass::Tau &&
                s.strata[2].tail.cls == TailClass::Tau &&
                s.strata[3].tail.cls == TailClass::Gamma);
      check("figure4: poset arrows",
            s.cover_edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
      check("figure4: flag pattern",
            s.strata[0].primitive && !s.strata[1].primitive && !s.strata[2].primitive &&
                s.strata[3].primitive && s.strata[0].locally_closed &&
                !s.strata[1].locally_closed && !s.strata[2].locally_closed &&
                s.strata[3].locally_closed);
    }
    check("figure4: 4 cycles", enumerate_cycles(*g).size() == 4);
    check("figure4: condition (L)", satisfies_condition_L(*g));
  }

  {
    GraphPtr g = make_loop();
    SpectrumDescription s = compute_spectrum(g, q);
    check("loop: one laurent-line stratum",
          s.strata.size() == 1 && s.strata[0].shape == StratumShape::LaurentLine);
    check("loop: zero ideal flags all false",
          !s.strata[0].primitive && !s.strata[0].locally_closed && !s.strata[0].rational);
    AlgebraElement v = AlgebraElement::vertex(g, q, 0);
    check("loop: ghost-real contraction", parse_element(g, q, "x*.x") == v);
    check("loop: real-ghost contraction", parse_element(g, q, "x.x*") == v);
  }

  {
    GraphPtr g = make_rose(2);
    SpectrumDescription s = compute_spectrum(g, q);
    check("rose(2): one primitive point stratum",
          s.strata.size() == 1 && s.strata[0].shape == StratumShape::Point &&
              s.strata[0].primitive && s.strata[0].locally_closed && s.strata[0].rational);
    AlgebraElement ck2 = parse_element(g, q, "e1.e1* + e2.e2*");
    check("rose(2): ck2 identity", ck2 == AlgebraElement::vertex(g, q, 0));
  }

  {
    GraphPtr g = make_line(3);
    SpectrumDescription s = compute_spectrum(g, q);
    check("line(3): unique prime", s.strata.size() == 1 && s.strata[0].primitive);
    check("line(3): 9 reduced monomials", enumerate_reduced_monomials(*g).size() == 9);
  }

  {
    GraphPtr g = make_chain_with_loops(4, {1, 3});
    SpectrumDescription s = compute_spectrum(g, q);
    check("chain(4;1,3): lattice is a chain of 5", s.lattice.size() == 5);
    bool chain_edges = s.cover_edges ==
                       std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}};
    check("chain(4;1,3): graded poset is a chain", chain_edges);
    if (s.strata.size() == 4) {
      check("chain(4;1,3): primitivity pattern",
            s.strata[0].primitive && !s.strata[1].primitive && s.strata[2].primitive &&
                !s.strata[3].primitive);
    } else {
      check("chain(4;1,3): 4 strata", false);
    }
  }

  {
    check("laurent: 7 irreducibles of degree <= 4 over F2",
          enumerate_canonical_irreducibles(f2, 4).size() == 7);
    LaurentPoly f = LaurentPoly::parse(q, "2*x^3 - 2*x");
    check("laurent: canonical generator shift and scale",
          f.canonical_generator() == LaurentPoly::parse(q, "x^2 - 1"));
    LaurentPoly sq = LaurentPoly::parse(f2, "x + 1") * LaurentPoly::parse(f2, "x + 1");
    check("laurent: frobenius square over F2", sq == LaurentPoly::parse(f2, "x^2 + 1"));
  }

  {
    GraphPtr g = make_figure4();
    bool ck1 = true;
    for (int e1 = 0; e1 < g->edge_count(); ++e1)
      for (int e2 = 0; e2 < g->edge_count(); ++e2) {
        AlgebraElement lhs = AlgebraElement::ghost_edge(g, f5, e1) *
                             AlgebraElement::real_edge(g, f5, e2);
        AlgebraElement rhs = e1 == e2
                                 ? AlgebraElement::vertex(g, f5, g->edge(e1).dst)
                                 : AlgebraElement::zero(g, f5);
        ck1 = ck1 && lhs == rhs;
      }
    check("figure4: ck1 over F5", ck1);
    bool ck2 = true;
    for (int v = 0; v < g->vertex_count(); ++v) {
      if (g->is_sink(v)) continue;
      AlgebraElement sum = AlgebraElement::zero(g, f5);
      for (int e : g->out_edges(v))
        sum = sum + AlgebraElement::real_edge(g, f5, e) * AlgebraElement::ghost_edge(g, f5, e);
      ck2 = ck2 && sum == AlgebraElement::vertex(g, f5, v);
    }
    check("figure4: ck2 over F5", ck2);
  }

  return all_ok;
}

inline int run_command(const std::vector<std::string>& argv, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"prime spectrum calculator for Leavitt path algebras of finite graphs"};
  app.name("lpa");
  app.require_subcommand(1);

  std::string file, field_spec = "q", expr, family, output;
  std::vector<std::string> family_params;
  bool want_dot = false;
  ReportBounds bounds;

  CLI::App* analyze = app.add_subcommand("analyze", "compute the stratified prime spectrum");
  analyze->add_option("file", file, "graph file")->required();
  analyze->add_option("--field", field_spec, "q or fp:<p> (default q)");
  analyze->add_option("--max-vertices", bounds.max_vertices,
                      "vertex cap for subset enumeration (default 20)");
  analyze->add_option("--max-cycles", bounds.max_cycles, "cycle cap (default 100000)");
  analyze->add_option("--oracle-bound", bounds.oracle_length_bound,
                      "membership oracle length bound (0 = auto)");
  analyze->add_option("--degree-bound", bounds.instantiation_degree_bound,
                      "instantiation degree bound (default 3)");

  CLI::App* poset = app.add_subcommand("poset", "emit the specialization poset");
  poset->add_option("file", file, "graph file")->required();
  poset->add_flag("--dot", want_dot, "emit Graphviz DOT");

  CLI::App* eval = app.add_subcommand("eval", "normalize an algebra expression");
  eval->add_option("file", file, "graph file")->required();
  eval->add_option("--field", field_spec, "q or fp:<p> (default q)");
  eval->add_option("expr", expr, "expression")->required();

  CLI::App* generate = app.add_subcommand("generate", "emit a named family graph");
  generate->add_option("family", family, "rose | line | loop | figure4 | E")->required();
  generate->add_option("params", family_params, "family parameters");
  generate->add_option("-o,--output", output, "write to file instead of stdout");

  app.add_subcommand("selftest", "run the built-in example corpus");

  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (analyze->parsed()) {
      GraphPtr g = parse_graph(read_file(file));
      FieldDescriptor field = FieldDescriptor::parse(field_spec);
      SpectrumBounds sb{bounds.max_vertices, static_cast<std::size_t>(bounds.max_cycles)};
      SpectrumDescription s = compute_spectrum(g, field, sb);
      out << spectrum_report(s, bounds).dump(2) << "\n";
    } else if (poset->parsed()) {
      if (!want_dot) {
        err << "error: poset requires --dot\n";
        return 1;
      }
      GraphPtr g = parse_graph(read_file(file));
      SpectrumDescription s = compute_spectrum(g, FieldDescriptor::rationals());
      out << poset_dot(s);
    } else if (eval->parsed()) {
      GraphPtr g = parse_graph(read_file(file));
      FieldDescriptor field = FieldDescriptor::parse(field_spec);
      out << parse_element(g, field, expr).str() << "\n";
    } else if (generate->parsed()) {
      GraphPtr g = make_family(family, family_params);
      if (output.empty()) {
        out << g->serialize();
      } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) throw ValidationError("cannot open file: " + output);
        f << g->serialize();
      }
    } else {
      if (!run_selftest(out)) {
        err << "selftest failed\n";
        return 4;
      }
    }
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace cli
}  // namespace lpa

#endif
