#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <vector>

#include "lpa/engine.hpp"
#include "lpa/errors.hpp"
#include "lpa/families.hpp"

using namespace lpa;

namespace {

const FieldDescriptor kQ = FieldDescriptor::rationals();
const FieldDescriptor kF5 = FieldDescriptor::prime(5);

GraphPath random_forward(const DirectedGraph& g, std::mt19937_64& rng, int start, int max_len) {
  GraphPath p = GraphPath::at_vertex(g, start);
  int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    const auto& out = g.out_edges(p.range(g));
    if (out.empty()) break;
    p = p.appended(g, out[rng() % out.size()]);
  }
  return p;
}

GraphPath random_backward(const DirectedGraph& g, std::mt19937_64& rng, int end, int max_len) {
  std::vector<int> rev;
  int at = end;
  int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    const auto& in = g.in_edges(at);
    if (in.empty()) break;
    int e = in[rng() % in.size()];
    rev.push_back(e);
    at = g.edge(e).src;
  }
  std::reverse(rev.begin(), rev.end());
  if (rev.empty()) return GraphPath::at_vertex(g, end);
  return GraphPath::of_edges(g, rev);
}

Monomial random_monomial(const DirectedGraph& g, std::mt19937_64& rng, int max_len) {
  GraphPath mu = random_forward(g, rng, static_cast<int>(rng() % g.vertex_count()), max_len);
  GraphPath nu = random_backward(g, rng, mu.range(g), max_len);
  return Monomial{mu, nu};
}

AlgebraElement random_element(const GraphPtr& g, const FieldDescriptor& f, std::mt19937_64& rng,
                              int max_terms = 3, int max_len = 2) {
  std::vector<std::pair<Monomial, Scalar>> raw;
  int terms = 1 + static_cast<int>(rng() % max_terms);
  for (int t = 0; t < terms; ++t) {
    long long c = static_cast<long long>(rng() % 7) - 3;
    raw.emplace_back(random_monomial(*g, rng, max_len), Scalar::from_integer(f, c));
  }
  return AlgebraElement::from_terms(g, f, std::move(raw));
}

}  // namespace

TEST_CASE("special edges pick the lex greatest outgoing id") {
  GraphPtr g = make_figure4();
  std::vector<int> sp = special_edges(*g);
  CHECK(g->edge(sp[g->vertex_index("v1")]).id == "f1");
  CHECK(sp[g->vertex_index("v2")] == -1);
  CHECK(g->edge(sp[g->vertex_index("v3")]).id == "f3");
  CHECK(g->edge(sp[g->vertex_index("v4")]).id == "g4");
}

TEST_CASE("cuntz krieger relations hold") {
  for (GraphPtr g : {make_rose(2), make_line(3), make_figure4()}) {
    for (const FieldDescriptor& f : {kQ, kF5}) {
      for (int e1 = 0; e1 < g->edge_count(); ++e1)
        for (int e2 = 0; e2 < g->edge_count(); ++e2) {
          AlgebraElement lhs =
              AlgebraElement::ghost_edge(g, f, e1) * AlgebraElement::real_edge(g, f, e2);
          AlgebraElement rhs = e1 == e2 ? AlgebraElement::vertex(g, f, g->edge(e1).dst)
                                        : AlgebraElement::zero(g, f);
          CHECK(lhs == rhs);
        }
      for (int v = 0; v < g->vertex_count(); ++v) {
        if (g->is_sink(v)) continue;
        AlgebraElement sum = AlgebraElement::zero(g, f);
        for (int e : g->out_edges(v))
          sum = sum + AlgebraElement::real_edge(g, f, e) * AlgebraElement::ghost_edge(g, f, e);
        CHECK(sum == AlgebraElement::vertex(g, f, v));
      }
    }
  }
}

TEST_CASE("vertices are orthogonal idempotents summing to the identity") {
  GraphPtr g = make_figure4();
  AlgebraElement id = AlgebraElement::identity(g, kQ);
  AlgebraElement sum = AlgebraElement::zero(g, kQ);
  for (int v = 0; v < g->vertex_count(); ++v) {
    AlgebraElement pv = AlgebraElement::vertex(g, kQ, v);
    CHECK(pv * pv == pv);
    sum = sum + pv;
    for (int w = v + 1; w < g->vertex_count(); ++w)
      CHECK((pv * AlgebraElement::vertex(g, kQ, w)).is_zero());
  }
  CHECK(sum == id);
  AlgebraElement e = AlgebraElement::real_edge(g, kQ, g->edge_index("e3"));
  CHECK(id * e == e);
  CHECK(e * id == e);
}

TEST_CASE("expression parsing") {
  GraphPtr g = make_figure4();
  CHECK(parse_element(g, kQ, "v1") == AlgebraElement::vertex(g, kQ, 0));
  CHECK(parse_element(g, kQ, "e1") == AlgebraElement::real_edge(g, kQ, g->edge_index("e1")));
  CHECK(parse_element(g, kQ, "e1*") == AlgebraElement::ghost_edge(g, kQ, g->edge_index("e1")));
  CHECK(parse_element(g, kQ, "2") == AlgebraElement::identity(g, kQ).scaled(
                                         Scalar::from_integer(kQ, 2)));
  CHECK(parse_element(g, kQ, "f1 - f1").is_zero());
  CHECK(parse_element(g, kQ, "e1.e2").is_zero());
  CHECK(parse_element(g, kQ, "e3.e1") ==
        AlgebraElement::real_edge(g, kQ, g->edge_index("e3")) *
            AlgebraElement::real_edge(g, kQ, g->edge_index("e1")));
  CHECK(parse_element(g, kQ, "1/2*v1 + 1/2*v1") == AlgebraElement::vertex(g, kQ, 0));
  CHECK(parse_element(g, kQ, " v1 . f1 ") == parse_element(g, kQ, "f1"));
  CHECK_THROWS_AS(parse_element(g, kQ, "w"), ValidationError);
  CHECK_THROWS_AS(parse_element(g, kQ, "v1 +"), ParseError);
  CHECK_THROWS_AS(parse_element(g, kQ, "v1 ."), ParseError);
  CHECK_THROWS_AS(parse_element(g, kQ, ""), ParseError);
  CHECK_THROWS_AS(parse_element(g, kQ, "1/0"), ValidationError);
}

TEST_CASE("normalization rewrites to the reduced basis") {
  GraphPtr loop = make_loop();
  AlgebraElement v = AlgebraElement::vertex(loop, kQ, 0);
  CHECK(parse_element(loop, kQ, "x.x*") == v);
  CHECK(parse_element(loop, kQ, "x*.x") == v);
  CHECK(parse_element(loop, kQ, "x.x.x*") == parse_element(loop, kQ, "x"));

  GraphPtr g = make_figure4();
  CHECK(parse_element(g, kQ, "f1.f1*") ==
        parse_element(g, kQ, "v1 - e1.e1*"));
  AlgebraElement mixed = parse_element(g, kF5, "g4.e3.e3*.g4* + f4.g4*");
  for (const auto& [m, c] : mixed.terms())
    CHECK(is_reduced_monomial(*g, special_edges(*g), m));
}

TEST_CASE("monomial products respect path composition") {
  GraphPtr g = make_figure4();
  AlgebraElement e3 = parse_element(g, kQ, "e3");
  AlgebraElement e1 = parse_element(g, kQ, "e1");
  CHECK(e3 * e1 == parse_element(g, kQ, "e3.e1"));
  CHECK((e1 * e3).is_zero());
  CHECK(parse_element(g, kQ, "e3*.e3") == parse_element(g, kQ, "v1"));
  CHECK(parse_element(g, kQ, "e3.e3*") ==
        parse_element(g, kQ, "e3") * parse_element(g, kQ, "e3*"));
}

TEST_CASE("star is an involutive anti automorphism") {
  std::mt19937_64 rng(111);
  for (GraphPtr g : {make_rose(2), make_figure4()}) {
    for (int i = 0; i < 150; ++i) {
      AlgebraElement a = random_element(g, kF5, rng);
      AlgebraElement b = random_element(g, kF5, rng);
      CHECK(a.star().star() == a);
      CHECK((a * b).star() == b.star() * a.star());
      CHECK((a + b).star() == a.star() + b.star());
    }
  }
}

TEST_CASE("ring axioms on random elements") {
  std::mt19937_64 rng(222);
  for (GraphPtr g : {make_rose(2), make_line(3), make_figure4()}) {
    for (const FieldDescriptor& f : {kQ, kF5}) {
      for (int i = 0; i < 60; ++i) {
        AlgebraElement a = random_element(g, f, rng);
        AlgebraElement b = random_element(g, f, rng);
        AlgebraElement c = random_element(g, f, rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a + b == b + a);
        CHECK((a - a).is_zero());
        AlgebraElement id = AlgebraElement::identity(g, f);
        CHECK(id * a == a);
        CHECK(a * id == a);
      }
    }
  }
}

TEST_CASE("normalization is confluent under random worklist orders") {
  std::mt19937_64 seed_rng(333);
  for (GraphPtr g : {make_rose(2), make_line(3), make_figure4()}) {
    for (int i = 0; i < 100; ++i) {
      std::vector<std::pair<Monomial, Scalar>> raw;
      int terms = 1 + static_cast<int>(seed_rng() % 3);
      for (int t = 0; t < terms; ++t)
        raw.emplace_back(random_monomial(*g, seed_rng, 3),
                         Scalar::from_integer(kF5, static_cast<long long>(seed_rng() % 5)));
      AlgebraElement det = AlgebraElement::from_terms(g, kF5, raw);
      std::mt19937_64 shuffle_rng(seed_rng());
      AlgebraElement rnd = AlgebraElement::from_terms(g, kF5, raw, &shuffle_rng);
      CHECK(det == rnd);
    }
  }
}

TEST_CASE("graded components decompose the element") {
  std::mt19937_64 rng(444);
  GraphPtr g = make_figure4();
  for (int i = 0; i < 100; ++i) {
    AlgebraElement a = random_element(g, kQ, rng);
    auto comps = a.graded_components();
    AlgebraElement sum = AlgebraElement::zero(g, kQ);
    for (const auto& [d, part] : comps) {
      for (const auto& [m, c] : part.terms()) CHECK(m.degree() == d);
      sum = sum + part;
    }
    CHECK(sum == a);
  }
}

TEST_CASE("torus action is multiplicative and grades the algebra") {
  std::mt19937_64 rng(555);
  GraphPtr g = make_figure4();
  Scalar h = Scalar::from_integer(kF5, 2);
  for (int i = 0; i < 100; ++i) {
    AlgebraElement a = random_element(g, kF5, rng);
    AlgebraElement b = random_element(g, kF5, rng);
    CHECK(a.torus_act(h) * b.torus_act(h) == (a * b).torus_act(h));
    CHECK(a.torus_act(Scalar::one(kF5)) == a);
    AlgebraElement lin = a.torus_act(h) + b.torus_act(h);
    CHECK(lin == (a + b).torus_act(h));
  }
  AlgebraElement e = parse_element(g, kF5, "e3");
  CHECK(e.torus_act(h) == e.scaled(h));
  CHECK(e.star().torus_act(h) == e.star().scaled(h.inverse()));
  CHECK_THROWS_AS(e.torus_act(Scalar::zero(kF5)), ValidationError);
}

TEST_CASE("quotient by a hereditary saturated set is a ring map killing the set") {
  GraphPtr g = make_figure4();
  HereditarySaturatedSet h{g, vs_from_names(*g, {"v1", "v2"})};
  CHECK(quotient_map(AlgebraElement::vertex(g, kQ, g->vertex_index("v1")), h).is_zero());
  CHECK(quotient_map(parse_element(g, kQ, "f1 + e1"), h).is_zero());
  AlgebraElement v3q = quotient_map(AlgebraElement::vertex(g, kQ, g->vertex_index("v3")), h);
  CHECK_FALSE(v3q.is_zero());
  CHECK(v3q.str() == "1*v3 (deg 0)");
  CHECK(quotient_map(parse_element(g, kQ, "e3.e3*"), h).is_zero());
  CHECK_FALSE(quotient_map(parse_element(g, kQ, "e5.e5*"), h).is_zero());

  std::mt19937_64 rng(666);
  for (int i = 0; i < 80; ++i) {
    AlgebraElement a = random_element(g, kQ, rng);
    AlgebraElement b = random_element(g, kQ, rng);
    CHECK(quotient_map(a * b, h) == quotient_map(a, h) * quotient_map(b, h));
    CHECK(quotient_map(a + b, h) == quotient_map(a, h) + quotient_map(b, h));
  }

  CHECK(in_graded_ideal(parse_element(g, kQ, "v2 + e1"), h));
  CHECK_FALSE(in_graded_ideal(parse_element(g, kQ, "v2 + v3"), h));
  CHECK_THROWS_AS(quotient_map(parse_element(g, kQ, "v1"),
                               HereditarySaturatedSet{g, vs_from_names(*g, {"v1"})}),
                  ValidationError);
}

TEST_CASE("quotient by the empty set is the identity map") {
  GraphPtr g = make_figure4();
  std::mt19937_64 rng(777);
  for (int i = 0; i < 30; ++i) {
    AlgebraElement a = random_element(g, kQ, rng);
    AlgebraElement q = quotient_map(a, HereditarySaturatedSet{g, VertexSet{}});
    CHECK(q.str() == a.str());
  }
}

TEST_CASE("laurent evaluation at an exitless cycle is a ring map") {
  GraphPtr loop = make_loop();
  Cycle c = enumerate_cycles(*loop)[0];
  CHECK(eval_poly_at_cycle(loop, LaurentPoly::parse(kQ, "x^2 + 1"), c) ==
        parse_element(loop, kQ, "x.x + v"));
  CHECK(eval_poly_at_cycle(loop, LaurentPoly::parse(kQ, "x^-1"), c) ==
        parse_element(loop, kQ, "x*"));
  CHECK(eval_poly_at_cycle(loop, LaurentPoly::one(kQ), c) ==
        AlgebraElement::vertex(loop, kQ, 0));

  std::mt19937_64 rng(888);
  for (int i = 0; i < 60; ++i) {
    LaurentPoly f = LaurentPoly::zero(kF5);
    LaurentPoly gpoly = LaurentPoly::zero(kF5);
    for (int t = 0; t < 2; ++t) {
      f = f + LaurentPoly::monomial(kF5, Scalar::from_integer(kF5, static_cast<long long>(rng() % 5)),
                                    static_cast<long long>(rng() % 7) - 3);
      gpoly = gpoly + LaurentPoly::monomial(kF5,
                                            Scalar::from_integer(kF5, static_cast<long long>(rng() % 5)),
                                            static_cast<long long>(rng() % 7) - 3);
    }
    AlgebraElement ef = eval_poly_at_cycle(loop, f, c);
    AlgebraElement eg = eval_poly_at_cycle(loop, gpoly, c);
    CHECK(ef * eg == eval_poly_at_cycle(loop, f * gpoly, c));
    CHECK(ef + eg == eval_poly_at_cycle(loop, f + gpoly, c));
  }
}

TEST_CASE("reduced monomial enumeration on acyclic graphs") {
  for (int n = 1; n <= 5; ++n)
    CHECK(enumerate_reduced_monomials(*make_line(n)).size() ==
          static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  auto mons = enumerate_reduced_monomials(*make_line(2));
  REQUIRE(mons.size() == 4);
  GraphPtr g2 = make_line(2);
  SpanBasis basis(g2, kQ);
  for (const Monomial& m : mons)
    CHECK(basis.insert(AlgebraElement::from_monomial(g2, kQ, m, Scalar::one(kQ))).has_value());
  CHECK(basis.rank() == 4);
  CHECK_THROWS_AS(enumerate_reduced_monomials(*make_loop()), ValidationError);
}

TEST_CASE("element string rendering") {
  GraphPtr g = make_figure4();
  CHECK(parse_element(g, kQ, "v1").str() == "1*v1 (deg 0)");
  CHECK(parse_element(g, kQ, "2/3*e1").str() == "2/3*e1 (deg 1)");
  CHECK(parse_element(g, kQ, "e1*").str() == "1*e1* (deg -1)");
  CHECK(parse_element(g, kQ, "e3.e1").str() == "1*e3.e1 (deg 2)");
  CHECK(parse_element(g, kQ, "g4.e3.e1.e1*.e3*").str() == "1*g4.e3.e1.e1*.e3* (deg 1)");
  CHECK(AlgebraElement::zero(g, kQ).str() == "0");
}
