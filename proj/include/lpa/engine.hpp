#ifndef LPA_ENGINE_HPP
#define LPA_ENGINE_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/field.hpp"
#include "lpa/graph.hpp"
#include "lpa/ideal_lattice.hpp"
#include "lpa/laurent.hpp"

namespace lpa {

// Basis word mu.nu* with range(mu) = range(nu); empty paths anchored.
struct Monomial {
  GraphPath mu, nu;

  int degree() const { return static_cast<int>(mu.length()) - static_cast<int>(nu.length()); }
  std::size_t total_length() const { return mu.length() + nu.length(); }

  bool operator==(const Monomial&) const = default;
};

inline Monomial make_monomial(const DirectedGraph& g, GraphPath mu, GraphPath nu) {
  mu.validate(g);
  nu.validate(g);
  if (mu.range(g) != nu.range(g)) throw ValidationError("monomial paths have different ranges");
  return Monomial{std::move(mu), std::move(nu)};
}

// Deterministic total order by (total length, real length, edge names,
// anchor names).  Name-based so rendering order is graph-file independent.
struct MonomialLess {
  const DirectedGraph* g = nullptr;

  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.total_length() != b.total_length()) return a.total_length() < b.total_length();
    if (a.mu.length() != b.mu.length()) return a.mu.length() < b.mu.length();
    for (std::size_t i = 0; i < a.mu.edges.size(); ++i) {
      const std::string& na = g->edge(a.mu.edges[i]).id;
      const std::string& nb = g->edge(b.mu.edges[i]).id;
      if (na != nb) return na < nb;
    }
    for (std::size_t i = 0; i < a.nu.edges.size(); ++i) {
      const std::string& na = g->edge(a.nu.edges[i]).id;
      const std::string& nb = g->edge(b.nu.edges[i]).id;
      if (na != nb) return na < nb;
    }
    const std::string& ma = g->vertex_name(a.mu.anchor);
    const std::string& mb = g->vertex_name(b.mu.anchor);
    if (ma != mb) return ma < mb;
    return g->vertex_name(a.nu.anchor) < g->vertex_name(b.nu.anchor);
  }
};

// The designated edge per non-sink vertex (-1 for sinks): lexicographically
// greatest outgoing edge name.  Pins the reduced spanning family.
inline std::vector<int> special_edges(const DirectedGraph& g) {
  std::vector<int> sp(static_cast<std::size_t>(g.vertex_count()), -1);
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int e : g.out_edges(v)) {
      int& cur = sp[static_cast<std::size_t>(v)];
      if (cur < 0 || g.edge(cur).id < g.edge(e).id) cur = e;
    }
  return sp;
}

inline bool is_reduced_monomial(const DirectedGraph& g, const std::vector<int>& special,
                                const Monomial& m) {
  if (m.mu.edges.empty() || m.nu.edges.empty()) return true;
  int last = m.mu.edges.back();
  if (last != m.nu.edges.back()) return true;
  return special[static_cast<std::size_t>(g.edge(last).src)] != last;
}

using TermMap = std::map<Monomial, Scalar, MonomialLess>;

namespace detail {

inline void add_to(TermMap& acc, const Monomial& m, const Scalar& c) {
  auto it = acc.find(m);
  if (it == acc.end()) {
    if (!c.is_zero()) acc.emplace(m, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

// CK2 rewriting to the reduced spanning family.  A monomial whose real and
// ghost paths both end in the special edge gamma of s(gamma) rewrites to
// mu'.nu'* - sum over the sibling edges e of (mu'e)(nu'e)*.  The worklist
// order is irrelevant for the result; an optional rng shuffles it to exercise
// exactly that.
inline TermMap normalize_terms(const DirectedGraph& g,
                               std::vector<std::pair<Monomial, Scalar>> work,
                               std::mt19937_64* rng = nullptr) {
  const std::vector<int> special = special_edges(g);
  TermMap acc{MonomialLess{&g}};
  while (!work.empty()) {
    if (rng && work.size() > 1) {
      std::size_t i = static_cast<std::size_t>((*rng)() % work.size());
      std::swap(work[i], work.back());
    }
    auto [m, c] = std::move(work.back());
    work.pop_back();
    if (c.is_zero()) continue;
    if (!is_reduced_monomial(g, special, m)) {
      int gamma = m.mu.edges.back();
      int src = g.edge(gamma).src;
      Monomial base{m.mu.dropped_last(), m.nu.dropped_last()};
      work.emplace_back(base, c);
      for (int e : g.out_edges(src)) {
        if (e == gamma) continue;
        work.emplace_back(Monomial{base.mu.appended(g, e), base.nu.appended(g, e)}, -c);
      }
    } else {
      add_to(acc, m, c);
    }
  }
  return acc;
}

}  // namespace detail

// CK1 collapse of (mu1 nu1*)(mu2 nu2*): the junction paths must be prefix
// comparable; the survivor absorbs the remainder.
inline std::optional<Monomial> monomial_product(const DirectedGraph& g, const Monomial& a,
                                                const Monomial& b) {
  const GraphPath& n1 = a.nu;
  const GraphPath& m2 = b.mu;
  if (n1.anchor != m2.anchor) return std::nullopt;
  if (n1.edges.size() <= m2.edges.size()) {
    if (!std::equal(n1.edges.begin(), n1.edges.end(), m2.edges.begin())) return std::nullopt;
    GraphPath mu = a.mu;
    mu.edges.insert(mu.edges.end(), m2.edges.begin() + static_cast<std::ptrdiff_t>(n1.edges.size()),
                    m2.edges.end());
    return Monomial{std::move(mu), b.nu};
  }
  if (!std::equal(m2.edges.begin(), m2.edges.end(), n1.edges.begin())) return std::nullopt;
  GraphPath nu = b.nu;
  nu.edges.insert(nu.edges.end(), n1.edges.begin() + static_cast<std::ptrdiff_t>(m2.edges.size()),
                  n1.edges.end());
  return Monomial{a.mu, std::move(nu)};
}

// Element of the path algebra: normalized term map over one graph and field.
class AlgebraElement {
 public:
  static AlgebraElement zero(GraphPtr g, const FieldDescriptor& f) {
    return AlgebraElement(std::move(g), f);
  }

  static AlgebraElement vertex(GraphPtr g, const FieldDescriptor& f, int v) {
    GraphPath p = GraphPath::at_vertex(*g, v);
    return from_monomial(std::move(g), f, Monomial{p, p}, Scalar::one(f));
  }

  static AlgebraElement real_edge(GraphPtr g, const FieldDescriptor& f, int e) {
    GraphPath mu = GraphPath::of_edges(*g, {e});
    GraphPath nu = GraphPath::at_vertex(*g, g->edge(e).dst);
    return from_monomial(std::move(g), f, Monomial{mu, nu}, Scalar::one(f));
  }

  static AlgebraElement ghost_edge(GraphPtr g, const FieldDescriptor& f, int e) {
    return real_edge(std::move(g), f, e).star();
  }

  // Sum of all vertex idempotents: the multiplicative identity.
  static AlgebraElement identity(GraphPtr g, const FieldDescriptor& f) {
    std::vector<std::pair<Monomial, Scalar>> raw;
    for (int v = 0; v < g->vertex_count(); ++v) {
      GraphPath p = GraphPath::at_vertex(*g, v);
      raw.emplace_back(Monomial{p, p}, Scalar::one(f));
    }
    return from_terms(std::move(g), f, std::move(raw));
  }

  static AlgebraElement from_monomial(GraphPtr g, const FieldDescriptor& f, const Monomial& m,
                                      const Scalar& c) {
    return from_terms(std::move(g), f, {{m, c}});
  }

  static AlgebraElement from_terms(GraphPtr g, const FieldDescriptor& f,
                                   std::vector<std::pair<Monomial, Scalar>> raw,
                                   std::mt19937_64* rng = nullptr) {
    for (auto& [m, c] : raw) {
      m = make_monomial(*g, std::move(m.mu), std::move(m.nu));
      if (!(c.field() == f)) throw ValidationError("coefficient field mismatch");
    }
    AlgebraElement a(g, f);
    a.terms_ = detail::normalize_terms(*g, std::move(raw), rng);
    return a;
  }

  const GraphPtr& graph() const { return graph_; }
  const FieldDescriptor& field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  AlgebraElement operator-() const { return scaled(-Scalar::one(field_)); }

  AlgebraElement scaled(const Scalar& s) const {
    if (!(s.field() == field_)) throw ValidationError("coefficient field mismatch");
    AlgebraElement r(graph_, field_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
    return r;
  }

  AlgebraElement operator+(const AlgebraElement& o) const {
    check_compat(o);
    AlgebraElement r = *this;
    for (const auto& [m, c] : o.terms_) detail::add_to(r.terms_, m, c);
    return r;
  }

  AlgebraElement operator-(const AlgebraElement& o) const { return *this + (-o); }

  AlgebraElement operator*(const AlgebraElement& o) const {
    check_compat(o);
    std::vector<std::pair<Monomial, Scalar>> raw;
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_)
        if (auto m = monomial_product(*graph_, m1, m2)) raw.emplace_back(*m, c1 * c2);
    AlgebraElement r(graph_, field_);
    r.terms_ = detail::normalize_terms(*graph_, std::move(raw));
    return r;
  }

  // The involution mu.nu* -> nu.mu*; reducedness is symmetric, so the term
  // map carries over unchanged.
  AlgebraElement star() const {
    AlgebraElement r(graph_, field_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(Monomial{m.nu, m.mu}, c);
    return r;
  }

  std::map<int, AlgebraElement> graded_components() const {
    std::map<int, AlgebraElement> out;
    for (const auto& [m, c] : terms_) {
      auto it = out.find(m.degree());
      if (it == out.end()) it = out.emplace(m.degree(), AlgebraElement(graph_, field_)).first;
      it->second.terms_.emplace(m, c);
    }
    return out;
  }

  // h . a = h^n a on each degree-n component.
  AlgebraElement torus_act(const Scalar& h) const {
    if (!(h.field() == field_)) throw ValidationError("coefficient field mismatch");
    if (h.is_zero()) throw ValidationError("torus action needs a nonzero scalar");
    AlgebraElement r(graph_, field_);
    for (const auto& [m, c] : terms_) {
      Scalar s = c * h.pow(m.degree());
      if (!s.is_zero()) r.terms_.emplace(m, s);
    }
    return r;
  }

  bool operator==(const AlgebraElement& o) const {
    if (!(field_ == o.field_) || !(*graph_ == *o.graph_)) return false;
    return terms_.size() == o.terms_.size() &&
           std::equal(terms_.begin(), terms_.end(), o.terms_.begin());
  }
  bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

  // Rendering: "coeff*factor.factor... (deg n)" terms joined by " + ";
  // ghost factors carry a trailing '*'; a bare vertex renders as its name.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += c.str() + "*" + monomial_str(m) + " (deg " + std::to_string(m.degree()) + ")";
    }
    return out;
  }

  std::string monomial_str(const Monomial& m) const {
    if (m.mu.edges.empty() && m.nu.edges.empty()) return graph_->vertex_name(m.mu.anchor);
    std::vector<std::string> factors;
    for (int e : m.mu.edges) factors.push_back(graph_->edge(e).id);
    for (auto it = m.nu.edges.rbegin(); it != m.nu.edges.rend(); ++it)
      factors.push_back(graph_->edge(*it).id + "*");
    std::string out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out += "." + factors[i];
    return out;
  }

 private:
  AlgebraElement(GraphPtr g, const FieldDescriptor& f)
      : graph_(std::move(g)), field_(f), terms_(MonomialLess{graph_.get()}) {}

  void check_compat(const AlgebraElement& o) const {
    if (!(field_ == o.field_)) throw ValidationError("elements from different fields");
    if (!(*graph_ == *o.graph_)) throw ValidationError("elements from different graphs");
  }

  GraphPtr graph_;
  FieldDescriptor field_;
  TermMap terms_;

  friend class SpanBasis;
};

// ---------------------------------------------------------------------------
// Expression parsing.
//   expr     := term (('+'|'-') term)*
//   term     := coeff ['*' monomial] | monomial
//   monomial := factor ('.' factor)*
//   factor   := identifier ['*']
//   coeff    := integer ['/' integer]
// A bare coefficient multiplies the identity.  Non-composable products give
// the zero element.

inline AlgebraElement parse_element(GraphPtr g, const FieldDescriptor& field,
                                    std::string_view text) {
  struct Lexer {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
      skip_ws();
      return pos < text.size() ? text[pos] : '\0';
    }
    bool consume(char c) {
      if (peek() == c) {
        ++pos;
        return true;
      }
      return false;
    }
    std::string ident() {
      skip_ws();
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      return std::string(text.substr(start, pos - start));
    }
    BigInt integer() {
      skip_ws();
      std::string digits;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        digits.push_back(text[pos++]);
      if (digits.empty())
        throw ParseError("expected integer at position " + std::to_string(pos));
      return BigInt(digits);
    }
  };

  Lexer lx{text};

  auto parse_factor = [&]() -> AlgebraElement {
    char c = lx.peek();
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_')
      throw ParseError("expected identifier at position " + std::to_string(lx.pos));
    std::string id = lx.ident();
    bool ghost = lx.consume('*');
    if (g->has_vertex(id)) return AlgebraElement::vertex(g, field, g->vertex_index(id));
    if (g->has_edge(id)) {
      int e = g->edge_index(id);
      return ghost ? AlgebraElement::ghost_edge(g, field, e)
                   : AlgebraElement::real_edge(g, field, e);
    }
    throw ValidationError("unknown identifier: " + id);
  };

  auto parse_monomial = [&]() -> AlgebraElement {
    AlgebraElement el = parse_factor();
    while (lx.consume('.')) el = el * parse_factor();
    return el;
  };

  auto parse_term = [&]() -> AlgebraElement {
    char c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigInt num = lx.integer();
      BigInt den = 1;
      if (lx.consume('/')) den = lx.integer();
      Scalar coeff = Scalar::fraction(field, num, den);
      if (lx.consume('*')) return parse_monomial().scaled(coeff);
      return AlgebraElement::identity(g, field).scaled(coeff);
    }
    return parse_monomial();
  };

  AlgebraElement result = parse_term();
  for (;;) {
    char c = lx.peek();
    if (c == '\0') break;
    if (lx.consume('+'))
      result = result + parse_term();
    else if (lx.consume('-'))
      result = result - parse_term();
    else
      throw ParseError("unexpected character '" + std::string(1, c) + "' at position " +
                       std::to_string(lx.pos));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Quotient homomorphism L(E) -> L(E/H).

inline AlgebraElement quotient_map(const AlgebraElement& a, const HereditarySaturatedSet& h) {
  if (!(*h.graph == *a.graph())) throw ValidationError("set belongs to a different graph");
  const DirectedGraph& g = *a.graph();
  GraphPtr q = quotient_graph(g, h.vertices);

  auto map_path = [&](const GraphPath& p) -> std::optional<GraphPath> {
    if (vs_contains(h.vertices, p.anchor)) return std::nullopt;
    GraphPath out = GraphPath::at_vertex(*q, q->vertex_index(g.vertex_name(p.anchor)));
    for (int e : p.edges) {
      if (vs_contains(h.vertices, g.edge(e).dst)) return std::nullopt;
      out.edges.push_back(q->edge_index(g.edge(e).id));
    }
    return out;
  };

  std::vector<std::pair<Monomial, Scalar>> raw;
  for (const auto& [m, c] : a.terms()) {
    auto mu = map_path(m.mu);
    if (!mu) continue;
    auto nu = map_path(m.nu);
    if (!nu) continue;
    raw.emplace_back(Monomial{std::move(*mu), std::move(*nu)}, c);
  }
  return AlgebraElement::from_terms(q, a.field(), std::move(raw));
}

inline bool in_graded_ideal(const AlgebraElement& a, const HereditarySaturatedSet& h) {
  return quotient_map(a, h).is_zero();
}

// ---------------------------------------------------------------------------
// Polynomial evaluation at a cycle: sum a_i c^i with c^0 = base vertex and
// c^-1 = c*.

inline AlgebraElement eval_poly_at_cycle(GraphPtr g, const LaurentPoly& f, const Cycle& c) {
  c.path.validate(*g);
  int v = c.base();
  std::vector<std::pair<Monomial, Scalar>> raw;
  for (const auto& [k, coeff] : f.terms()) {
    GraphPath power = GraphPath::at_vertex(*g, v);
    long long reps = k < 0 ? -k : k;
    for (long long i = 0; i < reps; ++i)
      power.edges.insert(power.edges.end(), c.path.edges.begin(), c.path.edges.end());
    GraphPath unit = GraphPath::at_vertex(*g, v);
    raw.emplace_back(k >= 0 ? Monomial{power, unit} : Monomial{unit, power}, coeff);
  }
  return AlgebraElement::from_terms(std::move(g), f.field(), std::move(raw));
}

// ---------------------------------------------------------------------------
// Reduced monomial enumeration (finite only for acyclic graphs).

inline std::vector<Monomial> enumerate_reduced_monomials(const DirectedGraph& g,
                                                         std::size_t cap = 1000000) {
  if (!enumerate_cycles(g).empty())
    throw ValidationError("reduced monomial enumeration requires an acyclic graph");
  std::vector<GraphPath> paths;
  for (int v = 0; v < g.vertex_count(); ++v) paths.push_back(GraphPath::at_vertex(g, v));
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (int e : g.out_edges(paths[i].range(g))) {
      paths.push_back(paths[i].appended(g, e));
      if (paths.size() > cap) throw ResourceError("path enumeration exceeded cap");
    }
  }
  const std::vector<int> special = special_edges(g);
  std::vector<Monomial> out;
  for (const auto& mu : paths)
    for (const auto& nu : paths) {
      if (mu.range(g) != nu.range(g)) continue;
      Monomial m{mu, nu};
      if (!is_reduced_monomial(g, special, m)) continue;
      out.push_back(std::move(m));
      if (out.size() > cap) throw ResourceError("monomial enumeration exceeded cap");
    }
  std::sort(out.begin(), out.end(), MonomialLess{&g});
  return out;
}

// ---------------------------------------------------------------------------
// Exact linear algebra over the reduced basis: echelon rows keyed by their
// largest monomial, kept with leading coefficient 1 and fully reduced on
// insertion, so reduction always strictly lowers the largest unmatched
// monomial.

class SpanBasis {
 public:
  SpanBasis(GraphPtr g, const FieldDescriptor& f)
      : graph_(std::move(g)), field_(f), rows_(MonomialLess{graph_.get()}) {}

  std::size_t rank() const { return rows_.size(); }

  AlgebraElement reduce(AlgebraElement x) const {
    for (;;) {
      if (x.is_zero()) return x;
      const AlgebraElement* row = nullptr;
      const Monomial* pivot = nullptr;
      const Scalar* coeff = nullptr;
      for (auto it = x.terms_.rbegin(); it != x.terms_.rend(); ++it) {
        auto hit = rows_.find(it->first);
        if (hit != rows_.end()) {
          pivot = &it->first;
          coeff = &it->second;
          row = &hit->second;
          break;
        }
      }
      if (!row) return x;
      x = x - row->scaled(*coeff);
    }
  }

  // Reduce, keep if independent; returns the new pivot when rank grew.
  std::optional<Monomial> insert(const AlgebraElement& x) {
    AlgebraElement r = reduce(x);
    if (r.is_zero()) return std::nullopt;
    Monomial pivot = r.terms_.rbegin()->first;
    Scalar lead = r.terms_.rbegin()->second;
    rows_.emplace(pivot, r.scaled(lead.inverse()));
    return pivot;
  }

 private:
  GraphPtr graph_;
  FieldDescriptor field_;
  std::map<Monomial, AlgebraElement, MonomialLess> rows_;
};

// ---------------------------------------------------------------------------
// Brute-force bounded ideal-membership oracle: is a in the span of
// {m . gen . m' : monomials of total length <= length_bound}?
// Products are formed in nondecreasing witness size; a positive answer is
// exact, a negative one means "not found within the enumerated part".

struct SpanOptions {
  long long length_bound = -1;  // -1: 2 + 2 * longest input monomial
  unsigned long long product_budget = 2000000;
  std::size_t path_cap = 200000;
};

struct SpanResult {
  bool member = false;
  bool exhausted = false;  // every product within the bound was enumerated
  unsigned long long products = 0;
  long long levels_completed = -1;  // witness size m + m' fully processed
  long long length_bound = 0;
};

namespace detail {

inline long long span_length_bound(const DirectedGraph& g, const FieldDescriptor& field,
                                   const std::vector<AlgebraElement>& generators,
                                   std::size_t probe_longest, const SpanOptions& opt) {
  std::size_t longest = probe_longest;
  for (const auto& gen : generators) {
    if (!(gen.field() == field) || !(*gen.graph() == g))
      throw ValidationError("oracle inputs from different graphs or fields");
    for (const auto& [m, c] : gen.terms()) longest = std::max(longest, m.total_length());
  }
  long long bound = opt.length_bound < 0 ? 2 + 2 * static_cast<long long>(longest)
                                         : opt.length_bound;
  if (bound < static_cast<long long>(longest))
    throw ValidationError("length bound below the longest input monomial");
  return bound;
}

// Core enumerator shared by the one-shot membership check and SpanOracle:
// walks products m . gen . m' in nondecreasing witness size |m| + |m'| and
// feeds each nonzero normalized product to sink. A sink returning true stops
// the walk early (exhausted then stays false; the caller interprets why).
template <typename Sink>
inline SpanResult enumerate_span_products(const GraphPtr& gp, const FieldDescriptor& field,
                                          const std::vector<AlgebraElement>& generators,
                                          std::size_t probe_longest, SpanOptions opt,
                                          Sink&& sink) {
  const DirectedGraph& g = *gp;
  SpanResult res;
  res.length_bound = span_length_bound(g, field, generators, probe_longest, opt);
  const long long bound = res.length_bound;

  // Junction anchors per generator for cheap zero-product skips.
  std::vector<std::set<int>> left(generators.size()), right(generators.size());
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (const auto& [m, c] : generators[i].terms()) {
      left[i].insert(m.mu.anchor);
      right[i].insert(m.nu.anchor);
    }

  const std::vector<int> special = special_edges(g);

  // Paths by length, bucketed by range vertex.
  std::vector<std::vector<GraphPath>> paths;
  paths.emplace_back();
  for (int v = 0; v < g.vertex_count(); ++v) paths[0].push_back(GraphPath::at_vertex(g, v));
  std::size_t total_paths = paths[0].size();
  bool curtailed = false;
  auto ensure_paths = [&](std::size_t len) -> bool {
    while (paths.size() <= len) {
      std::vector<GraphPath> next;
      for (const auto& p : paths.back())
        for (int e : g.out_edges(p.range(g))) {
          next.push_back(p.appended(g, e));
          if (++total_paths > opt.path_cap) {
            curtailed = true;
            return false;
          }
        }
      paths.push_back(std::move(next));
    }
    return true;
  };

  // Reduced monomials by total length.
  std::vector<std::vector<Monomial>> mons;
  auto ensure_mons = [&](std::size_t len) -> bool {
    while (mons.size() <= len) {
      std::size_t t = mons.size();
      if (!ensure_paths(t)) return false;
      std::vector<Monomial> level;
      for (std::size_t i = 0; i <= t; ++i) {
        for (const auto& mu : paths[i])
          for (const auto& nu : paths[t - i]) {
            if (mu.range(g) != nu.range(g)) continue;
            Monomial m{mu, nu};
            if (is_reduced_monomial(g, special, m)) level.push_back(std::move(m));
          }
      }
      mons.push_back(std::move(level));
    }
    return true;
  };

  auto over_budget = [&]() { return res.products >= opt.product_budget; };
  bool stopped = false;

  for (long long level = 0; level <= 2 * bound; ++level) {
    if (curtailed || over_budget()) break;
    bool level_done = true;
    for (long long s = std::max(0LL, level - bound); s <= std::min(level, bound); ++s) {
      long long sp = level - s;
      if (!ensure_mons(static_cast<std::size_t>(s)) ||
          !ensure_mons(static_cast<std::size_t>(sp))) {
        level_done = false;
        break;
      }
      for (const auto& m : mons[static_cast<std::size_t>(s)]) {
        for (std::size_t gi = 0; gi < generators.size(); ++gi) {
          if (!left[gi].count(m.nu.anchor)) continue;
          for (const auto& mp : mons[static_cast<std::size_t>(sp)]) {
            if (!right[gi].count(mp.mu.anchor)) continue;
            if (over_budget()) {
              level_done = false;
              goto level_end;
            }
            ++res.products;
            std::vector<std::pair<Monomial, Scalar>> raw;
            for (const auto& [gm, gc] : generators[gi].terms()) {
              auto t1 = monomial_product(g, m, gm);
              if (!t1) continue;
              auto t2 = monomial_product(g, *t1, mp);
              if (t2) raw.emplace_back(std::move(*t2), gc);
            }
            if (raw.empty()) continue;
            AlgebraElement prod = AlgebraElement::from_terms(gp, field, std::move(raw));
            if (prod.is_zero()) continue;
            if (sink(prod)) {
              stopped = true;
              res.levels_completed = level;
              goto level_end;
            }
          }
        }
      }
    }
  level_end:
    if (stopped || !level_done) break;
    res.levels_completed = level;
  }
  res.exhausted = !stopped && res.levels_completed == 2 * bound;
  return res;
}

}  // namespace detail

inline SpanResult spanning_membership_detail(const AlgebraElement& a,
                                             const std::vector<AlgebraElement>& generators,
                                             SpanOptions opt = {}) {
  std::size_t longest = 0;
  for (const auto& [m, c] : a.terms()) longest = std::max(longest, m.total_length());
  if (a.is_zero()) {
    SpanResult res;
    res.length_bound = detail::span_length_bound(*a.graph(), a.field(), generators, 0, opt);
    res.member = true;
    res.exhausted = true;
    res.levels_completed = 0;
    return res;
  }
  SpanBasis basis(a.graph(), a.field());
  AlgebraElement residual = a;
  SpanResult res = detail::enumerate_span_products(
      a.graph(), a.field(), generators, longest, opt, [&](const AlgebraElement& prod) {
        auto pivot = basis.insert(prod);
        if (pivot && residual.terms().count(*pivot)) {
          residual = basis.reduce(residual);
          if (residual.is_zero()) return true;
        }
        return false;
      });
  res.member = residual.is_zero();
  return res;
}

// Reusable form of the same oracle: the product basis for one generator set
// is built once up front, after which any number of probes are answered by
// exact reduction. A probe reducing to zero is a proven member; a nonzero
// reduction means "not found within the enumerated part" and is definitive
// only when exhausted() reports the enumeration completed.
class SpanOracle {
 public:
  SpanOracle(GraphPtr g, const FieldDescriptor& f,
             const std::vector<AlgebraElement>& generators, SpanOptions opt = {})
      : graph_(std::move(g)), field_(f), basis_(graph_, f) {
    info_ = detail::enumerate_span_products(graph_, field_, generators, 0, opt,
                                            [&](const AlgebraElement& prod) {
                                              basis_.insert(prod);
                                              return false;
                                            });
  }

  bool contains(const AlgebraElement& a) const {
    if (!(a.field() == field_) || !(*a.graph() == *graph_))
      throw ValidationError("oracle probe from a different graph or field");
    return basis_.reduce(a).is_zero();
  }

  bool exhausted() const { return info_.exhausted; }
  const SpanResult& build_info() const { return info_; }
  std::size_t rank() const { return basis_.rank(); }

 private:
  GraphPtr graph_;
  FieldDescriptor field_;
  SpanBasis basis_;
  SpanResult info_;
};

inline bool spanning_membership(const AlgebraElement& a,
                                const std::vector<AlgebraElement>& generators,
                                long long length_bound = -1) {
  SpanOptions opt;
  opt.length_bound = length_bound;
  return spanning_membership_detail(a, generators, opt).member;
}

}  // namespace lpa

#endif
