#ifndef LPA_LAURENT_HPP
#define LPA_LAURENT_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/field.hpp"

namespace lpa {

// Element of K[x,x^-1]: finite map from exponent to nonzero coefficient.
class LaurentPoly {
 public:
  explicit LaurentPoly(const FieldDescriptor& f) : field_(f) {}

  static LaurentPoly zero(const FieldDescriptor& f) { return LaurentPoly(f); }

  static LaurentPoly one(const FieldDescriptor& f) {
    return monomial(f, Scalar::one(f), 0);
  }

  static LaurentPoly monomial(const FieldDescriptor& f, const Scalar& c, long long exp) {
    LaurentPoly p(f);
    p.add_term(exp, c);
    return p;
  }

  const FieldDescriptor& field() const { return field_; }
  const std::map<long long, Scalar>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  bool is_unit() const { return c_.size() == 1; }

  long long lowest_exponent() const {
    require_nonzero();
    return c_.begin()->first;
  }

  long long highest_exponent() const {
    require_nonzero();
    return c_.rbegin()->first;
  }

  // Degree of the associated ordinary polynomial with nonzero constant term.
  long long degree_span() const { return highest_exponent() - lowest_exponent(); }

  void add_term(long long exp, const Scalar& c) {
    if (!(c.field() == field_)) throw ValidationError("coefficient field mismatch");
    if (c.is_zero()) return;
    auto it = c_.find(exp);
    if (it == c_.end()) {
      c_.emplace(exp, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  LaurentPoly operator-() const {
    LaurentPoly r(field_);
    for (const auto& [e, c] : c_) r.c_.emplace(e, -c);
    return r;
  }

  LaurentPoly operator+(const LaurentPoly& o) const {
    check_field(o);
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.c_) r.add_term(e, c);
    return r;
  }

  LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }

  LaurentPoly operator*(const LaurentPoly& o) const {
    check_field(o);
    LaurentPoly r(field_);
    for (const auto& [e1, c1] : c_)
      for (const auto& [e2, c2] : o.c_) r.add_term(e1 + e2, c1 * c2);
    return r;
  }

  LaurentPoly scaled(const Scalar& s) const {
    LaurentPoly r(field_);
    for (const auto& [e, c] : c_) r.add_term(e, c * s);
    return r;
  }

  bool operator==(const LaurentPoly& o) const {
    return field_ == o.field_ && c_ == o.c_;
  }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  // Unit-class representative: shift to nonzero constant term, make the
  // leading (highest-degree) coefficient 1.
  LaurentPoly canonical_generator() const {
    require_nonzero();
    long long shift = lowest_exponent();
    Scalar lead = c_.rbegin()->second;
    LaurentPoly r(field_);
    Scalar inv = lead.inverse();
    for (const auto& [e, c] : c_) r.c_.emplace(e - shift, c * inv);
    return r;
  }

  // Irreducibility in K[x,x^-1] (equivalently: of the shifted ordinary
  // polynomial with nonzero constant term).  Exhaustive over prime fields;
  // over the rationals decided for degree_span <= 3 only.
  bool is_irreducible() const {
    if (is_zero() || is_unit())
      throw ValidationError("irreducibility is undefined for zero and units");
    LaurentPoly g = canonical_generator();
    long long d = g.degree_span();
    if (d == 1) return true;
    if (field_.kind == FieldKind::Prime) return prime_field_irreducible(g);
    if (d > 3)
      throw UnsupportedError("rational irreducibility is decided only up to degree 3");
    return !has_rational_root(g);
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      Scalar c = it->second;
      if (first) {
        if (field_.kind == FieldKind::Rationals && c.str()[0] == '-') {
          out += "-";
          c = -c;
        }
      } else if (field_.kind == FieldKind::Rationals && c.str()[0] == '-') {
        out += " - ";
        c = -c;
      } else {
        out += " + ";
      }
      out += term_str(c, it->first);
      first = false;
    }
    return out;
  }

  // Syntax: poly := ['-'] term (('+'|'-') term)*
  //         term := coeff ['*' xpart] | xpart
  //         xpart := 'x' ['^' ['-'] integer]
  //         coeff := integer ['/' integer]
  static LaurentPoly parse(const FieldDescriptor& f, std::string_view text) {
    PolyParser p{text, 0};
    LaurentPoly result(f);
    bool negative = p.consume('-');
    for (;;) {
      auto [coeff_num, coeff_den, exp] = p.parse_term();
      Scalar c = Scalar::fraction(f, coeff_num, coeff_den);
      result.add_term(exp, negative ? -c : c);
      p.skip_ws();
      if (p.at_end()) break;
      if (p.consume('+'))
        negative = false;
      else if (p.consume('-'))
        negative = true;
      else
        throw ParseError("expected '+' or '-' in polynomial at position " +
                         std::to_string(p.pos));
    }
    return result;
  }

 private:
  void require_nonzero() const {
    if (c_.empty()) throw ValidationError("zero polynomial has no generator data");
  }

  void check_field(const LaurentPoly& o) const {
    if (!(field_ == o.field_)) throw ValidationError("polynomials from different fields");
  }

  std::string term_str(const Scalar& c, long long e) const {
    std::string x;
    if (e == 1)
      x = "x";
    else if (e != 0)
      x = "x^" + std::to_string(e);
    if (e == 0) return c.str();
    if (c.is_one()) return x;
    return c.str() + "*" + x;
  }

  // --- prime-field branch: trial division by all lower-degree candidates ---

  // g: canonical, degree d >= 2.  Dense coefficient vector of g, ascending.
  static std::vector<std::uint64_t> dense_coeffs(const LaurentPoly& g) {
    long long d = g.degree_span();
    std::vector<std::uint64_t> a(static_cast<std::size_t>(d) + 1, 0);
    for (const auto& [e, c] : g.c_) {
      std::uint64_t v = 0;
      for (char ch : c.str()) v = v * 10 + static_cast<std::uint64_t>(ch - '0');
      a[static_cast<std::size_t>(e)] = v;
    }
    return a;
  }

  bool prime_field_irreducible(const LaurentPoly& g) const {
    const std::uint64_t p = field_.p;
    long long d = g.degree_span();
    double cand = 1;
    for (long long k = 0; k < d / 2; ++k) cand *= static_cast<double>(p);
    if (cand > 2e6)
      throw ResourceError("finite-field irreducibility search space too large");
    std::vector<std::uint64_t> a = dense_coeffs(g);
    for (long long k = 1; k <= d / 2; ++k) {
      // monic divisor candidates h of degree k with nonzero constant term
      std::vector<std::uint64_t> h(static_cast<std::size_t>(k) + 1, 0);
      h[static_cast<std::size_t>(k)] = 1;
      h[0] = 1;
      for (;;) {
        if (divides(h, a, p)) return false;
        // odometer over h[0] in [1,p), h[1..k-1] in [0,p)
        std::size_t i = 0;
        for (;;) {
          if (i == static_cast<std::size_t>(k)) goto next_degree;
          ++h[i];
          if (h[i] < p) break;
          h[i] = i == 0 ? 1 : 0;
          ++i;
        }
      }
    next_degree:;
    }
    return true;
  }

  static bool divides(const std::vector<std::uint64_t>& h,
                      const std::vector<std::uint64_t>& a, std::uint64_t p) {
    std::vector<std::uint64_t> r = a;
    std::size_t dh = h.size() - 1;
    while (r.size() > dh && !(r.size() == 1 && r[0] == 0)) {
      std::uint64_t lead = r.back();
      if (lead != 0) {
        std::size_t off = r.size() - 1 - dh;
        for (std::size_t i = 0; i <= dh; ++i) {
          std::uint64_t sub = static_cast<std::uint64_t>(
              static_cast<unsigned __int128>(lead) * h[i] % p);
          r[off + i] = (r[off + i] + p - sub) % p;
        }
      }
      r.pop_back();
    }
    for (std::uint64_t c : r)
      if (c != 0) return false;
    return true;
  }

  // --- rational branch: root search on the denominator-cleared polynomial ---

  static bool has_rational_root(const LaurentPoly& g) {
    long long d = g.degree_span();
    std::vector<BigRational> a(static_cast<std::size_t>(d) + 1);
    for (const auto& [e, c] : g.c_) a[static_cast<std::size_t>(e)] = parse_rational(c.str());
    BigInt lcm = 1;
    for (const auto& q : a) lcm = boost::multiprecision::lcm(lcm, denominator(q));
    std::vector<BigInt> b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      b[i] = numerator(a[i]) * (lcm / denominator(a[i]));
    for (const BigInt& num : divisors_of(b[0]))
      for (const BigInt& den : divisors_of(b.back()))
        for (int sign = -1; sign <= 1; sign += 2) {
          BigRational root(num * sign, den);
          BigRational value = 0;
          for (std::size_t i = b.size(); i-- > 0;) value = value * root + BigRational(b[i]);
          if (value == 0) return true;
        }
    return false;
  }

  static BigRational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return BigRational(BigInt(s));
    return BigRational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  }

  static std::vector<BigInt> divisors_of(const BigInt& n0) {
    BigInt n = boost::multiprecision::abs(n0);
    if (n == 0) throw ValidationError("divisor enumeration of zero");
    std::vector<std::pair<BigInt, int>> factors;
    BigInt m = n;
    for (BigInt d = 2; d * d <= m; ++d) {
      if (d > 1000000)
        throw ResourceError("rational-root search: coefficient too large to factor");
      int mult = 0;
      while (m % d == 0) {
        m /= d;
        ++mult;
      }
      if (mult) factors.emplace_back(d, mult);
    }
    if (m > 1) factors.emplace_back(m, 1);
    std::vector<BigInt> divs{1};
    for (const auto& [prime, mult] : factors) {
      std::size_t base = divs.size();
      BigInt pk = 1;
      for (int k = 1; k <= mult; ++k) {
        pk *= prime;
        for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
      }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
  }

  struct PolyParser {
    std::string_view text;
    std::size_t pos;

    void skip_ws() {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool at_end() {
      skip_ws();
      return pos >= text.size();
    }
    bool consume(char c) {
      skip_ws();
      if (pos < text.size() && text[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    BigInt parse_integer() {
      skip_ws();
      std::string digits;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        digits.push_back(text[pos++]);
      if (digits.empty())
        throw ParseError("expected integer in polynomial at position " + std::to_string(pos));
      return BigInt(digits);
    }
    // returns (numerator, denominator, exponent)
    std::tuple<BigInt, BigInt, long long> parse_term() {
      skip_ws();
      if (pos < text.size() && text[pos] == 'x') return {1, 1, parse_xpart()};
      BigInt num = parse_integer();
      BigInt den = 1;
      if (consume('/')) den = parse_integer();
      if (consume('*')) return {num, den, parse_xpart()};
      return {num, den, 0};
    }
    long long parse_xpart() {
      skip_ws();
      if (pos >= text.size() || text[pos] != 'x')
        throw ParseError("expected 'x' in polynomial at position " + std::to_string(pos));
      ++pos;
      if (!consume('^')) return 1;
      bool neg = consume('-');
      BigInt e = parse_integer();
      if (e > 1000000) throw ResourceError("polynomial exponent too large");
      long long v = e.convert_to<long long>();
      return neg ? -v : v;
    }
  };

  FieldDescriptor field_;
  std::map<long long, Scalar> c_;
};

// All canonical irreducible generators over a prime field with degree span in
// [1, max_degree], ordered by (degree, ascending coefficient vector).
inline std::vector<LaurentPoly> enumerate_canonical_irreducibles(
    const FieldDescriptor& field, long long max_degree) {
  if (field.kind != FieldKind::Prime)
    throw UnsupportedError("irreducible enumeration requires a prime field");
  const std::uint64_t p = field.p;
  std::vector<LaurentPoly> out;
  for (long long d = 1; d <= max_degree; ++d) {
    double cand = static_cast<double>(p - 1);
    for (long long k = 1; k < d; ++k) cand *= static_cast<double>(p);
    if (cand > 2e6) throw ResourceError("irreducible enumeration space too large");
    std::vector<std::uint64_t> a(static_cast<std::size_t>(d), 0);
    a[0] = 1;
    for (;;) {
      LaurentPoly f(field);
      f.add_term(d, Scalar::one(field));
      for (std::size_t i = 0; i < a.size(); ++i)
        f.add_term(static_cast<long long>(i), Scalar::from_integer(field, a[i]));
      if (f.is_irreducible()) out.push_back(f);
      std::size_t i = a.size();
      for (;;) {
        if (i == 0) goto next_degree;
        --i;
        ++a[i];
        if (a[i] < p) break;
        a[i] = i == 0 ? 1 : 0;
        if (i == 0) goto next_degree;
      }
    }
  next_degree:;
  }
  return out;
}

// Bezout witness: u*f + v*g = 1 with both cofactor degrees bounded by
// 2*(degree_span(f) + degree_span(g)).  Empty when the canonical generators
// share a common factor (e.g. f ~ g).
inline std::optional<std::pair<LaurentPoly, LaurentPoly>> bezout_one(
    const LaurentPoly& f, const LaurentPoly& g) {
  if (!(f.field() == g.field())) throw ValidationError("polynomials from different fields");
  const FieldDescriptor field = f.field();
  LaurentPoly F = f.canonical_generator();
  LaurentPoly G = g.canonical_generator();
  long long m = F.degree_span(), k = G.degree_span();
  long long bound = 2 * (m + k);
  long long nu = bound + 1, nv = bound + 1;
  long long ncols = nu + nv;
  long long nrows = bound + std::max(m, k) + 1;
  Scalar z = Scalar::zero(field);
  std::vector<std::vector<Scalar>> mat(static_cast<std::size_t>(nrows),
                                       std::vector<Scalar>(static_cast<std::size_t>(ncols), z));
  std::vector<Scalar> rhs(static_cast<std::size_t>(nrows), z);
  rhs[0] = Scalar::one(field);
  for (long long j = 0; j < nu; ++j)
    for (const auto& [e, c] : F.terms()) mat[static_cast<std::size_t>(j + e)][static_cast<std::size_t>(j)] = c;
  for (long long j = 0; j < nv; ++j)
    for (const auto& [e, c] : G.terms())
      mat[static_cast<std::size_t>(j + e)][static_cast<std::size_t>(nu + j)] = c;
  // Gaussian elimination, first nonzero pivot per column.
  std::vector<long long> pivot_row(static_cast<std::size_t>(ncols), -1);
  long long row = 0;
  for (long long col = 0; col < ncols && row < nrows; ++col) {
    long long sel = -1;
    for (long long r = row; r < nrows; ++r)
      if (!mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(mat[static_cast<std::size_t>(sel)], mat[static_cast<std::size_t>(row)]);
    std::swap(rhs[static_cast<std::size_t>(sel)], rhs[static_cast<std::size_t>(row)]);
    Scalar inv = mat[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)].inverse();
    for (long long c2 = col; c2 < ncols; ++c2)
      mat[static_cast<std::size_t>(row)][static_cast<std::size_t>(c2)] =
          mat[static_cast<std::size_t>(row)][static_cast<std::size_t>(c2)] * inv;
    rhs[static_cast<std::size_t>(row)] = rhs[static_cast<std::size_t>(row)] * inv;
    for (long long r = 0; r < nrows; ++r) {
      if (r == row) continue;
      Scalar factor = mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (factor.is_zero()) continue;
      for (long long c2 = col; c2 < ncols; ++c2)
        mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c2)] =
            mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c2)] -
            factor * mat[static_cast<std::size_t>(row)][static_cast<std::size_t>(c2)];
      rhs[static_cast<std::size_t>(r)] = rhs[static_cast<std::size_t>(r)] - factor * rhs[static_cast<std::size_t>(row)];
    }
    pivot_row[static_cast<std::size_t>(col)] = row;
    ++row;
  }
  for (long long r = row; r < nrows; ++r)
    if (!rhs[static_cast<std::size_t>(r)].is_zero()) return std::nullopt;
  std::vector<Scalar> sol(static_cast<std::size_t>(ncols), z);
  for (long long col = 0; col < ncols; ++col)
    if (pivot_row[static_cast<std::size_t>(col)] >= 0)
      sol[static_cast<std::size_t>(col)] = rhs[static_cast<std::size_t>(pivot_row[static_cast<std::size_t>(col)])];
  LaurentPoly u(field), v(field);
  for (long long j = 0; j < nu; ++j) u.add_term(j, sol[static_cast<std::size_t>(j)]);
  for (long long j = 0; j < nv; ++j) v.add_term(j, sol[static_cast<std::size_t>(nu + j)]);
  return std::make_pair(u, v);
}

}  // namespace lpa

#endif
