#ifndef LPA_FIELD_HPP
#define LPA_FIELD_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

#include "lpa/errors.hpp"

namespace lpa {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class FieldKind { Rationals, Prime };

struct FieldDescriptor {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t p = 0;

  static FieldDescriptor rationals() { return {FieldKind::Rationals, 0}; }

  static FieldDescriptor prime(std::uint64_t p) {
    if (p < 2 || p >= (std::uint64_t{1} << 32))
      throw ValidationError("field characteristic out of range: " + std::to_string(p));
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0)
        throw ValidationError("field characteristic is not prime: " + std::to_string(p));
    return {FieldKind::Prime, p};
  }

  // Accepts "q" for the rationals and "fp:<p>" for a prime field.
  static FieldDescriptor parse(std::string_view text) {
    if (text == "q") return rationals();
    if (text.substr(0, 3) == "fp:") {
      std::uint64_t p = 0;
      for (char c : text.substr(3)) {
        if (c < '0' || c > '9') throw ValidationError("bad field spec: " + std::string(text));
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
        if (p >= (std::uint64_t{1} << 32))
          throw ValidationError("field characteristic out of range");
      }
      if (text.size() == 3) throw ValidationError("bad field spec: " + std::string(text));
      return prime(p);
    }
    throw ValidationError("bad field spec: " + std::string(text));
  }

  bool operator==(const FieldDescriptor&) const = default;

  std::string str() const {
    return kind == FieldKind::Rationals ? "q" : "fp:" + std::to_string(p);
  }
};

// Exact scalar in Q or F_p.  Mixed-field operations throw.
class Scalar {
 public:
  Scalar() : field_(FieldDescriptor::rationals()) {}

  static Scalar zero(const FieldDescriptor& f) { return Scalar(f); }

  static Scalar one(const FieldDescriptor& f) { return from_integer(f, 1); }

  static Scalar from_integer(const FieldDescriptor& f, const BigInt& n) {
    Scalar s(f);
    if (f.kind == FieldKind::Rationals) {
      s.q_ = n;
    } else {
      s.r_ = reduce(n, f.p);
    }
    return s;
  }

  // num/den in the field; throws ValidationError when den maps to zero.
  static Scalar fraction(const FieldDescriptor& f, const BigInt& num, const BigInt& den) {
    Scalar s(f);
    if (f.kind == FieldKind::Rationals) {
      if (den == 0) throw ValidationError("division by zero in coefficient");
      s.q_ = BigRational(num, den);
    } else {
      std::uint64_t d = reduce(den, f.p);
      if (d == 0) throw ValidationError("division by zero in coefficient");
      s.r_ = mulmod(reduce(num, f.p), invmod(d, f.p), f.p);
    }
    return s;
  }

  const FieldDescriptor& field() const { return field_; }
  bool is_zero() const {
    return field_.kind == FieldKind::Rationals ? q_.is_zero() : r_ == 0;
  }
  bool is_one() const { return *this == one(field_); }

  Scalar operator-() const {
    Scalar s(field_);
    if (field_.kind == FieldKind::Rationals)
      s.q_ = -q_;
    else
      s.r_ = r_ == 0 ? 0 : field_.p - r_;
    return s;
  }

  Scalar operator+(const Scalar& o) const {
    check_field(o);
    Scalar s(field_);
    if (field_.kind == FieldKind::Rationals) {
      s.q_ = q_ + o.q_;
    } else {
      s.r_ = r_ + o.r_;
      if (s.r_ >= field_.p) s.r_ -= field_.p;
    }
    return s;
  }

  Scalar operator-(const Scalar& o) const { return *this + (-o); }

  Scalar operator*(const Scalar& o) const {
    check_field(o);
    Scalar s(field_);
    if (field_.kind == FieldKind::Rationals)
      s.q_ = q_ * o.q_;
    else
      s.r_ = mulmod(r_, o.r_, field_.p);
    return s;
  }

  Scalar inverse() const {
    if (is_zero()) throw ValidationError("division by zero in coefficient");
    Scalar s(field_);
    if (field_.kind == FieldKind::Rationals)
      s.q_ = 1 / q_;
    else
      s.r_ = invmod(r_, field_.p);
    return s;
  }

  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

  Scalar pow(long long n) const {
    Scalar base = n < 0 ? inverse() : *this;
    unsigned long long e = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1
                                 : static_cast<unsigned long long>(n);
    Scalar acc = one(field_);
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  bool operator==(const Scalar& o) const {
    check_field(o);
    return field_.kind == FieldKind::Rationals ? q_ == o.q_ : r_ == o.r_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const {
    return field_.kind == FieldKind::Rationals ? q_.str() : std::to_string(r_);
  }

 private:
  explicit Scalar(const FieldDescriptor& f) : field_(f) {}

  void check_field(const Scalar& o) const {
    if (!(field_ == o.field_)) throw ValidationError("scalars from different fields");
  }

  static std::uint64_t reduce(const BigInt& n, std::uint64_t p) {
    BigInt m = n % BigInt(p);
    if (m < 0) m += BigInt(p);
    return m.convert_to<std::uint64_t>();
  }

  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  }

  static std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = mulmod(result, base, p);
      base = mulmod(base, base, p);
      e >>= 1;
    }
    return result;
  }

  FieldDescriptor field_;
  BigRational q_;
  std::uint64_t r_ = 0;
};

}  // namespace lpa

#endif
