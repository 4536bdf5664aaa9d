#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

// Field contexts for exact linear algebra.  Elements are plain values; the
// container (or caller) owns the field object and routes arithmetic through it.
// Every operation is exact; there is no floating point anywhere downstream.

namespace persext {

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Prime field GF(p).  Elements are canonical residues in [0, p).
// p is limited to 31 bits so products fit in __int128 without care.
struct GF {
  using Elem = std::int64_t;

  std::int64_t p;

  explicit GF(std::int64_t prime) : p(prime) {
    if (prime < 2 || prime > (std::int64_t(1) << 31))
      throw FieldError("field characteristic out of range: " + std::to_string(prime));
    for (std::int64_t d = 2; d * d <= prime; ++d)
      if (prime % d == 0)
        throw FieldError("field characteristic must be prime: " + std::to_string(prime));
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem from_int(std::int64_t n) const {
    Elem r = n % p;
    return r < 0 ? r + p : r;
  }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p ? s - p : s;
  }
  Elem sub(Elem a, Elem b) const {
    Elem s = a - b;
    return s < 0 ? s + p : s;
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<__int128>(a) * b % p);
  }

  Elem inv(Elem a) const {
    if (a == 0) throw FieldError("division by zero in GF(" + std::to_string(p) + ")");
    // extended Euclid; invariant t1*a == r1 (mod p)
    std::int64_t r0 = p, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::int64_t r2 = r0 - q * r1;
      std::int64_t t2 = t0 - q * t1;
      r0 = r1; r1 = r2;
      t0 = t1; t1 = t2;
    }
    return t0 < 0 ? t0 + p : t0;
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  // Canonical residue, used in structured output.
  std::string to_string(Elem a) const { return std::to_string(a); }

  // Balanced representative, used when printing coefficients in reports so
  // that p-1 reads as -1.
  std::string to_display_string(Elem a) const {
    return std::to_string(a > p / 2 ? a - p : a);
  }

  // Accepts "n" or "n/m" (n, m integers); the quotient is taken in GF(p).
  Elem parse(const std::string& s) const {
    std::size_t slash = s.find('/');
    if (slash == std::string::npos) return from_int(parse_int(s));
    Elem num = from_int(parse_int(s.substr(0, slash)));
    Elem den = from_int(parse_int(s.substr(slash + 1)));
    return div(num, den);
  }

  std::string name() const { return "GF(" + std::to_string(p) + ")"; }
  std::string spec_string() const { return "p:" + std::to_string(p); }

 private:
  static std::int64_t parse_int(const std::string& s) {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw FieldError("bad scalar literal: " + s);
    return v;
  }
};

// Exact rationals with arbitrary-precision integer parts.
// boost keeps values normalized (lowest terms, positive denominator).
struct Rationals {
  using Elem = boost::multiprecision::cpp_rational;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t n) const { return n; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw FieldError("division by zero in Q");
    return Elem(1) / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  std::string to_string(const Elem& a) const { return a.str(); }
  std::string to_display_string(const Elem& a) const { return a.str(); }

  Elem parse(const std::string& s) const {
    try {
      Elem v(s);
      return v;
    } catch (const std::exception&) {
      throw FieldError("bad scalar literal: " + s);
    }
  }

  std::string name() const { return "Q"; }
  std::string spec_string() const { return "q"; }
};

// Runtime field selector, parsed from "p:<prime>" or "q".
struct FieldSpec {
  bool rational = false;
  std::int64_t p = 32003;

  static FieldSpec parse(const std::string& s) {
    FieldSpec spec;
    if (s == "q" || s == "Q") {
      spec.rational = true;
      return spec;
    }
    if (s.rfind("p:", 0) == 0) {
      spec.rational = false;
      try {
        std::size_t pos = 0;
        spec.p = std::stoll(s.substr(2), &pos);
        if (pos != s.size() - 2) throw std::invalid_argument(s);
      } catch (const std::exception&) {
        throw FieldError("bad field spec: " + s);
      }
      GF check(spec.p);  // validates primality and range
      return spec;
    }
    throw FieldError("bad field spec: " + s + " (expected p:<prime> or q)");
  }

  std::string to_string() const { return rational ? "q" : "p:" + std::to_string(p); }
};

// Runs fn with the concrete field named by spec; fn must be callable with
// both GF and Rationals and return the same type for each.
template <class Fn>
auto with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.rational) return fn(Rationals{});
  return fn(GF(spec.p));
}

}  // namespace persext
