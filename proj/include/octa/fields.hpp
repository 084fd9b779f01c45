#pragma once

// Exact arithmetic over Q, prime fields F_p, extension fields F_{p^k} and
// simple number fields Q[t]/(m).
//
// Fields are interned: Field::make() returns the same handle for equal specs
// and the underlying data lives for the rest of the process. Elements are
// two-word values (field pointer + code) and are cheap to copy. For finite
// fields the code is the canonical representative itself; for Q and number
// fields it indexes a hash-consed pool of reduced coefficient vectors, so
// equal elements always carry equal codes.

#include <compare>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "octa/error.hpp"

namespace octa {

using Rational = mpq_class;

struct FieldSpec {
  enum class Kind { rational, prime, finite, number_field };

  Kind kind = Kind::rational;
  std::uint64_t p = 0;
  unsigned k = 1;
  /// finite: c0..ck with ck = 1 (may be empty to request the default modulus)
  std::vector<std::uint64_t> modulus;
  /// number_field: monic c0..ck over Q
  std::vector<Rational> nf_modulus;

  static FieldSpec rational() { return {}; }
  static FieldSpec prime(std::uint64_t p);
  static FieldSpec finite(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus = {});
  static FieldSpec number_field(std::vector<Rational> modulus);

  /// Grammar: "Q" | "Fp:<p>" | "Fq:<p>:<k>:<c0,...,ck>" | "Fq:<p>:<k>" | "NF:<c0,...,ck>"
  static FieldSpec parse(std::string_view text);
  std::string to_string() const;
};

class Field;
class Elem;

namespace detail {

struct FieldData {
  FieldSpec spec;
  bool finite = false;
  std::uint64_t p = 0;  // characteristic (0 for Q / number fields)
  unsigned k = 1;       // degree over the prime field
  std::uint64_t q = 0;  // cardinality (0 when infinite)
  std::vector<std::uint64_t> modulus;  // finite extension modulus, c0..ck
  std::vector<std::uint64_t> pow_p;    // p^i for i <= k

  // discrete-log tables (finite fields with q <= kTableLimit)
  bool tables = false;
  std::vector<std::uint32_t> exp;   // exp[i] = g^i, size q-1
  std::vector<std::uint32_t> log;   // log[x], x != 0
  std::vector<std::int32_t> zech;   // log(1 + g^i) or -1 when 1 + g^i = 0
  std::uint64_t generator = 0;
  std::vector<std::uint64_t> order_factors;  // distinct primes dividing q-1

  // Q / number field pool
  std::vector<Rational> nf_modulus;  // monic, c0..cd
  unsigned nf_degree = 1;
  mutable std::mutex pool_mutex;
  mutable std::deque<std::vector<Rational>> pool;
  mutable std::unordered_map<std::string, std::uint64_t> pool_index;

  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;
};

std::uint64_t slow_add(const FieldData& f, std::uint64_t a, std::uint64_t b);
std::uint64_t slow_neg(const FieldData& f, std::uint64_t a);
std::uint64_t slow_mul(const FieldData& f, std::uint64_t a, std::uint64_t b);
std::uint64_t slow_inv(const FieldData& f, std::uint64_t a);
std::uint64_t prime_inv(std::uint64_t a, std::uint64_t p);

std::uint64_t rat_add(const FieldData& f, std::uint64_t a, std::uint64_t b);
std::uint64_t rat_neg(const FieldData& f, std::uint64_t a);
std::uint64_t rat_mul(const FieldData& f, std::uint64_t a, std::uint64_t b);
std::uint64_t rat_inv(const FieldData& f, std::uint64_t a);
std::uint64_t intern(const FieldData& f, std::vector<Rational> coeffs);
std::vector<Rational> pooled(const FieldData& f, std::uint64_t code);

}  // namespace detail

/// Field element. Default-constructed elements are invalid placeholders.
class Elem {
 public:
  Elem() = default;
  Elem(const detail::FieldData* f, std::uint64_t code) : f_(f), v_(code) {}

  Field field() const;
  const detail::FieldData* data() const { return f_; }
  std::uint64_t code() const { return v_; }
  bool valid() const { return f_ != nullptr; }

  // Codes 0 and 1 are zero and one in every field.
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Elem operator+(const Elem& o) const;
  Elem operator-(const Elem& o) const { return *this + (-o); }
  Elem operator-() const;
  Elem operator*(const Elem& o) const;
  Elem operator/(const Elem& o) const { return *this * o.inv(); }
  Elem& operator+=(const Elem& o) { return *this = *this + o; }
  Elem& operator-=(const Elem& o) { return *this = *this - o; }
  Elem& operator*=(const Elem& o) { return *this = *this * o; }
  Elem& operator/=(const Elem& o) { return *this = *this / o; }

  /// Throws Error(division_by_zero) on zero.
  Elem inv() const;
  Elem pow(std::int64_t e) const;

  bool operator==(const Elem& o) const;
  bool operator!=(const Elem& o) const { return !(*this == o); }

  /// Canonical representation: the residue digits c0..c_{k-1} for finite
  /// fields, reduced rational coefficients for Q and number fields.
  std::vector<Rational> coeffs() const;
  /// Element literal: integer, "num/den", or "[c0,...,c_{k-1}]".
  std::string to_string() const;

 private:
  void check_same(const Elem& o) const;

  const detail::FieldData* f_ = nullptr;
  std::uint64_t v_ = 0;
};

/// Total order used for deterministic choices (smallest root of unity etc.):
/// numeric order for Q and prime fields, lexicographic on (c0, c1, ...) otherwise.
bool canonical_less(const Elem& a, const Elem& b);

class Field {
 public:
  Field() = default;
  explicit Field(const detail::FieldData* d) : d_(d) {}

  /// Throws Error(not_prime) / Error(reducible_modulus).
  static Field make(const FieldSpec& spec);
  static Field rationals() { return make(FieldSpec::rational()); }
  static Field prime(std::uint64_t p) { return make(FieldSpec::prime(p)); }
  static Field finite(std::uint64_t p, unsigned k) { return make(FieldSpec::finite(p, k)); }
  static Field parse(std::string_view spec) { return make(FieldSpec::parse(spec)); }

  const FieldSpec& spec() const { return d_->spec; }
  const detail::FieldData* data() const { return d_; }
  bool valid() const { return d_ != nullptr; }

  bool is_finite() const { return d_->finite; }
  std::uint64_t characteristic() const { return d_->p; }
  /// Number of elements, empty for infinite fields.
  std::optional<std::uint64_t> cardinality() const;
  /// Degree over the prime field (finite) or over Q (number field).
  unsigned degree() const { return d_->finite ? d_->k : d_->nf_degree; }

  Elem zero() const { return Elem(d_, 0); }
  Elem one() const { return Elem(d_, 1); }
  Elem from_int(std::int64_t n) const;
  Elem from_rational(const Rational& r) const;
  /// Element with the given coordinates in the power basis 1, t, t^2, ...
  Elem from_coeffs(const std::vector<Rational>& c) const;
  Elem from_coeffs(const std::vector<std::int64_t>& c) const;
  /// Parses an element literal.
  Elem parse_elem(std::string_view literal) const;
  /// The class of t (the adjoined root) for extensions; t itself otherwise throws.
  Elem gen() const;
  /// Finite fields: element with integer code in [0, q).
  Elem element_at(std::uint64_t code) const;
  /// Finite fields: all q elements in code order (q must be small).
  std::vector<Elem> elements() const;
  /// Finite fields: a generator of the multiplicative group.
  Elem primitive_element() const;

  /// Element of exact multiplicative order n, smallest under canonical_less.
  /// Throws Error(no_such_root).
  Elem root_of_unity(unsigned n) const;
  bool has_root_of_unity(unsigned n) const;
  /// All y with y^n = x, sorted by canonical_less.
  std::vector<Elem> nth_roots(const Elem& x, unsigned n) const;

  bool operator==(const Field& o) const { return d_ == o.d_; }
  bool operator!=(const Field& o) const { return d_ != o.d_; }

 private:
  const detail::FieldData* d_ = nullptr;
};

// ---------------------------------------------------------------------------
// inline fast paths

inline Field Elem::field() const { return Field(f_); }

inline void Elem::check_same(const Elem& o) const {
  if (f_ != o.f_) throw Error(ErrorCode::spec_mismatch, "operands live in different fields");
}

inline Elem Elem::operator+(const Elem& o) const {
  check_same(o);
  const auto& f = *f_;
  if (f.finite) {
    if (f.k == 1) {
      std::uint64_t s = v_ + o.v_;
      return Elem(f_, s >= f.p ? s - f.p : s);
    }
    if (f.tables) {
      if (v_ == 0) return o;
      if (o.v_ == 0) return *this;
      const std::uint64_t n = f.q - 1;
      std::uint64_t la = f.log[v_], lb = f.log[o.v_];
      std::uint64_t d = lb >= la ? lb - la : lb + n - la;
      std::int32_t z = f.zech[d];
      if (z < 0) return Elem(f_, 0);
      std::uint64_t e = la + static_cast<std::uint64_t>(z);
      return Elem(f_, f.exp[e >= n ? e - n : e]);
    }
    return Elem(f_, detail::slow_add(f, v_, o.v_));
  }
  return Elem(f_, detail::rat_add(f, v_, o.v_));
}

inline Elem Elem::operator-() const {
  const auto& f = *f_;
  if (f.finite) {
    if (v_ == 0) return *this;
    if (f.k == 1) return Elem(f_, f.p - v_);
    if (f.p == 2) return *this;
    return Elem(f_, detail::slow_neg(f, v_));
  }
  return Elem(f_, detail::rat_neg(f, v_));
}

inline Elem Elem::operator*(const Elem& o) const {
  check_same(o);
  const auto& f = *f_;
  if (f.finite) {
    if (v_ == 0 || o.v_ == 0) return Elem(f_, 0);
    if (f.k == 1) {
      return Elem(f_, static_cast<std::uint64_t>(
                          (static_cast<unsigned __int128>(v_) * o.v_) % f.p));
    }
    if (f.tables) {
      const std::uint64_t n = f.q - 1;
      std::uint64_t e = std::uint64_t{f.log[v_]} + f.log[o.v_];
      return Elem(f_, f.exp[e >= n ? e - n : e]);
    }
    return Elem(f_, detail::slow_mul(f, v_, o.v_));
  }
  return Elem(f_, detail::rat_mul(f, v_, o.v_));
}

inline Elem Elem::inv() const {
  if (v_ == 0) throw Error(ErrorCode::division_by_zero, "inverse of zero");
  const auto& f = *f_;
  if (f.finite) {
    if (f.tables) {
      const std::uint64_t n = f.q - 1;
      std::uint64_t l = f.log[v_];
      return Elem(f_, f.exp[l == 0 ? 0 : n - l]);
    }
    if (f.k == 1) return Elem(f_, detail::prime_inv(v_, f.p));
    return Elem(f_, detail::slow_inv(f, v_));
  }
  return Elem(f_, detail::rat_inv(f, v_));
}

inline bool Elem::operator==(const Elem& o) const {
  check_same(o);
  return v_ == o.v_;
}

/// Dense univariate polynomial over a field, lowest degree first, trailing
/// zeros stripped (the zero polynomial has no coefficients).
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(Field f) : field_(f) {}
  UniPoly(Field f, std::vector<Elem> coeffs);

  static UniPoly constant(const Elem& c);
  static UniPoly monomial(const Elem& c, std::size_t degree);
  /// X - r
  static UniPoly linear_root(const Elem& r);

  Field field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
  Elem leading() const;

  Elem eval(const Elem& x) const;
  UniPoly derivative() const;
  UniPoly monic() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator-() const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(const Elem& c) const;
  bool operator==(const UniPoly& o) const;

  /// Quotient and remainder; throws division_by_zero for a zero divisor.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
  UniPoly operator%(const UniPoly& d) const { return divmod(d).second; }
  UniPoly operator/(const UniPoly& d) const { return divmod(d).first; }

  std::string to_string() const;

 private:
  void trim();

  Field field_;
  std::vector<Elem> c_;
};

/// Monic gcd (zero if both are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// base^e mod m.
UniPoly powmod(const UniPoly& base, std::uint64_t e, const UniPoly& m);
UniPoly powmod(const UniPoly& base, const mpz_class& e, const UniPoly& m);

/// All roots in the coefficient field, repeated according to multiplicity and
/// sorted by canonical_less. Finite fields and Q are fully supported; number
/// fields only for polynomials of degree <= 2 over fields of degree <= 2.
/// Throws Error(unsupported_field) otherwise.
std::vector<Elem> uni_roots(const UniPoly& p);
/// Distinct roots only.
std::vector<Elem> distinct_roots(const UniPoly& p);

/// True when `f` (over F_p) is irreducible, by Rabin's test.
bool is_irreducible(const UniPoly& f);

/// Embedding of a finite field into an extension of it: the generator of the
/// source goes to the smallest root (canonical order) of its modulus in the
/// target. Throws Error(unsupported_field) when no embedding exists.
class Embedding {
 public:
  Embedding(Field from, Field to);
  Field source() const { return from_; }
  Field target() const { return to_; }
  Elem operator()(const Elem& x) const;

 private:
  Field from_, to_;
  Elem gen_image_;
};

// number-theoretic helpers shared across modules
bool is_prime_u64(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace octa
