#include "octa/fields.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

namespace octa {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_prime: return "NotPrime";
    case ErrorCode::reducible_modulus: return "ReducibleModulus";
    case ErrorCode::division_by_zero: return "DivisionByZero";
    case ErrorCode::spec_mismatch: return "SpecMismatch";
    case ErrorCode::no_such_root: return "NoSuchRoot";
    case ErrorCode::unsupported_field: return "UnsupportedField";
    case ErrorCode::singular_matrix: return "SingularMatrix";
    case ErrorCode::not_smooth: return "NotSmooth";
    case ErrorCode::not_split: return "NotSplit";
    case ErrorCode::configuration_mismatch: return "ConfigurationMismatch";
    case ErrorCode::not_an_automorphism: return "NotAnAutomorphism";
    case ErrorCode::not_general_position: return "NotGeneralPosition";
    case ErrorCode::not_a_sixer: return "NotASixer";
    case ErrorCode::identity_failure: return "IdentityFailure";
    case ErrorCode::not_a_determinantal_rep: return "NotADeterminantalRep";
    case ErrorCode::cube_root_unavailable: return "CubeRootUnavailable";
    case ErrorCode::no_solution_in_field: return "NoSolutionInField";
    case ErrorCode::constraint_violation: return "ConstraintViolation";
    case ErrorCode::degenerate_parameters: return "DegenerateParameters";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// number theory

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod_u64(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  for (u64 small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) {
      out.push_back(small);
      while (n % small == 0) n /= small;
    }
  }
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

u64 parse_u64(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorCode::parse_error, "expected a non-negative integer, got '" + s + "'");
  return std::stoull(s);
}

Rational parse_rational(const std::string& s) {
  Rational r;
  std::string t = trim(s);
  if (t.empty() || t.find_first_not_of("+-0123456789/") != std::string::npos ||
      r.set_str(t[0] == '+' ? t.substr(1) : t, 10) != 0)
    throw Error(ErrorCode::parse_error, "bad rational literal '" + s + "'");
  if (r.get_den() == 0) throw Error(ErrorCode::division_by_zero, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  factor_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// FieldSpec

FieldSpec FieldSpec::prime(u64 p) {
  FieldSpec s;
  s.kind = Kind::prime;
  s.p = p;
  s.k = 1;
  return s;
}

FieldSpec FieldSpec::finite(u64 p, unsigned k, std::vector<u64> modulus) {
  FieldSpec s;
  s.kind = Kind::finite;
  s.p = p;
  s.k = k;
  s.modulus = std::move(modulus);
  return s;
}

FieldSpec FieldSpec::number_field(std::vector<Rational> modulus) {
  FieldSpec s;
  s.kind = Kind::number_field;
  s.nf_modulus = std::move(modulus);
  return s;
}

FieldSpec FieldSpec::parse(std::string_view text) {
  std::string t = trim(text);
  if (t == "Q") return rational();
  auto parts = split(t, ':');
  if (parts[0] == "Fp" && parts.size() == 2) return prime(parse_u64(parts[1]));
  if (parts[0] == "Fq" && (parts.size() == 3 || parts.size() == 4)) {
    u64 p = parse_u64(parts[1]);
    u64 k = parse_u64(parts[2]);
    if (k == 0 || k > 64) throw Error(ErrorCode::parse_error, "bad extension degree in '" + t + "'");
    std::vector<u64> mod;
    if (parts.size() == 4)
      for (const auto& c : split(parts[3], ',')) mod.push_back(parse_u64(c));
    return finite(p, static_cast<unsigned>(k), std::move(mod));
  }
  if (parts[0] == "NF" && parts.size() == 2) {
    std::vector<Rational> mod;
    for (const auto& c : split(parts[1], ',')) mod.push_back(parse_rational(c));
    return number_field(std::move(mod));
  }
  throw Error(ErrorCode::parse_error, "unrecognised field spec '" + t + "'");
}

std::string FieldSpec::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::rational: return "Q";
    case Kind::prime: os << "Fp:" << p; return os.str();
    case Kind::finite:
      os << "Fq:" << p << ':' << k;
      if (!modulus.empty()) {
        os << ':';
        for (std::size_t i = 0; i < modulus.size(); ++i) os << (i ? "," : "") << modulus[i];
      }
      return os.str();
    case Kind::number_field:
      os << "NF:";
      for (std::size_t i = 0; i < nf_modulus.size(); ++i) os << (i ? "," : "") << nf_modulus[i].get_str();
      return os.str();
  }
  return {};
}

// ---------------------------------------------------------------------------
// slow finite-field arithmetic on digit vectors

namespace detail {
namespace {

std::vector<u64> digits(const FieldData& f, u64 code) {
  std::vector<u64> d(f.k);
  for (unsigned i = 0; i < f.k; ++i) {
    d[i] = code % f.p;
    code /= f.p;
  }
  return d;
}

u64 undigits(const FieldData& f, const std::vector<u64>& d) {
  u64 code = 0;
  for (unsigned i = f.k; i-- > 0;) code = code * f.p + d[i];
  return code;
}

u64 raw_mul(const FieldData& f, u64 a, u64 b) {
  if (f.k == 1) return mulmod(a, b, f.p);
  return slow_mul(f, a, b);
}

u64 raw_add_one(const FieldData& f, u64 a) {
  if (f.k == 1) return a + 1 == f.p ? 0 : a + 1;
  u64 c0 = a % f.p;
  return a - c0 + (c0 + 1 == f.p ? 0 : c0 + 1);
}

u64 raw_pow(const FieldData& f, u64 b, u64 e) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = raw_mul(f, r, b);
    b = raw_mul(f, b, b);
    e >>= 1;
  }
  return r;
}

}  // namespace

u64 slow_add(const FieldData& f, u64 a, u64 b) {
  auto da = digits(f, a), db = digits(f, b);
  for (unsigned i = 0; i < f.k; ++i) {
    u64 s = da[i] + db[i];
    da[i] = s >= f.p ? s - f.p : s;
  }
  return undigits(f, da);
}

u64 slow_neg(const FieldData& f, u64 a) {
  auto da = digits(f, a);
  for (auto& x : da) x = x == 0 ? 0 : f.p - x;
  return undigits(f, da);
}

u64 slow_mul(const FieldData& f, u64 a, u64 b) {
  auto da = digits(f, a), db = digits(f, b);
  const unsigned k = f.k;
  std::vector<u64> prod(2 * k - 1, 0);
  for (unsigned i = 0; i < k; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < k; ++j) {
      if (db[j] == 0) continue;
      prod[i + j] = (prod[i + j] + mulmod(da[i], db[j], f.p)) % f.p;
    }
  }
  // reduce by the monic modulus: t^k = -(c0 + ... + c_{k-1} t^{k-1})
  for (unsigned d = 2 * k - 1; d-- > k;) {
    u64 c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (unsigned i = 0; i < k; ++i) {
      u64 sub = mulmod(c, f.modulus[i], f.p);
      u64& slot = prod[d - k + i];
      slot = slot >= sub ? slot - sub : slot + f.p - sub;
    }
  }
  prod.resize(k);
  return undigits(f, prod);
}

u64 prime_inv(u64 a, u64 p) {
  // extended Euclid on signed 128-bit values
  __int128 t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw Error(ErrorCode::division_by_zero, "non-invertible residue");
  if (t < 0) t += p;
  return static_cast<u64>(t);
}

u64 slow_inv(const FieldData& f, u64 a) {
  // a^(q-2)
  return raw_pow(f, a, f.q - 2);
}

// ---------------------------------------------------------------------------
// Q and number fields: hash-consed coefficient vectors

namespace {

using RPoly = std::vector<Rational>;

void rtrim(RPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

RPoly rmod(RPoly a, const RPoly& m) {
  rtrim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm && !a.empty()) {
    Rational c = a.back() / m.back();
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] -= c * m[i];
    a.pop_back();
    rtrim(a);
  }
  return a;
}

RPoly rmul(const RPoly& a, const RPoly& b) {
  if (a.empty() || b.empty()) return {};
  RPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

RPoly rsub(RPoly a, const RPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  rtrim(a);
  return a;
}

std::pair<RPoly, RPoly> rdivmod(RPoly a, const RPoly& d) {
  rtrim(a);
  RPoly q;
  if (a.size() >= d.size()) q.assign(a.size() - d.size() + 1, Rational(0));
  while (!a.empty() && a.size() >= d.size()) {
    Rational c = a.back() / d.back();
    std::size_t shift = a.size() - d.size();
    q[shift] = c;
    for (std::size_t i = 0; i < d.size(); ++i) a[shift + i] -= c * d[i];
    a.pop_back();
    rtrim(a);
  }
  rtrim(q);
  return {q, a};
}

std::string pool_key(const RPoly& c) {
  std::string key;
  for (const auto& x : c) {
    key += x.get_str();
    key += ',';
  }
  return key;
}

}  // namespace

u64 intern(const FieldData& f, std::vector<Rational> coeffs) {
  if (!f.nf_modulus.empty()) coeffs = rmod(std::move(coeffs), f.nf_modulus);
  rtrim(coeffs);
  coeffs.resize(f.nf_degree, Rational(0));
  for (auto& c : coeffs) c.canonicalize();
  std::string key = pool_key(coeffs);
  std::lock_guard<std::mutex> lock(f.pool_mutex);
  auto it = f.pool_index.find(key);
  if (it != f.pool_index.end()) return it->second;
  u64 code = f.pool.size();
  f.pool.push_back(std::move(coeffs));
  f.pool_index.emplace(std::move(key), code);
  return code;
}

std::vector<Rational> pooled(const FieldData& f, u64 code) {
  std::lock_guard<std::mutex> lock(f.pool_mutex);
  return f.pool.at(code);
}

u64 rat_add(const FieldData& f, u64 a, u64 b) {
  if (a == 0) return b;
  if (b == 0) return a;
  auto x = pooled(f, a);
  auto y = pooled(f, b);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return intern(f, std::move(x));
}

u64 rat_neg(const FieldData& f, u64 a) {
  if (a == 0) return 0;
  auto x = pooled(f, a);
  for (auto& c : x) c = -c;
  return intern(f, std::move(x));
}

u64 rat_mul(const FieldData& f, u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  if (a == 1) return b;
  if (b == 1) return a;
  auto x = pooled(f, a);
  auto y = pooled(f, b);
  if (f.nf_degree == 1) return intern(f, {x[0] * y[0]});
  return intern(f, rmul(x, y));
}

u64 rat_inv(const FieldData& f, u64 a) {
  auto x = pooled(f, a);
  if (f.nf_degree == 1) return intern(f, {1 / x[0]});
  // extended Euclid: s*x + t*m = g (constant)
  RPoly r0 = f.nf_modulus, r1 = x;
  rtrim(r1);
  RPoly s0 = {}, s1 = {Rational(1)};
  while (!r1.empty() && r1.size() > 1) {
    auto [q, r] = rdivmod(r0, r1);
    RPoly s = rsub(s0, rmul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.empty())
    throw Error(ErrorCode::division_by_zero, "element shares a factor with the modulus (modulus reducible)");
  Rational c = r1[0];
  for (auto& v : s1) v /= c;
  return intern(f, std::move(s1));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// field construction and registry

namespace {

std::unique_ptr<detail::FieldData> build_field(FieldSpec spec);

struct Registry {
  std::mutex mutex;
  std::map<std::string, std::unique_ptr<detail::FieldData>> fields;
};

Registry& registry() {
  static Registry* r = new Registry;  // intentionally leaked: elements may outlive statics
  return *r;
}

u64 checked_pow(u64 p, unsigned k) {
  u128 q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q >= (u128{1} << 62)) throw Error(ErrorCode::unsupported_field, "field too large");
  }
  return static_cast<u64>(q);
}

void build_tables(detail::FieldData& f) {
  using namespace detail;
  const u64 n = f.q - 1;
  f.order_factors = prime_factors(n);
  u64 g = 0;
  if (n == 1) {
    g = 1;
  } else {
    for (u64 cand = 2; cand < f.q; ++cand) {
      bool ok = true;
      for (u64 r : f.order_factors) {
        if (raw_pow(f, cand, n / r) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        g = cand;
        break;
      }
    }
  }
  f.generator = g;
  if (f.q > FieldData::kTableLimit) return;
  f.exp.resize(n);
  f.log.assign(f.q, 0);
  u64 x = 1;
  for (u64 i = 0; i < n; ++i) {
    f.exp[i] = static_cast<std::uint32_t>(x);
    f.log[x] = static_cast<std::uint32_t>(i);
    x = raw_mul(f, x, g);
  }
  f.zech.resize(n);
  for (u64 i = 0; i < n; ++i) {
    u64 y = raw_add_one(f, f.exp[i]);
    f.zech[i] = y == 0 ? -1 : static_cast<std::int32_t>(f.log[y]);
  }
  f.tables = true;
}

std::vector<u64> default_modulus(u64 p, unsigned k) {
  Field fp = Field::prime(p);
  const u64 count = checked_pow(p, k);
  for (u64 code = 1; code < count; ++code) {
    if (code % p == 0) continue;  // divisible by t
    std::vector<Elem> c(k + 1);
    u64 x = code;
    for (unsigned i = 0; i < k; ++i) {
      c[i] = fp.element_at(x % p);
      x /= p;
    }
    c[k] = fp.one();
    if (is_irreducible(UniPoly(fp, c))) {
      std::vector<u64> out(k + 1);
      x = code;
      for (unsigned i = 0; i < k; ++i) {
        out[i] = x % p;
        x /= p;
      }
      out[k] = 1;
      return out;
    }
  }
  throw Error(ErrorCode::reducible_modulus, "no irreducible polynomial found");
}

FieldSpec normalize(FieldSpec spec) {
  using Kind = FieldSpec::Kind;
  if (spec.kind == Kind::prime || spec.kind == Kind::finite) {
    if (!is_prime_u64(spec.p)) throw Error(ErrorCode::not_prime, std::to_string(spec.p) + " is not prime");
    if (spec.p >= (u64{1} << 62)) throw Error(ErrorCode::unsupported_field, "characteristic too large");
  }
  if (spec.kind == Kind::finite) {
    if (spec.k == 1) {
      if (!spec.modulus.empty() && (spec.modulus.size() != 2 || spec.modulus[1] != 1))
        throw Error(ErrorCode::parse_error, "degree-1 modulus must be monic linear");
      return FieldSpec::prime(spec.p);
    }
    checked_pow(spec.p, spec.k);
    if (spec.modulus.empty()) {
      spec.modulus = default_modulus(spec.p, spec.k);
    } else {
      if (spec.modulus.size() != spec.k + 1 || spec.modulus.back() != 1)
        throw Error(ErrorCode::parse_error, "modulus must be monic of degree k");
      Field fp = Field::prime(spec.p);
      std::vector<Elem> c;
      for (u64 v : spec.modulus) {
        if (v >= spec.p) throw Error(ErrorCode::parse_error, "modulus coefficient out of range");
        c.push_back(fp.element_at(v));
      }
      if (!is_irreducible(UniPoly(fp, c)))
        throw Error(ErrorCode::reducible_modulus, spec.to_string() + " has a reducible modulus");
    }
  }
  if (spec.kind == Kind::number_field) {
    auto& m = spec.nf_modulus;
    while (!m.empty() && m.back() == 0) m.pop_back();
    if (m.size() < 2 || m.back() != 1) throw Error(ErrorCode::parse_error, "number-field modulus must be monic, degree >= 1");
    // Irreducibility is only certified up to degree 3: no rational root, and for
    // degree <= 3 that is sufficient. Higher degrees are trusted.
    if (m.size() <= 4) {
      Field q = Field::rationals();
      std::vector<Elem> c;
      for (const auto& r : m) c.push_back(q.from_rational(r));
      if (m.size() > 2 && !uni_roots(UniPoly(q, c)).empty())
        throw Error(ErrorCode::reducible_modulus, spec.to_string() + " has a rational root");
    }
  }
  return spec;
}

std::unique_ptr<detail::FieldData> build_field(FieldSpec spec) {
  using Kind = FieldSpec::Kind;
  auto f = std::make_unique<detail::FieldData>();
  f->spec = spec;
  switch (spec.kind) {
    case Kind::rational:
      f->finite = false;
      f->nf_degree = 1;
      break;
    case Kind::number_field:
      f->finite = false;
      f->nf_modulus = spec.nf_modulus;
      f->nf_degree = static_cast<unsigned>(spec.nf_modulus.size() - 1);
      break;
    case Kind::prime:
    case Kind::finite:
      f->finite = true;
      f->p = spec.p;
      f->k = spec.kind == Kind::prime ? 1 : spec.k;
      f->q = checked_pow(f->p, f->k);
      f->modulus = spec.kind == Kind::prime ? std::vector<u64>{0, 1} : spec.modulus;
      f->pow_p.resize(f->k + 1);
      f->pow_p[0] = 1;
      for (unsigned i = 1; i <= f->k; ++i) f->pow_p[i] = f->pow_p[i - 1] * f->p;
      build_tables(*f);
      break;
  }
  if (!f->finite) {
    f->pool.push_back(std::vector<Rational>(f->nf_degree, Rational(0)));
    f->pool_index.emplace(detail::pool_key(f->pool.back()), 0);
    std::vector<Rational> one(f->nf_degree, Rational(0));
    one[0] = 1;
    f->pool.push_back(one);
    f->pool_index.emplace(detail::pool_key(one), 1);
  }
  return f;
}

}  // namespace

Field Field::make(const FieldSpec& raw) {
  FieldSpec spec = normalize(raw);
  std::string key = spec.to_string();
  auto& reg = registry();
  {
    std::lock_guard<std::mutex> lock(reg.mutex);
    auto it = reg.fields.find(key);
    if (it != reg.fields.end()) return Field(it->second.get());
  }
  auto built = build_field(spec);
  std::lock_guard<std::mutex> lock(reg.mutex);
  auto [it, inserted] = reg.fields.emplace(key, std::move(built));
  return Field(it->second.get());
}

std::optional<u64> Field::cardinality() const {
  if (d_->finite) return d_->q;
  return std::nullopt;
}

Elem Field::element_at(u64 code) const {
  if (!d_->finite || code >= d_->q) throw Error(ErrorCode::spec_mismatch, "element_at outside a finite field");
  return Elem(d_, code);
}

std::vector<Elem> Field::elements() const {
  if (!d_->finite) throw Error(ErrorCode::unsupported_field, "cannot list an infinite field");
  std::vector<Elem> out;
  out.reserve(d_->q);
  for (u64 c = 0; c < d_->q; ++c) out.emplace_back(d_, c);
  return out;
}

Elem Field::primitive_element() const {
  if (!d_->finite) throw Error(ErrorCode::unsupported_field, "no primitive element in an infinite field");
  return Elem(d_, d_->generator);
}

Elem Field::from_int(std::int64_t n) const {
  if (d_->finite) {
    std::int64_t p = static_cast<std::int64_t>(d_->p);
    std::int64_t r = n % p;
    if (r < 0) r += p;
    return Elem(d_, static_cast<u64>(r));
  }
  std::vector<Rational> c(d_->nf_degree, Rational(0));
  c[0] = Rational(static_cast<long>(n));
  return Elem(d_, detail::intern(*d_, std::move(c)));
}

Elem Field::from_rational(const Rational& r) const {
  if (d_->finite) {
    mpz_class p(std::to_string(d_->p));
    mpz_class num = r.get_num() % p, den = r.get_den() % p;
    if (num < 0) num += p;
    if (den == 0) throw Error(ErrorCode::division_by_zero, "denominator divisible by the characteristic");
    Elem a(d_, std::stoull(num.get_str())), b(d_, std::stoull(den.get_str()));
    return a / b;
  }
  std::vector<Rational> c(d_->nf_degree, Rational(0));
  c[0] = r;
  return Elem(d_, detail::intern(*d_, std::move(c)));
}

Elem Field::from_coeffs(const std::vector<Rational>& c) const {
  if (!d_->finite) return Elem(d_, detail::intern(*d_, c));
  Elem t = d_->k == 1 ? zero() : gen();
  Elem acc = zero();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + from_rational(c[i]);
  return acc;
}

Elem Field::from_coeffs(const std::vector<std::int64_t>& c) const {
  std::vector<Rational> r;
  for (auto v : c) r.emplace_back(static_cast<long>(v));
  return from_coeffs(r);
}

Elem Field::gen() const {
  if (d_->finite) {
    if (d_->k == 1) throw Error(ErrorCode::unsupported_field, "prime fields have no adjoined generator");
    return Elem(d_, d_->p);
  }
  if (d_->nf_degree == 1) {
    if (d_->nf_modulus.empty()) throw Error(ErrorCode::unsupported_field, "Q has no adjoined generator");
    return from_rational(-d_->nf_modulus[0]);
  }
  std::vector<Rational> c(d_->nf_degree, Rational(0));
  c[1] = 1;
  return Elem(d_, detail::intern(*d_, std::move(c)));
}

Elem Field::parse_elem(std::string_view literal) const {
  std::string t = trim(literal);
  if (!t.empty() && t.front() == '[') {
    if (t.back() != ']') throw Error(ErrorCode::parse_error, "unterminated element literal '" + t + "'");
    std::vector<Rational> c;
    std::string body = t.substr(1, t.size() - 2);
    if (!trim(body).empty())
      for (const auto& part : split(body, ',')) c.push_back(parse_rational(part));
    return from_coeffs(c);
  }
  return from_rational(parse_rational(t));
}

bool Field::has_root_of_unity(unsigned n) const {
  if (n == 0) return false;
  if (d_->finite) return (d_->q - 1) % n == 0;
  try {
    root_of_unity(n);
    return true;
  } catch (const Error&) {
    return false;
  }
}

namespace {

unsigned euler_phi(unsigned n) {
  unsigned r = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

bool has_exact_order(const Elem& x, unsigned n) {
  if (!x.pow(n).is_one()) return false;
  for (unsigned m = 1; m < n; ++m)
    if (n % m == 0 && x.pow(m).is_one()) return false;
  return true;
}

}  // namespace

Elem Field::root_of_unity(unsigned n) const {
  if (n == 0) throw Error(ErrorCode::no_such_root, "order must be positive");
  if (d_->finite) {
    const u64 qm1 = d_->q - 1;
    if (qm1 % n != 0)
      throw Error(ErrorCode::no_such_root,
                  std::to_string(n) + " does not divide " + std::to_string(qm1) + " in " + d_->spec.to_string());
    Elem base = primitive_element().pow(static_cast<std::int64_t>(qm1 / n));
    Elem best;
    Elem cur = one();
    for (unsigned j = 1; j <= n; ++j) {
      cur = cur * base;
      if (std::gcd(j, n) != 1) continue;
      if (!best.valid() || canonical_less(cur, best)) best = cur;
    }
    return best;
  }
  if (n <= 2) return n == 1 ? one() : from_int(-1);
  if (euler_phi(n) > d_->nf_degree)
    throw Error(ErrorCode::no_such_root, "cyclotomic degree exceeds the field degree");
  if (d_->nf_degree > 2)
    throw Error(ErrorCode::unsupported_field, "roots of unity only searched in number fields of degree <= 2");
  // phi(n) <= 2 means n in {3, 4, 6}
  std::vector<Elem> phi;
  if (n == 3) phi = {one(), one(), one()};
  if (n == 4) phi = {one(), zero(), one()};
  if (n == 6) phi = {one(), -one(), one()};
  if (phi.empty()) throw Error(ErrorCode::no_such_root, "no root of unity of that order");
  auto roots = distinct_roots(UniPoly(*this, phi));
  for (const auto& r : roots)
    if (has_exact_order(r, n)) return r;
  throw Error(ErrorCode::no_such_root, "cyclotomic polynomial has no root in " + d_->spec.to_string());
}

namespace {

std::optional<Rational> rational_root(const Rational& x, unsigned n) {
  if (x < 0 && n % 2 == 0) return std::nullopt;
  mpz_class num = abs(x.get_num()), den = x.get_den();
  mpz_class rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n)) return std::nullopt;
  Rational r(rn, rd);
  r.canonicalize();
  if (x < 0) r = -r;
  return r;
}

}  // namespace

std::vector<Elem> Field::nth_roots(const Elem& x, unsigned n) const {
  if (x.data() != d_) throw Error(ErrorCode::spec_mismatch, "element from another field");
  if (n == 0) throw Error(ErrorCode::no_such_root, "order must be positive");
  std::vector<Elem> out;
  if (x.is_zero()) return {zero()};
  if (d_->finite && d_->tables) {
    const u64 m = d_->q - 1;
    const u64 l = d_->log[x.code()];
    const u64 g = std::gcd<u64>(n, m);
    if (l % g != 0) return {};
    const u64 mg = m / g;
    // solve (n/g) j = l/g mod m/g
    u64 ng = (n / g) % mg, lg = (l / g) % mg;
    u64 j0 = mg == 1 ? 0 : mulmod(lg, detail::prime_inv(ng, mg), mg);
    for (u64 t = 0; t < g; ++t) out.emplace_back(d_, d_->exp[(j0 + t * mg) % m]);
  } else if (d_->finite || d_->nf_degree > 1) {
    if (!d_->finite && n > 2)
      throw Error(ErrorCode::unsupported_field, "only square roots are supported in number fields");
    std::vector<Elem> c(n + 1, zero());
    c[0] = -x;
    c[n] = one();
    out = distinct_roots(UniPoly(*this, c));
  } else {
    Rational r = x.coeffs()[0];
    if (auto root = rational_root(r, n)) {
      out.push_back(from_rational(*root));
      if (n % 2 == 0) out.push_back(from_rational(-*root));
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Elem

Elem Elem::pow(std::int64_t e) const {
  Elem base = e < 0 ? inv() : *this;
  u64 n = e < 0 ? static_cast<u64>(-(e + 1)) + 1 : static_cast<u64>(e);
  if (f_->finite && f_->tables && !base.is_zero()) {
    u64 m = f_->q - 1;
    u64 l = mulmod(f_->log[base.code()], n % m, m);
    return Elem(f_, f_->exp[l]);
  }
  Elem r(f_, 1);
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

std::vector<Rational> Elem::coeffs() const {
  if (f_->finite) {
    std::vector<Rational> out;
    u64 x = v_;
    for (unsigned i = 0; i < f_->k; ++i) {
      out.emplace_back(static_cast<unsigned long>(x % f_->p));
      x /= f_->p;
    }
    return out;
  }
  return detail::pooled(*f_, v_);
}

std::string Elem::to_string() const {
  if (!f_) return "<invalid>";
  if (f_->finite && f_->k == 1) return std::to_string(v_);
  auto c = coeffs();
  if (!f_->finite && f_->nf_degree == 1) return c[0].get_str();
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += c[i].get_str();
  }
  return s + "]";
}

bool canonical_less(const Elem& a, const Elem& b) {
  const auto* f = a.data();
  if (f != b.data()) throw Error(ErrorCode::spec_mismatch, "comparing elements of different fields");
  if (f->finite) {
    if (f->k == 1) return a.code() < b.code();
    u64 x = a.code(), y = b.code();
    for (unsigned i = 0; i < f->k; ++i) {
      u64 dx = x % f->p, dy = y % f->p;
      if (dx != dy) return dx < dy;
      x /= f->p;
      y /= f->p;
    }
    return false;
  }
  auto ca = a.coeffs(), cb = b.coeffs();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] != cb[i]) return ca[i] < cb[i];
  }
  return false;
}

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(Field f, std::vector<Elem> coeffs) : field_(f), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.data() != f.data()) throw Error(ErrorCode::spec_mismatch, "coefficient from another field");
  trim();
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::constant(const Elem& c) { return UniPoly(c.field(), {c}); }

UniPoly UniPoly::monomial(const Elem& c, std::size_t degree) {
  std::vector<Elem> v(degree + 1, c.field().zero());
  v[degree] = c;
  return UniPoly(c.field(), std::move(v));
}

UniPoly UniPoly::linear_root(const Elem& r) { return UniPoly(r.field(), {-r, r.field().one()}); }

Elem UniPoly::leading() const { return c_.empty() ? field_.zero() : c_.back(); }

Elem UniPoly::eval(const Elem& x) const {
  Elem acc = field_.zero();
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

UniPoly UniPoly::derivative() const {
  std::vector<Elem> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * field_.from_int(static_cast<std::int64_t>(i)));
  return UniPoly(field_, std::move(d));
}

UniPoly UniPoly::monic() const {
  if (c_.empty()) return *this;
  return *this * leading().inv();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), field_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator-() const {
  std::vector<Elem> r;
  for (const auto& c : c_) r.push_back(-c);
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (c_.empty() || o.c_.empty()) return UniPoly(field_);
  std::vector<Elem> r(c_.size() + o.c_.size() - 1, field_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator*(const Elem& c) const {
  std::vector<Elem> r;
  for (const auto& x : c_) r.push_back(x * c);
  return UniPoly(field_, std::move(r));
}

bool UniPoly::operator==(const UniPoly& o) const {
  if (field_ != o.field_ || c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
  if (d.is_zero()) throw Error(ErrorCode::division_by_zero, "polynomial division by zero");
  std::vector<Elem> r = c_;
  if (r.size() < d.c_.size()) return {UniPoly(field_), *this};
  const std::size_t dsz = d.c_.size();
  std::vector<Elem> q(r.size() - dsz + 1, field_.zero());
  Elem lead_inv = d.leading().inv();
  for (std::size_t i = r.size(); i >= dsz; --i) {
    const std::size_t top = i - 1;
    if (r[top].is_zero()) continue;
    Elem c = r[top] * lead_inv;
    std::size_t shift = top - (dsz - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < dsz; ++j) r[shift + j] -= c * d.c_[j];
  }
  r.resize(dsz - 1);
  return {UniPoly(field_, std::move(q)), UniPoly(field_, std::move(r))};
}

std::string UniPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += c_[i].to_string();
    if (i >= 1) s += "*t";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UniPoly powmod(const UniPoly& base, u64 e, const UniPoly& m) {
  UniPoly r = UniPoly::constant(m.field().one()) % m;
  UniPoly b = base % m;
  while (e) {
    if (e & 1) r = (r * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return r;
}

UniPoly powmod(const UniPoly& base, const mpz_class& e, const UniPoly& m) {
  UniPoly r = UniPoly::constant(m.field().one()) % m;
  UniPoly b = base % m;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = (r * r) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b) % m;
  }
  return r;
}

bool is_irreducible(const UniPoly& f) {
  Field F = f.field();
  if (!F.is_finite()) throw Error(ErrorCode::unsupported_field, "irreducibility test needs a finite field");
  const long n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const u64 q = *F.cardinality();
  UniPoly x = UniPoly::monomial(F.one(), 1);
  // x^(q^i) mod f for i = 0..n
  std::vector<UniPoly> frob{x % f};
  for (long i = 1; i <= n; ++i) frob.push_back(powmod(frob.back(), q, f));
  if (!((frob[n] - x) % f).is_zero()) return false;
  for (u64 r : prime_factors(static_cast<u64>(n))) {
    auto g = gcd(frob[n / static_cast<long>(r)] - x, f);
    if (g.degree() != 0) return false;
  }
  return true;
}

namespace {

// product of the distinct linear factors of a squarefree-or-not poly over F_q
void split_linear(const UniPoly& g, std::vector<Elem>& out, u64& seed) {
  Field F = g.field();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-g.coeff(0) / g.coeff(1));
    return;
  }
  const auto* d = F.data();
  const u64 q = d->q;
  UniPoly x = UniPoly::monomial(F.one(), 1);
  for (int attempt = 0; attempt < 256; ++attempt) {
    seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    Elem a = F.element_at((seed >> 11) % q);
    UniPoly h(F);
    if (d->p == 2) {
      UniPoly w = (x * a) % g;
      UniPoly acc = w;
      for (unsigned i = 1; i < d->k; ++i) {
        w = (w * w) % g;
        acc = acc + w;
      }
      h = gcd(acc, g);
    } else {
      UniPoly b = x + UniPoly::constant(a);
      UniPoly w = powmod(b, (q - 1) / 2, g) - UniPoly::constant(F.one());
      h = gcd(w, g);
    }
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_linear(h, out, seed);
      split_linear(g / h, out, seed);
      return;
    }
  }
  throw Error(ErrorCode::unsupported_field, "root splitting did not converge");
}

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> ds{1};
  if (n <= 1) return ds;
  mpz_class rest = n;
  for (mpz_class p = 2; p * p <= rest; ++p) {
    if (p > 1000000) throw Error(ErrorCode::unsupported_field, "rational root search: coefficient too large");
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e == 0) continue;
    std::size_t cur = ds.size();
    mpz_class pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < cur; ++j) ds.push_back(ds[j] * pk);
    }
  }
  if (rest > 1) {
    std::size_t cur = ds.size();
    for (std::size_t j = 0; j < cur; ++j) ds.push_back(ds[j] * rest);
  }
  return ds;
}

std::vector<Elem> rational_roots(const UniPoly& p) {
  Field F = p.field();
  // clear denominators
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) {
    Rational r = c.coeffs()[0];
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den_mpz_t());
  }
  std::vector<mpz_class> ic;
  for (const auto& c : p.coeffs()) {
    Rational r = c.coeffs()[0] * l;
    ic.push_back(r.get_num());
  }
  std::vector<Elem> out;
  std::size_t lo = 0;
  while (lo < ic.size() && ic[lo] == 0) ++lo;
  if (lo == ic.size()) return out;
  std::vector<Rational> cands;
  for (const auto& a : divisors(ic[lo]))
    for (const auto& b : divisors(ic.back())) {
      Rational r(a, b);
      r.canonicalize();
      cands.push_back(r);
      cands.push_back(-r);
    }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  for (const auto& r : cands) {
    Elem e = F.from_rational(r);
    if (p.eval(e).is_zero()) out.push_back(e);
  }
  if (lo > 0) out.push_back(F.zero());
  return out;
}

// square roots in a number field of degree <= 2, K = Q(t), t^2 + b t + c = 0
std::vector<Elem> nf_sqrt(const Elem& a) {
  Field F = a.field();
  const auto* d = F.data();
  if (a.is_zero()) return {a};
  if (d->nf_degree == 1) {
    auto r = rational_root(a.coeffs()[0], 2);
    if (!r) return {};
    return {F.from_rational(*r), F.from_rational(-*r)};
  }
  if (d->nf_degree != 2) throw Error(ErrorCode::unsupported_field, "square roots need a number field of degree <= 2");
  const Rational c = d->nf_modulus[0], b = d->nf_modulus[1];
  auto ac = a.coeffs();
  const Rational a0 = ac[0], a1 = ac[1];
  std::vector<Elem> out;
  auto add = [&](const Rational& u, const Rational& v) {
    Elem e = F.from_coeffs(std::vector<Rational>{u, v});
    if (e * e == a) out.push_back(e);
  };
  // v = 0
  if (a1 == 0) {
    if (auto r = rational_root(a0, 2)) {
      add(*r, 0);
      add(-*r, 0);
    }
  }
  // v != 0, w = v^2 solves (b^2 - 4c) w^2 + (2 a1 b - 4 a0) w + a1^2 = 0
  const Rational A = b * b - 4 * c, B = 2 * a1 * b - 4 * a0, C = a1 * a1;
  std::vector<Rational> ws;
  if (A == 0) {
    if (B != 0) ws.push_back(-C / B);
  } else {
    Rational disc = B * B - 4 * A * C;
    if (auto s = rational_root(disc, 2)) {
      ws.push_back((-B + *s) / (2 * A));
      ws.push_back((-B - *s) / (2 * A));
    }
  }
  for (const auto& w : ws) {
    if (w == 0) continue;
    if (auto v = rational_root(w, 2)) {
      for (Rational vv : {*v, Rational(-*v)}) {
        Rational u = (a1 + b * vv * vv) / (2 * vv);
        add(u, vv);
      }
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<Elem> distinct_roots(const UniPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::no_such_root, "the zero polynomial");
  Field F = p.field();
  std::vector<Elem> out;
  if (p.degree() == 0) return out;
  const auto* d = F.data();
  if (d->finite) {
    if (d->q <= 4096) {
      for (u64 c = 0; c < d->q; ++c) {
        Elem e(d, c);
        if (p.eval(e).is_zero()) out.push_back(e);
      }
    } else {
      UniPoly m = p.monic();
      UniPoly x = UniPoly::monomial(F.one(), 1);
      UniPoly g = gcd(powmod(x, d->q, m) - x, m);
      u64 seed = 0x9e3779b97f4a7c15ULL ^ static_cast<u64>(g.degree());
      split_linear(g, out, seed);
    }
  } else if (d->nf_degree == 1) {
    out = rational_roots(p);
  } else {
    if (p.degree() == 1) {
      out.push_back(-p.coeff(0) / p.coeff(1));
    } else if (p.degree() == 2) {
      Elem a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
      Elem disc = b * b - F.from_int(4) * a * c;
      for (const auto& s : nf_sqrt(disc)) out.push_back((-b + s) / (F.from_int(2) * a));
    } else {
      throw Error(ErrorCode::unsupported_field, "number-field root finding is limited to degree <= 2");
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Elem> uni_roots(const UniPoly& p) {
  auto roots = distinct_roots(p);
  std::vector<Elem> out;
  for (const auto& r : roots) {
    UniPoly rest = p;
    UniPoly lin = UniPoly::linear_root(r);
    while (true) {
      auto [q, rem] = rest.divmod(lin);
      if (!rem.is_zero() || rest.degree() < 1) break;
      out.push_back(r);
      rest = q;
    }
  }
  return out;
}

Embedding::Embedding(Field from, Field to) : from_(from), to_(to) {
  if (!from.is_finite() || !to.is_finite() || from.characteristic() != to.characteristic() ||
      to.degree() % from.degree() != 0)
    throw Error(ErrorCode::unsupported_field, "no embedding of " + from.spec().to_string() + " into " + to.spec().to_string());
  if (from.degree() == 1) return;
  std::vector<Elem> c;
  for (auto v : from.data()->modulus) c.push_back(to.from_int(static_cast<std::int64_t>(v)));
  auto roots = distinct_roots(UniPoly(to, c));
  if (roots.empty()) throw Error(ErrorCode::unsupported_field, "modulus has no root in the target field");
  gen_image_ = roots.front();
}

Elem Embedding::operator()(const Elem& x) const {
  if (x.field() != from_) throw Error(ErrorCode::spec_mismatch, "element is not in the source field");
  if (from_.degree() == 1) return to_.from_int(static_cast<std::int64_t>(x.code()));
  Elem acc = to_.zero();
  auto c = x.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * gen_image_ + to_.from_rational(c[i]);
  return acc;
}

}  // namespace octa
