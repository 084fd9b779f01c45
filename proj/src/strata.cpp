// Stratum catalog: constraints, solvers, automorphism matrices, verification
// reports and the specialization graph.

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "octa/normal_form.hpp"

namespace octa {

namespace {

using Row = std::array<Elem, 4>;

Mat4 from_rows(const std::array<Row, 4>& r) {
  std::array<Elem, 16> e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e[4 * i + j] = r[i][j];
  return Mat4(r[0][0].field(), e);
}

Mat4 mat_pow(const Mat4& m, int e) {
  Mat4 r = Mat4::identity(m.field());
  for (int i = 0; i < e; ++i) r = r * m;
  return r;
}

Point pt(const Elem& a, const Elem& b, const Elem& c, const Elem& d) { return {a, b, c, d}; }

const std::vector<std::string> kLabels{"2A", "2B", "3A", "3C", "3D", "4A", "4B", "4B'", "5A", "5A'", "6E", "8A", "12A"};

void check_label(const std::string& label) {
  if (std::find(kLabels.begin(), kLabels.end(), label) == kLabels.end())
    throw Error(ErrorCode::parse_error, "unknown stratum label " + label);
}

// The parameter form used for (label, p): the theorem's form when a
// characteristic coincidence applies.
std::string form_key(const std::string& label, std::uint64_t p) {
  std::string th = stratum_theorem(label, p);
  if (th == "6E=4B=4A") return "6E";
  if (th == "3C=5A=12A") return "3C";
  if (th == "8A=12A") return "8A3";
  if (label == "3A" && p == 3) return "3A3";
  return label;
}

struct Derived8A {
  Elem alpha, beta, A, gamma, delta;
};

Derived8A derived(const OctanomialParams& a) {
  Field f = a.field();
  Elem one = f.one(), two = f.from_int(2), four = f.from_int(4);
  Elem d2 = a.a0 * a.a2 - one, d3 = a.a0 * a.a3 - one;
  if (d2.is_zero() || d3.is_zero() || two.is_zero())
    throw Error(ErrorCode::degenerate_parameters, "alpha or beta has a vanishing denominator (a0 a2 = 1 or a0 a3 = 1)");
  Derived8A d;
  d.alpha = a.a2 * a.a2 / (four * d2);
  d.beta = a.a3 * a.a3 / (four * d3);
  d.A = a.a3 * d.alpha + a.a2 * d.beta;
  Elem u2 = one - a.a0 * a.a2, u3 = one - a.a0 * a.a3;
  d.gamma = d.beta * d.beta * u2 + two * d.alpha * d.beta * u3 + a.a0 * d.beta - a.a3 * (one - d.A) / two;
  d.delta = d.alpha * d.alpha * u3 + two * d.alpha * d.beta * u2 + a.a0 * d.alpha - a.a2 * (one - d.A) / two;
  return d;
}

Elem star1(const OctanomialParams& a) {
  Field f = a.field();
  Elem p = a.a2 + a.a3, q = a.a2 * a.a3, a0 = a.a0;
  return q * q * q + f.from_int(4) * p * q + f.from_int(8) -
         f.from_int(2) * a0 * (f.from_int(3) * q * q - f.from_int(4) * a0 * q + f.from_int(4) * p);
}

Elem star2(const OctanomialParams& a) {
  Field f = a.field();
  Elem p = a.a2 + a.a3, q = a.a2 * a.a3, a0 = a.a0;
  return f.from_int(3) * q - p * p +
         a0 * (f.from_int(2) * a0 * a0 * q - a0 * (q * q + f.from_int(2) * p) + p * q + f.from_int(2));
}

Elem dagger(const OctanomialParams& a) {
  auto d = derived(a);
  Field f = a.field();
  return d.gamma * (f.one() - a.a0 * a.a2) - f.from_int(2) * d.delta * (f.one() - a.a0 * a.a3);
}

// (a2, a3) with condition (*) for the given a0 = a1, a0 a2 != 1, a0 a3 != 1.
std::vector<std::pair<Elem, Elem>> solve_star(const Elem& a0) {
  Field f = a0.field();
  auto K = [&](std::int64_t n) { return f.from_int(n); };
  UniPoly Q(f, {f.zero(), f.one()});
  auto C = [&](const Elem& c) { return UniPoly::constant(c); };
  // star1 = p (4q - 8 a0) + (q^3 - 6 a0 q^2 + 8 a0^2 q + 8)
  // star2 = -p^2 + p (a0 q - 2 a0^2) + (3q + 2 a0^3 q - a0^2 q^2 + 2 a0)
  UniPoly rest1 = Q * Q * Q - Q * Q * (K(6) * a0) + Q * (K(8) * a0 * a0) + C(K(8));
  UniPoly den = Q * K(4) - C(K(8) * a0);
  UniPoly lin2 = Q * a0 - C(K(2) * a0 * a0);
  UniPoly c2 = Q * K(3) + Q * (K(2) * a0 * a0 * a0) - Q * Q * (a0 * a0) + C(K(2) * a0);
  UniPoly num = -rest1;
  UniPoly res = -(num * num) + num * den * lin2 + den * den * c2;

  std::set<std::pair<std::uint64_t, std::uint64_t>> pq;
  std::vector<std::pair<Elem, Elem>> cand;
  auto add = [&](const Elem& p, const Elem& q) {
    if (pq.insert({p.code(), q.code()}).second) cand.push_back({p, q});
  };
  if (!res.is_zero()) {
    for (const auto& q : uni_roots(res)) {
      Elem d = den.eval(q);
      if (d.is_zero()) continue;
      add(num.eval(q) / d, q);
    }
  }
  // den = 0: q = 2 a0, then star1 forces rest1(q) = 0 and star2 is quadratic in p
  if (!K(4).is_zero()) {
    Elem q = K(2) * a0;
    if (rest1.eval(q).is_zero()) {
      UniPoly P(f, {c2.eval(q), lin2.eval(q), -f.one()});
      for (const auto& p : uni_roots(P)) add(p, q);
    }
  }
  std::vector<std::pair<Elem, Elem>> out;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (const auto& [p, q] : cand) {
    auto ts = uni_roots(UniPoly(f, {q, -p, f.one()}));
    if (ts.size() != 2) continue;
    for (int s = 0; s < 2; ++s) {
      Elem a2 = ts[s], a3 = ts[1 - s];
      if ((a0 * a2).is_one() || (a0 * a3).is_one()) continue;
      if (seen.insert({a2.code(), a3.code()}).second) out.push_back({a2, a3});
    }
  }
  return out;
}

Elem pick_free(Field f, const std::vector<Elem>& free, std::size_t i, std::mt19937_64& rng) {
  if (i < free.size()) return free[i];
  // zero free values tend to land on a smaller stratum
  if (auto q = f.cardinality()) return *q > 2 ? f.element_at(1 + rng() % (*q - 1)) : f.element_at(rng() % *q);
  std::int64_t v = static_cast<std::int64_t>(rng() % 20) - 10;
  return f.from_int(v >= 0 ? v + 1 : v);
}

Elem need_root(Field f, unsigned n, const std::string& what) {
  if (!f.has_root_of_unity(n))
    throw Error(ErrorCode::no_solution_in_field, what + " needs a primitive " + std::to_string(n) + "-th root of unity");
  return f.root_of_unity(n);
}

}  // namespace

// ---------------------------------------------------------------------------
// catalog

const std::vector<std::string>& stratum_labels() { return kLabels; }

bool stratum_supported(const std::string& label, std::uint64_t p) {
  check_label(label);
  if (label == "3C") return p != 3;
  if (label == "4B'") return p != 2;
  if (label == "5A") return p != 5;
  if (label == "5A'") return p != 2 && p != 5;
  if (label == "8A") return p != 2;
  return true;
}

std::string stratum_theorem(const std::string& label, std::uint64_t p) {
  if (!stratum_supported(label, p))
    throw Error(ErrorCode::unsupported_field,
                "no " + label + " form in characteristic " + std::to_string(p));
  if (p == 2 && (label == "4A" || label == "4B" || label == "6E")) return "6E=4B=4A";
  if (p == 2 && (label == "3C" || label == "5A" || label == "12A")) return "3C=5A=12A";
  if (p == 3 && (label == "8A" || label == "12A")) return "8A=12A";
  return label;
}

int stratum_arity(const std::string& label, std::uint64_t p) {
  std::string k = form_key(label, p);
  if (k == "2A") return 3;
  if (k == "2B" || k == "3D") return 2;
  if (k == "3A" || k == "3A3" || k == "4A" || k == "4B" || k == "4B'" || k == "6E") return 1;
  return 0;
}

std::vector<std::pair<std::string, Elem>> constraint_residuals(const std::string& label, std::uint64_t p,
                                                                const OctanomialParams& a) {
  std::string k = form_key(label, p);
  Field f = a.field();
  auto K = [&](std::int64_t n) { return f.from_int(n); };
  std::vector<std::pair<std::string, Elem>> r;
  auto zero_a0a1 = [&] {
    r.push_back({"a0", a.a0});
    r.push_back({"a1", a.a1});
  };
  if (k == "2A") {
    r.push_back({"a0-a1", a.a0 - a.a1});
  } else if (k == "2B") {
    r.push_back({"a0-a1", a.a0 - a.a1});
    r.push_back({"a2-a3", a.a2 - a.a3});
  } else if (k == "3A") {
    // a2 + zeta a3 = 0 for some primitive cube root zeta
    zero_a0a1();
    r.push_back({"a2^2-a2a3+a3^2", a.a2 * a.a2 - a.a2 * a.a3 + a.a3 * a.a3});
  } else if (k == "3A3") {
    zero_a0a1();
    r.push_back({"a2+a3", a.a2 + a.a3});
  } else if (k == "3C") {
    zero_a0a1();
    r.push_back({"a2", a.a2});
    r.push_back({"a3", a.a3});
  } else if (k == "3D") {
    zero_a0a1();
  } else if (k == "4A") {
    r.push_back({"a0-a1", a.a0 - a.a1});
    r.push_back({"star1", star1(a)});
    r.push_back({"star2", star2(a)});
  } else if (k == "4B") {
    r.push_back({"a0-a1", a.a0 - a.a1});
    r.push_back({"a1-a2", a.a1 - a.a2});
    r.push_back({"a2-a3", a.a2 - a.a3});
  } else if (k == "4B'") {
    // c = -(a2 + a3)/2 eliminated from c (a2 + c)(a3 + c) = 1
    zero_a0a1();
    Elem d = a.a2 - a.a3;
    r.push_back({"(a2+a3)(a2-a3)^2-8", (a.a2 + a.a3) * d * d - K(8)});
  } else if (k == "5A") {
    zero_a0a1();
    r.push_back({"a2+2", a.a2 + K(2)});
    r.push_back({"a3+2", a.a3 + K(2)});
  } else if (k == "5A'") {
    zero_a0a1();
    r.push_back({"a2", a.a2});
    r.push_back({"a3-2", a.a3 - K(2)});
  } else if (k == "6E") {
    zero_a0a1();
    r.push_back({"a2-a3", a.a2 - a.a3});
  } else if (k == "8A") {
    r.push_back({"a0-a1", a.a0 - a.a1});
    r.push_back({"star1", star1(a)});
    r.push_back({"star2", star2(a)});
    r.push_back({"dagger", dagger(a)});
  } else if (k == "8A3") {
    zero_a0a1();
    r.push_back({"a2^2+1", a.a2 * a.a2 + f.one()});
    r.push_back({"a2+a3", a.a2 + a.a3});
  } else if (k == "12A") {
    zero_a0a1();
    r.push_back({"a2^2-a2a3+a3^2", a.a2 * a.a2 - a.a2 * a.a3 + a.a3 * a.a3});
    Elem sextic = -K(8);
    if (!a.a3.is_zero()) {
      Elem z = -a.a2 / a.a3;
      Elem c3 = a.a3 * a.a3 * a.a3;
      sextic = c3 * c3 + K(4) * z * (f.one() - z) * c3 - K(8);
    }
    r.push_back({"a3^6+4z(1-z)a3^3-8", sextic});
  }
  return r;
}

std::vector<std::string> stratum_requirements(const std::string& label, std::uint64_t p) {
  std::string th = stratum_theorem(label, p);
  std::string k = form_key(label, p);
  std::vector<std::string> r;
  if (k == "3A" || k == "3C" || k == "12A") r.push_back("primitive cube root of unity");
  if (k == "4A" || k == "12A" || k == "8A3") r.push_back("square root of -1");
  if (k == "8A" || k == "8A3") r.push_back("primitive 8th root of unity");
  if (k == "4A") r.push_back("rational solution (a2, a3) of (*) for the chosen a0");
  if (k == "8A") r.push_back("rational solution of (*) and (dagger), found by scanning a0");
  if (k == "12A") r.push_back("root of a3^6 + 4 zeta3 (1 - zeta3) a3^3 - 8");
  if (k == "4B'") r.push_back("root c of c (a2 + c)^2 + 1");
  if (th == "6E=4B=4A") r.push_back("three distinct roots of t^3 + a2 t + 1");
  r.push_back("splitting field of the surface for line-level claims");
  return r;
}

StratumInstance stratum_params(const std::string& label, Field field, const std::vector<Elem>& free_values,
                               std::uint64_t seed) {
  std::uint64_t p = field.characteristic();
  std::string th = stratum_theorem(label, p);
  std::string k = form_key(label, p);
  if (static_cast<int>(free_values.size()) > stratum_arity(label, p))
    throw Error(ErrorCode::spec_mismatch, label + " takes " + std::to_string(stratum_arity(label, p)) + " free values");
  std::mt19937_64 rng(seed);
  auto fv = [&](std::size_t i) { return pick_free(field, free_values, i, rng); };
  const Elem n = field.zero(), o = field.one();
  auto K = [&](std::int64_t v) { return field.from_int(v); };

  StratumInstance inst;
  inst.label = label;
  inst.characteristic = p;
  OctanomialParams& a = inst.params;
  a = {n, n, n, n};

  if (k == "2A") {
    Elem a0 = fv(0), a2 = fv(1), a3 = fv(2);
    a = {a0, a0, a2, a3};
  } else if (k == "2B") {
    Elem a0 = fv(0), a2 = fv(1);
    a = {a0, a0, a2, a2};
  } else if (k == "3A") {
    Elem z = need_root(field, 3, "3A");
    Elem a3 = fv(0);
    a = {n, n, -(z * a3), a3};
    inst.aux["zeta3"] = z;
  } else if (k == "3A3") {
    Elem a3 = fv(0);
    a = {n, n, -a3, a3};
  } else if (k == "3C") {
    inst.aux["zeta3"] = need_root(field, 3, label);
  } else if (k == "3D") {
    Elem a2 = fv(0), a3 = fv(1);
    a = {n, n, a2, a3};
  } else if (k == "4A") {
    Elem i = need_root(field, 4, "4A");
    Elem a0 = fv(0);
    auto sols = solve_star(a0);
    if (sols.empty()) throw Error(ErrorCode::no_solution_in_field, "(*) has no rational solution for a0 = " + a0.to_string());
    auto [a2, a3] = sols[rng() % sols.size()];
    a = {a0, a0, a2, a3};
    auto d = derived(a);
    inst.aux["i"] = i;
    inst.aux["alpha"] = d.alpha;
    inst.aux["beta"] = d.beta;
    inst.aux["A"] = d.A;
  } else if (k == "4B") {
    Elem a0 = fv(0);
    a = {a0, a0, a0, a0};
  } else if (k == "4B'") {
    Elem a2 = fv(0);
    // c (a2 + c)^2 + 1 = c^3 + 2 a2 c^2 + a2^2 c + 1
    auto cs = uni_roots(UniPoly(field, {o, a2 * a2, K(2) * a2, o}));
    std::set<std::uint64_t> seen;
    std::vector<Elem> distinct;
    for (const auto& c : cs)
      if (seen.insert(c.code()).second) distinct.push_back(c);
    if (distinct.empty()) throw Error(ErrorCode::no_solution_in_field, "c (a2 + c)^2 + 1 has no root for a2 = " + a2.to_string());
    Elem c = distinct[rng() % distinct.size()];
    a = {n, n, a2, -a2 - K(2) * c};
    inst.aux["c"] = c;
  } else if (k == "5A") {
    a = {n, n, K(-2), K(-2)};
  } else if (k == "5A'") {
    a = {n, n, n, K(2)};
  } else if (k == "6E") {
    Elem a2 = fv(0);
    a = {n, n, a2, a2};
    if (th == "6E=4B=4A") {
      auto mus = uni_roots(UniPoly(field, {o, a2, n, o}));
      std::set<std::uint64_t> seen;
      for (const auto& m : mus) seen.insert(m.code());
      if (mus.size() != 3 || seen.size() != 3)
        throw Error(ErrorCode::no_solution_in_field, "t^3 + a2 t + 1 lacks three distinct roots for a2 = " + a2.to_string());
      for (int j = 0; j < 3; ++j) inst.aux["mu" + std::to_string(j + 1)] = mus[j];
    }
  } else if (k == "8A") {
    Elem z8 = need_root(field, 8, "8A");
    auto q = field.cardinality();
    if (!q || *q > 200000) throw Error(ErrorCode::unsupported_field, "the 8A solver scans a0 over fields of at most 200000 elements");
    std::vector<OctanomialParams> found;
    for (const auto& a0 : field.elements()) {
      for (const auto& [a2, a3] : solve_star(a0)) {
        OctanomialParams c{a0, a0, a2, a3};
        auto d = derived(c);
        if (d.gamma.is_zero()) continue;
        if (dagger(c).is_zero()) found.push_back(c);
      }
    }
    if (found.empty()) throw Error(ErrorCode::no_solution_in_field, "(*) and (dagger) have no common rational solution");
    a = found[rng() % found.size()];
    auto d = derived(a);
    inst.aux["zeta8"] = z8;
    inst.aux["i"] = z8 * z8;
    inst.aux["alpha"] = d.alpha;
    inst.aux["beta"] = d.beta;
    inst.aux["A"] = d.A;
    inst.aux["gamma"] = d.gamma;
    inst.aux["delta"] = d.delta;
    Elem i = z8 * z8, two = K(2);
    inst.aux["S"] = -((o - i) * d.A + i) / two;
    inst.aux["T"] = d.alpha * (o - i) + two * d.beta * d.delta / d.gamma;
  } else if (k == "8A3") {
    Elem i = need_root(field, 4, label);
    Elem z8 = need_root(field, 8, label);
    // a zeta8 with zeta8^2 = i
    for (const auto& r : field.nth_roots(i, 2))
      if (r.pow(4) == -o) {
        z8 = r;
        break;
      }
    a = {n, n, i, -i};
    inst.aux["i"] = i;
    inst.aux["zeta8"] = z8;
  } else if (k == "12A") {
    Elem i = need_root(field, 4, "12A");
    Elem z0 = need_root(field, 3, "12A");
    std::vector<std::pair<Elem, Elem>> cand;
    for (const Elem& z : {z0, z0 * z0}) {
      auto roots = uni_roots(UniPoly(field, {K(-8), n, n, K(4) * z * (o - z), n, n, o}));
      std::set<std::uint64_t> seen;
      for (const auto& r : roots)
        if (seen.insert(r.code()).second) cand.push_back({z, r});
    }
    if (cand.empty()) throw Error(ErrorCode::no_solution_in_field, "a3^6 + 4 zeta3 (1 - zeta3) a3^3 - 8 has no root");
    auto [z, a3] = cand[rng() % cand.size()];
    a = {n, n, -(z * a3), a3};
    inst.aux["zeta3"] = z;
    inst.aux["i"] = i;
    inst.aux["a3'"] = (o - z * z) * a3;
  }

  for (const auto& [name, v] : constraint_residuals(label, p, a))
    if (!v.is_zero()) throw Error(ErrorCode::constraint_violation, label + " residual " + name + " = " + v.to_string());
  return inst;
}

StratumInstance find_stratum_instance(const std::string& label, std::uint64_t p, std::uint64_t seed, bool split,
                                      unsigned max_degree) {
  stratum_theorem(label, p);
  std::string last = "no field tried";
  for (unsigned m = 1; m <= max_degree; ++m) {
    if (std::pow(static_cast<double>(p), m) > 1.1e6) break;
    Field f = m == 1 ? Field::prime(p) : Field::finite(p, m);
    for (std::uint64_t t = 0; t < 24; ++t) {
      try {
        auto inst = stratum_params(label, f, {}, seed + 1000003 * t);
        HomForm h = octanomial_surface(inst.params);
        if (!is_smooth(h)) {
          last = "singular instance over " + f.spec().to_string();
          continue;
        }
        if (split && lines_on(h).size() != 27) {
          last = "instance over " + f.spec().to_string() + " is not split";
          continue;
        }
        return inst;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::no_solution_in_field && e.code() != ErrorCode::degenerate_parameters) throw;
        // root-of-unity failures do not depend on the seed
        bool roots = std::string(e.what()).find("root of unity") != std::string::npos;
        if (!roots || last == "no field tried") last = e.what();
        if (roots) break;
      }
    }
  }
  throw Error(ErrorCode::no_solution_in_field,
              "no " + label + " instance in characteristic " + std::to_string(p) + " up to degree " +
                  std::to_string(max_degree) + " (" + last + ")");
}

nlohmann::json StratumInstance::to_json() const {
  nlohmann::json aj = nlohmann::json::object();
  for (const auto& [k, v] : aux) aj[k] = v.to_string();
  return {{"label", label}, {"char", characteristic}, {"field", field().spec().to_string()},
          {"params", params.to_json()}, {"aux", aj}};
}

// ---------------------------------------------------------------------------
// automorphism matrices

namespace {

Elem aux_of(const StratumInstance& inst, const std::string& k) {
  auto it = inst.aux.find(k);
  if (it == inst.aux.end()) throw Error(ErrorCode::spec_mismatch, "instance lacks auxiliary value " + k);
  return it->second;
}

Mat4 swap01(Field f) { return Mat4::from_ints(f, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}); }
Mat4 swap23(Field f) { return Mat4::from_ints(f, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}); }

Mat4 mat_2B(Field f) { return Mat4::from_ints(f, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}); }

Mat4 mat_3A(const OctanomialParams& a, const std::optional<Elem>& zeta) {
  Field f = a.field();
  const Elem n = f.zero(), o = f.one();
  if (!zeta) return Mat4::from_ints(f, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, -1, 0, 0, 1, 0});
  Elem z2 = *zeta * *zeta;
  return from_rows({Row{o, n, n, n}, Row{n, o, n, n}, Row{n, n, n, z2}, Row{n, n, -z2, -z2}});
}

Mat4 mat_3C(const Elem& z) {
  const Elem o = z.field().one();
  return Mat4::diagonal({z, z, o, o});
}

Mat4 mat_3D(const OctanomialParams& a) {
  Field f = a.field();
  const Elem n = f.zero(), o = f.one();
  return from_rows({Row{n, o, n, n}, Row{-o, -o, -a.a3, -a.a2}, Row{n, n, o, n}, Row{n, n, n, o}});
}

Mat4 mat_4A(const OctanomialParams& a, const Elem& i) {
  Field f = a.field();
  auto d = derived(a);
  const Elem o = f.one(), two = f.from_int(2);
  Elem A = d.A;
  Elem d1 = A + (i - o) / two, d2 = A - (i + o) / two;
  return from_rows({Row{d1, d2, a.a3 * (A - o), a.a2 * (A - o)}, Row{d2, d1, a.a3 * (A - o), a.a2 * (A - o)},
                    Row{-two * d.alpha, -two * d.alpha, o - two * a.a3 * d.alpha, -two * a.a2 * d.alpha},
                    Row{-two * d.beta, -two * d.beta, -two * a.a3 * d.beta, o - two * a.a2 * d.beta}});
}

Mat4 mat_4B(Field f) { return Mat4::from_ints(f, {0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0}); }

Mat4 mat_5A(Field f) { return Mat4::from_ints(f, {-1, 0, 0, 1, -1, -1, 2, 2, 0, 0, 0, 1, -1, -1, 1, 1}); }

// x2 -> -(x2 + x3), taking the 5A form to the 5A' form
Mat4 change_5A_alt(Field f) { return Mat4::from_ints(f, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, -1, 0, 0, 0, 1}); }

Mat4 mat_6E(const OctanomialParams& a) {
  Field f = a.field();
  const Elem n = f.zero(), o = f.one();
  return from_rows({Row{n, o, n, n}, Row{-o, -o, -a.a2, -a.a2}, Row{n, n, n, o}, Row{n, n, o, n}});
}

Mat4 mat_4A_char2(const OctanomialParams& a, const Elem& m1, const Elem& m2) {
  Field f = a.field();
  const Elem n = f.zero(), o = f.one();
  Elem s1 = m1 * m1, s2 = m2 * m2, e = s2 * m1;
  return from_rows({Row{o, n, s2, s2}, Row{n, o, s1, s1}, Row{m1, m2, e, o + e}, Row{m1, m2, o + e, e}});
}

Mat4 mat_4B_char2(const OctanomialParams& a, const Elem& m1) {
  Field f = a.field();
  const Elem n = f.zero(), o = f.one();
  Elem s = m1 * m1, c = s * m1;
  return from_rows({Row{o, n, s, s}, Row{o, o, a.a2, a.a2}, Row{m1, m1, o + c, c}, Row{m1, m1, c, o + c}});
}

Mat4 mat_5A_char2(Field f) { return Mat4::from_ints(f, {1, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1}); }

Mat4 mat_12A_char2(const Elem& z) {
  Field f = z.field();
  const Elem n = f.zero(), o = f.one();
  Elem z2 = z * z;
  return from_rows({Row{z2, z2, n, z}, Row{z2, n, n, o}, Row{o, z2, o, z}, Row{n, n, n, o}});
}

// Coordinate change taking the 8A form to -x0^2 x1 + x1^2 x2 + c x2^2 x3 + d x3^3
// (the composite of four elementary substitutions).
Mat4 change_8A(const OctanomialParams& a) {
  Field f = a.field();
  auto d = derived(a);
  const Elem n = f.zero(), o = f.one(), h = o / f.from_int(2);
  Mat4 c1 = Mat4::from_ints(f, {1, 1, 0, 0, -1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1});
  Mat4 c2 = from_rows({Row{o, n, n, n}, Row{n, h, -a.a3 * h, -a.a2 * h}, Row{n, n, o, n}, Row{n, n, n, o}});
  Mat4 c3 = from_rows({Row{o, n, n, n}, Row{n, o, n, n}, Row{n, d.alpha, o, n}, Row{n, d.beta, n, o}});
  Mat4 c4 = from_rows({Row{o, n, n, n}, Row{n, o, n, n}, Row{n, n, d.gamma.inv(), -d.delta / d.gamma}, Row{n, n, n, o}});
  return c1 * c2 * c3 * c4;
}

Mat4 mat_8A(const OctanomialParams& a, const Elem& z8) {
  Field f = a.field();
  Mat4 k = change_8A(a);
  Elem i = z8 * z8;
  return k * Mat4::diagonal({z8, -i, -f.one(), f.one()}) * k.inverse();
}

// The displayed 8A matrix, kept for the report.
Mat4 mat_8A_display(const StratumInstance& inst) {
  const auto& a = inst.params;
  Field f = a.field();
  const Elem o = f.one(), two = f.from_int(2), h = o / two;
  Elem z8 = aux_of(inst, "zeta8"), i = aux_of(inst, "i"), S = aux_of(inst, "S"), T = aux_of(inst, "T");
  Elem beta = aux_of(inst, "beta"), g = aux_of(inst, "gamma"), d = aux_of(inst, "delta");
  Elem r13 = a.a2 * (S - h) + a.a3 * d / g;
  Row r0{S + z8 / two, S - z8 / two, a.a3 * (S + h), r13};
  Row r1{S - z8 / two, S + z8 / two, a.a3 * (S + h), r13};
  Row r2{T, T, a.a3 * T - o, a.a2 * T - two * d / g};
  Elem b = (o + i) * beta;
  Row r3{-b, -b, -a.a3 * b, o - a.a2 * b};
  return from_rows({r0, r1, r2, r3});
}

Mat4 mat_8A_char3(const Elem& i, const Elem& z8) {
  Field f = i.field();
  const Elem o = f.one();
  Elem u = o + i;
  return from_rows({Row{-z8 + i, z8 + i, u, -u}, Row{z8 + i, -z8 + i, u, -u}, Row{-u, -u, u, -i}, Row{-u, -u, -o + i, -u}});
}

Mat4 mat_12A_char3(const Elem& i) {
  Field f = i.field();
  const Elem o = f.one();
  return from_rows({Row{o - i, o + i, i, -i}, Row{o + i, o - i, i, -i}, Row{o, o, -(o + i), -o + i}, Row{o, o, o - i, i}});
}

Mat4 mat_4A_char3(const Elem& i) {
  Field f = i.field();
  const Elem o = f.one();
  return from_rows({Row{o - i, o + i, i, -i}, Row{o + i, o - i, i, -i}, Row{o, o, o - i, i}, Row{o, o, -i, o + i}});
}

Mat4 mat_12A(const StratumInstance& inst) {
  Field f = inst.field();
  const Elem n = f.zero(), o = f.one();
  Elem z = aux_of(inst, "zeta3"), i = aux_of(inst, "i"), b = aux_of(inst, "a3'");
  Elem z2 = z * z, two = f.from_int(2), six = f.from_int(6), twelve = f.from_int(12);
  Elem b2 = b * b, b3 = b2 * b;
  Elem e = b * (o + i) / (two * (o - z2));
  return from_rows({Row{o, n, n, n}, Row{(b3 - six + six * i) / twelve, i, e, e * (o + z2)}, Row{-b2 / six, n, n, -z2},
                    Row{-z * b2 / six, n, z2, z2}});
}

bool preserves(const HomForm& f, const Mat4& g) { return scalar_multiple(f.substitute(g), f).has_value(); }

}  // namespace

std::vector<NamedMatrix> stratum_automorphisms(const StratumInstance& inst) {
  const auto& a = inst.params;
  Field f = a.field();
  std::uint64_t p = inst.characteristic;
  std::string th = stratum_theorem(inst.label, p);
  HomForm h = octanomial_surface(a);
  std::vector<NamedMatrix> out;
  if (th == "2A") {
    out.push_back({"2A", "display: swap of x0 and x1", swap01(f)});
  } else if (th == "2B") {
    out.push_back({"2B", "display: swaps of x0, x1 and of x2, x3", mat_2B(f)});
  } else if (th == "3A") {
    std::optional<Elem> z;
    if (p != 3) z = aux_of(inst, "zeta3");
    out.push_back({"3A", p == 3 ? "display, characteristic 3" : "display", mat_3A(a, z)});
  } else if (th == "3C") {
    out.push_back({"3C", "display: diag(zeta3, zeta3, 1, 1)", mat_3C(aux_of(inst, "zeta3"))});
  } else if (th == "3D") {
    out.push_back({"3D", "display", mat_3D(a)});
  } else if (th == "4A") {
    out.push_back({"4A", "display", mat_4A(a, aux_of(inst, "i"))});
  } else if (th == "4B") {
    out.push_back({"4B", "display: permutation matrix", mat_4B(f)});
  } else if (th == "4B'") {
    // product of the harmonic homologies at q0 and at two Eckardt points on x2 = x3 = 0
    Elem c = aux_of(inst, "c");
    const Elem n = f.zero(), o = f.one();
    Point q0 = pt(a.a2 + c, -(a.a3 + c), o, -o);
    std::vector<std::pair<std::string, Point>> centers{{"q0", q0}, {"(1:0:0:0)", pt(o, n, n, n)},
                                                       {"(0:1:0:0)", pt(n, o, n, n)}, {"(1:-1:0:0)", pt(o, -o, n, n)}};
    std::vector<Mat4> inv;
    for (const auto& [name, q] : centers) inv.push_back(eckardt_involution(h, q));
    bool found = false;
    for (int x = 1; x < 4 && !found; ++x)
      for (int y = 1; y < 4 && !found; ++y) {
        if (x == y) continue;
        Mat4 m = inv[0] * inv[x] * inv[y];
        if (m.projective_order() == 4) {
          out.push_back({"4B", "product of the homologies at q0, " + centers[x].first + " and " + centers[y].first,
                         m.normalized()});
          found = true;
        }
      }
    if (!found) throw Error(ErrorCode::identity_failure, "no product of homologies has order 4");
  } else if (th == "5A") {
    out.push_back({"5A", "display", mat_5A(f)});
  } else if (th == "5A'") {
    Mat4 c = change_5A_alt(f);
    out.push_back({"5A", "5A display conjugated by x2 -> -(x2 + x3)", c.inverse() * mat_5A(f) * c});
  } else if (th == "6E") {
    out.push_back({"6E", "display", mat_6E(a)});
  } else if (th == "8A") {
    out.push_back({"8A", "K diag(zeta8, -i, -1, 1) K^-1 with K the normalizing coordinate change",
                   mat_8A(a, aux_of(inst, "zeta8"))});
  } else if (th == "12A") {
    out.push_back({"12A", "display", mat_12A(inst)});
  } else if (th == "6E=4B=4A") {
    out.push_back({"6E", "display, characteristic 2", mat_6E(a)});
    std::array<Elem, 3> mu{aux_of(inst, "mu1"), aux_of(inst, "mu2"), aux_of(inst, "mu3")};
    std::optional<Mat4> m4a, m4b;
    for (int x = 0; x < 3 && !m4a; ++x)
      for (int y = 0; y < 3 && !m4a; ++y) {
        if (x == y) continue;
        Mat4 m = mat_4A_char2(a, mu[x], mu[y]);
        if (preserves(h, m) && m.projective_order() == 4) {
          m4a = m;
          out.push_back({"4A", "display with (mu1, mu2) = (" + mu[x].to_string() + ", " + mu[y].to_string() + ")", m});
        }
      }
    for (int x = 0; x < 3 && !m4b; ++x) {
      Mat4 m = mat_4B_char2(a, mu[x]);
      if (preserves(h, m) && m.projective_order() == 4) {
        m4b = m;
        out.push_back({"4B", "display with mu1 = " + mu[x].to_string(), m});
      }
    }
    if (!m4a || !m4b) throw Error(ErrorCode::identity_failure, "no mu assignment gives the 4A and 4B matrices");
  } else if (th == "3C=5A=12A") {
    Elem z = aux_of(inst, "zeta3");
    out.push_back({"3C", "display: diag(zeta3, zeta3, 1, 1)", mat_3C(z)});
    out.push_back({"5A", "display, characteristic 2", mat_5A_char2(f)});
    out.push_back({"12A", "display, characteristic 2", mat_12A_char2(z)});
  } else if (th == "8A=12A") {
    Elem i = aux_of(inst, "i"), z8 = aux_of(inst, "zeta8");
    out.push_back({"8A", "display, characteristic 3", mat_8A_char3(i, z8)});
    out.push_back({"12A", "display, characteristic 3", mat_12A_char3(i)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// verification

namespace {

int numeral(const std::string& type) { return std::stoi(type.substr(0, type.size() - 1)); }

// g fixes every listed point, with one common eigenvalue
bool fixes_pointwise(const Mat4& g, const std::vector<Point>& pts) {
  std::optional<Elem> ev;
  for (const auto& v : pts) {
    Point w = g.apply(v);
    int k = 0;
    while (v[k].is_zero()) ++k;
    Elem c = w[k] / v[k];
    for (int j = 0; j < 4; ++j)
      if (w[j] != c * v[j]) return false;
    if (ev && *ev != c) return false;
    ev = c;
  }
  return true;
}

// plane h (as a linear form) is g-invariant: h^T g proportional to h^T
bool plane_invariant(const Mat4& g, const Point& h) {
  Field f = g.field();
  Point r{f.zero(), f.zero(), f.zero(), f.zero()};
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) r[j] += h[i] * g(i, j);
  return normalize_point(r) == normalize_point(h);
}

bool on_plane(const Point& h, const Point& x) {
  Elem s = h[0] * x[0];
  for (int i = 1; i < 4; ++i) s += h[i] * x[i];
  return s.is_zero();
}

Claim claim(std::string name, std::string expected, std::string got, bool pass) {
  return {std::move(name), std::move(expected), std::move(got), pass};
}

Claim bool_claim(const std::string& name, bool v) { return claim(name, "true", v ? "true" : "false", v); }

std::map<std::string, int> tag_counts(const e6::Perm& perm) {
  std::map<std::string, int> m;
  for (const auto& o : e6::orbit_partition(perm)) ++m[e6::to_string(o.tag)];
  return m;
}

std::string tags_string(const std::map<std::string, int>& m) {
  std::string s;
  for (const auto& [k, v] : m) s += (s.empty() ? "" : " ") + k + "=" + std::to_string(v);
  return s;
}

// orbit patterns of the catalogued orbit lists
std::optional<std::map<std::string, int>> expected_tags(const std::string& type) {
  if (type == "2A") return std::map<std::string, int>{{"invariant", 3}, {"pair", 12}};
  if (type == "2B") return std::map<std::string, int>{{"invariant", 7}, {"pair", 10}};
  if (type == "3A") return std::map<std::string, int>{{"tritangent-trio", 9}};
  if (type == "3C") return std::map<std::string, int>{{"invariant", 9}, {"skew-triple", 6}};
  if (type == "3D") return std::map<std::string, int>{{"skew-triple", 6}, {"tritangent-trio", 3}};
  if (type == "5A") return std::map<std::string, int>{{"invariant", 2}, {"other", 5}};
  return std::nullopt;
}

struct SplitData {
  Embedding emb;
  HomForm f;
  SplitSurface s;
};

std::string label_or_signature(const e6::Perm& p) {
  auto l = e6::WeylGroup::instance().label_of(p);
  if (l) return *l;
  return "unlabeled(" + e6::signature(p).cycle_string() + ")";
}

}  // namespace

bool StratumReport::pass() const {
  if (claims.empty()) return false;
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
}

nlohmann::json StratumReport::to_json() const {
  nlohmann::json res = nlohmann::json::object();
  for (const auto& [k, v] : residuals) res[k] = v.to_string();
  nlohmann::json mats = nlohmann::json::array();
  for (const auto& m : matrices) {
    nlohmann::json tags = nlohmann::json::object();
    for (const auto& [k, v] : m.orbit_tags) tags[k] = v;
    mats.push_back({{"type", m.m.type},
                    {"source", m.m.source},
                    {"automorphism", m.m.matrix.to_json()},
                    {"lambda", m.lambda ? nlohmann::json(m.lambda->to_string()) : nlohmann::json()},
                    {"order", m.order ? nlohmann::json(*m.order) : nlohmann::json()},
                    {"weyl_class", m.weyl_class ? nlohmann::json(*m.weyl_class) : nlohmann::json()},
                    {"cycle_type", m.cycle_type},
                    {"orbit_tags", tags}});
  }
  nlohmann::json cl = nlohmann::json::array();
  for (const auto& c : claims)
    cl.push_back({{"name", c.name}, {"expected", c.expected}, {"got", c.got}, {"pass", c.pass}});
  nlohmann::json j{{"label", label},
                   {"theorem", theorem},
                   {"char", characteristic},
                   {"field", field},
                   {"params", instance.params.to_json()},
                   {"aux", instance.to_json()["aux"]},
                   {"constraints_residuals", res},
                   {"matrices", mats},
                   {"claims", cl},
                   {"diagnostics", diagnostics},
                   {"pass", pass()}};
  // the first matrix, flattened for quick reading
  if (!mats.empty()) {
    j["automorphism"] = mats[0]["automorphism"];
    j["lambda"] = mats[0]["lambda"];
    j["order"] = mats[0]["order"];
    j["weyl_class"] = mats[0]["weyl_class"];
    j["orbit_tags"] = mats[0]["orbit_tags"];
  }
  return j;
}

StratumReport verify_stratum(const StratumInstance& inst, unsigned max_split_degree) {
  StratumReport rep;
  const auto& a = inst.params;
  Field fld = a.field();
  std::uint64_t p = inst.characteristic;
  rep.label = inst.label;
  rep.theorem = stratum_theorem(inst.label, p);
  rep.characteristic = p;
  rep.field = fld.spec().to_string();
  rep.instance = inst;
  const std::string& th = rep.theorem;
  const Elem n = fld.zero(), o = fld.one();

  rep.residuals = constraint_residuals(inst.label, p, a);
  {
    std::string bad;
    for (const auto& [k, v] : rep.residuals)
      if (!v.is_zero()) bad += (bad.empty() ? "" : ", ") + k + "=" + v.to_string();
    rep.claims.push_back(claim("constraints", "all residuals zero", bad.empty() ? "all residuals zero" : bad, bad.empty()));
  }
  HomForm f = octanomial_surface(a);
  bool smooth = is_smooth(f);
  rep.claims.push_back(bool_claim("smooth", smooth));
  if (!smooth) return rep;

  std::vector<NamedMatrix> mats;
  try {
    mats = stratum_automorphisms(inst);
  } catch (const Error& e) {
    rep.claims.push_back(claim("automorphism matrices", "constructed", e.what(), false));
    return rep;
  }

  std::optional<SplitData> sd;
  if (auto emb = splitting_extension(f, max_split_degree)) {
    HomForm F = embed(*emb, f);
    sd = SplitData{*emb, F, split_surface(F)};
    rep.diagnostics["splitting_field"] = emb->target().spec().to_string();
  } else {
    rep.diagnostics["splitting_field"] = nullptr;
  }
  auto perm_of = [&](const Mat4& g) { return induced_permutation(sd->f, sd->s.marking, embed(sd->emb, g)); };

  for (const auto& nm : mats) {
    MatrixReport mr;
    mr.m = nm;
    const std::string& t = nm.type;
    mr.lambda = scalar_multiple(f.substitute(nm.matrix), f);
    mr.order = nm.matrix.projective_order();
    rep.claims.push_back(claim(t + " preserves f", "f o g = lambda f",
                               mr.lambda ? "lambda = " + mr.lambda->to_string() : "not proportional", mr.lambda.has_value()));
    int want = numeral(t);
    rep.claims.push_back(claim(t + " order", std::to_string(want), mr.order ? std::to_string(*mr.order) : "none",
                               mr.order == want));
    if (mr.lambda && sd) {
      e6::Perm perm = perm_of(nm.matrix);
      mr.weyl_class = label_or_signature(perm);
      mr.cycle_type = e6::signature(perm).cycle_string();
      mr.orbit_tags = tag_counts(perm);
      rep.claims.push_back(claim(t + " Weyl class", t, *mr.weyl_class, *mr.weyl_class == t));
      if (auto et = expected_tags(t))
        rep.claims.push_back(claim(t + " orbit tags", tags_string(*et), tags_string(mr.orbit_tags), *et == mr.orbit_tags));
      auto power_claim = [&](int k, const std::string& want_class) {
        std::string got = label_or_signature(e6::power(perm, k));
        rep.claims.push_back(claim(t + "^" + std::to_string(k) + " class", want_class, got, got == want_class));
      };
      if (t == "4A") power_claim(2, "2A");
      if (t == "4B") power_claim(2, "2B");
      if (t == "6E") {
        power_claim(2, "3D");
        power_claim(3, "2A");
      }
      if (t == "8A") power_claim(2, "4A");
      if (t == "12A") power_claim(4, "3A");
    } else if (mr.lambda) {
      rep.claims.push_back(claim(t + " Weyl class", t, "no splitting field of degree <= " + std::to_string(max_split_degree), false));
    }
    if (t == "12A") {
      auto o3 = mat_pow(nm.matrix, 3).projective_order();
      rep.claims.push_back(claim("12A^3 order", "4", o3 ? std::to_string(*o3) : "none", o3 == 4));
    }
    rep.matrices.push_back(mr);
  }
  const Mat4& g = mats.front().matrix;

  auto eckardt_claim = [&](const std::string& name, const Point& q) {
    rep.claims.push_back(bool_claim(name + " " + point_to_string(q) + " is an Eckardt point", is_eckardt_point(f, q)));
  };
  auto tangent_claim = [&](const Point& q, const Point& plane) {
    Point got = tangent_plane(f, q);
    Point want = normalize_point(plane);
    rep.claims.push_back(claim("tangent plane at " + point_to_string(q), point_to_string(want), point_to_string(got), got == want));
  };
  // trihedral line x2 = x3 = 0 with the three Eckardt points of the 3D form
  auto trihedral_claims = [&] {
    for (const auto& q : {pt(n, o, n, n), pt(o, n, n, n), pt(o, -o, n, n)}) eckardt_claim("trihedral", q);
    if (!sd) return;
    ProjLine line = ProjLine::through(embed(sd->emb, pt(o, n, n, n)), embed(sd->emb, pt(n, o, n, n)));
    bool found = false;
    std::size_t eck = 0;
    for (const auto& t : trihedral_lines(sd->f, sd->s.marking))
      if (t.line == line) {
        found = true;
        eck = t.eckardt.size();
      }
    rep.claims.push_back(claim("x2 = x3 = 0 is a trihedral line", "3 Eckardt points",
                               found ? std::to_string(eck) + " Eckardt points" : "not trihedral", found && eck == 3));
  };

  if (th == "2A") {
    eckardt_claim("Eckardt point", pt(o, -o, n, n));
    tangent_claim(pt(o, -o, n, n), pt(o, o, a.a3, a.a2));
    rep.claims.push_back(bool_claim("axis x0 - x1 = 0 fixed pointwise", fixes_pointwise(g, {pt(o, o, n, n), pt(n, n, o, n), pt(n, n, n, o)})));
  } else if (th == "2B") {
    ProjLine l = ProjLine::meet(pt(a.a0, a.a0, o, o), pt(o, o, a.a2, a.a2));
    for (const auto& q : {pt(o, -o, n, n), pt(n, n, o, -o)}) {
      eckardt_claim("Eckardt point", q);
      rep.claims.push_back(bool_claim("fixed line contains " + point_to_string(q), l.contains(q)));
    }
    rep.claims.push_back(bool_claim("line fixed pointwise", fixes_pointwise(g, {l.first(), l.second()})));
    rep.claims.push_back(bool_claim("fixed line lies on the surface", l.lies_on(f)));
  } else if (th == "3A") {
    std::vector<Point> axis;
    if (p == 3)
      axis = {pt(o, n, n, n), pt(n, o, n, n), pt(n, n, o, o)};
    else
      axis = {pt(o, n, n, n), pt(n, o, n, n), pt(n, n, o, aux_of(inst, "zeta3"))};
    rep.claims.push_back(bool_claim(p == 3 ? "axis x2 - x3 = 0 fixed pointwise" : "axis zeta3 x2 - x3 = 0 fixed pointwise",
                                    fixes_pointwise(g, axis)));
  } else if (th == "3C") {
    Elem z = aux_of(inst, "zeta3");
    Mat4 c = from_rows({Row{o, z, n, n}, Row{z, o, n, n}, Row{n, n, o, z}, Row{n, n, z, o}});
    HomForm fermat = HomForm::variable(fld, 0).pow(3) + HomForm::variable(fld, 1).pow(3) + HomForm::variable(fld, 2).pow(3) +
                     HomForm::variable(fld, 3).pow(3);
    rep.claims.push_back(bool_claim("coordinate change gives the Fermat form", scalar_multiple(f.substitute(c), fermat).has_value()));
  } else if (th == "3D") {
    trihedral_claims();
    rep.claims.push_back(bool_claim("line x2 = x3 = 0 is invariant", plane_invariant(g, pt(n, n, o, n)) && plane_invariant(g, pt(n, n, n, o))));
  } else if (th == "4A") {
    if (sd) {
      // the display is the conjugate of diag(i, -1, 1, 1); nothing further to check
    }
  } else if (th == "4B") {
    rep.claims.push_back(bool_claim("plane x0 + x1 + x2 + x3 = 0 is invariant", plane_invariant(g, pt(o, o, o, o))));
  } else if (th == "4B'") {
    Elem c = aux_of(inst, "c");
    Point q0 = pt(a.a2 + c, -(a.a3 + c), o, -o);
    eckardt_claim("q0", q0);
    tangent_claim(q0, pt(o, o, a.a3 + c, a.a2 + c));
    rep.claims.push_back(bool_claim("c (a2 + c)(a3 + c) = 1", (c * (a.a2 + c) * (a.a3 + c)).is_one()));
    trihedral_claims();
  } else if (th == "5A'") {
    HomForm f5 = octanomial_surface(OctanomialParams::from_ints(fld, 0, 0, -2, -2));
    rep.claims.push_back(bool_claim("x2 -> -(x2 + x3) takes the 5A form to this form", f5.substitute(change_5A_alt(fld)) == f));
  } else if (th == "6E") {
    Point q = pt(n, n, o, -o);
    eckardt_claim("Eckardt point", q);
    tangent_claim(q, pt(n, n, o, o));
    trihedral_claims();
    Mat4 g3 = mat_3D(a), g2 = swap23(fld);
    rep.claims.push_back(bool_claim("display is the product of commuting 3D and 2A matrices",
                                    (g3 * g2).projectively_equal(g) && (g3 * g2) == (g2 * g3)));
  } else if (th == "8A") {
    Mat4 disp = mat_8A_display(inst);
    bool ok = preserves(f, disp);
    rep.diagnostics["display_preserves_f"] = ok;
    rep.diagnostics["display"] = disp.to_json();
  } else if (th == "12A") {
    // g^3 and g^4 are covered above
  } else if (th == "6E=4B=4A") {
    Point cpt = pt(n, n, o, o);
    eckardt_claim("canonical point", cpt);
    tangent_claim(cpt, pt(n, n, o, o));
    nlohmann::json assign = nlohmann::json::array();
    std::array<Elem, 3> mu{aux_of(inst, "mu1"), aux_of(inst, "mu2"), aux_of(inst, "mu3")};
    for (const auto& m : mu) eckardt_claim("t_mu", pt(o, o, m, m));
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        if (x == y) continue;
        Mat4 m = mat_4A_char2(a, mu[x], mu[y]);
        nlohmann::json e{{"matrix", "4A"}, {"mu1", mu[x].to_string()}, {"mu2", mu[y].to_string()}, {"preserves_f", preserves(f, m)}};
        if (preserves(f, m) && sd) e["weyl_class"] = label_or_signature(perm_of(m));
        assign.push_back(e);
      }
    for (int x = 0; x < 3; ++x) {
      Mat4 m = mat_4B_char2(a, mu[x]);
      nlohmann::json e{{"matrix", "4B"}, {"mu1", mu[x].to_string()}, {"preserves_f", preserves(f, m)}};
      if (preserves(f, m) && sd) e["weyl_class"] = label_or_signature(perm_of(m));
      assign.push_back(e);
    }
    rep.diagnostics["mu_assignments"] = assign;
    if (sd) {
      Point plane = embed(sd->emb, cpt);
      int cnt = 0;
      for (const auto& e : eckardt_points(sd->s.marking))
        if (on_plane(plane, e.point)) ++cnt;
      rep.claims.push_back(claim("Eckardt points on x2 + x3 = 0", "13", std::to_string(cnt), cnt == 13));
    }
  } else if (th == "3C=5A=12A") {
    Elem z = aux_of(inst, "zeta3");
    Mat4 c = from_rows({Row{o, z, n, n}, Row{z, o, n, n}, Row{n, n, o, z}, Row{n, n, z, o}});
    HomForm fermat = HomForm::variable(fld, 0).pow(3) + HomForm::variable(fld, 1).pow(3) + HomForm::variable(fld, 2).pow(3) +
                     HomForm::variable(fld, 3).pow(3);
    rep.claims.push_back(bool_claim("coordinate change gives the Fermat form", scalar_multiple(f.substitute(c), fermat).has_value()));
    if (sd) {
      auto cnt = eckardt_points(sd->s.marking).size();
      rep.claims.push_back(claim("Eckardt points", "45", std::to_string(cnt), cnt == 45));
    }
  } else if (th == "8A=12A") {
    Elem i = aux_of(inst, "i");
    auto d = derived(a);
    rep.claims.push_back(claim("gamma", (-i).to_string(), d.gamma.to_string(), d.gamma == -i));
    rep.claims.push_back(claim("delta", i.to_string(), d.delta.to_string(), d.delta == i));
    Mat4 m3 = mat_3A(a, std::nullopt), m4 = mat_4A_char3(i);
    rep.claims.push_back(bool_claim("auxiliary 4A matrix preserves f", preserves(f, m4)));
    rep.claims.push_back(bool_claim("4A matrix agrees with the 4A display", m4.projectively_equal(mat_4A(a, i))));
    rep.claims.push_back(bool_claim("3A and 4A matrices commute", (m3 * m4).projectively_equal(m4 * m3)));
    rep.claims.push_back(bool_claim("3A times 4A is the 12A display", (m3 * m4).projectively_equal(mats[1].matrix)));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// specialization graph

std::vector<SpecializationEdge> specialization_graph() {
  std::vector<SpecializationEdge> e;
  auto add = [&](const char* from, const char* to, bool pres) { e.push_back({from, to, pres, false, ""}); };
  for (auto [from, to, pres] : std::vector<std::tuple<const char*, const char*, bool>>{
      {"1A", "2A", true}, {"2A", "2B", true}, {"2A", "3D", true},  {"2A", "4A", true},  {"2B", "4B", true},
      {"2B", "6E", true}, {"3D", "6E", true}, {"3D", "4B", false}, {"3D", "3A", true},  {"4B", "5A", false},
      {"4B", "3C", true}, {"6E", "3C", true}, {"6E", "5A", true},  {"3A", "12A", true}, {"3A", "3C", true},
      {"4A", "8A", true}, {"4A", "12A", true},
      // alternative forms
      {"3D", "4B'", true}, {"2B", "4B'", false}, {"4B'", "5A'", true}})
    add(from, to, pres);

  for (auto& x : e)
    if (x.to == "4B'" || x.to == "5A'") x.note = "alternative form";
  return e;
}

std::vector<SpecializationEdge> specialization_check(std::uint64_t p, std::uint64_t seed, int samples) {
  auto edges = specialization_graph();
  for (auto& e : edges) {
    bool all = true;
    std::string why;
    bool sampled = false;
    for (int s = 0; s < samples && all; ++s) {
      StratumInstance inst;
      try {
        inst = find_stratum_instance(e.to, p, seed + 7919 * s, false, 6);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::no_solution_in_field && err.code() != ErrorCode::unsupported_field) throw;
        why = std::string("undecided: ") + err.what();
        break;
      }
      sampled = true;
      if (e.from == "1A") continue;
      for (const auto& [k, v] : constraint_residuals(e.from, p, inst.params))
        if (!v.is_zero()) {
          all = false;
          why = e.to + " instance " + inst.params.to_string() + " violates " + e.from + " constraint " + k;
        }
    }
    e.preserved = all && sampled;
    if (!why.empty()) e.note = e.note.empty() ? why : e.note + "; " + why;
  }
  return edges;
}

}  // namespace octa
