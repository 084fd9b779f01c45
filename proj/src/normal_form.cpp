#include "octa/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <thread>

namespace octa {

namespace {

HomForm var(Field f, int i) { return HomForm::variable(f, i); }

Point normalized_plane(const Point& p) { return normalize_point(p); }

}  // namespace

// ---------------------------------------------------------------------------
// parameters

bool OctanomialParams::operator==(const OctanomialParams& o) const {
  return a0 == o.a0 && a1 == o.a1 && a2 == o.a2 && a3 == o.a3;
}

bool OctanomialParams::operator<(const OctanomialParams& o) const {
  auto a = as_array(), b = o.as_array();
  for (int i = 0; i < 4; ++i)
    if (a[i].code() != b[i].code()) return a[i].code() < b[i].code();
  return false;
}

std::string OctanomialParams::to_string() const {
  return "(" + a0.to_string() + "," + a1.to_string() + "," + a2.to_string() + "," + a3.to_string() + ")";
}

nlohmann::json OctanomialParams::to_json() const {
  return nlohmann::json::array({a0.to_string(), a1.to_string(), a2.to_string(), a3.to_string()});
}

OctanomialParams OctanomialParams::from_json(Field f, const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::parse_error, "octanomial parameter must have 4 entries");
  return {elem_from_json(f, j[0]), elem_from_json(f, j[1]), elem_from_json(f, j[2]), elem_from_json(f, j[3])};
}

OctanomialParams OctanomialParams::from_ints(Field f, std::int64_t a0, std::int64_t a1, std::int64_t a2, std::int64_t a3) {
  return {f.from_int(a0), f.from_int(a1), f.from_int(a2), f.from_int(a3)};
}

HomForm octanomial_surface(const OctanomialParams& a) {
  Field f = a.field();
  const Elem o = f.one();
  return var(f, 0) * var(f, 1) * HomForm::linear({o, o, a.a3, a.a2}) +
         var(f, 2) * var(f, 3) * HomForm::linear({a.a1, a.a0, o, o});
}

// ---------------------------------------------------------------------------
// Cayley-Salmon

HomForm CayleySalmon::product() const {
  return HomForm::linear(planes[0]) * HomForm::linear(planes[1]) * HomForm::linear(planes[2]);
}

HomForm CayleySalmon::primed_product() const {
  return HomForm::linear(primed[0]) * HomForm::linear(primed[1]) * HomForm::linear(primed[2]);
}

nlohmann::json CayleySalmon::to_json() const {
  nlohmann::json p = nlohmann::json::array(), q = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) {
    p.push_back(point_to_json(planes[i]));
    q.push_back(point_to_json(primed[i]));
  }
  return {{"planes", p}, {"primed", q}, {"lambda", lambda.to_string()}, {"scale", scale.to_string()}};
}

CayleySalmon cayley_salmon(const HomForm& f, const MarkedLines& m, const e6::TriadPair& pair) {
  CayleySalmon cs;
  for (int i = 0; i < 3; ++i) {
    cs.planes[i] = normalized_plane(plane_through(m.lines[pair[i][0]], m.lines[pair[i][1]]));
    cs.primed[i] = normalized_plane(plane_through(m.lines[pair[0][i]], m.lines[pair[1][i]]));
  }
  // P + lambda Q - scale f = 0
  HomForm p = cs.product(), q = cs.primed_product();
  const std::size_t n = p.coeffs().size();
  Matrix sys(f.field(), n, 3);
  for (std::size_t r = 0; r < n; ++r) {
    sys(r, 0) = p.coeffs()[r];
    sys(r, 1) = q.coeffs()[r];
    sys(r, 2) = f.coeffs()[r];
  }
  auto ker = sys.kernel();
  if (ker.size() != 1 || ker[0][0].is_zero() || ker[0][1].is_zero() || ker[0][2].is_zero())
    throw Error(ErrorCode::identity_failure, "no Cayley-Salmon identity for this triad pair");
  Elem c = ker[0][0];
  cs.lambda = ker[0][1] / c;
  cs.scale = -ker[0][2] / c;
  if (p + q * cs.lambda != f * cs.scale) throw Error(ErrorCode::identity_failure, "Cayley-Salmon identity check failed");
  return cs;
}

HomForm determinant(const LinearMatrix& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Elem det_rep_check(const LinearMatrix& m, const HomForm& f) {
  HomForm d = determinant(m);
  auto l = scalar_multiple(d, f);
  if (!l) throw Error(ErrorCode::not_a_determinantal_rep, "determinant is not a multiple of the cubic form");
  return *l;
}

LinearMatrix det_rep_from(const CayleySalmon& cs) {
  Field f = cs.lambda.field();
  HomForm zero(f, 1);
  auto L = [](const Point& p) { return HomForm::linear(p); };
  HomForm p1 = L(cs.planes[0]), p2 = L(cs.planes[1]), p3 = L(cs.planes[2]);
  HomForm q1 = L(cs.primed[0]) * (-cs.lambda), q2 = L(cs.primed[1]), q3 = L(cs.primed[2]);
  return {{{zero, -q2, p3}, {p1, zero, -q3}, {-q1, p2, zero}}};
}

LinearMatrix transpose(const LinearMatrix& m) {
  LinearMatrix t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

// ---------------------------------------------------------------------------
// reduction

Ordering Ordering::from_index(int index) {
  if (index < 0 || index >= count) throw Error(ErrorCode::parse_error, "ordering index must be in 0..71");
  static const std::array<std::array<int, 2>, 6> choices{{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}};
  Ordering o;
  o.index = index;
  o.swap = index / 36 == 1;
  o.rows = choices[(index / 6) % 6];
  o.cols = choices[index % 6];
  return o;
}

nlohmann::json Reduction::to_json() const {
  return {{"T", T.to_json()}, {"params", params.to_json()}, {"scalar", scalar.to_string()}};
}

namespace {

struct Readout {
  Mat4 P;
  Elem a0, a1, a2, a3, b0, b1, b2, b3;
};

Readout read_coefficients(const HomForm& f, const CayleySalmon& cs, const Ordering& o) {
  const auto& rows = o.swap ? cs.primed : cs.planes;
  const auto& cols = o.swap ? cs.planes : cs.primed;
  std::array<Point, 4> y{rows[o.rows[0]], rows[o.rows[1]], cols[o.cols[0]], cols[o.cols[1]]};
  std::array<Elem, 16> e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e[i * 4 + j] = y[i][j];
  Readout r{Mat4(f.field(), e), {}, {}, {}, {}, {}, {}, {}, {}};
  HomForm g = f.substitute(r.P.inverse());
  r.a0 = g.coeff({2, 1, 0, 0});
  r.a1 = g.coeff({1, 2, 0, 0});
  r.a2 = g.coeff({1, 1, 1, 0});
  r.a3 = g.coeff({1, 1, 0, 1});
  r.b0 = g.coeff({1, 0, 1, 1});
  r.b1 = g.coeff({0, 1, 1, 1});
  r.b2 = g.coeff({0, 0, 2, 1});
  r.b3 = g.coeff({0, 0, 1, 2});
  if (r.a0.is_zero() || r.a1.is_zero() || r.b2.is_zero() || r.b3.is_zero())
    throw Error(ErrorCode::not_smooth, "a vanishing leading coefficient makes a coordinate point singular");
  return r;
}

std::vector<Elem> scaling_roots(const Readout& r) {
  Field f = r.a0.field();
  Elem t3 = r.b2 * r.b3 / (r.a0 * r.a1);
  auto roots = f.nth_roots(t3, 3);
  std::sort(roots.begin(), roots.end(), canonical_less);
  if (roots.empty()) {
    std::string suggestion = f.is_finite() ? "Fq:" + std::to_string(f.characteristic()) + ":" + std::to_string(3 * f.degree())
                                           : "an extension of degree 3";
    throw Error(ErrorCode::cube_root_unavailable,
                "b2 b3 / (a0 a1) = " + t3.to_string() + " is not a cube; " + suggestion + " suffices");
  }
  return roots;
}

Reduction finish_reduction(const HomForm& f, const Readout& r, const Elem& t, bool verify) {
  Field fld = f.field();
  Mat4 dinv = Mat4::diagonal({r.a0, r.a1, r.b2 / t, r.b3 / t});
  Reduction red;
  red.T = dinv * r.P;
  red.params = {r.b1 / (r.a1 * t), r.b0 / (r.a0 * t), r.a3 * t / r.b3, r.a2 * t / r.b2};
  red.scalar = (r.a0 * r.a1).inv();
  if (verify && f.substitute(red.T.inverse()) != octanomial_surface(red.params) * red.scalar)
    throw Error(ErrorCode::identity_failure, "reduction identity failed");
  (void)fld;
  return red;
}

}  // namespace

std::size_t cube_root_count(const HomForm& f, const MarkedLines& m, const e6::TriadPair& pair, const Ordering& o) {
  return scaling_roots(read_coefficients(f, cayley_salmon(f, m, pair), o)).size();
}

Reduction octanomial_reduce(const HomForm& f, const MarkedLines& m, const e6::TriadPair& pair, const Ordering& o,
                            std::size_t cube_root_choice) {
  auto cs = cayley_salmon(f, m, pair);
  auto r = read_coefficients(f, cs, o);
  auto roots = scaling_roots(r);
  if (cube_root_choice >= roots.size())
    throw Error(ErrorCode::cube_root_unavailable,
                "only " + std::to_string(roots.size()) + " cube root(s) in the field; adjoin zeta3 for three");
  return finish_reduction(f, r, roots[cube_root_choice], true);
}

ParamEnumeration enumerate_octanomial_params(const HomForm& f, const MarkedLines& m, bool verify, unsigned threads) {
  const auto& pairs = e6::triad_pairs();
  if (threads == 0) threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::mutex mu;
  std::set<OctanomialParams> all;
  std::size_t total = 0;
  std::exception_ptr failure;
  auto work = [&](unsigned id) {
    std::set<OctanomialParams> local;
    std::size_t count = 0;
    try {
      for (std::size_t k = id; k < pairs.size(); k += threads) {
        auto cs = cayley_salmon(f, m, pairs[k]);
        for (int oi = 0; oi < Ordering::count; ++oi) {
          auto r = read_coefficients(f, cs, Ordering::from_index(oi));
          for (const auto& t : scaling_roots(r)) {
            local.insert(finish_reduction(f, r, t, verify).params);
            ++count;
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> g(mu);
      if (!failure) failure = std::current_exception();
      return;
    }
    std::lock_guard<std::mutex> g(mu);
    all.insert(local.begin(), local.end());
    total += count;
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work, i);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return {std::vector<OctanomialParams>(all.begin(), all.end()), total};
}

// ---------------------------------------------------------------------------
// field helpers

HomForm embed(const Embedding& e, const HomForm& f) {
  std::vector<Elem> c;
  for (const auto& x : f.coeffs()) c.push_back(e(x));
  return HomForm(e.target(), f.degree(), c);
}

Mat4 embed(const Embedding& e, const Mat4& m) {
  std::array<Elem, 16> c;
  for (int i = 0; i < 16; ++i) c[i] = e(m(i / 4, i % 4));
  return Mat4(e.target(), c);
}

Point embed(const Embedding& e, const Point& p) { return {e(p[0]), e(p[1]), e(p[2]), e(p[3])}; }

std::optional<Embedding> splitting_extension(const HomForm& f, unsigned max_degree) {
  Field base = f.field();
  if (!base.is_finite()) throw Error(ErrorCode::unsupported_field, "splitting fields are searched over finite fields only");
  const std::uint64_t p = base.characteristic();
  const unsigned k = base.degree();
  for (unsigned m = 1; m <= max_degree; ++m) {
    // the Frobenius acts through an element of W(E6), whose orders are 1..6, 8, 9, 10, 12
    if (m == 7 || m == 11) continue;
    // the line search costs one root finding per field element
    if (std::pow(static_cast<double>(p), k * m) > 3e5) break;
    Field ext = m == 1 ? base : Field::finite(p, k * m);
    Embedding e(base, ext);
    HomForm g = embed(e, f);
    if (lines_on(g).size() == 27) return e;
  }
  return std::nullopt;
}

}  // namespace octa
