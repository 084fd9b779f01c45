#include "octa/surface.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace octa {

namespace {

Field field_of(const Point& p) { return p[0].field(); }

std::size_t rank_of(const std::vector<Point>& vs) {
  Matrix m(field_of(vs[0]), vs.size(), 4);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = vs[i][j];
  return m.rank();
}

Point to_point(const std::vector<Elem>& v) { return {v[0], v[1], v[2], v[3]}; }

/// Basis of the common kernel of the given linear forms.
std::vector<Point> common_kernel(const std::vector<Point>& forms) {
  Matrix m(field_of(forms[0]), forms.size(), 4);
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = forms[i][j];
  std::vector<Point> r;
  for (const auto& v : m.kernel()) r.push_back(to_point(v));
  return r;
}

bool proportional(const Point& a, const Point& b) {
  // a x b = 0 componentwise on all 2x2 minors
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return !is_zero_point(a) && !is_zero_point(b);
}

Elem dot(const Point& a, const Point& b) {
  Elem s = a[0] * b[0];
  for (int i = 1; i < 4; ++i) s += a[i] * b[i];
  return s;
}

std::string key_of(const Point& p) {
  std::string s;
  for (const auto& x : p) s += std::to_string(x.code()) + ",";
  return s;
}

/// Rows of the multiplication map (multipliers of degree `mult`) x g into the
/// forms of degree deg(g) + mult.
void append_multiples(Matrix& m, std::size_t& row, const HomForm& g, int mult) {
  const auto& gm = monomials(g.degree());
  for (const auto& e : monomials(mult)) {
    for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
      if (g.coeffs()[i].is_zero()) continue;
      Exponents s;
      for (int k = 0; k < 4; ++k) s[k] = e[k] + gm[i][k];
      m(row, monomial_index(s)) = g.coeffs()[i];
    }
    ++row;
  }
}

/// Projective zeros of a nonzero binary form sum b_k u^(d-k) v^k, as (u, v).
std::vector<std::pair<Elem, Elem>> binary_roots(const std::vector<Elem>& b) {
  Field f = b[0].field();
  std::vector<std::pair<Elem, Elem>> r;
  const std::size_t d = b.size() - 1;
  if (b[0].is_zero()) r.emplace_back(f.one(), f.zero());
  // dehomogenize at v = 1: sum b_k u^(d-k)
  std::vector<Elem> c(d + 1, f.zero());
  for (std::size_t k = 0; k <= d; ++k) c[d - k] = b[k];
  UniPoly p(f, c);
  if (p.degree() < 1) return r;
  for (const auto& u : distinct_roots(p)) r.emplace_back(u, f.one());
  return r;
}

Elem eval_binary(const std::vector<Elem>& b, const Elem& u, const Elem& v) {
  Field f = u.field();
  Elem s = f.zero();
  const std::size_t d = b.size() - 1;
  for (std::size_t k = 0; k <= d; ++k) s += b[k] * u.pow(static_cast<std::int64_t>(d - k)) * v.pow(static_cast<std::int64_t>(k));
  return s;
}

bool all_zero(const std::vector<Elem>& v) {
  return std::all_of(v.begin(), v.end(), [](const Elem& x) { return x.is_zero(); });
}

/// Tangent-plane section at a point p of f: with (p, u, v) a basis of the
/// tangent plane, f(s p + a u + b v) = s c2(a, b) + c3(a, b).
struct TangentSection {
  Point u, v;
  std::vector<Elem> c2, c3;
};

TangentSection tangent_section(const HomForm& f, const Point& p) {
  Field fld = f.field();
  Point grad;
  auto parts = f.partials();
  for (int i = 0; i < 4; ++i) grad[i] = parts[i].eval(p);
  if (is_zero_point(grad)) throw Error(ErrorCode::not_smooth, "singular point " + point_to_string(p));
  auto tangent = common_kernel({grad});
  std::vector<Point> basis{p};
  for (const auto& t : tangent) {
    basis.push_back(t);
    if (rank_of(basis) < basis.size()) basis.pop_back();
    if (basis.size() == 3) break;
  }
  TangentSection t{basis[1], basis[2], std::vector<Elem>(3), std::vector<Elem>(4)};
  std::array<HomForm, 4> sub;
  for (int i = 0; i < 4; ++i) sub[i] = HomForm::linear({p[i], t.u[i], t.v[i], fld.zero()});
  HomForm g = f.compose(sub);  // in (s, a, b) = (x0, x1, x2)
  for (int k = 0; k <= 2; ++k) t.c2[k] = g.coeff({1, 2 - k, k, 0});
  for (int k = 0; k <= 3; ++k) t.c3[k] = g.coeff({0, 3 - k, k, 0});
  return t;
}

/// Lines on f through the point p of f.
void lines_through(const HomForm& f, const Point& p, std::set<ProjLine>& out) {
  auto t = tangent_section(f, p);
  if (all_zero(t.c2) && all_zero(t.c3)) throw Error(ErrorCode::not_smooth, "tangent plane section is a cone");
  const auto& base = all_zero(t.c2) ? t.c3 : t.c2;
  const auto& other = all_zero(t.c2) ? t.c2 : t.c3;
  for (const auto& [a, b] : binary_roots(base)) {
    if (!all_zero(other) && !eval_binary(other, a, b).is_zero()) continue;
    Point d;
    for (int i = 0; i < 4; ++i) d[i] = a * t.u[i] + b * t.v[i];
    out.insert(ProjLine::through(p, d));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ProjLine

ProjLine ProjLine::through(const Point& a, const Point& b) {
  Matrix m(field_of(a), 2, 4);
  for (int j = 0; j < 4; ++j) {
    m(0, j) = a[j];
    m(1, j) = b[j];
  }
  if (m.rref().size() != 2) throw Error(ErrorCode::singular_matrix, "points do not span a line");
  ProjLine l;
  for (int j = 0; j < 4; ++j) {
    l.p_[j] = m(0, j);
    l.q_[j] = m(1, j);
  }
  return l;
}

ProjLine ProjLine::meet(const Point& plane_a, const Point& plane_b) {
  auto k = common_kernel({plane_a, plane_b});
  if (k.size() != 2) throw Error(ErrorCode::singular_matrix, "planes do not meet in a line");
  return through(k[0], k[1]);
}

bool ProjLine::contains(const Point& x) const { return rank_of({p_, q_, x}) == 2; }

bool ProjLine::meets(const ProjLine& o) const { return rank_of({p_, q_, o.p_, o.q_}) <= 3; }

std::optional<Point> ProjLine::intersection(const ProjLine& o) const {
  Matrix m(field_of(p_), 4, 4);
  for (int i = 0; i < 4; ++i) {
    m(i, 0) = p_[i];
    m(i, 1) = q_[i];
    m(i, 2) = o.p_[i];
    m(i, 3) = o.q_[i];
  }
  auto k = m.kernel();
  if (k.size() != 1) return std::nullopt;
  Point r;
  for (int i = 0; i < 4; ++i) r[i] = k[0][0] * p_[i] + k[0][1] * q_[i];
  return normalize_point(r);
}

std::array<Point, 2> ProjLine::equations() const {
  auto k = common_kernel({p_, q_});
  return {normalize_point(k[0]), normalize_point(k[1])};
}

ProjLine ProjLine::transformed(const Mat4& g) const { return through(g.apply(p_), g.apply(q_)); }

bool ProjLine::lies_on(const HomForm& f) const { return all_zero(restrict_to_line(f, p_, q_)); }

bool ProjLine::operator==(const ProjLine& o) const { return p_ == o.p_ && q_ == o.q_; }

bool ProjLine::operator<(const ProjLine& o) const {
  for (int i = 0; i < 4; ++i)
    if (p_[i].code() != o.p_[i].code()) return p_[i].code() < o.p_[i].code();
  for (int i = 0; i < 4; ++i)
    if (q_[i].code() != o.q_[i].code()) return q_[i].code() < o.q_[i].code();
  return false;
}

std::string ProjLine::to_string() const { return point_to_string(p_) + "-" + point_to_string(q_); }

nlohmann::json ProjLine::to_json() const { return nlohmann::json::array({point_to_json(p_), point_to_json(q_)}); }

ProjLine ProjLine::from_json(Field f, const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::parse_error, "line must be two points");
  return through(point_from_json(f, j[0]), point_from_json(f, j[1]));
}

std::vector<Elem> restrict_to_line(const HomForm& f, const Point& a, const Point& b) {
  Field fld = f.field();
  const int d = f.degree();
  // powers[k][e] = (a_k s + b_k t)^e as coefficients of s^(e-j) t^j
  std::array<std::vector<std::vector<Elem>>, 4> powers;
  for (int k = 0; k < 4; ++k) {
    powers[k].push_back({fld.one()});
    for (int e = 1; e <= d; ++e) {
      const auto& prev = powers[k].back();
      std::vector<Elem> next(e + 1, fld.zero());
      for (int j = 0; j < e; ++j) {
        next[j] += prev[j] * a[k];
        next[j + 1] += prev[j] * b[k];
      }
      powers[k].push_back(std::move(next));
    }
  }
  std::vector<Elem> r(d + 1, fld.zero());
  const auto& ms = monomials(d);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (f.coeffs()[i].is_zero()) continue;
    std::vector<Elem> acc{f.coeffs()[i]};
    for (int k = 0; k < 4; ++k) {
      const auto& pk = powers[k][ms[i][k]];
      if (pk.size() == 1) {
        for (auto& x : acc) x *= pk[0];
        continue;
      }
      std::vector<Elem> next(acc.size() + pk.size() - 1, fld.zero());
      for (std::size_t x = 0; x < acc.size(); ++x)
        for (std::size_t y = 0; y < pk.size(); ++y) next[x + y] += acc[x] * pk[y];
      acc = std::move(next);
    }
    for (int j = 0; j <= d; ++j) r[j] += acc[j];
  }
  return r;
}

// ---------------------------------------------------------------------------
// smoothness and lines

bool is_smooth(const HomForm& f) {
  if (f.degree() != 3) throw Error(ErrorCode::spec_mismatch, "is_smooth expects a cubic form");
  if (f.is_zero()) return false;
  auto parts = f.partials();
  if (f.field().characteristic() != 3) {
    // the partials have no common zero iff they generate every quintic
    Matrix m(f.field(), 4 * monomials(3).size(), monomials(5).size());
    std::size_t row = 0;
    for (const auto& g : parts) append_multiples(m, row, g, 3);
    return m.rank() == monomials(5).size();
  }
  // characteristic 3: Euler's relation fails, so f joins the generators and
  // the degree bound comes from four cubics in the ideal
  Matrix m(f.field(), monomials(6).size() + 4 * monomials(7).size(), monomials(9).size());
  std::size_t row = 0;
  append_multiples(m, row, f, 6);
  for (const auto& g : parts) append_multiples(m, row, g, 7);
  return m.rank() == monomials(9).size();
}

std::vector<ProjLine> lines_on(const HomForm& f) {
  Field fld = f.field();
  if (!fld.is_finite()) throw Error(ErrorCode::unsupported_field, "line enumeration needs a finite field");
  if (!is_smooth(f)) throw Error(ErrorCode::not_smooth, "surface is singular");
  // Every line meets the plane x3 = 0, so it passes through a rational point
  // of the plane cubic f(x0, x1, x2, 0); the lines through a point p of the
  // surface are the common zeros of the quadratic and cubic terms of f on
  // the tangent plane at p.
  std::set<ProjLine> out;
  const Elem z = fld.zero(), o = fld.one();
  auto visit = [&](const Point& p) {
    if (f.eval(p).is_zero()) lines_through(f, p, out);
  };
  visit({z, z, o, z});
  auto handle_pencil = [&](const Elem& a, const Elem& b) {
    // points (a : b : x : 0)
    std::vector<Elem> c = restrict_to_line(f, {a, b, z, z}, {z, z, o, z});
    // c[j] is the coefficient of s^(3-j) x^j with s = 1
    UniPoly poly(fld, c);
    if (poly.coeffs().empty()) {
      for (const auto& x : fld.elements()) lines_through(f, {a, b, x, z}, out);
      return;
    }
    for (const auto& x : distinct_roots(poly)) lines_through(f, {a, b, x, z}, out);
  };
  handle_pencil(z, o);
  const std::uint64_t q = *fld.cardinality();
  for (std::uint64_t i = 0; i < q; ++i) handle_pencil(o, fld.element_at(i));
  return {out.begin(), out.end()};
}

std::vector<ProjLine> lines_on_exhaustive(const HomForm& f) {
  Field fld = f.field();
  if (!fld.is_finite()) throw Error(ErrorCode::unsupported_field, "line enumeration needs a finite field");
  const auto elems = fld.elements();
  std::vector<ProjLine> out;
  // reduced echelon 2x4 matrices with pivots c1 < c2
  for (int c1 = 0; c1 < 4; ++c1)
    for (int c2 = c1 + 1; c2 < 4; ++c2) {
      std::vector<int> free1, free2;
      for (int j = c1 + 1; j < 4; ++j)
        if (j != c2) free1.push_back(j);
      for (int j = c2 + 1; j < 4; ++j) free2.push_back(j);
      const std::size_t nfree = free1.size() + free2.size();
      std::vector<std::size_t> idx(nfree, 0);
      while (true) {
        Point a{fld.zero(), fld.zero(), fld.zero(), fld.zero()}, b = a;
        a[c1] = fld.one();
        b[c2] = fld.one();
        for (std::size_t k = 0; k < free1.size(); ++k) a[free1[k]] = elems[idx[k]];
        for (std::size_t k = 0; k < free2.size(); ++k) b[free2[k]] = elems[idx[free1.size() + k]];
        if (all_zero(restrict_to_line(f, a, b))) out.push_back(ProjLine::through(a, b));
        std::size_t k = 0;
        while (k < nfree && ++idx[k] == elems.size()) idx[k++] = 0;
        if (k == nfree) break;
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// markings

int MarkedLines::index_of(const ProjLine& l) const {
  for (int i = 0; i < 27; ++i)
    if (lines[i] == l) return i;
  return -1;
}

MarkedLines MarkedLines::relabeled(const e6::Perm& w) const {
  MarkedLines r;
  for (int i = 0; i < 27; ++i) r.lines[w[i]] = lines[i];
  return r;
}

std::array<std::array<int, 27>, 27> MarkedLines::incidence() const {
  std::array<std::array<int, 27>, 27> m{};
  for (int i = 0; i < 27; ++i)
    for (int j = 0; j < 27; ++j) m[i][j] = (i != j && lines[i].meets(lines[j])) ? 1 : 0;
  return m;
}

bool MarkedLines::verify() const {
  auto inc = incidence();
  for (int i = 0; i < 27; ++i)
    for (int j = 0; j < 27; ++j) {
      if (i != j && lines[i] == lines[j]) return false;
      if (inc[i][j] != (e6::meets(i, j) ? 1 : 0)) return false;
    }
  return true;
}

nlohmann::json MarkedLines::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (int i = 0; i < 27; ++i) j[e6::label(i)] = lines[i].to_json();
  return j;
}

MarkedLines marking_from_sixer(const std::vector<ProjLine>& lines, const std::array<int, 6>& sixer) {
  if (lines.size() != 27) throw Error(ErrorCode::configuration_mismatch, "a marking needs exactly 27 lines");
  MarkedLines m;
  std::vector<bool> used(27, false);
  for (int i = 0; i < 6; ++i) {
    m.lines[e6::E(i + 1)] = lines[sixer[i]];
    used[sixer[i]] = true;
  }
  for (int l = 0; l < 27; ++l) {
    if (used[l]) continue;
    std::vector<int> met;
    for (int i = 0; i < 6; ++i)
      if (lines[l].meets(lines[sixer[i]])) met.push_back(i + 1);
    if (met.size() == 5) {
      int missing = 21 - (met[0] + met[1] + met[2] + met[3] + met[4]);
      m.lines[e6::G(missing)] = lines[l];
    } else if (met.size() == 2) {
      m.lines[e6::F(met[0], met[1])] = lines[l];
    } else {
      throw Error(ErrorCode::configuration_mismatch, "line meets " + std::to_string(met.size()) + " lines of the sixer");
    }
  }
  if (!m.verify()) throw Error(ErrorCode::configuration_mismatch, "incidence differs from the 27-line configuration");
  return m;
}

MarkedLines marking_from(const std::vector<ProjLine>& lines) {
  if (lines.size() != 27) throw Error(ErrorCode::configuration_mismatch, "a marking needs exactly 27 lines");
  std::array<std::array<bool, 27>, 27> meet{};
  for (int i = 0; i < 27; ++i) {
    int count = 0;
    for (int j = 0; j < 27; ++j) {
      meet[i][j] = i != j && lines[i].meets(lines[j]);
      count += meet[i][j];
    }
    if (count != 10) throw Error(ErrorCode::configuration_mismatch, "a line meets " + std::to_string(count) + " others");
  }
  std::array<int, 6> chosen{};
  std::function<bool(int, int)> search = [&](int depth, int start) {
    if (depth == 6) return true;
    for (int l = start; l < 27; ++l) {
      bool skew = true;
      for (int k = 0; k < depth && skew; ++k) skew = !meet[l][chosen[k]];
      if (!skew) continue;
      chosen[depth] = l;
      if (search(depth + 1, l + 1)) return true;
    }
    return false;
  };
  if (!search(0, 0)) throw Error(ErrorCode::configuration_mismatch, "no six mutually skew lines");
  return marking_from_sixer(lines, chosen);
}

// ---------------------------------------------------------------------------
// planes, Eckardt points, trihedral lines

Point plane_through(const ProjLine& a, const ProjLine& b) {
  auto k = common_kernel({a.first(), a.second(), b.first(), b.second()});
  if (k.size() != 1) throw Error(ErrorCode::configuration_mismatch, "lines are not coplanar and distinct");
  return normalize_point(k[0]);
}

std::vector<TritangentPlane> tritangent_planes(const MarkedLines& m) {
  std::vector<TritangentPlane> out;
  for (const auto& t : e6::tritangent_trios()) {
    Point plane = plane_through(m.lines[t[0]], m.lines[t[1]]);
    const auto& c = m.lines[t[2]];
    if (!dot(plane, c.first()).is_zero() || !dot(plane, c.second()).is_zero())
      throw Error(ErrorCode::configuration_mismatch, "trio " + e6::label(t[0]) + "," + e6::label(t[1]) + "," + e6::label(t[2]) + " is not coplanar");
    out.push_back({plane, t});
  }
  return out;
}

std::vector<EckardtPoint> eckardt_points(const MarkedLines& m) {
  std::vector<EckardtPoint> out;
  for (const auto& t : e6::tritangent_trios()) {
    auto p = m.lines[t[0]].intersection(m.lines[t[1]]);
    if (p && m.lines[t[2]].contains(*p)) out.push_back({*p, t});
  }
  return out;
}

std::vector<TrihedralLine> trihedral_lines(const HomForm& f, const MarkedLines& m) {
  auto planes = tritangent_planes(m);
  std::map<e6::Trio, Point> plane_of;
  for (const auto& p : planes) plane_of[p.trio] = p.plane;
  auto eck = eckardt_points(m);
  std::vector<TrihedralLine> out;
  std::set<ProjLine> seen;
  for (const auto& pair : e6::triad_pairs()) {
    for (int side = 0; side < 2; ++side) {
      std::vector<Point> forms;
      for (int i = 0; i < 3; ++i) {
        e6::Trio t = side == 0 ? e6::Trio{pair[i][0], pair[i][1], pair[i][2]} : e6::Trio{pair[0][i], pair[1][i], pair[2][i]};
        std::sort(t.begin(), t.end());
        forms.push_back(plane_of.at(t));
      }
      auto k = common_kernel(forms);
      if (k.size() != 2) continue;
      ProjLine line = ProjLine::through(k[0], k[1]);
      if (line.lies_on(f) || !seen.insert(line).second) continue;
      TrihedralLine tl{line, pair, side == 1, {}};
      std::set<std::string> keys;
      for (const auto& e : eck)
        if (line.contains(e.point) && keys.insert(key_of(e.point)).second) tl.eckardt.push_back(e.point);
      out.push_back(std::move(tl));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// automorphisms

e6::Perm induced_permutation(const HomForm& f, const MarkedLines& m, const Mat4& g) {
  if (g.det().is_zero() || !scalar_multiple(f.substitute(g), f))
    throw Error(ErrorCode::not_an_automorphism, "matrix does not preserve the surface");
  e6::Perm p{};
  for (int i = 0; i < 27; ++i) {
    int j = m.index_of(m.lines[i].transformed(g));
    if (j < 0) throw Error(ErrorCode::not_an_automorphism, "image of a line is not among the marked lines");
    p[i] = static_cast<std::uint8_t>(j);
  }
  return p;
}

namespace {

/// Matrix sending the standard frame e0..e3, e0+..+e3 to the columns of pts.
std::optional<Matrix> frame_matrix(const std::array<Point, 5>& pts) {
  Field fld = field_of(pts[0]);
  Matrix a(fld, 4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = pts[j][i];
  auto c = a.solve({pts[4][0], pts[4][1], pts[4][2], pts[4][3]});
  if (!c || a.rank() < 4) return std::nullopt;
  for (int j = 0; j < 4; ++j) {
    if ((*c)[j].is_zero()) return std::nullopt;
    for (int i = 0; i < 4; ++i) a(i, j) *= (*c)[j];
  }
  return a;
}

bool general_position(const std::vector<Point>& pts) {
  // every four of the points (at most five) are independent
  const std::size_t n = pts.size();
  if (n <= 4) return rank_of(pts) == n;
  for (std::size_t skip = 0; skip < n; ++skip) {
    std::vector<Point> four;
    for (std::size_t i = 0; i < n; ++i)
      if (i != skip) four.push_back(pts[i]);
    if (rank_of(four) < 4) return false;
  }
  return true;
}

}  // namespace

std::vector<Automorphism> automorphism_group(const HomForm& f, const MarkedLines& m) {
  // intersection points of meeting lines, keyed by the label pair
  std::vector<std::pair<int, int>> pairs;
  std::map<std::pair<int, int>, Point> point_of;
  for (int a = 0; a < 27; ++a)
    for (int b = a + 1; b < 27; ++b)
      if (e6::meets(a, b)) {
        pairs.emplace_back(a, b);
        point_of[{a, b}] = *m.lines[a].intersection(m.lines[b]);
      }
  auto pt = [&](int a, int b) { return point_of.at({std::min(a, b), std::max(a, b)}); };

  // a frame of five intersection points in general position (first in order)
  std::vector<int> frame;
  std::function<bool(std::size_t)> pick = [&](std::size_t start) {
    if (frame.size() == 5) return true;
    for (std::size_t i = start; i < pairs.size(); ++i) {
      std::vector<Point> cand;
      for (int k : frame) cand.push_back(point_of[pairs[k]]);
      cand.push_back(point_of[pairs[i]]);
      if (!general_position(cand)) continue;
      frame.push_back(static_cast<int>(i));
      if (pick(i + 1)) return true;
      frame.pop_back();
    }
    return false;
  };
  if (!pick(0)) throw Error(ErrorCode::configuration_mismatch, "no five intersection points in general position");
  std::array<Point, 5> src;
  for (int k = 0; k < 5; ++k) src[k] = point_of[pairs[frame[k]]];
  Matrix src_inv = frame_matrix(src)->inverse();

  std::vector<Automorphism> out;
  for (const auto& w : e6::WeylGroup::instance().elements()) {
    std::array<Point, 5> dst;
    for (int k = 0; k < 5; ++k) dst[k] = pt(w[pairs[frame[k]].first], w[pairs[frame[k]].second]);
    auto dm = frame_matrix(dst);
    if (!dm) continue;
    Mat4 g(*dm * src_inv);
    // the matrix must carry every intersection point to its relabeled image;
    // then it carries each line to its image and the induced permutation is w
    bool ok = true;
    for (const auto& [a, b] : pairs) {
      if (!proportional(g.apply(point_of[{a, b}]), pt(w[a], w[b]))) {
        ok = false;
        break;
      }
    }
    if (!ok || !scalar_multiple(f.substitute(g), f)) continue;
    out.push_back({g.normalized(), w});
  }
  return out;
}

// ---------------------------------------------------------------------------
// six points

namespace {

Point lift(const PlanePoint& p) { return {p[0], p[1], p[2], p[0].field().zero()}; }

Elem det3(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

void check_general_position(Field f, const std::array<PlanePoint, 6>& pts) {
  for (const auto& p : pts)
    if (p[0].is_zero() && p[1].is_zero() && p[2].is_zero())
      throw Error(ErrorCode::not_general_position, "zero vector is not a point");
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int k = j + 1; k < 6; ++k)
        if (det3(pts[i], pts[j], pts[k]).is_zero())
          throw Error(ErrorCode::not_general_position,
                      "collinear {" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + "}");
  Matrix conic(f, 6, 6);
  std::vector<Exponents> quad;
  for (const auto& e : monomials(2))
    if (e[3] == 0) quad.push_back(e);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) conic(i, j) = HomForm::monomial(f.one(), quad[j]).eval(lift(pts[i]));
  if (conic.det().is_zero()) throw Error(ErrorCode::not_general_position, "conic through all six points");
}

}  // namespace

SixPointSurface from_six_points(Field f, const std::array<PlanePoint, 6>& pts) {
  check_general_position(f, pts);
  std::vector<Exponents> cubic_monos;
  for (const auto& e : monomials(3))
    if (e[3] == 0) cubic_monos.push_back(e);
  Matrix cond(f, 6, cubic_monos.size());
  for (int i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < cubic_monos.size(); ++j)
      cond(i, j) = HomForm::monomial(f.one(), cubic_monos[j]).eval(lift(pts[i]));
  auto ker = cond.kernel();
  if (ker.size() != 4) throw Error(ErrorCode::not_general_position, "cubics through the points do not form a net of dimension 4");
  SixPointSurface out;
  for (int k = 0; k < 4; ++k) {
    HomForm c(f, 3);
    for (std::size_t j = 0; j < cubic_monos.size(); ++j) c.set_coeff(cubic_monos[j], ker[k][j]);
    out.cubics[k] = c;
  }
  // the cubic relation among the four cubics
  const auto& target = monomials(9);
  const auto& unknowns = monomials(3);
  Matrix rel(f, target.size(), unknowns.size());
  std::array<std::vector<HomForm>, 4> powers;
  for (int k = 0; k < 4; ++k) {
    powers[k].push_back(HomForm::constant(f.one()));
    for (int e = 1; e <= 3; ++e) powers[k].push_back(powers[k].back() * out.cubics[k]);
  }
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto& e = unknowns[u];
    HomForm prod = powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]] * powers[3][e[3]];
    for (std::size_t t = 0; t < target.size(); ++t) rel(t, u) = prod.coeffs()[t];
  }
  auto rk = rel.kernel();
  if (rk.size() != 1) throw Error(ErrorCode::not_general_position, "cubic relation is not unique");
  out.f = HomForm(f, 3, rk[0]);
  // exceptional lines: images of the tangent directions at each point
  for (int i = 0; i < 6; ++i) {
    std::vector<Point> rows;
    for (int v = 0; v < 3; ++v) {
      Point r;
      for (int k = 0; k < 4; ++k) r[k] = out.cubics[k].partial(v).eval(lift(pts[i]));
      rows.push_back(r);
    }
    Matrix m(f, 3, 4);
    for (int v = 0; v < 3; ++v)
      for (int k = 0; k < 4; ++k) m(v, k) = rows[v][k];
    if (m.rref().size() != 2) throw Error(ErrorCode::not_general_position, "degenerate exceptional line");
    out.exceptional[i] = ProjLine::through({m(0, 0), m(0, 1), m(0, 2), m(0, 3)}, {m(1, 0), m(1, 1), m(1, 2), m(1, 3)});
  }
  return out;
}

std::array<PlanePoint, 6> random_six_points(Field f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&]() -> Elem {
    if (f.is_finite()) return f.element_at(rng() % *f.cardinality());
    return f.from_int(static_cast<std::int64_t>(rng() % 21) - 10);
  };
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::array<PlanePoint, 6> pts;
    for (auto& p : pts) p = {draw(), draw(), draw()};
    try {
      check_general_position(f, pts);
      return pts;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::not_general_position, "no six points in general position found over " + f.spec().to_string());
}

SplitSurface split_surface(const HomForm& f) {
  auto lines = lines_on(f);
  if (lines.size() != 27)
    throw Error(ErrorCode::not_split, std::to_string(lines.size()) + " rational lines, 27 needed");
  SplitSurface s{f, marking_from(lines), {}};
  s.planes = tritangent_planes(s.marking);
  return s;
}

// ---------------------------------------------------------------------------
// Eckardt points without a marking

Point tangent_plane(const HomForm& f, const Point& p) {
  if (!f.eval(p).is_zero()) throw Error(ErrorCode::constraint_violation, point_to_string(p) + " is not on the surface");
  Point grad;
  auto parts = f.partials();
  for (int i = 0; i < 4; ++i) grad[i] = parts[i].eval(p);
  if (is_zero_point(grad)) throw Error(ErrorCode::not_smooth, "singular point " + point_to_string(p));
  return normalize_point(grad);
}

bool is_eckardt_point(const HomForm& f, const Point& p) {
  if (is_zero_point(p) || !f.eval(p).is_zero()) return false;
  auto t = tangent_section(f, p);
  if (!all_zero(t.c2)) return false;
  // three distinct lines: the binary cubic has nonzero discriminant
  const auto& b = t.c3;
  Field fld = f.field();
  Elem disc = b[1] * b[1] * b[2] * b[2] - fld.from_int(4) * b[0] * b[2].pow(3) - fld.from_int(4) * b[1].pow(3) * b[3] -
              fld.from_int(27) * b[0] * b[0] * b[3] * b[3] + fld.from_int(18) * b[0] * b[1] * b[2] * b[3];
  return !disc.is_zero();
}

Mat4 eckardt_involution(const HomForm& f, const Point& q) {
  Field fld = f.field();
  if (fld.characteristic() == 2) throw Error(ErrorCode::unsupported_field, "harmonic homologies need odd characteristic");
  if (!is_eckardt_point(f, q)) throw Error(ErrorCode::constraint_violation, point_to_string(q) + " is not an Eckardt point");
  // the polar quadric of an Eckardt point is the tangent plane times the axis
  auto parts = f.partials();
  HomForm polar(fld, 2);
  for (int i = 0; i < 4; ++i) polar = polar + parts[i] * q[i];
  Point h = tangent_plane(f, q);
  const auto& quad = monomials(2);
  Matrix sys(fld, quad.size(), 4);
  for (int j = 0; j < 4; ++j) {
    Point e{fld.zero(), fld.zero(), fld.zero(), fld.zero()};
    e[j] = fld.one();
    HomForm prod = HomForm::linear(h) * HomForm::linear(e);
    for (std::size_t r = 0; r < quad.size(); ++r) sys(r, j) = prod.coeffs()[r];
  }
  auto axis = sys.solve(polar.coeffs());
  if (!axis) throw Error(ErrorCode::identity_failure, "polar quadric does not contain the tangent plane");
  Point a = to_point(*axis);
  Elem aq = dot(a, q);
  if (aq.is_zero()) throw Error(ErrorCode::identity_failure, "Eckardt point lies on its axis");
  // x -> a(q) x - 2 a(x) q
  Mat4 m = Mat4::identity(fld) * aq;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) -= fld.from_int(2) * q[i] * a[j];
  return m;
}

}  // namespace octa
