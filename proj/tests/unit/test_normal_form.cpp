#include "doctest.h"

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "octa/normal_form.hpp"

using namespace octa;
using namespace testing_helpers;

namespace {

std::set<std::uint64_t> plane_keys(const std::array<Point, 3>& planes) {
  // order-independent key of a triple of normalized planes
  std::set<std::uint64_t> k;
  for (const auto& p : planes) {
    std::uint64_t h = 0;
    for (const auto& x : normalize_point(p)) h = h * 1000003 + x.code();
    k.insert(h);
  }
  return k;
}

std::array<Point, 3> triple(Field f, std::array<std::array<std::int64_t, 4>, 3> c) {
  return {make_point(f, c[0][0], c[0][1], c[0][2], c[0][3]), make_point(f, c[1][0], c[1][1], c[1][2], c[1][3]),
          make_point(f, c[2][0], c[2][1], c[2][2], c[2][3])};
}

Point elem_point(const Elem& a, const Elem& b, const Elem& c, const Elem& d) { return {a, b, c, d}; }

// index of a triad pair whose two triads have the given planes, in either orientation
std::optional<std::size_t> find_pair(const HomForm& f, const MarkedLines& m, const std::array<Point, 3>& a,
                                     const std::array<Point, 3>& b) {
  auto ka = plane_keys(a), kb = plane_keys(b);
  const auto& pairs = e6::triad_pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto cs = cayley_salmon(f, m, pairs[i]);
    auto k1 = plane_keys(cs.planes), k2 = plane_keys(cs.primed);
    if ((k1 == ka && k2 == kb) || (k1 == kb && k2 == ka)) return i;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("octanomial forms") {
  Field f7 = Field::prime(7);
  HomForm x0 = var(f7, 0), x1 = var(f7, 1), x2 = var(f7, 2), x3 = var(f7, 3);
  CHECK(octanomial_surface(OctanomialParams::from_ints(f7, 0, 0, 0, 0)) == x0 * x0 * x1 + x0 * x1 * x1 + x2 * x2 * x3 + x2 * x3 * x3);
  // coefficient placement: a1 on x0, a0 on x1, a3 on x2, a2 on x3
  auto a = OctanomialParams::from_ints(f7, 1, 2, 3, 4);
  HomForm f = octanomial_surface(a);
  CHECK(f.coeff({1, 0, 1, 1}) == f7.from_int(2));
  CHECK(f.coeff({0, 1, 1, 1}) == f7.from_int(1));
  CHECK(f.coeff({1, 1, 1, 0}) == f7.from_int(4));
  CHECK(f.coeff({1, 1, 0, 1}) == f7.from_int(3));
  CHECK(f.term_count() == 8);
  CHECK(f == octanomial_form(f7, 1, 2, 3, 4));
  CHECK(OctanomialParams::from_json(f7, a.to_json()) == a);
}

TEST_CASE("Cayley-Salmon equations of the Fermat surface") {
  Field f13 = Field::prime(13);
  HomForm f = fermat(f13);
  auto s = split_surface(f);
  std::set<std::pair<std::set<std::uint64_t>, std::set<std::uint64_t>>> distinct;
  for (const auto& pair : e6::triad_pairs()) {
    auto cs = cayley_salmon(f, s.marking, pair);
    CHECK(cs.product() + cs.primed_product() * cs.lambda == f * cs.scale);
    auto k1 = plane_keys(cs.planes), k2 = plane_keys(cs.primed);
    distinct.insert(std::minmax(k1, k2));
  }
  CHECK(distinct.size() == 120);

  Elem z = f13.root_of_unity(3), o = f13.one(), n = f13.zero();
  // family (i)
  std::array<Point, 3> i_a{elem_point(o, o, n, n), elem_point(o, z, n, n), elem_point(o, z * z, n, n)};
  std::array<Point, 3> i_b{elem_point(n, n, o, o), elem_point(n, n, o, z), elem_point(n, n, o, z * z)};
  CayleySalmon fam1{i_a, i_b, o, o};
  CHECK(fam1.product() + fam1.primed_product() == f);
  CHECK(find_pair(f, s.marking, i_a, i_b).has_value());
  // family (ii), with coefficient -3 on the second product
  std::array<Point, 3> ii_a{elem_point(o, o, o, o), elem_point(o, o, o, z), elem_point(o, o, o, z * z)};
  auto ii_b = triple(f13, {{{1, 1, 0, 0}, {0, 1, 1, 0}, {1, 0, 1, 0}}});
  CayleySalmon fam2{ii_a, ii_b, f13.from_int(-3), o};
  CHECK(fam2.product() + fam2.primed_product() * f13.from_int(-3) == f);
  auto k = find_pair(f, s.marking, ii_a, ii_b);
  REQUIRE(k.has_value());
  auto cs = cayley_salmon(f, s.marking, e6::triad_pairs()[*k]);
  // lambda / scale depend on orientation and plane scaling; the ratio of the
  // two products is fixed by the identity
  if (plane_keys(cs.planes) == plane_keys(ii_a))
    CHECK(cs.lambda == f13.from_int(-3));
  else
    CHECK(cs.lambda == f13.from_int(-3).inv());
}

TEST_CASE("determinantal representations") {
  Field f13 = Field::prime(13);
  HomForm f = fermat(f13);
  auto s = split_surface(f);
  const auto& pairs = e6::triad_pairs();
  for (std::size_t i = 0; i < pairs.size(); i += 7) {
    auto cs = cayley_salmon(f, s.marking, pairs[i]);
    auto m = det_rep_from(cs);
    for (int d = 0; d < 3; ++d) CHECK(m[d][d].is_zero());
    // symbolic expansion of the zero-diagonal determinant
    HomForm expect = cs.product() + cs.primed_product() * cs.lambda;
    CHECK(determinant(m) == expect);
    CHECK(det_rep_check(m, f) == cs.scale);
    CHECK(det_rep_check(transpose(m), f) == cs.scale);
  }
  std::mt19937_64 rng(8);
  LinearMatrix junk;
  for (auto& row : junk)
    for (auto& e : row) e = random_form(f13, 1, rng);
  CHECK_THROWS_AS(det_rep_check(junk, f), Error);
}

TEST_CASE("ordering indices") {
  std::set<std::tuple<bool, std::array<int, 2>, std::array<int, 2>>> seen;
  for (int i = 0; i < Ordering::count; ++i) {
    auto o = Ordering::from_index(i);
    CHECK(o.index == i);
    CHECK(o.rows[0] != o.rows[1]);
    CHECK(o.cols[0] != o.cols[1]);
    seen.insert({o.swap, o.rows, o.cols});
  }
  CHECK(seen.size() == 72);
  CHECK_THROWS_AS(Ordering::from_index(72), Error);
}

TEST_CASE("reduction of the Fermat surface along a family (i) pair") {
  Field f13 = Field::prime(13);
  HomForm f = fermat(f13);
  auto s = split_surface(f);
  Elem z = f13.root_of_unity(3), o = f13.one(), n = f13.zero();
  std::array<Point, 3> i_a{elem_point(o, o, n, n), elem_point(o, z, n, n), elem_point(o, z * z, n, n)};
  std::array<Point, 3> i_b{elem_point(n, n, o, o), elem_point(n, n, o, z), elem_point(n, n, o, z * z)};
  auto k = find_pair(f, s.marking, i_a, i_b);
  REQUIRE(k.has_value());
  const auto& pair = e6::triad_pairs()[*k];
  auto zero = OctanomialParams::from_ints(f13, 0, 0, 0, 0);
  CHECK(octanomial_reduce(f, s.marking, pair, Ordering::from_index(0)).params == zero);
  for (int oi = 0; oi < Ordering::count; ++oi) {
    auto ord = Ordering::from_index(oi);
    for (std::size_t c = 0; c < cube_root_count(f, s.marking, pair, ord); ++c) {
      auto r = octanomial_reduce(f, s.marking, pair, ord, c);
      CHECK(r.params == zero);
      CHECK(f.substitute(r.T.inverse()) == octanomial_surface(r.params) * r.scalar);
    }
  }
}

TEST_CASE("reduction round trip on six-point surfaces") {
  int done = 0;
  for (std::uint64_t p : {11, 13, 17}) {
    Field fld = Field::prime(p);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      auto sp = from_six_points(fld, random_six_points(fld, seed));
      auto s = split_surface(sp.f);
      std::mt19937_64 rng(seed);
      for (int t = 0; t < 6; ++t) {
        const auto& pair = e6::triad_pairs()[rng() % 120];
        auto ord = Ordering::from_index(static_cast<int>(rng() % 72));
        try {
          auto r = octanomial_reduce(sp.f, s.marking, pair, ord);
          CHECK(sp.f.substitute(r.T.inverse()) == octanomial_surface(r.params) * r.scalar);
          CHECK(is_smooth(octanomial_surface(r.params)));
          ++done;
        } catch (const Error& e) {
          CHECK(e.code() == ErrorCode::cube_root_unavailable);
          CHECK(std::string(e.what()).find("Fq:" + std::to_string(p) + ":3") != std::string::npos);
        }
      }
    }
  }
  CHECK(done >= 20);
}

TEST_CASE("octanomial forms reduce to themselves") {
  Field f13 = Field::prime(13);
  for (auto a : {OctanomialParams::from_ints(f13, 0, 0, 0, 0), OctanomialParams::from_ints(f13, 2, 2, 3, 4),
                 OctanomialParams::from_ints(f13, 0, 0, 1, 3)}) {
    HomForm f = octanomial_surface(a);
    if (lines_on(f).size() != 27) continue;
    auto s = split_surface(f);
    Point x0 = make_point(f13, 1, 0, 0, 0), x1 = make_point(f13, 0, 1, 0, 0), x2 = make_point(f13, 0, 0, 1, 0),
          x3 = make_point(f13, 0, 0, 0, 1);
    std::array<Point, 3> rows{x0, x1, normalize_point(elem_point(f13.one(), f13.one(), a.a3, a.a2))};
    std::array<Point, 3> cols{x2, x3, normalize_point(elem_point(a.a1, a.a0, f13.one(), f13.one()))};
    auto k = find_pair(f, s.marking, rows, cols);
    REQUIRE(k.has_value());
    const auto& pair = e6::triad_pairs()[*k];
    bool fixed = false;
    for (int oi = 0; oi < Ordering::count && !fixed; ++oi) {
      auto ord = Ordering::from_index(oi);
      for (std::size_t c = 0; c < cube_root_count(f, s.marking, pair, ord); ++c) {
        auto r = octanomial_reduce(f, s.marking, pair, ord, c);
        if (r.T.is_scalar()) {
          CHECK(r.params == a);
          fixed = true;
        }
      }
    }
    CHECK(fixed);
  }
}

namespace {

// closure of a parameter list under the symmetries a0<->a1, a2<->a3 and
// (a0,a1,a2,a3) -> (a2,a3,a0,a1)
std::set<OctanomialParams> d4_closure(const std::vector<OctanomialParams>& base) {
  std::set<OctanomialParams> out(base.begin(), base.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<OctanomialParams> cur(out.begin(), out.end());
    for (const auto& a : cur)
      for (const auto& b : {OctanomialParams{a.a1, a.a0, a.a2, a.a3}, OctanomialParams{a.a0, a.a1, a.a3, a.a2},
                            OctanomialParams{a.a2, a.a3, a.a0, a.a1}})
        grew |= out.insert(b).second;
  }
  return out;
}

std::set<OctanomialParams> fermat_forty(Field f, const Elem& cbrt3) {
  Elem z = f.root_of_unity(3), o = f.one(), n = f.zero();
  Elem two = f.from_int(2), three = f.from_int(3);
  // c = 2 * 3^(1/3) / (zeta - 1); with 1 - zeta in the denominator the
  // surface has 9 Eckardt points, not 18
  Elem c = two * cbrt3 / (z - o);
  std::vector<OctanomialParams> base{{n, n, n, n}};
  Elem zi = o;
  for (int i = 0; i < 3; ++i, zi = zi * z) {
    base.push_back({-(zi * z) * c, zi * c, n, n});
    // a0 = a1 carry 3^(2/3)
    base.push_back({-two * cbrt3 * cbrt3 * zi * zi / three, -two * cbrt3 * cbrt3 * zi * zi / three, n, -two * cbrt3 * zi / three});
  }
  base.push_back({n, -two, n, -two});
  base.push_back({n, -two * z, n, -two * z * z});
  base.push_back({two, two, two, two});
  base.push_back({two * z, two * z, two * z * z, two * z * z});
  return d4_closure(base);
}

}  // namespace

TEST_CASE("the sign of the family (ii) constant") {
  Field f = Field::prime(61);
  Elem z = f.root_of_unity(3), r = f.nth_roots(f.from_int(3), 3)[0];
  for (int sgn : {1, -1}) {
    Elem c = f.from_int(2 * sgn) * r / (f.one() - z);
    HomForm h = octanomial_surface({-(z * c), c, f.zero(), f.zero()});
    REQUIRE(is_smooth(h));
    auto e = splitting_extension(h, 3);
    REQUIRE(e.has_value());
    auto s = split_surface(embed(*e, h));
    CHECK(eckardt_points(s.marking).size() == (sgn == 1 ? 9u : 18u));
  }
}

TEST_CASE("Fermat surfaces have 40 octanomial parameters") {
  for (std::uint64_t p : {61, 67, 73}) {
    Field f = Field::prime(p);
    auto s = split_surface(fermat(f));
    auto en = enumerate_octanomial_params(fermat(f), s.marking, p == 61);
    CHECK(en.params.size() == 40);
    std::set<OctanomialParams> got(en.params.begin(), en.params.end());
    bool matched = false;
    for (const auto& r : f.nth_roots(f.from_int(3), 3)) matched |= fermat_forty(f, r) == got;
    CHECK(matched);
  }
  Field f4 = Field::finite(2, 2);
  auto s4 = split_surface(fermat(f4));
  auto en4 = enumerate_octanomial_params(fermat(f4), s4.marking);
  REQUIRE(en4.params.size() == 1);
  CHECK(en4.params[0] == OctanomialParams::from_ints(f4, 0, 0, 0, 0));
}

TEST_CASE("orbit-stabilizer count for generic surfaces") {
  // over F_{q^3}, q = 1 mod 3, every element of F_q is a cube
  struct Case {
    Field base;
    Field big;
    std::uint64_t seed;
    std::size_t total;
  };
  std::vector<Case> cases{{Field::prime(7), Field::finite(7, 3), 1, 25920},
                          {Field::prime(13), Field::finite(13, 3), 2, 25920},
                          {Field::finite(3, 2), Field::finite(3, 2), 3, 8640},
                          {Field::finite(3, 3), Field::finite(3, 3), 4, 8640}};
  for (const auto& c : cases) {
    auto sp = from_six_points(c.base, random_six_points(c.base, c.seed));
    HomForm f = sp.f;
    if (*c.big.cardinality() != *c.base.cardinality()) f = embed(Embedding(c.base, c.big), f);
    auto s = split_surface(f);
    auto aut = automorphism_group(f, s.marking);
    auto en = enumerate_octanomial_params(f, s.marking);
    INFO(c.big.spec().to_string(), " aut=", aut.size());
    CHECK(en.params.size() * aut.size() == c.total);
  }
}
