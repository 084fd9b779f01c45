#include "doctest.h"

#include <random>

#include "octa/poly.hpp"

using namespace octa;

namespace {

HomForm random_form(Field f, int degree, std::mt19937_64& rng) {
  std::vector<Elem> c;
  for (std::size_t i = 0; i < monomials(degree).size(); ++i) c.push_back(f.element_at(rng() % *f.cardinality()));
  return HomForm(f, degree, c);
}

Mat4 random_invertible(Field f, std::mt19937_64& rng) {
  while (true) {
    std::array<Elem, 16> e;
    for (auto& x : e) x = f.element_at(rng() % *f.cardinality());
    Mat4 m(f, e);
    if (!m.det().is_zero()) return m;
  }
}

Point random_point(Field f, std::mt19937_64& rng) {
  Point p;
  for (auto& x : p) x = f.element_at(rng() % *f.cardinality());
  return p;
}

HomForm x(Field f, int i) { return HomForm::variable(f, i); }

HomForm octanomial(Field f, int a0, int a1, int a2, int a3) {
  auto c = [&](int v) { return f.from_int(v); };
  return x(f, 0) * x(f, 1) * (x(f, 0) + x(f, 1) + x(f, 2) * c(a3) + x(f, 3) * c(a2)) +
         x(f, 2) * x(f, 3) * (x(f, 0) * c(a1) + x(f, 1) * c(a0) + x(f, 2) + x(f, 3));
}

}  // namespace

TEST_CASE("monomial order") {
  const auto& m3 = monomials(3);
  CHECK(m3.size() == 20);
  CHECK(m3.front() == Exponents{3, 0, 0, 0});
  CHECK(m3[1] == Exponents{2, 1, 0, 0});
  CHECK(m3.back() == Exponents{0, 0, 0, 3});
  for (std::size_t i = 0; i < m3.size(); ++i) {
    CHECK(monomial_index(m3[i]) == i);
    if (i) CHECK(m3[i - 1] > m3[i]);
  }
}

TEST_CASE("evaluation") {
  Field f7 = Field::prime(7);
  HomForm fermat = x(f7, 0).pow(3) + x(f7, 1).pow(3) + x(f7, 2).pow(3) + x(f7, 3).pow(3);
  CHECK(fermat.eval(make_point(f7, 1, -1, 0, 0)).is_zero());
  CHECK(octanomial(f7, 0, 0, 0, 0).eval(make_point(f7, 1, -1, 0, 0)).is_zero());
  Field q = Field::rationals();
  HomForm m = x(q, 0).pow(2) * x(q, 1);
  CHECK(m.eval(make_point(q, 2, 3, 0, 0)) == q.from_int(12));
  CHECK(octanomial(f7, 0, 0, 0, 0).term_count() == 4);
  CHECK(octanomial(f7, 1, 2, 3, 4).term_count() == 8);
}

TEST_CASE("substitution") {
  Field f11 = Field::prime(11);
  HomForm oct = octanomial(f11, 2, 2, 1, 3);
  Mat4 swap = Mat4::from_ints(f11, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1});
  CHECK(oct.substitute(swap) == oct);
  CHECK(octanomial(f11, 2, 3, 1, 3).substitute(swap) != octanomial(f11, 2, 3, 1, 3));
  CHECK(oct.substitute(Mat4::identity(f11)) == oct);
  Mat4 singular = Mat4::from_ints(f11, {1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1});
  CHECK_THROWS_AS(oct.substitute(singular), Error);

  std::mt19937_64 rng(3);
  for (const char* spec : {"Fp:13", "Fq:2:3", "Fq:3:2"}) {
    Field f = Field::parse(spec);
    for (int t = 0; t < 20; ++t) {
      HomForm g = random_form(f, 3, rng);
      Mat4 a = random_invertible(f, rng), b = random_invertible(f, rng);
      CHECK(g.substitute(a).substitute(a.inverse()) == g);
      CHECK(g.substitute(a * b) == g.substitute(a).substitute(b));
      Point p = random_point(f, rng);
      CHECK(g.substitute(a).eval(p) == g.eval(a.apply(p)));
    }
  }
}

TEST_CASE("partial derivatives") {
  Field q = Field::rationals(), f3 = Field::prime(3);
  CHECK(x(q, 0).pow(3).partial(0) == x(q, 0).pow(2) * q.from_int(3));
  CHECK(x(f3, 0).pow(3).partial(0).is_zero());

  std::mt19937_64 rng(9);
  Field f7 = Field::prime(7);
  for (int t = 0; t < 20; ++t) {
    HomForm g = random_form(f7, 3, rng);
    auto d = g.partials();
    HomForm euler = x(f7, 0) * d[0] + x(f7, 1) * d[1] + x(f7, 2) * d[2] + x(f7, 3) * d[3];
    CHECK(euler == g * f7.from_int(3));
    // chain rule: d_j (g o M) = sum_i (d_i g) o M * M_ij
    Mat4 m = random_invertible(f7, rng);
    HomForm gm = g.substitute(m);
    for (int j = 0; j < 4; ++j) {
      HomForm rhs(f7, 2);
      for (int i = 0; i < 4; ++i) rhs = rhs + d[i].substitute(m) * m(i, j);
      CHECK(gm.partial(j) == rhs);
    }
  }
}

TEST_CASE("scalar multiples") {
  Field f7 = Field::prime(7);
  auto l = scalar_multiple(x(f7, 0).pow(3) * f7.from_int(2), x(f7, 0).pow(3));
  REQUIRE(l);
  CHECK(*l == f7.from_int(2));
  CHECK(!scalar_multiple(x(f7, 0).pow(3), x(f7, 1).pow(3)));
  CHECK(!scalar_multiple(HomForm(f7, 3), HomForm(f7, 3)));

  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    HomForm g = random_form(f7, 3, rng);
    Elem s = f7.element_at(1 + rng() % 6);
    auto a = scalar_multiple(g * s, g), b = scalar_multiple(g, g * s);
    if (g.is_zero()) continue;
    REQUIRE(a);
    REQUIRE(b);
    CHECK(*a * *b == f7.one());
  }
}

TEST_CASE("json round trip") {
  Field f9 = Field::parse("Fq:3:2:1,0,1");
  HomForm g = octanomial(f9, 0, 0, 1, 2) + x(f9, 3).pow(3) * f9.gen();
  auto j = g.to_json();
  CHECK(j["coeffs"].size() == 20);
  CHECK(HomForm::from_json(j) == g);
  Mat4 m = Mat4::from_ints(f9, {1, 2, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}) * f9.gen();
  CHECK(Mat4::from_json(f9, m.to_json()) == m);
  CHECK(m.projective_order() == 3);
}

TEST_CASE("linear algebra") {
  Field f5 = Field::prime(5);
  Matrix a(f5, 2, 3);
  a(0, 0) = f5.one();
  a(0, 1) = f5.from_int(2);
  a(1, 0) = f5.from_int(2);
  a(1, 1) = f5.from_int(4);
  a(1, 2) = f5.one();
  CHECK(a.rank() == 2);
  auto k = a.kernel();
  REQUIRE(k.size() == 1);
  auto z = a * k[0];
  CHECK(z[0].is_zero());
  CHECK(z[1].is_zero());
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    Mat4 m = random_invertible(f5, rng);
    CHECK(m * m.inverse() == Mat4::identity(f5));
    CHECK((m * m).det() == m.det() * m.det());
  }
}
