#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "octa/e6.hpp"
#include "octa/error.hpp"

using namespace octa::e6;

namespace {

Vec7 v7(std::initializer_list<int> c) {
  Vec7 v{};
  std::copy(c.begin(), c.end(), v.begin());
  return v;
}

Vec7 alpha_ij(int i, int j) { return add(basis(i), scale(basis(j), -1)); }
Vec7 alpha_ijk(int i, int j, int k) {
  return add(basis(0), scale(add(basis(i), add(basis(j), basis(k))), -1));
}
const Vec7 kAlphaMax = v7({2, -1, -1, -1, -1, -1, -1});

}  // namespace

TEST_CASE("pairing") {
  CHECK(pairing(basis(0), basis(0)) == 1);
  CHECK(pairing(basis(1), basis(1)) == -1);
  CHECK(pairing(canonical_class(), canonical_class()) == 3);
}

TEST_CASE("roots match the three explicit families") {
  std::set<Vec7> explicit_roots{kAlphaMax, scale(kAlphaMax, -1)};
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) {
      explicit_roots.insert(alpha_ij(i, j));
      explicit_roots.insert(scale(alpha_ij(i, j), -1));
      for (int k = j + 1; k <= 6; ++k) {
        explicit_roots.insert(alpha_ijk(i, j, k));
        explicit_roots.insert(scale(alpha_ijk(i, j, k), -1));
      }
    }
  CHECK(explicit_roots.size() == 72);
  CHECK(std::set<Vec7>(roots().begin(), roots().end()) == explicit_roots);
  CHECK(std::is_sorted(roots().begin(), roots().end()));
}

TEST_CASE("exceptional vectors") {
  // box search for (v, k) = (v, v) = -1
  std::set<Vec7> found;
  Vec7 v;
  for (int code = 0; code < 16384; ++code) {
    int c = code;
    for (int i = 0; i < 7; ++i) {
      v[i] = c % 4 - 1;
      c /= 4;
    }
    if (pairing(v, v) == -1 && pairing(v, canonical_class()) == -1) found.insert(v);
  }
  const auto& ex = exceptional_vectors();
  CHECK(found == std::set<Vec7>(ex.begin(), ex.end()));
  CHECK(ex[label_index("F25")] == v7({1, 0, -1, 0, 0, -1, 0}));
  CHECK(ex[label_index("G3")] == v7({2, -1, -1, 0, -1, -1, -1}));
  CHECK(label_index("F52") == label_index("F25"));
  for (int i = 0; i < 27; ++i) {
    CHECK(label_index(label(i)) == i);
    int met = 0;
    for (int j = 0; j < 27; ++j) met += meets(i, j);
    CHECK(met == 10);
  }
  CHECK(meets(E(1), F(1, 2)));
  CHECK(!meets(E(3), F(1, 2)));
  CHECK(meets(E(1), G(2)));
  CHECK(!meets(E(1), G(1)));
}

TEST_CASE("enumeration counts") {
  CHECK(roots().size() == 72);
  CHECK(sixers().size() == 72);
  CHECK(double_sixes().size() == 36);
  const auto& trios = tritangent_trios();
  CHECK(trios.size() == 45);
  int egf = 0, fff = 0;
  for (const auto& t : trios) {
    if (t[2] >= 12 && t[0] >= 12) ++fff;
    if (t[0] < 6 && t[1] >= 6 && t[1] < 12) ++egf;
  }
  CHECK(egf == 30);
  CHECK(fff == 15);
  const auto& tp = triad_pairs();
  CHECK(tp.size() == 120);
  std::map<int, int> shapes;
  for (const auto& t : tp) ++shapes[triad_pair_shape(t)];
  CHECK(shapes[1] == 20);
  CHECK(shapes[2] == 90);
  CHECK(shapes[3] == 10);
}

TEST_CASE("trio characterisations agree on all triples") {
  const Vec7 minus_k = scale(canonical_class(), -1);
  const auto& ex = exceptional_vectors();
  std::set<Trio> trios(tritangent_trios().begin(), tritangent_trios().end());
  for (int a = 0; a < 27; ++a)
    for (int b = a + 1; b < 27; ++b)
      for (int c = b + 1; c < 27; ++c) {
        bool sum = add(ex[a], add(ex[b], ex[c])) == minus_k;
        bool pairwise = pairing(ex[a], ex[b]) == 1 && pairing(ex[a], ex[c]) == 1 && pairing(ex[b], ex[c]) == 1;
        CHECK(sum == pairwise);
        CHECK(sum == (trios.count({a, b, c}) == 1));
      }
}

TEST_CASE("double-sixes") {
  for (const auto& ds : double_sixes())
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) CHECK(intersection(ds[0][i], ds[1][j]) == (i == j ? 0 : 1));
  // each half extends uniquely
  for (const auto& ds : double_sixes())
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b)
        for (int c = b + 1; c < 6; ++c) {
          std::set<std::set<int>> halves;
          std::set<int> half{ds[0][a], ds[0][b], ds[0][c], ds[1][a], ds[1][b], ds[1][c]};
          int extensions = 0;
          for (const auto& other : double_sixes())
            for (int x = 0; x < 6; ++x)
              for (int y = x + 1; y < 6; ++y)
                for (int z = y + 1; z < 6; ++z) {
                  std::set<int> h{other[0][x], other[0][y], other[0][z], other[1][x], other[1][y], other[1][z]};
                  if (h == half) ++extensions;
                }
          CHECK(extensions == 1);
        }
}

TEST_CASE("reflections") {
  Perm r12 = reflection(alpha_ij(1, 2));
  CHECK(r12[E(1)] == E(2));
  CHECK(octa::e6::apply(reflection_matrix(kAlphaMax), basis(0)) == v7({5, -2, -2, -2, -2, -2, -2}));
  std::set<Perm> distinct;
  for (const auto& a : roots()) {
    Perm r = reflection(a);
    CHECK(compose(r, r) == identity_perm());
    CHECK(octa::e6::apply(reflection_matrix(a), canonical_class()) == canonical_class());
    distinct.insert(r);
  }
  // alpha and -alpha give the same reflection
  CHECK(distinct.size() == 36);
}

TEST_CASE("sixers and roots") {
  Sixer dmax{E(1), E(2), E(3), E(4), E(5), E(6)};
  CHECK(sixer_root(dmax) == kAlphaMax);
  Sixer d123{E(1), E(2), E(3), F(5, 6), F(4, 6), F(4, 5)};
  CHECK(sixer_root(d123) == alpha_ijk(1, 2, 3));
  CHECK_THROWS_AS(sixer_root({E(1), E(2), E(3), E(4), E(5), G(1)}), octa::Error);
  std::set<Vec7> seen;
  for (const auto& s : sixers()) {
    Vec7 a = sixer_root(s);
    seen.insert(a);
    CHECK(root_sixer(a) == s);
    Perm r = reflection(a);
    Sixer image;
    for (int i = 0; i < 6; ++i) image[i] = r[s[i]];
    std::sort(image.begin(), image.end());
    CHECK(sixer_root(image) == scale(a, -1));
  }
  CHECK(seen.size() == 72);
}

TEST_CASE("twisted cubic table") {
  auto rows = twisted_cubic_check();
  REQUIRE(rows.size() == 6);
  int total = 0;
  std::vector<int> counts;
  for (const auto& r : rows) {
    CHECK(r.class_plus_k_ok);
    CHECK(r.found_count == r.stated_count);
    counts.push_back(r.found_count);
    total += r.found_count;
  }
  CHECK(counts == std::vector<int>{1, 1, 15, 15, 20, 20});
  CHECK(total == 72);
  CHECK(rows[1].cubic_class == basis(0));
  CHECK(rows[1].stated_root == scale(kAlphaMax, -1));
}

TEST_CASE("weyl group") {
  const auto& w = WeylGroup::instance();
  CHECK(w.size() == 51840);
  std::set<Perm> unique(w.elements().begin(), w.elements().end());
  CHECK(unique.size() == 51840);
  // faithful: only the identity fixes all 27 lines
  int fixing_all = 0;
  for (const auto& p : w.elements()) fixing_all += p == identity_perm();
  CHECK(fixing_all == 1);

  // elements of order 2 fixing 15 lines whose matrix is a reflection matrix
  std::set<Mat7> refl;
  for (const auto& a : roots()) refl.insert(reflection_matrix(a));
  int reflections = 0;
  for (std::size_t i = 0; i < w.size(); i += 1) {
    const Perm& p = w.elements()[i];
    if (order(p) == 2 && signature(p).fixed_lines == 15 && refl.count(matrix_of_perm(p))) ++reflections;
  }
  CHECK(reflections == 36);

  // matrices: isometries fixing k, and determined by the permutation
  for (std::size_t i = 0; i < w.size(); i += 97) {
    const Perm& p = w.elements()[i];
    Mat7 m = matrix_of_perm(p);
    CHECK(perm_of_matrix(m) == p);
    CHECK(octa::e6::apply(m, canonical_class()) == canonical_class());
    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b) CHECK(pairing(octa::e6::apply(m, basis(a)), octa::e6::apply(m, basis(b))) == pairing(basis(a), basis(b)));
    CHECK(preserves_incidence(p));
  }

  // closure and a sample of compositions
  for (std::size_t i = 0; i < w.size(); i += 1013)
    for (std::size_t j = 0; j < w.size(); j += 2039) CHECK(w.contains(compose(w.elements()[i], w.elements()[j])));
}

TEST_CASE("conjugacy classes") {
  const auto& w = WeylGroup::instance();
  CHECK(w.class_count() == 25);
  std::size_t total = 0;
  for (std::size_t c = 0; c < w.class_count(); ++c) total += w.class_size(c);
  CHECK(total == 51840);
  for (std::size_t a = 0; a < w.class_count(); ++a)
    for (std::size_t b = a + 1; b < w.class_count(); ++b)
      CHECK(!w.class_signature(a).same_invariants(w.class_signature(b)));
  // class function check on a sample: conjugates share the class id
  for (std::size_t i = 0; i < w.size(); i += 331) {
    const Perm& x = w.elements()[i];
    const Perm& g = w.elements()[(i * 7919) % w.size()];
    CHECK(w.class_of(compose(g, compose(x, inverse(g)))) == w.class_of(x));
  }
}

TEST_CASE("anchored labels") {
  const auto& w = WeylGroup::instance();
  for (const char* l : {"1A", "2A", "2B", "3A", "3C", "3D", "4A", "4B", "5A", "6E", "8A", "12A"})
    CHECK_MESSAGE(w.anchor_candidates(l).size() == 1, l);
  auto sig = [&](const char* l) { return w.class_signature(w.class_by_label(l)); };
  CHECK(sig("2A").cycle_string() == "1^3 2^12");
  CHECK(sig("2B").cycle_string() == "1^7 2^10");
  CHECK(sig("3C").cycle_string() == "1^9 3^6");
  CHECK(sig("5A").cycle_string() == "1^2 5^5");
  CHECK(sig("12A").order == 12);
  CHECK(w.class_size(w.class_by_label("2A")) == 45);

  auto tags = [&](const char* l) {
    std::map<OrbitTag, int> t;
    for (const auto& o : orbit_partition(w.class_representative(w.class_by_label(l)))) ++t[o.tag];
    return t;
  };
  CHECK(tags("3A")[OrbitTag::tritangent_trio] == 9);
  CHECK(tags("3D")[OrbitTag::tritangent_trio] == 3);
  CHECK(tags("3D")[OrbitTag::skew_triple] == 6);
  CHECK(tags("3C")[OrbitTag::skew_triple] == 6);
  CHECK(tags("3C")[OrbitTag::invariant] == 9);

  // a reflection is not of type 2A
  Perm r = reflection(kAlphaMax);
  CHECK(signature(r).cycle_string() == "1^15 2^6");
  CHECK(!w.label_of(r));

  // power relations
  const Perm& g12 = w.class_representative(w.class_by_label("12A"));
  CHECK(*w.label_of(power(g12, 4)) == "3A");
  CHECK(order(power(g12, 3)) == 4);
  const Perm& g6 = w.class_representative(w.class_by_label("6E"));
  CHECK(*w.label_of(power(g6, 2)) == "3D");
  CHECK(*w.label_of(power(g6, 3)) == "2A");
  CHECK(*w.label_of(power(w.class_representative(w.class_by_label("8A")), 2)) == "4A");
  CHECK(*w.label_of(power(w.class_representative(w.class_by_label("4A")), 2)) == "2A");
  CHECK(*w.label_of(power(w.class_representative(w.class_by_label("4B")), 2)) == "2B");
}
