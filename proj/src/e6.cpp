#include "octa/e6.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_map>

#include "octa/error.hpp"

namespace octa::e6 {

int pairing(const Vec7& u, const Vec7& v) {
  int s = u[0] * v[0];
  for (int i = 1; i < 7; ++i) s -= u[i] * v[i];
  return s;
}

Vec7 canonical_class() { return {-3, 1, 1, 1, 1, 1, 1}; }

Vec7 basis(int i) {
  Vec7 v{};
  v[i] = 1;
  return v;
}

Vec7 add(const Vec7& u, const Vec7& v) {
  Vec7 r;
  for (int i = 0; i < 7; ++i) r[i] = u[i] + v[i];
  return r;
}

Vec7 scale(const Vec7& u, int s) {
  Vec7 r;
  for (int i = 0; i < 7; ++i) r[i] = u[i] * s;
  return r;
}

std::string vec_to_string(const Vec7& v) {
  std::string s = "(";
  for (int i = 0; i < 7; ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

namespace {

struct PairTable {
  std::array<std::array<int, 2>, 15> pairs;
  std::array<std::array<int, 7>, 7> index;
  PairTable() {
    int n = 0;
    for (auto& row : index) row.fill(-1);
    for (int i = 1; i <= 6; ++i)
      for (int j = i + 1; j <= 6; ++j) {
        pairs[n] = {i, j};
        index[i][j] = index[j][i] = 12 + n;
        ++n;
      }
  }
};

const PairTable& pair_table() {
  static const PairTable t;
  return t;
}

std::array<Vec7, 27> build_exceptionals() {
  std::array<Vec7, 27> v{};
  for (int i = 1; i <= 6; ++i) {
    v[E(i)] = basis(i);
    Vec7 g{2, -1, -1, -1, -1, -1, -1};
    g[i] = 0;
    v[G(i)] = g;
  }
  for (int n = 0; n < 15; ++n) {
    auto [i, j] = pair_table().pairs[n];
    Vec7 f = basis(0);
    f[i] = -1;
    f[j] = -1;
    v[12 + n] = f;
  }
  return v;
}

struct Incidence {
  std::array<std::array<int, 27>, 27> m;
  Incidence() {
    const auto& ex = exceptional_vectors();
    for (int a = 0; a < 27; ++a)
      for (int b = 0; b < 27; ++b) m[a][b] = pairing(ex[a], ex[b]);
  }
};

const Incidence& incidence() {
  static const Incidence t;
  return t;
}

}  // namespace

const std::array<Vec7, 27>& exceptional_vectors() {
  static const std::array<Vec7, 27> v = build_exceptionals();
  return v;
}

int F(int i, int j) {
  int idx = pair_table().index[i][j];
  if (idx < 0) throw Error(ErrorCode::parse_error, "bad F index");
  return idx;
}

std::string label(int index) {
  if (index < 6) return "E" + std::to_string(index + 1);
  if (index < 12) return "G" + std::to_string(index - 5);
  auto [i, j] = pair_table().pairs.at(index - 12);
  return "F" + std::to_string(i) + std::to_string(j);
}

int label_index(const std::string& name) {
  auto digit = [&](std::size_t pos) {
    if (pos >= name.size() || name[pos] < '1' || name[pos] > '6')
      throw Error(ErrorCode::parse_error, "bad line label '" + name + "'");
    return name[pos] - '0';
  };
  if (name.size() == 2 && name[0] == 'E') return E(digit(1));
  if (name.size() == 2 && name[0] == 'G') return G(digit(1));
  if (name.size() == 3 && name[0] == 'F' && name[1] != name[2]) return F(digit(1), digit(2));
  throw Error(ErrorCode::parse_error, "bad line label '" + name + "'");
}

int exceptional_index(const Vec7& v) {
  const auto& ex = exceptional_vectors();
  for (int i = 0; i < 27; ++i)
    if (ex[i] == v) return i;
  return -1;
}

int intersection(int a, int b) { return incidence().m[a][b]; }

// ---------------------------------------------------------------------------
// enumerations

const std::vector<Vec7>& roots() {
  static const std::vector<Vec7> r = [] {
    std::vector<Vec7> out;
    const Vec7 k = canonical_class();
    Vec7 v;
    // every root has coordinates in [-2, 2]; enumerate the box
    for (int code = 0; code < 78125; ++code) {
      int c = code;
      for (int i = 0; i < 7; ++i) {
        v[i] = c % 5 - 2;
        c /= 5;
      }
      if (pairing(v, v) == -2 && pairing(v, k) == 0) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
  }();
  return r;
}

const std::vector<Sixer>& sixers() {
  static const std::vector<Sixer> s = [] {
    std::vector<Sixer> out;
    Sixer cur{};
    auto rec = [&](auto&& self, int depth, int start) -> void {
      if (depth == 6) {
        out.push_back(cur);
        return;
      }
      for (int x = start; x < 27; ++x) {
        bool ok = true;
        for (int d = 0; d < depth; ++d)
          if (intersection(cur[d], x) != 0) ok = false;
        if (!ok) continue;
        cur[depth] = x;
        self(self, depth + 1, x + 1);
      }
    };
    rec(rec, 0, 0);
    return out;
  }();
  return s;
}

const std::vector<DoubleSix>& double_sixes() {
  static const std::vector<DoubleSix> d = [] {
    std::set<DoubleSix> out;
    for (const auto& s : sixers()) {
      std::array<int, 6> partner{};
      bool ok = true;
      for (int i = 0; i < 6 && ok; ++i) {
        int found = -1;
        for (int x = 0; x < 27; ++x) {
          if (intersection(x, s[i]) != 0 || x == s[i]) continue;
          bool meets_rest = true;
          for (int j = 0; j < 6; ++j)
            if (j != i && intersection(x, s[j]) != 1) meets_rest = false;
          if (meets_rest) {
            if (found >= 0) ok = false;
            found = x;
          }
        }
        if (found < 0) ok = false;
        partner[i] = found;
      }
      if (!ok) continue;
      // canonical: the row whose sorted content is smaller goes first, columns
      // ordered by the first row
      std::array<int, 6> sorted_partner = partner;
      std::sort(sorted_partner.begin(), sorted_partner.end());
      DoubleSix ds;
      if (s < sorted_partner) {
        ds = {s, partner};
      } else {
        std::array<std::pair<int, int>, 6> cols;
        for (int i = 0; i < 6; ++i) cols[i] = {partner[i], s[i]};
        std::sort(cols.begin(), cols.end());
        for (int i = 0; i < 6; ++i) {
          ds[0][i] = cols[i].first;
          ds[1][i] = cols[i].second;
        }
      }
      out.insert(ds);
    }
    return std::vector<DoubleSix>(out.begin(), out.end());
  }();
  return d;
}

const std::vector<Trio>& tritangent_trios() {
  static const std::vector<Trio> t = [] {
    std::vector<Trio> out;
    for (int a = 0; a < 27; ++a)
      for (int b = a + 1; b < 27; ++b)
        for (int c = b + 1; c < 27; ++c)
          if (meets(a, b) && meets(a, c) && meets(b, c)) out.push_back({a, b, c});
    return out;
  }();
  return t;
}

namespace {

TriadPair canonical_triad_pair(const TriadPair& t) {
  std::array<int, 3> rp{0, 1, 2};
  TriadPair best{};
  bool have = false;
  for (int tr = 0; tr < 2; ++tr) {
    TriadPair base = t;
    if (tr)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) base[i][j] = t[j][i];
    std::array<int, 3> r = rp;
    do {
      std::array<int, 3> c = rp;
      do {
        TriadPair cand;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) cand[i][j] = base[r[i]][c[j]];
        if (!have || cand < best) {
          best = cand;
          have = true;
        }
      } while (std::next_permutation(c.begin(), c.end()));
    } while (std::next_permutation(r.begin(), r.end()));
  }
  return best;
}

bool is_trio(int a, int b, int c) { return meets(a, b) && meets(a, c) && meets(b, c); }

}  // namespace

const std::vector<TriadPair>& triad_pairs() {
  static const std::vector<TriadPair> t = [] {
    const auto& trios = tritangent_trios();
    auto disjoint = [](const Trio& x, const Trio& y) {
      for (int a : x)
        for (int b : y)
          if (a == b) return false;
      return true;
    };
    std::set<TriadPair> out;
    const std::size_t n = trios.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!disjoint(trios[i], trios[j])) continue;
        for (std::size_t k = j + 1; k < n; ++k) {
          if (!disjoint(trios[i], trios[k]) || !disjoint(trios[j], trios[k])) continue;
          const Trio& r0 = trios[i];
          const Trio& r1 = trios[j];
          const Trio& r2 = trios[k];
          // columns: trios with one line from each row
          std::vector<Trio> cols;
          for (int a : r0)
            for (int b : r1)
              for (int c : r2)
                if (is_trio(a, b, c)) cols.push_back({a, b, c});
          for (std::size_t x = 0; x < cols.size(); ++x)
            for (std::size_t y = x + 1; y < cols.size(); ++y)
              for (std::size_t z = y + 1; z < cols.size(); ++z) {
                std::set<int> used;
                for (const auto* col : {&cols[x], &cols[y], &cols[z]})
                  for (int v : *col) used.insert(v);
                if (used.size() != 9) continue;
                TriadPair tp;
                for (int row = 0; row < 3; ++row) {
                  tp[row] = {cols[x][row], cols[y][row], cols[z][row]};
                }
                out.insert(canonical_triad_pair(tp));
              }
        }
      }
    return std::vector<TriadPair>(out.begin(), out.end());
  }();
  return t;
}

int triad_pair_shape(const TriadPair& t) {
  int fs = 0;
  for (const auto& row : t)
    for (int x : row)
      if (x >= 12) ++fs;
  if (fs == 3) return 1;
  if (fs == 5) return 2;
  if (fs == 9) return 3;
  return 0;
}

// ---------------------------------------------------------------------------
// permutations and matrices

Perm identity_perm() {
  Perm p;
  for (int i = 0; i < 27; ++i) p[i] = static_cast<std::uint8_t>(i);
  return p;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm r;
  for (int i = 0; i < 27; ++i) r[i] = a[b[i]];
  return r;
}

Perm inverse(const Perm& a) {
  Perm r;
  for (int i = 0; i < 27; ++i) r[a[i]] = static_cast<std::uint8_t>(i);
  return r;
}

Perm power(const Perm& a, int n) {
  if (n < 0) return power(inverse(a), -n);
  Perm r = identity_perm();
  for (int i = 0; i < n; ++i) r = compose(a, r);
  return r;
}

int order(const Perm& a) {
  int o = 1;
  std::array<bool, 27> seen{};
  for (int i = 0; i < 27; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int x = i; !seen[x]; x = a[x]) {
      seen[x] = true;
      ++len;
    }
    o = std::lcm(o, len);
  }
  return o;
}

bool preserves_incidence(const Perm& p) {
  std::array<bool, 27> hit{};
  for (int i = 0; i < 27; ++i) {
    if (p[i] >= 27 || hit[p[i]]) return false;
    hit[p[i]] = true;
  }
  for (int a = 0; a < 27; ++a)
    for (int b = a + 1; b < 27; ++b)
      if (intersection(a, b) != intersection(p[a], p[b])) return false;
  return true;
}

std::string perm_to_string(const Perm& p) {
  std::string s;
  for (const auto& o : orbit_partition(p)) {
    if (o.lines.size() == 1) continue;
    s += "(";
    for (std::size_t i = 0; i < o.lines.size(); ++i) s += (i ? "," : "") + label(o.lines[i]);
    s += ")";
  }
  return s.empty() ? "()" : s;
}

Vec7 apply(const Mat7& m, const Vec7& v) {
  Vec7 r{};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) r[i] += m[i][j] * v[j];
  return r;
}

Mat7 reflection_matrix(const Vec7& root) {
  Mat7 m{};
  for (int j = 0; j < 7; ++j) {
    Vec7 e = basis(j);
    Vec7 img = add(e, scale(root, pairing(e, root)));
    for (int i = 0; i < 7; ++i) m[i][j] = img[i];
  }
  return m;
}

Perm perm_of_matrix(const Mat7& m) {
  Perm p;
  const auto& ex = exceptional_vectors();
  for (int i = 0; i < 27; ++i) {
    int j = exceptional_index(apply(m, ex[i]));
    if (j < 0) throw Error(ErrorCode::configuration_mismatch, "matrix does not permute the exceptional vectors");
    p[i] = static_cast<std::uint8_t>(j);
  }
  return p;
}

Mat7 matrix_of_perm(const Perm& p) {
  const auto& ex = exceptional_vectors();
  Mat7 m{};
  std::array<Vec7, 7> cols;
  for (int i = 1; i <= 6; ++i) cols[i] = ex[p[E(i)]];
  // e0 = F12 + E1 + E2
  cols[0] = add(ex[p[F(1, 2)]], add(ex[p[E(1)]], ex[p[E(2)]]));
  for (int j = 0; j < 7; ++j)
    for (int i = 0; i < 7; ++i) m[i][j] = cols[j][i];
  return m;
}

Perm reflection(const Vec7& root) { return perm_of_matrix(reflection_matrix(root)); }

Vec7 sixer_root(const Sixer& d) {
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (d[a] == d[b] || intersection(d[a], d[b]) != 0)
        throw Error(ErrorCode::not_a_sixer, "lines " + label(d[a]) + " and " + label(d[b]) + " are not skew");
  const auto& ex = exceptional_vectors();
  std::optional<Vec7> found;
  for (const auto& r : roots()) {
    bool ok = true;
    for (int x : d)
      if (pairing(ex[x], r) != 1) ok = false;
    if (ok) {
      if (found) throw Error(ErrorCode::not_a_sixer, "root not unique");
      found = r;
    }
  }
  if (!found) throw Error(ErrorCode::not_a_sixer, "no root pairs to 1 with every line");
  return *found;
}

Sixer root_sixer(const Vec7& root) {
  const auto& ex = exceptional_vectors();
  std::vector<int> out;
  for (int i = 0; i < 27; ++i)
    if (pairing(ex[i], root) == 1) out.push_back(i);
  if (out.size() != 6) throw Error(ErrorCode::not_a_sixer, "vector is not a root");
  Sixer s;
  std::copy(out.begin(), out.end(), s.begin());
  return s;
}

std::vector<TwistedCubicRow> twisted_cubic_check() {
  const Vec7 k = canonical_class();
  const Vec7 e0 = basis(0);
  Vec7 sum_e{0, 1, 1, 1, 1, 1, 1};
  std::set<Vec7> all_roots(roots().begin(), roots().end());
  std::vector<TwistedCubicRow> rows;

  auto finish = [&](TwistedCubicRow row, const std::vector<std::pair<Vec7, Vec7>>& members) {
    std::set<Vec7> distinct;
    row.class_plus_k_ok = true;
    for (const auto& [c, r] : members) {
      if (add(c, k) != r) row.class_plus_k_ok = false;
      if (all_roots.count(r)) distinct.insert(r);
    }
    row.found_count = static_cast<int>(distinct.size());
    row.cubic_class = members.front().first;
    row.stated_root = members.front().second;
    rows.push_back(row);
  };

  Vec7 amax = add(scale(e0, 2), scale(sum_e, -1));
  finish({"D_max", {}, {}, 1, 0, false}, {{add(scale(e0, 5), scale(sum_e, -2)), amax}});
  finish({"-D_max", {}, {}, 1, 0, false}, {{e0, scale(amax, -1)}});

  std::vector<std::pair<Vec7, Vec7>> pos, neg;
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) {
      Vec7 a = add(basis(i), scale(basis(j), -1));
      Vec7 base = add(scale(e0, 3), scale(sum_e, -1));
      pos.push_back({add(base, a), a});
      neg.push_back({add(base, scale(a, -1)), scale(a, -1)});
    }
  finish({"D_ij", {}, {}, 15, 0, false}, pos);
  finish({"-D_ij", {}, {}, 15, 0, false}, neg);

  pos.clear();
  neg.clear();
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j)
      for (int l = j + 1; l <= 6; ++l) {
        Vec7 ijk = add(basis(i), add(basis(j), basis(l)));
        Vec7 rest = add(sum_e, scale(ijk, -1));
        Vec7 a = add(e0, scale(ijk, -1));
        pos.push_back({add(add(scale(e0, 4), scale(rest, -1)), scale(ijk, -2)), a});
        neg.push_back({add(scale(e0, 2), scale(rest, -1)), scale(a, -1)});
      }
  finish({"D_ijk", {}, {}, 20, 0, false}, pos);
  finish({"-D_ijk", {}, {}, 20, 0, false}, neg);
  return rows;
}

std::vector<long> char_poly(const Mat7& a) {
  // Faddeev-LeVerrier; all divisions are exact over the integers
  const int n = 7;
  std::vector<long> c(n + 1, 0);
  c[n] = 1;
  std::array<std::array<long, 7>, 7> m{};  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    std::array<std::array<long, 7>, 7> am{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        long s = 0;
        for (int t = 0; t < n; ++t) s += a[i][t] * m[t][j];
        am[i][j] = s;
      }
    for (int i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = am;  // M_k = A M_{k-1} + c_{n-k+1} I
    long tr = 0;
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < n; ++t) tr += a[i][t] * m[t][i];
    c[n - k] = -tr / k;
  }
  return c;
}

bool ClassSignature::same_invariants(const ClassSignature& o) const {
  return order == o.order && char_poly_e6 == o.char_poly_e6 && fixed_lines == o.fixed_lines &&
         cycle_type == o.cycle_type && trio_cycle_type == o.trio_cycle_type;
}

std::string ClassSignature::cycle_string() const {
  std::string s;
  for (std::size_t l = 1; l < cycle_type.size(); ++l) {
    if (cycle_type[l] == 0) continue;
    if (!s.empty()) s += " ";
    s += std::to_string(l) + "^" + std::to_string(cycle_type[l]);
  }
  return s;
}

namespace {

std::vector<int> cycle_counts(const std::vector<int>& images) {
  std::vector<int> counts(images.size() + 1, 0);
  std::vector<bool> seen(images.size(), false);
  std::size_t maxlen = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t x = i; !seen[x]; x = static_cast<std::size_t>(images[x])) {
      seen[x] = true;
      ++len;
    }
    ++counts[len];
    maxlen = std::max(maxlen, len);
  }
  counts.resize(maxlen + 1);
  return counts;
}

}  // namespace

ClassSignature signature(const Perm& p) {
  ClassSignature s;
  s.order = order(p);
  auto cp = char_poly(matrix_of_perm(p));
  // divide by (x - 1): k is fixed and its complement is invariant
  std::vector<long> q(7, 0);
  long carry = 0;
  for (int d = 7; d >= 1; --d) {
    carry = cp[d] + carry;
    q[d - 1] = carry;
  }
  s.char_poly_e6 = q;
  std::vector<int> images(p.begin(), p.end());
  s.cycle_type = cycle_counts(images);
  s.fixed_lines = s.cycle_type.size() > 1 ? s.cycle_type[1] : 0;
  const auto& trios = tritangent_trios();
  std::vector<int> trio_images(trios.size());
  for (std::size_t t = 0; t < trios.size(); ++t) {
    Trio img{p[trios[t][0]], p[trios[t][1]], p[trios[t][2]]};
    std::sort(img.begin(), img.end());
    trio_images[t] = static_cast<int>(std::lower_bound(trios.begin(), trios.end(), img) - trios.begin());
  }
  s.trio_cycle_type = cycle_counts(trio_images);
  return s;
}

std::string to_string(OrbitTag t) {
  switch (t) {
    case OrbitTag::invariant: return "invariant";
    case OrbitTag::tritangent_trio: return "tritangent-trio";
    case OrbitTag::skew_triple: return "skew-triple";
    case OrbitTag::pair: return "pair";
    case OrbitTag::other: return "other";
  }
  return "other";
}

std::vector<Orbit> orbit_partition(const Perm& p) {
  std::vector<Orbit> out;
  std::array<bool, 27> seen{};
  for (int i = 0; i < 27; ++i) {
    if (seen[i]) continue;
    Orbit o;
    for (int x = i; !seen[x]; x = p[x]) {
      seen[x] = true;
      o.lines.push_back(x);
    }
    const auto& l = o.lines;
    if (l.size() == 1) {
      o.tag = OrbitTag::invariant;
    } else if (l.size() == 2) {
      o.tag = OrbitTag::pair;
    } else if (l.size() == 3 && is_trio(l[0], l[1], l[2])) {
      o.tag = OrbitTag::tritangent_trio;
    } else if (l.size() == 3 && intersection(l[0], l[1]) == 0 && intersection(l[0], l[2]) == 0 &&
               intersection(l[1], l[2]) == 0) {
      o.tag = OrbitTag::skew_triple;
    } else {
      o.tag = OrbitTag::other;
    }
    out.push_back(std::move(o));
  }
  return out;
}

// ---------------------------------------------------------------------------
// the group

namespace {

std::uint64_t perm_key(const Perm& p) {
  // an element is determined by the images of E1..E6 and F12
  std::uint64_t k = 0;
  for (int i = 0; i < 6; ++i) k = (k << 5) | p[i];
  return (k << 5) | p[12];
}

std::uint64_t fnv1a(const std::vector<Perm>& elems) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& p : elems)
    for (auto b : p) {
      h ^= b;
      h *= 1099511628211ULL;
    }
  return h;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::string& cache_dir_ref() {
  static std::string dir;
  return dir;
}

std::unordered_map<std::uint64_t, std::uint32_t>& index_map() {
  static std::unordered_map<std::uint64_t, std::uint32_t> m;
  return m;
}

constexpr char kMagic[8] = {'O', 'C', 'T', 'A', 'W', 'E', '6', '1'};
constexpr std::size_t kOrder = 51840;

bool read_cache(const std::filesystem::path& file, std::vector<Perm>& out, std::uint64_t& hash) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return false;
  char magic[8];
  std::uint64_t count = 0, stored = 0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  in.read(reinterpret_cast<char*>(&stored), sizeof stored);
  if (!in || !std::equal(magic, magic + 8, kMagic) || count != kOrder) return false;
  std::vector<Perm> elems(count);
  for (auto& p : elems) in.read(reinterpret_cast<char*>(p.data()), 27);
  if (!in) return false;
  if (fnv1a(elems) != stored) return false;
  for (const auto& p : elems)
    if (!preserves_incidence(p)) return false;
  if (!std::is_sorted(elems.begin(), elems.end())) return false;
  out = std::move(elems);
  hash = stored;
  return true;
}

void write_cache(const std::filesystem::path& file, const std::vector<Perm>& elems, std::uint64_t hash) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) return;
  std::uint64_t count = elems.size();
  out.write(kMagic, 8);
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  out.write(reinterpret_cast<const char*>(&hash), sizeof hash);
  for (const auto& p : elems) out.write(reinterpret_cast<const char*>(p.data()), 27);
}

}  // namespace

void WeylGroup::set_cache_dir(const std::string& dir) {
  std::lock_guard<std::mutex> lock(cache_mutex());
  cache_dir_ref() = dir;
}

const WeylGroup& WeylGroup::instance() {
  static const WeylGroup* g = new WeylGroup();
  return *g;
}

WeylGroup::WeylGroup() {
  std::string dir;
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    dir = cache_dir_ref();
  }
  std::filesystem::path file;
  if (!dir.empty()) file = std::filesystem::path(dir) / "weyl_e6.bin";
  if (!file.empty() && read_cache(file, elements_, hash_)) {
    from_cache_ = true;
  } else {
    build_elements();
    hash_ = fnv1a(elements_);
    if (!file.empty()) write_cache(file, elements_, hash_);
  }
  auto& idx = index_map();
  idx.reserve(elements_.size() * 2);
  for (std::size_t i = 0; i < elements_.size(); ++i) idx.emplace(perm_key(elements_[i]), static_cast<std::uint32_t>(i));
  build_classes();
  anchor_labels();
}

void WeylGroup::build_elements() {
  std::vector<Perm> gens;
  for (const auto& r : roots()) gens.push_back(reflection(r));
  std::unordered_map<std::uint64_t, bool> seen;
  std::deque<Perm> queue{identity_perm()};
  seen[perm_key(identity_perm())] = true;
  std::vector<Perm> out;
  while (!queue.empty()) {
    Perm x = queue.front();
    queue.pop_front();
    out.push_back(x);
    for (const auto& s : gens) {
      Perm y = compose(s, x);
      if (seen.emplace(perm_key(y), true).second) queue.push_back(y);
    }
  }
  std::sort(out.begin(), out.end());
  elements_ = std::move(out);
}

std::optional<std::size_t> WeylGroup::index_of(const Perm& p) const {
  const auto& idx = index_map();
  auto it = idx.find(perm_key(p));
  if (it == idx.end() || elements_[it->second] != p) return std::nullopt;
  return it->second;
}

void WeylGroup::build_classes() {
  const std::size_t n = elements_.size();
  std::vector<Perm> gens;
  for (const auto& r : roots()) gens.push_back(reflection(r));
  std::vector<std::int32_t> provisional(n, -1);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (provisional[i] >= 0) continue;
    const auto cid = static_cast<std::int32_t>(members.size());
    members.emplace_back();
    std::vector<std::size_t> stack{i};
    provisional[i] = cid;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      members[cid].push_back(x);
      for (const auto& s : gens) {
        std::size_t y = *index_of(compose(s, compose(elements_[x], s)));
        if (provisional[y] < 0) {
          provisional[y] = cid;
          stack.push_back(y);
        }
      }
    }
  }
  // deterministic class ids: by order, then size, then smallest member
  std::vector<std::size_t> ids(members.size());
  std::iota(ids.begin(), ids.end(), 0);
  for (auto& m : members) std::sort(m.begin(), m.end());
  std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
    int oa = order(elements_[members[a][0]]), ob = order(elements_[members[b][0]]);
    if (oa != ob) return oa < ob;
    if (members[a].size() != members[b].size()) return members[a].size() > members[b].size();
    return members[a][0] < members[b][0];
  });
  class_id_.assign(n, 0);
  for (std::size_t c = 0; c < ids.size(); ++c) {
    const auto& m = members[ids[c]];
    for (auto x : m) class_id_[x] = static_cast<std::uint32_t>(c);
    reps_.push_back(elements_[m[0]]);
    sizes_.push_back(m.size());
    sigs_.push_back(signature(elements_[m[0]]));
  }
}

int WeylGroup::class_of(const Perm& p) const {
  auto i = index_of(p);
  if (!i) throw Error(ErrorCode::configuration_mismatch, "permutation is not in W(E6)");
  return static_cast<int>(class_id_[*i]);
}

const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>& anchor_orbit_lists() {
  using L = std::vector<std::vector<std::string>>;
  static const std::vector<std::pair<std::string, L>> lists = [] {
    std::vector<std::pair<std::string, L>> out;
    L a2 = {{"E6"}, {"F56"}, {"G5"}, {"E5", "G6"}};
    for (int i = 1; i <= 4; ++i) {
      a2.push_back({"G" + std::to_string(i), "F" + std::to_string(i) + "6"});
      a2.push_back({"E" + std::to_string(i), "F" + std::to_string(i) + "5"});
    }
    a2.push_back({"F12", "F34"});
    a2.push_back({"F13", "F24"});
    a2.push_back({"F14", "F23"});
    out.push_back({"2A", a2});

    L b2 = {{"E1", "E2"}, {"G6", "F12"}};
    for (std::string s : {"E6", "F36", "F46", "F56", "G3", "G4", "G5"}) b2.push_back({s});
    b2.push_back({"G1", "F16"});
    b2.push_back({"G2", "F26"});
    // (E_i, F_jk) with {i,j,k} = {3,4,5}
    b2.push_back({"E3", "F45"});
    b2.push_back({"E4", "F35"});
    b2.push_back({"E5", "F34"});
    for (int i = 3; i <= 5; ++i) b2.push_back({"F1" + std::to_string(i), "F2" + std::to_string(i)});
    out.push_back({"2B", b2});

    out.push_back({"3A",
                   {{"F14", "F25", "F36"}, {"F26", "F34", "F15"}, {"F35", "F16", "F24"}, {"E1", "G2", "F12"},
                    {"G3", "F23", "E2"}, {"F13", "E3", "G1"}, {"E4", "G5", "F45"}, {"G6", "F56", "E5"},
                    {"F46", "E6", "G4"}}});
    out.push_back({"3C",
                   {{"F16", "F26", "F36"}, {"F15", "F25", "F35"}, {"F14", "F24", "F34"}, {"E1", "E2", "E3"},
                    {"F12", "F23", "F13"}, {"G1", "G2", "G3"}, {"E4"}, {"E5"}, {"E6"}, {"G4"}, {"G5"},
                    {"G6"}, {"F45"}, {"F56"}, {"F46"}}});
    out.push_back({"3D",
                   {{"E6", "G5", "F56"}, {"G4", "F45", "E5"}, {"F46", "E4", "G6"}, {"F14", "F16", "F15"},
                    {"F26", "F25", "F24"}, {"F35", "F34", "F36"}, {"E1", "F23", "G1"}, {"G3", "E3", "F12"},
                    {"F13", "G2", "E2"}}});
    out.push_back({"4A",
                   {{"E6"}, {"F56"}, {"G5"}, {"G1", "G2", "F16", "F26"}, {"G3", "G4", "F36", "F46"},
                    {"E5", "F24", "G6", "F13"}, {"E1", "F45", "F15", "E4"}, {"F12", "F23", "F34", "F14"},
                    {"E2", "E3", "F25", "F35"}}});
    // the printed list repeats F36 in the pair orbit; F46 is the only line left over
    out.push_back({"4B",
                   {{"E1", "E5", "E2", "F34"}, {"G6", "F25", "F12", "F15"}, {"F16", "G2", "G1", "F26"},
                    {"E4", "F14", "F35", "F24"}, {"E3", "F13", "F45", "F23"}, {"F36", "F46"}, {"G3", "G4"},
                    {"G5", "F56"}, {"E6"}}});
    out.push_back({"5A",
                   {{"E2"}, {"G2"}, {"E1", "E5", "E6", "E4", "E3"}, {"G1", "G5", "G6", "G4", "G3"},
                    {"F12", "F25", "F26", "F24", "F23"}, {"F13", "F15", "F56", "F46", "F34"},
                    {"F14", "F35", "F16", "F45", "F36"}}});
    return out;
  }();
  return lists;
}

namespace {

using Partition = std::vector<std::vector<int>>;

Partition partition_of(const Perm& p) {
  Partition out;
  for (auto& o : orbit_partition(p)) {
    std::sort(o.lines.begin(), o.lines.end());
    out.push_back(o.lines);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void WeylGroup::anchor_labels() {
  auto set_anchor = [&](const std::string& name, std::vector<int> classes) {
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    anchors_.push_back({name, classes});
    if (classes.size() == 1) sigs_[classes[0]].label = name;
  };
  set_anchor("1A", {class_of(identity_perm())});

  std::map<std::string, std::vector<int>> from_lists;
  for (const auto& [name, orbits] : anchor_orbit_lists()) {
    Partition want;
    for (const auto& o : orbits) {
      std::vector<int> idx;
      for (const auto& l : o) idx.push_back(label_index(l));
      std::sort(idx.begin(), idx.end());
      want.push_back(idx);
    }
    std::sort(want.begin(), want.end());
    std::vector<int> classes;
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (partition_of(elements_[i]) == want) classes.push_back(static_cast<int>(class_id_[i]));
    from_lists[name] = classes;
  }

  // power-relation anchors, relative to already anchored classes
  auto by_power = [&](int ord, const std::vector<std::pair<int, std::vector<int>>>& rels) {
    std::vector<int> out;
    for (std::size_t c = 0; c < reps_.size(); ++c) {
      if (sigs_[c].order != ord) continue;
      bool ok = true;
      for (const auto& [k, targets] : rels) {
        int t = class_of(power(reps_[c], k));
        if (std::find(targets.begin(), targets.end(), t) == targets.end()) ok = false;
      }
      if (ok) out.push_back(static_cast<int>(c));
    }
    return out;
  };

  // The printed 3A orbit list is not the orbit partition of any element (at
  // most 6 of its 9 triples occur together), so 3A falls back to the
  // structural description that accompanies it: nine invariant tritangent trios.
  if (from_lists["3A"].empty()) {
    for (std::size_t c = 0; c < reps_.size(); ++c) {
      auto orbits = orbit_partition(reps_[c]);
      bool all_trios = orbits.size() == 9;
      for (const auto& o : orbits)
        if (o.tag != OrbitTag::tritangent_trio) all_trios = false;
      if (all_trios) from_lists["3A"].push_back(static_cast<int>(c));
    }
  }
  for (const char* name : {"2A", "2B", "3A", "3C", "3D", "5A"}) set_anchor(name, from_lists[name]);
  auto intersect = [](std::vector<int> a, std::vector<int> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<int> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
  };
  std::vector<int> c2a = anchor_candidates("2A"), c2b = anchor_candidates("2B");
  std::vector<int> c3a = anchor_candidates("3A"), c3d = anchor_candidates("3D");
  set_anchor("4A", intersect(from_lists["4A"], by_power(4, {{2, c2a}})));
  set_anchor("4B", intersect(from_lists["4B"], by_power(4, {{2, c2b}})));
  set_anchor("6E", by_power(6, {{2, c3d}, {3, c2a}}));
  set_anchor("8A", by_power(8, {{2, anchor_candidates("4A")}}));
  set_anchor("12A", by_power(12, {{4, c3a}}));
}

const std::vector<int>& WeylGroup::anchor_candidates(const std::string& label) const {
  static const std::vector<int> none;
  for (const auto& [name, classes] : anchors_)
    if (name == label) return classes;
  return none;
}

int WeylGroup::class_by_label(const std::string& label) const {
  const auto& c = anchor_candidates(label);
  if (c.size() != 1) throw Error(ErrorCode::configuration_mismatch, "class label " + label + " is not anchored");
  return c[0];
}

std::optional<std::string> WeylGroup::label_of(const Perm& p) const { return sigs_[class_of(p)].label; }

}  // namespace octa::e6
