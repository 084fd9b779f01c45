#pragma once

// The lattice I^{1,6}, the E6 root system, the 27 exceptional vectors and the
// Weyl group W(E6) acting on them as permutations.
//
// Exceptional vectors are indexed 0..26 in label order:
//   0..5   E1..E6        (e_i)
//   6..11  G1..G6        (2e0 - sum e + e_j)
//   12..26 F12..F56      (e0 - e_i - e_j), pairs in lexicographic order

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace octa::e6 {

using Vec7 = std::array<int, 7>;
using Perm = std::array<std::uint8_t, 27>;
using Mat7 = std::array<std::array<int, 7>, 7>;

int pairing(const Vec7& u, const Vec7& v);
Vec7 canonical_class();  // k = -3e0 + sum e_i
Vec7 basis(int i);
Vec7 add(const Vec7& u, const Vec7& v);
Vec7 scale(const Vec7& u, int s);
std::string vec_to_string(const Vec7& v);

const std::array<Vec7, 27>& exceptional_vectors();
std::string label(int index);
/// "E3", "G1", "F25" (also "F52"); throws Error(parse_error).
int label_index(const std::string& name);
inline int E(int i) { return i - 1; }
inline int G(int j) { return 5 + j; }
int F(int i, int j);
/// Index of the exceptional vector, or -1.
int exceptional_index(const Vec7& v);
/// Pairing of the two exceptional vectors: 1 when the lines meet, 0 when
/// skew, -1 on the diagonal.
int intersection(int a, int b);
inline bool meets(int a, int b) { return a != b && intersection(a, b) == 1; }

// enumerations, canonically ordered
const std::vector<Vec7>& roots();  // lexicographic on coordinates
using Sixer = std::array<int, 6>;
using DoubleSix = std::array<std::array<int, 6>, 2>;  // column i pairs skew lines
using Trio = std::array<int, 3>;
using TriadPair = std::array<std::array<int, 3>, 3>;  // rows and columns are trios
const std::vector<Sixer>& sixers();
const std::vector<DoubleSix>& double_sixes();
const std::vector<Trio>& tritangent_trios();
const std::vector<TriadPair>& triad_pairs();
/// 1, 2 or 3 for the three label shapes of conjugate triad pairs
/// (3, 5 and 9 lines of type F respectively).
int triad_pair_shape(const TriadPair& t);

Perm identity_perm();
/// (a o b)(x) = a(b(x)).
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& a);
Perm power(const Perm& a, int n);
int order(const Perm& a);
/// True when the permutation preserves all pairwise intersections.
bool preserves_incidence(const Perm& p);
std::string perm_to_string(const Perm& p);

Mat7 reflection_matrix(const Vec7& root);
/// Induced permutation of a lattice isometry; throws if it does not permute
/// the exceptional vectors.
Perm perm_of_matrix(const Mat7& m);
/// The unique isometry matrix inducing p (columns are images of e0..e6).
Mat7 matrix_of_perm(const Perm& p);
Vec7 apply(const Mat7& m, const Vec7& v);
Perm reflection(const Vec7& root);

/// Root with (l, alpha) = 1 for every line of the sixer; throws
/// Error(not_a_sixer) when the six lines are not mutually skew.
Vec7 sixer_root(const Sixer& d);
/// The six exceptional vectors pairing to 1 with the root, sorted.
Sixer root_sixer(const Vec7& root);

struct TwistedCubicRow {
  std::string name;
  Vec7 cubic_class;      // a representative c of the row
  Vec7 stated_root;      // the root the row pairs it with
  int stated_count;
  int found_count;       // roots of the row family, counted in roots()
  bool class_plus_k_ok;  // c + k == stated root for every member of the row
};
std::vector<TwistedCubicRow> twisted_cubic_check();

/// Characteristic polynomial coefficients, constant term first.
std::vector<long> char_poly(const Mat7& m);

struct ClassSignature {
  int order = 1;
  std::vector<long> char_poly_e6;     // on the orthogonal complement of k
  int fixed_lines = 27;
  std::vector<int> cycle_type;        // cycle_type[l] = number of l-cycles on the 27 lines
  std::vector<int> trio_cycle_type;   // same on the 45 tritangent trios
  std::optional<std::string> label;

  bool same_invariants(const ClassSignature& o) const;
  std::string cycle_string() const;   // e.g. "1^3 2^12"
};
ClassSignature signature(const Perm& p);

enum class OrbitTag { invariant, tritangent_trio, skew_triple, pair, other };
std::string to_string(OrbitTag t);
struct Orbit {
  std::vector<int> lines;  // in cycle order, starting from the smallest index
  OrbitTag tag;
};
std::vector<Orbit> orbit_partition(const Perm& p);

/// W(E6), generated once per process by closing the 72 reflections.
class WeylGroup {
 public:
  /// Directory for the cached element list; empty disables caching. Takes
  /// effect only before the first call to instance().
  static void set_cache_dir(const std::string& dir);
  static const WeylGroup& instance();

  std::size_t size() const { return elements_.size(); }
  const std::vector<Perm>& elements() const { return elements_; }
  std::optional<std::size_t> index_of(const Perm& p) const;
  bool contains(const Perm& p) const { return index_of(p).has_value(); }

  std::size_t class_count() const { return reps_.size(); }
  int class_of(const Perm& p) const;
  const Perm& class_representative(int c) const { return reps_[c]; }
  std::size_t class_size(int c) const { return sizes_[c]; }
  const ClassSignature& class_signature(int c) const { return sigs_[c]; }
  /// Class id carrying the label ("1A", "2A", ...); throws if unanchored.
  int class_by_label(const std::string& label) const;
  std::optional<std::string> label_of(const Perm& p) const;
  /// Classes matching the anchor for a label (normally exactly one).
  const std::vector<int>& anchor_candidates(const std::string& label) const;
  /// Whether the cache file was read (true) or written/bypassed (false).
  bool loaded_from_cache() const { return from_cache_; }
  std::uint64_t content_hash() const { return hash_; }

 private:
  WeylGroup();
  void build_elements();
  void build_classes();
  void anchor_labels();

  std::vector<Perm> elements_;
  std::vector<std::uint32_t> class_id_;
  std::vector<Perm> reps_;
  std::vector<std::size_t> sizes_;
  std::vector<ClassSignature> sigs_;
  std::vector<std::pair<std::string, std::vector<int>>> anchors_;
  std::uint64_t hash_ = 0;
  bool from_cache_ = false;
};

/// Orbit lists used to anchor class labels, as label strings per orbit.
const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>& anchor_orbit_lists();

}  // namespace octa::e6
