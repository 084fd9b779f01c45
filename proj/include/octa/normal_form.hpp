#pragma once

// Cayley-Salmon equations, determinantal representations, the reduction of a
// marked split surface to the octanomial form, and the catalog of strata with
// their automorphism matrices.
//
// Octanomial form with parameter (a0, a1, a2, a3):
//   x0 x1 (x0 + x1 + a3 x2 + a2 x3) + x2 x3 (a1 x0 + a0 x1 + x2 + x3).

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "octa/surface.hpp"

namespace octa {

struct OctanomialParams {
  Elem a0, a1, a2, a3;

  Field field() const { return a0.field(); }
  std::array<Elem, 4> as_array() const { return {a0, a1, a2, a3}; }
  bool operator==(const OctanomialParams& o) const;
  /// Canonical order (codes), for sets.
  bool operator<(const OctanomialParams& o) const;
  std::string to_string() const;
  nlohmann::json to_json() const;
  static OctanomialParams from_json(Field f, const nlohmann::json& j);
  static OctanomialParams from_ints(Field f, std::int64_t a0, std::int64_t a1, std::int64_t a2, std::int64_t a3);
};

HomForm octanomial_surface(const OctanomialParams& a);

// ---------------------------------------------------------------------------
// Cayley-Salmon equations

/// pi1 pi2 pi3 + lambda pi'1 pi'2 pi'3 = scale * f. The unprimed planes are
/// those of the row trios of the triad pair, the primed ones of the columns.
struct CayleySalmon {
  std::array<Point, 3> planes;
  std::array<Point, 3> primed;
  Elem lambda;
  Elem scale;

  HomForm product() const;
  HomForm primed_product() const;
  nlohmann::json to_json() const;
};

/// Throws Error(identity_failure) when the identity cannot be solved.
CayleySalmon cayley_salmon(const HomForm& f, const MarkedLines& m, const e6::TriadPair& pair);

using LinearMatrix = std::array<std::array<HomForm, 3>, 3>;
/// lambda with det M = lambda f. Throws Error(not_a_determinantal_rep).
Elem det_rep_check(const LinearMatrix& m, const HomForm& f);
HomForm determinant(const LinearMatrix& m);
/// The zero-diagonal matrix [[0, -pi'2, pi3], [pi1, 0, -pi'3], [-pi'1, pi2, 0]]
/// with pi'1 rescaled by -lambda, so that det = scale * f.
LinearMatrix det_rep_from(const CayleySalmon& cs);
LinearMatrix transpose(const LinearMatrix& m);

// ---------------------------------------------------------------------------
// reduction to the octanomial form

/// One of the 72 ways to read a Cayley-Salmon equation in coordinates:
/// ordered rows (i, j), ordered columns (i', j') and whether rows and columns
/// swap roles. Index = ((swap * 6) + row_choice) * 6 + column_choice.
struct Ordering {
  int index = 0;
  bool swap = false;
  std::array<int, 2> rows{0, 1};
  std::array<int, 2> cols{0, 1};

  static Ordering from_index(int index);
  static constexpr int count = 72;
};

struct Reduction {
  Mat4 T;
  OctanomialParams params;
  Elem scalar;  // f o T^-1 = scalar * octanomial(params)

  nlohmann::json to_json() const;
};

/// Number of usable cube roots for the scaling step (1 or 3; 1 in char 3).
/// Throws Error(cube_root_unavailable) naming an extension that suffices.
std::size_t cube_root_count(const HomForm& f, const MarkedLines& m, const e6::TriadPair& pair, const Ordering& o);

/// Throws Error(cube_root_unavailable), Error(identity_failure).
Reduction octanomial_reduce(const HomForm& f, const MarkedLines& m, const e6::TriadPair& pair, const Ordering& o,
                            std::size_t cube_root_choice = 0);

struct ParamEnumeration {
  std::vector<OctanomialParams> params;  // distinct, sorted
  std::size_t reductions = 0;            // pairs x orderings x cube roots tried
};
/// All 120 pairs, 72 orderings and available cube roots. With `verify`, every
/// reduction identity is checked exactly. Runs on `threads` workers.
ParamEnumeration enumerate_octanomial_params(const HomForm& f, const MarkedLines& m, bool verify = false,
                                             unsigned threads = 0);

// ---------------------------------------------------------------------------
// strata

/// Labels of the catalog: the conjugacy class strata plus the alternative forms "4B'"
/// (a0 = a1 = 0, a2 + a3 + 2c = 0, c (a2 + c)(a3 + c) = 1) and "5A'" (0,0,0,2).
const std::vector<std::string>& stratum_labels();
/// Whether the catalog has a form for the label in characteristic p.
bool stratum_supported(const std::string& label, std::uint64_t p);
/// Label of the theorem covering the label in characteristic p, e.g.
/// ("4A", 2) -> "6E=4B=4A"; equals the label when no coincidence applies.
std::string stratum_theorem(const std::string& label, std::uint64_t p);

struct StratumInstance {
  std::string label;
  std::uint64_t characteristic = 0;
  OctanomialParams params;
  std::map<std::string, Elem> aux;  // zeta3, i, zeta8, alpha, beta, A, gamma, delta, S, T, c, a3', mu1..mu3

  Field field() const { return params.field(); }
  nlohmann::json to_json() const;
};

/// Polynomial constraints of the label in the instance's characteristic, as
/// named residuals (all zero on the stratum).
std::vector<std::pair<std::string, Elem>> constraint_residuals(const std::string& label, std::uint64_t p,
                                                                const OctanomialParams& a);

/// Roots of unity, cube roots and polynomial roots the label needs, for
/// reporting up front.
std::vector<std::string> stratum_requirements(const std::string& label, std::uint64_t p);

/// Solves the constraints over `field` with the given free values (missing
/// ones drawn from `seed`). Throws Error(no_solution_in_field),
/// Error(unsupported_field), Error(constraint_violation).
StratumInstance stratum_params(const std::string& label, Field field, const std::vector<Elem>& free_values,
                               std::uint64_t seed = 0);
/// Number of free values the label takes.
int stratum_arity(const std::string& label, std::uint64_t p);

/// Searches F_{p^m}, m <= max_degree, and seeds for an instance that is
/// smooth and, when `split` is set, has 27 rational lines.
StratumInstance find_stratum_instance(const std::string& label, std::uint64_t p, std::uint64_t seed, bool split = true,
                                      unsigned max_degree = 12);

struct NamedMatrix {
  std::string type;    // the Weyl class it should realize
  std::string source;  // which display or construction it transcribes
  Mat4 matrix;
};
/// The displayed matrices of the theorem covering the instance. For the
/// char-2 6E=4B=4A theorem the mu assignments are searched and the first
/// working one is returned. Throws Error(degenerate_parameters).
std::vector<NamedMatrix> stratum_automorphisms(const StratumInstance& inst);

struct Claim {
  std::string name;
  std::string expected;
  std::string got;
  bool pass = false;
};

struct MatrixReport {
  NamedMatrix m;
  std::optional<Elem> lambda;
  std::optional<int> order;
  std::optional<std::string> weyl_class;
  std::string cycle_type;
  std::map<std::string, int> orbit_tags;
};

struct StratumReport {
  std::string label;
  std::string theorem;
  std::uint64_t characteristic = 0;
  std::string field;
  StratumInstance instance;
  std::vector<std::pair<std::string, Elem>> residuals;
  std::vector<MatrixReport> matrices;
  std::vector<Claim> claims;
  nlohmann::json diagnostics = nlohmann::json::object();

  bool pass() const;
  nlohmann::json to_json() const;
};

/// Verifies every claim of the theorem on the instance. Line-level claims
/// (Weyl class, orbit tags, trihedral lines) use the smallest extension of
/// degree <= max_split_degree over which the surface splits.
StratumReport verify_stratum(const StratumInstance& inst, unsigned max_split_degree = 12);

// ---------------------------------------------------------------------------
// specialization graph

struct SpecializationEdge {
  std::string from, to;
  bool expected_preserved = true;  // whether the form of the target satisfies the source's constraints
  bool preserved = false;   // computed
  std::string note;
};
/// The specialization edges between strata (p != 2, 3, 5) plus the alternative-form edges.
std::vector<SpecializationEdge> specialization_graph();
/// Decides each edge by substituting seeded instances of the target stratum
/// into the constraints of the source stratum. An edge whose target has no
/// instance over the searched fields is left unpreserved with an "undecided"
/// note.
std::vector<SpecializationEdge> specialization_check(std::uint64_t p, std::uint64_t seed, int samples = 3);

// ---------------------------------------------------------------------------
// field search helpers

/// Smallest extension F_{q^m} (m <= max_degree) over which f has 27 lines,
/// with the embedding from the base field.
std::optional<Embedding> splitting_extension(const HomForm& f, unsigned max_degree = 12);
HomForm embed(const Embedding& e, const HomForm& f);
Mat4 embed(const Embedding& e, const Mat4& m);
Point embed(const Embedding& e, const Point& p);

}  // namespace octa
