#pragma once

// Cubic surfaces over exact fields: smoothness, lines, markings, tritangent
// planes, Eckardt points, trihedral lines and automorphisms.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "octa/e6.hpp"
#include "octa/poly.hpp"

namespace octa {

/// A line in P^3, stored as the reduced row echelon basis of its 2-dim
/// subspace; equal lines have equal bases.
class ProjLine {
 public:
  ProjLine() = default;
  /// Throws Error(singular_matrix) when the points coincide projectively.
  static ProjLine through(const Point& a, const Point& b);
  /// Common zero set of two independent linear forms.
  static ProjLine meet(const Point& plane_a, const Point& plane_b);

  const Point& first() const { return p_; }
  const Point& second() const { return q_; }
  bool contains(const Point& x) const;
  bool meets(const ProjLine& o) const;
  /// Intersection point of two distinct meeting lines.
  std::optional<Point> intersection(const ProjLine& o) const;
  /// Two independent linear forms (coefficient vectors) cutting out the line.
  std::array<Point, 2> equations() const;
  ProjLine transformed(const Mat4& g) const;
  bool lies_on(const HomForm& f) const;

  bool operator==(const ProjLine& o) const;
  bool operator<(const ProjLine& o) const;
  std::string to_string() const;
  nlohmann::json to_json() const;
  static ProjLine from_json(Field f, const nlohmann::json& j);

 private:
  Point p_, q_;
};

/// Coefficients of f(s a + t b), s^d first.
std::vector<Elem> restrict_to_line(const HomForm& f, const Point& a, const Point& b);

/// Smoothness over the algebraic closure, decided by a rank computation in
/// the ideal generated by the partials (and f itself in characteristic 3).
/// Works over every supported field.
bool is_smooth(const HomForm& f);

/// All lines on a smooth cubic surface rational over the (finite) base
/// field, sorted. Throws Error(not_smooth), Error(unsupported_field).
std::vector<ProjLine> lines_on(const HomForm& f);

/// Exhaustive version of lines_on over all (q^2+1)(q^2+q+1) lines; used as a
/// cross-check for small q.
std::vector<ProjLine> lines_on_exhaustive(const HomForm& f);

/// The 27 lines indexed by the e6 label order (E1..E6, G1..G6, F12..F56).
struct MarkedLines {
  std::array<ProjLine, 27> lines;

  /// Index of the line, or -1.
  int index_of(const ProjLine& l) const;
  /// Relabel by a Weyl element: the line labeled w(i) gets the old line i.
  MarkedLines relabeled(const e6::Perm& w) const;
  /// True when incidence matches the abstract configuration.
  bool verify() const;
  std::array<std::array<int, 27>, 27> incidence() const;
  nlohmann::json to_json() const;
};

/// Picks the first sixer by backtracking over the given order and labels the
/// rest from it. Throws Error(configuration_mismatch).
MarkedLines marking_from(const std::vector<ProjLine>& lines);
/// The marking whose E-lines are exactly the given six lines in that order.
MarkedLines marking_from_sixer(const std::vector<ProjLine>& lines, const std::array<int, 6>& sixer);

struct TritangentPlane {
  Point plane;  // linear form coefficients, first nonzero equal to one
  e6::Trio trio;
};
/// The 45 planes, in e6::tritangent_trios() order. Throws
/// Error(configuration_mismatch) when a trio is not coplanar.
std::vector<TritangentPlane> tritangent_planes(const MarkedLines& m);
/// Plane through two distinct meeting lines.
Point plane_through(const ProjLine& a, const ProjLine& b);

struct EckardtPoint {
  Point point;
  e6::Trio trio;
};
std::vector<EckardtPoint> eckardt_points(const MarkedLines& m);

struct TrihedralLine {
  ProjLine line;
  e6::TriadPair pair;
  bool from_columns;                 // the meeting triad is the column triad
  std::vector<Point> eckardt;        // Eckardt points on the line
};
/// Lines where the three planes of a triad meet, for all 240 triads.
std::vector<TrihedralLine> trihedral_lines(const HomForm& f, const MarkedLines& m);

/// The permutation of labels induced by g: result[i] = label of g(line i).
/// Throws Error(not_an_automorphism).
e6::Perm induced_permutation(const HomForm& f, const MarkedLines& m, const Mat4& g);

/// Realizes every Weyl element that is induced by a projective automorphism.
/// Matrices are normalized (first nonzero entry one), sorted by Weyl index.
struct Automorphism {
  Mat4 matrix;
  e6::Perm perm;
};
std::vector<Automorphism> automorphism_group(const HomForm& f, const MarkedLines& m);

using PlanePoint = std::array<Elem, 3>;
/// Blow-up of six points of P^2 in general position, embedded by the plane
/// cubics through them. Throws Error(not_general_position).
struct SixPointSurface {
  HomForm f;
  std::array<ProjLine, 6> exceptional;  // images of the blown-up points
  std::array<HomForm, 4> cubics;        // the embedding, as forms in x0..x2
};
SixPointSurface from_six_points(Field f, const std::array<PlanePoint, 6>& pts);
/// Seeded random general-position points.
std::array<PlanePoint, 6> random_six_points(Field f, std::uint64_t seed);

/// Convenience: lines, marking and planes of a split smooth surface.
struct SplitSurface {
  HomForm f;
  MarkedLines marking;
  std::vector<TritangentPlane> planes;
};
/// Throws Error(not_split) when fewer than 27 lines are rational.
SplitSurface split_surface(const HomForm& f);

/// Tangent plane at a smooth point of f (first nonzero coefficient one).
Point tangent_plane(const HomForm& f, const Point& p);
/// A point of f whose tangent section is three distinct concurrent lines;
/// needs no marking or splitting field.
bool is_eckardt_point(const HomForm& f, const Point& p);
/// The harmonic homology of type 2A centered at an Eckardt point, with the
/// second component of the polar quadric as axis (odd characteristic).
Mat4 eckardt_involution(const HomForm& f, const Point& q);

}  // namespace octa
