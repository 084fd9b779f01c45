#pragma once

// Homogeneous forms in x0..x3 and 4x4 projective coordinate changes.
//
// Coefficients are stored densely, one slot per monomial of the form's
// degree, in lexicographically descending order of (d0,d1,d2,d3). A cubic is
// therefore always a vector of 20 coefficients starting at x0^3.
//
// Substitution convention: (f o M)(x) = f(M x). Row i of M is the linear form
// that replaces x_i.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "octa/fields.hpp"
#include "octa/linalg.hpp"

namespace octa {

using Exponents = std::array<int, 4>;
using Point = std::array<Elem, 4>;

/// Monomials of degree d in the serialization order.
const std::vector<Exponents>& monomials(int degree);
/// Position of a monomial in monomials(sum of e).
std::size_t monomial_index(const Exponents& e);

class Mat4 {
 public:
  Mat4() = default;
  explicit Mat4(Matrix m);
  /// Row-major entries.
  Mat4(Field f, const std::array<Elem, 16>& entries);
  static Mat4 identity(Field f);
  static Mat4 diagonal(const Point& d);
  /// Integer entries, row-major.
  static Mat4 from_ints(Field f, const std::array<std::int64_t, 16>& entries);

  Field field() const { return m_.field(); }
  const Matrix& matrix() const { return m_; }
  const Elem& operator()(int r, int c) const { return m_(r, c); }
  Elem& operator()(int r, int c) { return m_(r, c); }

  Mat4 operator*(const Mat4& o) const { return Mat4(m_ * o.m_); }
  Mat4 operator*(const Elem& s) const;
  Point apply(const Point& p) const;
  Mat4 transpose() const { return Mat4(m_.transpose()); }
  Elem det() const { return m_.det(); }
  /// Throws Error(singular_matrix).
  Mat4 inverse() const { return Mat4(m_.inverse()); }
  bool operator==(const Mat4& o) const { return m_ == o.m_; }
  /// Equal up to a nonzero scalar.
  bool projectively_equal(const Mat4& o) const;
  bool is_scalar() const;
  /// Smallest n >= 1 with M^n scalar, or empty if none up to `bound`.
  std::optional<int> projective_order(int bound = 120) const;
  /// Scale so that the first nonzero entry is one.
  Mat4 normalized() const;

  nlohmann::json to_json() const;
  static Mat4 from_json(Field f, const nlohmann::json& j);

 private:
  Matrix m_;
};

class HomForm {
 public:
  HomForm() = default;
  /// The zero form of the given degree.
  HomForm(Field f, int degree);
  /// Coefficients in serialization order.
  HomForm(Field f, int degree, std::vector<Elem> coeffs);

  static HomForm variable(Field f, int i);
  static HomForm monomial(const Elem& c, const Exponents& e);
  static HomForm linear(const Point& c);
  static HomForm constant(const Elem& c);

  Field field() const { return field_; }
  int degree() const { return degree_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  Elem coeff(const Exponents& e) const { return c_[monomial_index(e)]; }
  void set_coeff(const Exponents& e, const Elem& v) { c_[monomial_index(e)] = v; }
  bool is_zero() const;
  std::size_t term_count() const;

  HomForm operator+(const HomForm& o) const;
  HomForm operator-(const HomForm& o) const;
  HomForm operator-() const;
  HomForm operator*(const HomForm& o) const;
  HomForm operator*(const Elem& s) const;
  bool operator==(const HomForm& o) const;
  bool operator!=(const HomForm& o) const { return !(*this == o); }
  HomForm pow(int e) const;

  Elem eval(const Point& p) const;
  /// f o M. Throws Error(singular_matrix) when M is not invertible.
  HomForm substitute(const Mat4& m) const;
  /// f(L0, L1, L2, L3) for arbitrary forms L_i of a common degree.
  HomForm compose(const std::array<HomForm, 4>& l) const;
  HomForm partial(int i) const;
  std::array<HomForm, 4> partials() const;
  /// Linear forms only: the coefficient vector (c0..c3).
  Point linear_coeffs() const;

  std::string to_string() const;
  nlohmann::json to_json() const;
  static HomForm from_json(const nlohmann::json& j);

 private:
  Field field_;
  int degree_ = 0;
  std::vector<Elem> c_;
};

/// lambda != 0 with f = lambda * g, if any. Zero forms never match.
std::optional<Elem> scalar_multiple(const HomForm& f, const HomForm& g);

/// Scale a nonzero point so that its first nonzero coordinate is one.
Point normalize_point(const Point& p);
bool is_zero_point(const Point& p);
std::string point_to_string(const Point& p);
nlohmann::json point_to_json(const Point& p);
Point point_from_json(Field f, const nlohmann::json& j);
/// Element literal from JSON: a string, an integer or a coefficient array.
Elem elem_from_json(Field f, const nlohmann::json& j);

Point make_point(Field f, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

}  // namespace octa
