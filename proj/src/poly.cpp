#include "octa/poly.hpp"

namespace octa {

namespace {

constexpr int kMaxDegree = 12;

struct MonomialTables {
  std::vector<std::vector<Exponents>> lists;
  std::vector<std::vector<int>> index;  // keyed by (d0, d1, d2)

  MonomialTables() {
    for (int d = 0; d <= kMaxDegree; ++d) {
      std::vector<Exponents> list;
      std::vector<int> idx((d + 1) * (d + 1) * (d + 1), -1);
      for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b)
          for (int c = d - a - b; c >= 0; --c) {
            idx[(a * (d + 1) + b) * (d + 1) + c] = static_cast<int>(list.size());
            list.push_back({a, b, c, d - a - b - c});
          }
      lists.push_back(std::move(list));
      index.push_back(std::move(idx));
    }
  }
};

const MonomialTables& tables() {
  static const MonomialTables t;
  return t;
}

void check_degree(int d) {
  if (d < 0 || d > kMaxDegree) throw Error(ErrorCode::spec_mismatch, "form degree out of range");
}

Elem parse_literal(Field f, const nlohmann::json& j) {
  if (j.is_string()) return f.parse_elem(j.get<std::string>());
  if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
  if (j.is_array()) return f.parse_elem(j.dump());
  throw Error(ErrorCode::parse_error, "bad element literal " + j.dump());
}

}  // namespace

const std::vector<Exponents>& monomials(int degree) {
  check_degree(degree);
  return tables().lists[degree];
}

std::size_t monomial_index(const Exponents& e) {
  const int d = e[0] + e[1] + e[2] + e[3];
  check_degree(d);
  return static_cast<std::size_t>(tables().index[d][(e[0] * (d + 1) + e[1]) * (d + 1) + e[2]]);
}

// ---------------------------------------------------------------------------
// Mat4

Mat4::Mat4(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != 4 || m_.cols() != 4) throw Error(ErrorCode::spec_mismatch, "Mat4 must be 4x4");
}

Mat4::Mat4(Field f, const std::array<Elem, 16>& entries) : m_(f, 4, 4) {
  for (int i = 0; i < 16; ++i) m_(i / 4, i % 4) = entries[i];
}

Mat4 Mat4::identity(Field f) { return Mat4(Matrix::identity(f, 4)); }

Mat4 Mat4::diagonal(const Point& d) {
  Matrix m(d[0].field(), 4, 4);
  for (int i = 0; i < 4; ++i) m(i, i) = d[i];
  return Mat4(std::move(m));
}

Mat4 Mat4::from_ints(Field f, const std::array<std::int64_t, 16>& entries) {
  Matrix m(f, 4, 4);
  for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = f.from_int(entries[i]);
  return Mat4(std::move(m));
}

Mat4 Mat4::operator*(const Elem& s) const {
  Matrix m = m_;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) *= s;
  return Mat4(std::move(m));
}

Point Mat4::apply(const Point& p) const {
  Point r;
  for (int i = 0; i < 4; ++i) {
    Elem acc = field().zero();
    for (int j = 0; j < 4; ++j) acc += m_(i, j) * p[j];
    r[i] = acc;
  }
  return r;
}

Mat4 Mat4::normalized() const {
  for (int i = 0; i < 16; ++i)
    if (!m_(i / 4, i % 4).is_zero()) return *this * m_(i / 4, i % 4).inv();
  return *this;
}

bool Mat4::projectively_equal(const Mat4& o) const { return normalized() == o.normalized(); }

bool Mat4::is_scalar() const {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i != j && !m_(i, j).is_zero()) return false;
      if (i == j && m_(i, i) != m_(0, 0)) return false;
    }
  return !m_(0, 0).is_zero();
}

std::optional<int> Mat4::projective_order(int bound) const {
  Mat4 acc = *this;
  for (int n = 1; n <= bound; ++n) {
    if (acc.is_scalar()) return n;
    acc = (acc * *this).normalized();
  }
  return std::nullopt;
}

nlohmann::json Mat4::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (int i = 0; i < 16; ++i) j.push_back(m_(i / 4, i % 4).to_string());
  return j;
}

Mat4 Mat4::from_json(Field f, const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 16) throw Error(ErrorCode::parse_error, "matrix must be 16 entries");
  std::array<Elem, 16> e;
  for (int i = 0; i < 16; ++i) e[i] = parse_literal(f, j[i]);
  return Mat4(f, e);
}

// ---------------------------------------------------------------------------
// HomForm

HomForm::HomForm(Field f, int degree) : field_(f), degree_(degree), c_(monomials(degree).size(), f.zero()) {}

HomForm::HomForm(Field f, int degree, std::vector<Elem> coeffs) : field_(f), degree_(degree), c_(std::move(coeffs)) {
  if (c_.size() != monomials(degree).size())
    throw Error(ErrorCode::spec_mismatch, "wrong number of coefficients for the degree");
  for (const auto& c : c_)
    if (c.data() != f.data()) throw Error(ErrorCode::spec_mismatch, "coefficient from another field");
}

HomForm HomForm::variable(Field f, int i) {
  Exponents e{0, 0, 0, 0};
  e[i] = 1;
  return monomial(f.one(), e);
}

HomForm HomForm::monomial(const Elem& c, const Exponents& e) {
  HomForm h(c.field(), e[0] + e[1] + e[2] + e[3]);
  h.set_coeff(e, c);
  return h;
}

HomForm HomForm::linear(const Point& c) {
  HomForm h(c[0].field(), 1);
  // degree-1 order is x0, x1, x2, x3
  for (int i = 0; i < 4; ++i) h.c_[i] = c[i];
  return h;
}

HomForm HomForm::constant(const Elem& c) { return HomForm(c.field(), 0, {c}); }

bool HomForm::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

std::size_t HomForm::term_count() const {
  std::size_t n = 0;
  for (const auto& c : c_)
    if (!c.is_zero()) ++n;
  return n;
}

HomForm HomForm::operator+(const HomForm& o) const {
  if (degree_ != o.degree_ || field_ != o.field_) throw Error(ErrorCode::spec_mismatch, "adding incompatible forms");
  HomForm r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

HomForm HomForm::operator-() const {
  HomForm r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

HomForm HomForm::operator-(const HomForm& o) const { return *this + (-o); }

HomForm HomForm::operator*(const HomForm& o) const {
  if (field_ != o.field_) throw Error(ErrorCode::spec_mismatch, "multiplying forms over different fields");
  HomForm r(field_, degree_ + o.degree_);
  const auto& ma = monomials(degree_);
  const auto& mb = monomials(o.degree_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      Exponents e;
      for (int k = 0; k < 4; ++k) e[k] = ma[i][k] + mb[j][k];
      r.c_[monomial_index(e)] += c_[i] * o.c_[j];
    }
  }
  return r;
}

HomForm HomForm::operator*(const Elem& s) const {
  HomForm r = *this;
  for (auto& c : r.c_) c *= s;
  return r;
}

bool HomForm::operator==(const HomForm& o) const {
  return field_ == o.field_ && degree_ == o.degree_ && c_ == o.c_;
}

HomForm HomForm::pow(int e) const {
  HomForm r = constant(field_.one());
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

Elem HomForm::eval(const Point& p) const {
  for (const auto& x : p)
    if (x.data() != field_.data()) throw Error(ErrorCode::spec_mismatch, "point from another field");
  std::array<std::vector<Elem>, 4> powers;
  for (int k = 0; k < 4; ++k) {
    powers[k].push_back(field_.one());
    for (int e = 1; e <= degree_; ++e) powers[k].push_back(powers[k].back() * p[k]);
  }
  const auto& ms = monomials(degree_);
  Elem acc = field_.zero();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    const auto& e = ms[i];
    acc += c_[i] * powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]] * powers[3][e[3]];
  }
  return acc;
}

HomForm HomForm::compose(const std::array<HomForm, 4>& l) const {
  const int ld = l[0].degree();
  std::array<std::vector<HomForm>, 4> powers;
  for (int k = 0; k < 4; ++k) {
    if (l[k].degree() != ld) throw Error(ErrorCode::spec_mismatch, "compose needs forms of a common degree");
    powers[k].push_back(constant(field_.one()));
    for (int e = 1; e <= degree_; ++e) powers[k].push_back(powers[k].back() * l[k]);
  }
  HomForm r(field_, degree_ * ld);
  const auto& ms = monomials(degree_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    const auto& e = ms[i];
    r = r + powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]] * powers[3][e[3]] * c_[i];
  }
  return r;
}

HomForm HomForm::substitute(const Mat4& m) const {
  if (m.det().is_zero()) throw Error(ErrorCode::singular_matrix, "substitution matrix is singular");
  std::array<HomForm, 4> rows;
  for (int i = 0; i < 4; ++i) rows[i] = linear({m(i, 0), m(i, 1), m(i, 2), m(i, 3)});
  return compose(rows);
}

HomForm HomForm::partial(int i) const {
  if (degree_ == 0) return HomForm(field_, 0);
  HomForm r(field_, degree_ - 1);
  const auto& ms = monomials(degree_);
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j].is_zero() || ms[j][i] == 0) continue;
    Exponents e = ms[j];
    Elem factor = field_.from_int(e[i]);
    --e[i];
    r.c_[monomial_index(e)] += c_[j] * factor;
  }
  return r;
}

std::array<HomForm, 4> HomForm::partials() const { return {partial(0), partial(1), partial(2), partial(3)}; }

Point HomForm::linear_coeffs() const {
  if (degree_ != 1) throw Error(ErrorCode::spec_mismatch, "not a linear form");
  return {c_[0], c_[1], c_[2], c_[3]};
}

std::string HomForm::to_string() const {
  std::string s;
  const auto& ms = monomials(degree_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string mono;
    for (int k = 0; k < 4; ++k) {
      if (ms[i][k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(k);
      if (ms[i][k] > 1) mono += "^" + std::to_string(ms[i][k]);
    }
    if (mono.empty()) {
      s += c_[i].to_string();
    } else if (c_[i].is_one()) {
      s += mono;
    } else {
      s += c_[i].to_string() + "*" + mono;
    }
  }
  return s.empty() ? "0" : s;
}

nlohmann::json HomForm::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : c_) coeffs.push_back(c.to_string());
  return {{"field", field_.spec().to_string()}, {"degree", degree_}, {"coeffs", coeffs}};
}

HomForm HomForm::from_json(const nlohmann::json& j) {
  try {
    Field f = Field::parse(j.at("field").get<std::string>());
    int degree = j.at("degree").get<int>();
    const auto& cj = j.at("coeffs");
    if (!cj.is_array() || cj.size() != monomials(degree).size())
      throw Error(ErrorCode::parse_error, "coefficient count does not match the degree");
    std::vector<Elem> c;
    for (const auto& x : cj) c.push_back(parse_literal(f, x));
    return HomForm(f, degree, std::move(c));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

std::optional<Elem> scalar_multiple(const HomForm& f, const HomForm& g) {
  if (f.field() != g.field() || f.degree() != g.degree()) return std::nullopt;
  std::optional<Elem> lambda;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    const Elem& a = f.coeffs()[i];
    const Elem& b = g.coeffs()[i];
    if (b.is_zero()) {
      if (!a.is_zero()) return std::nullopt;
      continue;
    }
    if (a.is_zero()) return std::nullopt;
    Elem r = a / b;
    if (!lambda) {
      lambda = r;
    } else if (*lambda != r) {
      return std::nullopt;
    }
  }
  return lambda;
}

// ---------------------------------------------------------------------------
// points

bool is_zero_point(const Point& p) {
  for (const auto& x : p)
    if (!x.is_zero()) return false;
  return true;
}

Point normalize_point(const Point& p) {
  for (const auto& x : p) {
    if (x.is_zero()) continue;
    Elem inv = x.inv();
    Point r;
    for (int i = 0; i < 4; ++i) r[i] = p[i] * inv;
    return r;
  }
  throw Error(ErrorCode::spec_mismatch, "the zero vector is not a projective point");
}

std::string point_to_string(const Point& p) {
  std::string s = "(";
  for (int i = 0; i < 4; ++i) s += (i ? "," : "") + p[i].to_string();
  return s + ")";
}

nlohmann::json point_to_json(const Point& p) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& x : p) j.push_back(x.to_string());
  return j;
}

Point point_from_json(Field f, const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::parse_error, "point must have 4 coordinates");
  return {parse_literal(f, j[0]), parse_literal(f, j[1]), parse_literal(f, j[2]), parse_literal(f, j[3])};
}

Elem elem_from_json(Field f, const nlohmann::json& j) { return parse_literal(f, j); }

Point make_point(Field f, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return {f.from_int(a), f.from_int(b), f.from_int(c), f.from_int(d)};
}

}  // namespace octa
