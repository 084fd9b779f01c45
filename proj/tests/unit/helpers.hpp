#pragma once

#include <random>

#include "octa/poly.hpp"

namespace testing_helpers {

using namespace octa;

inline HomForm var(Field f, int i) { return HomForm::variable(f, i); }

inline HomForm fermat(Field f) {
  return var(f, 0).pow(3) + var(f, 1).pow(3) + var(f, 2).pow(3) + var(f, 3).pow(3);
}

inline HomForm octanomial_form(const Elem& a0, const Elem& a1, const Elem& a2, const Elem& a3) {
  Field f = a0.field();
  return var(f, 0) * var(f, 1) * (var(f, 0) + var(f, 1) + var(f, 2) * a3 + var(f, 3) * a2) +
         var(f, 2) * var(f, 3) * (var(f, 0) * a1 + var(f, 1) * a0 + var(f, 2) + var(f, 3));
}

inline HomForm octanomial_form(Field f, int a0, int a1, int a2, int a3) {
  return octanomial_form(f.from_int(a0), f.from_int(a1), f.from_int(a2), f.from_int(a3));
}

inline Elem random_elem(Field f, std::mt19937_64& rng) { return f.element_at(rng() % *f.cardinality()); }

inline HomForm random_form(Field f, int degree, std::mt19937_64& rng) {
  std::vector<Elem> c;
  for (std::size_t i = 0; i < monomials(degree).size(); ++i) c.push_back(random_elem(f, rng));
  return HomForm(f, degree, c);
}

}  // namespace testing_helpers
