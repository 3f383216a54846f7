#ifndef EULERDATA_TEST_SUPPORT_HPP
#define EULERDATA_TEST_SUPPORT_HPP

#include <random>
#include <vector>

#include "eulerdata/ratfunc.hpp"

namespace testsupport {

using namespace eulerdata;

inline MultiPoly U() { return MultiPoly::variable(Var::u); }
inline MultiPoly X() { return MultiPoly::variable(Var::x); }
inline MultiPoly A() { return MultiPoly::variable(Var::alpha); }
inline MultiPoly K() { return MultiPoly::variable(Var::kappa); }
inline MultiPoly H() { return MultiPoly::variable(Var::h); }
inline MultiPoly T() { return MultiPoly::variable(Var::t); }
inline MultiPoly C(long v) { return MultiPoly::constant(Rational(v)); }

inline Rational random_rational(std::mt19937& rng, long range = 6) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, range);
  return Rational(num(rng), den(rng));
}

inline MultiPoly random_poly(std::mt19937& rng, const std::vector<Var>& vars, int max_terms = 4,
                             int max_exp = 3, long coeff_range = 6) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> exp(0, max_exp);
  MultiPoly p(VariableTable::canonical());
  int terms = nterms(rng);
  for (int i = 0; i < terms; ++i) {
    Monomial m(VariableTable::canonical().size());
    for (Var v : vars) m.set_exp(v, static_cast<std::uint16_t>(exp(rng)));
    p.add_term(m, random_rational(rng, coeff_range));
  }
  return p;
}

inline MultiPoly random_nonzero_poly(std::mt19937& rng, const std::vector<Var>& vars,
                                     int max_terms = 4, int max_exp = 3) {
  while (true) {
    MultiPoly p = random_poly(rng, vars, max_terms, max_exp);
    if (!p.is_zero()) return p;
  }
}

}  // namespace testsupport

#endif
