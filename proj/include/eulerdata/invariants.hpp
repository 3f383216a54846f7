#ifndef EULERDATA_INVARIANTS_HPP
#define EULERDATA_INVARIANTS_HPP

#include <vector>

#include "eulerdata/euler_engine.hpp"

// Extraction of the intersection numbers K_d from each Q_d via the
// nonequivariant limit and the truncated-series integral formula, the
// cross-check route, and conversion to instanton numbers.

namespace eulerdata {

/// A K_d or n_d entry: an exact rational times x^x_exp.
struct KdValue {
  Rational value;
  int x_exp = 0;

  friend bool operator==(const KdValue& a, const KdValue& b) {
    if (a.value.is_zero() && b.value.is_zero()) return true;
    return a.value == b.value && a.x_exp == b.x_exp;
  }
  friend bool operator!=(const KdValue& a, const KdValue& b) { return !(a == b); }

  std::string str() const {
    if (x_exp == 0 || value.is_zero()) return value.str();
    std::string s = value.str();
    bool simple = value.is_integer() && value.sign() >= 0;
    std::string head = simple ? s : "(" + s + ")";
    return head + "*x" + (x_exp > 1 ? "^" + std::to_string(x_exp) : "");
  }
};

/// lim_{u -> 0} I*_d(Q_d): reduce modulo prod(kappa - lambda_i), evaluate
/// at u = 0, rename kappa to h. The result lives in (alpha, h, x).
inline MultiPoly nonequivariant_restriction(const EulerDatum& datum, int n,
                                            const Specialization& spec,
                                            const VariableTable& table = VariableTable::canonical()) {
  MultiPoly reduced = poly_congruent(datum.q, static_cast<unsigned>(n + 1),
                                     kappa_relation_rhs(n, spec, table), Var::kappa);
  MultiPoly at0 = reduced.eval_var(Var::u, Rational(0));
  return at0.substitute(Var::kappa, MultiPoly::variable(Var::h, 1, table));
}

namespace invariant_detail {

// coeff of h^target in [sum_k (-ht/alpha)^k/k!] * prod_{m=1}^d
// [sum_r (h/(m alpha))^r]^{n+1} * J / ((d!)^{n+1} (-alpha)^{(n+1)d}),
// returned with the known power of alpha cleared: the caller receives
// C(t, alpha) such that the true coefficient is
//   C * (-1)^{(n+1)d} / ((d!)^{(n+1)^2} * alpha^{n + d(n+1)^2}).
inline MultiPoly series_coefficient(const MultiPoly& J, int d, int n, unsigned target,
                                    const VariableTable& table) {
  const unsigned hmax = static_cast<unsigned>(n);
  MultiPoly hvar = MultiPoly::variable(Var::h, 1, table);
  MultiPoly tvar = MultiPoly::variable(Var::t, 1, table);
  MultiPoly avar = MultiPoly::variable(Var::alpha, 1, table);

  // A' = sum_{k<=n} (-1)^k h^k t^k alpha^{n-k} / k!
  MultiPoly acc(table);
  for (int k = 0; k <= n; ++k) {
    Rational c = Rational(k % 2 ? -1 : 1) / factorial(static_cast<unsigned>(k));
    acc += hvar.pow(static_cast<unsigned>(k)) * tvar.pow(static_cast<unsigned>(k)) *
           avar.pow(static_cast<unsigned>(n - k)) * c;
  }
  for (int m = 1; m <= d; ++m) {
    // S_m = sum_{r<=n} h^r (m alpha)^{n-r}
    MultiPoly sm(table);
    for (int r = 0; r <= n; ++r)
      sm += hvar.pow(static_cast<unsigned>(r)) * avar.pow(static_cast<unsigned>(n - r)) *
            Rational(m).pow(static_cast<unsigned long>(n - r));
    for (int e = 0; e < n + 1; ++e) acc = MultiPoly::mul_truncated(acc, sm, Var::h, hmax);
  }
  acc = MultiPoly::mul_truncated(acc, J, Var::h, hmax);
  return acc.coeff_of(Var::h, target);
}

inline Rational extract_pure(const MultiPoly& p, unsigned alpha_exp, const char* where) {
  if (p.is_zero()) return Rational(0);
  if (p.term_count() != 1)
    throw EngineError(where, "residual variable dependence: " + p.str());
  const Monomial& m = p.leading_monomial();
  Monomial expect(p.table().size());
  expect.set_exp(Var::alpha, static_cast<std::uint16_t>(alpha_exp));
  if (!(m == expect))
    throw EngineError(where, "unexpected monomial in " + p.str());
  return p.leading_coeff();
}

// (1/s!) d^s/dx^s at x = 0.
inline MultiPoly x_derivative_at_zero(MultiPoly J, int s) {
  for (int k = 0; k < s; ++k) J = J.derivative(Var::x);
  return J.eval_var(Var::x, Rational(0));
}

}  // namespace invariant_detail

/// K_d from the nonequivariant restriction J: form the truncated series
/// poly1 and take alpha^3/(2 - d t) * coeff(poly1, h^n), which must reduce
/// to a pure rational; s is the x-adjustment order (0 in euler mode). The
/// derivative is applied before the series, the 1/s! after extraction, and
/// the result carries x^s.
inline KdValue kd_from_qd(const MultiPoly& J, int d, int n, int s,
                          const VariableTable& table = VariableTable::canonical()) {
  if (J.contains_var(Var::u))
    throw StructuralError("kd_from_qd: restriction still contains u");
  MultiPoly poly = s > 0 ? invariant_detail::x_derivative_at_zero(J, s) : J;
  MultiPoly C = invariant_detail::series_coefficient(poly, d, n, static_cast<unsigned>(n), table);
  // alpha^3/(2 - d t) * C / alpha^P with P = n + d(n+1)^2
  MultiPoly divisor = MultiPoly::constant(2, table) -
                      MultiPoly::variable(Var::t, 1, table) * Rational(d);
  auto D = C.try_divide_exact(divisor);
  if (!D) throw EngineError("kd_from_qd", "t-factor (2 - d t) did not divide exactly");
  unsigned P = static_cast<unsigned>(n) + static_cast<unsigned>(d) *
                                              static_cast<unsigned>((n + 1) * (n + 1));
  Rational k = invariant_detail::extract_pure(*D, P - 3, "kd_from_qd");
  int np1d = (n + 1) * d;
  if (np1d % 2) k = -k;
  k /= factorial(static_cast<unsigned>(d)).pow(static_cast<unsigned long>((n + 1) * (n + 1)));
  if (s > 0) k /= factorial(static_cast<unsigned>(s));
  return {k, s};
}

/// Second route: K_d = alpha^2 * coeff(h * poly1, h^n) / d, with no
/// t-division; agreement with kd_from_qd is an exactness cross-check.
inline KdValue kd_crosscheck(const MultiPoly& J, int d, int n, int s,
                             const VariableTable& table = VariableTable::canonical()) {
  if (J.contains_var(Var::u))
    throw StructuralError("kd_crosscheck: restriction still contains u");
  if (n == 0) throw StructuralError("kd_crosscheck: n must be >= 1");
  MultiPoly poly = s > 0 ? invariant_detail::x_derivative_at_zero(J, s) : J;
  MultiPoly C = invariant_detail::series_coefficient(poly, d, n, static_cast<unsigned>(n - 1), table);
  unsigned P = static_cast<unsigned>(n) + static_cast<unsigned>(d) *
                                              static_cast<unsigned>((n + 1) * (n + 1));
  Rational k = invariant_detail::extract_pure(C, P - 2, "kd_crosscheck");
  int np1d = (n + 1) * d;
  if (np1d % 2) k = -k;
  k /= factorial(static_cast<unsigned>(d)).pow(static_cast<unsigned long>((n + 1) * (n + 1)));
  k /= Rational(d);
  if (s > 0) k /= factorial(static_cast<unsigned>(s));
  return {k, s};
}

/// Multiple cover conversion: n_d = K_d - sum_{k | d, k >= 2} n_{d/k} / k^3,
/// applied to the scalar parts in degree order; x-exponents carry through.
inline std::vector<KdValue> instanton_convert(const std::vector<KdValue>& K) {
  std::vector<KdValue> out;
  out.reserve(K.size());
  for (std::size_t idx = 0; idx < K.size(); ++idx) {
    int d = static_cast<int>(idx) + 1;
    Rational nd = K[idx].value;
    for (int k = 2; k <= d; ++k) {
      if (d % k != 0) continue;
      nd -= out[static_cast<std::size_t>(d / k) - 1].value / Rational(k).pow(3);
    }
    out.push_back({nd, K[idx].x_exp});
  }
  return out;
}

/// Inverse direction, used as the round-trip oracle:
/// K_d = sum_{k | d} n_{d/k} / k^3.
inline std::vector<KdValue> multiple_cover_sum(const std::vector<KdValue>& n) {
  std::vector<KdValue> out;
  out.reserve(n.size());
  for (std::size_t idx = 0; idx < n.size(); ++idx) {
    int d = static_cast<int>(idx) + 1;
    Rational kd(0);
    for (int k = 1; k <= d; ++k) {
      if (d % k != 0) continue;
      kd += n[static_cast<std::size_t>(d / k) - 1].value / Rational(k).pow(3);
    }
    out.push_back({kd, n[idx].x_exp});
  }
  return out;
}

}  // namespace eulerdata

#endif
