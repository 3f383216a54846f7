#ifndef EULERDATA_EULER_ENGINE_HPP
#define EULERDATA_EULER_ENGINE_HPP

#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "eulerdata/bundle.hpp"
#include "eulerdata/linear.hpp"

// Construction of the Euler data Q = {Q_d} attached to a splitting type
// over CP^n: Q_1 in closed form from fixed-point localization, then each
// Q_d (d >= 2) by assembling four linear systems in the ansatz unknowns
// w_{mu,nu} and solving them exactly under the specialization
// lambda_i = s(i) * u.

namespace eulerdata {

/// Q_d as a polynomial over the full alphabet (alpha, kappa, u, x).
struct EulerDatum {
  int degree = 0;
  MultiPoly q;
};

/// The degree-d unknown layout: Q_d = sum w_{mu,nu} alpha^mu kappa^nu over
/// 0 <= mu <= N, 0 <= nu <= N - mu, with N = (n+1)d + n - 3. Unknown ids
/// run mu-outer, nu-inner.
struct Ansatz {
  int degree;
  int N;

  Ansatz(int d, int n) : degree(d), N((n + 1) * d + n - 3) {
    if (N < 0) throw StructuralError("Ansatz: negative degree bound");
  }

  int unknown_count() const { return (N + 1) * (N + 2) / 2; }

  UnknownId id(int mu, int nu) const {
    // offset(mu) = sum_{m<mu} (N - m + 1)
    return mu * (N + 1) - mu * (mu - 1) / 2 + nu;
  }

  std::pair<int, int> mu_nu(UnknownId w) const {
    int mu = 0;
    int row = N + 1;
    while (w >= row) {
      w -= row;
      --row;
      ++mu;
    }
    return {mu, w};
  }

  std::vector<UnknownId> unknown_ids() const {
    std::vector<UnknownId> ids(static_cast<std::size_t>(unknown_count()));
    for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = static_cast<UnknownId>(k);
    return ids;
  }
};

// ---------------------------------------------------------------------
// Special values and the degree-one datum
// ---------------------------------------------------------------------

/// The known restriction value of Q_d at the fixed point p_{i,0} with
/// alpha = (lambda_i - lambda_j)/d:
///   prod_a prod_{m=0}^{l_a d} (x + l_a lambda_i - m (lambda_i-lambda_j)/d)
/// * prod_b prod_{m=1}^{k_b d - 1} (x - k_b lambda_i + m (lambda_i-lambda_j)/d),
/// with x identically 0 in euler mode; empty products are 1.
inline MultiPoly special_value(const BundleSpec& bundle, const OmegaClass& omega, int i, int j,
                               int d, const Specialization& spec,
                               const VariableTable& table = VariableTable::canonical()) {
  if (i == j) throw StructuralError("special_value: requires i != j");
  if (d < 1) throw StructuralError("special_value: requires d >= 1");
  MultiPoly uvar = MultiPoly::variable(Var::u, 1, table);
  MultiPoly xv = omega.kind == OmegaKind::kChern ? MultiPoly::variable(Var::x, 1, table)
                                                 : MultiPoly(table);
  Rational si(spec.scale(i));
  Rational step = Rational(mpz_class(spec.scale(i) - spec.scale(j))) / Rational(d);
  MultiPoly out = MultiPoly::constant(1, table);
  for (int l : bundle.convex)
    for (int m = 0; m <= l * d; ++m)
      out *= xv + uvar * (Rational(l) * si - Rational(m) * step);
  for (int k : bundle.concave)
    for (int m = 1; m <= k * d - 1; ++m)
      out *= xv + uvar * (Rational(-k) * si + Rational(m) * step);
  return out;
}

/// Restriction of Q_1 at p_{i,0}: the unique polynomial of degree <= n-1 in
/// alpha through the n points (alpha = lambda_i - lambda_j, special value),
/// via Lagrange interpolation.
inline MultiPoly q1_restriction(const BundleSpec& bundle, const OmegaClass& omega, int i,
                                const Specialization& spec,
                                const VariableTable& table = VariableTable::canonical()) {
  const int n = bundle.n;
  MultiPoly uvar = MultiPoly::variable(Var::u, 1, table);
  MultiPoly avar = MultiPoly::variable(Var::alpha, 1, table);
  MultiPoly sum(table);
  for (int j = 0; j <= n; ++j) {
    if (j == i) continue;
    // node numerator prod_{k != i,j} (alpha - lambda_i + lambda_k), node
    // denominator prod_{k != i,j} (lambda_k - lambda_j) = C_ij * u^(n-1).
    MultiPoly numer = special_value(bundle, omega, i, j, 1, spec, table);
    mpz_class cden = 1;
    for (int k = 0; k <= n; ++k) {
      if (k == i || k == j) continue;
      numer *= avar + uvar * Rational(mpz_class(spec.scale(k) - spec.scale(i)));
      cden *= spec.scale(k) - spec.scale(j);
    }
    sum += numer * Rational(mpz_class(1), cden);
  }
  if (n == 1) return sum;
  // The u^(n-1) common to all node denominators divides the sum exactly.
  MultiPoly shift = MultiPoly::variable(Var::u, static_cast<unsigned>(n - 1), table);
  auto q = sum.try_divide_exact(shift);
  if (!q)
    throw EngineError("q1_restriction", "interpolation sum not divisible by u^(n-1)");
  return *q;
}

namespace engine_detail {

// One linear form c*u + e*alpha with a normalized key, for factored
// bookkeeping of localization denominators.
struct LinFormKey {
  mpz_class c;
  int e;
  bool operator<(const LinFormKey& o) const {
    int cc = cmp(c, o.c);
    if (cc != 0) return cc < 0;
    return e < o.e;
  }
  bool operator==(const LinFormKey& o) const { return c == o.c && e == o.e; }
};

struct FactoredDen {
  Rational scalar{1};
  std::map<LinFormKey, int> factors;

  void push(mpz_class c, int e) {
    if (c == 0 && e == 0)
      throw EngineError("build_q1", "vanishing localization weight");
    if (c < 0 || (c == 0 && e < 0)) {
      c = -c;
      e = -e;
      scalar = -scalar;
    }
    if (e == 0) {
      scalar *= Rational(c);
      ++factors[LinFormKey{mpz_class(0), 0}];  // plain u
      return;
    }
    if (c == 0) {
      scalar *= Rational(e);
      ++factors[LinFormKey{mpz_class(0), 1}];  // plain alpha, key (0, 1)
      return;
    }
    ++factors[LinFormKey{c, e}];
  }
};

inline MultiPoly linform_poly(const LinFormKey& k, const VariableTable& table) {
  if (k.c == 0 && k.e == 0) return MultiPoly::variable(Var::u, 1, table);
  if (k.c == 0 && k.e == 1) return MultiPoly::variable(Var::alpha, 1, table);
  return MultiPoly::variable(Var::u, 1, table) * Rational(k.c) +
         MultiPoly::variable(Var::alpha, 1, table) * Rational(k.e);
}

}  // namespace engine_detail

/// Q_1 assembled from the localization sum over the 2(n+1) fixed points of
/// the degree-one sigma-model space: every denominator
/// prod_{(j,s) != (i,r)} (lambda_i - lambda_j + (r-s) alpha) must cancel,
/// leaving a polynomial in (alpha, kappa).
inline EulerDatum build_q1(const BundleSpec& bundle, const OmegaClass& omega,
                           const Specialization& spec,
                           const VariableTable& table = VariableTable::canonical()) {
  using engine_detail::FactoredDen;
  using engine_detail::LinFormKey;
  const int n = bundle.n;
  MultiPoly uvar = MultiPoly::variable(Var::u, 1, table);
  MultiPoly avar = MultiPoly::variable(Var::alpha, 1, table);
  MultiPoly kvar = MultiPoly::variable(Var::kappa, 1, table);

  std::vector<MultiPoly> restriction;
  restriction.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    restriction.push_back(q1_restriction(bundle, omega, i, spec, table));

  struct Term {
    MultiPoly numer;
    FactoredDen den;
  };
  std::vector<Term> terms;
  std::map<LinFormKey, int> lcm;

  MultiPoly neg_alpha = -avar;
  for (int i = 0; i <= n; ++i) {
    for (int r = 0; r <= 1; ++r) {
      Term term;
      term.numer = r == 0 ? restriction[static_cast<std::size_t>(i)]
                          : restriction[static_cast<std::size_t>(i)].substitute(Var::alpha, neg_alpha);
      for (int j = 0; j <= n; ++j) {
        for (int s = 0; s <= 1; ++s) {
          if (j == i && s == r) continue;
          term.numer *= kvar - uvar * Rational(spec.scale(j)) - (s ? avar : MultiPoly(table));
          term.den.push(spec.scale(i) - spec.scale(j), r - s);
        }
      }
      for (const auto& [key, mult] : term.den.factors) {
        auto it = lcm.find(key);
        if (it == lcm.end())
          lcm.emplace(key, mult);
        else
          it->second = std::max(it->second, mult);
      }
      terms.push_back(std::move(term));
    }
  }

  MultiPoly total(table);
  for (auto& term : terms) {
    MultiPoly cofactor = MultiPoly::constant(term.den.scalar.reciprocal(), table);
    for (const auto& [key, mult] : lcm) {
      auto it = term.den.factors.find(key);
      int missing = mult - (it == term.den.factors.end() ? 0 : it->second);
      for (int k = 0; k < missing; ++k) cofactor *= engine_detail::linform_poly(key, table);
    }
    total += term.numer * cofactor;
  }

  for (const auto& [key, mult] : lcm) {
    MultiPoly f = engine_detail::linform_poly(key, table);
    for (int k = 0; k < mult; ++k) {
      auto q = total.try_divide_exact(f);
      if (!q)
        throw EngineError("build_q1",
                          "localization denominator (" + f.str() + ") did not cancel");
      total = std::move(*q);
    }
  }

  EulerDatum out;
  out.degree = 1;
  out.q = std::move(total);

  // Construction property: the fixed-point restrictions must be exact.
  for (int i = 0; i <= n; ++i) {
    MultiPoly li = spec.lambda(i, table);
    if (out.q.substitute(Var::kappa, li) != restriction[static_cast<std::size_t>(i)])
      throw EngineError("build_q1", "restriction at p_{" + std::to_string(i) + ",0} mismatched");
    MultiPoly at1 = out.q.substitute(Var::kappa, li + avar);
    if (at1 != restriction[static_cast<std::size_t>(i)].substitute(Var::alpha, neg_alpha))
      throw EngineError("build_q1", "restriction at p_{" + std::to_string(i) + ",1} mismatched");
  }
  return out;
}

// ---------------------------------------------------------------------
// Reduction modulo the hyperplane relation
// ---------------------------------------------------------------------

/// Minimal-degree representative of p modulo var^lhs_exp = rhs, where
/// deg_var(rhs) < lhs_exp. Iterated replacement of all higher powers.
inline MultiPoly poly_congruent(const MultiPoly& p, unsigned lhs_exp, const MultiPoly& rhs,
                                Var v) {
  if (rhs.degree(v) >= static_cast<int>(lhs_exp))
    throw StructuralError("poly_congruent: rhs degree must be below the replaced power");
  int d = p.degree(v);
  if (d < static_cast<int>(lhs_exp)) return p;
  const VariableTable& table = p.table();
  // reduced[e] = canonical representative of v^e
  std::vector<MultiPoly> reduced(static_cast<std::size_t>(d) + 1, MultiPoly(table));
  for (unsigned e = 0; e < lhs_exp; ++e)
    reduced[e] = MultiPoly::variable(v, e, table);
  MultiPoly vvar = MultiPoly::variable(v, 1, table);
  for (unsigned e = lhs_exp; e <= static_cast<unsigned>(d); ++e) {
    MultiPoly lifted = reduced[e - 1] * vvar;
    MultiPoly top = lifted.coeff_of(v, lhs_exp);  // free of v
    MultiPoly rest = lifted;
    rest -= top * MultiPoly::variable(v, lhs_exp, table);
    reduced[e] = rest + top * rhs;
  }
  MultiPoly out(table);
  std::vector<MultiPoly> coeffs = p.collect_coeffs(v);
  for (std::size_t e = 0; e < coeffs.size(); ++e) out += coeffs[e] * reduced[e];
  return out;
}

/// rhs of the relation kappa^{n+1} = kappa^{n+1} - prod_i(kappa - lambda_i).
inline MultiPoly kappa_relation_rhs(int n, const Specialization& spec,
                                    const VariableTable& table = VariableTable::canonical()) {
  MultiPoly kvar = MultiPoly::variable(Var::kappa, 1, table);
  MultiPoly prod = MultiPoly::constant(1, table);
  for (int i = 0; i <= n; ++i) prod *= kvar - spec.lambda(i, table);
  return MultiPoly::variable(Var::kappa, static_cast<unsigned>(n + 1), table) - prod;
}

// ---------------------------------------------------------------------
// The four linear systems
// ---------------------------------------------------------------------

/// Right side of the inner gluing identity at (i, r):
/// Q_r(lambda_i, -alpha) * Q_{d-r}(lambda_i, alpha) / Omega(lambda_i),
/// returned as its list of alpha-power coefficients.
inline std::vector<RatFunc> gluing_rhs(int i, int r, int d,
                                       const std::vector<EulerDatum>& priorQ,
                                       const OmegaClass& omega, const Specialization& spec,
                                       const VariableTable& table = VariableTable::canonical()) {
  if (r < 1 || r > d - 1) throw StructuralError("gluing_rhs: r out of range");
  MultiPoly li = spec.lambda(i, table);
  MultiPoly neg_alpha = -MultiPoly::variable(Var::alpha, 1, table);
  const MultiPoly& qr = priorQ[static_cast<std::size_t>(r) - 1].q;
  const MultiPoly& qdr = priorQ[static_cast<std::size_t>(d - r) - 1].q;
  MultiPoly left = qr.substitute(Var::kappa, li).substitute(Var::alpha, neg_alpha);
  MultiPoly right = qdr.substitute(Var::kappa, li);
  MultiPoly prod = left * right;
  RatFunc omega_inv = omega.at_lambda(li).reciprocal();
  std::vector<RatFunc> out;
  for (MultiPoly& c : prod.collect_coeffs(Var::alpha))
    out.push_back(RatFunc(std::move(c)) * omega_inv);
  return out;
}

/// System (1): Q_d(lambda_i + r alpha, alpha) agrees with the inner gluing
/// right side, one equation per (i, r, alpha-power).
inline std::vector<LinExpr> system_inner_gluing(const Ansatz& ansatz, int d,
                                                const std::vector<EulerDatum>& priorQ,
                                                const OmegaClass& omega,
                                                const Specialization& spec, int n,
                                                const VariableTable& table = VariableTable::canonical()) {
  if (d < 2) throw StructuralError("system_inner_gluing: requires d >= 2");
  const int N = ansatz.N;
  std::vector<LinExpr> out;
  for (int i = 0; i <= n; ++i) {
    Rational si(spec.scale(i));
    for (int r = 1; r <= d - 1; ++r) {
      std::vector<RatFunc> rhs = gluing_rhs(i, r, d, priorQ, omega, spec, table);
      for (int s = 0; s <= N; ++s) {
        LinExpr eq(table);
        for (int mu = 0; mu <= s; ++mu) {
          for (int nu = s - mu; nu <= N - mu; ++nu) {
            // binomial(nu, s-mu) r^(s-mu) lambda_i^(mu+nu-s)
            Rational c = binomial(static_cast<unsigned long>(nu),
                                  static_cast<unsigned long>(s - mu)) *
                         Rational(r).pow(static_cast<unsigned long>(s - mu)) *
                         si.pow(static_cast<unsigned long>(mu + nu - s));
            if (c.is_zero()) continue;
            MultiPoly coeff =
                MultiPoly::variable(Var::u, static_cast<unsigned>(mu + nu - s), table) * c;
            eq.add_coeff(ansatz.id(mu, nu), RatFunc(std::move(coeff)));
          }
        }
        if (static_cast<std::size_t>(s) < rhs.size()) eq.constant = -rhs[static_cast<std::size_t>(s)];
        if (!eq.is_zero()) out.push_back(std::move(eq));
      }
    }
  }
  return out;
}

/// System (2): Q_d(lambda_i + d alpha, alpha) = Q_d(lambda_i, -alpha), one
/// homogeneous equation per (i, alpha-power).
inline std::vector<LinExpr> system_boundary_gluing(const Ansatz& ansatz, int d,
                                                   const Specialization& spec, int n,
                                                   const VariableTable& table = VariableTable::canonical()) {
  if (d < 2) throw StructuralError("system_boundary_gluing: requires d >= 2");
  const int N = ansatz.N;
  std::vector<LinExpr> out;
  for (int i = 0; i <= n; ++i) {
    Rational si(spec.scale(i));
    for (int s = 0; s <= N; ++s) {
      LinExpr eq(table);
      for (int mu = 0; mu < s; ++mu) {
        for (int nu = s - mu; nu <= N - mu; ++nu) {
          Rational c = binomial(static_cast<unsigned long>(nu),
                                static_cast<unsigned long>(s - mu)) *
                       Rational(d).pow(static_cast<unsigned long>(s - mu)) *
                       si.pow(static_cast<unsigned long>(mu + nu - s));
          if (c.is_zero()) continue;
          MultiPoly coeff =
              MultiPoly::variable(Var::u, static_cast<unsigned>(mu + nu - s), table) * c;
          eq.add_coeff(ansatz.id(mu, nu), RatFunc(std::move(coeff)));
        }
      }
      // diagonal (1 + (-1)^{s+1}) term: vanishes for even s
      if (s % 2 == 1) {
        for (int nu = 0; nu <= N - s; ++nu) {
          MultiPoly coeff = MultiPoly::variable(Var::u, static_cast<unsigned>(nu), table) *
                            (Rational(2) * si.pow(static_cast<unsigned long>(nu)));
          eq.add_coeff(ansatz.id(s, nu), RatFunc(std::move(coeff)));
        }
      }
      if (!eq.is_zero()) out.push_back(std::move(eq));
    }
  }
  return out;
}

/// System (3): the special values Q_d(lambda_i, (lambda_i - lambda_j)/d),
/// over the half pair set j > i.
inline std::vector<LinExpr> system_special_values(const Ansatz& ansatz, const BundleSpec& bundle,
                                                  const OmegaClass& omega, int d,
                                                  const Specialization& spec,
                                                  const VariableTable& table = VariableTable::canonical()) {
  const int n = bundle.n;
  const int N = ansatz.N;
  std::vector<LinExpr> out;
  for (int i = 0; i <= n; ++i) {
    Rational si(spec.scale(i));
    for (int j = i + 1; j <= n; ++j) {
      Rational step = Rational(mpz_class(spec.scale(i) - spec.scale(j))) / Rational(d);
      LinExpr eq(table);
      for (int mu = 0; mu <= N; ++mu) {
        for (int nu = 0; nu <= N - mu; ++nu) {
          Rational c = step.pow(static_cast<unsigned long>(mu)) *
                       si.pow(static_cast<unsigned long>(nu));
          if (c.is_zero()) continue;
          MultiPoly coeff =
              MultiPoly::variable(Var::u, static_cast<unsigned>(mu + nu), table) * c;
          eq.add_coeff(ansatz.id(mu, nu), RatFunc(std::move(coeff)));
        }
      }
      eq.constant = RatFunc(-special_value(bundle, omega, i, j, d, spec, table));
      if (!eq.is_zero()) out.push_back(std::move(eq));
    }
  }
  return out;
}

/// System (4): after reducing the ansatz modulo prod(kappa - lambda_i), the
/// alpha-powers s = (n+1)d - 1 .. N must vanish; one equation per
/// (s, kappa-power).
inline std::vector<LinExpr> system_degree_bound(const Ansatz& ansatz, int n, int d,
                                                const Specialization& spec,
                                                const VariableTable& table = VariableTable::canonical()) {
  if (d < 2) throw StructuralError("system_degree_bound: requires d >= 2");
  const int N = ansatz.N;
  MultiPoly rhs = kappa_relation_rhs(n, spec, table);
  // reduced[nu] = kappa^nu mod the relation
  std::vector<MultiPoly> reduced(static_cast<std::size_t>(N) + 1, MultiPoly(table));
  MultiPoly kvar = MultiPoly::variable(Var::kappa, 1, table);
  for (int nu = 0; nu <= N; ++nu) {
    if (nu <= n) {
      reduced[static_cast<std::size_t>(nu)] = MultiPoly::variable(Var::kappa, static_cast<unsigned>(nu), table);
      continue;
    }
    MultiPoly lifted = reduced[static_cast<std::size_t>(nu) - 1] * kvar;
    MultiPoly top = lifted.coeff_of(Var::kappa, static_cast<unsigned>(n + 1));
    MultiPoly rest = lifted - top * MultiPoly::variable(Var::kappa, static_cast<unsigned>(n + 1), table);
    reduced[static_cast<std::size_t>(nu)] = rest + top * rhs;
  }
  std::vector<LinExpr> out;
  for (int s = (n + 1) * d - 1; s <= N; ++s) {
    for (int jj = 0; jj <= n; ++jj) {
      LinExpr eq(table);
      for (int nu = 0; nu <= N - s; ++nu) {
        MultiPoly c = reduced[static_cast<std::size_t>(nu)].coeff_of(Var::kappa, static_cast<unsigned>(jj));
        eq.add_coeff(ansatz.id(s, nu), RatFunc(std::move(c)));
      }
      if (!eq.is_zero()) out.push_back(std::move(eq));
    }
  }
  return out;
}

// ---------------------------------------------------------------------
// Assembly, solving, validation
// ---------------------------------------------------------------------

struct EngineCase {
  BundleSpec bundle;
  OmegaClass omega;
  Specialization spec;
};

struct EngineOptions {
  PivotStrategy pivot = PivotStrategy::kMinTerms;
  bool check = false;
  bool symbolic_solve = false;  // solve over RatFunc(u, x) instead of the
                                // dehomogenized system
};

/// Union of the four systems with structural deduplication, in system
/// order (1), (2), (3), (4).
inline LinearSystem assemble_system(const Ansatz& ansatz, int d,
                                    const std::vector<EulerDatum>& priorQ,
                                    const EngineCase& ec,
                                    const VariableTable& table = VariableTable::canonical()) {
  const int n = ec.bundle.n;
  LinearSystem sys;
  sys.unknowns = ansatz.unknown_ids();
  std::unordered_set<std::string> seen;
  auto push_all = [&](std::vector<LinExpr>&& eqs) {
    for (auto& eq : eqs) {
      std::string key = eq.key();
      if (seen.insert(std::move(key)).second) sys.equations.push_back(std::move(eq));
    }
  };
  push_all(system_inner_gluing(ansatz, d, priorQ, ec.omega, ec.spec, n, table));
  push_all(system_boundary_gluing(ansatz, d, ec.spec, n, table));
  push_all(system_special_values(ansatz, ec.bundle, ec.omega, d, ec.spec, table));
  push_all(system_degree_bound(ansatz, n, d, ec.spec, table));
  return sys;
}

/// Exactness checks every computed datum must pass: the reciprocity
/// identity, the special values, and both degree bounds.
inline void validate_datum(const EulerDatum& datum, const EngineCase& ec,
                           const VariableTable& table = VariableTable::canonical()) {
  const int n = ec.bundle.n;
  const int d = datum.degree;
  const int N = (n + 1) * d + n - 3;
  MultiPoly avar = MultiPoly::variable(Var::alpha, 1, table);
  MultiPoly neg_alpha = -avar;

  // Q_d is homogeneous of degree rank(V_d) in (alpha, kappa, u, x); in the
  // critical (euler) cases rank(V_d) equals N, recovering the plain total
  // degree bound. The (alpha, kappa) part is bounded by N in either mode.
  if (datum.q.total_degree_in({Var::alpha, Var::kappa, Var::u}) > ec.bundle.rank_induced(d))
    throw EngineError("validate", "total degree bound exceeded at d = " + std::to_string(d));
  if (datum.q.total_degree_in({Var::alpha, Var::kappa}) > N)
    throw EngineError("validate", "(alpha, kappa) degree bound exceeded at d = " + std::to_string(d));

  for (int i = 0; i <= n; ++i) {
    MultiPoly li = ec.spec.lambda(i, table);
    MultiPoly lhs = datum.q.substitute(Var::kappa, li + avar * Rational(d));
    MultiPoly rhs = datum.q.substitute(Var::kappa, li).substitute(Var::alpha, neg_alpha);
    if (lhs != rhs)
      throw EngineError("validate",
                        "reciprocity failed at i = " + std::to_string(i) + ", d = " + std::to_string(d));
  }

  for (int i = 0; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      Rational step = Rational(mpz_class(ec.spec.scale(i) - ec.spec.scale(j))) / Rational(d);
      MultiPoly at = datum.q.substitute(Var::kappa, ec.spec.lambda(i, table))
                         .substitute(Var::alpha, MultiPoly::variable(Var::u, 1, table) * step);
      if (at != special_value(ec.bundle, ec.omega, i, j, d, ec.spec, table))
        throw EngineError("validate", "special value (" + std::to_string(i) + "," +
                                          std::to_string(j) + ") failed at d = " + std::to_string(d));
    }
  }

  MultiPoly reduced =
      poly_congruent(datum.q, static_cast<unsigned>(n + 1), kappa_relation_rhs(n, ec.spec, table), Var::kappa);
  if (reduced.degree(Var::alpha) > (n + 1) * d - 2)
    throw EngineError("validate", "alpha-degree bound of the reduced restriction exceeded at d = " +
                                      std::to_string(d));
}

/// Gluing residual Q_d(lambda_i + r alpha) * Omega(lambda_i) -
/// conj(Q_r(lambda_i)) * Q_{d-r}(lambda_i); zero for genuine Euler data.
inline bool gluing_residual_is_zero(const std::vector<EulerDatum>& qs, int d, int i, int r,
                                    const EngineCase& ec,
                                    const VariableTable& table = VariableTable::canonical()) {
  MultiPoly li = ec.spec.lambda(i, table);
  MultiPoly avar = MultiPoly::variable(Var::alpha, 1, table);
  RatFunc omega_i = ec.omega.at_lambda(li);
  const MultiPoly& qd = qs[static_cast<std::size_t>(d) - 1].q;
  const MultiPoly& qr = qs[static_cast<std::size_t>(r) - 1].q;
  const MultiPoly& qdr = qs[static_cast<std::size_t>(d - r) - 1].q;
  MultiPoly lhs = qd.substitute(Var::kappa, li + avar * Rational(r)) * omega_i.num();
  MultiPoly rhs = qr.substitute(Var::kappa, li).substitute(Var::alpha, -avar) *
                  qdr.substitute(Var::kappa, li) * omega_i.den();
  return lhs == rhs;
}

namespace engine_detail {

// Flattens a solved assignment into the ansatz polynomial. The symbolic
// route requires every value to be a polynomial in (u, x).
inline MultiPoly flatten_symbolic(const Ansatz& ansatz,
                                  const std::map<UnknownId, RatFunc>& assignment,
                                  const VariableTable& table) {
  MultiPoly q(table);
  for (const auto& [w, value] : assignment) {
    if (!value.is_polynomial())
      throw EngineError("solve_qd", "solved coefficient is not polynomial: w" +
                                        std::to_string(w) + " = " + value.str());
    auto [mu, nu] = ansatz.mu_nu(w);
    Monomial shape(table.size());
    shape.set_exp(Var::alpha, static_cast<std::uint16_t>(mu));
    shape.set_exp(Var::kappa, static_cast<std::uint16_t>(nu));
    for (const auto& [m, c] : value.num().terms()) q.add_term(m * shape, c);
  }
  return q;
}

// Rebuilds w_{mu,nu}(u, x) from its value at u = 1 using homogeneity:
// w is homogeneous of degree rank(V_d) - mu - nu in (u, x) jointly.
inline MultiPoly rehomogenize(const Ansatz& ansatz, const BundleSpec& bundle, int d,
                              const std::map<UnknownId, RatFunc>& at_u1,
                              const VariableTable& table) {
  const int R = bundle.rank_induced(d);
  MultiPoly q(table);
  for (const auto& [w, value] : at_u1) {
    if (!value.is_polynomial())
      throw EngineError("solve_qd", "dehomogenized coefficient is not polynomial: w" +
                                        std::to_string(w) + " = " + value.str());
    auto [mu, nu] = ansatz.mu_nu(w);
    int homdeg = R - mu - nu;
    if (homdeg < 0 && !value.is_zero())
      throw EngineError("solve_qd", "homogeneity violated: negative degree for w" + std::to_string(w));
    Monomial shape(table.size());
    shape.set_exp(Var::alpha, static_cast<std::uint16_t>(mu));
    shape.set_exp(Var::kappa, static_cast<std::uint16_t>(nu));
    for (const auto& [m, c] : value.num().terms()) {
      int xdeg = m.exp(Var::x);
      if (m.total_degree() != static_cast<unsigned>(xdeg) || xdeg > homdeg)
        throw EngineError("solve_qd", "homogeneity violated for w" + std::to_string(w) + " = " +
                                          value.str());
      Monomial full = m * shape;
      full.set_exp(Var::u, static_cast<std::uint16_t>(homdeg - xdeg));
      q.add_term(full, c);
    }
  }
  return q;
}

}  // namespace engine_detail

/// Solves for Q_d (d >= 2) from the assembled four systems. The default
/// route evaluates the systems at u = 1 (every unknown is homogeneous of
/// known degree, so nothing is lost), solves over the residual field, and
/// rehomogenizes; the symbolic route keeps u throughout. Both end in the
/// same exact validation, and the fast route falls back to the symbolic
/// one if anything fails.
inline EulerDatum solve_qd(int d, const EngineCase& ec, const std::vector<EulerDatum>& priorQ,
                           const EngineOptions& opts, SolveStats* stats = nullptr,
                           Verdict* verdict = nullptr,
                           const VariableTable& table = VariableTable::canonical()) {
  if (static_cast<int>(priorQ.size()) < d - 1)
    throw StructuralError("solve_qd: prior data incomplete");
  const int n = ec.bundle.n;
  Ansatz ansatz(d, n);
  LinearSystem sys = assemble_system(ansatz, d, priorQ, ec, table);

  auto finish = [&](MultiPoly q, Verdict v) {
    EulerDatum datum;
    datum.degree = d;
    datum.q = std::move(q);
    validate_datum(datum, ec, table);
    if (verdict) *verdict = v;
    return datum;
  };

  if (!opts.symbolic_solve) {
    try {
      LinearSystem at_u1;
      at_u1.unknowns = sys.unknowns;
      at_u1.equations.reserve(sys.equations.size());
      for (const auto& eq : sys.equations) {
        LinExpr e1(table);
        for (const auto& [w, c] : eq.coeffs) e1.add_coeff(w, c.evaluate_at(Var::u, Rational(1)));
        e1.constant = eq.constant.evaluate_at(Var::u, Rational(1));
        if (!e1.is_zero()) at_u1.equations.push_back(std::move(e1));
      }
      Solution sol = solve(at_u1, opts.pivot, opts.check, stats);
      if (opts.check && sol.verdict == Verdict::kInconsistent)
        throw EngineError("solve_qd", "dehomogenized system inconsistent");
      MultiPoly q = engine_detail::rehomogenize(ansatz, ec.bundle, d, sol.assignment, table);
      return finish(std::move(q), sol.verdict);
    } catch (const Error&) {
      // fall through to the symbolic route
    }
  }

  Solution sol = solve(sys, opts.pivot, opts.check, stats);
  if (opts.check && sol.verdict == Verdict::kInconsistent)
    throw EngineError("solve_qd", "assembled system inconsistent (invalid specialization?)");
  MultiPoly q = engine_detail::flatten_symbolic(ansatz, sol.assignment, table);
  return finish(std::move(q), sol.verdict);
}

/// Q_1 through Q_dmax. The per-degree callback (may be null) receives each
/// datum as soon as it is validated.
template <typename Callback>
std::vector<EulerDatum> compute_euler_data(const EngineCase& ec, int dmax,
                                           const EngineOptions& opts, Callback&& per_degree,
                                           const VariableTable& table = VariableTable::canonical()) {
  if (dmax < 1) throw ConfigError("compute_euler_data: dmax must be >= 1");
  std::vector<EulerDatum> out;
  out.reserve(static_cast<std::size_t>(dmax));
  {
    EulerDatum q1 = build_q1(ec.bundle, ec.omega, ec.spec, table);
    validate_datum(q1, ec, table);
    out.push_back(std::move(q1));
    per_degree(out.back(), Verdict::kUnchecked, SolveStats{});
  }
  for (int d = 2; d <= dmax; ++d) {
    SolveStats stats;
    Verdict verdict = Verdict::kUnchecked;
    out.push_back(solve_qd(d, ec, out, opts, &stats, &verdict, table));
    per_degree(out.back(), verdict, stats);
  }
  return out;
}

}  // namespace eulerdata

#endif
