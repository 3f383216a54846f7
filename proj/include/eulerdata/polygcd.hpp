#ifndef EULERDATA_POLYGCD_HPP
#define EULERDATA_POLYGCD_HPP

#include <vector>

#include "eulerdata/multipoly.hpp"

// Polynomial gcd for the parameter variables: content extraction plus
// primitive-part subresultant PRS in a main variable, recursing on the
// coefficients. Results are primitive (coprime integer coefficients,
// positive leading coefficient). gcd(a, 0) = primitive part of a.

namespace eulerdata {
namespace gcd_detail {

// --- dense univariate layer over Z ------------------------------------

using ZPoly = std::vector<mpz_class>;  // coefficient of v^k at index k

inline void z_trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
inline int z_deg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

inline void z_primitive(ZPoly& p) {
  if (p.empty()) return;
  mpz_class g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (sgn(p.back()) < 0) g = -g;
  for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// R = lc(B)^(deg A - deg B + 1) * A mod B, computed with lazy scaling.
inline ZPoly z_prem(ZPoly A, const ZPoly& B) {
  const mpz_class& lb = B.back();
  int e = z_deg(A) - z_deg(B) + 1;
  while (!A.empty() && z_deg(A) >= z_deg(B)) {
    mpz_class la = A.back();
    int shift = z_deg(A) - z_deg(B);
    for (auto& c : A) c *= lb;
    for (int k = 0; k <= z_deg(B); ++k) A[static_cast<std::size_t>(k + shift)] -= la * B[static_cast<std::size_t>(k)];
    z_trim(A);
    --e;
  }
  if (e > 0) {
    mpz_class f;
    mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
    for (auto& c : A) c *= f;
  }
  return A;
}

// Subresultant PRS on primitive inputs; returns the primitive gcd.
inline ZPoly z_gcd(ZPoly A, ZPoly B) {
  z_trim(A);
  z_trim(B);
  if (A.empty()) { z_primitive(B); return B; }
  if (B.empty()) { z_primitive(A); return A; }
  z_primitive(A);
  z_primitive(B);
  if (z_deg(A) < z_deg(B)) std::swap(A, B);
  if (z_deg(B) == 0) return {mpz_class(1)};
  mpz_class g = 1, h = 1;
  while (true) {
    int delta = z_deg(A) - z_deg(B);
    ZPoly R = z_prem(A, B);
    if (R.empty()) break;
    if (z_deg(R) == 0) return {mpz_class(1)};
    A = std::move(B);
    mpz_class div = g;
    for (int k = 0; k < delta; ++k) div *= h;
    B = std::move(R);
    for (auto& c : B) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
    g = A.back();
    if (delta > 0) {
      mpz_class gd;
      mpz_pow_ui(gd.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(delta));
      if (delta == 1) {
        h = gd;
      } else {
        mpz_class hd;
        mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
        mpz_divexact(h.get_mpz_t(), gd.get_mpz_t(), hd.get_mpz_t());
      }
    }
  }
  z_primitive(B);
  return B;
}

inline ZPoly to_zpoly(const MultiPoly& p, Var v) {
  // Clears rational denominators; callers only need the result up to
  // rational scale.
  mpz_class den_lcm = 1;
  for (const auto& [m, c] : p.terms())
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
  ZPoly out(static_cast<std::size_t>(p.degree(v)) + 1, mpz_class(0));
  for (const auto& [m, c] : p.terms())
    out[m.exp(v)] += c.num() * (den_lcm / c.den());
  z_trim(out);
  return out;
}

inline MultiPoly from_zpoly(const ZPoly& p, Var v, const VariableTable& table) {
  MultiPoly out(table);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    Monomial m(table.size());
    m.set_exp(v, static_cast<std::uint16_t>(k));
    out.add_term(m, Rational(p[k]));
  }
  return out;
}

// --- multivariate layer ------------------------------------------------

inline std::vector<MultiPoly> coeffs_in(const MultiPoly& p, Var v) {
  return p.collect_coeffs(v);
}

inline MultiPoly from_coeffs(const std::vector<MultiPoly>& cs, Var v, const VariableTable& table) {
  MultiPoly out(table);
  MultiPoly vp = MultiPoly::constant(1, table);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    if (k > 0) vp *= MultiPoly::variable(v, 1, table);
    out += cs[k] * vp;
  }
  return out;
}

}  // namespace gcd_detail

MultiPoly gcd_poly(const MultiPoly& a, const MultiPoly& b);

namespace gcd_detail {

// Pseudo-remainder with MultiPoly coefficients (polynomials in v over the
// remaining variables).
inline std::vector<MultiPoly> m_prem(std::vector<MultiPoly> A, const std::vector<MultiPoly>& B) {
  const MultiPoly& lb = B.back();
  int e = static_cast<int>(A.size()) - static_cast<int>(B.size()) + 1;
  auto trim = [](std::vector<MultiPoly>& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
  };
  while (!A.empty() && A.size() >= B.size()) {
    MultiPoly la = A.back();
    std::size_t shift = A.size() - B.size();
    for (auto& c : A) c *= lb;
    for (std::size_t k = 0; k < B.size(); ++k) A[k + shift] -= la * B[k];
    trim(A);
    --e;
  }
  for (; e > 0; --e)
    for (auto& c : A) c *= lb;
  return A;
}

inline MultiPoly exact_div(const MultiPoly& p, const MultiPoly& d, const char* where) {
  auto q = p.try_divide_exact(d);
  if (!q) throw ArithmeticError(std::string(where) + ": expected exact division");
  return *q;
}

// Content of p viewed as a polynomial in v (gcd of its v-coefficients).
inline MultiPoly content_in(const MultiPoly& p, Var v) {
  MultiPoly c(p.table());
  for (const auto& part : coeffs_in(p, v)) c = gcd_poly(c, part);
  return c;
}

inline std::vector<MultiPoly> prs_gcd(std::vector<MultiPoly> A, std::vector<MultiPoly> B,
                                      const VariableTable& table) {
  if (A.size() < B.size()) std::swap(A, B);
  if (B.size() == 1) return {MultiPoly::constant(1, table)};
  MultiPoly g = MultiPoly::constant(1, table);
  MultiPoly h = MultiPoly::constant(1, table);
  while (true) {
    int delta = static_cast<int>(A.size()) - static_cast<int>(B.size());
    std::vector<MultiPoly> R = m_prem(A, B);
    if (R.empty()) break;
    if (R.size() == 1) return {MultiPoly::constant(1, table)};
    A = std::move(B);
    MultiPoly div = g;
    for (int k = 0; k < delta; ++k) div *= h;
    B = std::move(R);
    for (auto& c : B) c = exact_div(c, div, "prs_gcd");
    g = A.back();
    if (delta > 0) {
      MultiPoly gd = g.pow(static_cast<unsigned>(delta));
      h = (delta == 1) ? gd : exact_div(gd, h.pow(static_cast<unsigned>(delta - 1)), "prs_gcd");
    }
  }
  return B;
}

}  // namespace gcd_detail

inline MultiPoly gcd_poly(const MultiPoly& a, const MultiPoly& b) {
  using namespace gcd_detail;
  if (&a.table() != &b.table())
    throw StructuralError("gcd_poly: mismatched variable tables");
  const VariableTable& table = a.table();
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();

  // Single-term operands: the gcd is the common monomial divisor.
  if (a.term_count() == 1 || b.term_count() == 1) {
    Monomial m = (a.term_count() == 1 ? a : b).leading_monomial();
    const MultiPoly& other = a.term_count() == 1 ? b : a;
    for (const auto& [om, oc] : other.terms())
      for (std::size_t i = 0; i < m.size(); ++i)
        m.set_exp(i, std::min(m.exp(i), om.exp(i)));
    MultiPoly out(table);
    out.add_term(m, Rational(1));
    return out;
  }

  unsigned mask = a.effective_vars() | b.effective_vars();
  if (mask == 0) return MultiPoly::constant(1, table);
  Var v = static_cast<Var>(__builtin_ctz(mask));
  bool univariate = (mask & (mask - 1)) == 0;
  if (univariate)
    return from_zpoly(z_gcd(to_zpoly(a, v), to_zpoly(b, v)), v, table);

  MultiPoly ca = content_in(a, v);
  MultiPoly cb = content_in(b, v);
  MultiPoly pa = exact_div(a, ca, "gcd_poly");
  MultiPoly pb = exact_div(b, cb, "gcd_poly");
  MultiPoly cg = gcd_poly(ca, cb);
  std::vector<MultiPoly> pg = prs_gcd(coeffs_in(pa, v), coeffs_in(pb, v), table);
  MultiPoly g = from_coeffs(pg, v, table);
  g = exact_div(g, content_in(g, v), "gcd_poly");
  MultiPoly out = cg * g;
  return out.primitive_part();
}

}  // namespace eulerdata

#endif
