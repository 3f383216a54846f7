#ifndef EULERDATA_MULTIPOLY_HPP
#define EULERDATA_MULTIPOLY_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eulerdata/rational.hpp"
#include "eulerdata/variables.hpp"

namespace eulerdata {

/// Sparse multivariate polynomial over Rational with a fixed variable
/// alphabet. Terms are kept in descending graded-lex order, so the map
/// itself is the canonical form and begin() is the leading term. No stored
/// coefficient is zero.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialGradedLexDesc>;

  explicit MultiPoly(const VariableTable& table = VariableTable::canonical())
      : table_(&table) {}

  static MultiPoly constant(Rational c, const VariableTable& table = VariableTable::canonical()) {
    MultiPoly p(table);
    if (!c.is_zero()) p.terms_.emplace(Monomial(table.size()), std::move(c));
    return p;
  }

  static MultiPoly variable(Var v, unsigned exp = 1,
                            const VariableTable& table = VariableTable::canonical()) {
    if (static_cast<std::size_t>(v) >= table.size())
      throw StructuralError("MultiPoly: variable outside table");
    MultiPoly p(table);
    if (exp == 0) return constant(1, table);
    Monomial m(table.size());
    m.set_exp(v, static_cast<std::uint16_t>(exp));
    p.terms_.emplace(m, Rational(1));
    return p;
  }

  const VariableTable& table() const { return *table_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
  }
  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw StructuralError("MultiPoly: not a constant");
    return terms_.begin()->second;
  }

  // Coefficient of the constant monomial (0 if absent).
  Rational constant_term() const {
    auto it = terms_.find(Monomial(table_->size()));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw StructuralError("MultiPoly: leading term of zero");
    return terms_.begin()->first;
  }
  const Rational& leading_coeff() const {
    if (terms_.empty()) throw StructuralError("MultiPoly: leading term of zero");
    return terms_.begin()->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MultiPoly operator-() const {
    MultiPoly r(*table_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_table(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_table(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_table(b);
    MultiPoly r(*a.table_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly& scale(const Rational& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a.scale(c); }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a.scale(c); }

  MultiPoly pow(unsigned e) const {
    MultiPoly r = constant(1, *table_);
    MultiPoly base = *this;
    while (e > 0) {
      if (e & 1u) r *= base;
      base = (e >>= 1) ? base * base : base;
    }
    return r;
  }

  // Product that drops every monomial whose `v`-degree exceeds `maxdeg`.
  static MultiPoly mul_truncated(const MultiPoly& a, const MultiPoly& b, Var v, unsigned maxdeg) {
    a.check_table(b);
    MultiPoly r(*a.table_);
    for (const auto& [ma, ca] : a.terms_) {
      if (ma.exp(v) > maxdeg) continue;
      for (const auto& [mb, cb] : b.terms_) {
        if (ma.exp(v) + mb.exp(v) > maxdeg) continue;
        r.add_term(ma * mb, ca * cb);
      }
    }
    return r;
  }

  int degree(Var v) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.exp(v)));
    return d;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.total_degree()));
    return d;
  }

  // Total degree counting only the given variables.
  int total_degree_in(std::initializer_list<Var> vars) const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (Var v : vars) s += m.exp(v);
      d = std::max(d, s);
    }
    return d;
  }

  bool contains_var(Var v) const {
    for (const auto& [m, c] : terms_)
      if (m.exp(v) > 0) return true;
    return false;
  }

  // Bitmask of variables appearing with positive exponent.
  unsigned effective_vars() const {
    unsigned mask = 0;
    for (const auto& [m, c] : terms_)
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m.exp(i) > 0) mask |= 1u << i;
    return mask;
  }

  // Coefficient of v^k, as a polynomial free of v.
  MultiPoly coeff_of(Var v, unsigned k) const {
    MultiPoly r(*table_);
    for (const auto& [m, c] : terms_) {
      if (m.exp(v) != k) continue;
      Monomial rest = m;
      rest.set_exp(v, 0);
      r.add_term(rest, c);
    }
    return r;
  }

  // [c0, ..., cD] with p = sum c_k v^k; [0-poly] for p = 0.
  std::vector<MultiPoly> collect_coeffs(Var v) const {
    int d = degree(v);
    if (d < 0) return {MultiPoly(*table_)};
    std::vector<MultiPoly> out(static_cast<std::size_t>(d) + 1, MultiPoly(*table_));
    for (const auto& [m, c] : terms_) {
      Monomial rest = m;
      rest.set_exp(v, 0);
      out[m.exp(v)].add_term(rest, c);
    }
    return out;
  }

  // Every occurrence of v replaced by q, expanded to canonical form.
  MultiPoly substitute(Var v, const MultiPoly& q) const {
    check_table(q);
    int d = degree(v);
    if (d <= 0) return *this;
    std::vector<MultiPoly> powers(static_cast<std::size_t>(d) + 1, MultiPoly(*table_));
    powers[0] = constant(1, *table_);
    for (int k = 1; k <= d; ++k) powers[k] = powers[k - 1] * q;
    MultiPoly r(*table_);
    for (const auto& [m, c] : terms_) {
      unsigned e = m.exp(v);
      Monomial rest = m;
      rest.set_exp(v, 0);
      if (e == 0) {
        r.add_term(rest, c);
      } else {
        for (const auto& [mq, cq] : powers[e].terms_) r.add_term(rest * mq, c * cq);
      }
    }
    return r;
  }

  // Partial evaluation v := value.
  MultiPoly eval_var(Var v, const Rational& value) const {
    MultiPoly r(*table_);
    for (const auto& [m, c] : terms_) {
      unsigned e = m.exp(v);
      Monomial rest = m;
      rest.set_exp(v, 0);
      r.add_term(rest, e == 0 ? c : c * value.pow(e));
    }
    return r;
  }

  MultiPoly derivative(Var v) const {
    MultiPoly r(*table_);
    for (const auto& [m, c] : terms_) {
      unsigned e = m.exp(v);
      if (e == 0) continue;
      Monomial dm = m;
      dm.set_exp(v, static_cast<std::uint16_t>(e - 1));
      r.add_term(dm, c * Rational(static_cast<long>(e)));
    }
    return r;
  }

  // Exact multivariate division; nullopt if the division leaves a remainder.
  std::optional<MultiPoly> try_divide_exact(const MultiPoly& g) const {
    check_table(g);
    if (g.is_zero()) throw ArithmeticError("MultiPoly: division by zero");
    MultiPoly q(*table_);
    MultiPoly r = *this;
    const Monomial& gm = g.leading_monomial();
    const Rational& gc = g.leading_coeff();
    while (!r.is_zero()) {
      const Monomial& rm = r.leading_monomial();
      if (!gm.divides(rm)) return std::nullopt;
      Monomial tm = gm.divide_into(rm);
      Rational tc = r.leading_coeff() / gc;
      q.add_term(tm, tc);
      for (const auto& [m, c] : g.terms_) r.add_term(tm * m, -(tc * c));
    }
    return q;
  }

  // Signed content: c with p = c * pp, pp having coprime integer
  // coefficients and positive leading coefficient. content(0) = 0.
  Rational signed_content() const {
    if (terms_.empty()) return Rational(0);
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : terms_) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.num().get_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
    }
    Rational c(num_gcd, den_lcm);
    if (leading_coeff().sign() < 0) c = -c;
    return c;
  }

  MultiPoly primitive_part() const {
    if (terms_.empty()) return *this;
    MultiPoly r = *this;
    r.scale(signed_content().reciprocal());
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.table_ == b.table_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational ac = c.abs();
      os << (first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + "));
      first = false;
      bool unit = m.is_unit();
      if (!ac.is_one() || unit) os << ac.str();
      bool printed = !ac.is_one() || unit;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m.exp(i) == 0) continue;
        if (printed) os << "*";
        os << table_->name(i);
        if (m.exp(i) > 1) os << "^" << m.exp(i);
        printed = true;
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

 private:
  void check_table(const MultiPoly& o) const {
    if (table_ != o.table_)
      throw StructuralError("MultiPoly: mismatched variable tables");
  }

  const VariableTable* table_;
  TermMap terms_;
};

inline MultiPoly substitute(const MultiPoly& p, Var v, const MultiPoly& q) {
  return p.substitute(v, q);
}

inline std::vector<MultiPoly> collect_coeffs(const MultiPoly& p, Var v) {
  return p.collect_coeffs(v);
}

}  // namespace eulerdata

#endif
