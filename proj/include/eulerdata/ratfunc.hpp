#ifndef EULERDATA_RATFUNC_HPP
#define EULERDATA_RATFUNC_HPP

#include <string>
#include <utility>

#include "eulerdata/multipoly.hpp"
#include "eulerdata/polygcd.hpp"

namespace eulerdata {

/// Quotient of two MultiPoly, kept reduced and sign-normalized: the
/// denominator has coprime integer coefficients and positive leading
/// coefficient (so polynomials carry denominator 1 and rational scale in
/// the numerator). Reduction is eager: every operation returns a value
/// already in this form.
class RatFunc {
 public:
  explicit RatFunc(const VariableTable& table = VariableTable::canonical())
      : num_(table), den_(MultiPoly::constant(1, table)) {}

  RatFunc(MultiPoly num) 
      : num_(std::move(num)), den_(MultiPoly::constant(1, num_.table())) {}

  RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ArithmeticError("RatFunc: zero denominator");
    normalize();
  }

  RatFunc(const Rational& c, 
          const VariableTable& table = VariableTable::canonical())
      : num_(MultiPoly::constant(c, table)), den_(MultiPoly::constant(1, table)) {}

  RatFunc(long c, const VariableTable& table = VariableTable::canonical())
      : num_(MultiPoly::constant(Rational(c), table)), den_(MultiPoly::constant(1, table)) {}

  static RatFunc variable(Var v, const VariableTable& table = VariableTable::canonical()) {
    return RatFunc(MultiPoly::variable(v, 1, table));
  }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const VariableTable& table() const { return num_.table(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_constant() && num_.is_constant() && num_.constant_value().is_one(); }
  bool is_polynomial() const { return den_.is_constant(); }

  const MultiPoly& as_poly() const {
    if (!is_polynomial()) throw StructuralError("RatFunc: not a polynomial: " + str());
    return num_;
  }

  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    RatFunc r(a.table());
    r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
    r.den_ = a.den_ * b.den_;
    r.normalize();
    return r;
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    RatFunc r(a.table());
    r.num_ = a.num_ * b.den_ - b.num_ * a.den_;
    r.den_ = a.den_ * b.den_;
    r.normalize();
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    RatFunc r(a.table());
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_ * b.den_;
    r.normalize();
    return r;
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw ArithmeticError("RatFunc: division by zero");
    RatFunc r(a.table());
    r.num_ = a.num_ * b.den_;
    r.den_ = a.den_ * b.num_;
    r.normalize();
    return r;
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc reciprocal() const {
    if (is_zero()) throw ArithmeticError("RatFunc: reciprocal of zero");
    RatFunc r(table());
    r.num_ = den_;
    r.den_ = num_;
    r.normalize();
    return r;
  }

  // Structural equality; on normalized values this coincides with the
  // cross-multiplication test a*d == c*b.
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  // Substitutes var := value and reduces. Throws PoleError iff the reduced
  // denominator vanishes at the point.
  RatFunc evaluate_at(Var v, const Rational& value) const {
    MultiPoly d = den_.eval_var(v, value);
    if (d.is_zero())
      throw PoleError("RatFunc: pole at " + table().name(static_cast<std::size_t>(v)) +
                          " = " + value.str(),
                      den_.str());
    return RatFunc(num_.eval_var(v, value), std::move(d));
  }

  // Substitutes var := q (a polynomial) and reduces.
  RatFunc substitute(Var v, const MultiPoly& q) const {
    MultiPoly d = den_.substitute(v, q);
    if (d.is_zero())
      throw PoleError("RatFunc: substitution makes denominator vanish", den_.str());
    return RatFunc(num_.substitute(v, q), std::move(d));
  }

  std::string str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.str(); }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = MultiPoly::constant(1, num_.table());
      return;
    }
    if (!den_.is_constant()) {
      MultiPoly g = gcd_poly(num_, den_);
      if (!(g.is_constant() && g.constant_value().is_one())) {
        num_ = *num_.try_divide_exact(g);
        den_ = *den_.try_divide_exact(g);
      }
    }
    Rational c = den_.signed_content();
    if (!c.is_one()) {
      Rational inv = c.reciprocal();
      den_.scale(inv);
      num_.scale(inv);
    }
  }

  MultiPoly num_, den_;
};

}  // namespace eulerdata

#endif
