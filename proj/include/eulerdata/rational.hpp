#ifndef EULERDATA_RATIONAL_HPP
#define EULERDATA_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "eulerdata/errors.hpp"

namespace eulerdata {

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator; zero is canonically 0/1. Thin value wrapper over GMP.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {} 
  Rational(long num, long den) {
    if (den == 0) throw ArithmeticError("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(const mpz_class& n) : q_(n) {}
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw ArithmeticError("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Accepts "p", "p/q", with optional leading '-'.
  static Rational from_string(const std::string& s) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0)
      throw StructuralError("Rational: cannot parse '" + s + "'");
    if (q.get_den() == 0) throw ArithmeticError("Rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(std::move(q));
  }

  std::string str() const { return q_.get_str(); }  // "p/q", or "p" when q = 1

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw ArithmeticError("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }

  Rational pow(unsigned long e) const {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num().get_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den().get_mpz_t(), e);
    Rational r;
    r.q_ = mpq_class(n, d);  // already canonical: powers of coprime ints stay coprime
    return r;
  }

  Rational reciprocal() const {
    if (is_zero()) throw ArithmeticError("Rational: reciprocal of zero");
    mpq_class r;
    mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
    return Rational(std::move(r));
  }

  Rational abs() const { return Rational(mpq_class(::abs(q_))); }

  const mpq_class& raw() const { return q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.q_; }

 private:
  mpq_class q_;
};

inline Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

inline Rational binomial(unsigned long n, unsigned long k) {
  if (k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

}  // namespace eulerdata

#endif
