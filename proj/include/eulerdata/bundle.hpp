#ifndef EULERDATA_BUNDLE_HPP
#define EULERDATA_BUNDLE_HPP

#include <cctype>
#include <string>
#include <vector>

#include "eulerdata/ratfunc.hpp"

namespace eulerdata {

/// Splitting type of a concavex bundle over CP^n: V restricted to any
/// invariant line splits as (+)O(l_a) (+) (+)O(-k_b). Both lists hold the
/// positive integers l_a / k_b.
struct BundleSpec {
  int n = 0;
  std::vector<int> convex;   // l_a
  std::vector<int> concave;  // k_b

  void validate() const {
    if (n < 1) throw ConfigError("bundle: n must be >= 1");
    if (convex.empty() && concave.empty())
      throw ConfigError("bundle: splitting type is empty");
    for (int l : convex)
      if (l <= 0) throw ConfigError("bundle: convex entries must be positive");
    for (int k : concave)
      if (k <= 0) throw ConfigError("bundle: concave entries must be positive");
  }

  int rank() const { return static_cast<int>(convex.size() + concave.size()); }

  // rank of the induced bundle on the degree-d stable map moduli.
  int rank_induced(int d) const {
    int r = 0;
    for (int l : convex) r += l * d + 1;
    for (int k : concave) r += k * d - 1;
    return r;
  }

  int moduli_dim(int d) const { return (n + 1) * d + n - 3; }
};

namespace poly1d {

// Dense integer-coefficient polynomial in one named variable; the little
// expression grammar used for specialization and s_diff strings.
using Coeffs = std::vector<mpz_class>;

inline void trim(Coeffs& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

inline Coeffs add(const Coeffs& a, const Coeffs& b, int sign) {
  Coeffs r = a;
  if (r.size() < b.size()) r.resize(b.size(), mpz_class(0));
  for (std::size_t i = 0; i < b.size(); ++i)
    r[i] += sign < 0 ? mpz_class(-b[i]) : b[i];
  trim(r);
  return r;
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

class Parser {
 public:
  Parser(const std::string& text, std::string var) : s_(text), var_(std::move(var)) {}

  Coeffs parse() {
    Coeffs r = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw ConfigError("polynomial '" + s_ + "': trailing input at position " +
                        std::to_string(pos_));
    return r;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Coeffs expr() {
    Coeffs r = eat('-') ? add({}, term(), -1) : term();
    while (true) {
      if (eat('+'))
        r = add(r, term(), +1);
      else if (eat('-'))
        r = add(r, term(), -1);
      else
        return r;
    }
  }

  Coeffs term() {
    Coeffs r = factor();
    while (eat('*')) r = mul(r, factor());
    return r;
  }

  Coeffs factor() {
    Coeffs b = base();
    if (eat('^')) {
      unsigned long e = integer();
      Coeffs r = {mpz_class(1)};
      for (unsigned long k = 0; k < e; ++k) r = mul(r, b);
      return r;
    }
    return b;
  }

  Coeffs base() {
    if (eat('(')) {
      Coeffs r = expr();
      if (!eat(')')) throw ConfigError("polynomial '" + s_ + "': missing ')'");
      return r;
    }
    if (eat('-')) return add({}, base(), -1);
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return {mpz_class(integer())};
    // variable name
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name != var_)
      throw ConfigError("polynomial '" + s_ + "': unexpected symbol '" +
                        (name.empty() ? std::string(1, c) : name) + "' (variable is '" + var_ +
                        "')");
    return {mpz_class(0), mpz_class(1)};
  }

  unsigned long integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) throw ConfigError("polynomial '" + s_ + "': expected integer");
    try {
      return std::stoul(s_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      throw ConfigError("polynomial '" + s_ + "': integer out of range");
    }
  }

  const std::string& s_;
  std::string var_;
  std::size_t pos_ = 0;
};

inline std::string render(const Coeffs& c, const std::string& var) {
  if (c.empty()) return "0";
  std::string out;
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] == 0) continue;
    mpz_class a = c[k];
    if (out.empty()) {
      if (a < 0) out += "-";
    } else {
      out += a < 0 ? "-" : "+";
    }
    mpz_class m = abs(a);
    if (k == 0) {
      out += m.get_str();
    } else {
      if (m != 1) out += m.get_str() + "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace poly1d

/// The torus weights are collapsed to lambda_i = s(i) * u, with s an
/// integer-coefficient polynomial taking pairwise distinct nonzero values
/// on i = 0..n.
class Specialization {
 public:
  // Default is s(i) = i^2 + 7i + 1, coefficients stored ascending.
  Specialization() : coeffs_{mpz_class(1), mpz_class(7), mpz_class(1)} {}

  static Specialization parse(const std::string& text) {
    Specialization s;
    s.coeffs_ = poly1d::Parser(text, "i").parse();
    return s;
  }

  // s(i), by Horner.
  mpz_class scale(int i) const {
    mpz_class v = 0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) v = v * i + coeffs_[k];
    return v;
  }

  // lambda_i = s(i) * u
  MultiPoly lambda(int i, const VariableTable& table = VariableTable::canonical()) const {
    return MultiPoly::variable(Var::u, 1, table) * Rational(scale(i));
  }

  void validate(int n) const {
    for (int i = 0; i <= n; ++i) {
      if (scale(i) == 0)
        throw ConfigError("specialization: s(" + std::to_string(i) + ") = 0");
      for (int j = i + 1; j <= n; ++j)
        if (scale(i) == scale(j))
          throw ConfigError("specialization: s(" + std::to_string(i) + ") = s(" +
                            std::to_string(j) + ") (values must be pairwise distinct)");
    }
  }

  std::string str() const { return poly1d::render(coeffs_, "i"); }

 private:
  poly1d::Coeffs coeffs_;
};

enum class OmegaKind { kEuler, kChern };

inline const char* omega_kind_name(OmegaKind k) {
  return k == OmegaKind::kEuler ? "euler" : "chern";
}

/// The invertible class the Euler data starts from: prod_a(x + l_a h) /
/// prod_b(x - k_b h) as a rational function in (x, h), with x identically 0
/// in euler mode.
struct OmegaClass {
  OmegaKind kind = OmegaKind::kEuler;
  RatFunc value;

  static OmegaClass make(const BundleSpec& bundle, OmegaKind kind,
                         const VariableTable& table = VariableTable::canonical()) {
    MultiPoly hvar = MultiPoly::variable(Var::h, 1, table);
    MultiPoly xvar = kind == OmegaKind::kChern ? MultiPoly::variable(Var::x, 1, table)
                                               : MultiPoly(table);
    MultiPoly num = MultiPoly::constant(1, table);
    MultiPoly den = MultiPoly::constant(1, table);
    for (int l : bundle.convex) num *= xvar + hvar * Rational(l);
    for (int k : bundle.concave) den *= xvar - hvar * Rational(k);
    OmegaClass omega;
    omega.kind = kind;
    omega.value = RatFunc(std::move(num), std::move(den));
    return omega;
  }

  // Restriction to the fixed point p_i: h := lambda_i.
  RatFunc at_lambda(const MultiPoly& lambda_i) const {
    return value.substitute(Var::h, lambda_i);
  }
};

/// s(d) = rank(U_d) - dim of the degree-d moduli space; affine in d or an
/// explicit table. Euler mode forces the zero function.
struct SDiff {
  enum class Kind { kAffine, kTable };
  Kind kind = Kind::kAffine;
  mpz_class c0 = 0, c1 = 0;     // c0 + c1 * d
  std::vector<long> table;      // [s(1), s(2), ...]

  static SDiff parse(const std::string& text) {
    SDiff s;
    if (text.rfind("table:", 0) == 0) {
      s.kind = Kind::kTable;
      std::string rest = text.substr(6);
      std::size_t pos = 0;
      while (pos < rest.size()) {
        std::size_t comma = rest.find(',', pos);
        std::string item = rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
          s.table.push_back(std::stol(item));
        } catch (const std::exception&) {
          throw ConfigError("s_diff table: bad entry '" + item + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      if (s.table.empty()) throw ConfigError("s_diff table: empty");
      return s;
    }
    poly1d::Coeffs c = poly1d::Parser(text, "d").parse();
    if (c.size() > 2) throw ConfigError("s_diff: must be affine in d (c0 + c1*d)");
    s.c0 = c.size() > 0 ? c[0] : mpz_class(0);
    s.c1 = c.size() > 1 ? c[1] : mpz_class(0);
    return s;
  }

  int at(int d) const {
    if (kind == Kind::kTable) {
      if (d < 1 || static_cast<std::size_t>(d) > table.size())
        throw ConfigError("s_diff table: degree " + std::to_string(d) + " not covered");
      long v = table[static_cast<std::size_t>(d) - 1];
      if (v < 0) throw ConfigError("s_diff: negative value at d = " + std::to_string(d));
      return static_cast<int>(v);
    }
    mpz_class v = c0 + c1 * d;
    if (v < 0) throw ConfigError("s_diff: negative value at d = " + std::to_string(d));
    if (!v.fits_sint_p()) throw ConfigError("s_diff: value out of range");
    return static_cast<int>(v.get_si());
  }

  bool is_zero() const {
    if (kind == Kind::kAffine) return c0 == 0 && c1 == 0;
    for (long v : table)
      if (v != 0) return false;
    return true;
  }

  std::string str() const {
    if (kind == Kind::kTable) {
      std::string out = "table:";
      for (std::size_t i = 0; i < table.size(); ++i)
        out += (i ? "," : "") + std::to_string(table[i]);
      return out;
    }
    poly1d::Coeffs c{c0, c1};
    poly1d::trim(c);
    return poly1d::render(c, "d");
  }
};

}  // namespace eulerdata

#endif
