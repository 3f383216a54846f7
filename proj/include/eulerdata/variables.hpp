#ifndef EULERDATA_VARIABLES_HPP
#define EULERDATA_VARIABLES_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "eulerdata/errors.hpp"

namespace eulerdata {

// Indices into the canonical alphabet. The order is fixed for the lifetime
// of a computation; graded-lex comparison and leading-term selection depend
// on it.
enum class Var : unsigned { u = 0, x = 1, alpha = 2, kappa = 3, h = 4, t = 5 };

/// Ordered list of variable names shared by every polynomial in one
/// computation. The canonical table is (u, x, alpha, kappa, h, t).
class VariableTable {
 public:
  explicit VariableTable(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > kMaxVars)
      throw StructuralError("VariableTable: too many variables");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          throw StructuralError("VariableTable: duplicate name '" + names_[i] + "'");
  }

  static constexpr std::size_t kMaxVars = 8;

  static const VariableTable& canonical() {
    static const VariableTable table({"u", "x", "alpha", "kappa", "h", "t"});
    return table;
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }

  std::size_t index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    throw StructuralError("VariableTable: unknown variable '" + name + "'");
  }

 private:
  std::vector<std::string> names_;
};

/// Exponent vector over a variable table. Total degree = sum of exponents.
class Monomial {
 public:
  Monomial() : size_(0) { exp_.fill(0); }
  explicit Monomial(std::size_t size) : size_(static_cast<std::uint8_t>(size)) { exp_.fill(0); }

  std::size_t size() const { return size_; }

  std::uint16_t exp(std::size_t i) const { return exp_[i]; }
  std::uint16_t exp(Var v) const { return exp_[static_cast<std::size_t>(v)]; }
  void set_exp(std::size_t i, std::uint16_t e) { exp_[i] = e; }
  void set_exp(Var v, std::uint16_t e) { exp_[static_cast<std::size_t>(v)] = e; }

  unsigned total_degree() const {
    unsigned d = 0;
    for (std::size_t i = 0; i < size_; ++i) d += exp_[i];
    return d;
  }

  bool is_unit() const { return total_degree() == 0; }

  Monomial operator*(const Monomial& o) const {
    Monomial r(size_);
    for (std::size_t i = 0; i < size_; ++i)
      r.exp_[i] = static_cast<std::uint16_t>(exp_[i] + o.exp_[i]);
    return r;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < size_; ++i)
      if (exp_[i] > o.exp_[i]) return false;
    return true;
  }

  // Requires divides(o) in the other direction: o / this.
  Monomial divide_into(const Monomial& o) const {
    Monomial r(size_);
    for (std::size_t i = 0; i < size_; ++i)
      r.exp_[i] = static_cast<std::uint16_t>(o.exp_[i] - exp_[i]);
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    if (a.size_ != b.size_) return false;
    for (std::size_t i = 0; i < a.size_; ++i)
      if (a.exp_[i] != b.exp_[i]) return false;
    return true;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  // Graded lexicographic: higher total degree first, ties broken on the
  // exponent vector with later alphabet positions more significant (so the
  // denominator x^2 - 9u^2 keeps its positive leading coefficient).
  static bool graded_lex_greater(const Monomial& a, const Monomial& b) {
    unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    for (std::size_t i = a.size_; i-- > 0;)
      if (a.exp_[i] != b.exp_[i]) return a.exp_[i] > b.exp_[i];
    return false;
  }

 private:
  std::array<std::uint16_t, VariableTable::kMaxVars> exp_;
  std::uint8_t size_;
};

// Map comparator placing the leading (graded-lex greatest) monomial first.
struct MonomialGradedLexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::graded_lex_greater(a, b);
  }
};

}  // namespace eulerdata

#endif
