#ifndef EULERDATA_LINEAR_HPP
#define EULERDATA_LINEAR_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "eulerdata/ratfunc.hpp"

// Exact solution of sparse linear systems over the RatFunc field by
// forward elimination and back substitution. Pivots are solved by direct
// algebra (w = -(expr - c*w)/c) and substituted eagerly into the remaining
// equations, which are re-reduced immediately.

namespace eulerdata {

using UnknownId = int;

/// Affine expression sum(coeffs[w] * w) + constant, read as "= 0" when used
/// as an equation. No stored coefficient is zero.
struct LinExpr {
  std::map<UnknownId, RatFunc> coeffs;
  RatFunc constant;

  explicit LinExpr(const VariableTable& table = VariableTable::canonical()) : constant(table) {}

  void add_coeff(UnknownId w, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs.erase(it);
    }
  }

  bool is_zero() const { return coeffs.empty() && constant.is_zero(); }

  std::size_t term_count() const { return coeffs.size() + (constant.is_zero() ? 0 : 1); }

  RatFunc evaluate(const std::map<UnknownId, RatFunc>& assignment) const {
    RatFunc r = constant;
    for (const auto& [w, c] : coeffs) {
      auto it = assignment.find(w);
      if (it == assignment.end())
        throw StructuralError("LinExpr: no value assigned to unknown " + std::to_string(w));
      r += c * it->second;
    }
    return r;
  }

  // Replaces w := expr (expr must not contain w itself).
  void substitute(UnknownId w, const LinExpr& expr) {
    auto it = coeffs.find(w);
    if (it == coeffs.end()) return;
    RatFunc c = it->second;
    coeffs.erase(it);
    for (const auto& [w2, c2] : expr.coeffs) add_coeff(w2, c * c2);
    constant += c * expr.constant;
  }

  // Canonical serialization, used for structural deduplication.
  std::string key() const {
    std::ostringstream os;
    for (const auto& [w, c] : coeffs) os << w << ":" << c.str() << ";";
    os << "|" << constant.str();
    return os.str();
  }

  friend bool operator==(const LinExpr& a, const LinExpr& b) {
    return a.coeffs == b.coeffs && a.constant == b.constant;
  }
};

struct LinearSystem {
  std::vector<LinExpr> equations;
  std::vector<UnknownId> unknowns;  // elimination order
};

enum class PivotStrategy { kFirstNonzero, kMinTerms };

enum class Verdict { kConsistent, kInconsistent, kUnchecked };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kConsistent: return "consistent";
    case Verdict::kInconsistent: return "inconsistent";
    default: return "unchecked";
  }
}

struct SolveStats {
  std::size_t pivots = 0;
  std::size_t peak_equation_terms = 0;
  std::size_t peak_coeff_terms = 0;  // numerator + denominator monomials
  std::size_t residual_equations = 0;

  void observe(const LinExpr& eq) {
    peak_equation_terms = std::max(peak_equation_terms, eq.term_count());
    for (const auto& [w, c] : eq.coeffs)
      peak_coeff_terms =
          std::max(peak_coeff_terms, c.num().term_count() + c.den().term_count());
    peak_coeff_terms = std::max(
        peak_coeff_terms, eq.constant.num().term_count() + eq.constant.den().term_count());
  }
};

struct Pivot {
  UnknownId unknown;
  LinExpr expr;  // unknown = expr, in terms of later unknowns and constants
};

struct TriangularResult {
  std::vector<Pivot> pivots;
  std::vector<LinExpr> residual;  // leftover equations, no processed unknowns
};

struct Solution {
  std::map<UnknownId, RatFunc> assignment;
  Verdict verdict = Verdict::kUnchecked;
};

inline TriangularResult triangularize(const LinearSystem& system, PivotStrategy strategy,
                                      SolveStats* stats = nullptr) {
  if (system.equations.empty())
    throw StructuralError("triangularize: empty system");
  struct Row {
    std::size_t original;
    LinExpr eq;
  };
  std::vector<Row> remaining;
  remaining.reserve(system.equations.size());
  for (std::size_t i = 0; i < system.equations.size(); ++i) {
    if (system.equations[i].is_zero()) continue;
    remaining.push_back({i, system.equations[i]});
    if (stats) stats->observe(system.equations[i]);
  }

  TriangularResult out;
  out.pivots.reserve(system.unknowns.size());

  for (UnknownId w : system.unknowns) {
    std::size_t chosen = remaining.size();
    std::size_t best_terms = 0;
    for (std::size_t j = 0; j < remaining.size(); ++j) {
      if (!remaining[j].eq.coeffs.count(w)) continue;
      if (strategy == PivotStrategy::kFirstNonzero) {
        chosen = j;
        break;
      }
      std::size_t terms = remaining[j].eq.term_count();
      if (chosen == remaining.size() || terms < best_terms) {
        chosen = j;
        best_terms = terms;
      }
    }
    if (chosen == remaining.size())
      throw UnderdeterminedError(
          remaining.empty()
              ? "triangularize: equations exhausted with unknowns left (unknown " +
                    std::to_string(w) + ")"
              : "triangularize: no equation contains unknown " + std::to_string(w));

    LinExpr eq = std::move(remaining[chosen].eq);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(chosen));

    RatFunc c = eq.coeffs.at(w);
    Pivot pivot;
    pivot.unknown = w;
    pivot.expr = LinExpr(eq.constant.table());
    for (const auto& [w2, c2] : eq.coeffs) {
      if (w2 == w) continue;
      pivot.expr.add_coeff(w2, -(c2 / c));
    }
    pivot.expr.constant = -(eq.constant / c);

    for (std::size_t j = 0; j < remaining.size();) {
      remaining[j].eq.substitute(w, pivot.expr);
      if (stats) stats->observe(remaining[j].eq);
      if (remaining[j].eq.is_zero())
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(j));
      else
        ++j;
    }

    out.pivots.push_back(std::move(pivot));
    if (stats) ++stats->pivots;
  }

  out.residual.reserve(remaining.size());
  for (auto& row : remaining) out.residual.push_back(std::move(row.eq));
  if (stats) stats->residual_equations = out.residual.size();
  return out;
}

inline std::map<UnknownId, RatFunc> back_substitute(const std::vector<Pivot>& pivots) {
  std::map<UnknownId, RatFunc> values;
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    RatFunc v = it->expr.constant;
    for (const auto& [w, c] : it->expr.coeffs) {
      auto found = values.find(w);
      if (found == values.end())
        throw UnderdeterminedError("back_substitute: pivot references unresolved unknown " +
                                   std::to_string(w));
      v += c * found->second;
    }
    values.emplace(it->unknown, std::move(v));
  }
  return values;
}

inline Solution solve(const LinearSystem& system, PivotStrategy strategy, bool check,
                      SolveStats* stats = nullptr) {
  TriangularResult tri = triangularize(system, strategy, stats);
  Solution sol;
  sol.assignment = back_substitute(tri.pivots);
  if (check) {
    sol.verdict = Verdict::kConsistent;
    for (const auto& eq : tri.residual) {
      if (!eq.evaluate(sol.assignment).is_zero()) {
        sol.verdict = Verdict::kInconsistent;
        break;
      }
    }
  }
  return sol;
}

}  // namespace eulerdata

#endif
