#ifndef EULERDATA_TESTS_RANDOM_SYSTEMS_HPP
#define EULERDATA_TESTS_RANDOM_SYSTEMS_HPP

#include <map>
#include <random>
#include <vector>

#include "eulerdata/linear.hpp"

// Generator for random uniquely-solvable linear systems over RatFunc(u),
// shared by the unit tests and the acceptance suite. Systems are built from
// a known truth assignment and a provably nonsingular coefficient matrix
// (permuted triangular with nonzero diagonal, plus elementary row ops), with
// a couple of redundant rows mixed in to exercise the residual path.

namespace testsupport {

using eulerdata::LinearSystem;
using eulerdata::LinExpr;
using eulerdata::MultiPoly;
using eulerdata::RatFunc;
using eulerdata::Rational;
using eulerdata::UnknownId;
using eulerdata::Var;

struct RandomSystem {
  LinearSystem system;
  std::map<UnknownId, RatFunc> truth;
};

inline RatFunc random_ratfunc_u(std::mt19937& rng, int max_deg = 2, long range = 4) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<long> coef(-range, range);
  auto poly = [&](bool nonzero) {
    MultiPoly p;
    int d = deg(rng);
    for (int k = 0; k <= d; ++k) {
      long c = coef(rng);
      if (c == 0) continue;
      p += MultiPoly::variable(Var::u, static_cast<unsigned>(k)) * Rational(c);
    }
    if (nonzero && p.is_zero()) p = MultiPoly::constant(Rational(1));
    return p;
  };
  return RatFunc(poly(false), poly(true));
}

inline RatFunc random_nonzero_ratfunc_u(std::mt19937& rng) {
  while (true) {
    RatFunc f = random_ratfunc_u(rng);
    if (!f.is_zero()) return f;
  }
}

inline RandomSystem random_solvable_system(std::mt19937& rng, int max_unknowns = 5) {
  std::uniform_int_distribution<int> nunk(1, max_unknowns);
  const int k = nunk(rng);
  RandomSystem out;
  out.system.unknowns.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out.system.unknowns[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < k; ++i) out.truth.emplace(i, random_ratfunc_u(rng));

  // triangular matrix over a random unknown permutation, nonzero diagonal
  std::vector<int> perm(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<RatFunc>> m(static_cast<std::size_t>(k),
                                      std::vector<RatFunc>(static_cast<std::size_t>(k)));
  for (int r = 0; r < k; ++r) {
    m[static_cast<std::size_t>(r)][static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])] =
        random_nonzero_ratfunc_u(rng);
    for (int c = r + 1; c < k; ++c)
      m[static_cast<std::size_t>(r)][static_cast<std::size_t>(perm[static_cast<std::size_t>(c)])] =
          random_ratfunc_u(rng);
  }
  // a few elementary row operations keep the matrix nonsingular
  std::uniform_int_distribution<int> row(0, k - 1);
  for (int op = 0; op < 3 && k > 1; ++op) {
    int a = row(rng), b = row(rng);
    if (a == b) continue;
    RatFunc c = random_ratfunc_u(rng);
    for (int j = 0; j < k; ++j)
      m[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] +=
          c * m[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)];
  }

  auto emit = [&](const std::vector<RatFunc>& rowv) {
    LinExpr eq;
    RatFunc rhs;
    for (int j = 0; j < k; ++j) {
      eq.add_coeff(j, rowv[static_cast<std::size_t>(j)]);
      rhs += rowv[static_cast<std::size_t>(j)] * out.truth.at(j);
    }
    eq.constant = -rhs;
    out.system.equations.push_back(std::move(eq));
  };
  for (int r = 0; r < k; ++r) emit(m[static_cast<std::size_t>(r)]);

  // up to two redundant rows: random combinations of existing rows
  std::uniform_int_distribution<int> extra(0, 2);
  int extras = extra(rng);
  for (int e = 0; e < extras; ++e) {
    int a = row(rng), b = row(rng);
    RatFunc ca = random_ratfunc_u(rng), cb = random_ratfunc_u(rng);
    std::vector<RatFunc> combo(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j)
      combo[static_cast<std::size_t>(j)] =
          ca * m[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] +
          cb * m[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)];
    emit(combo);
  }
  return out;
}

}  // namespace testsupport

#endif
