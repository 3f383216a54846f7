#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "eulerdata/linear.hpp"
#include "random_systems.hpp"
#include "test_support.hpp"

using namespace eulerdata;
using namespace testsupport;

namespace {

LinExpr make_eq(std::vector<std::pair<UnknownId, RatFunc>> coeffs, RatFunc rhs) {
  // coefficients of "sum c w = rhs" stored as "sum c w - rhs = 0"
  LinExpr e;
  for (auto& [w, c] : coeffs) e.add_coeff(w, c);
  e.constant = -rhs;
  return e;
}

}  // namespace

TEST_CASE("two-equation system solves by elimination and back substitution") {
  LinearSystem sys;
  sys.unknowns = {0, 1};
  sys.equations.push_back(make_eq({{0, RatFunc(1)}, {1, RatFunc(1)}}, RatFunc(3)));
  sys.equations.push_back(make_eq({{0, RatFunc(1)}, {1, RatFunc(-1)}}, RatFunc(1)));

  TriangularResult tri = triangularize(sys, PivotStrategy::kFirstNonzero);
  REQUIRE(tri.pivots.size() == 2);
  CHECK(tri.residual.empty());
  // first pivot: w0 = 3 - w1
  CHECK(tri.pivots[0].unknown == 0);
  CHECK(tri.pivots[0].expr.constant == RatFunc(3));
  CHECK(tri.pivots[0].expr.coeffs.at(1) == RatFunc(-1));
  // second pivot: w1 = 1
  CHECK(tri.pivots[1].unknown == 1);
  CHECK(tri.pivots[1].expr.coeffs.empty());
  CHECK(tri.pivots[1].expr.constant == RatFunc(1));

  auto values = back_substitute(tri.pivots);
  CHECK(values.at(0) == RatFunc(2));
  CHECK(values.at(1) == RatFunc(1));

  Solution sol = solve(sys, PivotStrategy::kMinTerms, true);
  CHECK(sol.verdict == Verdict::kConsistent);
  CHECK(sol.assignment.at(0) == RatFunc(2));
}

TEST_CASE("pivot coefficient division happens exactly in RatFunc") {
  // u * w0 = u^2  ->  w0 = u
  LinearSystem sys;
  sys.unknowns = {0};
  sys.equations.push_back(make_eq({{0, RatFunc(U())}}, RatFunc(U().pow(2))));
  TriangularResult tri = triangularize(sys, PivotStrategy::kFirstNonzero);
  REQUIRE(tri.pivots.size() == 1);
  CHECK(tri.pivots[0].expr.constant == RatFunc(U()));
}

TEST_CASE("redundant equation leaves a residual that reduces to zero") {
  LinearSystem sys;
  sys.unknowns = {0, 1};
  sys.equations.push_back(make_eq({{0, RatFunc(1)}, {1, RatFunc(1)}}, RatFunc(3)));
  sys.equations.push_back(make_eq({{0, RatFunc(1)}, {1, RatFunc(-1)}}, RatFunc(1)));
  sys.equations.push_back(make_eq({{0, RatFunc(1)}, {1, RatFunc(1)}}, RatFunc(3)));
  Solution sol = solve(sys, PivotStrategy::kFirstNonzero, true);
  CHECK(sol.verdict == Verdict::kConsistent);
  CHECK(sol.assignment.at(0) == RatFunc(2));
  CHECK(sol.assignment.at(1) == RatFunc(1));
}

TEST_CASE("forced contradiction is detected, mirroring the '= 100' probe") {
  LinearSystem sys;
  sys.unknowns = {0, 1};
  sys.equations.push_back(make_eq({{0, RatFunc(1)}, {1, RatFunc(1)}}, RatFunc(3)));
  sys.equations.push_back(make_eq({{0, RatFunc(1)}, {1, RatFunc(-1)}}, RatFunc(1)));
  sys.equations.push_back(make_eq({{0, RatFunc(1)}, {1, RatFunc(1)}}, RatFunc(100)));
  Solution sol = solve(sys, PivotStrategy::kMinTerms, true);
  CHECK(sol.verdict == Verdict::kInconsistent);
  // without the check the verdict stays unchecked; inconsistency is a
  // result, not an error
  Solution unchecked = solve(sys, PivotStrategy::kMinTerms, false);
  CHECK(unchecked.verdict == Verdict::kUnchecked);
}

TEST_CASE("back substitution resolves chains") {
  // w0 = w1 + 1, w1 = w2 + 1, w2 = 5
  std::vector<Pivot> pivots;
  Pivot p0;
  p0.unknown = 0;
  p0.expr.add_coeff(1, RatFunc(1));
  p0.expr.constant = RatFunc(1);
  Pivot p1;
  p1.unknown = 1;
  p1.expr.add_coeff(2, RatFunc(1));
  p1.expr.constant = RatFunc(1);
  Pivot p2;
  p2.unknown = 2;
  p2.expr.constant = RatFunc(5);
  pivots = {p0, p1, p2};
  auto values = back_substitute(pivots);
  CHECK(values.at(0) == RatFunc(7));
  CHECK(values.at(1) == RatFunc(6));
  CHECK(values.at(2) == RatFunc(5));

  // single pivot with a rational-function value stays itself
  Pivot lone;
  lone.unknown = 0;
  lone.expr.constant = RatFunc(U(), U() + C(1));
  auto single = back_substitute({lone});
  CHECK(single.at(0) == RatFunc(U(), U() + C(1)));
}

TEST_CASE("missing pivot raises UnderdeterminedError") {
  LinearSystem sys;
  sys.unknowns = {0, 1};
  sys.equations.push_back(make_eq({{0, RatFunc(1)}}, RatFunc(3)));
  CHECK_THROWS_AS(triangularize(sys, PivotStrategy::kFirstNonzero), UnderdeterminedError);

  LinearSystem sys2;
  sys2.unknowns = {0, 1};
  // w1 never appears
  sys2.equations.push_back(make_eq({{0, RatFunc(1)}}, RatFunc(3)));
  sys2.equations.push_back(make_eq({{0, RatFunc(2)}}, RatFunc(6)));
  CHECK_THROWS_AS(triangularize(sys2, PivotStrategy::kFirstNonzero), UnderdeterminedError);

  LinearSystem empty;
  empty.unknowns = {0};
  CHECK_THROWS_AS(triangularize(empty, PivotStrategy::kFirstNonzero), StructuralError);
}

TEST_CASE("residual property on random uniquely-solvable systems") {
  std::mt19937 rng(31337);
  for (int iter = 0; iter < 30; ++iter) {
    RandomSystem rs = random_solvable_system(rng);
    Solution sol = solve(rs.system, PivotStrategy::kMinTerms, true);
    CHECK(sol.verdict == Verdict::kConsistent);
    for (const auto& [w, v] : rs.truth) {
      CAPTURE(iter, w);
      CHECK(sol.assignment.at(w) == v);
    }
    for (const auto& eq : rs.system.equations) CHECK(eq.evaluate(sol.assignment).is_zero());
  }
}

TEST_CASE("strategy and permutation independence") {
  std::mt19937 rng(555);
  for (int iter = 0; iter < 15; ++iter) {
    RandomSystem rs = random_solvable_system(rng);
    Solution a = solve(rs.system, PivotStrategy::kFirstNonzero, false);
    Solution b = solve(rs.system, PivotStrategy::kMinTerms, false);
    CHECK(a.assignment == b.assignment);

    LinearSystem shuffled = rs.system;
    std::shuffle(shuffled.equations.begin(), shuffled.equations.end(), rng);
    Solution c = solve(shuffled, PivotStrategy::kMinTerms, false);
    CHECK(c.assignment == a.assignment);
  }
}

TEST_CASE("solver stats are recorded") {
  std::mt19937 rng(8);
  RandomSystem rs = random_solvable_system(rng);
  SolveStats stats;
  solve(rs.system, PivotStrategy::kMinTerms, true, &stats);
  CHECK(stats.pivots == rs.system.unknowns.size());
  CHECK(stats.peak_equation_terms > 0);
}
