#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "eulerdata/invariants.hpp"
#include "test_support.hpp"

using namespace eulerdata;
using namespace testsupport;

namespace {

EngineCase make_case(int n, std::vector<int> convex, std::vector<int> concave, OmegaKind kind,
                     const std::string& spec_text) {
  EngineCase ec;
  ec.bundle.n = n;
  ec.bundle.convex = std::move(convex);
  ec.bundle.concave = std::move(concave);
  ec.bundle.validate();
  ec.omega = OmegaClass::make(ec.bundle, kind);
  ec.spec = Specialization::parse(spec_text);
  ec.spec.validate(n);
  return ec;
}

KdValue first_kd(const EngineCase& ec, int sdiff1) {
  EulerDatum q1 = build_q1(ec.bundle, ec.omega, ec.spec);
  MultiPoly J = nonequivariant_restriction(q1, ec.bundle.n, ec.spec);
  CHECK_FALSE(J.contains_var(Var::u));
  KdValue k = kd_from_qd(J, 1, ec.bundle.n, sdiff1);
  KdValue other = kd_crosscheck(J, 1, ec.bundle.n, sdiff1);
  CHECK(k == other);
  return k;
}

}  // namespace

TEST_CASE("K_1 = 1 for O(-1)+O(-1) on CP^1") {
  EngineCase ec = make_case(1, {}, {1, 1}, OmegaKind::kEuler, "i+1");
  KdValue k = first_kd(ec, 0);
  CHECK(k.value == Rational(1));
  CHECK(k.x_exp == 0);
}

TEST_CASE("K_1 = 2875 for the quintic") {
  EngineCase ec = make_case(4, {5}, {}, OmegaKind::kEuler, "i^2+7*i+1");
  KdValue k = first_kd(ec, 0);
  CHECK(k.value == Rational(2875));
}

TEST_CASE("K_1 = 3 for O(-3) on CP^2 and K_1 = -4 for O(2)+O(-2) on CP^3") {
  CHECK(first_kd(make_case(2, {}, {3}, OmegaKind::kEuler, "i^3+i^2+3*i+1"), 0).value ==
        Rational(3));
  CHECK(first_kd(make_case(3, {2}, {2}, OmegaKind::kEuler, "i^2+7*i+1"), 0).value ==
        Rational(-4));
}

TEST_CASE("chern-mode first values carry x-exponents") {
  // O(2) -> CP^1: K_1 = x^3
  {
    KdValue k = first_kd(make_case(1, {2}, {}, OmegaKind::kChern, "i^2+1"), 3);
    CHECK(k.value == Rational(1));
    CHECK(k.x_exp == 3);
  }
  // O(3) -> CP^2: K_1 = 21 x^2
  {
    KdValue k = first_kd(make_case(2, {3}, {}, OmegaKind::kChern, "i^2+7*i+1"), 2);
    CHECK(k.value == Rational(21));
    CHECK(k.x_exp == 2);
  }
  // O(6) -> CP^4: K_1 = 50400 x
  {
    KdValue k = first_kd(make_case(4, {6}, {}, OmegaKind::kChern, "i^2+7*i+1"), 1);
    CHECK(k.value == Rational(50400));
    CHECK(k.x_exp == 1);
  }
}

TEST_CASE("nonequivariant restriction of the quintic Q_1 matches an independent route") {
  // reduce-then-limit equals limit-then-truncate
  EngineCase ec = make_case(4, {5}, {}, OmegaKind::kEuler, "i^2+7*i+1");
  EulerDatum q1 = build_q1(ec.bundle, ec.omega, ec.spec);
  MultiPoly J = nonequivariant_restriction(q1, 4, ec.spec);
  MultiPoly direct = q1.q.eval_var(Var::u, Rational(0));
  MultiPoly truncated(VariableTable::canonical());
  for (const auto& [m, c] : direct.terms())
    if (m.exp(Var::kappa) <= 4) truncated.add_term(m, c);
  CHECK(J == truncated.substitute(Var::kappa, H()));
}

TEST_CASE("K_2 for O(-3) on CP^2 via the full inductive step") {
  EngineCase ec = make_case(2, {}, {3}, OmegaKind::kEuler, "i^3+i^2+3*i+1");
  EngineOptions opts;
  opts.check = true;
  auto data = compute_euler_data(ec, 2, opts, [](const EulerDatum&, Verdict, const SolveStats&) {});
  MultiPoly J = nonequivariant_restriction(data[1], 2, ec.spec);
  KdValue k = kd_from_qd(J, 2, 2, 0);
  CHECK(k.value == Rational(-45, 8));
  CHECK(kd_crosscheck(J, 2, 2, 0) == k);
}

TEST_CASE("K_d = 1/d^3 for O(-1)+O(-1) up to d = 3") {
  EngineCase ec = make_case(1, {}, {1, 1}, OmegaKind::kEuler, "i+1");
  EngineOptions opts;
  auto data = compute_euler_data(ec, 3, opts, [](const EulerDatum&, Verdict, const SolveStats&) {});
  for (int d = 1; d <= 3; ++d) {
    MultiPoly J = nonequivariant_restriction(data[static_cast<std::size_t>(d) - 1], 1, ec.spec);
    KdValue k = kd_from_qd(J, d, 1, 0);
    CHECK(k.value == Rational(1, static_cast<long>(d) * d * d));
    CHECK(kd_crosscheck(J, d, 1, 0) == k);
  }
}

TEST_CASE("instanton conversion examples") {
  auto n1 = instanton_convert({{Rational(2875), 0}, {Rational(4876875, 8), 0}});
  REQUIRE(n1.size() == 2);
  CHECK(n1[0].value == Rational(2875));  // n_1 = K_1 always
  CHECK(n1[1].value == Rational(609250));

  auto n2 = instanton_convert({{Rational(1280), 0}, {Rational(92448), 0}});
  CHECK(n2[1].value == Rational(92288));

  // x-exponents carry through unchanged
  auto n3 = instanton_convert({{Rational(1), 3}, {Rational(1, 8), 3}});
  CHECK(n3[0].x_exp == 3);
  CHECK(n3[1].value == Rational(0));
  CHECK(n3[1].x_exp == 3);
}

TEST_CASE("divisor-sum round trip restores K from n") {
  std::mt19937 rng(42);
  for (int iter = 0; iter < 25; ++iter) {
    std::vector<KdValue> K;
    int len = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < len; ++i) K.push_back({random_rational(rng, 40), 0});
    auto n = instanton_convert(K);
    auto back = multiple_cover_sum(n);
    REQUIRE(back.size() == K.size());
    for (std::size_t i = 0; i < K.size(); ++i) CHECK(back[i].value == K[i].value);
  }
}

TEST_CASE("kd_from_qd rejects a u-contaminated restriction") {
  MultiPoly bad = H() * U();
  CHECK_THROWS_AS(kd_from_qd(bad, 1, 1, 0), StructuralError);
}
