// Copyright 2026 The randassign Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"
#include "randassign/error.hpp"
#include "randassign/exactlp.hpp"
#include "support.hpp"

using namespace randassign;
using namespace randassign::lp;
using testing_support::Rng;
using testing_support::Uniform;

namespace {

Relation RandomRelation(Rng& rng, bool allow_strict) {
  static const Relation all[] = {Relation::kLe, Relation::kGe, Relation::kEq, Relation::kLt,
                                 Relation::kGt};
  return all[Uniform(rng, 0, allow_strict ? 4 : 2)];
}

LinearSystem RandomSystem(Rng& rng, std::size_t vars, std::size_t rows, bool strict,
                          bool free_vars) {
  LinearSystem sys;
  for (std::size_t v = 0; v < vars; ++v)
    sys.AddVariable("x" + std::to_string(v),
                    free_vars && Uniform(rng, 0, 2) == 0 ? VarDomain::kFree : VarDomain::kNonNegative);
  for (std::size_t r = 0; r < rows; ++r) {
    LinearExpr e;
    for (std::size_t v = 0; v < vars; ++v)
      e.Add(VarId{v}, Rational(static_cast<std::int64_t>(Uniform(rng, 0, 6)) - 3));
    sys.AddConstraint(e, RandomRelation(rng, strict),
                      Rational(static_cast<std::int64_t>(Uniform(rng, 0, 8)) - 3,
                               static_cast<std::int64_t>(Uniform(rng, 1, 3))));
  }
  return sys;
}

void CheckResult(const LinearSystem& sys, const FeasibilityResult& r) {
  if (r.feasible) {
    CHECK(sys.Satisfies(r.witness));
  } else {
    REQUIRE(r.certificate.has_value());
    std::string why;
    CHECK_MESSAGE(VerifyInfeasibility(sys, *r.certificate, &why), why);
  }
}

}  // namespace

TEST_SUITE("exactlp") {

TEST_CASE("a feasible system yields a satisfying point") {
  LinearSystem sys;
  VarId x = sys.AddVariable("x"), y = sys.AddVariable("y");
  sys.AddConstraint(LinearExpr(x) + y, Relation::kEq, 1);
  sys.AddConstraint(LinearExpr(x), Relation::kGe, Rational(1, 3));
  auto r = LpFeasible(sys);
  REQUIRE(r.feasible);
  CHECK(sys.Satisfies(r.witness));
}

TEST_CASE("infeasibility comes with a checkable certificate") {
  LinearSystem sys;
  VarId x = sys.AddVariable("x"), y = sys.AddVariable("y");
  sys.AddConstraint(LinearExpr(x) + y, Relation::kEq, 1, "sum");
  sys.AddConstraint(LinearExpr(x), Relation::kGe, Rational(3, 4), "x big");
  sys.AddConstraint(LinearExpr(y), Relation::kGe, Rational(1, 2), "y big");
  auto r = LpFeasible(sys);
  REQUIRE_FALSE(r.feasible);
  REQUIRE(r.certificate);
  CHECK(VerifyInfeasibility(sys, *r.certificate));
  CHECK(DescribeInfeasibility(sys, *r.certificate).find("sum") != std::string::npos);
  auto tampered = *r.certificate;
  tampered.multipliers[0] += 1;
  CHECK_FALSE(VerifyInfeasibility(sys, tampered));
}

TEST_CASE("strict inequalities without epsilons") {
  LinearSystem sys;
  VarId x = sys.AddVariable("x");
  sys.AddConstraint(LinearExpr(x), Relation::kGt, 0);
  auto r = LpFeasible(sys);
  REQUIRE(r.feasible);
  CHECK(r.witness[0] > 0);

  sys.AddConstraint(LinearExpr(x), Relation::kLe, 0);
  r = LpFeasible(sys);
  REQUIRE_FALSE(r.feasible);
  CHECK(VerifyInfeasibility(sys, *r.certificate));
  CHECK(LpFeasible(sys.WeakClosure()).feasible);

  LinearSystem open;
  VarId a = open.AddVariable("a"), b = open.AddVariable("b");
  open.AddConstraint(LinearExpr(a) + b, Relation::kLt, 1);
  open.AddConstraint(LinearExpr(a), Relation::kGt, Rational(1, 2));
  open.AddConstraint(LinearExpr(b), Relation::kGt, Rational(1, 2));
  r = LpFeasible(open);
  REQUIRE_FALSE(r.feasible);
  CHECK(VerifyInfeasibility(open, *r.certificate));
}

TEST_CASE("maximisation and its dual") {
  LinearSystem sys;
  VarId x = sys.AddVariable("x"), y = sys.AddVariable("y");
  sys.AddConstraint(LinearExpr(x) + y, Relation::kLe, 4);
  sys.AddConstraint(LinearExpr(x) + Rational(3) * LinearExpr(y), Relation::kLe, 6);
  LinearExpr obj = Rational(3) * LinearExpr(x) + Rational(2) * LinearExpr(y);
  auto r = LpMaximize(sys, obj);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.optimum == Rational(12));
  CHECK(VerifyUpperBound(sys, obj, r.dual, r.optimum));
  CHECK_FALSE(VerifyUpperBound(sys, obj, r.dual, r.optimum - Rational(1, 2)));

  auto m = LpMinimize(sys, LinearExpr(x) - y);
  REQUIRE(m.status == LpStatus::kOptimal);
  CHECK(m.optimum == Rational(-2));
  CHECK(VerifyUpperBound(sys, -(LinearExpr(x) - y), m.dual, -m.optimum));
}

TEST_CASE("unbounded, infeasible and strict objectives") {
  LinearSystem sys;
  VarId x = sys.AddVariable("x");
  sys.AddConstraint(LinearExpr(x), Relation::kGe, 1);
  CHECK(LpMaximize(sys, LinearExpr(x)).status == LpStatus::kUnbounded);
  sys.AddConstraint(LinearExpr(x), Relation::kLe, 0);
  auto r = LpMaximize(sys, LinearExpr(x));
  CHECK(r.status == LpStatus::kInfeasible);
  REQUIRE(r.infeasibility);
  CHECK(VerifyInfeasibility(sys, *r.infeasibility));
  LinearSystem strict;
  VarId s = strict.AddVariable("s");
  strict.AddConstraint(LinearExpr(s), Relation::kLt, 1);
  CHECK_THROWS_AS(LpMaximize(strict, LinearExpr(s)), Error);
}

TEST_CASE("free variables") {
  LinearSystem sys;
  VarId x = sys.AddVariable("x", VarDomain::kFree);
  sys.AddConstraint(LinearExpr(x), Relation::kLe, -3);
  auto r = LpMaximize(sys, LinearExpr(x));
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.optimum == Rational(-3));
  auto fm = FourierMotzkinFeasible(sys);
  REQUIRE(fm.feasible);
  CHECK(fm.witness[0] <= Rational(-3));
}

TEST_CASE("simplex and Fourier-Motzkin agree on random systems") {
  Rng rng(2024);
  int feasible = 0, infeasible = 0;
  for (int t = 0; t < 600; ++t) {
    const std::size_t vars = Uniform(rng, 1, 4), rows = Uniform(rng, 1, 5);
    LinearSystem sys = RandomSystem(rng, vars, rows, t % 2 == 0, t % 3 == 0);
    auto a = LpFeasible(sys);
    auto b = FourierMotzkinFeasible(sys);
    INFO(sys.ToString());
    CHECK(a.feasible == b.feasible);
    CheckResult(sys, a);
    CheckResult(sys, b);
    (a.feasible ? feasible : infeasible)++;
  }
  CHECK(feasible > 50);
  CHECK(infeasible > 50);
}

TEST_CASE("optima match vertex enumeration and duals verify") {
  Rng rng(7);
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = Uniform(rng, 1, 3), m = Uniform(rng, 1, 4);
    testing_support::SmallLp small;
    LinearSystem sys;
    for (std::size_t v = 0; v < d; ++v) sys.AddVariable("x" + std::to_string(v));
    auto add = [&](std::vector<Rational> a, Rational b) {
      LinearExpr e;
      for (std::size_t v = 0; v < d; ++v) e.Add(VarId{v}, a[v]);
      sys.AddConstraint(e, Relation::kLe, b);
      small.a.push_back(std::move(a));
      small.b.push_back(b);
    };
    for (std::size_t v = 0; v < d; ++v) {  // keep it bounded
      std::vector<Rational> a(d);
      a[v] = 1;
      add(a, 10);
    }
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<Rational> a;
      for (std::size_t v = 0; v < d; ++v) a.push_back(static_cast<std::int64_t>(Uniform(rng, 0, 8)) - 4);
      add(a, static_cast<std::int64_t>(Uniform(rng, 0, 10)) - 2);
    }
    LinearExpr obj;
    for (std::size_t v = 0; v < d; ++v) {
      small.c.push_back(static_cast<std::int64_t>(Uniform(rng, 0, 10)) - 5);
      obj.Add(VarId{v}, small.c.back());
    }
    auto expect = testing_support::MaxByVertices(small);
    auto got = LpMaximize(sys, obj);
    INFO(sys.ToString());
    if (!expect) {
      CHECK(got.status == LpStatus::kInfeasible);
      continue;
    }
    REQUIRE(got.status == LpStatus::kOptimal);
    CHECK(got.optimum == *expect);
    CHECK(sys.Satisfies(got.witness));
    CHECK(obj.Evaluate(got.witness) == got.optimum);
    std::string why;
    CHECK_MESSAGE(VerifyUpperBound(sys, obj, got.dual, got.optimum, &why), why);
  }
}

TEST_CASE("Fourier-Motzkin refuses large systems") {
  LinearSystem sys;
  for (int v = 0; v < 13; ++v) sys.AddVariable("v" + std::to_string(v));
  CHECK_THROWS_AS(FourierMotzkinFeasible(sys), Error);
}

TEST_CASE("weak closure and violation reporting") {
  LinearSystem sys;
  VarId x = sys.AddVariable("x");
  sys.AddConstraint(LinearExpr(x), Relation::kLt, 1);
  CHECK(sys.HasStrict());
  CHECK_FALSE(sys.WeakClosure().HasStrict());
  std::vector<Rational> one{Rational(1)}, minus{Rational(-1)};
  CHECK(sys.FirstViolation(one) == std::optional<std::size_t>(0));
  CHECK(sys.FirstViolation(minus) == std::optional<std::size_t>(1));
  CHECK(sys.WeakClosure().Satisfies(one));
}

}
