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
#include "randassign/dominance.hpp"
#include "randassign/error.hpp"
#include "support.hpp"

using namespace randassign;
using namespace testing_support;

namespace {

std::vector<Rational> R(std::initializer_list<Rational> v) { return v; }

int AsCode(SdComparison c) {
  switch (c) {
    case SdComparison::kEqual: return 0;
    case SdComparison::kStrictlyDominates: return 1;
    case SdComparison::kStrictlyDominated: return -1;
    case SdComparison::kIncomparable: return -2;
  }
  return 99;
}

}  // namespace

TEST_SUITE("dominance") {

TEST_CASE("cut points of a weak order") {
  WeakOrder w = WeakOrder::FromClasses({{0, 1}, {2}});
  auto k = CutPointCumulatives(w, R({Rational(1, 3), Rational(1, 2), Rational(1, 6)}));
  CHECK(k == R({Rational(5, 6), Rational(1)}));
}

TEST_CASE("the manipulation margin of the three-agent example") {
  WeakOrder tie = WeakOrder::FromClasses({{0, 1}, {2}});
  auto lie = R({Rational(1, 3), Rational(1, 2), Rational(1, 6)});
  auto truth = R({Rational(0), Rational(3, 4), Rational(1, 4)});
  CHECK(SdCompare(tie, lie, truth) == SdComparison::kStrictlyDominates);
  CHECK(SdCompare(tie, truth, lie) == SdComparison::kStrictlyDominated);
  WeakOrder strict = WeakOrder::Strict({0, 1, 2});
  CHECK(SdCompare(strict, lie, lie) == SdComparison::kEqual);
  CHECK(SdCompare(WeakOrder::Strict({1, 2, 0}), lie, truth) == SdComparison::kStrictlyDominated);
}

TEST_CASE("incomparable rows") {
  WeakOrder w = WeakOrder::Strict({0, 1, 2});
  CHECK(SdCompare(w, R({Rational(1, 2), Rational(0), Rational(1, 2)}),
                  R({Rational(0), Rational(1), Rational(0)})) == SdComparison::kIncomparable);
}

TEST_CASE("contract violations") {
  WeakOrder w = WeakOrder::Strict({0, 1});
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kVerificationFailure;
  };
  CHECK(code([&] { SdCompare(w, R({Rational(1), Rational(0)}), R({Rational(1, 2), Rational(0)})); }) ==
        ErrorCode::kContract);
  CHECK(code([&] { SdCompare(w, R({Rational(1)}), R({Rational(1), Rational(0)})); }) ==
        ErrorCode::kShape);
}

TEST_CASE("cut-point comparison agrees with the upper-contour definition") {
  Rng rng(11);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = Uniform(rng, 2, 5);
    WeakOrder w = RandomWeakOrder(rng, n);
    auto p = RandomRow(rng, n);
    auto q = Uniform(rng, 0, 1) ? PushDown(rng, w, p) : RandomRow(rng, n);
    SdComparison c = SdCompare(w, p, q);
    CHECK(AsCode(c) == SdByDefinition(w, p, q));
    CHECK(SdCompare(w, q, p) == Mirror(c));
  }
}

TEST_CASE("sampled utilities are consistent and seeded") {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    WeakOrder w = RandomWeakOrder(rng, Uniform(rng, 1, 5));
    auto u = SampleConsistentUtility(w, static_cast<std::uint64_t>(t));
    CHECK(IsConsistentUtility(w, u));
    CHECK(u == SampleConsistentUtility(w, static_cast<std::uint64_t>(t)));
  }
  WeakOrder w = WeakOrder::FromClasses({{1}, {0, 2}});
  auto u = UtilityFromGaps(w, R({Rational(3)}));
  CHECK(u == R({Rational(0), Rational(3), Rational(0)}));
  CHECK_FALSE(IsConsistentUtility(w, R({Rational(1), Rational(3), Rational(0)})));
}

TEST_CASE("dominance implies higher expected utility") {
  Rng rng(99);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = Uniform(rng, 2, 5);
    WeakOrder w = RandomWeakOrder(rng, n);
    auto p = RandomRow(rng, n);
    auto q = PushDown(rng, w, p);
    SdComparison c = SdCompare(w, p, q);
    for (std::uint64_t s = 0; s < 20; ++s) {
      auto u = SampleConsistentUtility(w, s);
      Rational gap = ExpectedUtility(u, p) - ExpectedUtility(u, q);
      if (c == SdComparison::kStrictlyDominates) CHECK(gap > 0);
      if (c == SdComparison::kEqual) CHECK(gap == 0);
    }
  }
}

}
