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

#include <unordered_set>

#include "doctest.h"
#include "randassign/error.hpp"
#include "randassign/rational.hpp"

using randassign::Error;
using randassign::ErrorCode;
using randassign::Rational;

namespace {

ErrorCode CodeOf(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::kContract;
}

}  // namespace

TEST_SUITE("rational") {

TEST_CASE("parse accepts integers, fractions and decimals") {
  CHECK(Rational::Parse("3") == Rational(3));
  CHECK(Rational::Parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::Parse(" 6/8 ") == Rational(3, 4));
  CHECK(Rational::Parse("0.99") == Rational(99, 100));
  CHECK(Rational::Parse("-1.25") == Rational(-5, 4));
  CHECK(Rational::Parse(".5") == Rational(1, 2));
  CHECK(Rational::Parse("2/-4") == Rational(-1, 2));
}

TEST_CASE("malformed literals are rejected") {
  for (const char* bad : {"", "abc", "1/0", "1e-3", "1..2", "/3", "3/", "0.5/2"}) {
    INFO(bad);
    ErrorCode c = CodeOf([&] { (void)Rational::Parse(bad); });
    CHECK((c == ErrorCode::kMalformedInput || c == ErrorCode::kContract));
  }
}

TEST_CASE("canonical form and printing") {
  Rational r(10, -4);
  CHECK(r.ToString() == "-5/2");
  CHECK(r.NumeratorString() == "-5");
  CHECK(r.DenominatorString() == "2");
  CHECK(Rational(4, 2).ToString() == "2");
  CHECK(Rational(0, 7).ToString() == "0");
  CHECK(Rational(0, 7).IsZero());
  CHECK(Rational(6, 3).IsInteger());
}

TEST_CASE("decimal display rounds half away from zero") {
  CHECK(Rational(1, 3).FormatDecimal(3) == "0.333");
  CHECK(Rational(2, 3).FormatDecimal(3) == "0.667");
  CHECK(Rational(5, 6).FormatDecimal(2) == "0.83");
  CHECK(Rational(-1, 2).FormatDecimal(0) == "-1");
  CHECK(Rational(1, 2).FormatDecimal(0) == "1");
  CHECK(Rational(-1, 1000).FormatDecimal(2) == "0.00");
  CHECK(Rational(7).FormatDecimal(2) == "7.00");
}

TEST_CASE("arithmetic is exact") {
  Rational third(1, 3);
  CHECK(third + third + third == Rational(1));
  CHECK(Rational(3, 4) - Rational(1, 4) == Rational(1, 2));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(CodeOf([] { (void)(Rational(1) / Rational(0)); }) == ErrorCode::kContract);
  Rational big = Rational::FromStrings("123456789012345678901234567890", "3");
  CHECK(big.ToString() == "41152263004115226300411522630");
  CHECK_FALSE(big.FitsInt64());
}

TEST_CASE("ordering and hashing agree with value") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(randassign::Min(Rational(2), Rational(1, 2)) == Rational(1, 2));
  CHECK(randassign::Abs(Rational(-3, 7)) == Rational(3, 7));
  std::unordered_set<Rational> s{Rational(1, 2), Rational(2, 4), Rational(3, 6)};
  CHECK(s.size() == 1);
}

}
