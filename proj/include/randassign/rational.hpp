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

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace randassign {

/// Exact fraction backed by GMP. Always canonical: lowest terms, positive
/// denominator. There is no conversion to floating point; use
/// FormatDecimal for an approximate display.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);
  explicit Rational(const mpq_class& value);

  /// Accepts "3", "-3", "3/4", "0.99", "-1.25", "1e-3" is rejected.
  static Rational Parse(std::string_view text);
  /// Builds num/den from decimal integer strings of arbitrary length.
  static Rational FromStrings(std::string_view numerator,
                              std::string_view denominator);

  std::string NumeratorString() const;
  std::string DenominatorString() const;
  /// "num/den", or "num" when the denominator is 1.
  std::string ToString() const;
  /// Decimal rounded to `digits` fractional digits (half away from zero),
  /// computed by integer long division.
  std::string FormatDecimal(int digits) const;

  bool IsZero() const { return sgn(value_) == 0; }
  int Sign() const { return sgn(value_); }
  bool IsInteger() const;
  /// Fits numerator and denominator in int64.
  bool FitsInt64() const;
  std::int64_t NumeratorInt64() const;
  std::int64_t DenominatorInt64() const;

  const mpq_class& raw() const { return value_; }

  Rational operator-() const;
  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::size_t Hash() const;

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational Abs(const Rational& r);
Rational Min(const Rational& a, const Rational& b);
Rational Max(const Rational& a, const Rational& b);

}  // namespace randassign

template <>
struct std::hash<randassign::Rational> {
  std::size_t operator()(const randassign::Rational& r) const noexcept {
    return r.Hash();
  }
};
