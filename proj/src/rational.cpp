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

#include "randassign/rational.hpp"

#include <cctype>
#include <ostream>

#include "randassign/error.hpp"

namespace randassign {
namespace {

bool IsDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class ParseInteger(std::string_view text) {
  std::string_view digits = text;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (!IsDigits(digits)) {
    throw Error(ErrorCode::kMalformedInput,
                "not an integer: '" + std::string(text) + "'");
  }
  mpz_class z(std::string(digits), 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedProfile: return "malformed-profile";
    case ErrorCode::kDuplicateObject: return "duplicate-object";
    case ErrorCode::kShape: return "shape";
    case ErrorCode::kSize: return "size";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kContract: return "contract";
    case ErrorCode::kMalformedInput: return "malformed-input";
    case ErrorCode::kVerificationFailure: return "verification-failure";
  }
  return "unknown";
}

Rational::Rational(std::int64_t value) {
  mpz_class z;
  // mpz has no int64 constructor on every platform; go through strings only
  // when long is narrower than int64.
  if constexpr (sizeof(long) >= sizeof(std::int64_t)) {
    z = static_cast<long>(value);
  } else {
    z = mpz_class(std::to_string(value), 10);
  }
  value_ = mpq_class(z);
}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) {
    throw Error(ErrorCode::kMalformedInput, "zero denominator");
  }
  value_ = mpq_class(Rational(numerator).value_.get_num(),
                     Rational(denominator).value_.get_num());
  value_.canonicalize();
}

Rational::Rational(const mpq_class& value) : value_(value) {
  value_.canonicalize();
}

Rational Rational::FromStrings(std::string_view numerator,
                               std::string_view denominator) {
  mpz_class num = ParseInteger(numerator);
  mpz_class den = ParseInteger(denominator);
  if (den == 0) {
    throw Error(ErrorCode::kMalformedInput, "zero denominator");
  }
  return Rational(mpq_class(num, den));
}

Rational Rational::Parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) {
    throw Error(ErrorCode::kMalformedInput, "empty rational literal");
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return FromStrings(text.substr(0, slash), text.substr(slash + 1));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
      negative = whole.front() == '-';
      whole.remove_prefix(1);
    }
    if ((whole.empty() && frac.empty()) ||
        (!whole.empty() && !IsDigits(whole)) ||
        (!frac.empty() && !IsDigits(frac))) {
      throw Error(ErrorCode::kMalformedInput,
                  "not a decimal literal: '" + std::string(text) + "'");
    }
    mpz_class num(std::string(whole.empty() ? "0" : whole) + std::string(frac),
                  10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    if (negative) num = -num;
    return Rational(mpq_class(num, den));
  }
  return Rational(mpq_class(ParseInteger(text)));
}

std::string Rational::NumeratorString() const {
  return value_.get_num().get_str(10);
}

std::string Rational::DenominatorString() const {
  return value_.get_den().get_str(10);
}

std::string Rational::ToString() const {
  if (IsInteger()) return NumeratorString();
  return NumeratorString() + "/" + DenominatorString();
}

std::string Rational::FormatDecimal(int digits) const {
  if (digits < 0) digits = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class num = abs(value_.get_num()) * scale * 2 + value_.get_den();
  mpz_class den = value_.get_den() * 2;
  mpz_class scaled;
  mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  std::string body = scaled.get_str(10);
  if (static_cast<int>(body.size()) <= digits) {
    body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
  }
  std::string out;
  if (sgn(value_) < 0 && scaled != 0) out.push_back('-');
  out += body.substr(0, body.size() - static_cast<std::size_t>(digits));
  if (digits > 0) {
    out.push_back('.');
    out += body.substr(body.size() - static_cast<std::size_t>(digits));
  }
  return out;
}

bool Rational::IsInteger() const { return value_.get_den() == 1; }

bool Rational::FitsInt64() const {
  static const mpz_class kMin(std::to_string(INT64_MIN), 10);
  static const mpz_class kMax(std::to_string(INT64_MAX), 10);
  return value_.get_num() >= kMin && value_.get_num() <= kMax &&
         value_.get_den() <= kMax;
}

std::int64_t Rational::NumeratorInt64() const {
  if (!FitsInt64()) throw Error(ErrorCode::kSize, "numerator exceeds int64");
  return std::stoll(NumeratorString());
}

std::int64_t Rational::DenominatorInt64() const {
  if (!FitsInt64()) throw Error(ErrorCode::kSize, "denominator exceeds int64");
  return std::stoll(DenominatorString());
}

Rational Rational::operator-() const {
  Rational r;
  r.value_ = -value_;
  return r;
}

Rational& Rational::operator+=(const Rational& other) {
  value_ += other.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& other) {
  value_ -= other.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& other) {
  value_ *= other.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.IsZero()) throw Error(ErrorCode::kContract, "division by zero");
  value_ /= other.value_;
  return *this;
}

std::size_t Rational::Hash() const {
  std::size_t h = std::hash<std::string>{}(NumeratorString());
  return h * 31 + std::hash<std::string>{}(DenominatorString());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.ToString();
}

Rational Abs(const Rational& r) { return r.Sign() < 0 ? -r : r; }
Rational Min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational Max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace randassign
