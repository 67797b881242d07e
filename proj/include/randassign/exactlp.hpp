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

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "randassign/rational.hpp"

namespace randassign::lp {

struct VarId {
  std::size_t index = 0;
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

enum class VarDomain { kNonNegative, kFree };

enum class Relation { kEq, kLe, kGe, kLt, kGt };

const char* RelationSymbol(Relation r);
inline bool IsStrict(Relation r) {
  return r == Relation::kLt || r == Relation::kGt;
}

/// Sparse linear form sum(coef * var). Zero coefficients are dropped.
class LinearExpr {
 public:
  LinearExpr() = default;
  LinearExpr(VarId v) { Add(v, 1); }  // NOLINT(google-explicit-constructor)

  LinearExpr& Add(VarId v, const Rational& coef);
  LinearExpr& operator+=(const LinearExpr& other);
  LinearExpr operator-() const;
  friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) {
    return a += b;
  }
  friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) {
    return a += -b;
  }
  friend LinearExpr operator*(const Rational& k, const LinearExpr& e);

  const std::map<std::size_t, Rational>& terms() const { return terms_; }
  Rational Coefficient(VarId v) const;
  Rational Evaluate(std::span<const Rational> point) const;

 private:
  std::map<std::size_t, Rational> terms_;
};

struct Constraint {
  LinearExpr lhs;
  Relation relation = Relation::kLe;
  Rational rhs;
  std::string label;
};

class LinearSystem {
 public:
  VarId AddVariable(std::string name,
                    VarDomain domain = VarDomain::kNonNegative);
  std::size_t AddConstraint(LinearExpr lhs, Relation relation, Rational rhs,
                            std::string label = {});

  std::size_t num_variables() const { return names_.size(); }
  const std::string& name(VarId v) const { return names_.at(v.index); }
  VarDomain domain(VarId v) const { return domains_.at(v.index); }
  std::optional<VarId> FindVariable(const std::string& name) const;
  const std::vector<Constraint>& constraints() const { return constraints_; }
  bool HasStrict() const;

  /// Same system with < and > replaced by <= and >=.
  LinearSystem WeakClosure() const;

  /// Index of the first violated constraint or domain bound; the domain
  /// bounds are reported as constraints().size() + variable index.
  std::optional<std::size_t> FirstViolation(
      std::span<const Rational> point) const;
  bool Satisfies(std::span<const Rational> point) const {
    return !FirstViolation(point).has_value();
  }

  std::string FormatExpr(const LinearExpr& e) const;
  std::string FormatConstraint(std::size_t index) const;
  std::string ToString() const;

 private:
  std::vector<std::string> names_;
  std::vector<VarDomain> domains_;
  std::vector<Constraint> constraints_;
};

/// Multipliers, one per constraint, whose combination yields 0 <= c < 0 or
/// 0 < c <= 0. Sign rules: <=,< rows take y >= 0; >=,> rows y <= 0; = free.
struct InfeasibilityCertificate {
  std::vector<Rational> multipliers;
};

/// Re-derives the contradiction with exact arithmetic. On failure `why`
/// names the broken condition.
bool VerifyInfeasibility(const LinearSystem& system,
                         const InfeasibilityCertificate& cert,
                         std::string* why = nullptr);
/// "sum of k*(row) gives: <combined> <= <constant>" for transcripts.
std::string DescribeInfeasibility(const LinearSystem& system,
                                  const InfeasibilityCertificate& cert);

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> witness;
  std::optional<InfeasibilityCertificate> certificate;
};

enum class LpStatus { kOptimal, kUnbounded, kInfeasible };

struct OptimizationResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational optimum;
  std::vector<Rational> witness;
  /// For kOptimal: multipliers proving objective <= optimum over the system
  /// (same sign rules as InfeasibilityCertificate).
  std::vector<Rational> dual;
  std::optional<InfeasibilityCertificate> infeasibility;
};

/// Checks that the dual multipliers prove `objective <= bound` for every
/// point of `system`.
bool VerifyUpperBound(const LinearSystem& system, const LinearExpr& objective,
                      std::span<const Rational> dual, const Rational& bound,
                      std::string* why = nullptr);

/// Exact decision by rational two-phase simplex with Bland's rule. Strict
/// constraints are decided by maximising a shared slack variable.
FeasibilityResult LpFeasible(const LinearSystem& system);

/// Weak systems only; throws kDomain if a strict constraint is present.
OptimizationResult LpMaximize(const LinearSystem& system,
                              const LinearExpr& objective);
/// Minimum of `objective`; the dual certifies objective >= optimum via
/// VerifyUpperBound on the negated objective.
OptimizationResult LpMinimize(const LinearSystem& system,
                              const LinearExpr& objective);

inline constexpr std::size_t kFourierMotzkinVariableCap = 12;

/// Independent backend: Fourier-Motzkin elimination with equality
/// substitution. Handles strict constraints natively. Produces a witness by
/// back-substitution and a certificate by tracking row provenance.
FeasibilityResult FourierMotzkinFeasible(
    const LinearSystem& system,
    std::size_t variable_cap = kFourierMotzkinVariableCap);

}  // namespace randassign::lp
