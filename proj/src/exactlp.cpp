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

#include "randassign/exactlp.hpp"

#include <sstream>

#include "randassign/error.hpp"
#include "simplex.hpp"

namespace randassign::lp {

const char* RelationSymbol(Relation r) {
  switch (r) {
    case Relation::kEq: return "=";
    case Relation::kLe: return "<=";
    case Relation::kGe: return ">=";
    case Relation::kLt: return "<";
    case Relation::kGt: return ">";
  }
  return "?";
}

LinearExpr& LinearExpr::Add(VarId v, const Rational& coef) {
  if (coef.IsZero()) return *this;
  auto [it, inserted] = terms_.try_emplace(v.index, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second.IsZero()) terms_.erase(it);
  }
  return *this;
}

LinearExpr& LinearExpr::operator+=(const LinearExpr& other) {
  for (const auto& [v, c] : other.terms_) Add(VarId{v}, c);
  return *this;
}

LinearExpr LinearExpr::operator-() const {
  LinearExpr out;
  for (const auto& [v, c] : terms_) out.terms_.emplace(v, -c);
  return out;
}

LinearExpr operator*(const Rational& k, const LinearExpr& e) {
  LinearExpr out;
  for (const auto& [v, c] : e.terms_) out.Add(VarId{v}, k * c);
  return out;
}

Rational LinearExpr::Coefficient(VarId v) const {
  auto it = terms_.find(v.index);
  return it == terms_.end() ? Rational() : it->second;
}

Rational LinearExpr::Evaluate(std::span<const Rational> point) const {
  Rational total;
  for (const auto& [v, c] : terms_) total += c * point[v];
  return total;
}

VarId LinearSystem::AddVariable(std::string name, VarDomain domain) {
  names_.push_back(std::move(name));
  domains_.push_back(domain);
  return VarId{names_.size() - 1};
}

std::size_t LinearSystem::AddConstraint(LinearExpr lhs, Relation relation,
                                        Rational rhs, std::string label) {
  for (const auto& [v, c] : lhs.terms()) {
    if (v >= names_.size()) {
      throw Error(ErrorCode::kContract, "constraint references unknown variable");
    }
  }
  constraints_.push_back(
      {std::move(lhs), relation, std::move(rhs), std::move(label)});
  return constraints_.size() - 1;
}

std::optional<VarId> LinearSystem::FindVariable(const std::string& name) const {
  for (std::size_t v = 0; v < names_.size(); ++v) {
    if (names_[v] == name) return VarId{v};
  }
  return std::nullopt;
}

bool LinearSystem::HasStrict() const {
  for (const auto& c : constraints_) {
    if (IsStrict(c.relation)) return true;
  }
  return false;
}

LinearSystem LinearSystem::WeakClosure() const {
  LinearSystem out = *this;
  for (auto& c : out.constraints_) {
    if (c.relation == Relation::kLt) c.relation = Relation::kLe;
    if (c.relation == Relation::kGt) c.relation = Relation::kGe;
  }
  return out;
}

std::optional<std::size_t> LinearSystem::FirstViolation(
    std::span<const Rational> point) const {
  if (point.size() != names_.size()) {
    throw Error(ErrorCode::kShape, "point dimension mismatch");
  }
  for (std::size_t r = 0; r < constraints_.size(); ++r) {
    const auto& c = constraints_[r];
    const Rational lhs = c.lhs.Evaluate(point);
    bool ok = false;
    switch (c.relation) {
      case Relation::kEq: ok = lhs == c.rhs; break;
      case Relation::kLe: ok = lhs <= c.rhs; break;
      case Relation::kGe: ok = lhs >= c.rhs; break;
      case Relation::kLt: ok = lhs < c.rhs; break;
      case Relation::kGt: ok = lhs > c.rhs; break;
    }
    if (!ok) return r;
  }
  for (std::size_t v = 0; v < names_.size(); ++v) {
    if (domains_[v] == VarDomain::kNonNegative && point[v].Sign() < 0) {
      return constraints_.size() + v;
    }
  }
  return std::nullopt;
}

std::string LinearSystem::FormatExpr(const LinearExpr& e) const {
  if (e.terms().empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [v, c] : e.terms()) {
    Rational mag = Abs(c);
    if (first) {
      if (c.Sign() < 0) out += "-";
    } else {
      out += c.Sign() < 0 ? " - " : " + ";
    }
    if (mag != Rational(1)) out += mag.ToString() + "*";
    out += names_[v];
    first = false;
  }
  return out;
}

std::string LinearSystem::FormatConstraint(std::size_t index) const {
  const auto& c = constraints_.at(index);
  std::string s = FormatExpr(c.lhs) + " " + RelationSymbol(c.relation) + " " +
                  c.rhs.ToString();
  if (!c.label.empty()) s += "  [" + c.label + "]";
  return s;
}

std::string LinearSystem::ToString() const {
  std::ostringstream os;
  os << "variables:";
  for (std::size_t v = 0; v < names_.size(); ++v) {
    os << " " << names_[v]
       << (domains_[v] == VarDomain::kNonNegative ? ">=0" : "(free)");
  }
  os << "\n";
  for (std::size_t r = 0; r < constraints_.size(); ++r) {
    os << "  " << FormatConstraint(r) << "\n";
  }
  return os.str();
}

namespace {

bool CheckSigns(const LinearSystem& system, std::span<const Rational> y,
                std::string* why) {
  const auto& cs = system.constraints();
  if (y.size() != cs.size()) {
    if (why) *why = "multiplier count differs from constraint count";
    return false;
  }
  for (std::size_t r = 0; r < cs.size(); ++r) {
    const Relation rel = cs[r].relation;
    const bool upper = rel == Relation::kLe || rel == Relation::kLt;
    const bool lower = rel == Relation::kGe || rel == Relation::kGt;
    if ((upper && y[r].Sign() < 0) || (lower && y[r].Sign() > 0)) {
      if (why) *why = "multiplier of row " + std::to_string(r) + " has wrong sign";
      return false;
    }
  }
  return true;
}

std::vector<Rational> Combine(const LinearSystem& system,
                              std::span<const Rational> y, Rational* rhs) {
  std::vector<Rational> coef(system.num_variables());
  *rhs = Rational();
  const auto& cs = system.constraints();
  for (std::size_t r = 0; r < cs.size(); ++r) {
    if (y[r].IsZero()) continue;
    for (const auto& [v, c] : cs[r].lhs.terms()) coef[v] += y[r] * c;
    *rhs += y[r] * cs[r].rhs;
  }
  return coef;
}

}  // namespace

bool VerifyInfeasibility(const LinearSystem& system,
                         const InfeasibilityCertificate& cert,
                         std::string* why) {
  if (!CheckSigns(system, cert.multipliers, why)) return false;
  Rational rhs;
  const auto coef = Combine(system, cert.multipliers, &rhs);
  for (std::size_t v = 0; v < coef.size(); ++v) {
    const bool nonneg = system.domain(VarId{v}) == VarDomain::kNonNegative;
    if ((nonneg && coef[v].Sign() < 0) || (!nonneg && !coef[v].IsZero())) {
      if (why) *why = "combined coefficient of " + system.name(VarId{v}) +
                      " is " + coef[v].ToString();
      return false;
    }
  }
  if (rhs.Sign() < 0) return true;
  if (rhs.IsZero()) {
    const auto& cs = system.constraints();
    for (std::size_t r = 0; r < cs.size(); ++r) {
      if (IsStrict(cs[r].relation) && !cert.multipliers[r].IsZero()) return true;
    }
  }
  if (why) *why = "combined constant " + rhs.ToString() + " is not contradictory";
  return false;
}

std::string DescribeInfeasibility(const LinearSystem& system,
                                  const InfeasibilityCertificate& cert) {
  std::ostringstream os;
  const auto& cs = system.constraints();
  bool strict = false;
  bool first = true;
  for (std::size_t r = 0; r < cs.size(); ++r) {
    const Rational& y = cert.multipliers.at(r);
    if (y.IsZero()) continue;
    if (IsStrict(cs[r].relation)) strict = true;
    os << (first ? "" : " + ") << y << " * (" << system.FormatConstraint(r)
       << ")";
    first = false;
  }
  Rational rhs;
  LinearExpr combined;
  const auto coef = Combine(system, cert.multipliers, &rhs);
  for (std::size_t v = 0; v < coef.size(); ++v) combined.Add(VarId{v}, coef[v]);
  os << "  =>  " << system.FormatExpr(combined) << (strict ? " < " : " <= ")
     << rhs << " with nonnegative left side";
  return os.str();
}

bool VerifyUpperBound(const LinearSystem& system, const LinearExpr& objective,
                      std::span<const Rational> dual, const Rational& bound,
                      std::string* why) {
  if (!CheckSigns(system, dual, why)) return false;
  Rational rhs;
  const auto coef = Combine(system, dual, &rhs);
  for (std::size_t v = 0; v < coef.size(); ++v) {
    const Rational target = objective.Coefficient(VarId{v});
    const bool nonneg = system.domain(VarId{v}) == VarDomain::kNonNegative;
    if ((nonneg && coef[v] < target) || (!nonneg && coef[v] != target)) {
      if (why) *why = "dual does not cover objective on " + system.name(VarId{v});
      return false;
    }
  }
  if (rhs > bound) {
    if (why) *why = "dual bound " + rhs.ToString() + " exceeds " + bound.ToString();
    return false;
  }
  return true;
}

namespace {

using internal::DenseRow;

DenseRow ToDense(const Constraint& c, std::size_t num_vars) {
  DenseRow row;
  row.coef.resize(num_vars);
  for (const auto& [v, k] : c.lhs.terms()) row.coef[v] = k;
  row.rhs = c.rhs;
  switch (c.relation) {
    case Relation::kEq: row.relation = Relation::kEq; break;
    case Relation::kLe:
    case Relation::kLt: row.relation = Relation::kLe; break;
    case Relation::kGe:
    case Relation::kGt: row.relation = Relation::kGe; break;
  }
  return row;
}

std::vector<VarDomain> Domains(const LinearSystem& system) {
  std::vector<VarDomain> d;
  for (std::size_t v = 0; v < system.num_variables(); ++v) {
    d.push_back(system.domain(VarId{v}));
  }
  return d;
}

}  // namespace

FeasibilityResult LpFeasible(const LinearSystem& system) {
  const std::size_t nv = system.num_variables();
  const auto& cs = system.constraints();
  FeasibilityResult result;
  std::vector<VarDomain> domains = Domains(system);
  std::vector<DenseRow> rows;
  for (const auto& c : cs) rows.push_back(ToDense(c, nv));

  if (!system.HasStrict()) {
    auto out = internal::SolveDense(rows, domains, {}, true);
    if (out.status == LpStatus::kInfeasible) {
      result.certificate = InfeasibilityCertificate{out.row_multipliers};
      return result;
    }
    result.feasible = true;
    result.witness = std::move(out.x);
    return result;
  }

  // Shared slack s: a.x + s <= b for each a.x < b (and a.x - s >= b for >),
  // s <= 1, maximise s. Strictly feasible iff the optimum is positive.
  domains.push_back(VarDomain::kFree);
  for (std::size_t r = 0; r < cs.size(); ++r) {
    rows[r].coef.emplace_back();
    if (cs[r].relation == Relation::kLt) rows[r].coef.back() = 1;
    if (cs[r].relation == Relation::kGt) rows[r].coef.back() = -1;
  }
  DenseRow cap;
  cap.coef.resize(nv + 1);
  cap.coef[nv] = 1;
  cap.relation = Relation::kLe;
  cap.rhs = 1;
  rows.push_back(std::move(cap));
  std::vector<Rational> objective(nv + 1);
  objective[nv] = 1;

  auto out = internal::SolveDense(rows, domains, objective, false);
  if (out.status == LpStatus::kUnbounded) {
    throw Error(ErrorCode::kContract, "bounded slack problem reported unbounded");
  }
  if (out.status == LpStatus::kOptimal && out.value.Sign() > 0) {
    result.feasible = true;
    out.x.pop_back();
    result.witness = std::move(out.x);
    return result;
  }
  out.row_multipliers.pop_back();
  result.certificate = InfeasibilityCertificate{std::move(out.row_multipliers)};
  return result;
}

OptimizationResult LpMaximize(const LinearSystem& system,
                              const LinearExpr& objective) {
  if (system.HasStrict()) {
    throw Error(ErrorCode::kDomain,
                "optimisation needs a weak system; use WeakClosure()");
  }
  const std::size_t nv = system.num_variables();
  std::vector<DenseRow> rows;
  for (const auto& c : system.constraints()) rows.push_back(ToDense(c, nv));
  std::vector<Rational> cost(nv);
  for (const auto& [v, k] : objective.terms()) cost.at(v) = k;
  auto out = internal::SolveDense(rows, Domains(system), cost, false);
  OptimizationResult result;
  result.status = out.status;
  switch (out.status) {
    case LpStatus::kInfeasible:
      result.infeasibility = InfeasibilityCertificate{out.row_multipliers};
      break;
    case LpStatus::kUnbounded:
      result.witness = std::move(out.x);
      break;
    case LpStatus::kOptimal:
      result.optimum = out.value;
      result.witness = std::move(out.x);
      result.dual = std::move(out.row_multipliers);
      break;
  }
  return result;
}

OptimizationResult LpMinimize(const LinearSystem& system,
                              const LinearExpr& objective) {
  OptimizationResult r = LpMaximize(system, -objective);
  if (r.status == LpStatus::kOptimal) r.optimum = -r.optimum;
  return r;
}

}  // namespace randassign::lp
