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

#include "simplex.hpp"

#include <cassert>

#include "randassign/error.hpp"

namespace randassign::lp::internal {
namespace {

class Tableau {
 public:
  Tableau(const std::vector<DenseRow>& rows,
          const std::vector<VarDomain>& domains)
      : m_(rows.size()), domains_(domains) {
    // Structural columns: one per nonnegative variable, two per free one.
    for (std::size_t v = 0; v < domains.size(); ++v) {
      plus_col_.push_back(num_struct_++);
      minus_col_.push_back(domains[v] == VarDomain::kFree ? num_struct_++
                                                          : kNone);
    }
    std::size_t num_slack = 0;
    for (const auto& r : rows) {
      if (r.relation != Relation::kEq) ++num_slack;
    }
    slack_begin_ = num_struct_;
    art_begin_ = slack_begin_ + num_slack;
    cols_ = art_begin_ + m_;
    t_.assign(m_, std::vector<Rational>(cols_));
    rhs_.resize(m_);
    sign_.resize(m_);
    basis_.resize(m_);
    std::size_t slack = slack_begin_;
    for (std::size_t r = 0; r < m_; ++r) {
      const DenseRow& row = rows[r];
      const int s = row.rhs.Sign() < 0 ? -1 : 1;
      sign_[r] = s;
      for (std::size_t v = 0; v < domains.size(); ++v) {
        if (row.coef[v].IsZero()) continue;
        Rational c = s < 0 ? -row.coef[v] : row.coef[v];
        if (minus_col_[v] != kNone) t_[r][minus_col_[v]] = -c;
        t_[r][plus_col_[v]] = std::move(c);
      }
      if (row.relation == Relation::kLe) t_[r][slack++] = Rational(s);
      if (row.relation == Relation::kGe) t_[r][slack++] = Rational(-s);
      t_[r][art_begin_ + r] = 1;
      rhs_[r] = s < 0 ? -row.rhs : row.rhs;
      basis_[r] = art_begin_ + r;
    }
  }

  // Runs Bland's-rule simplex for `cost` (one entry per column). Artificial
  // columns never enter. Returns false if unbounded.
  bool Optimize(const std::vector<Rational>& cost) {
    while (true) {
      std::size_t entering = kNone;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (IsBasic(j)) continue;
        Rational reduced = cost[j];
        for (std::size_t k = 0; k < m_; ++k) {
          if (!cost[basis_[k]].IsZero() && !t_[k][j].IsZero()) {
            reduced -= cost[basis_[k]] * t_[k][j];
          }
        }
        if (reduced.Sign() > 0) {
          entering = j;
          break;
        }
      }
      if (entering == kNone) return true;
      std::size_t leaving = kNone;
      Rational best_ratio;
      for (std::size_t k = 0; k < m_; ++k) {
        if (t_[k][entering].Sign() <= 0) continue;
        Rational ratio = rhs_[k] / t_[k][entering];
        if (leaving == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis_[k] < basis_[leaving])) {
          leaving = k;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == kNone) return false;
      Pivot(leaving, entering);
    }
  }

  // y' = c_B B^-1, read from the artificial columns.
  std::vector<Rational> Duals(const std::vector<Rational>& cost) const {
    std::vector<Rational> y(m_);
    for (std::size_t k = 0; k < m_; ++k) {
      const Rational& cb = cost[basis_[k]];
      if (cb.IsZero()) continue;
      for (std::size_t r = 0; r < m_; ++r) {
        if (!t_[k][art_begin_ + r].IsZero()) y[r] += cb * t_[k][art_begin_ + r];
      }
    }
    return y;
  }

  // Multipliers in the orientation of the original rows.
  std::vector<Rational> RowMultipliers(const std::vector<Rational>& cost) const {
    std::vector<Rational> y = Duals(cost);
    for (std::size_t r = 0; r < m_; ++r) {
      if (sign_[r] < 0) y[r] = -y[r];
    }
    return y;
  }

  Rational Value(const std::vector<Rational>& cost) const {
    Rational v;
    for (std::size_t k = 0; k < m_; ++k) v += cost[basis_[k]] * rhs_[k];
    return v;
  }

  // After a successful phase 1, pivot zero-level artificials out of the
  // basis wherever a non-artificial column allows it.
  void DriveOutArtificials() {
    for (std::size_t k = 0; k < m_; ++k) {
      if (basis_[k] < art_begin_) continue;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (!IsBasic(j) && !t_[k][j].IsZero()) {
          Pivot(k, j);
          break;
        }
      }
    }
  }

  std::vector<Rational> Solution() const {
    std::vector<Rational> col(cols_);
    for (std::size_t k = 0; k < m_; ++k) col[basis_[k]] = rhs_[k];
    std::vector<Rational> x(domains_.size());
    for (std::size_t v = 0; v < domains_.size(); ++v) {
      x[v] = col[plus_col_[v]];
      if (minus_col_[v] != kNone) x[v] -= col[minus_col_[v]];
    }
    return x;
  }

  std::size_t columns() const { return cols_; }
  std::size_t artificial_begin() const { return art_begin_; }
  std::size_t plus_col(std::size_t v) const { return plus_col_[v]; }
  std::size_t minus_col(std::size_t v) const { return minus_col_[v]; }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

 private:
  bool IsBasic(std::size_t j) const {
    for (std::size_t b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  void Pivot(std::size_t row, std::size_t col) {
    const Rational inv = Rational(1) / t_[row][col];
    for (auto& v : t_[row]) {
      if (!v.IsZero()) v *= inv;
    }
    rhs_[row] *= inv;
    for (std::size_t k = 0; k < m_; ++k) {
      if (k == row || t_[k][col].IsZero()) continue;
      const Rational factor = t_[k][col];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!t_[row][j].IsZero()) t_[k][j] -= factor * t_[row][j];
      }
      rhs_[k] -= factor * rhs_[row];
    }
    basis_[row] = col;
  }

  std::size_t m_;
  std::vector<VarDomain> domains_;
  std::size_t num_struct_ = 0;
  std::vector<std::size_t> plus_col_, minus_col_;
  std::size_t slack_begin_ = 0, art_begin_ = 0, cols_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> rhs_;
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
};

}  // namespace

SimplexOutcome SolveDense(const std::vector<DenseRow>& rows,
                          const std::vector<VarDomain>& domains,
                          const std::vector<Rational>& objective,
                          bool feasibility_only) {
  for (const auto& r : rows) {
    if (r.coef.size() != domains.size() || IsStrict(r.relation)) {
      throw Error(ErrorCode::kContract, "malformed dense simplex row");
    }
  }
  Tableau tab(rows, domains);
  SimplexOutcome out;

  std::vector<Rational> phase1(tab.columns());
  for (std::size_t j = tab.artificial_begin(); j < tab.columns(); ++j) {
    phase1[j] = -1;
  }
  tab.Optimize(phase1);
  if (tab.Value(phase1).Sign() < 0) {
    out.status = LpStatus::kInfeasible;
    out.row_multipliers = tab.RowMultipliers(phase1);
    return out;
  }
  tab.DriveOutArtificials();

  std::vector<Rational> cost(tab.columns());
  if (!feasibility_only) {
    for (std::size_t v = 0; v < domains.size(); ++v) {
      cost[tab.plus_col(v)] = objective.at(v);
      if (tab.minus_col(v) != Tableau::kNone) {
        cost[tab.minus_col(v)] = -objective.at(v);
      }
    }
  }
  if (!tab.Optimize(cost)) {
    out.status = LpStatus::kUnbounded;
    out.x = tab.Solution();
    return out;
  }
  out.status = LpStatus::kOptimal;
  out.x = tab.Solution();
  out.value = tab.Value(cost);
  out.row_multipliers = tab.RowMultipliers(cost);
  return out;
}

}  // namespace randassign::lp::internal
