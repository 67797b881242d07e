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

// Dense rational two-phase simplex. Internal to the exactlp module.

#include <vector>

#include "randassign/exactlp.hpp"

namespace randassign::lp::internal {

struct DenseRow {
  std::vector<Rational> coef;  // one per variable
  Relation relation = Relation::kLe;  // kLe, kGe or kEq
  Rational rhs;
};

struct SimplexOutcome {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> x;
  Rational value;
  // kOptimal: dual multipliers bounding the objective.
  // kInfeasible: Farkas multipliers. Both in the orientation of the rows.
  std::vector<Rational> row_multipliers;
};

/// maximize objective.x subject to rows, with per-variable domains. When
/// `feasibility_only` the objective is ignored and any feasible point is
/// returned.
SimplexOutcome SolveDense(const std::vector<DenseRow>& rows,
                          const std::vector<VarDomain>& domains,
                          const std::vector<Rational>& objective,
                          bool feasibility_only);

}  // namespace randassign::lp::internal
