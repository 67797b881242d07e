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

#include <cstdint>
#include <span>
#include <vector>

#include "randassign/core.hpp"

namespace randassign {

enum class SdComparison {
  kEqual,
  kStrictlyDominates,
  kStrictlyDominated,
  kIncomparable,
};

const char* SdComparisonName(SdComparison c);
SdComparison Mirror(SdComparison c);

/// Cumulative mass of `row` on each indifference-class cut point of `pref`,
/// best class first. The last entry is the row total.
std::vector<Rational> CutPointCumulatives(const WeakOrder& pref,
                                          std::span<const Rational> row);

/// Stochastic-dominance comparison of p against q under `pref`. Evaluated at
/// class cut points only. Throws kShape on length mismatch and kContract if
/// the two rows carry different total mass.
SdComparison SdCompare(const WeakOrder& pref, std::span<const Rational> p,
                       std::span<const Rational> q);

/// True iff p weakly SD-dominates q (Equal or StrictlyDominates).
inline bool SdWeaklyDominates(SdComparison c) {
  return c == SdComparison::kEqual || c == SdComparison::kStrictlyDominates;
}

using UtilityVector = std::vector<Rational>;

/// Random rational utility consistent with `pref`: equal within a class,
/// strictly decreasing across classes. Deterministic in `seed`.
UtilityVector SampleConsistentUtility(const WeakOrder& pref, std::uint64_t seed);

/// Utility built from explicit positive gaps between consecutive classes
/// (gaps.size() == num_classes - 1); the worst class gets utility 0.
UtilityVector UtilityFromGaps(const WeakOrder& pref,
                              std::span<const Rational> gaps);

bool IsConsistentUtility(const WeakOrder& pref, std::span<const Rational> u);

Rational ExpectedUtility(std::span<const Rational> u,
                         std::span<const Rational> row);

}  // namespace randassign
