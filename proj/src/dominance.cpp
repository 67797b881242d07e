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

#include "randassign/dominance.hpp"

#include <random>

#include "randassign/error.hpp"

namespace randassign {

const char* SdComparisonName(SdComparison c) {
  switch (c) {
    case SdComparison::kEqual: return "equal";
    case SdComparison::kStrictlyDominates: return "strictly-dominates";
    case SdComparison::kStrictlyDominated: return "strictly-dominated";
    case SdComparison::kIncomparable: return "incomparable";
  }
  return "unknown";
}

SdComparison Mirror(SdComparison c) {
  switch (c) {
    case SdComparison::kStrictlyDominates: return SdComparison::kStrictlyDominated;
    case SdComparison::kStrictlyDominated: return SdComparison::kStrictlyDominates;
    default: return c;
  }
}

std::vector<Rational> CutPointCumulatives(const WeakOrder& pref,
                                          std::span<const Rational> row) {
  if (row.size() != pref.num_objects()) {
    throw Error(ErrorCode::kShape, "allocation row has " +
                                       std::to_string(row.size()) +
                                       " entries for " +
                                       std::to_string(pref.num_objects()) +
                                       " objects");
  }
  std::vector<Rational> out;
  out.reserve(pref.num_classes());
  Rational running;
  for (const auto& cls : pref.classes()) {
    for (ObjectId o : cls) running += row[o.index];
    out.push_back(running);
  }
  return out;
}

SdComparison SdCompare(const WeakOrder& pref, std::span<const Rational> p,
                       std::span<const Rational> q) {
  const auto cp = CutPointCumulatives(pref, p);
  const auto cq = CutPointCumulatives(pref, q);
  if (cp.back() != cq.back()) {
    throw Error(ErrorCode::kContract,
                "SD comparison of rows with different total mass (" +
                    cp.back().ToString() + " vs " + cq.back().ToString() + ")");
  }
  bool some_greater = false, some_less = false;
  for (std::size_t k = 0; k < cp.size(); ++k) {
    if (cp[k] > cq[k]) some_greater = true;
    if (cp[k] < cq[k]) some_less = true;
  }
  if (some_greater && some_less) return SdComparison::kIncomparable;
  if (some_greater) return SdComparison::kStrictlyDominates;
  if (some_less) return SdComparison::kStrictlyDominated;
  return SdComparison::kEqual;
}

UtilityVector UtilityFromGaps(const WeakOrder& pref,
                              std::span<const Rational> gaps) {
  if (gaps.size() + 1 != pref.num_classes()) {
    throw Error(ErrorCode::kShape, "need one gap per adjacent class pair");
  }
  UtilityVector u(pref.num_objects());
  Rational level;
  for (std::size_t c = pref.num_classes(); c-- > 0;) {
    if (c + 1 < pref.num_classes()) {
      if (gaps[c].Sign() <= 0) {
        throw Error(ErrorCode::kContract, "utility gaps must be positive");
      }
      level += gaps[c];
    }
    for (ObjectId o : pref.classes()[c]) u[o.index] = level;
  }
  return u;
}

UtilityVector SampleConsistentUtility(const WeakOrder& pref,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> num(1, 1000);
  std::uniform_int_distribution<std::int64_t> den(1, 1000);
  std::vector<Rational> gaps;
  for (std::size_t c = 0; c + 1 < pref.num_classes(); ++c) {
    gaps.emplace_back(num(rng), den(rng));
  }
  UtilityVector u = UtilityFromGaps(pref, gaps);
  const Rational base(num(rng) - 500, den(rng));
  for (Rational& v : u) v += base;
  return u;
}

bool IsConsistentUtility(const WeakOrder& pref, std::span<const Rational> u) {
  if (u.size() != pref.num_objects()) return false;
  for (std::size_t a = 0; a < u.size(); ++a) {
    for (std::size_t b = 0; b < u.size(); ++b) {
      const ObjectId oa{a}, ob{b};
      if (pref.StrictlyPrefers(oa, ob) && !(u[a] > u[b])) return false;
      if (pref.Indifferent(oa, ob) && u[a] != u[b]) return false;
    }
  }
  return true;
}

Rational ExpectedUtility(std::span<const Rational> u,
                         std::span<const Rational> row) {
  if (u.size() != row.size()) {
    throw Error(ErrorCode::kShape, "utility/allocation length mismatch");
  }
  Rational total;
  for (std::size_t j = 0; j < u.size(); ++j) total += u[j] * row[j];
  return total;
}

}  // namespace randassign
