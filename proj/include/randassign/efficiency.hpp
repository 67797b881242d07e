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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "randassign/core.hpp"
#include "randassign/exactlp.hpp"

namespace randassign {

/// `agent` holds `object` with positive probability and points at the object
/// of the next step; `strict` records that it strictly prefers that object.
struct CycleStep {
  ObjectId object;
  AgentId agent;
  bool strict = false;
  friend bool operator==(const CycleStep&, const CycleStep&) = default;
};

/// o0, i0, o1, i1, ..., o(k-1), i(k-1), back to o0.
struct TradingCycle {
  std::vector<CycleStep> steps;
  std::size_t size() const { return steps.size(); }
  friend bool operator==(const TradingCycle&, const TradingCycle&) = default;
};

/// Checks the preference side of the definition: k >= 2, every agent weakly
/// prefers the next object, strict flags match, and some step is strict.
std::optional<std::string> CheckCyclePreferences(const TradingCycle& cycle,
                                                 const Profile& profile);
/// Full definition, additionally requiring p(i_j)(o_j) > 0.
std::optional<std::string> CheckTradingCycle(const TradingCycle& cycle,
                                             const Assignment& p,
                                             const Profile& profile);

/// (agent, object) entries that must be positive for the cycle to exist.
std::vector<std::pair<AgentId, ObjectId>> CycleHoldings(const TradingCycle& cycle);

/// "b -> (1) -> a -> (3) -> b [strict at 1]"
std::string FormatTradingCycle(const TradingCycle& cycle, const Profile& profile);

struct TradeEdge {
  ObjectId from;
  ObjectId to;
  AgentId agent;  // holds `from`, weakly prefers `to`
  bool strict = false;
};

/// Object-level graph: o -> o' when some agent holds o and weakly prefers o'.
/// Each edge keeps one witness, strict ones preferred, lowest index first.
class TradeGraph {
 public:
  static TradeGraph Build(const Assignment& p, const Profile& profile);

  std::size_t num_objects() const { return n_; }
  const std::optional<TradeEdge>& edge(ObjectId from, ObjectId to) const {
    return edges_[from.index * n_ + to.index];
  }
  std::vector<TradeEdge> Edges() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::optional<TradeEdge>> edges_;
};

/// Some trading cycle if one exists: for each strict edge o -> o' (in index
/// order) look for a path o' ~> o.
std::optional<TradingCycle> DetectTradingCycle(const Assignment& p,
                                               const Profile& profile);

/// Shrinks a trading cycle until all its agents and objects are distinct, so
/// its size is at most n. First cuts the loop between repeated objects
/// (keeping the strict step), then merges repeated agents. Throws kContract
/// if `cycle` is not a trading cycle of `p`.
TradingCycle ReduceTradingCycle(const TradingCycle& cycle, const Assignment& p,
                                const Profile& profile,
                                std::vector<std::string>* log = nullptr);

bool IsSdEfficient(const Assignment& p, const Profile& profile);

/// All matchings without a trading cycle, in lexicographic permutation order.
std::vector<DiscreteAssignment> EnumerateParetoOptimalDiscrete(
    const Profile& profile, std::size_t factorial_cap = kDefaultFactorialCap);

struct ExPostResult {
  bool efficient = false;
  /// Positive weights over Pareto optimal matchings reconstructing p.
  std::vector<std::pair<DiscreteAssignment, Rational>> decomposition;
  /// Present when infeasible; refers to `system`.
  std::optional<lp::InfeasibilityCertificate> certificate;
  lp::LinearSystem system;
};

ExPostResult IsExPostEfficient(const Assignment& p, const Profile& profile,
                               std::size_t factorial_cap = kDefaultFactorialCap);

struct EfficiencyComparison {
  bool sd_efficient = false;
  bool ex_post_efficient = false;
  /// n = 3: the two verdicts coincide. Other n: sd => ex post holds.
  bool consistent = false;
  std::optional<TradingCycle> cycle;
  ExPostResult ex_post;
};

/// Both checkers on a 3-agent instance. Throws kDomain if n != 3.
EfficiencyComparison CheckExPostSdEquivalence(const Profile& profile,
                                              const Assignment& p);
/// Any n: only SD-efficiency => ex post efficiency is checked.
EfficiencyComparison CheckSdImpliesExPost(const Profile& profile,
                                          const Assignment& p);

}  // namespace randassign
