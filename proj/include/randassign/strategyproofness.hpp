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
#include <optional>
#include <string>
#include <vector>

#include "randassign/core.hpp"
#include "randassign/dominance.hpp"
#include "randassign/mechanisms.hpp"

namespace randassign {

enum class SpNotion {
  /// Violated when a misreport strictly SD-dominates the truthful row.
  kWeakSd,
  /// Violated when the truthful row fails to weakly SD-dominate the
  /// misreport's row.
  kSd,
};

const char* SpNotionName(SpNotion notion);

struct ManipulationWitness {
  Profile profile;
  AgentId agent;
  WeakOrder truthful;
  WeakOrder misreport;
  std::vector<Rational> truthful_row;
  std::vector<Rational> manipulated_row;
  /// SdCompare(truthful, manipulated_row, truthful_row).
  SdComparison comparison = SdComparison::kEqual;
};

struct ManipulationSearch {
  /// Agents to try, ascending; all agents when empty.
  std::vector<AgentId> agents;
  /// Candidate misreports in order; the rule's whole domain when empty.
  std::vector<WeakOrder> misreports;
  std::size_t weak_order_cap = kDefaultWeakOrderCap;
};

/// Exhaustive search in order: agents ascending, misreports in enumeration
/// order. Returns the first violation of `notion`.
std::optional<ManipulationWitness> FindManipulation(
    const Rule& rule, const Profile& profile, SpNotion notion,
    const ManipulationSearch& search = {});
std::optional<ManipulationWitness> FindWeakSdManipulation(
    const Rule& rule, const Profile& profile, const ManipulationSearch& search = {});
std::optional<ManipulationWitness> FindSdManipulation(
    const Rule& rule, const Profile& profile, const ManipulationSearch& search = {});

/// Reruns the rule on both profiles and recompares. Empty when the witness
/// stands.
std::optional<std::string> RecheckWitness(const Rule& rule,
                                          const ManipulationWitness& witness,
                                          SpNotion notion);

/// Whether `c` (manipulated vs truthful) violates `notion`.
bool IsViolation(SdComparison c, SpNotion notion);

struct SweepReport {
  std::size_t profiles = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::optional<ManipulationWitness> first;
};

/// Every profile of size n in the rule's domain, every agent, every
/// alternative report. Each profile's outcome is computed once.
SweepReport SweepManipulations(const Rule& rule, std::size_t n, SpNotion notion,
                               bool stop_at_first = true);

struct ExtensionReport {
  bool extends = true;
  std::size_t profiles_checked = 0;
  std::optional<Profile> discrepancy;
  std::optional<Assignment> rule_outcome;
  std::optional<Assignment> ps_outcome;
};

/// rule == ps on strict profiles: exhaustive for n <= 3, `samples` random
/// strict profiles (seeded) above that.
ExtensionReport CheckExtensionOfPs(const Rule& rule, std::size_t n,
                                   std::size_t samples = 2000,
                                   std::uint64_t seed = 1);

struct SymmetryReport {
  bool anonymous = true;
  bool neutral = true;
  bool equal_treatment = true;
  std::vector<std::string> failures;
};

/// Anonymity over all agent permutations, neutrality over all object
/// permutations, equal treatment over agents with identical preferences.
SymmetryReport CheckSymmetryProperties(const Rule& rule, const Profile& profile,
                                       std::size_t factorial_cap = kDefaultFactorialCap);

}  // namespace randassign
