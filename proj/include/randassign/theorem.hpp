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
#include <vector>

#include "randassign/core.hpp"
#include "randassign/efficiency.hpp"
#include "randassign/exactlp.hpp"

namespace randassign {

/// One probability entry C(agent)(object) of the unknown assignment.
struct Entry {
  AgentId agent;
  ObjectId object;
  friend auto operator<=>(const Entry&, const Entry&) = default;
};

/// Node of a case split refuting "target > 0" for SD-efficient assignments.
/// The region is DS plus positive > 0 plus zero = 0.
struct RefutationNode {
  enum class Kind {
    kInfeasible,  // region empty
    kCycle,       // every point of the region has `cycle`
    kSplit,       // children cover the region
  };
  std::vector<Entry> positive;
  std::vector<Entry> zero;
  lp::LinearSystem system;
  Kind kind = Kind::kInfeasible;
  std::optional<lp::InfeasibilityCertificate> certificate;
  std::vector<Rational> witness;
  std::optional<TradingCycle> cycle;
  bool supplied = false;
  /// kSplit: children[0] has all of `split` positive, children[k + 1] has
  /// split[0..k) positive and split[k] zero.
  std::vector<Entry> split;
  std::vector<std::size_t> children;
};

struct Refutation {
  Entry target;
  std::vector<RefutationNode> nodes;  // nodes[0] is the root
};

/// Lower or upper bound on a linear form over `system`, with the dual that
/// proves it, or an infeasibility certificate.
struct BoundProof {
  std::string label;
  lp::LinearSystem system;
  lp::LinearExpr objective;
  bool minimize = true;
  bool feasible = false;
  Rational value;
  std::vector<Rational> dual;
  std::optional<lp::InfeasibilityCertificate> infeasibility;
};

struct CaseRefutation {
  std::string label;
  lp::LinearSystem system;
  lp::InfeasibilityCertificate certificate;
};

struct TheoremCertificate {
  std::size_t n = 3;
  Profile profile;         // agent 3: a > b > c
  Profile profile_prime;   // agent 3: b > c > a
  Profile profile_double;  // agent 3: a ~ b > c
  Assignment ps_profile;
  Assignment ps_prime;
  Assignment expected_ps_profile;
  Assignment expected_ps_prime;

  // step 2: SD-efficiency forces C3o = 0 for these entries
  std::vector<Refutation> zero_facts;
  std::vector<std::string> reduction_log;

  // step 3
  std::vector<BoundProof> cut_cases;  // one per disjunct of non-domination
  Rational cut_bound;                 // C3a + C3b >= cut_bound
  BoundProof b_bound;                 // C3b >= b_bound.value
  BoundProof sum_max;                 // C3b + C3c <= 1
  BoundProof sum_min;                 // C3b + C3c >= 1

  // step 4
  std::vector<CaseRefutation> cases;

  bool verified = false;
  std::vector<std::string> failures;
};

/// Runs the four steps on the three-agent profiles padded to n agents
/// (3 <= n <= 5). Never throws for a failed step: failures are recorded and
/// `verified` stays false.
TheoremCertificate VerifyImpossibilityTheorem(std::size_t n = 3);

/// Rebuilds every system from the profiles and rechecks every certificate
/// and cycle. Empty when everything holds.
std::vector<std::string> RevalidateCertificate(const TheoremCertificate& cert);

/// Human-readable proof transcript; the last line reports the verdict.
std::string FormatTranscript(const TheoremCertificate& cert);

}  // namespace randassign
