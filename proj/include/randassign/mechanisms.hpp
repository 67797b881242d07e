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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "randassign/core.hpp"

namespace randassign {

/// One interval of simultaneous eating during which no object runs out.
struct EatingSegment {
  Rational start;
  Rational end;
  std::vector<ObjectId> eating;  // per agent
  std::vector<Rational> rate;    // per object: number of agents eating it
};

struct EatingTrace {
  std::vector<EatingSegment> segments;
};

struct PsResult {
  Assignment assignment;
  EatingTrace trace;
};

/// Probabilistic serial for strict profiles. Throws kDomain on ties.
PsResult PsWithTrace(const Profile& profile);
Assignment Ps(const Profile& profile);

/// How a bottleneck's transportation plan is chosen when it is not unique.
enum class TiePolicy {
  /// Lexicographically minimal plan over (agent, object) pairs.
  kLexicographic,
  /// The leximin (most even) plan; invariant under relabelling.
  kSymmetric,
};

/// One bottleneck of extended eating. The agents in `agents` exhaust
/// `objects` at time `end` and have their shares fixed there.
struct EpsPhase {
  Rational start;
  Rational end;
  std::vector<std::vector<ObjectId>> demand;  // per agent, at `start`
  std::vector<AgentId> agents;
  std::vector<ObjectId> objects;
};

struct EpsResult {
  Assignment assignment;
  std::vector<EpsPhase> phases;
};

/// Extended eating for weak preferences. Each phase lets every agent eat from
/// its top available class at unit rate until a set of agents exhausts the
/// union of its demand sets; the largest such duration is
///   min over agent sets S of (capacity(N(S)) - pending(S)) / |S|.
/// Equals Ps on strict profiles.
EpsResult EpsWithTrace(const Profile& profile,
                       TiePolicy policy = TiePolicy::kLexicographic);
Assignment Eps(const Profile& profile,
               TiePolicy policy = TiePolicy::kLexicographic);

/// Agents pick in `order`. Throws kDomain for weak profiles.
DiscreteAssignment SerialDictatorship(const Profile& profile,
                                      std::span<const AgentId> order);
/// Weak profiles allowed: ties inside the best available class go to the
/// lowest object index.
DiscreteAssignment SerialDictatorshipLexTieBreak(const Profile& profile,
                                                 std::span<const AgentId> order);

/// Exact average of serial dictatorship over all n! orders.
Assignment Rsd(const Profile& profile,
               std::size_t factorial_cap = kDefaultFactorialCap);

enum class PreferenceDomain { kStrict, kWeak };

/// A named rule with the preference domain it is defined on.
struct Rule {
  std::string name;
  PreferenceDomain domain = PreferenceDomain::kWeak;
  std::function<Assignment(const Profile&)> apply;

  Assignment operator()(const Profile& p) const { return apply(p); }
};

Rule PsRule();
Rule EpsRule(TiePolicy policy = TiePolicy::kLexicographic);
Rule RsdRule();
/// "ps", "eps", "eps-symmetric" or "rsd".
std::optional<Rule> RuleByName(std::string_view name);

}  // namespace randassign
