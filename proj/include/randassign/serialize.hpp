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
#include <string_view>
#include <utility>
#include <vector>

#include "randassign/core.hpp"
#include "randassign/efficiency.hpp"
#include "randassign/exactlp.hpp"
#include "randassign/mechanisms.hpp"
#include "randassign/strategyproofness.hpp"
#include "randassign/theorem.hpp"

namespace randassign {

// {"agents":[{"name":"1","classes":[["a"],["b","c"]]}, ...]}
std::string ProfileToJson(const Profile& profile);
Profile ProfileFromJson(std::string_view text);
/// JSON when the first non-blank character is '{', the text format otherwise.
Profile LoadProfile(std::string_view text);

/// Rows of "num/den", integer or decimal tokens ('#' comments allowed), or
/// JSON: an array of rows, or {"matrix": rows}, entries {"num","den"} given
/// as integers or strings, or plain rational strings. Shape is not checked.
std::vector<std::vector<Rational>> ParseMatrix(std::string_view text);

/// Table with agent and object labels when a profile is given. With
/// `decimals` entries are rounded and the output says so.
std::string FormatAssignment(const Assignment& p, const Profile* labels = nullptr,
                             std::optional<int> decimals = std::nullopt);
std::string AssignmentToJson(const Assignment& p, const Profile* labels = nullptr);

std::string CycleToJson(const TradingCycle& cycle, const Profile& profile);
TradingCycle CycleFromJson(std::string_view text, const Profile& profile);

/// [{"permutation":["b","a","c"],"weight":{"num":"1","den":"2"}}, ...]
std::string DecompositionToJson(
    const std::vector<std::pair<DiscreteAssignment, Rational>>& parts,
    const Profile& profile);

std::string LinearSystemToJson(const lp::LinearSystem& system);
lp::LinearSystem LinearSystemFromJson(std::string_view text);

std::string EatingTraceToJson(const EatingTrace& trace, const Profile& profile);
std::string EpsPhasesToJson(const std::vector<EpsPhase>& phases, const Profile& profile);

std::string FormatWitness(const ManipulationWitness& w);
std::string WitnessToJson(const ManipulationWitness& w);
ManipulationWitness WitnessFromJson(std::string_view text);

std::string TheoremToJson(const TheoremCertificate& cert);

}  // namespace randassign
