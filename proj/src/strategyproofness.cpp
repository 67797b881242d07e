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

#include "randassign/strategyproofness.hpp"

#include <random>
#include <sstream>

#include "randassign/error.hpp"

namespace randassign {
namespace {

std::vector<WeakOrder> DomainOrders(const Rule& rule, std::size_t n,
                                    std::size_t cap) {
  if (rule.domain == PreferenceDomain::kStrict) return EnumerateStrictOrders(n);
  return EnumerateWeakOrders(n, cap);
}

std::vector<Rational> RowOf(const Assignment& p, AgentId i) {
  auto r = p.row(i);
  return {r.begin(), r.end()};
}

std::string FormatRow(std::span<const Rational> row) {
  std::string s;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (j) s += ' ';
    s += row[j].ToString();
  }
  return s;
}

}  // namespace

const char* SpNotionName(SpNotion notion) {
  return notion == SpNotion::kWeakSd ? "weak-sd" : "sd";
}

bool IsViolation(SdComparison c, SpNotion notion) {
  if (notion == SpNotion::kWeakSd) return c == SdComparison::kStrictlyDominates;
  // truthful must weakly dominate the misreport outcome
  return c == SdComparison::kStrictlyDominates ||
         c == SdComparison::kIncomparable;
}

std::optional<ManipulationWitness> FindManipulation(
    const Rule& rule, const Profile& profile, SpNotion notion,
    const ManipulationSearch& search) {
  const std::size_t n = profile.size();
  if (rule.domain == PreferenceDomain::kStrict && !profile.IsStrict())
    throw Error(ErrorCode::kDomain,
                "rule '" + rule.name + "' needs strict preferences");
  std::vector<AgentId> agents = search.agents;
  if (agents.empty())
    for (std::size_t i = 0; i < n; ++i) agents.push_back(AgentId{i});
  std::vector<WeakOrder> candidates = search.misreports;
  if (candidates.empty()) candidates = DomainOrders(rule, n, search.weak_order_cap);

  const Assignment truthful = rule(profile);
  for (AgentId i : agents) {
    if (i.index >= n) throw Error(ErrorCode::kDomain, "agent index out of range");
    const WeakOrder& pref = profile.pref(i);
    for (const WeakOrder& lie : candidates) {
      if (lie == pref) continue;
      if (lie.num_objects() != n)
        throw Error(ErrorCode::kShape, "misreport has the wrong number of objects");
      Assignment out = rule(profile.WithPreference(i, lie));
      SdComparison c = SdCompare(pref, out.row(i), truthful.row(i));
      if (IsViolation(c, notion))
        return ManipulationWitness{profile, i, pref, lie, RowOf(truthful, i),
                                   RowOf(out, i), c};
    }
  }
  return std::nullopt;
}

std::optional<ManipulationWitness> FindWeakSdManipulation(
    const Rule& rule, const Profile& profile, const ManipulationSearch& search) {
  return FindManipulation(rule, profile, SpNotion::kWeakSd, search);
}

std::optional<ManipulationWitness> FindSdManipulation(
    const Rule& rule, const Profile& profile, const ManipulationSearch& search) {
  return FindManipulation(rule, profile, SpNotion::kSd, search);
}

std::optional<std::string> RecheckWitness(const Rule& rule,
                                          const ManipulationWitness& w,
                                          SpNotion notion) {
  if (!(w.profile.pref(w.agent) == w.truthful))
    return "truthful preference does not match the profile";
  if (w.misreport == w.truthful) return "misreport equals the truthful preference";
  Assignment honest = rule(w.profile);
  Assignment lied = rule(w.profile.WithPreference(w.agent, w.misreport));
  if (RowOf(honest, w.agent) != w.truthful_row)
    return "truthful row differs on rerun: " + FormatRow(honest.row(w.agent));
  if (RowOf(lied, w.agent) != w.manipulated_row)
    return "manipulated row differs on rerun: " + FormatRow(lied.row(w.agent));
  SdComparison c = SdCompare(w.truthful, lied.row(w.agent), honest.row(w.agent));
  if (c != w.comparison)
    return std::string("comparison is ") + SdComparisonName(c);
  if (!IsViolation(c, notion)) return "not a violation of the notion";
  return std::nullopt;
}

SweepReport SweepManipulations(const Rule& rule, std::size_t n, SpNotion notion,
                               bool stop_at_first) {
  if (n == 0) throw Error(ErrorCode::kSize, "n must be positive");
  const std::vector<WeakOrder> orders = DomainOrders(rule, n, kDefaultWeakOrderCap);
  const std::size_t k = orders.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > 5'000'000 / k)
      throw Error(ErrorCode::kSize, "too many profiles to sweep");
    total *= k;
  }

  auto decode = [&](std::size_t code) {
    std::vector<WeakOrder> prefs(n);
    for (std::size_t a = n; a-- > 0;) {
      prefs[a] = orders[code % k];
      code /= k;
    }
    return Profile::WithDefaultLabels(std::move(prefs));
  };
  std::size_t stride = 1;
  std::vector<std::size_t> weight(n);
  for (std::size_t a = n; a-- > 0;) {
    weight[a] = stride;
    stride *= k;
  }

  std::vector<Assignment> outcome(total);
  for (std::size_t code = 0; code < total; ++code) outcome[code] = rule(decode(code));

  SweepReport report;
  for (std::size_t code = 0; code < total; ++code) {
    ++report.profiles;
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t mine = (code / weight[a]) % k;
      const WeakOrder& pref = orders[mine];
      for (std::size_t lie = 0; lie < k; ++lie) {
        if (lie == mine) continue;
        ++report.checks;
        const std::size_t other = code + lie * weight[a] - mine * weight[a];
        AgentId i{a};
        SdComparison c = SdCompare(pref, outcome[other].row(i), outcome[code].row(i));
        if (!IsViolation(c, notion)) continue;
        ++report.violations;
        if (!report.first)
          report.first = ManipulationWitness{decode(code), i, pref, orders[lie],
                                             RowOf(outcome[code], i),
                                             RowOf(outcome[other], i), c};
        if (stop_at_first) return report;
      }
    }
  }
  return report;
}

ExtensionReport CheckExtensionOfPs(const Rule& rule, std::size_t n,
                                   std::size_t samples, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::kSize, "n must be positive");
  ExtensionReport report;
  auto check = [&](const Profile& profile) {
    ++report.profiles_checked;
    Assignment got = rule(profile);
    Assignment want = Ps(profile);
    if (got == want) return true;
    report.extends = false;
    report.discrepancy = profile;
    report.rule_outcome = got;
    report.ps_outcome = want;
    return false;
  };

  if (n <= 3) {
    const std::vector<WeakOrder> orders = EnumerateStrictOrders(n);
    std::vector<std::size_t> pick(n, 0);
    while (true) {
      std::vector<WeakOrder> prefs;
      for (std::size_t c : pick) prefs.push_back(orders[c]);
      if (!check(Profile::WithDefaultLabels(std::move(prefs)))) return report;
      std::size_t a = n;
      while (a > 0 && ++pick[a - 1] == orders.size()) pick[--a] = 0;
      if (a == 0) break;
    }
    return report;
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> ranking(n);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<WeakOrder> prefs;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t j = 0; j < n; ++j) ranking[j] = j;
      std::shuffle(ranking.begin(), ranking.end(), rng);
      std::vector<ObjectId> ids;
      for (std::size_t j : ranking) ids.push_back(ObjectId{j});
      prefs.push_back(WeakOrder::Strict(ids));
    }
    if (!check(Profile::WithDefaultLabels(std::move(prefs)))) return report;
  }
  return report;
}

SymmetryReport CheckSymmetryProperties(const Rule& rule, const Profile& profile,
                                       std::size_t factorial_cap) {
  const std::size_t n = profile.size();
  SymmetryReport report;
  const Assignment base = rule(profile);
  const auto perms = EnumeratePermutations(n, factorial_cap);

  auto describe = [](const std::vector<std::size_t>& perm) {
    std::ostringstream s;
    s << '(';
    for (std::size_t j = 0; j < perm.size(); ++j) s << (j ? " " : "") << perm[j];
    s << ')';
    return s.str();
  };

  // anonymity: agent k reports what agent perm[k] reported
  for (const auto& perm : perms) {
    std::vector<WeakOrder> prefs;
    for (std::size_t k = 0; k < n; ++k) prefs.push_back(profile.pref(AgentId{perm[k]}));
    Assignment out = rule(Profile::WithDefaultLabels(std::move(prefs)));
    for (std::size_t k = 0; k < n && report.anonymous; ++k)
      for (std::size_t j = 0; j < n; ++j)
        if (out.at(k, j) != base.at(perm[k], j)) {
          report.anonymous = false;
          report.failures.push_back("anonymity fails for agent permutation " +
                                    describe(perm));
          break;
        }
    if (!report.anonymous) break;
  }

  // neutrality: object j renamed perm[j]
  for (const auto& perm : perms) {
    std::vector<WeakOrder> prefs;
    for (const WeakOrder& pref : profile.prefs()) {
      std::vector<std::vector<ObjectId>> classes;
      for (const auto& cls : pref.classes()) {
        classes.emplace_back();
        for (ObjectId o : cls) classes.back().push_back(ObjectId{perm[o.index]});
      }
      prefs.emplace_back(std::move(classes), n);
    }
    Assignment out = rule(Profile::WithDefaultLabels(std::move(prefs)));
    for (std::size_t i = 0; i < n && report.neutral; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (out.at(i, perm[j]) != base.at(i, j)) {
          report.neutral = false;
          report.failures.push_back("neutrality fails for object permutation " +
                                    describe(perm));
          break;
        }
    if (!report.neutral) break;
  }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!(profile.pref(AgentId{a}) == profile.pref(AgentId{b}))) continue;
      if (RowOf(base, AgentId{a}) == RowOf(base, AgentId{b})) continue;
      if (report.equal_treatment)
        report.failures.push_back("equal treatment fails for agents " +
                                  profile.agent_label(AgentId{a}) + " and " +
                                  profile.agent_label(AgentId{b}));
      report.equal_treatment = false;
    }
  return report;
}

}  // namespace randassign
