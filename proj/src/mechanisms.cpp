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

#include "randassign/mechanisms.hpp"

#include <algorithm>
#include <map>

#include "maxflow.hpp"
#include "randassign/error.hpp"
#include "randassign/exactlp.hpp"

namespace randassign {
namespace {

std::vector<std::vector<Rational>> ZeroMatrix(std::size_t n) {
  return std::vector<std::vector<Rational>>(n, std::vector<Rational>(n));
}

void RequireStrict(const Profile& profile, const char* rule) {
  if (!profile.IsStrict()) {
    throw Error(ErrorCode::kDomain,
                std::string(rule) +
                    " is defined for strict preferences only; use eps for "
                    "profiles with indifferences");
  }
}

std::vector<ObjectId> TopAvailableClass(const WeakOrder& pref,
                                        const std::vector<bool>& alive) {
  for (const auto& cls : pref.classes()) {
    std::vector<ObjectId> avail;
    for (ObjectId o : cls) {
      if (alive[o.index]) avail.push_back(o);
    }
    if (!avail.empty()) return avail;
  }
  return {};
}

struct Edge {
  std::size_t agent;
  std::size_t object;
};

// Bottleneck transportation problem: agents need `need[i]`, objects supply
// `supply[o]`, total need equals total supply, agents only use their edges.
struct Transport {
  std::vector<std::size_t> agents;
  std::vector<std::size_t> objects;
  std::vector<Edge> edges;  // sorted by (agent, object)
  std::map<std::size_t, Rational> need;
  std::map<std::size_t, Rational> supply;
};

// Max flow of the transport network restricted to edges with `usable`.
Rational TransportFlow(const Transport& t, const std::vector<bool>& usable,
                       const std::map<std::size_t, Rational>& need,
                       const std::map<std::size_t, Rational>& supply,
                       std::size_t n) {
  // Nodes: 0 source, 1..n agents, n+1..2n objects, 2n+1 sink.
  internal::FlowNetwork net(2 * n + 2);
  const std::size_t sink = 2 * n + 1;
  Rational big(static_cast<std::int64_t>(n) + 1);
  for (std::size_t i : t.agents) net.SetCapacity(0, 1 + i, need.at(i));
  for (std::size_t o : t.objects) net.SetCapacity(1 + n + o, sink, supply.at(o));
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    if (usable[e]) {
      net.SetCapacity(1 + t.edges[e].agent, 1 + n + t.edges[e].object, big);
    }
  }
  return net.MaxFlow(0, sink);
}

std::vector<Rational> LexicographicPlan(const Transport& t, std::size_t n) {
  std::vector<Rational> plan(t.edges.size());
  std::vector<bool> usable(t.edges.size(), true);
  auto need = t.need;
  auto supply = t.supply;
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    Rational required;
    for (const auto& [i, r] : need) required += r;
    usable[e] = false;
    const Rational without = TransportFlow(t, usable, need, supply, n);
    const Rational value = Max(Rational(), required - without);
    plan[e] = value;
    need[t.edges[e].agent] -= value;
    supply[t.edges[e].object] -= value;
  }
  for (const auto& [i, r] : need) {
    if (!r.IsZero()) {
      throw Error(ErrorCode::kContract, "bottleneck plan left demand unmet");
    }
  }
  return plan;
}

std::vector<Rational> LeximinPlan(const Transport& t) {
  using lp::LinearExpr;
  using lp::Relation;
  const std::size_t m = t.edges.size();
  std::vector<std::optional<Rational>> fixed(m);

  auto base = [&](lp::LinearSystem& sys, std::vector<lp::VarId>& x) {
    for (std::size_t e = 0; e < m; ++e) {
      x.push_back(sys.AddVariable("x" + std::to_string(e)));
    }
    for (std::size_t i : t.agents) {
      LinearExpr row;
      for (std::size_t e = 0; e < m; ++e) {
        if (t.edges[e].agent == i) row.Add(x[e], 1);
      }
      sys.AddConstraint(row, Relation::kEq, t.need.at(i));
    }
    for (std::size_t o : t.objects) {
      LinearExpr col;
      for (std::size_t e = 0; e < m; ++e) {
        if (t.edges[e].object == o) col.Add(x[e], 1);
      }
      sys.AddConstraint(col, Relation::kEq, t.supply.at(o));
    }
    for (std::size_t e = 0; e < m; ++e) {
      if (fixed[e]) sys.AddConstraint(x[e], Relation::kEq, *fixed[e]);
    }
  };

  while (std::any_of(fixed.begin(), fixed.end(),
                     [](const auto& f) { return !f.has_value(); })) {
    lp::LinearSystem sys;
    std::vector<lp::VarId> x;
    base(sys, x);
    const lp::VarId z = sys.AddVariable("z", lp::VarDomain::kFree);
    for (std::size_t e = 0; e < m; ++e) {
      if (!fixed[e]) sys.AddConstraint(LinearExpr(x[e]) - LinearExpr(z), Relation::kGe, 0);
    }
    auto level = lp::LpMaximize(sys, LinearExpr(z));
    if (level.status != lp::LpStatus::kOptimal) {
      throw Error(ErrorCode::kContract, "leximin level problem not optimal");
    }
    const Rational floor = level.optimum;
    bool progressed = false;
    for (std::size_t e = 0; e < m; ++e) {
      if (fixed[e]) continue;
      lp::LinearSystem probe;
      std::vector<lp::VarId> y;
      base(probe, y);
      for (std::size_t f = 0; f < m; ++f) {
        if (!fixed[f]) probe.AddConstraint(y[f], Relation::kGe, floor);
      }
      auto best = lp::LpMaximize(probe, LinearExpr(y[e]));
      if (best.status == lp::LpStatus::kOptimal && best.optimum == floor) {
        fixed[e] = floor;
        progressed = true;
      }
    }
    if (!progressed) {
      throw Error(ErrorCode::kContract, "leximin plan made no progress");
    }
  }
  std::vector<Rational> plan;
  for (auto& f : fixed) plan.push_back(*f);
  return plan;
}

}  // namespace

PsResult PsWithTrace(const Profile& profile) {
  RequireStrict(profile, "ps");
  const std::size_t n = profile.size();
  auto alloc = ZeroMatrix(n);
  std::vector<Rational> remaining(n, Rational(1));
  std::vector<bool> alive(n, true);
  EatingTrace trace;
  Rational now;
  std::size_t left = n;
  while (left > 0) {
    EatingSegment seg;
    seg.start = now;
    seg.rate.assign(n, Rational());
    for (std::size_t i = 0; i < n; ++i) {
      const ObjectId top = TopAvailableClass(profile.pref(AgentId{i}), alive).front();
      seg.eating.push_back(top);
      seg.rate[top.index] += 1;
    }
    std::optional<Rational> step;
    for (std::size_t o = 0; o < n; ++o) {
      if (seg.rate[o].IsZero()) continue;
      Rational until = remaining[o] / seg.rate[o];
      if (!step || until < *step) step = until;
    }
    for (std::size_t i = 0; i < n; ++i) alloc[i][seg.eating[i].index] += *step;
    for (std::size_t o = 0; o < n; ++o) {
      if (seg.rate[o].IsZero()) continue;
      remaining[o] -= seg.rate[o] * *step;
      if (remaining[o].IsZero()) {
        alive[o] = false;
        --left;
      }
    }
    now += *step;
    seg.end = now;
    trace.segments.push_back(std::move(seg));
  }
  if (now != Rational(1)) {
    throw Error(ErrorCode::kContract, "eating did not end at time 1");
  }
  return {Assignment::Validate(std::move(alloc)), std::move(trace)};
}

Assignment Ps(const Profile& profile) { return PsWithTrace(profile).assignment; }

EpsResult EpsWithTrace(const Profile& profile, TiePolicy policy) {
  const std::size_t n = profile.size();
  if (n > 20) {
    throw Error(ErrorCode::kSize, "eps enumerates agent subsets; n <= 20");
  }
  auto alloc = ZeroMatrix(n);
  std::vector<Rational> remaining(n, Rational(1));
  std::vector<bool> alive(n, true);
  std::vector<Rational> pending(n);
  std::vector<EpsPhase> phases;
  Rational now;

  while (std::find(alive.begin(), alive.end(), true) != alive.end()) {
    EpsPhase phase;
    phase.start = now;
    for (std::size_t i = 0; i < n; ++i) {
      phase.demand.push_back(TopAvailableClass(profile.pref(AgentId{i}), alive));
    }
    std::vector<std::uint32_t> demand_mask(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (ObjectId o : phase.demand[i]) demand_mask[i] |= 1u << o.index;
    }

    // Largest common increment, and the union of all sets attaining it.
    std::optional<Rational> best;
    std::uint32_t bottleneck = 0;
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
      std::uint32_t objects = 0;
      Rational load;
      std::int64_t size = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(s & (1u << i))) continue;
        objects |= demand_mask[i];
        load += pending[i];
        ++size;
      }
      Rational capacity;
      for (std::size_t o = 0; o < n; ++o) {
        if (objects & (1u << o)) capacity += remaining[o];
      }
      Rational value = (capacity - load) / Rational(size);
      if (!best || value < *best) {
        best = value;
        bottleneck = s;
      } else if (value == *best) {
        bottleneck |= s;
      }
    }
    const Rational increment = *best;
    if (increment.Sign() <= 0) {
      throw Error(ErrorCode::kContract, "eps bottleneck with no progress");
    }

    // Feasibility of the whole network at the chosen increment.
    Transport all;
    for (std::size_t i = 0; i < n; ++i) {
      all.agents.push_back(i);
      all.need[i] = pending[i] + increment;
      for (ObjectId o : phase.demand[i]) all.edges.push_back({i, o.index});
    }
    for (std::size_t o = 0; o < n; ++o) {
      if (!alive[o]) continue;
      all.objects.push_back(o);
      all.supply[o] = remaining[o];
    }
    Rational total_need;
    for (const auto& [i, r] : all.need) total_need += r;
    if (TransportFlow(all, std::vector<bool>(all.edges.size(), true), all.need,
                      all.supply, n) != total_need) {
      throw Error(ErrorCode::kContract, "eps increment is not flow-feasible");
    }

    Transport tight;
    std::uint32_t tight_objects = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(bottleneck & (1u << i))) continue;
      tight.agents.push_back(i);
      tight.need[i] = pending[i] + increment;
      phase.agents.push_back(AgentId{i});
      tight_objects |= demand_mask[i];
      for (ObjectId o : phase.demand[i]) tight.edges.push_back({i, o.index});
    }
    for (std::size_t o = 0; o < n; ++o) {
      if (!(tight_objects & (1u << o))) continue;
      tight.objects.push_back(o);
      tight.supply[o] = remaining[o];
      phase.objects.push_back(ObjectId{o});
    }
    const std::vector<Rational> plan = policy == TiePolicy::kLexicographic
                                           ? LexicographicPlan(tight, n)
                                           : LeximinPlan(tight);
    for (std::size_t e = 0; e < tight.edges.size(); ++e) {
      alloc[tight.edges[e].agent][tight.edges[e].object] += plan[e];
    }
    for (std::size_t o : tight.objects) {
      remaining[o] = Rational();
      alive[o] = false;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (bottleneck & (1u << i)) {
        pending[i] = Rational();
      } else {
        pending[i] += increment;
      }
    }
    now += increment;
    phase.end = now;
    phases.push_back(std::move(phase));
  }
  if (now != Rational(1)) {
    throw Error(ErrorCode::kContract, "extended eating did not end at time 1");
  }
  return {Assignment::Validate(std::move(alloc)), std::move(phases)};
}

Assignment Eps(const Profile& profile, TiePolicy policy) {
  return EpsWithTrace(profile, policy).assignment;
}

namespace {

DiscreteAssignment PickInOrder(const Profile& profile,
                               std::span<const AgentId> order) {
  const std::size_t n = profile.size();
  if (order.size() != n) {
    throw Error(ErrorCode::kShape, "order must list every agent once");
  }
  std::vector<bool> alive(n, true), seen(n, false);
  std::vector<ObjectId> got(n);
  for (AgentId i : order) {
    if (i.index >= n || seen[i.index]) {
      throw Error(ErrorCode::kShape, "order is not a permutation of agents");
    }
    seen[i.index] = true;
    const ObjectId pick = TopAvailableClass(profile.pref(i), alive).front();
    got[i.index] = pick;
    alive[pick.index] = false;
  }
  return DiscreteAssignment(std::move(got));
}

}  // namespace

DiscreteAssignment SerialDictatorship(const Profile& profile,
                                      std::span<const AgentId> order) {
  RequireStrict(profile, "serial dictatorship");
  return PickInOrder(profile, order);
}

DiscreteAssignment SerialDictatorshipLexTieBreak(const Profile& profile,
                                                 std::span<const AgentId> order) {
  return PickInOrder(profile, order);
}

Assignment Rsd(const Profile& profile, std::size_t factorial_cap) {
  RequireStrict(profile, "rsd");
  const std::size_t n = profile.size();
  const auto perms = EnumeratePermutations(n, factorial_cap);
  std::vector<std::vector<std::int64_t>> counts(n, std::vector<std::int64_t>(n));
  for (const auto& perm : perms) {
    std::vector<AgentId> order;
    for (std::size_t i : perm) order.push_back(AgentId{i});
    const DiscreteAssignment d = SerialDictatorship(profile, order);
    for (std::size_t i = 0; i < n; ++i) ++counts[i][d.object_of(AgentId{i}).index];
  }
  const auto total = static_cast<std::int64_t>(perms.size());
  auto alloc = ZeroMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) alloc[i][j] = Rational(counts[i][j], total);
  }
  return Assignment::Validate(std::move(alloc));
}

Rule PsRule() { return {"ps", PreferenceDomain::kStrict, [](const Profile& p) { return Ps(p); }}; }

Rule EpsRule(TiePolicy policy) {
  return {policy == TiePolicy::kLexicographic ? "eps" : "eps-symmetric",
          PreferenceDomain::kWeak,
          [policy](const Profile& p) { return Eps(p, policy); }};
}

Rule RsdRule() { return {"rsd", PreferenceDomain::kStrict, [](const Profile& p) { return Rsd(p); }}; }

std::optional<Rule> RuleByName(std::string_view name) {
  if (name == "ps") return PsRule();
  if (name == "eps") return EpsRule(TiePolicy::kLexicographic);
  if (name == "eps-symmetric") return EpsRule(TiePolicy::kSymmetric);
  if (name == "rsd") return RsdRule();
  return std::nullopt;
}

}  // namespace randassign
