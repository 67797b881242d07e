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

#include "randassign/efficiency.hpp"

#include <algorithm>
#include <deque>

#include "randassign/error.hpp"

namespace randassign {
namespace {

ObjectId NextObject(const TradingCycle& c, std::size_t j) {
  return c.steps[(j + 1) % c.size()].object;
}

TradingCycle Rotated(const TradingCycle& c, std::size_t start) {
  TradingCycle out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    out.steps.push_back(c.steps[(start + k) % c.size()]);
  }
  return out;
}

// Re-derives every strict flag from the profile.
void Restrict(TradingCycle& c, const Profile& profile) {
  for (std::size_t j = 0; j < c.size(); ++j) {
    c.steps[j].strict =
        profile.pref(c.steps[j].agent).StrictlyPrefers(NextObject(c, j), c.steps[j].object);
  }
}

bool HasStrict(const TradingCycle& c) {
  return std::any_of(c.steps.begin(), c.steps.end(),
                     [](const CycleStep& s) { return s.strict; });
}

}  // namespace

std::optional<std::string> CheckCyclePreferences(const TradingCycle& cycle,
                                                 const Profile& profile) {
  if (cycle.size() < 2) return "cycle has fewer than two steps";
  bool any_strict = false;
  for (std::size_t j = 0; j < cycle.size(); ++j) {
    const CycleStep& s = cycle.steps[j];
    if (s.agent.index >= profile.size() || s.object.index >= profile.size()) {
      return "step " + std::to_string(j) + " out of range";
    }
    const WeakOrder& pref = profile.pref(s.agent);
    const ObjectId next = NextObject(cycle, j);
    if (!pref.WeaklyPrefers(next, s.object)) {
      return "agent " + profile.agent_label(s.agent) + " does not weakly prefer " +
             profile.object_label(next) + " to " + profile.object_label(s.object);
    }
    if (pref.StrictlyPrefers(next, s.object) != s.strict) {
      return "strict flag wrong at step " + std::to_string(j);
    }
    any_strict = any_strict || s.strict;
  }
  if (!any_strict) return "no step is strict";
  return std::nullopt;
}

std::optional<std::string> CheckTradingCycle(const TradingCycle& cycle,
                                             const Assignment& p,
                                             const Profile& profile) {
  if (p.size() != profile.size()) return "assignment/profile size mismatch";
  if (auto err = CheckCyclePreferences(cycle, profile)) return err;
  for (const CycleStep& s : cycle.steps) {
    if (p.at(s.agent, s.object).Sign() <= 0) {
      return "agent " + profile.agent_label(s.agent) + " holds no " +
             profile.object_label(s.object);
    }
  }
  return std::nullopt;
}

std::vector<std::pair<AgentId, ObjectId>> CycleHoldings(const TradingCycle& cycle) {
  std::vector<std::pair<AgentId, ObjectId>> out;
  for (const CycleStep& s : cycle.steps) {
    std::pair<AgentId, ObjectId> h{s.agent, s.object};
    if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(h);
  }
  return out;
}

std::string FormatTradingCycle(const TradingCycle& cycle, const Profile& profile) {
  std::string out;
  std::string strict_at;
  for (const CycleStep& s : cycle.steps) {
    out += profile.object_label(s.object) + " -> (" +
           profile.agent_label(s.agent) + ") -> ";
    if (s.strict) {
      strict_at += (strict_at.empty() ? "" : ",") + profile.agent_label(s.agent);
    }
  }
  if (!cycle.steps.empty()) out += profile.object_label(cycle.steps[0].object);
  return out + " [strict at " + strict_at + "]";
}

TradeGraph TradeGraph::Build(const Assignment& p, const Profile& profile) {
  TradeGraph g;
  g.n_ = profile.size();
  g.edges_.assign(g.n_ * g.n_, std::nullopt);
  for (std::size_t i = 0; i < g.n_; ++i) {
    const AgentId agent{i};
    const WeakOrder& pref = profile.pref(agent);
    for (std::size_t o = 0; o < g.n_; ++o) {
      if (p.at(i, o).Sign() <= 0) continue;
      for (std::size_t to = 0; to < g.n_; ++to) {
        if (to == o || !pref.WeaklyPrefers(ObjectId{to}, ObjectId{o})) continue;
        const bool strict = pref.StrictlyPrefers(ObjectId{to}, ObjectId{o});
        auto& slot = g.edges_[o * g.n_ + to];
        if (!slot || (strict && !slot->strict)) {
          slot = TradeEdge{ObjectId{o}, ObjectId{to}, agent, strict};
        }
      }
    }
  }
  return g;
}

std::vector<TradeEdge> TradeGraph::Edges() const {
  std::vector<TradeEdge> out;
  for (const auto& e : edges_) {
    if (e) out.push_back(*e);
  }
  return out;
}

std::optional<TradingCycle> DetectTradingCycle(const Assignment& p,
                                               const Profile& profile) {
  const TradeGraph g = TradeGraph::Build(p, profile);
  const std::size_t n = g.num_objects();
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  for (const TradeEdge& start : g.Edges()) {
    if (!start.strict) continue;
    // BFS from start.to back to start.from.
    std::vector<std::size_t> parent(n, kUnseen);
    parent[start.to.index] = start.to.index;
    std::deque<std::size_t> queue{start.to.index};
    while (!queue.empty() && parent[start.from.index] == kUnseen) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < n; ++v) {
        if (parent[v] == kUnseen && g.edge(ObjectId{u}, ObjectId{v})) {
          parent[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (parent[start.from.index] == kUnseen) continue;
    std::vector<std::size_t> path;  // start.to ... start.from
    for (std::size_t v = start.from.index; v != start.to.index; v = parent[v]) {
      path.push_back(v);
    }
    path.push_back(start.to.index);
    std::reverse(path.begin(), path.end());
    TradingCycle cycle;
    cycle.steps.push_back({start.from, start.agent, true});
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      const TradeEdge& e = *g.edge(ObjectId{path[k]}, ObjectId{path[k + 1]});
      cycle.steps.push_back({e.from, e.agent, e.strict});
    }
    return cycle;
  }
  return std::nullopt;
}

TradingCycle ReduceTradingCycle(const TradingCycle& input, const Assignment& p,
                                const Profile& profile,
                                std::vector<std::string>* log) {
  if (auto err = CheckTradingCycle(input, p, profile)) {
    throw Error(ErrorCode::kContract, "not a trading cycle: " + *err);
  }
  auto note = [&](const std::string& s) {
    if (log) log->push_back(s);
  };
  TradingCycle c = input;

  // Phase 1: repeated objects. With step 0 strict, the objects met after the
  // improving agent are o1, ..., o(k-1), o0. The agent pointing at the first
  // repeated occurrence is rerouted to its last occurrence.
  while (true) {
    const std::size_t strict_at = static_cast<std::size_t>(
        std::find_if(c.steps.begin(), c.steps.end(),
                     [](const CycleStep& s) { return s.strict; }) -
        c.steps.begin());
    c = Rotated(c, strict_at);
    const std::size_t k = c.size();
    auto object_at = [&](std::size_t pos) { return c.steps[pos % k].object; };
    std::size_t first = 0, last = 0;
    for (std::size_t p1 = 1; p1 < k && first == 0; ++p1) {
      for (std::size_t q = k; q > p1; --q) {
        if (object_at(q) == object_at(p1)) {
          first = p1;
          last = q;
          break;
        }
      }
    }
    if (first == 0) break;
    TradingCycle shorter;
    for (std::size_t j = 0; j < first; ++j) shorter.steps.push_back(c.steps[j]);
    for (std::size_t j = last; j < k; ++j) shorter.steps.push_back(c.steps[j]);
    note("object " + profile.object_label(object_at(first)) +
         " repeated: cycle shortened from " + std::to_string(k) + " to " +
         std::to_string(shorter.size()));
    c = std::move(shorter);
  }

  // Phase 2: repeated agents. For occurrences s and t of one agent, either s
  // can point past t (to o(t+1)) or t can point past s (to o(s+1)); one of
  // the two shortcuts keeps a strict step.
  while (true) {
    const std::size_t k = c.size();
    std::size_t s = k, t = k;
    for (std::size_t a = 0; a < k && s == k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        if (c.steps[a].agent == c.steps[b].agent) {
          s = a;
          t = b;
          break;
        }
      }
    }
    if (s == k) break;
    const AgentId agent = c.steps[s].agent;
    bool agent_strict = false;
    for (const CycleStep& st : c.steps) {
      if (st.agent == agent && st.strict) agent_strict = true;
    }
    const WeakOrder& pref = profile.pref(agent);

    // X: s points at o(t+1), then t+1 .. s-1.
    // Y: t points at o(s+1), then s+1 .. t-1.
    auto shortcut = [&](std::size_t from, std::size_t to) {
      TradingCycle out;
      const ObjectId target = NextObject(c, to);
      if (!pref.WeaklyPrefers(target, c.steps[from].object)) return out;
      out.steps.push_back(c.steps[from]);
      for (std::size_t j = (to + 1) % k; j != from; j = (j + 1) % k) {
        out.steps.push_back(c.steps[j]);
      }
      Restrict(out, profile);
      if (out.size() < 2 || !HasStrict(out)) out.steps.clear();
      return out;
    };
    TradingCycle next = shortcut(s, t);
    if (next.steps.empty()) next = shortcut(t, s);
    if (next.steps.empty()) {
      throw Error(ErrorCode::kContract, "agent shortcut found no trading cycle");
    }
    note(std::string(agent_strict ? "case 1" : "case 2") + ": agent " +
         profile.agent_label(agent) + " repeated: cycle shortened from " +
         std::to_string(k) + " to " + std::to_string(next.size()));
    c = std::move(next);
  }

  if (auto err = CheckTradingCycle(c, p, profile)) {
    throw Error(ErrorCode::kContract, "reduction broke the cycle: " + *err);
  }
  return c;
}

bool IsSdEfficient(const Assignment& p, const Profile& profile) {
  return !DetectTradingCycle(p, profile).has_value();
}

std::vector<DiscreteAssignment> EnumerateParetoOptimalDiscrete(
    const Profile& profile, std::size_t factorial_cap) {
  std::vector<DiscreteAssignment> out;
  for (const auto& perm : EnumeratePermutations(profile.size(), factorial_cap)) {
    std::vector<ObjectId> ids;
    for (std::size_t o : perm) ids.push_back(ObjectId{o});
    DiscreteAssignment d(std::move(ids));
    if (IsSdEfficient(d.ToAssignment(), profile)) out.push_back(std::move(d));
  }
  return out;
}

ExPostResult IsExPostEfficient(const Assignment& p, const Profile& profile,
                               std::size_t factorial_cap) {
  using lp::LinearExpr;
  using lp::Relation;
  const std::size_t n = profile.size();
  if (p.size() != n) throw Error(ErrorCode::kShape, "assignment/profile size mismatch");
  const auto matchings = EnumerateParetoOptimalDiscrete(profile, factorial_cap);

  ExPostResult result;
  lp::LinearSystem& sys = result.system;
  std::vector<lp::VarId> weight;
  for (std::size_t m = 0; m < matchings.size(); ++m) {
    std::string name = "w[";
    for (std::size_t i = 0; i < n; ++i) {
      name += (i ? " " : "") + profile.object_label(matchings[m].object_of(AgentId{i}));
    }
    weight.push_back(sys.AddVariable(name + "]"));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      LinearExpr e;
      for (std::size_t m = 0; m < matchings.size(); ++m) {
        if (matchings[m].object_of(AgentId{i}).index == j) e.Add(weight[m], 1);
      }
      sys.AddConstraint(e, Relation::kEq, p.at(i, j),
                        "p(" + profile.agent_label(AgentId{i}) + ")(" +
                            profile.object_label(ObjectId{j}) + ")");
    }
  }
  LinearExpr total;
  for (auto w : weight) total.Add(w, 1);
  sys.AddConstraint(total, Relation::kEq, 1, "weights sum to 1");

  auto feas = lp::LpFeasible(sys);
  if (!feas.feasible) {
    result.certificate = feas.certificate;
    return result;
  }
  result.efficient = true;
  std::vector<std::vector<Rational>> rebuilt(n, std::vector<Rational>(n));
  for (std::size_t m = 0; m < matchings.size(); ++m) {
    const Rational& w = feas.witness[m];
    if (w.IsZero()) continue;
    result.decomposition.emplace_back(matchings[m], w);
    for (std::size_t i = 0; i < n; ++i) {
      rebuilt[i][matchings[m].object_of(AgentId{i}).index] += w;
    }
  }
  if (rebuilt != p.ToRows()) {
    throw Error(ErrorCode::kContract, "decomposition does not reconstruct p");
  }
  return result;
}

EfficiencyComparison CheckSdImpliesExPost(const Profile& profile,
                                          const Assignment& p) {
  EfficiencyComparison r;
  r.cycle = DetectTradingCycle(p, profile);
  r.sd_efficient = !r.cycle.has_value();
  r.ex_post = IsExPostEfficient(p, profile);
  r.ex_post_efficient = r.ex_post.efficient;
  r.consistent = !r.sd_efficient || r.ex_post_efficient;
  return r;
}

EfficiencyComparison CheckExPostSdEquivalence(const Profile& profile,
                                              const Assignment& p) {
  if (profile.size() != 3) {
    throw Error(ErrorCode::kDomain,
                "ex post / SD-efficiency equivalence is only established for "
                "n = 3; use CheckSdImpliesExPost");
  }
  EfficiencyComparison r = CheckSdImpliesExPost(profile, p);
  r.consistent = r.sd_efficient == r.ex_post_efficient;
  return r;
}

}  // namespace randassign
