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

#include "randassign/theorem.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "randassign/dominance.hpp"
#include "randassign/error.hpp"
#include "randassign/mechanisms.hpp"

namespace randassign {
namespace {

constexpr std::size_t kNodeLimit = 20000;
constexpr AgentId kThird{2};

struct Profiles {
  Profile truthful, prime, dbl;
};

Profiles MakeProfiles(std::size_t n) {
  auto make = [n](WeakOrder third) {
    Profile base = Profile::WithDefaultLabels(
        {WeakOrder::Strict({0, 1, 2}), WeakOrder::Strict({0, 2, 1}), std::move(third)});
    return PadProfile(base, n);
  };
  return {make(WeakOrder::Strict({0, 1, 2})), make(WeakOrder::Strict({1, 2, 0})),
          make(WeakOrder::FromClasses({{0, 1}, {2}}))};
}

Assignment PaddedMatrix(std::size_t n, std::vector<std::vector<Rational>> block) {
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rows[i][j] = i < 3 && j < 3 ? block[i][j] : Rational(i == j ? 1 : 0);
  return Assignment::Validate(std::move(rows));
}

Assignment ExpectedPs(std::size_t n) {
  const Rational t(1, 3), h(1, 2), s(1, 6), z(0);
  return PaddedMatrix(n, {{t, h, s}, {t, z, Rational(2, 3)}, {t, h, s}});
}

Assignment ExpectedPsPrime(std::size_t n) {
  const Rational h(1, 2), q(1, 4), z(0);
  return PaddedMatrix(n, {{h, q, q}, {h, z, h}, {z, Rational(3, 4), q}});
}

lp::VarId Var(const Profile& p, Entry e) {
  return lp::VarId{e.agent.index * p.size() + e.object.index};
}

std::string EntryName(const Profile& p, Entry e) {
  return "C" + p.agent_label(e.agent) + p.object_label(e.object);
}

lp::LinearSystem DsSystem(const Profile& p) {
  const std::size_t n = p.size();
  lp::LinearSystem sys;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      sys.AddVariable(EntryName(p, {AgentId{i}, ObjectId{j}}));
  for (std::size_t i = 0; i < n; ++i) {
    lp::LinearExpr row;
    for (std::size_t j = 0; j < n; ++j) row.Add(Var(p, {AgentId{i}, ObjectId{j}}), 1);
    sys.AddConstraint(row, lp::Relation::kEq, 1, "row " + p.agent_label(AgentId{i}));
  }
  for (std::size_t j = 0; j < n; ++j) {
    lp::LinearExpr col;
    for (std::size_t i = 0; i < n; ++i) col.Add(Var(p, {AgentId{i}, ObjectId{j}}), 1);
    sys.AddConstraint(col, lp::Relation::kEq, 1, "column " + p.object_label(ObjectId{j}));
  }
  return sys;
}

void AddFact(lp::LinearSystem& sys, const Profile& p, Entry e, lp::Relation rel) {
  sys.AddConstraint(Var(p, e), rel, 0,
                    EntryName(p, e) + " " + lp::RelationSymbol(rel) + " 0");
}

lp::LinearSystem NodeSystem(const Profile& p, const std::vector<Entry>& positive,
                            const std::vector<Entry>& zero) {
  lp::LinearSystem sys = DsSystem(p);
  for (Entry e : positive) AddFact(sys, p, e, lp::Relation::kGt);
  for (Entry e : zero) AddFact(sys, p, e, lp::Relation::kEq);
  return sys;
}

/// DS with the zero facts from step 2.
lp::LinearSystem Region(const Profile& p, const std::vector<Refutation>& facts) {
  lp::LinearSystem sys = DsSystem(p);
  for (const Refutation& r : facts) AddFact(sys, p, r.target, lp::Relation::kEq);
  return sys;
}

std::vector<Entry> ZeroTargets(std::size_t n) {
  std::vector<Entry> out{{kThird, ObjectId{0}}};
  for (std::size_t j = 3; j < n; ++j) out.push_back({kThird, ObjectId{j}});
  return out;
}

Assignment PointToMatrix(std::span<const Rational> x, std::size_t n) {
  std::vector<std::vector<Rational>> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i].assign(x.begin() + i * n, x.begin() + (i + 1) * n);
  return Assignment::Validate(std::move(rows));
}

std::vector<Entry> Holdings(const TradingCycle& c) {
  std::vector<Entry> out;
  for (auto [a, o] : CycleHoldings(c)) out.push_back({a, o});
  return out;
}

bool Contains(const std::vector<Entry>& v, Entry e) {
  return std::find(v.begin(), v.end(), e) != v.end();
}

std::vector<Entry> Sorted(std::vector<Entry> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Entry> SplitFor(const TradingCycle& c, const std::vector<Entry>& positive) {
  std::vector<Entry> out;
  for (Entry e : Holdings(c))
    if (!Contains(positive, e) && !Contains(out, e)) out.push_back(e);
  return out;
}

// the cycles used for C3a > 0 at n = 3: b,1,a,3 then b,2,a,3
std::vector<TradingCycle> SuppliedCycles() {
  const ObjectId a{0}, b{1};
  return {TradingCycle{{{b, AgentId{0}, true}, {a, kThird, false}}},
          TradingCycle{{{b, AgentId{1}, true}, {a, kThird, false}}}};
}

class Refuter {
 public:
  Refuter(const Profile& p, std::vector<std::string>* log) : p_(p), log_(log) {}

  Refutation Run(Entry target, const std::vector<TradingCycle>& supplied) {
    supplied_ = supplied;
    out_ = Refutation{target, {}};
    Expand({target}, {}, std::nullopt);
    return std::move(out_);
  }

 private:
  std::size_t Expand(std::vector<Entry> positive, std::vector<Entry> zero,
                      std::optional<std::pair<TradingCycle, bool>> hint) {
    if (out_.nodes.size() >= kNodeLimit)
      throw Error(ErrorCode::kVerificationFailure, "case split exceeded the node limit");
    const std::size_t idx = out_.nodes.size();
    out_.nodes.emplace_back();
    RefutationNode node;
    node.positive = Sorted(std::move(positive));
    node.zero = Sorted(std::move(zero));
    node.system = NodeSystem(p_, node.positive, node.zero);

    lp::FeasibilityResult r = lp::LpFeasible(node.system);
    if (!r.feasible) {
      node.kind = RefutationNode::Kind::kInfeasible;
      node.certificate = r.certificate;
      out_.nodes[idx] = std::move(node);
      return idx;
    }
    node.witness = r.witness;
    const Assignment w = PointToMatrix(node.witness, p_.size());

    auto usable = [&](const TradingCycle& c) {
      if (CheckCyclePreferences(c, p_)) return false;
      for (Entry e : Holdings(c))
        if (Contains(node.zero, e)) return false;
      return true;
    };
    if (hint && usable(hint->first)) {
      node.cycle = hint->first;
      node.supplied = hint->second;
    } else {
      for (const TradingCycle& c : supplied_)
        if (usable(c)) {
          node.cycle = c;
          node.supplied = true;
          break;
        }
    }
    if (!node.cycle) {
      auto found = DetectTradingCycle(w, p_);
      if (!found)
        throw Error(ErrorCode::kVerificationFailure,
                    "SD-efficient point found with " + EntryName(p_, out_.target) + " > 0");
      node.cycle = ReduceTradingCycle(*found, w, p_, log_);
    }

    node.split = SplitFor(*node.cycle, node.positive);
    if (node.split.empty()) {
      node.kind = RefutationNode::Kind::kCycle;
      if (auto why = CheckTradingCycle(*node.cycle, w, p_))
        throw Error(ErrorCode::kVerificationFailure, "cycle fails at witness: " + *why);
      out_.nodes[idx] = std::move(node);
      return idx;
    }

    node.kind = RefutationNode::Kind::kSplit;
    const std::vector<Entry> split = node.split;
    const std::vector<Entry> pos = node.positive, zer = node.zero;
    const auto cycle = std::make_pair(*node.cycle, node.supplied);
    out_.nodes[idx] = std::move(node);

    std::vector<std::size_t> children;
    std::vector<Entry> all = pos;
    all.insert(all.end(), split.begin(), split.end());
    children.push_back(Expand(all, zer, cycle));
    std::vector<Entry> grow = pos;
    for (Entry e : split) {
      std::vector<Entry> z = zer;
      z.push_back(e);
      children.push_back(Expand(grow, z, std::nullopt));
      grow.push_back(e);
    }
    out_.nodes[idx].children = std::move(children);
    return idx;
  }

  const Profile& p_;
  std::vector<std::string>* log_;
  std::vector<TradingCycle> supplied_;
  Refutation out_;
};

lp::LinearExpr SumOf(const Profile& p, AgentId i, const std::vector<ObjectId>& objs) {
  lp::LinearExpr e;
  for (ObjectId o : objs) e.Add(Var(p, {i, o}), 1);
  return e;
}

/// Cumulative object sets at each indifference-class cut point.
std::vector<std::vector<ObjectId>> Cuts(const WeakOrder& pref) {
  std::vector<std::vector<ObjectId>> out;
  std::vector<ObjectId> acc;
  for (const auto& cls : pref.classes()) {
    acc.insert(acc.end(), cls.begin(), cls.end());
    out.push_back(acc);
  }
  return out;
}

Rational RowSum(std::span<const Rational> row, const std::vector<ObjectId>& objs) {
  Rational s;
  for (ObjectId o : objs) s += row[o.index];
  return s;
}

std::string CutLabel(const Profile& p, const std::vector<ObjectId>& objs) {
  std::string s;
  for (ObjectId o : objs) {
    if (!s.empty()) s += " + ";
    s += EntryName(p, {kThird, o});
  }
  return s;
}

struct Disjunct {
  std::string label;
  std::vector<std::tuple<lp::LinearExpr, lp::Relation, Rational, std::string>> rows;
};

/// Disjuncts of "`row` does not strictly dominate C3 under `pref`": all
/// cut points equal, or C3 larger at some cut. The last cut is the row sum.
std::vector<Disjunct> NotDominatedBy(const Profile& p, const WeakOrder& pref,
                                     std::span<const Rational> row) {
  std::vector<Disjunct> out;
  auto cuts = Cuts(pref);
  cuts.pop_back();
  Disjunct eq{"all cuts equal", {}};
  for (const auto& cut : cuts) {
    Rational v = RowSum(row, cut);
    eq.rows.emplace_back(SumOf(p, kThird, cut), lp::Relation::kEq, v,
                         CutLabel(p, cut) + " = " + v.ToString());
  }
  out.push_back(std::move(eq));
  for (const auto& cut : cuts) {
    Rational v = RowSum(row, cut);
    std::string l = CutLabel(p, cut) + " > " + v.ToString();
    out.push_back({l, {{SumOf(p, kThird, cut), lp::Relation::kGt, v, l}}});
  }
  return out;
}

/// Disjuncts of "C3 does not strictly dominate `row` under `pref`": all
/// equal, or C3 smaller at some non-final cut.
std::vector<Disjunct> DoesNotDominate(const Profile& p, const WeakOrder& pref,
                                      std::span<const Rational> row) {
  std::vector<Disjunct> out;
  const auto cuts = Cuts(pref);
  Disjunct eq;
  if (pref.IsStrict()) {
    const auto order = pref.Linearized();
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      Entry e{kThird, order[k]};
      std::string l = EntryName(p, e) + " = " + row[order[k].index].ToString();
      eq.rows.emplace_back(lp::LinearExpr(Var(p, e)), lp::Relation::kEq,
                           row[order[k].index], l);
      eq.label += (eq.label.empty() ? "" : ", ") + l;
    }
  } else {
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      Rational v = RowSum(row, cuts[k]);
      std::string l = CutLabel(p, cuts[k]) + " = " + v.ToString();
      eq.rows.emplace_back(SumOf(p, kThird, cuts[k]), lp::Relation::kEq, v, l);
      eq.label += (eq.label.empty() ? "" : ", ") + l;
    }
  }
  out.push_back(std::move(eq));
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    Rational v = RowSum(row, cuts[k]);
    std::string l = CutLabel(p, cuts[k]) + " < " + v.ToString();
    out.push_back({l, {{SumOf(p, kThird, cuts[k]), lp::Relation::kLt, v, l}}});
  }
  char letter = 'a';
  for (Disjunct& d : out) d.label = std::string("(") + letter++ + ") " + d.label;
  return out;
}

lp::LinearSystem With(lp::LinearSystem sys, const Disjunct& d) {
  for (const auto& [e, rel, v, l] : d.rows) sys.AddConstraint(e, rel, v, l);
  return sys;
}

/// Optimum over `sys`; when `sys` has strict rows and is empty, the
/// certificate refers to `sys` itself, otherwise the bound is taken over its
/// weak closure.
BoundProof Bound(std::string label, const lp::LinearSystem& sys,
                 lp::LinearExpr objective, bool minimize) {
  BoundProof b;
  b.label = std::move(label);
  b.objective = std::move(objective);
  b.minimize = minimize;
  if (sys.HasStrict()) {
    lp::FeasibilityResult f = lp::LpFeasible(sys);
    if (!f.feasible) {
      b.system = sys;
      b.infeasibility = f.certificate;
      return b;
    }
  }
  b.system = sys.WeakClosure();
  lp::OptimizationResult r = minimize ? lp::LpMinimize(b.system, b.objective)
                                      : lp::LpMaximize(b.system, b.objective);
  if (r.status == lp::LpStatus::kInfeasible) {
    b.system = sys;
    b.infeasibility = r.infeasibility;
    if (sys.HasStrict()) b.infeasibility = lp::LpFeasible(sys).certificate;
    return b;
  }
  if (r.status == lp::LpStatus::kUnbounded)
    throw Error(ErrorCode::kVerificationFailure, b.label + ": unbounded");
  b.feasible = true;
  b.value = r.optimum;
  b.dual = r.dual;
  return b;
}

std::optional<std::string> CheckBound(const BoundProof& b) {
  std::string why;
  if (!b.feasible) {
    if (!b.infeasibility) return b.label + ": missing certificate";
    if (!lp::VerifyInfeasibility(b.system, *b.infeasibility, &why))
      return b.label + ": " + why;
    return std::nullopt;
  }
  bool ok = b.minimize
                ? lp::VerifyUpperBound(b.system, -b.objective, b.dual, -b.value, &why)
                : lp::VerifyUpperBound(b.system, b.objective, b.dual, b.value, &why);
  if (!ok) return b.label + ": " + why;
  return std::nullopt;
}

ObjectId ObjB() { return ObjectId{1}; }
ObjectId ObjC() { return ObjectId{2}; }

lp::LinearExpr BPlusC(const Profile& p) {
  return SumOf(p, kThird, {ObjB(), ObjC()});
}

lp::LinearSystem BSystem(const Profile& p, const std::vector<Refutation>& facts,
                         const Rational& cut_bound) {
  lp::LinearSystem sys = Region(p, facts);
  const auto cut = Cuts(p.pref(kThird)).front();
  sys.AddConstraint(SumOf(p, kThird, cut), lp::Relation::kGe, cut_bound,
                    CutLabel(p, cut) + " >= " + cut_bound.ToString());
  return sys;
}

lp::LinearSystem CaseSystem(const Profile& p, const std::vector<Refutation>& facts,
                            const Rational& b_bound, const Disjunct& d) {
  lp::LinearSystem sys = Region(p, facts);
  Entry b{kThird, ObjB()};
  sys.AddConstraint(Var(p, b), lp::Relation::kGe, b_bound,
                    EntryName(p, b) + " >= " + b_bound.ToString());
  return With(std::move(sys), d);
}

void CheckTree(const Profile& p, const Refutation& r, std::vector<std::string>& bad) {
  const std::string where = "zero fact " + EntryName(p, r.target) + ": ";
  if (r.nodes.empty()) {
    bad.push_back(where + "empty case split");
    return;
  }
  std::vector<int> seen(r.nodes.size(), 0);
  std::vector<std::pair<std::size_t, std::pair<std::vector<Entry>, std::vector<Entry>>>>
      todo{{0, {{r.target}, {}}}};
  while (!todo.empty()) {
    auto [idx, sets] = todo.back();
    todo.pop_back();
    if (idx >= r.nodes.size() || seen[idx]++) {
      bad.push_back(where + "malformed tree");
      return;
    }
    const RefutationNode& node = r.nodes[idx];
    if (node.positive != Sorted(sets.first) || node.zero != Sorted(sets.second)) {
      bad.push_back(where + "node " + std::to_string(idx) + " does not match its parent's split");
      continue;
    }
    lp::LinearSystem sys = NodeSystem(p, node.positive, node.zero);
    if (sys.ToString() != node.system.ToString()) {
      bad.push_back(where + "node " + std::to_string(idx) + " system differs from rebuild");
      continue;
    }
    std::string why;
    switch (node.kind) {
      case RefutationNode::Kind::kInfeasible:
        if (!node.certificate || !lp::VerifyInfeasibility(sys, *node.certificate, &why))
          bad.push_back(where + "node " + std::to_string(idx) + ": " + why);
        break;
      case RefutationNode::Kind::kCycle: {
        if (!node.cycle) {
          bad.push_back(where + "cycle missing");
          break;
        }
        if (auto e = CheckCyclePreferences(*node.cycle, p)) bad.push_back(where + *e);
        for (Entry h : Holdings(*node.cycle))
          if (!Contains(node.positive, h))
            bad.push_back(where + EntryName(p, h) + " > 0 is not part of the branch");
        if (!sys.Satisfies(node.witness)) {
          bad.push_back(where + "witness outside the branch");
          break;
        }
        if (auto e = CheckTradingCycle(*node.cycle, PointToMatrix(node.witness, p.size()), p))
          bad.push_back(where + *e);
        break;
      }
      case RefutationNode::Kind::kSplit: {
        if (node.split.empty() || node.children.size() != node.split.size() + 1) {
          bad.push_back(where + "bad split");
          break;
        }
        for (Entry e : node.split)
          if (Contains(node.positive, e) || Contains(node.zero, e))
            bad.push_back(where + "split entry already decided");
        auto all = node.positive;
        all.insert(all.end(), node.split.begin(), node.split.end());
        todo.push_back({node.children[0], {all, node.zero}});
        auto grow = node.positive;
        for (std::size_t k = 0; k < node.split.size(); ++k) {
          auto z = node.zero;
          z.push_back(node.split[k]);
          todo.push_back({node.children[k + 1], {grow, z}});
          grow.push_back(node.split[k]);
        }
        break;
      }
    }
  }
  if (std::count(seen.begin(), seen.end(), 0) != 0) bad.push_back(where + "unreachable nodes");
}

std::string NodeLabel(const Profile& p, const Refutation& r, const RefutationNode& node) {
  std::vector<std::pair<Entry, const char*>> facts;
  for (Entry e : node.positive)
    if (e != r.target) facts.push_back({e, " > 0"});
  for (Entry e : node.zero) facts.push_back({e, " = 0"});
  std::sort(facts.begin(), facts.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::string s = "{DS, " + EntryName(p, r.target) + " > 0";
  for (const auto& [e, rel] : facts) s += ", " + EntryName(p, e) + rel;
  return s + "}";
}

std::string Matrix(const Assignment& a, const Profile& p, const std::string& indent) {
  std::ostringstream os;
  for (std::size_t i = 0; i < a.size(); ++i) {
    os << indent << p.agent_label(AgentId{i}) << ':';
    for (std::size_t j = 0; j < a.size(); ++j) os << ' ' << a.at(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace

TheoremCertificate VerifyImpossibilityTheorem(std::size_t n) {
  if (n < 3 || n > 5) throw Error(ErrorCode::kSize, "theorem check supports n = 3, 4, 5");
  TheoremCertificate cert;
  cert.n = n;
  Profiles ps = MakeProfiles(n);
  cert.profile = ps.truthful;
  cert.profile_prime = ps.prime;
  cert.profile_double = ps.dbl;
  cert.expected_ps_profile = ExpectedPs(n);
  cert.expected_ps_prime = ExpectedPsPrime(n);

  auto fail = [&](const std::string& step, const std::string& what) {
    cert.failures.push_back(step + ": " + what);
  };

  // 1
  cert.ps_profile = Ps(cert.profile);
  cert.ps_prime = Ps(cert.profile_prime);
  if (!(cert.ps_profile == cert.expected_ps_profile)) fail("step 1", "ps(P) differs");
  if (!(cert.ps_prime == cert.expected_ps_prime)) fail("step 1", "ps(P') differs");

  // 2
  try {
    Refuter refuter(cert.profile_double, &cert.reduction_log);
    for (Entry t : ZeroTargets(n))
      cert.zero_facts.push_back(
          refuter.Run(t, t.object == ObjectId{0} ? SuppliedCycles() : std::vector<TradingCycle>{}));
  } catch (const Error& e) {
    fail("step 2", e.what());
    return cert;
  }

  // 3
  const Profile& pd = cert.profile_double;
  const auto row = cert.ps_profile.row(kThird);
  const auto first_cut = Cuts(pd.pref(kThird)).front();
  bool have = false;
  for (const Disjunct& d : NotDominatedBy(pd, pd.pref(kThird), row)) {
    BoundProof b = Bound(d.label, With(DsSystem(pd), d),
                         SumOf(pd, kThird, first_cut), true);
    if (b.feasible && (!have || b.value < cert.cut_bound)) {
      cert.cut_bound = b.value;
      have = true;
    }
    cert.cut_cases.push_back(std::move(b));
  }
  if (!have) {
    fail("step 3", "every disjunct is infeasible");
    return cert;
  }
  cert.b_bound = Bound("minimum of C3b", BSystem(pd, cert.zero_facts, cert.cut_bound),
                       lp::LinearExpr(Var(pd, {kThird, ObjB()})), true);
  cert.sum_max = Bound("maximum of C3b + C3c", Region(pd, cert.zero_facts), BPlusC(pd), false);
  cert.sum_min = Bound("minimum of C3b + C3c", Region(pd, cert.zero_facts), BPlusC(pd), true);
  if (!cert.b_bound.feasible) fail("step 3", "C3b bound system infeasible");
  if (!cert.sum_max.feasible || cert.sum_max.value != 1 || !cert.sum_min.feasible ||
      cert.sum_min.value != 1)
    fail("step 3", "C3b + C3c is not fixed at 1");
  if (!cert.failures.empty()) return cert;

  // 4
  const Profile& pp = cert.profile_prime;
  for (const Disjunct& d : DoesNotDominate(pd, pp.pref(kThird), cert.ps_prime.row(kThird))) {
    CaseRefutation c;
    c.label = d.label;
    c.system = CaseSystem(pd, cert.zero_facts, cert.b_bound.value, d);
    lp::FeasibilityResult r = lp::LpFeasible(c.system);
    if (r.feasible) {
      fail("step 4", "case " + d.label + " is feasible");
      continue;
    }
    c.certificate = *r.certificate;
    cert.cases.push_back(std::move(c));
  }
  if (!cert.failures.empty()) return cert;

  cert.failures = RevalidateCertificate(cert);
  cert.verified = cert.failures.empty();
  return cert;
}

std::vector<std::string> RevalidateCertificate(const TheoremCertificate& cert) {
  std::vector<std::string> bad;
  if (cert.n < 3 || cert.n > 5) return {"unsupported n"};
  const std::size_t n = cert.n;
  Profiles ps = MakeProfiles(n);
  if (!(ps.truthful == cert.profile) || !(ps.prime == cert.profile_prime) ||
      !(ps.dbl == cert.profile_double))
    bad.push_back("profiles differ from the construction");

  // 1
  if (!(ExpectedPs(n) == cert.expected_ps_profile) ||
      !(ExpectedPsPrime(n) == cert.expected_ps_prime))
    bad.push_back("step 1: expected matrices altered");
  if (!(Ps(ps.truthful) == ExpectedPs(n)) || !(cert.ps_profile == ExpectedPs(n)))
    bad.push_back("step 1: ps(P) mismatch");
  if (!(Ps(ps.prime) == ExpectedPsPrime(n)) || !(cert.ps_prime == ExpectedPsPrime(n)))
    bad.push_back("step 1: ps(P') mismatch");
  if (!bad.empty()) return bad;

  // 2
  const auto targets = ZeroTargets(n);
  if (cert.zero_facts.size() != targets.size()) return {"step 2: wrong number of zero facts"};
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (cert.zero_facts[k].target != targets[k]) bad.push_back("step 2: wrong target");
    else CheckTree(ps.dbl, cert.zero_facts[k], bad);
  }
  if (!bad.empty()) return bad;

  // 3
  const Profile& pd = ps.dbl;
  const auto first_cut = Cuts(pd.pref(kThird)).front();
  const auto disjuncts = NotDominatedBy(pd, pd.pref(kThird), ExpectedPs(n).row(kThird));
  if (disjuncts.size() != cert.cut_cases.size()) return {"step 3: disjunct count"};
  std::optional<Rational> lowest;
  for (std::size_t k = 0; k < disjuncts.size(); ++k) {
    const BoundProof& b = cert.cut_cases[k];
    const lp::LinearSystem rebuilt = With(DsSystem(pd), disjuncts[k]);
    if (b.system.ToString() !=
            (b.feasible ? rebuilt.WeakClosure() : rebuilt).ToString() ||
        !b.minimize || !(b.objective.terms() == SumOf(pd, kThird, first_cut).terms()))
      bad.push_back("step 3: disjunct " + disjuncts[k].label + " altered");
    if (auto e = CheckBound(b)) bad.push_back("step 3: " + *e);
    if (b.feasible && (!lowest || b.value < *lowest)) lowest = b.value;
  }
  if (!lowest || *lowest != cert.cut_bound) bad.push_back("step 3: cut bound mismatch");
  if (cert.b_bound.system.ToString() !=
          BSystem(pd, cert.zero_facts, cert.cut_bound).ToString() ||
      !cert.b_bound.minimize || !cert.b_bound.feasible ||
      !(cert.b_bound.objective.terms() ==
        lp::LinearExpr(Var(pd, {kThird, ObjB()})).terms()))
    bad.push_back("step 3: C3b bound altered");
  if (auto e = CheckBound(cert.b_bound)) bad.push_back("step 3: " + *e);
  const std::string region = Region(pd, cert.zero_facts).ToString();
  for (const BoundProof* b : {&cert.sum_max, &cert.sum_min}) {
    if (b->system.ToString() != region || !b->feasible || b->value != 1 ||
        !(b->objective.terms() == BPlusC(pd).terms()))
      bad.push_back("step 3: " + b->label + " altered");
    if (auto e = CheckBound(*b)) bad.push_back("step 3: " + *e);
  }
  if (cert.sum_max.minimize || !cert.sum_min.minimize) bad.push_back("step 3: bound direction");
  if (!bad.empty()) return bad;

  // 4
  const auto cases = DoesNotDominate(pd, ps.prime.pref(kThird), ExpectedPsPrime(n).row(kThird));
  if (cases.size() != cert.cases.size()) return {"step 4: case count"};
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const CaseRefutation& c = cert.cases[k];
    lp::LinearSystem sys = CaseSystem(pd, cert.zero_facts, cert.b_bound.value, cases[k]);
    std::string why;
    if (c.system.ToString() != sys.ToString()) bad.push_back("step 4: " + cases[k].label + " altered");
    else if (!lp::VerifyInfeasibility(sys, c.certificate, &why))
      bad.push_back("step 4: " + cases[k].label + ": " + why);
  }
  return bad;
}

std::string FormatTranscript(const TheoremCertificate& cert) {
  std::ostringstream os;
  const Profile& pd = cert.profile_double;
  auto third = [&](const Profile& p) { return FormatWeakOrder(p.pref(kThird), p); };
  os << "Impossibility check for n = " << cert.n << "\n";
  os << "P:   " << third(cert.profile) << " for agent 3\n";
  os << "P':  " << third(cert.profile_prime) << " for agent 3\n";
  os << "P'': " << third(pd) << " for agent 3\n";
  os << "other agents:\n";
  for (std::size_t i = 0; i < pd.size(); ++i)
    if (i != kThird.index)
      os << "  " << pd.agent_label(AgentId{i}) << ": " << FormatWeakOrder(pd.pref(AgentId{i}), pd)
         << "\n";
  os << "f is an SD-efficient extension of PS; C = f(P'').\n";
  if (cert.n == 3)
    os << "With three agents ex post efficiency and SD-efficiency coincide.\n\n";
  else
    os << "With more than three agents this covers SD-efficient extensions only.\n\n";

  os << "Step 1. f(P) = ps(P) and f(P') = ps(P'), both profiles being strict.\n";
  os << "  ps(P):\n" << Matrix(cert.ps_profile, cert.profile, "    ");
  os << "  ps(P'):\n" << Matrix(cert.ps_prime, cert.profile_prime, "    ");
  os << "  expected matrices: "
     << (cert.ps_profile == cert.expected_ps_profile && cert.ps_prime == cert.expected_ps_prime
             ? "match"
             : "MISMATCH")
     << "\n\n";

  if (!cert.zero_facts.empty()) {
    os << "Step 2. SD-efficiency of C forces zero entries.\n";
    for (const Refutation& r : cert.zero_facts) {
      os << "  " << EntryName(pd, r.target) << " = 0 (" << r.nodes.size() << " branches)\n";
      std::function<void(std::size_t, int)> walk = [&](std::size_t idx, int depth) {
        const RefutationNode& node = r.nodes[idx];
        std::string pad(4 + 2 * depth, ' ');
        if (node.kind == RefutationNode::Kind::kSplit) {
          for (std::size_t c : node.children) walk(c, depth);
          return;
        }
        os << pad << NodeLabel(pd, r, node) << ": ";
        if (node.kind == RefutationNode::Kind::kInfeasible)
          os << "infeasible\n" << pad << "  " << lp::DescribeInfeasibility(node.system, *node.certificate) << "\n";
        else
          os << "trading cycle " << FormatTradingCycle(*node.cycle, pd)
             << (node.supplied ? "" : " (found at witness)") << "\n";
      };
      walk(0, 0);
    }
    os << "\n";
  }

  if (!cert.cut_cases.empty()) {
    os << "Step 3. Agent 3 at P'' reporting " << third(cert.profile) << " gets ps(P)(3) = (";
    const auto row = cert.ps_profile.row(kThird);
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? ", " : "") << row[j];
    os << "), which must not strictly dominate C3 under " << third(pd) << ".\n";
    for (const BoundProof& b : cert.cut_cases) {
      os << "  " << b.label << ": ";
      if (b.feasible) os << "minimum of " << b.system.FormatExpr(b.objective) << " is " << b.value << "\n";
      else os << "infeasible\n";
    }
    os << "  hence C3a + C3b >= " << cert.cut_bound << "\n";
    os << "  with the zero facts: C3b >= " << cert.b_bound.value << "\n";
    os << "  C3b + C3c lies in [" << cert.sum_min.value << ", " << cert.sum_max.value << "]\n\n";
  }

  if (!cert.cases.empty()) {
    os << "Step 4. Agent 3 at P' reporting " << third(pd)
       << " gets C3, which must not strictly dominate ps(P')(3) = (";
    const auto row = cert.ps_prime.row(kThird);
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? ", " : "") << row[j];
    os << ") under " << third(cert.profile_prime) << ".\n";
    for (const CaseRefutation& c : cert.cases)
      os << "  " << c.label << ": infeasible\n    "
         << lp::DescribeInfeasibility(c.system, c.certificate) << "\n";
    os << "\n";
  }

  for (const std::string& f : cert.failures) os << "FAILED " << f << "\n";
  os << (cert.verified ? "Result: all cases infeasible\n" : "Result: verification failed\n");
  return os.str();
}

}  // namespace randassign
