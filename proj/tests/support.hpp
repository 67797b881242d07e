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

// Generators and independent reference implementations for the tests.
// Nothing here calls the code it is used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "randassign/core.hpp"
#include "randassign/exactlp.hpp"

namespace testing_support {

using randassign::AgentId;
using randassign::Assignment;
using randassign::ObjectId;
using randassign::Profile;
using randassign::Rational;
using randassign::WeakOrder;

using Rng = std::mt19937_64;

inline std::size_t Uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline WeakOrder RandomStrictOrder(Rng& rng, std::size_t n) {
  std::vector<ObjectId> ids;
  for (std::size_t j = 0; j < n; ++j) ids.push_back(ObjectId{j});
  std::shuffle(ids.begin(), ids.end(), rng);
  return WeakOrder::Strict(ids);
}

/// Shuffle, then cut between neighbours with probability 1/2.
inline WeakOrder RandomWeakOrder(Rng& rng, std::size_t n) {
  std::vector<ObjectId> ids;
  for (std::size_t j = 0; j < n; ++j) ids.push_back(ObjectId{j});
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<std::vector<ObjectId>> classes{{ids[0]}};
  for (std::size_t j = 1; j < n; ++j) {
    if (Uniform(rng, 0, 1)) classes.emplace_back();
    classes.back().push_back(ids[j]);
  }
  return WeakOrder(classes, n);
}

inline Profile RandomProfile(Rng& rng, std::size_t n, bool strict) {
  std::vector<WeakOrder> prefs;
  for (std::size_t i = 0; i < n; ++i)
    prefs.push_back(strict ? RandomStrictOrder(rng, n) : RandomWeakOrder(rng, n));
  return Profile::WithDefaultLabels(std::move(prefs));
}

/// Convex combination of up to `max_terms` random permutation matrices with
/// random positive integer weights.
inline Assignment RandomBistochastic(Rng& rng, std::size_t n, std::size_t max_terms) {
  const std::size_t k = Uniform(rng, 1, max_terms);
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  std::vector<std::int64_t> w(k);
  std::int64_t total = 0;
  for (auto& x : w) total += (x = static_cast<std::int64_t>(Uniform(rng, 1, 12)));
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < n; ++i) m[i][perm[i]] += Rational(w[t], total);
  }
  return Assignment::Validate(std::move(m));
}

/// Random non-negative row with the given total.
inline std::vector<Rational> RandomRow(Rng& rng, std::size_t n, const Rational& total = 1) {
  std::vector<std::int64_t> parts(n);
  std::int64_t sum = 0;
  for (auto& x : parts) sum += (x = static_cast<std::int64_t>(Uniform(rng, 0, 9)));
  if (sum == 0) {
    parts[0] = 1;
    sum = 1;
  }
  std::vector<Rational> row;
  for (auto x : parts) row.push_back(Rational(x, sum) * total);
  return row;
}

/// Moves random fractions of mass to worse objects; the result never
/// dominates the input.
inline std::vector<Rational> PushDown(Rng& rng, const WeakOrder& pref, std::vector<Rational> row) {
  auto order = pref.Linearized();
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    const std::size_t from = order[k].index, to = order[k + 1 + Uniform(rng, 0, order.size() - k - 2)].index;
    Rational moved = row[from] * Rational(static_cast<std::int64_t>(Uniform(rng, 0, 3)), 3);
    row[from] -= moved;
    row[to] += moved;
  }
  return row;
}

// ---- reference implementations ----

/// Ordered Bell numbers: a(0) = 1, a(n) = sum_k C(n, k) a(n - k).
inline std::uint64_t OrderedBell(std::size_t n) {
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    std::uint64_t c = 1;
    for (std::size_t k = 1; k <= m; ++k) {
      c = c * (m - k + 1) / k;
      a[m] += c * a[m - k];
    }
  }
  return a[n];
}

/// Weak SD comparison from the definition: upper contour set of every
/// object. Returns -2 incomparable, -1 q dominates, 0 equal, 1 p dominates.
inline int SdByDefinition(const WeakOrder& pref, const std::vector<Rational>& p,
                          const std::vector<Rational>& q) {
  bool p_better = false, q_better = false;
  const std::size_t n = p.size();
  for (std::size_t o = 0; o < n; ++o) {
    Rational sp, sq;
    for (std::size_t x = 0; x < n; ++x)
      if (pref.class_of(ObjectId{x}) <= pref.class_of(ObjectId{o})) {
        sp += p[x];
        sq += q[x];
      }
    if (sp > sq) p_better = true;
    if (sq > sp) q_better = true;
  }
  if (p_better && q_better) return -2;
  if (p_better) return 1;
  if (q_better) return -1;
  return 0;
}

inline std::vector<std::vector<std::size_t>> AllPermutations(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Pareto optimal matchings by pairwise comparison (no other matching makes
/// everyone weakly and someone strictly better off).
inline std::vector<std::vector<std::size_t>> ParetoOptimalByDefinition(const Profile& p) {
  const auto perms = AllPermutations(p.size());
  std::vector<std::vector<std::size_t>> out;
  for (const auto& m : perms) {
    bool dominated = false;
    for (const auto& other : perms) {
      bool all_weak = true, some_strict = false;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& pref = p.pref(AgentId{i});
        auto mine = pref.class_of(ObjectId{m[i]}), theirs = pref.class_of(ObjectId{other[i]});
        if (theirs > mine) all_weak = false;
        if (theirs < mine) some_strict = true;
      }
      if (all_weak && some_strict) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(m);
  }
  return out;
}

/// Depth-first search over step sequences of length <= max_len, repeats
/// allowed. Returns true if some closed sequence is a trading cycle.
inline bool HasTradingCycleBrute(const Assignment& a, const Profile& p, std::size_t max_len) {
  const std::size_t n = p.size();
  struct Step {
    std::size_t object, agent;
  };
  std::vector<Step> path;
  std::function<bool(bool)> extend = [&](bool strict_seen) -> bool {
    const Step last = path.back();
    const auto& pref = p.pref(AgentId{last.agent});
    for (std::size_t o = 0; o < n; ++o) {
      auto from = pref.class_of(ObjectId{last.object});
      auto to = pref.class_of(ObjectId{o});
      if (to > from) continue;  // must weakly prefer the next object
      const bool strict = strict_seen || to < from;
      if (o == path.front().object && path.size() >= 2 && strict) return true;
      if (path.size() == max_len) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (a.at(i, o).IsZero()) continue;
        path.push_back({o, i});
        if (extend(strict)) return true;
        path.pop_back();
      }
    }
    return false;
  };
  for (std::size_t o = 0; o < n; ++o)
    for (std::size_t i = 0; i < n; ++i) {
      if (a.at(i, o).IsZero()) continue;
      path.assign(1, {o, i});
      if (extend(false)) return true;
    }
  return false;
}

/// SD-efficiency from the definition via LP: p is efficient iff no
/// bistochastic q weakly dominates p for every agent with strict gain
/// somewhere, i.e. the total cut-point slack cannot be made positive.
inline bool SdEfficientByLp(const Assignment& a, const Profile& p) {
  namespace lp = randassign::lp;
  const std::size_t n = p.size();
  lp::LinearSystem sys;
  auto var = [n](std::size_t i, std::size_t j) { return lp::VarId{i * n + j}; };
  for (std::size_t k = 0; k < n * n; ++k) sys.AddVariable("q" + std::to_string(k));
  for (std::size_t i = 0; i < n; ++i) {
    lp::LinearExpr row, col;
    for (std::size_t j = 0; j < n; ++j) {
      row.Add(var(i, j), 1);
      col.Add(var(j, i), 1);
    }
    sys.AddConstraint(row, lp::Relation::kEq, 1);
    sys.AddConstraint(col, lp::Relation::kEq, 1);
  }
  lp::LinearExpr gain;
  Rational base;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pref = p.pref(AgentId{i});
    for (std::size_t o = 0; o < n; ++o) {
      lp::LinearExpr upper;
      Rational mass;
      for (std::size_t x = 0; x < n; ++x)
        if (pref.class_of(ObjectId{x}) <= pref.class_of(ObjectId{o})) {
          upper.Add(var(i, x), 1);
          mass += a.at(i, x);
        }
      sys.AddConstraint(upper, lp::Relation::kGe, mass);
      gain += upper;
      base += mass;
    }
  }
  auto r = lp::LpMaximize(sys, gain);
  return r.status == lp::LpStatus::kOptimal && r.optimum == base;
}

/// Simultaneous eating written from scratch: every agent eats its best
/// remaining object; advance to the next exhaustion event.
inline Assignment PsReference(const Profile& p) {
  const std::size_t n = p.size();
  std::vector<Rational> left(n, Rational(1));
  std::vector<std::vector<Rational>> got(n, std::vector<Rational>(n));
  Rational t;
  while (t < 1) {
    std::vector<std::size_t> target(n);
    std::vector<std::int64_t> eaters(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto order = p.pref(AgentId{i}).Linearized();
      for (ObjectId o : order)
        if (left[o.index] > 0) {
          target[i] = o.index;
          break;
        }
      ++eaters[target[i]];
    }
    Rational step = Rational(1) - t;
    for (std::size_t o = 0; o < n; ++o)
      if (eaters[o] > 0) step = std::min(step, left[o] / Rational(eaters[o]));
    for (std::size_t i = 0; i < n; ++i) got[i][target[i]] += step;
    for (std::size_t o = 0; o < n; ++o) left[o] -= step * Rational(eaters[o]);
    t += step;
  }
  return Assignment::Validate(std::move(got));
}

/// Average of greedy picks over all orders.
inline Assignment RsdReference(const Profile& p) {
  const std::size_t n = p.size();
  const auto perms = AllPermutations(n);
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  const Rational w(1, static_cast<std::int64_t>(perms.size()));
  for (const auto& order : perms) {
    std::vector<bool> taken(n, false);
    for (std::size_t i : order) {
      for (ObjectId o : p.pref(AgentId{i}).Linearized())
        if (!taken[o.index]) {
          taken[o.index] = true;
          m[i][o.index] += w;
          break;
        }
    }
  }
  return Assignment::Validate(std::move(m));
}

/// Max of c.x over {x >= 0, rows} by trying every basis of active
/// constraints (tiny dimensions only). nullopt if infeasible or unbounded
/// within the box [0, 100]^d, which the callers add explicitly.
struct SmallLp {
  std::vector<std::vector<Rational>> a;  // a.x <= b
  std::vector<Rational> b;
  std::vector<Rational> c;
};

inline bool SolveSquare(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs,
                        std::vector<Rational>& x) {
  const std::size_t d = rhs.size();
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && m[piv][col].IsZero()) ++piv;
    if (piv == d) return false;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || m[r][col].IsZero()) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < d; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  x.assign(d, Rational());
  for (std::size_t r = 0; r < d; ++r) x[r] = rhs[r] / m[r][r];
  return true;
}

inline std::optional<Rational> MaxByVertices(const SmallLp& lp) {
  const std::size_t d = lp.c.size();
  std::vector<std::vector<Rational>> rows = lp.a;
  std::vector<Rational> rhs = lp.b;
  for (std::size_t k = 0; k < d; ++k) {  // -x_k <= 0
    std::vector<Rational> r(d);
    r[k] = -1;
    rows.push_back(r);
    rhs.push_back(0);
  }
  std::optional<Rational> best;
  std::vector<std::size_t> pick(d);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
    if (depth == d) {
      std::vector<std::vector<Rational>> m;
      std::vector<Rational> r;
      for (std::size_t k : pick) {
        m.push_back(rows[k]);
        r.push_back(rhs[k]);
      }
      std::vector<Rational> x;
      if (!SolveSquare(m, r, x)) return;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        Rational s;
        for (std::size_t j = 0; j < d; ++j) s += rows[k][j] * x[j];
        if (s > rhs[k]) return;
      }
      Rational v;
      for (std::size_t j = 0; j < d; ++j) v += lp.c[j] * x[j];
      if (!best || v > *best) best = v;
      return;
    }
    for (std::size_t k = start; k < rows.size(); ++k) {
      pick[depth] = k;
      choose(k + 1, depth + 1);
    }
  };
  choose(0, 0);
  return best;
}

}  // namespace testing_support
