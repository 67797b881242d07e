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

#include <algorithm>
#include <map>

#include "randassign/error.hpp"
#include "randassign/exactlp.hpp"

namespace randassign::lp {
namespace {

// Working constraint: coef.x <= rhs (or < rhs when strict), or = rhs.
// `prov` holds the multiplier of every original row that produced it.
struct Work {
  std::vector<Rational> coef;
  Rational rhs;
  bool strict = false;
  bool equality = false;
  std::vector<Rational> prov;
};

struct Step {
  std::size_t var;
  bool substitution;
  // Substitution: var = (rhs - sum coef_k x_k) / coef_var of `source`.
  Work source;
  // Elimination: every constraint that mentioned `var` at that point.
  std::vector<Work> bounds;
};

bool AllZero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Rational& r) { return r.IsZero(); });
}

void AddScaled(Work& into, const Work& from, const Rational& k) {
  for (std::size_t j = 0; j < into.coef.size(); ++j) {
    if (!from.coef[j].IsZero()) into.coef[j] += k * from.coef[j];
  }
  into.rhs += k * from.rhs;
  for (std::size_t r = 0; r < into.prov.size(); ++r) {
    if (!from.prov[r].IsZero()) into.prov[r] += k * from.prov[r];
  }
}

// Normalised key: coefficients divided by the first nonzero magnitude.
std::vector<Rational> Key(const Work& w, Rational* scale) {
  *scale = Rational(1);
  for (const auto& c : w.coef) {
    if (!c.IsZero()) {
      *scale = Abs(c);
      break;
    }
  }
  std::vector<Rational> key;
  key.reserve(w.coef.size());
  for (const auto& c : w.coef) key.push_back(c / *scale);
  return key;
}

struct KeyLess {
  bool operator()(const std::vector<Rational>& a,
                  const std::vector<Rational>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

// Keeps the tightest inequality per normalised direction.
std::vector<Work> Dedup(std::vector<Work> in) {
  std::map<std::vector<Rational>, Work, KeyLess> best;
  std::vector<Work> out;
  for (auto& w : in) {
    if (w.equality) {
      out.push_back(std::move(w));
      continue;
    }
    Rational scale;
    auto key = Key(w, &scale);
    Rational bound = w.rhs / scale;
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(std::move(key), std::move(w));
      continue;
    }
    Rational scale_old;
    Key(it->second, &scale_old);
    Rational old_bound = it->second.rhs / scale_old;
    if (bound < old_bound || (bound == old_bound && w.strict && !it->second.strict)) {
      it->second = std::move(w);
    }
  }
  for (auto& [k, w] : best) out.push_back(std::move(w));
  return out;
}

FeasibilityResult Contradiction(const Work& w) {
  FeasibilityResult r;
  r.certificate = InfeasibilityCertificate{w.prov};
  // 0 = c with c > 0 reads as 0 <= -c after flipping
  if (w.equality && w.rhs.Sign() > 0) {
    for (auto& y : r.certificate->multipliers) y = -y;
  }
  return r;
}

bool Violated(const Work& w) {
  // Constraint with all-zero coefficients: 0 <= rhs, 0 < rhs or 0 = rhs.
  if (w.equality) return !w.rhs.IsZero();
  return w.strict ? w.rhs.Sign() <= 0 : w.rhs.Sign() < 0;
}

}  // namespace

FeasibilityResult FourierMotzkinFeasible(const LinearSystem& system,
                                         std::size_t variable_cap) {
  const std::size_t nv = system.num_variables();
  if (nv > variable_cap) {
    throw Error(ErrorCode::kSize, "Fourier-Motzkin is capped at " +
                                      std::to_string(variable_cap) +
                                      " variables, got " + std::to_string(nv));
  }
  const auto& cs = system.constraints();
  const std::size_t nr = cs.size();

  std::vector<Work> work;
  for (std::size_t r = 0; r < nr; ++r) {
    Work w;
    w.coef.resize(nv);
    w.prov.resize(nr);
    for (const auto& [v, c] : cs[r].lhs.terms()) w.coef[v] = c;
    w.rhs = cs[r].rhs;
    w.prov[r] = 1;
    w.strict = IsStrict(cs[r].relation);
    w.equality = cs[r].relation == Relation::kEq;
    if (cs[r].relation == Relation::kGe || cs[r].relation == Relation::kGt) {
      for (auto& c : w.coef) c = -c;
      w.rhs = -w.rhs;
      w.prov[r] = -1;
    }
    work.push_back(std::move(w));
  }
  // Domain bounds -x <= 0 carry no row provenance.
  for (std::size_t v = 0; v < nv; ++v) {
    if (system.domain(VarId{v}) != VarDomain::kNonNegative) continue;
    Work w;
    w.coef.resize(nv);
    w.prov.resize(nr);
    w.coef[v] = -1;
    work.push_back(std::move(w));
  }

  std::vector<Step> steps;
  std::vector<bool> eliminated(nv, false);

  for (std::size_t round = 0; round < nv; ++round) {
    // Drop constant rows, failing on a contradictory one.
    std::vector<Work> kept;
    for (auto& w : work) {
      if (AllZero(w.coef)) {
        if (Violated(w)) return Contradiction(w);
        continue;
      }
      kept.push_back(std::move(w));
    }
    work = Dedup(std::move(kept));

    // Prefer substituting through an equality.
    auto eq = std::find_if(work.begin(), work.end(),
                           [](const Work& w) { return w.equality; });
    if (eq != work.end()) {
      std::size_t var = 0;
      while (eq->coef[var].IsZero()) ++var;
      Work source = *eq;
      work.erase(eq);
      for (auto& w : work) {
        if (w.coef[var].IsZero()) continue;
        AddScaled(w, source, -(w.coef[var] / source.coef[var]));
        w.coef[var] = Rational();
      }
      eliminated[var] = true;
      steps.push_back({var, true, std::move(source), {}});
      continue;
    }

    std::size_t var = nv;
    std::size_t best_cost = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      if (eliminated[v]) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& w : work) {
        if (w.coef[v].Sign() > 0) ++pos;
        if (w.coef[v].Sign() < 0) ++neg;
      }
      const std::size_t cost = pos * neg;
      if (var == nv || cost < best_cost) {
        var = v;
        best_cost = cost;
      }
    }
    if (var == nv) break;

    std::vector<Work> pos, neg, rest;
    for (auto& w : work) {
      if (w.coef[var].Sign() > 0) {
        pos.push_back(std::move(w));
      } else if (w.coef[var].Sign() < 0) {
        neg.push_back(std::move(w));
      } else {
        rest.push_back(std::move(w));
      }
    }
    Step step{var, false, {}, {}};
    step.bounds.insert(step.bounds.end(), pos.begin(), pos.end());
    step.bounds.insert(step.bounds.end(), neg.begin(), neg.end());
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        // (1/p_v) * p + (1/|n_v|) * n cancels var.
        Work combo;
        combo.coef.assign(nv, Rational());
        combo.prov.assign(nr, Rational());
        AddScaled(combo, p, Rational(1) / p.coef[var]);
        AddScaled(combo, n, Rational(1) / -n.coef[var]);
        combo.coef[var] = Rational();
        combo.strict = p.strict || n.strict;
        rest.push_back(std::move(combo));
      }
    }
    work = std::move(rest);
    eliminated[var] = true;
    steps.push_back(std::move(step));
  }
  for (const auto& w : work) {
    if (AllZero(w.coef) && Violated(w)) return Contradiction(w);
  }

  // Back-substitution in reverse elimination order.
  std::vector<Rational> x(nv);
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const std::size_t v = it->var;
    if (it->substitution) {
      Rational rest = it->source.rhs;
      for (std::size_t k = 0; k < nv; ++k) {
        if (k != v && !it->source.coef[k].IsZero()) {
          rest -= it->source.coef[k] * x[k];
        }
      }
      x[v] = rest / it->source.coef[v];
      continue;
    }
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& w : it->bounds) {
      Rational rest = w.rhs;
      for (std::size_t k = 0; k < nv; ++k) {
        if (k != v && !w.coef[k].IsZero()) rest -= w.coef[k] * x[k];
      }
      const Rational bound = rest / w.coef[v];
      if (w.coef[v].Sign() > 0) {
        if (!hi || bound < *hi || (bound == *hi && w.strict)) {
          hi = bound;
          hi_strict = w.strict;
        }
      } else {
        if (!lo || bound > *lo || (bound == *lo && w.strict)) {
          lo = bound;
          lo_strict = w.strict;
        }
      }
    }
    if (lo && hi) {
      x[v] = (*lo == *hi) ? *lo : (*lo + *hi) / Rational(2);
    } else if (lo) {
      x[v] = lo_strict ? *lo + Rational(1) : *lo;
    } else if (hi) {
      x[v] = hi_strict ? *hi - Rational(1) : *hi;
    }
  }
  if (!system.Satisfies(x)) {
    throw Error(ErrorCode::kContract,
                "Fourier-Motzkin back-substitution produced an infeasible point");
  }
  FeasibilityResult r;
  r.feasible = true;
  r.witness = std::move(x);
  return r;
}

}  // namespace randassign::lp
