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

#include <set>

#include "doctest.h"
#include "randassign/efficiency.hpp"
#include "randassign/error.hpp"
#include "randassign/mechanisms.hpp"
#include "support.hpp"

using namespace randassign;
using testing_support::Rng;
using testing_support::Uniform;

namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

Assignment M(std::vector<std::vector<Rational>> rows) { return Assignment::Validate(std::move(rows)); }

bool Simple(const TradingCycle& c) {
  std::set<std::size_t> agents, objects;
  for (const auto& s : c.steps) {
    agents.insert(s.agent.index);
    objects.insert(s.object.index);
  }
  return agents.size() == c.size() && objects.size() == c.size();
}

// closed walk along holdings, may revisit agents and objects
std::optional<TradingCycle> RandomWalk(Rng& rng, const Assignment& a, const Profile& p,
                                       std::size_t len) {
  const std::size_t n = p.size();
  TradingCycle c;
  std::size_t o = Uniform(rng, 0, n - 1);
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<std::size_t> holders;
    for (std::size_t i = 0; i < n; ++i)
      if (a.at(i, o).Sign() > 0) holders.push_back(i);
    const std::size_t i = holders[Uniform(rng, 0, holders.size() - 1)];
    c.steps.push_back({ObjectId{o}, AgentId{i}, false});
    std::vector<std::size_t> up;
    for (std::size_t x = 0; x < n; ++x)
      if (p.pref(AgentId{i}).WeaklyPrefers(ObjectId{x}, ObjectId{o})) up.push_back(x);
    o = up[Uniform(rng, 0, up.size() - 1)];
  }
  if (o != c.steps.front().object.index) return std::nullopt;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const auto& s = c.steps[j];
    c.steps[j].strict =
        p.pref(s.agent).StrictlyPrefers(c.steps[(j + 1) % c.size()].object, s.object);
  }
  if (CheckTradingCycle(c, a, p)) return std::nullopt;
  return c;
}

}  // namespace

TEST_SUITE("efficiency") {

TEST_CASE("a known cycle") {
  Profile p = ParseProfile("1: a > b > c\n2: a > c > b\n3: a > b > c\n");
  const Rational h(1, 2), z(0);
  Assignment m = M({{z, h, h}, {h, h, z}, {h, z, h}});
  auto c = DetectTradingCycle(m, p);
  REQUIRE(c);
  CHECK_FALSE(CheckTradingCycle(*c, m, p));
  CHECK_FALSE(IsSdEfficient(m, p));
  CHECK(IsSdEfficient(Ps(p), p));
  CHECK(FormatTradingCycle(*c, p).find("->") != std::string::npos);
}

TEST_CASE("cycle through an indifferent agent") {
  Profile p = ParseProfile("1: a > b > c\n2: a > c > b\n3: a ~ b > c\n");
  const Rational h(1, 2), z(0);
  Assignment m = M({{h, h, z}, {z, z, 1}, {h, h, z}});
  auto c = DetectTradingCycle(m, p);
  REQUIRE(c);
  REQUIRE(c->size() == 2);
  CHECK(c->steps[0] == CycleStep{ObjectId{1}, AgentId{0}, true});
  CHECK(c->steps[1] == CycleStep{ObjectId{0}, AgentId{2}, false});
  CHECK(ReduceTradingCycle(*c, m, p) == *c);
}

TEST_CASE("trade graph edges carry a holder") {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    Profile p = testing_support::RandomProfile(rng, 3, false);
    Assignment a = testing_support::RandomBistochastic(rng, 3, 4);
    auto g = TradeGraph::Build(a, p);
    for (const auto& e : g.Edges()) {
      CHECK(a.at(e.agent, e.from).Sign() > 0);
      CHECK(p.pref(e.agent).WeaklyPrefers(e.to, e.from));
      if (e.strict) CHECK(p.pref(e.agent).StrictlyPrefers(e.to, e.from));
    }
  }
}

TEST_CASE("detection agrees with a brute-force walk search") {
  Rng rng(99);
  for (int t = 0; t < 1500; ++t) {
    Profile p = testing_support::RandomProfile(rng, 3, t % 3 != 0);
    Assignment a = testing_support::RandomBistochastic(rng, 3, Uniform(rng, 1, 6));
    auto c = DetectTradingCycle(a, p);
    CHECK(c.has_value() == testing_support::HasTradingCycleBrute(a, p, 6));
    if (c) {
      CHECK_FALSE(CheckTradingCycle(*c, a, p));
      std::set<std::size_t> objects;
      for (const auto& s : c->steps) objects.insert(s.object.index);
      CHECK(objects.size() == c->size());
      TradingCycle r = ReduceTradingCycle(*c, a, p);
      CHECK(Simple(r));
      CHECK(r.size() <= 3);
    }
  }
}

TEST_CASE("cycle-freeness matches the dominance LP") {
  Rng rng(8);
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 3 + t % 2;
    Profile p = testing_support::RandomProfile(rng, n, t % 2 == 0);
    Assignment a = testing_support::RandomBistochastic(rng, n, Uniform(rng, 1, 5));
    CHECK(IsSdEfficient(a, p) == testing_support::SdEfficientByLp(a, p));
  }
}

TEST_CASE("reduction yields simple cycles") {
  Rng rng(21);
  int reduced = 0;
  for (int t = 0; t < 3000 && reduced < 300; ++t) {
    const std::size_t n = 3 + t % 3;
    Profile p = testing_support::RandomProfile(rng, n, false);
    Assignment a = testing_support::RandomBistochastic(rng, n, 5);
    auto walk = RandomWalk(rng, a, p, Uniform(rng, 2, 9));
    if (!walk) continue;
    std::vector<std::string> log;
    TradingCycle r = ReduceTradingCycle(*walk, a, p, &log);
    CHECK_FALSE(CheckTradingCycle(r, a, p));
    CHECK(Simple(r));
    CHECK(r.size() <= n);
    if (Simple(*walk)) CHECK(r.size() <= walk->size());
    ++reduced;
  }
  CHECK(reduced >= 100);
}

TEST_CASE("doubled cycles reduce") {
  Profile p = ParseProfile("1: a > b > c\n2: a > c > b\n3: a > b > c\n");
  const Rational h(1, 2), z(0);
  Assignment m = M({{z, h, h}, {h, h, z}, {h, z, h}});
  auto c = *DetectTradingCycle(m, p);
  TradingCycle twice = c;
  twice.steps.insert(twice.steps.end(), c.steps.begin(), c.steps.end());
  CHECK_FALSE(CheckTradingCycle(twice, m, p));
  TradingCycle r = ReduceTradingCycle(twice, m, p);
  CHECK(Simple(r));
  CHECK_FALSE(CheckTradingCycle(r, m, p));
}

TEST_CASE("reduction rejects non-cycles") {
  Profile p = ParseProfile("1: a > b\n2: b > a\n");
  TradingCycle bogus{{{ObjectId{0}, AgentId{0}, false}, {ObjectId{1}, AgentId{1}, false}}};
  CHECK(CodeOf([&] { ReduceTradingCycle(bogus, Assignment::Identity(2), p); }) ==
        ErrorCode::kContract);
}

TEST_CASE("pareto optimal matchings") {
  for (const auto& a : EnumerateWeakOrders(3))
    for (const auto& b : EnumerateWeakOrders(3))
      for (const auto& c : EnumerateWeakOrders(3)) {
        Profile p = Profile::WithDefaultLabels({a, b, c});
        std::vector<std::vector<std::size_t>> got;
        for (const auto& d : EnumerateParetoOptimalDiscrete(p)) {
          std::vector<std::size_t> v;
          for (ObjectId o : d.objects()) v.push_back(o.index);
          got.push_back(v);
        }
        CHECK(got == testing_support::ParetoOptimalByDefinition(p));
      }
}

TEST_CASE("ex post decomposition rebuilds the matrix") {
  Rng rng(31);
  int efficient = 0, not_efficient = 0;
  for (int t = 0; t < 300; ++t) {
    Profile p = testing_support::RandomProfile(rng, 3, false);
    Assignment a = testing_support::RandomBistochastic(rng, 3, Uniform(rng, 1, 6));
    auto r = IsExPostEfficient(a, p);
    if (r.efficient) {
      ++efficient;
      std::vector<std::vector<Rational>> sum(3, std::vector<Rational>(3));
      Rational total;
      for (const auto& [d, w] : r.decomposition) {
        CHECK(w.Sign() > 0);
        CHECK(IsSdEfficient(d.ToAssignment(), p));
        total += w;
        for (std::size_t i = 0; i < 3; ++i) sum[i][d.object_of(AgentId{i}).index] += w;
      }
      CHECK(total == 1);
      CHECK(M(sum) == a);
    } else {
      ++not_efficient;
      REQUIRE(r.certificate);
      CHECK(lp::VerifyInfeasibility(r.system, *r.certificate));
    }
  }
  CHECK(efficient > 20);
  CHECK(not_efficient > 20);
}

TEST_CASE("the two efficiency notions coincide for three agents") {
  Rng rng(2);
  for (int t = 0; t < 300; ++t) {
    Profile p = testing_support::RandomProfile(rng, 3, false);
    Assignment a = testing_support::RandomBistochastic(rng, 3, 6);
    auto r = CheckExPostSdEquivalence(p, a);
    CHECK(r.consistent);
    CHECK(r.cycle.has_value() == !r.sd_efficient);
  }
  Rng r4(3);
  Profile p4 = testing_support::RandomProfile(r4, 4, true);
  CHECK(CodeOf([&] { CheckExPostSdEquivalence(p4, Ps(p4)); }) == ErrorCode::kDomain);
  CHECK(CheckSdImpliesExPost(p4, Ps(p4)).consistent);
}

TEST_CASE("rsd can waste probability") {
  Profile p = ParseProfile("1: a > b > c > d\n2: a > b > c > d\n3: b > a > d > c\n4: b > a > d > c\n");
  Assignment r = Rsd(p);
  auto c = DetectTradingCycle(r, p);
  REQUIRE(c);
  CHECK_FALSE(CheckTradingCycle(*c, r, p));
  CHECK_FALSE(testing_support::SdEfficientByLp(r, p));
  CHECK(IsExPostEfficient(r, p).efficient);
}

}
