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

#include "randassign/randassign.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "randassign/core.hpp"
#include "randassign/efficiency.hpp"
#include "randassign/error.hpp"
#include "randassign/mechanisms.hpp"
#include "randassign/serialize.hpp"
#include "randassign/strategyproofness.hpp"
#include "randassign/theorem.hpp"

struct ra_profile {
  randassign::Profile value;
};

struct ra_assignment {
  randassign::Assignment value;
};

namespace {

using namespace randassign;

thread_local std::string g_last_error;

struct BadArgument {
  std::string what;
};

template <typename F>
ra_status Guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return RA_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<ra_status>(static_cast<int>(e.code()));
  } catch (const BadArgument& e) {
    g_last_error = e.what;
    return RA_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RA_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RA_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return RA_ERR_INTERNAL;
  }
}

template <typename T>
const T& Need(const T* p, const char* name) {
  if (!p) throw BadArgument{std::string(name) + " is NULL"};
  return *p;
}

template <typename T>
T& Out(T* p, const char* name) {
  if (!p) throw BadArgument{std::string(name) + " is NULL"};
  return *p;
}

char* Copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Rule NeedRule(const char* name) {
  if (!name) throw BadArgument{"mechanism is NULL"};
  auto rule = RuleByName(name);
  if (!rule) throw BadArgument{std::string("unknown mechanism '") + name + "'"};
  return *rule;
}

SpNotion NeedNotion(const char* name) {
  if (!name) throw BadArgument{"notion is NULL"};
  std::string n = name;
  if (n == "weak-sd") return SpNotion::kWeakSd;
  if (n == "sd") return SpNotion::kSd;
  throw BadArgument{"unknown notion '" + n + "' (weak-sd or sd)"};
}

void SameSize(const Profile& p, const Assignment& a) {
  if (p.size() != a.size())
    throw Error(ErrorCode::kShape, "matrix is " + std::to_string(a.size()) + "x" +
                                       std::to_string(a.size()) + " but the profile has " +
                                       std::to_string(p.size()) + " agents");
}

std::string Lines(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& l : v) s += l + "\n";
  return s;
}

}  // namespace

extern "C" {

const char* ra_last_error(void) { return g_last_error.c_str(); }

const char* ra_status_name(ra_status status) {
  switch (status) {
    case RA_OK: return "ok";
    case RA_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case RA_ERR_INTERNAL: return "internal";
    default:
      if (status >= RA_ERR_MALFORMED_PROFILE && status <= RA_ERR_VERIFICATION)
        return ErrorCodeName(static_cast<ErrorCode>(status));
      return "unknown";
  }
}

const char* ra_version(void) { return "1.0.0"; }

void ra_string_free(char* s) { std::free(s); }

ra_status ra_profile_parse(const char* text, ra_profile** out) {
  return Guard([&] {
    auto& dst = Out(out, "out");
    dst = nullptr;
    Need(text, "text");
    dst = new ra_profile{LoadProfile(text)};
  });
}

void ra_profile_free(ra_profile* profile) { delete profile; }

size_t ra_profile_size(const ra_profile* profile) {
  return profile ? profile->value.size() : 0;
}

ra_status ra_profile_format(const ra_profile* profile, int json, char** out) {
  return Guard([&] {
    const Profile& p = Need(profile, "profile").value;
    Out(out, "out") = Copy(json ? ProfileToJson(p) : FormatProfile(p));
  });
}

ra_status ra_assignment_parse(const char* text, ra_assignment** out) {
  return Guard([&] {
    auto& dst = Out(out, "out");
    dst = nullptr;
    Need(text, "text");
    dst = new ra_assignment{Assignment::Validate(ParseMatrix(text))};
  });
}

void ra_assignment_free(ra_assignment* assignment) { delete assignment; }

size_t ra_assignment_size(const ra_assignment* assignment) {
  return assignment ? assignment->value.size() : 0;
}

ra_status ra_assignment_entry(const ra_assignment* assignment, size_t agent,
                              size_t object, char** out) {
  return Guard([&] {
    const Assignment& a = Need(assignment, "assignment").value;
    if (agent >= a.size() || object >= a.size()) throw BadArgument{"index out of range"};
    Out(out, "out") = Copy(a.at(agent, object).ToString());
  });
}

ra_status ra_assignment_format(const ra_assignment* assignment, const ra_profile* labels,
                               int json, int decimals, char** out) {
  return Guard([&] {
    const Assignment& a = Need(assignment, "assignment").value;
    const Profile* p = labels ? &labels->value : nullptr;
    if (p) SameSize(*p, a);
    std::string s = json ? AssignmentToJson(a, p) + "\n"
                         : FormatAssignment(a, p, decimals < 0 ? std::nullopt
                                                               : std::optional<int>(decimals));
    Out(out, "out") = Copy(s);
  });
}

ra_status ra_run(const char* mechanism, const ra_profile* profile, ra_assignment** out) {
  return Guard([&] {
    auto& dst = Out(out, "out");
    dst = nullptr;
    Rule rule = NeedRule(mechanism);
    dst = new ra_assignment{rule(Need(profile, "profile").value)};
  });
}

ra_status ra_run_trace(const char* mechanism, const ra_profile* profile, char** out) {
  return Guard([&] {
    const Profile& p = Need(profile, "profile").value;
    std::string m = mechanism ? mechanism : "";
    NeedRule(mechanism);
    std::string s;
    if (m == "ps") s = EatingTraceToJson(PsWithTrace(p).trace, p);
    else if (m == "eps") s = EpsPhasesToJson(EpsWithTrace(p).phases, p);
    else if (m == "eps-symmetric") s = EpsPhasesToJson(EpsWithTrace(p, TiePolicy::kSymmetric).phases, p);
    else s = "[]";
    Out(out, "out") = Copy(s + "\n");
  });
}

ra_status ra_check_sd_efficiency(const ra_profile* profile, const ra_assignment* assignment,
                                 int* efficient, char** report, int json) {
  return Guard([&] {
    const Profile& p = Need(profile, "profile").value;
    const Assignment& a = Need(assignment, "assignment").value;
    SameSize(p, a);
    auto& verdict = Out(efficient, "efficient");
    auto& rep = Out(report, "report");
    rep = nullptr;
    auto cycle = DetectTradingCycle(a, p);
    verdict = cycle ? 0 : 1;
    if (cycle) {
      TradingCycle reduced = ReduceTradingCycle(*cycle, a, p);
      rep = Copy(json ? CycleToJson(reduced, p) + "\n" : FormatTradingCycle(reduced, p) + "\n");
    }
  });
}

ra_status ra_check_ex_post(const ra_profile* profile, const ra_assignment* assignment,
                           int* efficient, char** report, int json) {
  return Guard([&] {
    const Profile& p = Need(profile, "profile").value;
    const Assignment& a = Need(assignment, "assignment").value;
    SameSize(p, a);
    auto& verdict = Out(efficient, "efficient");
    auto& rep = Out(report, "report");
    rep = nullptr;
    ExPostResult r = IsExPostEfficient(a, p);
    verdict = r.efficient ? 1 : 0;
    if (r.efficient) {
      if (json) {
        rep = Copy(DecompositionToJson(r.decomposition, p) + "\n");
      } else {
        std::ostringstream os;
        for (const auto& [m, w] : r.decomposition) {
          os << w << " *";
          for (ObjectId o : m.objects()) os << ' ' << p.object_label(o);
          os << '\n';
        }
        rep = Copy(os.str());
      }
    } else if (r.certificate) {
      rep = Copy(json ? LinearSystemToJson(r.system) + "\n"
                      : lp::DescribeInfeasibility(r.system, *r.certificate) + "\n");
    }
  });
}

ra_status ra_check_po_discrete(const ra_profile* profile, const ra_assignment* assignment,
                               int* pareto_optimal, char** report, int json) {
  return Guard([&] {
    const Profile& p = Need(profile, "profile").value;
    const Assignment& a = Need(assignment, "assignment").value;
    SameSize(p, a);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j)
        if (!a.at(i, j).IsZero() && a.at(i, j) != 1)
          throw Error(ErrorCode::kValidation, "matrix is not a permutation matrix");
    ra_status s = ra_check_sd_efficiency(profile, assignment, pareto_optimal, report, json);
    if (s != RA_OK) throw Error(static_cast<ErrorCode>(s), g_last_error);
  });
}

ra_status ra_check_extension(const char* mechanism, const ra_profile* profile, size_t n,
                             int* extends, char** report) {
  return Guard([&] {
    Rule rule = NeedRule(mechanism);
    auto& verdict = Out(extends, "extends");
    auto& rep = Out(report, "report");
    rep = nullptr;
    std::ostringstream os;
    if (profile) {
      const Profile& p = profile->value;
      Assignment got = rule(p), want = Ps(p);
      verdict = got == want;
      os << "profiles checked: 1\n";
      if (!verdict)
        os << rule.name << ":\n" << FormatAssignment(got, &p) << "ps:\n" << FormatAssignment(want, &p);
    } else {
      ExtensionReport r = CheckExtensionOfPs(rule, n);
      verdict = r.extends;
      os << "profiles checked: " << r.profiles_checked << (n > 3 ? " (sampled)" : "") << '\n';
      if (!r.extends)
        os << "first discrepancy:\n" << FormatProfile(*r.discrepancy) << rule.name << ":\n"
           << FormatAssignment(*r.rule_outcome, &*r.discrepancy) << "ps:\n"
           << FormatAssignment(*r.ps_outcome, &*r.discrepancy);
    }
    rep = Copy(os.str());
  });
}

ra_status ra_check_symmetry(const char* mechanism, const ra_profile* profile, int* anonymous,
                            int* neutral, int* equal_treatment, char** report) {
  return Guard([&] {
    Rule rule = NeedRule(mechanism);
    SymmetryReport r = CheckSymmetryProperties(rule, Need(profile, "profile").value);
    Out(anonymous, "anonymous") = r.anonymous;
    Out(neutral, "neutral") = r.neutral;
    Out(equal_treatment, "equal_treatment") = r.equal_treatment;
    Out(report, "report") = Copy(Lines(r.failures));
  });
}

ra_status ra_find_manipulation(const char* mechanism, const ra_profile* profile,
                               const char* notion, int json, int* found, char** witness) {
  return Guard([&] {
    Rule rule = NeedRule(mechanism);
    SpNotion sp = NeedNotion(notion);
    auto& f = Out(found, "found");
    auto& w = Out(witness, "witness");
    w = nullptr;
    auto r = FindManipulation(rule, Need(profile, "profile").value, sp);
    f = r.has_value();
    if (r) w = Copy(json ? WitnessToJson(*r) + "\n" : FormatWitness(*r));
  });
}

ra_status ra_sweep_manipulations(const char* mechanism, size_t n, const char* notion, int json,
                                 size_t* profiles, size_t* violations, char** first_witness) {
  return Guard([&] {
    Rule rule = NeedRule(mechanism);
    SpNotion sp = NeedNotion(notion);
    auto& w = Out(first_witness, "first_witness");
    w = nullptr;
    SweepReport r = SweepManipulations(rule, n, sp, false);
    Out(profiles, "profiles") = r.profiles;
    Out(violations, "violations") = r.violations;
    if (r.first) w = Copy(json ? WitnessToJson(*r.first) + "\n" : FormatWitness(*r.first));
  });
}

ra_status ra_verify_theorem(size_t n, int json, int* verified, char** out) {
  return Guard([&] {
    TheoremCertificate cert = VerifyImpossibilityTheorem(n);
    Out(verified, "verified") = cert.verified;
    Out(out, "out") = Copy(json ? TheoremToJson(cert) + "\n" : FormatTranscript(cert));
  });
}

ra_status ra_enumerate_weak_orders(size_t k, char** out) {
  return Guard([&] {
    auto orders = EnumerateWeakOrders(k);
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < k; ++j) labels.push_back(std::string(1, static_cast<char>('a' + j)));
    std::vector<WeakOrder> prefs(k, orders.empty() ? WeakOrder() : orders.front());
    std::vector<std::string> agents;
    for (std::size_t j = 0; j < k; ++j) agents.push_back(std::to_string(j + 1));
    Profile names(agents, labels, prefs);
    std::string s;
    for (const WeakOrder& w : orders) s += FormatWeakOrder(w, names) + "\n";
    Out(out, "out") = Copy(s);
  });
}

ra_status ra_enumerate_po_matchings(const ra_profile* profile, char** out) {
  return Guard([&] {
    const Profile& p = Need(profile, "profile").value;
    std::string s;
    for (const DiscreteAssignment& m : EnumerateParetoOptimalDiscrete(p)) {
      for (std::size_t i = 0; i < m.size(); ++i)
        s += (i ? " " : "") + p.agent_label(AgentId{i}) + ":" + p.object_label(m.object_of(AgentId{i}));
      s += "\n";
    }
    Out(out, "out") = Copy(s);
  });
}

}  // extern "C"
