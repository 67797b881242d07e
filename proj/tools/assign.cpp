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

// assign: command-line front end over the randassign C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "randassign/randassign.h"

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;

struct InputError {
  std::string what;
};

struct Text {
  char* s = nullptr;
  ~Text() { ra_string_free(s); }
  const char* str() const { return s ? s : ""; }
};

using ProfilePtr = std::unique_ptr<ra_profile, decltype(&ra_profile_free)>;
using MatrixPtr = std::unique_ptr<ra_assignment, decltype(&ra_assignment_free)>;

void Check(ra_status s) {
  if (s != RA_OK) throw InputError{std::string(ra_status_name(s)) + ": " + ra_last_error()};
}

std::string ReadFile(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot read '" + path + "'"};
  return {std::istreambuf_iterator<char>(in), {}};
}

ProfilePtr LoadProfile(const std::string& path) {
  ra_profile* p = nullptr;
  ra_status s = ra_profile_parse(ReadFile(path).c_str(), &p);
  if (s != RA_OK) throw InputError{path + ": " + ra_last_error()};
  return {p, ra_profile_free};
}

MatrixPtr LoadMatrix(const std::string& path) {
  ra_assignment* a = nullptr;
  ra_status s = ra_assignment_parse(ReadFile(path).c_str(), &a);
  if (s != RA_OK) throw InputError{path + ": " + ra_last_error()};
  return {a, ra_assignment_free};
}

MatrixPtr Run(const std::string& mechanism, const ra_profile* p) {
  ra_assignment* a = nullptr;
  Check(ra_run(mechanism.c_str(), p, &a));
  return {a, ra_assignment_free};
}

struct RunArgs {
  std::string mechanism, profile;
  bool json = false, trace = false;
  std::optional<int> decimals;
};

int DoRun(const RunArgs& a) {
  ProfilePtr p = LoadProfile(a.profile);
  MatrixPtr m = Run(a.mechanism, p.get());
  Text out;
  Check(ra_assignment_format(m.get(), p.get(), a.json, a.decimals.value_or(-1), &out.s));
  std::cout << out.str();
  if (a.trace) {
    Text t;
    Check(ra_run_trace(a.mechanism.c_str(), p.get(), &t.s));
    std::cout << t.str();
  }
  return kHolds;
}

struct CheckArgs {
  std::string property, profile, matrix, mechanism;
  std::size_t n = 3;
  bool json = false;
};

MatrixPtr SubjectMatrix(const CheckArgs& a, const ra_profile* p) {
  if (!a.matrix.empty()) return LoadMatrix(a.matrix);
  if (!a.mechanism.empty()) return Run(a.mechanism, p);
  throw InputError{"--property " + a.property + " needs --matrix or --mechanism"};
}

int DoCheck(const CheckArgs& a) {
  const std::string& prop = a.property;
  auto need_profile = [&] {
    if (a.profile.empty()) throw InputError{"--property " + prop + " needs --profile"};
    return LoadProfile(a.profile);
  };
  if (prop == "sd-efficiency" || prop == "ex-post" || prop == "po-discrete") {
    ProfilePtr p = need_profile();
    MatrixPtr m = SubjectMatrix(a, p.get());
    int ok = 0;
    Text report;
    if (prop == "sd-efficiency") {
      Check(ra_check_sd_efficiency(p.get(), m.get(), &ok, &report.s, a.json));
      std::cout << (ok ? "sd-efficient\n" : "not sd-efficient\ntrading cycle: ");
    } else if (prop == "ex-post") {
      Check(ra_check_ex_post(p.get(), m.get(), &ok, &report.s, a.json));
      std::cout << (ok ? "ex post efficient\ndecomposition:\n"
                       : "not ex post efficient\ncertificate: ");
    } else {
      Check(ra_check_po_discrete(p.get(), m.get(), &ok, &report.s, a.json));
      std::cout << (ok ? "pareto optimal\n" : "not pareto optimal\ntrading cycle: ");
    }
    std::cout << report.str();
    return ok ? kHolds : kFails;
  }
  if (prop == "extension") {
    if (a.mechanism.empty()) throw InputError{"--property extension needs --mechanism"};
    ProfilePtr p{nullptr, ra_profile_free};
    if (!a.profile.empty()) p = LoadProfile(a.profile);
    int ok = 0;
    Text report;
    Check(ra_check_extension(a.mechanism.c_str(), p.get(), a.n, &ok, &report.s));
    std::cout << (ok ? "extends ps: yes\n" : "extends ps: no\n") << report.str();
    return ok ? kHolds : kFails;
  }
  if (prop == "symmetry") {
    if (a.mechanism.empty()) throw InputError{"--property symmetry needs --mechanism"};
    ProfilePtr p = need_profile();
    int anon = 0, neutral = 0, equal = 0;
    Text report;
    Check(ra_check_symmetry(a.mechanism.c_str(), p.get(), &anon, &neutral, &equal, &report.s));
    auto yn = [](int v) { return v ? "yes" : "no"; };
    std::cout << "anonymous: " << yn(anon) << "\nneutral: " << yn(neutral)
              << "\nequal treatment: " << yn(equal) << '\n'
              << report.str();
    return anon && neutral && equal ? kHolds : kFails;
  }
  throw InputError{"unknown property '" + prop + "'"};
}

struct ManipulateArgs {
  std::string mechanism, profile, notion = "weak-sd";
  std::size_t exhaustive_n = 0;
  bool json = false;
};

int DoManipulate(const ManipulateArgs& a) {
  if (a.profile.empty() == (a.exhaustive_n == 0))
    throw InputError{"give exactly one of --profile and --exhaustive-n"};
  if (!a.profile.empty()) {
    ProfilePtr p = LoadProfile(a.profile);
    int found = 0;
    Text w;
    Check(ra_find_manipulation(a.mechanism.c_str(), p.get(), a.notion.c_str(), a.json, &found,
                               &w.s));
    std::cout << (found ? w.str() : "none\n");
    return found ? kFails : kHolds;
  }
  std::size_t profiles = 0, violations = 0;
  Text w;
  Check(ra_sweep_manipulations(a.mechanism.c_str(), a.exhaustive_n, a.notion.c_str(), a.json,
                               &profiles, &violations, &w.s));
  std::cout << "profiles: " << profiles << "\nviolations: " << violations << '\n';
  if (violations) std::cout << "first witness:\n" << w.str();
  else std::cout << "none\n";
  return violations ? kFails : kHolds;
}

int DoVerify(std::size_t n, bool json) {
  int ok = 0;
  Text out;
  Check(ra_verify_theorem(n, json, &ok, &out.s));
  std::cout << out.str();
  return ok ? kHolds : kFails;
}

int DoEnumerate(std::size_t weak_orders, const std::string& po_file) {
  if ((weak_orders == 0) == po_file.empty())
    throw InputError{"give exactly one of --weak-orders and --po-matchings"};
  Text out;
  if (weak_orders) {
    Check(ra_enumerate_weak_orders(weak_orders, &out.s));
  } else {
    ProfilePtr p = LoadProfile(po_file);
    Check(ra_enumerate_po_matchings(p.get(), &out.s));
  }
  std::cout << out.str();
  return kHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact random assignment: mechanisms, efficiency and strategyproofness checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ra_version());

  const std::vector<std::string> mechanisms{"ps", "eps", "eps-symmetric", "rsd"};

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Print a mechanism's assignment");
  run_cmd->add_option("--mechanism", run.mechanism)->required()->check(CLI::IsMember(mechanisms));
  run_cmd->add_option("--profile", run.profile, "profile file, '-' for stdin")->required();
  run_cmd->add_flag("--json", run.json);
  run_cmd->add_option("--decimal", run.decimals, "approximate decimal output")
      ->check(CLI::Range(0, 60));
  run_cmd->add_flag("--trace", run.trace, "also print the eating trace as JSON");

  CheckArgs chk;
  auto* check_cmd = app.add_subcommand("check", "Decide a property");
  check_cmd->add_option("--property", chk.property)
      ->required()
      ->check(CLI::IsMember({"sd-efficiency", "ex-post", "po-discrete", "extension", "symmetry"}));
  check_cmd->add_option("--profile", chk.profile);
  check_cmd->add_option("--matrix", chk.matrix);
  check_cmd->add_option("--mechanism", chk.mechanism)->check(CLI::IsMember(mechanisms));
  check_cmd->add_option("--n", chk.n, "profile size for extension")->check(CLI::Range(1, 8));
  check_cmd->add_flag("--json", chk.json);

  ManipulateArgs man;
  auto* man_cmd = app.add_subcommand("manipulate", "Search for a profitable misreport");
  man_cmd->add_option("--mechanism", man.mechanism)->required()->check(CLI::IsMember(mechanisms));
  auto* man_profile = man_cmd->add_option("--profile", man.profile);
  man_cmd->add_option("--exhaustive-n", man.exhaustive_n)->check(CLI::Range(1, 5))->excludes(man_profile);
  man_cmd->add_option("--notion", man.notion)->check(CLI::IsMember({"weak-sd", "sd"}));
  man_cmd->add_flag("--json", man.json);

  std::size_t theorem_n = 3;
  bool theorem_json = false;
  auto* thm_cmd = app.add_subcommand("verify-theorem", "Check the impossibility argument");
  thm_cmd->add_option("--n", theorem_n)->check(CLI::IsMember({3, 4, 5}));
  thm_cmd->add_flag("--json", theorem_json);

  std::size_t weak_orders = 0;
  std::string po_file;
  auto* enum_cmd = app.add_subcommand("enumerate", "List weak orders or Pareto optimal matchings");
  auto* wo = enum_cmd->add_option("--weak-orders", weak_orders)->check(CLI::Range(1, 5));
  enum_cmd->add_option("--po-matchings", po_file)->excludes(wo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*run_cmd) return DoRun(run);
    if (*check_cmd) return DoCheck(chk);
    if (*man_cmd) return DoManipulate(man);
    if (*thm_cmd) return DoVerify(theorem_n, theorem_json);
    if (*enum_cmd) return DoEnumerate(weak_orders, po_file);
  } catch (const InputError& e) {
    std::cerr << "assign: " << e.what << '\n';
    return kUsage;
  }
  return kUsage;
}
