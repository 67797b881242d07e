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

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

std::string tool;
std::string data;
int failures = 0;

struct Outcome {
  std::string out;
  int code = -1;
};

Outcome Run(const std::string& args) {
  Outcome r;
  const std::string cmd = "cd '" + data + "' && '" + tool + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Expect(bool ok, const std::string& what) {
  if (!ok) {
    std::cerr << "FAILED: " << what << "\n";
    ++failures;
  }
}

void Golden(const std::string& args, const std::string& file, int code) {
  Outcome r = Run(args);
  Expect(r.code == code, args + " exit " + std::to_string(r.code));
  Expect(r.out == Slurp(data + "/" + file), args + " differs from " + file + ":\n" + r.out);
}

void Contains(const std::string& args, const std::string& needle, int code) {
  Outcome r = Run(args);
  Expect(r.code == code, args + " exit " + std::to_string(r.code));
  Expect(r.out.find(needle) != std::string::npos, args + " lacks '" + needle + "'");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: cli_test <assign> <data dir>\n";
    return 2;
  }
  tool = argv[1];
  data = argv[2];

  Golden("run --mechanism ps --profile truthful.txt", "ps_truthful.golden", 0);
  Golden("run --mechanism ps --profile prime.txt", "ps_prime.golden", 0);
  Golden("run --mechanism eps --profile tied.txt", "eps_tied.golden", 0);
  Golden("run --mechanism ps --profile - < truthful.txt", "ps_truthful.golden", 0);
  Golden("run --mechanism ps --profile truthful.txt --decimal 4", "ps_truthful_decimal.golden", 0);
  Golden("check --property sd-efficiency --profile tied.txt --matrix cycle_matrix.txt",
         "cycle_check.golden", 1);
  Golden("manipulate --mechanism eps --profile tied.txt", "eps_manipulation.golden", 1);

  Contains("run --mechanism ps --profile truthful.txt --json", "\"matrix\"", 0);
  Contains("run --mechanism rsd --profile truthful.txt", "1/2", 0);
  Contains("run --mechanism ps --profile truthful.txt --trace", "a", 0);
  Contains("check --property ex-post --profile tied.txt --matrix cycle_matrix.txt", "not", 1);
  Contains("check --property extension --mechanism eps --n 3", "216", 0);
  Contains("check --property extension --mechanism rsd --n 3", "", 1);
  Contains("check --property symmetry --mechanism ps --profile truthful.txt", "anonymous", 0);
  Contains("manipulate --mechanism eps --profile prime.txt", "", 0);
  Contains("manipulate --mechanism ps --exhaustive-n 3", "216", 0);
  Contains("verify-theorem --n 3", "Result: all cases infeasible", 0);
  Contains("verify-theorem --n 3 --json", "\"verified\": true", 0);
  Contains("enumerate --weak-orders 2", "a ~ b", 0);

  Contains("run --mechanism ps --profile tied.txt", "", 2);
  Contains("run --mechanism nope --profile truthful.txt", "", 2);
  Contains("run --mechanism ps --profile missing.txt", "", 2);
  Contains("verify-theorem --n 7", "", 2);
  Contains("bogus", "", 2);
  Contains("", "", 2);

  if (failures) {
    std::cerr << failures << " failure(s)\n";
    return 1;
  }
  std::cout << "cli: ok\n";
  return 0;
}
