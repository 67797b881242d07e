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

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "randassign/randassign.h"

static int failures = 0;

#define EXPECT(cond)                                             \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                \
    }                                                            \
  } while (0)

static const char* kTruthful = "1: a > b > c\n2: a > c > b\n3: a > b > c\n";
static const char* kTied = "1: a > b > c\n2: a > c > b\n3: a ~ b > c\n";

static int EntryIs(const ra_assignment* a, size_t i, size_t j, const char* want) {
  char* s = NULL;
  if (ra_assignment_entry(a, i, j, &s) != RA_OK) return 0;
  int ok = strcmp(s, want) == 0;
  ra_string_free(s);
  return ok;
}

static void TestRun(void) {
  ra_profile* p = NULL;
  ra_assignment* a = NULL;
  EXPECT(ra_profile_parse(kTruthful, &p) == RA_OK);
  EXPECT(ra_profile_size(p) == 3);
  EXPECT(ra_run("ps", p, &a) == RA_OK);
  EXPECT(ra_assignment_size(a) == 3);
  EXPECT(EntryIs(a, 0, 0, "1/3"));
  EXPECT(EntryIs(a, 0, 2, "1/6"));
  EXPECT(EntryIs(a, 1, 2, "2/3"));
  EXPECT(EntryIs(a, 1, 1, "0"));

  char* text = NULL;
  EXPECT(ra_assignment_format(a, p, 0, -1, &text) == RA_OK);
  EXPECT(strstr(text, "1/2") != NULL);
  ra_string_free(text);
  EXPECT(ra_assignment_format(a, NULL, 1, -1, &text) == RA_OK);
  EXPECT(text[0] == '{');
  ra_string_free(text);
  EXPECT(ra_run_trace("ps", p, &text) == RA_OK);
  ra_string_free(text);

  int efficient = -1;
  char* report = NULL;
  EXPECT(ra_check_sd_efficiency(p, a, &efficient, &report, 0) == RA_OK);
  EXPECT(efficient == 1);
  ra_string_free(report);
  EXPECT(ra_check_ex_post(p, a, &efficient, &report, 1) == RA_OK);
  EXPECT(efficient == 1);
  ra_string_free(report);
  ra_assignment_free(a);
  ra_profile_free(p);
}

static void TestErrors(void) {
  ra_profile* p = NULL;
  ra_assignment* a = NULL;
  EXPECT(ra_profile_parse("1 a > b\n", &p) == RA_ERR_MALFORMED_PROFILE);
  EXPECT(p == NULL);
  EXPECT(strlen(ra_last_error()) > 0);
  EXPECT(ra_profile_parse(NULL, &p) == RA_ERR_INVALID_ARGUMENT);
  EXPECT(ra_assignment_parse("1/2 1/2\n1/2 1/3\n", &a) == RA_ERR_VALIDATION);
  EXPECT(ra_profile_parse(kTied, &p) == RA_OK);
  EXPECT(ra_run("ps", p, &a) == RA_ERR_DOMAIN);
  EXPECT(ra_run("nope", p, &a) == RA_ERR_INVALID_ARGUMENT);
  EXPECT(ra_run("eps", p, &a) == RA_OK);
  char* s = NULL;
  EXPECT(ra_assignment_entry(a, 3, 0, &s) == RA_ERR_INVALID_ARGUMENT);
  EXPECT(strcmp(ra_status_name(RA_ERR_DOMAIN), "") != 0);
  EXPECT(strcmp(ra_version(), "1.0.0") == 0);
  ra_assignment_free(a);
  ra_profile_free(p);
  ra_profile_free(NULL);
  ra_assignment_free(NULL);
  ra_string_free(NULL);
}

static void TestCycle(void) {
  ra_profile* p = NULL;
  ra_assignment* a = NULL;
  EXPECT(ra_profile_parse(kTied, &p) == RA_OK);
  EXPECT(ra_assignment_parse("1/2 1/2 0\n0 0 1\n1/2 1/2 0\n", &a) == RA_OK);
  int efficient = -1;
  char* report = NULL;
  EXPECT(ra_check_sd_efficiency(p, a, &efficient, &report, 0) == RA_OK);
  EXPECT(efficient == 0);
  EXPECT(report && strstr(report, "->") != NULL);
  ra_string_free(report);
  EXPECT(ra_check_ex_post(p, a, &efficient, &report, 0) == RA_OK);
  EXPECT(efficient == 0);
  ra_string_free(report);
  ra_assignment_free(a);
  ra_profile_free(p);
}

static void TestManipulation(void) {
  ra_profile* p = NULL;
  EXPECT(ra_profile_parse(kTied, &p) == RA_OK);
  int found = -1;
  char* w = NULL;
  EXPECT(ra_find_manipulation("eps", p, "weak-sd", 1, &found, &w) == RA_OK);
  EXPECT(found == 1);
  EXPECT(w && w[0] == '{');
  ra_string_free(w);
  EXPECT(ra_find_manipulation("eps", p, "bogus", 0, &found, &w) == RA_ERR_INVALID_ARGUMENT);
  ra_profile_free(p);

  size_t profiles = 0, violations = 1;
  EXPECT(ra_sweep_manipulations("rsd", 3, "sd", 0, &profiles, &violations, &w) == RA_OK);
  EXPECT(profiles == 216);
  EXPECT(violations == 0);
  ra_string_free(w);
}

static void TestTheoremAndEnumeration(void) {
  int verified = 0;
  char* out = NULL;
  EXPECT(ra_verify_theorem(3, 0, &verified, &out) == RA_OK);
  EXPECT(verified == 1);
  EXPECT(strstr(out, "Result: all cases infeasible") != NULL);
  ra_string_free(out);
  EXPECT(ra_verify_theorem(9, 0, &verified, &out) == RA_ERR_SIZE);
  EXPECT(ra_enumerate_weak_orders(3, &out) == RA_OK);
  size_t lines = 0;
  for (const char* c = out; *c; ++c) lines += *c == '\n';
  EXPECT(lines == 13);
  ra_string_free(out);

  int extends = 0;
  EXPECT(ra_check_extension("eps", NULL, 3, &extends, &out) == RA_OK);
  EXPECT(extends == 1);
  ra_string_free(out);
  ra_profile* p = NULL;
  int an = 0, ne = 0, et = 0;
  EXPECT(ra_profile_parse(kTruthful, &p) == RA_OK);
  EXPECT(ra_check_symmetry("ps", p, &an, &ne, &et, &out) == RA_OK);
  EXPECT(an == 1 && ne == 1 && et == 1);
  ra_string_free(out);
  EXPECT(ra_enumerate_po_matchings(p, &out) == RA_OK);
  EXPECT(strlen(out) > 0);
  ra_string_free(out);
  ra_profile_free(p);
}

int main(void) {
  TestRun();
  TestErrors();
  TestCycle();
  TestManipulation();
  TestTheoremAndEnumeration();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("capi: ok\n");
  return 0;
}
