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

#ifndef RANDASSIGN_RANDASSIGN_H_
#define RANDASSIGN_RANDASSIGN_H_

#include <stddef.h>

#if defined(_WIN32)
#  if defined(RANDASSIGN_BUILDING)
#    define RA_API __declspec(dllexport)
#  else
#    define RA_API __declspec(dllimport)
#  endif
#else
#  define RA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ra_profile ra_profile;
typedef struct ra_assignment ra_assignment;

typedef enum ra_status {
  RA_OK = 0,
  RA_ERR_MALFORMED_PROFILE = 1,
  RA_ERR_DUPLICATE_OBJECT = 2,
  RA_ERR_SHAPE = 3,
  RA_ERR_SIZE = 4,
  RA_ERR_VALIDATION = 5,
  RA_ERR_DOMAIN = 6,
  RA_ERR_CONTRACT = 7,
  RA_ERR_MALFORMED_INPUT = 8,
  RA_ERR_VERIFICATION = 9,
  RA_ERR_INVALID_ARGUMENT = 10,
  RA_ERR_INTERNAL = 11
} ra_status;

/* Message for the last failing call on this thread; "" after success. */
RA_API const char* ra_last_error(void);
RA_API const char* ra_status_name(ra_status status);
RA_API const char* ra_version(void);

/* Every char** result is owned by the caller. */
RA_API void ra_string_free(char* s);

/* Text ("1: a > b ~ c") or JSON, detected from the first character. */
RA_API ra_status ra_profile_parse(const char* text, ra_profile** out);
RA_API void ra_profile_free(ra_profile* profile);
RA_API size_t ra_profile_size(const ra_profile* profile);
RA_API ra_status ra_profile_format(const ra_profile* profile, int json, char** out);

/* Rows of rationals as text or JSON; must be doubly stochastic. */
RA_API ra_status ra_assignment_parse(const char* text, ra_assignment** out);
RA_API void ra_assignment_free(ra_assignment* assignment);
RA_API size_t ra_assignment_size(const ra_assignment* assignment);
/* Entry as "num/den" (or "num" for integers). */
RA_API ra_status ra_assignment_entry(const ra_assignment* assignment, size_t agent,
                                     size_t object, char** out);
/* labels may be NULL. decimals < 0 prints exact rationals; ignored with json. */
RA_API ra_status ra_assignment_format(const ra_assignment* assignment,
                                      const ra_profile* labels, int json, int decimals,
                                      char** out);

/* mechanism: "ps", "eps", "eps-symmetric" or "rsd". */
RA_API ra_status ra_run(const char* mechanism, const ra_profile* profile,
                        ra_assignment** out);
/* Eating trace (ps) or phases (eps) as JSON. */
RA_API ra_status ra_run_trace(const char* mechanism, const ra_profile* profile,
                              char** out);

/* report: the trading cycle when not efficient, otherwise NULL. */
RA_API ra_status ra_check_sd_efficiency(const ra_profile* profile,
                                        const ra_assignment* assignment,
                                        int* efficient, char** report, int json);
/* report: decomposition, or the infeasible system with its certificate. */
RA_API ra_status ra_check_ex_post(const ra_profile* profile,
                                  const ra_assignment* assignment, int* efficient,
                                  char** report, int json);
/* assignment must be a permutation matrix. */
RA_API ra_status ra_check_po_discrete(const ra_profile* profile,
                                      const ra_assignment* assignment,
                                      int* pareto_optimal, char** report, int json);
/* profile may be NULL: then all strict profiles of size n (sampled above 3). */
RA_API ra_status ra_check_extension(const char* mechanism, const ra_profile* profile,
                                    size_t n, int* extends, char** report);
RA_API ra_status ra_check_symmetry(const char* mechanism, const ra_profile* profile,
                                   int* anonymous, int* neutral, int* equal_treatment,
                                   char** report);

/* notion: "weak-sd" or "sd". witness is NULL when none is found. */
RA_API ra_status ra_find_manipulation(const char* mechanism, const ra_profile* profile,
                                      const char* notion, int json, int* found,
                                      char** witness);
/* Every profile of size n in the mechanism's domain. */
RA_API ra_status ra_sweep_manipulations(const char* mechanism, size_t n,
                                        const char* notion, int json,
                                        size_t* profiles, size_t* violations,
                                        char** first_witness);

/* n in 3..5. out: transcript or JSON certificate. */
RA_API ra_status ra_verify_theorem(size_t n, int json, int* verified, char** out);

RA_API ra_status ra_enumerate_weak_orders(size_t k, char** out);
RA_API ra_status ra_enumerate_po_matchings(const ra_profile* profile, char** out);

#ifdef __cplusplus
}
#endif

#endif  /* RANDASSIGN_RANDASSIGN_H_ */
