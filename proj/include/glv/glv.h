/* SPDX-License-Identifier: Apache-2.0 */
/*
 * C interface of libglv. Objects are opaque handles; every call returns a
 * glv_status and leaves a message for glv_last_error() on failure. Strings
 * returned through char** are owned by the caller and released with
 * glv_string_free().
 */
#ifndef GLV_GLV_H
#define GLV_GLV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define GLV_API __declspec(dllexport)
#elif defined(__GNUC__)
#  define GLV_API __attribute__((visibility("default")))
#else
#  define GLV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum glv_status {
  GLV_OK = 0,
  GLV_E_INVALID_ARGUMENT = 1,
  GLV_E_NO_INVERSE = 2,
  GLV_E_INVALID_CHAIN = 3,
  GLV_E_POLE = 4,
  GLV_E_QUADRATURE = 5,
  GLV_E_COVERAGE = 6,
  GLV_E_CONFIG = 7,
  GLV_E_INTERNAL = 100
} glv_status;

typedef struct glv_config glv_config;
typedef struct glv_transform glv_transform;

GLV_API const char* glv_version(void);
/* Message of the last failed call on this thread ("" if none). */
GLV_API const char* glv_last_error(void);
GLV_API const char* glv_status_name(glv_status status);
GLV_API void glv_string_free(char* s);

/* -- configuration ----------------------------------------------------- */

GLV_API glv_status glv_config_new(glv_config** out);
GLV_API glv_status glv_config_parse(const char* text, const char* origin, glv_config** out);
GLV_API glv_status glv_config_load(const char* path, glv_config** out);
GLV_API void glv_config_free(glv_config* cfg);
/* key is "section.key"; value NULL removes the key. */
GLV_API glv_status glv_config_set(glv_config* cfg, const char* key, const char* value);
/* *value is NULL when the key is unset. */
GLV_API glv_status glv_config_get(const glv_config* cfg, const char* key, char** value);
GLV_API glv_status glv_config_serialize(const glv_config* cfg, char** text);

/* -- verification ------------------------------------------------------ */

/* Both sides of the summation formula for the configured instance.
 * *passed is 1 or 0; json and summary may be NULL. */
GLV_API glv_status glv_verify(const glv_config* cfg, int* passed, char** json, char** summary);
/* Character-weighted variant; the character is twist.chi of
 * characters_mod(q). When unset, the first primitive character with the
 * parity of f is used (the first primitive one if none matches). */
GLV_API glv_status glv_twisted_verify(const glv_config* cfg, int* passed, char** json,
                                      char** summary);
/* Ranks every even-sum parity vector for instance.lambda on the q = 1 smoke
 * instance. On success with a winner, instance.delta of cfg is set to it. */
GLV_API glv_status glv_calibrate(glv_config* cfg, int* found_winner, char** json,
                                 char** summary);

/* -- transform --------------------------------------------------------- */

GLV_API glv_status glv_transform_new(const glv_config* cfg, glv_transform** out);
GLV_API void glv_transform_free(glv_transform* t);
/* est_err may be NULL; otherwise it receives the refinement difference. */
GLV_API glv_status glv_transform_eval(const glv_transform* t, double y, double* re, double* im,
                                      double* est_err);
/* CSV "y,re,im,est_err" for the configured transform.y list, or for a
 * log-spaced grid when transform.grid_min/grid_max are set. */
GLV_API glv_status glv_transform_csv(const glv_config* cfg, char** csv);

/* -- arithmetic -------------------------------------------------------- */

/* S(a, b; q, c, d) with len = n - 2 entries in c and d. */
GLV_API glv_status glv_hyperkloosterman(int64_t a, int64_t b, int64_t q, const int64_t* c,
                                        const int64_t* d, size_t len, double* re, double* im);
GLV_API glv_status glv_hyperkloosterman_bruteforce(int64_t a, int64_t b, int64_t q,
                                                   const int64_t* c, const int64_t* d,
                                                   size_t len, double* re, double* im);

/* CSV of a_k for 1 <= k_j <= max_index; with_c adds c_k columns using the
 * configured archimedean parameters. */
GLV_API glv_status glv_coefficients_csv(const glv_config* cfg, int64_t max_index, int with_c,
                                        char** csv);

#ifdef __cplusplus
}
#endif

#endif /* GLV_GLV_H */
