#ifndef MVENT_H
#define MVENT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MVENT_API __declspec(dllexport)
#else
#define MVENT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum {
    MVENT_OK = 0,
    MVENT_ERR_PARSE = 1,
    MVENT_ERR_VALIDATION = 2,
    MVENT_ERR_RESOURCE = 3,
    MVENT_LAWS_FAILED = 4,
    MVENT_ERR_INTERNAL = 5
} mvent_status;

typedef struct mvent_report mvent_report;

/* Zero means "not set": the spec's [analysis] values or the defaults apply. */
typedef struct {
    size_t n_max;
    size_t window;
    size_t orbit_cap;
    size_t exact_budget;
    size_t tuple_budget;
    const double* eps_grid;
    size_t eps_count;
    const char* mode; /* "exact", "greedy", "auto" or NULL */
    int has_seed;
    uint64_t seed;
} mvent_options;

typedef struct {
    size_t min_points;
    size_t max_points;
    size_t metrics;
    double density;
    size_t eps_count;
    size_t n_max;
} mvent_verify_params;

MVENT_API void mvent_options_init(mvent_options* opt);
MVENT_API void mvent_verify_params_init(mvent_verify_params* params);

/* On success *out owns a report to release with mvent_report_free. On
   failure *out is NULL and mvent_last_error describes the problem. */
MVENT_API mvent_status mvent_analyze(const char* spec_text, const mvent_options* opt, mvent_report** out);
MVENT_API mvent_status mvent_hyper(const char* spec_text, const mvent_options* opt, mvent_report** out);
MVENT_API mvent_status mvent_example(const char* name, size_t grid, size_t jbar, const mvent_options* opt,
                                     mvent_report** out);
/* Returns MVENT_LAWS_FAILED, with a report, when any law is violated. */
MVENT_API mvent_status mvent_verify(uint64_t seed, size_t count, const mvent_verify_params* params,
                                    mvent_report** out);

MVENT_API const char* mvent_report_json(const mvent_report* r);
MVENT_API const char* mvent_report_csv(const mvent_report* r);
MVENT_API const char* mvent_report_summary(const mvent_report* r);
MVENT_API int mvent_report_passed(const mvent_report* r);
MVENT_API void mvent_report_free(mvent_report* r);

/* Message of the last failure on the calling thread; empty after success. */
MVENT_API const char* mvent_last_error(void);
MVENT_API const char* mvent_status_name(mvent_status s);

/* Test hook: corrupts the exact solver so the law suite must fail. Returns
   MVENT_ERR_VALIDATION when the library was built without it. */
MVENT_API mvent_status mvent_set_fault_injection(int on);

MVENT_API const char* mvent_version(void);

#ifdef __cplusplus
}
#endif

#endif
