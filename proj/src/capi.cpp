#include "mvent/mvent.h"

#include <new>
#include <string>

#include "mvent/error.hpp"
#include "mvent/extremal.hpp"
#include "mvent/report.hpp"

struct mvent_report {
    mvent::Report report;
};

namespace {

thread_local std::string g_last_error;

mvent_status status_of(mvent::ErrorClass c) {
    switch (c) {
        case mvent::ErrorClass::kParse:
            return MVENT_ERR_PARSE;
        case mvent::ErrorClass::kResource:
            return MVENT_ERR_RESOURCE;
        case mvent::ErrorClass::kValidation:
            return MVENT_ERR_VALIDATION;
    }
    return MVENT_ERR_INTERNAL;
}

mvent::RunOptions convert(const mvent_options* o) {
    mvent::RunOptions r;
    if (!o) return r;
    if (o->n_max) r.n_max = o->n_max;
    if (o->window) r.window = o->window;
    if (o->orbit_cap) r.orbit_cap = o->orbit_cap;
    if (o->exact_budget) r.exact_budget = o->exact_budget;
    if (o->tuple_budget) r.tuple_budget = o->tuple_budget;
    if (o->eps_grid && o->eps_count) r.eps_grid = std::vector<double>(o->eps_grid, o->eps_grid + o->eps_count);
    if (o->mode) r.mode = mvent::parse_mode(o->mode);
    if (o->has_seed) r.seed = o->seed;
    return r;
}

// Runs f, storing the report in *out and translating exceptions to codes.
template <class F>
mvent_status guarded(mvent_report** out, F&& f) {
    g_last_error.clear();
    if (!out) {
        g_last_error = "output pointer is null";
        return MVENT_ERR_VALIDATION;
    }
    *out = nullptr;
    try {
        auto* r = new mvent_report{f()};
        *out = r;
        return MVENT_OK;
    } catch (const mvent::Error& e) {
        g_last_error = e.what();
        return status_of(mvent::error_class(e.code()));
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return MVENT_ERR_RESOURCE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MVENT_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

void mvent_options_init(mvent_options* opt) {
    if (opt) *opt = mvent_options{};
}

void mvent_verify_params_init(mvent_verify_params* params) {
    if (!params) return;
    mvent::GenParams g;
    *params = {g.min_points, g.max_points, g.metrics, g.density, g.eps_count, g.n_max};
}

mvent_status mvent_analyze(const char* spec_text, const mvent_options* opt, mvent_report** out) {
    return guarded(out, [&] {
        if (!spec_text) throw mvent::Error(mvent::ErrorCode::kInvalidArgument, "spec text is null");
        return mvent::run_analyze(spec_text, convert(opt));
    });
}

mvent_status mvent_hyper(const char* spec_text, const mvent_options* opt, mvent_report** out) {
    return guarded(out, [&] {
        if (!spec_text) throw mvent::Error(mvent::ErrorCode::kInvalidArgument, "spec text is null");
        return mvent::run_hyper(spec_text, convert(opt));
    });
}

mvent_status mvent_example(const char* name, size_t grid, size_t jbar, const mvent_options* opt,
                           mvent_report** out) {
    return guarded(out, [&] {
        if (!name) throw mvent::Error(mvent::ErrorCode::kInvalidArgument, "example name is null");
        return mvent::run_example(name, grid, jbar, convert(opt));
    });
}

mvent_status mvent_verify(uint64_t seed, size_t count, const mvent_verify_params* params, mvent_report** out) {
    auto st = guarded(out, [&] {
        mvent::GenParams g;
        if (params) {
            g.min_points = params->min_points;
            g.max_points = params->max_points;
            g.metrics = params->metrics;
            g.density = params->density;
            g.eps_count = params->eps_count;
            g.n_max = params->n_max;
        }
        return mvent::run_verify(seed, count, g);
    });
    if (st == MVENT_OK && !(*out)->report.passed) {
        g_last_error = "law violations found";
        return MVENT_LAWS_FAILED;
    }
    return st;
}

const char* mvent_report_json(const mvent_report* r) { return r ? r->report.json.c_str() : ""; }
const char* mvent_report_csv(const mvent_report* r) { return r ? r->report.csv.c_str() : ""; }
const char* mvent_report_summary(const mvent_report* r) { return r ? r->report.summary.c_str() : ""; }
int mvent_report_passed(const mvent_report* r) { return r && r->report.passed ? 1 : 0; }
void mvent_report_free(mvent_report* r) { delete r; }

const char* mvent_last_error(void) { return g_last_error.c_str(); }

const char* mvent_status_name(mvent_status s) {
    switch (s) {
        case MVENT_OK:
            return "ok";
        case MVENT_ERR_PARSE:
            return "parse error";
        case MVENT_ERR_VALIDATION:
            return "validation error";
        case MVENT_ERR_RESOURCE:
            return "resource limit";
        case MVENT_LAWS_FAILED:
            return "law violations";
        case MVENT_ERR_INTERNAL:
            return "internal error";
    }
    return "unknown";
}

mvent_status mvent_set_fault_injection(int on) {
#ifdef MVENT_FAULT_INJECTION
    mvent::fault::set_enabled(on != 0);
    return MVENT_OK;
#else
    (void)on;
    g_last_error = "built without fault injection";
    return MVENT_ERR_VALIDATION;
#endif
}

const char* mvent_version(void) { return "0.1.0"; }

}  // extern "C"
