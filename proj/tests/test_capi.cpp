#include <string>

#include "doctest.h"
#include "mvent/mvent.h"

namespace {

const char* kSpec = R"(
[space]
points = a b
metric = 0 1 ; 1 0
[maps]
f = relation a -> a b ; b -> a b
[schedule]
cycle = f
[analysis]
kinds = KT_SEP
n_max = 6
)";

}  // namespace

TEST_CASE("analyze returns an owned report") {
    mvent_options o;
    mvent_options_init(&o);
    mvent_report* r = nullptr;
    REQUIRE(mvent_analyze(kSpec, &o, &r) == MVENT_OK);
    REQUIRE(r != nullptr);
    CHECK(std::string(mvent_report_json(r)).find("KT_SEP") != std::string::npos);
    CHECK(std::string(mvent_report_csv(r)).rfind("kind,p,eps,n,count,rate,bound", 0) == 0);
    CHECK(std::string(mvent_last_error()).empty());
    mvent_report_free(r);
}

TEST_CASE("options override the spec") {
    mvent_options o;
    mvent_options_init(&o);
    o.n_max = 3;
    double eps[] = {0.5};
    o.eps_grid = eps;
    o.eps_count = 1;
    mvent_report* r = nullptr;
    REQUIRE(mvent_analyze(kSpec, &o, &r) == MVENT_OK);
    std::string csv = mvent_report_csv(r);
    CHECK(csv.find("KT_SEP,0,0.5,3,8,") != std::string::npos);
    CHECK(csv.find("KT_SEP,0,0.5,4,") == std::string::npos);
    mvent_report_free(r);
}

TEST_CASE("errors map to status codes") {
    mvent_report* r = reinterpret_cast<mvent_report*>(1);
    CHECK(mvent_analyze("[space]\npoints = a\nmetric = x\n", nullptr, &r) == MVENT_ERR_PARSE);
    CHECK(r == nullptr);
    CHECK(std::string(mvent_last_error()).size() > 0);
    CHECK(mvent_analyze(nullptr, nullptr, &r) == MVENT_ERR_VALIDATION);
    CHECK(mvent_analyze(kSpec, nullptr, nullptr) == MVENT_ERR_VALIDATION);
    CHECK(mvent_example("nosuch", 64, 2, nullptr, &r) == MVENT_ERR_VALIDATION);
    mvent_options o;
    mvent_options_init(&o);
    o.mode = "fastest";
    CHECK(mvent_analyze(kSpec, &o, &r) != MVENT_OK);
    CHECK(std::string(mvent_status_name(MVENT_ERR_RESOURCE)) == "resource limit");
}

TEST_CASE("verify reports law failures with a report") {
    mvent_report* r = nullptr;
    REQUIRE(mvent_verify(1, 5, nullptr, &r) == MVENT_OK);
    CHECK(mvent_report_passed(r) == 1);
    mvent_report_free(r);
    if (mvent_set_fault_injection(1) == MVENT_OK) {
        CHECK(mvent_verify(1, 20, nullptr, &r) == MVENT_LAWS_FAILED);
        REQUIRE(r != nullptr);
        CHECK(mvent_report_passed(r) == 0);
        mvent_report_free(r);
        mvent_set_fault_injection(0);
    }
}

TEST_CASE("null reports are tolerated") {
    CHECK(std::string(mvent_report_json(nullptr)).empty());
    CHECK(mvent_report_passed(nullptr) == 0);
    mvent_report_free(nullptr);
}
