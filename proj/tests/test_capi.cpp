#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "hs2/hs2_c.h"

TEST_CASE("c api: group operations on flat arrays") {
    const double a[3] = {1.0, 0.0, 0.0};
    const double b[3] = {0.0, 1.0, 0.0};
    double out[3];
    REQUIRE(hs2_compose(1, a, b, out) == HS2_OK);
    CHECK(out[0] == doctest::Approx(1.0));
    CHECK(out[1] == doctest::Approx(1.0));
    CHECK(out[2] == doctest::Approx(-2.0));

    REQUIRE(hs2_inverse(1, a, out) == HS2_OK);
    CHECK(out[0] == doctest::Approx(-1.0));

    REQUIRE(hs2_dilate(1, 2.0, a, out) == HS2_OK);
    CHECK(out[0] == doctest::Approx(2.0));

    double g;
    const double p[3] = {0.0, 0.0, 4.0};
    REQUIRE(hs2_gauge(1, p, &g) == HS2_OK);
    CHECK(g == doctest::Approx(2.0));

    double d;
    REQUIRE(hs2_distance(1, a, a, &d) == HS2_OK);
    CHECK(d == doctest::Approx(0.0));

    CHECK(hs2_compose(0, a, b, out) != HS2_OK);
    CHECK(std::strlen(hs2_last_error()) > 0);
    CHECK(hs2_dilate(1, -1.0, a, out) != HS2_OK);
    CHECK(hs2_compose(1, nullptr, b, out) != HS2_OK);
}

TEST_CASE("c api: builtin fields, jets, densities") {
    hs2_field* f = nullptr;
    REQUIRE(hs2_field_create_builtin(1, "sq", &f) == HS2_OK);
    const double p[3] = {0.5, -0.25, 0.75};
    double v;
    REQUIRE(hs2_field_eval(f, p, &v) == HS2_OK);
    CHECK(v == doctest::Approx(0.3125));

    double value, Xu[2], X2u[4], H[4], ut;
    REQUIRE(hs2_horizontal_jet(f, p, &value, Xu, X2u, H, &ut) == HS2_OK);
    CHECK(value == doctest::Approx(0.3125));
    CHECK(Xu[0] == doctest::Approx(1.0));
    CHECK(Xu[1] == doctest::Approx(-0.5));
    CHECK(H[0] == doctest::Approx(2.0));
    CHECK(H[1] == doctest::Approx(0.0).scale(1.0));
    CHECK(H[3] == doctest::Approx(2.0));
    CHECK(ut == doctest::Approx(0.0).scale(1.0));
    // Nullable outputs.
    REQUIRE(hs2_horizontal_jet(f, p, nullptr, nullptr, nullptr, nullptr, &ut) == HS2_OK);

    double dens;
    REQUIRE(hs2_measure_density(f, p, &dens) == HS2_OK);
    CHECK(dens == doctest::Approx(4.0));
    hs2_field_destroy(f);

    hs2_field* bad = nullptr;
    CHECK(hs2_field_create_builtin(1, "no-such-field", &bad) == HS2_ERR_INVALID_ARG);
    CHECK(bad == nullptr);
}

static double cb_sq(const double* c, void* counter) {
    if (counter) ++*static_cast<long*>(counter);
    return c[0] * c[0] + c[1] * c[1];
}

TEST_CASE("c api: callback fields run through the FD jet machinery") {
    long calls = 0;
    hs2_field* f = nullptr;
    REQUIRE(hs2_field_create_callback(1, &cb_sq, &calls, 1e-4, &f) == HS2_OK);
    const double p[3] = {0.25, 0.5, -0.75};
    double H[4], ut;
    REQUIRE(hs2_horizontal_jet(f, p, nullptr, nullptr, nullptr, H, &ut) == HS2_OK);
    CHECK(H[0] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(H[3] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(ut == doctest::Approx(0.0).epsilon(1e-6).scale(1.0));
    CHECK(calls > 0);
    hs2_field_destroy(f);
    CHECK(hs2_field_create_callback(1, nullptr, nullptr, 1e-4, &f) != HS2_OK);
}

TEST_CASE("c api: barrier, smooth max, mollify") {
    const double center[3] = {0.0, 0.0, 0.0};
    hs2_field* v = nullptr;
    REQUIRE(hs2_field_create_barrier(1, center, 1.0, 0.5, -1.0, &v) == HS2_OK);
    double val;
    const double boundary[3] = {1.0, 0.0, 0.0};
    REQUIRE(hs2_field_eval(v, boundary, &val) == HS2_OK);
    CHECK(val == doctest::Approx(0.0).scale(1.0));

    hs2_field* u1 = nullptr;
    hs2_field* u2 = nullptr;
    REQUIRE(hs2_field_create_builtin(1, "sq", &u1) == HS2_OK);
    REQUIRE(hs2_field_create_builtin(1, "t", &u2) == HS2_OK);
    hs2_field* w = nullptr;
    REQUIRE(hs2_field_smooth_max(u1, u2, 0.2, &w) == HS2_OK);
    const double far[3] = {2.0, 0.0, 0.0};  // sq = 4 dominates t = 0
    REQUIRE(hs2_field_eval(w, far, &val) == HS2_OK);
    CHECK(val == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(hs2_field_smooth_max(u1, u2, -0.1, &w) != HS2_OK);

    hs2_field* m = nullptr;
    REQUIRE(hs2_field_mollify(u1, 0.2, &m) == HS2_OK);
    const double origin[3] = {0.0, 0.0, 0.0};
    REQUIRE(hs2_field_eval(m, origin, &val) == HS2_OK);
    CHECK(val >= 0.0);
    CHECK(val <= 0.2);

    hs2_field_destroy(m);
    hs2_field_destroy(w);
    hs2_field_destroy(u2);
    hs2_field_destroy(u1);
    hs2_field_destroy(v);
    hs2_field_destroy(nullptr);  // tolerated
}

TEST_CASE("c api: quadrature and classification") {
    hs2_field* f = nullptr;
    REQUIRE(hs2_field_create_builtin(1, "t", &f) == HS2_OK);
    const double lo[3] = {0.0, 0.0, 0.0};
    const double hi[3] = {1.0, 1.0, 1.0};
    double value, error;
    REQUIRE(hs2_measure_box(f, lo, hi, 8, &value, &error) == HS2_OK);
    CHECK(value == doctest::Approx(12.0).epsilon(1e-9));
    REQUIRE(hs2_trace_integral_box(f, lo, hi, 8, &value, &error) == HS2_OK);
    CHECK(value == doctest::Approx(0.0).epsilon(1e-9).scale(1.0));
    const double center[3] = {0.0, 0.0, 0.0};
    REQUIRE(hs2_measure_ball(f, center, 1.0, 16, &value, &error) == HS2_OK);
    CHECK(value > 0.0);
    hs2_field_destroy(f);

    hs2_field* sq = nullptr;
    REQUIRE(hs2_field_create_builtin(1, "sq", &sq) == HS2_OK);
    hs2_convexity_report rep;
    REQUIRE(hs2_classify_box(sq, lo, hi, 300, 7, &rep) == HS2_OK);
    CHECK(rep.verdict == 0);
    CHECK(rep.samples == 300);
    REQUIRE(hs2_classify_ball(sq, center, 1.0, 300, 7, &rep) == HS2_OK);
    CHECK(rep.verdict == 0);
    hs2_field_destroy(sq);
}

TEST_CASE("c api: symmetric matrix helpers") {
    const double A[9] = {1, 0, 0, 0, 2, 0, 0, 0, 3};
    double s;
    REQUIRE(hs2_sigma2(3, A, &s) == HS2_OK);
    CHECK(s == doctest::Approx(11.0));
    double lam[3];
    REQUIRE(hs2_eigenvalues(3, A, lam) == HS2_OK);
    CHECK(lam[0] == doctest::Approx(1.0));
    CHECK(lam[2] == doctest::Approx(3.0));
    double M[9];
    REQUIRE(hs2_sigma2_gradient(3, A, M) == HS2_OK);
    CHECK(M[0] == doctest::Approx(5.0));  // tr(A) - A_00
    double ps[3];
    REQUIRE(hs2_partial_s(3, lam, ps) == HS2_OK);
    CHECK(ps[0] == doctest::Approx(5.0));
    const double asym[4] = {0, 1, 0, 0};
    CHECK(hs2_sigma2(2, asym, &s) == HS2_ERR_INVALID_ARG);
}

TEST_CASE("c api: campaign runner and string ownership") {
    char* report = nullptr;
    char* csv = nullptr;
    int code = -1;
    REQUIRE(hs2_run_campaign(
                R"({"scenario":"convexity","n":1,"field":"sq","seed":3,"samples":200})",
                &report, &csv, &code) == HS2_OK);
    REQUIRE(report != nullptr);
    REQUIRE(csv != nullptr);
    CHECK(code == 0);
    CHECK(std::string(report).find("H_CONVEX") != std::string::npos);
    hs2_string_free(report);
    hs2_string_free(csv);

    report = csv = nullptr;
    CHECK(hs2_run_campaign("not json", &report, &csv, &code) == HS2_ERR_PARSE);
    CHECK(code == 2);
    CHECK(std::strlen(hs2_last_error()) > 0);
    hs2_string_free(report);
    hs2_string_free(csv);
    CHECK(std::string(hs2_version()).size() > 0);
}
