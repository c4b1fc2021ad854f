#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "vsheet/pointvortex.hpp"

using namespace vsheet;

TEST_CASE("opposite pair translates at exactly a quarter") {
    PointSystem sys = alternating_row(2, 1.0);
    REQUIRE(sys.positions.size() == 2);
    CHECK(sys.strengths[0] == -1.0);
    CHECK(sys.strengths[1] == 1.0);
    std::vector<Vec2> v = rhs(sys);
    CHECK(v[0].x1 == 0.0);
    CHECK(v[0].x2 == 0.25);
    CHECK(v[1].x1 == 0.0);
    CHECK(v[1].x2 == 0.25);

    WstarReading w = wstar_readings(2, 1.0, inverse_distance_kernel());
    CHECK(w.displayed == 0.25);
    CHECK(w.derivation == 0.25);
    CHECK(wstar(2, 1.0, inverse_distance_kernel()) == 0.25);

    WstarReading w2 = wstar_readings(2, 2.0, inverse_distance_kernel());
    CHECK(w2.displayed == 0.0625);
    CHECK(w2.derivation == 0.0625);
}

TEST_CASE("equal pair has zero net momentum flux") {
    PointSystem sys = alternating_row(2, 1.0);
    sys.strengths = {1.0, 1.0};
    std::vector<Vec2> v = rhs(sys);
    CHECK(v[0].x1 + v[1].x1 == 0.0);
    CHECK(v[0].x2 + v[1].x2 == 0.0);
}

TEST_CASE("three points expose the gap between row speed and readings") {
    WstarReading w = wstar_readings(3, 1.0, inverse_distance_kernel());
    CHECK(w.displayed == 0.3125);
    CHECK(w.derivation == 0.3125);

    PointSystem sys = alternating_row(3, 1.0);
    std::vector<Vec2> v = rhs(sys);
    CHECK(v[0].x2 == 0.1875);   // endpoints feel the weakened far neighbor
    CHECK(v[1].x2 == 0.0);      // the middle point sits still
    CHECK(v[2].x2 == -0.1875);  // and the far end shears the other way
    CHECK(std::fabs(v[0].x2 - w.derivation) > 0.1);
}

TEST_CASE("rhs validation") {
    CHECK_THROWS_AS(alternating_row(1, 1.0), std::invalid_argument);
    PointSystem sys = alternating_row(2, 1.0);
    sys.positions[1] = sys.positions[0];
    CHECK_THROWS_AS(rhs(sys), std::domain_error);
    sys = alternating_row(2, 1.0);
    sys.strengths.push_back(1.0);
    CHECK_THROWS_AS(rhs(sys), std::invalid_argument);
}

TEST_CASE("rhs mirrors exactly under reflection") {
    PointSystem a;
    a.kernel = inverse_distance_kernel();
    a.positions = {{0.0, 0.0}, {1.3, 0.7}, {-0.4, 2.1}};
    a.strengths = {-1.0, 1.0, -1.0};
    PointSystem b = a;
    for (Vec2& z : b.positions) z.x2 = -z.x2;
    std::vector<Vec2> va = rhs(a), vb = rhs(b);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(vb[i].x1 == -va[i].x1);
        CHECK(vb[i].x2 == va[i].x2);
    }
}

TEST_CASE("rhs is translation invariant") {
    PointSystem a;
    a.kernel = inverse_distance_kernel();
    a.positions = {{0.0, 0.0}, {1.3, 0.7}, {-0.4, 2.1}};
    a.strengths = {-1.0, 1.0, -1.0};
    PointSystem b = a;
    for (Vec2& z : b.positions) {
        z.x1 += 0.3;
        z.x2 -= 0.8;
    }
    std::vector<Vec2> va = rhs(a), vb = rhs(b);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(vb[i].x1 == doctest::Approx(va[i].x1).epsilon(1e-12));
        CHECK(vb[i].x2 == doctest::Approx(va[i].x2).epsilon(1e-12));
    }
}

TEST_CASE("pair trajectory drifts rigidly") {
    PointSystem sys = alternating_row(2, 1.0);
    double h = 1e-3, t_end = 10.0;
    std::vector<TrajectorySample> tr = integrate_rk4(sys, t_end, h);
    REQUIRE(tr.size() == 10001);
    CHECK(tr.front().t == 0.0);
    CHECK(tr.back().t == doctest::Approx(10.0).epsilon(1e-12));

    double ws = wstar(2, 1.0, inverse_distance_kernel());
    const TrajectorySample& last = tr.back();
    for (std::size_t i = 0; i < 2; ++i) {
        double dx = last.z[i].x1 - sys.positions[i].x1;
        double dy = last.z[i].x2 - (sys.positions[i].x2 + ws * t_end);
        CHECK(std::fabs(dx) < 1e-6);
        CHECK(std::fabs(dy) < 1e-6);
    }
    double gap0 = 2.0;
    double gx = last.z[1].x1 - last.z[0].x1, gy = last.z[1].x2 - last.z[0].x2;
    CHECK(std::fabs(std::sqrt(gx * gx + gy * gy) - gap0) < 1e-8);
}

TEST_CASE("integrator converges at fourth order") {
    PointSystem sys;
    sys.kernel = inverse_distance_kernel();
    sys.positions = {{0.0, 0.0}, {2.0, 0.0}};
    sys.strengths = {-1.0, -1.0};  // same sign: the pair rotates

    auto endpoint = [&](double h) { return integrate_rk4(sys, 2.0, h).back().z[0]; };
    Vec2 ref = endpoint(0.05 / 8.0);
    auto err = [&](double h) {
        Vec2 e = endpoint(h) - ref;
        return std::sqrt(e.x1 * e.x1 + e.x2 * e.x2);
    };
    double e1 = err(0.05), e2 = err(0.025);
    CHECK(e1 > 0.0);
    double ratio = e1 / e2;
    CHECK(ratio > 13.0);
    CHECK(ratio < 19.0);
}

TEST_CASE("integrator validation and blow-up reporting") {
    PointSystem sys = alternating_row(2, 1.0);
    CHECK_THROWS_AS(integrate_rk4(sys, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate_rk4(sys, 1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(integrate_rk4(sys, -1.0, 0.1), std::invalid_argument);

    PointSystem bad = alternating_row(2, 1.0);
    bad.kernel.dG = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
    CHECK_THROWS_WITH_AS(integrate_rk4(bad, 1.0, 0.1), doctest::Contains("blew up"),
                         std::runtime_error);
}
