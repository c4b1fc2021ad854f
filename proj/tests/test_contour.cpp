#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "vsheet/contour.hpp"
#include "vsheet/solver.hpp"

using namespace vsheet;

namespace {
SheetState circle(double eps, double d, double W, std::size_t N = 8) {
    SheetState st;
    st.eps = eps;
    st.d = d;
    st.W = W;
    st.p = EvenSeries(N);
    st.q = EvenSeries(N);
    return st;
}

SheetState wavy(double eps) {
    SheetState st = circle(eps, 1.0, 0.27);
    st.p.c = {0.3, -0.1, 0.05, 0.02};
    st.q.c = {-0.2, 0.15, 0.0, 0.01};
    return st;
}

double sup(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::fabs(x));
    return s;
}
}  // namespace

TEST_CASE("trivial pair balances exactly at quarter speed") {
    Grid g(64);
    NodalResiduals r0 = eval_nodal(circle(0.0, 1.0, 0.25), g);
    for (std::size_t i = 0; i < g.M; ++i) {
        CHECK(r0.F[i] == 0.0);
        CHECK(r0.G[i] == 0.0);
    }
    CHECK(r0.g_mean == 0.0);

    // at rest the leftover is the exact first harmonic, scaled by 1/4
    NodalResiduals rr = eval_nodal(circle(0.0, 1.0, 0.0), g);
    for (std::size_t i = 0; i < g.M; ++i) {
        CHECK(rr.F[i] == -0.25 * std::sin(g.node(i)));
        CHECK(std::fabs(rr.G[i] + 0.25 * std::cos(g.node(i))) < 1e-16);
    }
    CHECK(std::fabs(rr.g_mean) < 1e-16);

    NodalResiduals rw = eval_nodal(circle(0.0, 1.0, 0.7), g);
    for (std::size_t i = 0; i < g.M; ++i)
        CHECK(std::fabs(rw.F[i] - 0.45 * std::sin(g.node(i))) < 1e-15);
}

TEST_CASE("residuals are affine in the speed") {
    Grid g(128);
    SheetState a = wavy(0.1), b = wavy(0.1);
    a.W = 0.2;
    b.W = 0.9;
    NodalResiduals ra = eval_nodal(a, g), rb = eval_nodal(b, g);

    double e2 = a.eps * a.eps;
    std::vector<double> pv = synth(a.p, g), ppv = synth(differentiate(a.p), g);
    std::vector<double> qv = synth(a.q, g);
    std::vector<double> wF(g.M), wG(g.M);
    for (std::size_t i = 0; i < g.M; ++i) {
        double x = g.node(i);
        double r = 1.0 + e2 * pv[i], rp = e2 * ppv[i], gam = 1.0 + e2 * qv[i];
        wF[i] = r * std::sin(x) - rp * std::cos(x);
        wG[i] = gam * (rp * std::sin(x) + r * std::cos(x)) / (r * r + rp * rp);
    }
    double m = 0.0;
    for (double v : wG) m += v;
    m /= (double)g.M;
    for (std::size_t i = 0; i < g.M; ++i) {
        CHECK(rb.F[i] - ra.F[i] == doctest::Approx(0.7 * wF[i]).epsilon(1e-12));
        CHECK(std::fabs((rb.G[i] - ra.G[i]) - 0.7 * (wG[i] - m)) < 1e-12);
    }
}

TEST_CASE("transport residual carries no mean") {
    Grid g(128);
    for (double eps : {0.0, 0.03, 0.12}) {
        GEval ge = eval_G(wavy(eps), g);
        double s = 0.0;
        for (double v : ge.values) s += v;
        CHECK(std::fabs(s / (double)g.M) < 1e-12);
    }
}

TEST_CASE("wrappers agree with the combined pass") {
    Grid g(64);
    SheetState st = wavy(0.08);
    NodalResiduals r = eval_nodal(st, g);
    std::vector<double> f = eval_F(st, g);
    GEval ge = eval_G(st, g);
    CHECK(f == r.F);
    CHECK(ge.values == r.G);
    CHECK(ge.removed_mean == r.g_mean);

    ResidualPair pr = eval_residual(st, g, 16);
    OddSeries fo = analyze_odd(r.F, 16);
    EvenAnalysis gc = analyze_even(r.G, 16);
    for (std::size_t j = 0; j < 16; ++j) {
        CHECK(std::fabs(pr.f.c[j] - fo.c[j]) < 1e-15);
        CHECK(std::fabs(pr.g.c[j] - gc.series.c[j]) < 1e-15);
    }
}

TEST_CASE("parity splits between the equations") {
    Grid g(256);
    NodalResiduals r = eval_nodal(wavy(0.1), g);
    EvenAnalysis fe = analyze_even(r.F, 32);
    OddSeries go = analyze_odd(r.G, 32);
    for (std::size_t j = 0; j < 32; ++j) {
        CHECK(std::fabs(fe.series.c[j]) < 1e-11);
        CHECK(std::fabs(go.c[j]) < 1e-11);
    }
    CHECK(std::fabs(fe.mean) < 1e-11);
}

TEST_CASE("both evaluation paths agree") {
    Grid g(128);
    EvalOptions sd, ss;
    sd.path = EvalPath::direct;
    ss.path = EvalPath::stable;
    for (double eps : {0.025, 0.05, 0.1}) {
        SheetState st = wavy(eps);
        NodalResiduals rd = eval_nodal(st, g, sd), rs = eval_nodal(st, g, ss);
        for (std::size_t i = 0; i < g.M; ++i) {
            CHECK(std::fabs(rd.F[i] - rs.F[i]) < 1e-7);
            CHECK(std::fabs(rd.G[i] - rs.G[i]) < 1e-7);
        }
    }
    // the automatic path is one of the two, chosen by the switch
    SheetState lo = wavy(0.01), hi = wavy(0.1);
    CHECK(eval_nodal(lo, g).F == eval_nodal(lo, g, ss).F);
    CHECK(eval_nodal(hi, g).F == eval_nodal(hi, g, sd).F);
}

TEST_CASE("assembly matches the velocity tangency") {
    Grid g(256);
    SheetState st = circle(0.05, 1.0, 0.25);
    std::vector<double> F = eval_F(st, g);
    std::vector<double> tg = verify_tangency(st, g);
    for (std::size_t i = 0; i < g.M; ++i) CHECK(std::fabs(F[i] - tg[i]) < 2.5e-9);

    SheetState w = wavy(0.05);
    std::vector<double> Fw = eval_F(w, g);
    std::vector<double> tw = verify_tangency(w, g);
    double e2 = w.eps * w.eps;
    std::vector<double> pv = synth(w.p, g), ppv = synth(differentiate(w.p), g);
    for (std::size_t i = 0; i < g.M; ++i) {
        double r = 1.0 + e2 * pv[i], rp = e2 * ppv[i];
        CHECK(std::fabs(Fw[i] - std::sqrt(r * r + rp * rp) * tw[i]) < 1e-7);
    }
}

TEST_CASE("velocity respects the reflection symmetry") {
    Grid g(64);
    std::vector<Vec2> u = eval_velocity(circle(0.1, 1.0, 0.25), g);
    CHECK(std::fabs(u[0].x1) < 1e-11);
    for (std::size_t i = 1; i < g.M; ++i) {
        CHECK(u[g.M - i].x1 == doctest::Approx(-u[i].x1).epsilon(1e-10));
        CHECK(u[g.M - i].x2 == doctest::Approx(u[i].x2).epsilon(1e-10));
    }
}

TEST_CASE("strength check flags a detuned strength") {
    SolverConfig cfg;
    cfg.N = 16;
    cfg.M = 128;
    ContinuationResult cr =
        continuation({0.0, 0.01, 0.02, 0.03, 0.04, 0.05}, 1.0, cfg);
    REQUIRE(cr.completed);
    const ContinuationRecord& rec = cr.records.back();
    SheetState st;
    st.eps = rec.eps;
    st.d = rec.d;
    st.W = rec.W;
    st.p = EvenSeries(rec.p_coeffs);
    st.q = EvenSeries(rec.q_coeffs);

    Grid g(cfg.M);
    double last = -1.0;
    for (double delta : {0.0, 1e-4, 2e-4, 4e-4}) {
        SheetState pert = st;
        pert.q.c[1] += delta;
        StrengthCheck sc = verify_strength(pert, g);
        double mean = 0.0;
        for (double v : sc.values) mean += v;
        mean /= (double)sc.values.size();
        CHECK(sc.K == doctest::Approx(-mean).epsilon(1e-12));
        double var = 0.0;
        for (double v : sc.values) var += (v - mean) * (v - mean);
        double sd = std::sqrt(var / (double)sc.values.size());
        CHECK(sd > last);
        last = sd;
    }
}

TEST_CASE("parameter sign flip is a reparameterization") {
    Grid g(64);
    SheetState a = wavy(0.07), b = wavy(-0.07);
    NodalResiduals ra = eval_nodal(a, g), rb = eval_nodal(b, g);
    CHECK(ra.F == rb.F);
    CHECK(ra.G == rb.G);
    CHECK(ra.g_mean == rb.g_mean);
}

TEST_CASE("inadmissible geometries are rejected") {
    Grid g(64);
    CHECK_THROWS_AS(check_admissible(circle(0.1, 0.9, 0.25), g), std::domain_error);
    CHECK_THROWS_AS(check_admissible(circle(0.55, 1.0, 0.25), g), std::domain_error);
    SheetState neg = circle(0.3, 1.0, 0.25);
    neg.p.c[0] = -12.0;
    CHECK_THROWS_AS(check_admissible(neg, g), std::domain_error);
    CHECK_NOTHROW(check_admissible(wavy(0.1), g));

    // the velocity route genuinely divides by eps^2
    CHECK_THROWS_AS(eval_velocity(circle(0.0, 1.0, 0.25), g), std::domain_error);
    CHECK_THROWS_AS(verify_tangency(circle(0.0, 1.0, 0.25), g), std::domain_error);
    EvalOptions d;
    d.path = EvalPath::direct;
    CHECK_THROWS_AS(eval_nodal(circle(0.0, 1.0, 0.25), g, d), std::domain_error);
}

TEST_CASE("strict text variant differs and is report-only") {
    Grid g(128);
    SheetState st = circle(0.1, 1.0, 0.25);
    EvalOptions strict;
    strict.strict_display = true;
    NodalResiduals rl = eval_nodal(st, g, strict);
    NodalResiduals rs = eval_nodal(st, g);
    std::vector<double> dF(g.M), dG(g.M);
    for (std::size_t i = 0; i < g.M; ++i) {
        dF[i] = rl.F[i] - rs.F[i];
        dG[i] = rl.G[i] - rs.G[i];
    }
    CHECK(sup(dF) > 1e-3);
    CHECK(sup(dG) > 1e-3);
    CHECK_THROWS_AS(eval_nodal(circle(0.0, 1.0, 0.25), g, strict), std::domain_error);
}
