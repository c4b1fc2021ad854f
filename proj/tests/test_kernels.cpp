#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "vsheet/kernels.hpp"

using namespace vsheet;

namespace {
// Independent series for the log-tangent integrals:
// ln tan(u/4) = -2 sum_{m odd} cos(m u / 2) / m on (0, 2pi); integrating termwise
// against sin(j u) gives C_j = -(8 j / pi) sum_{m odd} 1 / (m (4 j^2 - m^2)).
double series_C(std::size_t j) {
    double dj = (double)j;
    double s = 0.0;
    for (long long m = 1; m <= 4000001; m += 2) {
        double dm = (double)m;
        s += 1.0 / (dm * (4.0 * dj * dj - dm * dm));
    }
    return -(8.0 * dj / M_PI) * s;
}
}  // namespace

TEST_CASE("tables mirror with exact parity") {
    KernelTables t = build_kernel_tables(64);
    for (std::size_t m = 0; m < 32; ++m) {
        CHECK(t.sine[m] + t.sine[63 - m] == 0.0);
        CHECK(t.hyper[m] == t.hyper[63 - m]);
        CHECK(t.weak[m] == t.weak[63 - m]);
        CHECK(t.cosu[m] == t.cosu[63 - m]);
        CHECK(t.sinu[m] + t.sinu[63 - m] == 0.0);
        CHECK(t.s2sq[m] == t.s2sq[63 - m]);
    }
    // pairwise sums of the odd table cancel exactly, so its pv mean is 0
    double acc = 0.0;
    for (std::size_t m = 0; m < 32; ++m) acc += t.sine[m] + t.sine[63 - m];
    CHECK(acc == 0.0);
}

TEST_CASE("tables are reproducible bitwise") {
    KernelTables a = build_kernel_tables(256), b = build_kernel_tables(256);
    CHECK(a.sine == b.sine);
    CHECK(a.hyper == b.hyper);
    CHECK(a.weak == b.weak);
    CHECK(a.c_mean == b.c_mean);
}

TEST_CASE("pv mean quadrature basics") {
    Grid g(128);
    double x = 0.7;
    CHECK(pv_mean_integral([](double) { return 1.0; }, x, g) == 1.0);
    double odd = pv_mean_integral(
        [&](double xb) { return std::sin(xb - x) * std::exp(std::cos(xb - x)); }, x, g);
    CHECK(std::fabs(odd) < 1e-14);
    double cosv = pv_mean_integral([&](double xb) { return std::cos(xb - x); }, x, g);
    CHECK(std::fabs(cosv) < 1e-15);
    CHECK_THROWS_AS(pv_mean_integral(
                        [](double) { return std::numeric_limits<double>::infinity(); }, x, g),
                    std::runtime_error);
}

TEST_CASE("pv mean converges spectrally on smooth integrands") {
    double x = 1.1;
    auto f = [&](double xb) { return std::exp(std::cos(xb - x)) * std::cos(2.0 * (xb - x)); };
    double a = pv_mean_integral(f, x, Grid(64));
    double b = pv_mean_integral(f, x, Grid(128));
    double c = pv_mean_integral(f, x, Grid(256));
    CHECK(std::fabs(b - a) < 1e-10);
    CHECK(std::fabs(c - b) < 1e-10);
}

TEST_CASE("near and far denominators") {
    double eps = 0.3, u = 0.4, px = 0.2, pxb = -0.5;
    double e2 = eps * eps;
    double manual = e2 * e2 * (px - pxb) * (px - pxb) +
                    4.0 * (1 + e2 * px) * (1 + e2 * pxb) * std::sin(0.5 * u) * std::sin(0.5 * u);
    CHECK(near_denominator(eps, px, pxb, u) == doctest::Approx(manual).epsilon(1e-15));

    // chord to the mirror can never be shorter than the gap bound
    double d = 1.2, pmax = 0.5;
    double bound = 2.0 * d - 2.0 * eps * (1.0 + e2 * pmax);
    Grid g(64);
    for (std::size_t i = 0; i < 64; i += 7)
        for (std::size_t k = 0; k < 64; k += 5) {
            double px1 = pmax * std::cos(g.node(i)), px2 = pmax * std::cos(g.node(k));
            double fd = far_denominator(eps, d, 1 + e2 * px1, g.node(i), 1 + e2 * px2,
                                        g.node(k));
            CHECK(fd >= bound * bound - 1e-12);
        }
}

TEST_CASE("kernel applies are diagonal on parity modes") {
    Grid g(128);
    const std::size_t N = 32;
    for (std::size_t j : {1ul, 2ul, 5ul, 16ul}) {
        EvenSeries e(j);
        e.c[j - 1] = 1.0;
        std::vector<double> sv = sine_kernel_apply(e, g);
        OddSeries so = analyze_odd(sv, N);
        EvenAnalysis se = analyze_even(sv, N);
        CHECK(so.c[j - 1] > 0.0);
        for (std::size_t jj = 1; jj <= N; ++jj)
            if (jj != j) CHECK(std::fabs(so.c[jj - 1]) < 1e-12);
        for (std::size_t jj = 1; jj <= N; ++jj) CHECK(std::fabs(se.series.c[jj - 1]) < 1e-12);
        CHECK(std::fabs(se.mean) < 1e-12);

        std::vector<double> kv = even_kernel_apply(e, g);
        EvenAnalysis ke = analyze_even(kv, N);
        OddSeries ko = analyze_odd(kv, N);
        CHECK(ke.series.c[j - 1] > 0.0);
        for (std::size_t jj = 1; jj <= N; ++jj)
            if (jj != j) CHECK(std::fabs(ke.series.c[jj - 1]) < 1e-10);
        for (std::size_t jj = 1; jj <= N; ++jj) CHECK(std::fabs(ko.c[jj - 1]) < 1e-11);

        std::vector<double> av = mean_kernel_apply(e, g);
        EvenAnalysis ae = analyze_even(av, N);
        CHECK(ae.series.c[j - 1] > 0.0);
        for (std::size_t jj = 1; jj <= N; ++jj)
            if (jj != j) CHECK(std::fabs(ae.series.c[jj - 1]) < 1e-12);
    }
}

TEST_CASE("multiplier table at M=256") {
    Grid g(256);
    MultiplierTable t = measure_multipliers(16, g);
    CHECK(t.lambda[0] == doctest::Approx(3.8560693278646005).epsilon(1e-10));
    CHECK(t.c_mean == doctest::Approx(1.1231732737484146).epsilon(1e-9));
    for (std::size_t j = 0; j < 16; ++j) {
        CHECK(t.lambda[j] > 0.0);
        CHECK(t.mu[j] > 0.0);
        CHECK(t.nu[j] > 0.0);
        CHECK(t.C[j] < 0.0);
    }
    // growth: mu tracks j^2/2, lambda grows slower than that
    CHECK(t.mu[15] > t.mu[0]);
    CHECK(t.lambda[15] > t.lambda[0]);

    // discrete identities tying the first mode to the cutoff constant
    CHECK(std::fabs(t.mu[0] - 2.0 * t.c_mean) < 1e-11);
    CHECK(std::fabs(t.lambda[0] - 2.0 * (t.nu[0] + t.c_mean)) < 1e-11);

    CHECK_THROWS_AS(measure_multipliers(65, g), std::invalid_argument);
}

TEST_CASE("cutoff constant drifts with the grid") {
    double c1 = build_kernel_tables(256).c_mean;
    double c2 = build_kernel_tables(512).c_mean;
    CHECK(c2 == doctest::Approx(1.2334909489887127).epsilon(1e-9));
    // ln 2 / (2 pi) per doubling, roughly
    CHECK(c2 - c1 == doctest::Approx(std::log(2.0) / (2.0 * M_PI)).epsilon(2e-2));
}

TEST_CASE("log-tangent integrals against the independent series") {
    CHECK(std::fabs(series_C(1) - (-2.0 / M_PI)) < 1e-10);  // the series telescopes at j=1
    Grid g(4096);
    CHECK(std::fabs(constant_C(1, g) - series_C(1)) < 1e-6);
    for (std::size_t j : {2ul, 3ul, 4ul}) {
        double quad = constant_C(j, g);
        // quadrature error grows with the mode, series stays the reference
        CHECK(std::fabs(quad - series_C(j)) < 4e-6);
        CHECK(quad < 0.0);
    }
    // refinement moves the quadrature towards the series value
    double e1 = std::fabs(constant_C(1, Grid(1024)) - series_C(1));
    double e2 = std::fabs(constant_C(1, Grid(4096)) - series_C(1));
    CHECK(e2 < e1);
    CHECK_THROWS_AS(constant_C(0, g), std::invalid_argument);
}
