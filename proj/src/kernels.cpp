#include "vsheet/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vsheet {

KernelTables build_kernel_tables(std::size_t M) {
    Grid check(M);  // validates power-of-two >= 4
    KernelTables t;
    t.M = M;
    t.sine.resize(M);
    t.hyper.resize(M);
    t.weak.resize(M);
    t.cosu.resize(M);
    t.sinu.resize(M);
    t.s2sq.resize(M);
    // First half only; the second half is the mirror u -> 2pi - u, written
    // with explicit signs so odd/even symmetry is exact bitwise.
    for (std::size_t m = 0; m < M / 2; ++m) {
        double u = (2.0 * (double)m + 1.0) * M_PI / (double)M;  // in (0, pi)
        double s2 = std::sin(0.5 * u);                          // > 0 here
        double su = std::sin(u);
        double cu = std::cos(u);
        double s23 = s2 * s2 * s2;
        t.sine[m] = su / (4.0 * s23);
        t.hyper[m] = 1.0 / (4.0 * s23);
        t.weak[m] = 1.0 / (4.0 * s2);
        t.cosu[m] = cu;
        t.sinu[m] = su;
        t.s2sq[m] = s2 * s2;
        std::size_t mm = M - 1 - m;
        t.sine[mm] = -t.sine[m];
        t.hyper[mm] = t.hyper[m];
        t.weak[mm] = t.weak[m];
        t.cosu[mm] = cu;
        t.sinu[mm] = -su;
        t.s2sq[mm] = t.s2sq[m];
    }
    double acc = 0.0;
    for (std::size_t m = 0; m < M / 2; ++m) acc += t.weak[m] + t.weak[M - 1 - m];
    t.c_mean = acc / (double)M;
    return t;
}

double pv_mean_integral(const std::function<double(double)>& f, double x, const Grid& grid) {
    const std::size_t M = grid.M;
    const double two_pi = 2.0 * M_PI;
    double acc = 0.0;
    for (std::size_t m = 0; m < M / 2; ++m) {
        double u = (2.0 * (double)m + 1.0) * M_PI / (double)M;
        double v1 = f(x + u);
        double v2 = f(x + (two_pi - u));
        if (!std::isfinite(v1) || !std::isfinite(v2))
            throw std::runtime_error("pv_mean_integral: non-finite integrand at offset " +
                                     std::to_string(u) + " from x = " + std::to_string(x));
        acc += v1 + v2;
    }
    return acc / (double)M;
}

double near_denominator(double eps, double px, double pxbar, double u) {
    double e2 = eps * eps;
    double dp = px - pxbar;
    double r = 1.0 + e2 * px, rb = 1.0 + e2 * pxbar;
    double s2 = std::sin(0.5 * u);
    return e2 * e2 * dp * dp + 4.0 * r * rb * s2 * s2;
}

double far_denominator(double eps, double d, double rx, double x, double rxbar, double xbar) {
    double w1 = eps * (rx * std::cos(x) + rxbar * std::cos(xbar)) - 2.0 * d;
    double w2 = eps * (rx * std::sin(x) + rxbar * std::sin(xbar));
    return w1 * w1 + w2 * w2;
}

namespace {
// Samples of h on the staggered companion of a plain grid.
std::vector<double> staggered_samples(const EvenSeries& h, std::size_t M) {
    Grid gs(M, true);
    return synth(h, gs);
}
}  // namespace

std::vector<double> sine_kernel_apply(const EvenSeries& h, const Grid& grid) {
    const std::size_t M = grid.M;
    KernelTables t = build_kernel_tables(M);
    std::vector<double> hb = staggered_samples(h, M);
    std::vector<double> out(M);
    for (std::size_t i = 0; i < M; ++i) {
        double acc = 0.0;
        // Kernel argument is x_i - xbar_k = -u_{(k-i) mod M}; the kernel is odd.
        for (std::size_t m = 0; m < M / 2; ++m) {
            std::size_t k1 = (i + m) % M;
            std::size_t k2 = (i + (M - 1 - m)) % M;
            acc += hb[k2] * t.sine[m] - hb[k1] * t.sine[m];
        }
        out[i] = acc / (double)M;
    }
    return out;
}

std::vector<double> even_kernel_apply(const EvenSeries& h, const Grid& grid) {
    const std::size_t M = grid.M;
    KernelTables t = build_kernel_tables(M);
    std::vector<double> hb = staggered_samples(h, M);
    std::vector<double> hp = synth(h, Grid(M));
    std::vector<double> out(M);
    for (std::size_t i = 0; i < M; ++i) {
        double acc = 0.0;
        for (std::size_t m = 0; m < M / 2; ++m) {
            std::size_t k1 = (i + m) % M;
            std::size_t k2 = (i + (M - 1 - m)) % M;
            acc += (hp[i] - hb[k1]) * t.hyper[m] + (hp[i] - hb[k2]) * t.hyper[m];
        }
        out[i] = acc / (double)M;
    }
    return out;
}

std::vector<double> mean_kernel_apply(const EvenSeries& h, const Grid& grid) {
    const std::size_t M = grid.M;
    KernelTables t = build_kernel_tables(M);
    std::vector<double> hb = staggered_samples(h, M);
    std::vector<double> out(M);
    for (std::size_t i = 0; i < M; ++i) {
        double acc = 0.0;
        for (std::size_t m = 0; m < M / 2; ++m) {
            std::size_t k1 = (i + m) % M;
            std::size_t k2 = (i + (M - 1 - m)) % M;
            acc += hb[k1] * t.weak[m] + hb[k2] * t.weak[m];
        }
        out[i] = acc / (double)M;
    }
    return out;
}

double constant_C(std::size_t j, const Grid& grid) {
    if (j < 1) throw std::invalid_argument("constant_C: j >= 1 required");
    const std::size_t M = grid.M;
    double acc = 0.0;
    for (std::size_t m = 0; m < M / 2; ++m) {
        double u1 = (2.0 * (double)m + 1.0) * M_PI / (double)M;
        double u2 = 2.0 * M_PI - u1;
        acc += std::sin((double)j * u1) * std::log(std::tan(0.25 * u1));
        acc += std::sin((double)j * u2) * std::log(std::tan(0.25 * u2));
    }
    return acc / (double)M;
}

MultiplierTable measure_multipliers(std::size_t N, const Grid& grid) {
    if (N > grid.M / 4)
        throw std::invalid_argument("measure_multipliers: N must not exceed M/4");
    MultiplierTable tab;
    tab.lambda.resize(N);
    tab.mu.resize(N);
    tab.nu.resize(N);
    tab.C.resize(N);
    tab.c_mean = build_kernel_tables(grid.M).c_mean;
    for (std::size_t j = 1; j <= N; ++j) {
        EvenSeries e(j);
        e.c[j - 1] = 1.0;
        tab.lambda[j - 1] = analyze_odd(sine_kernel_apply(e, grid), j).c[j - 1];
        tab.mu[j - 1] = analyze_even(even_kernel_apply(e, grid), j).series.c[j - 1];
        tab.nu[j - 1] = analyze_even(mean_kernel_apply(e, grid), j).series.c[j - 1];
        tab.C[j - 1] = constant_C(j, grid);
    }
    return tab;
}

}  // namespace vsheet
