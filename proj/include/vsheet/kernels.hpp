#pragma once
#include <cstddef>
#include <functional>
#include <vector>

#include "vsheet/trig.hpp"

namespace vsheet {

// Interaction kernels sampled at the staggered offsets u_m = (2m+1)pi/M,
// which is where the inner integration nodes sit relative to an outer plain
// node. The second half of each table is mirrored from the first with the
// parity sign written explicitly, so that pair sums over (m, M-1-m) cancel
// or double exactly in floating point.
//
// For plain node x_i and staggered node xbar_k the offset is
// xbar_k - x_i = u_{(k-i) mod M}, hence a kernel evaluated at x_i - xbar_k
// reads -sine[(k-i) mod M] for the odd kernel and table[(k-i) mod M] for the
// even ones.
struct KernelTables {
    std::size_t M = 0;
    std::vector<double> sine;    // sin(u) / (4 |sin(u/2)|^3), odd
    std::vector<double> hyper;   // 1 / (4 |sin(u/2)|^3), even
    std::vector<double> weak;    // 1 / (4 |sin(u/2)|), even
    std::vector<double> cosu;    // cos(u)
    std::vector<double> sinu;    // sin(u)
    std::vector<double> s2sq;    // sin^2(u/2)
    double c_mean = 0.0;         // pairwise mean of weak; the cutoff constant
};

KernelTables build_kernel_tables(std::size_t M);

// Mean-value PV quadrature: (1/M) sum_k f(x + (2k+1)pi/M), accumulated over
// mirrored offset pairs. Odd-about-x integrands cancel to machine precision;
// even 1/|u| parts see a finite-part cutoff at scale pi/M.
double pv_mean_integral(const std::function<double(double)>& f, double x, const Grid& grid);

// D1-type near-field denominator: eps^4 (p - pbar)^2 + 4 r rbar sin^2(u/2).
double near_denominator(double eps, double px, double pxbar, double u);

// Squared distance to the mirror sheet:
// (eps (r cos x + rbar cos xbar) - 2d)^2 + eps^2 (r sin x + rbar sin xbar)^2.
double far_denominator(double eps, double d, double rx, double x, double rxbar, double xbar);

// S[h](x) = pv-mean of h(xbar) sin(x-xbar) / (4 |sin((x-xbar)/2)|^3).
// Diagonal on parity modes: cos(jx) -> lambda_j sin(jx).
std::vector<double> sine_kernel_apply(const EvenSeries& h, const Grid& grid);

// K[h](x) = pv-mean of (h(x) - h(xbar)) / (4 |sin((x-xbar)/2)|^3).
// cos(jx) -> mu_j cos(jx).
std::vector<double> even_kernel_apply(const EvenSeries& h, const Grid& grid);

// A[h](x) = pv-mean of h(xbar) / (4 |sin((x-xbar)/2)|); cos(jx) -> nu_j cos(jx).
std::vector<double> mean_kernel_apply(const EvenSeries& h, const Grid& grid);

// Staggered-grid mean of sin(j xbar) ln tan(xbar/4) over (0, 2pi).
double constant_C(std::size_t j, const Grid& grid);

struct MultiplierTable {
    std::vector<double> lambda;  // sine kernel, cos(jx) -> lambda_j sin(jx)
    std::vector<double> mu;      // difference kernel, cos(jx) -> mu_j cos(jx)
    std::vector<double> nu;      // weak kernel, cos(jx) -> nu_j cos(jx)
    std::vector<double> C;       // log-tangent integrals
    double c_mean = 0.0;
    std::size_t modes() const { return lambda.size(); }
};

// Empirical multipliers of the discrete operators at the given M. These are
// the values the linearization uses; closed-form candidates are compared in
// reports, never substituted.
MultiplierTable measure_multipliers(std::size_t N, const Grid& grid);

}  // namespace vsheet
