#pragma once
#include <cstddef>
#include <functional>
#include <vector>

#include "vsheet/vec2.hpp"

namespace vsheet {

// Radial interaction profile G(rho) and its derivative.
struct RadialKernel {
    std::function<double(double)> G;
    std::function<double(double)> dG;
};

// G(rho) = 1/rho, G'(rho) = -1/rho^2; the chord kernel of the sheet problem.
RadialKernel inverse_distance_kernel();

// Overall strength scale chosen so the two-point row translates at +1/(2d)^2
// along e_2 with the inverse-distance kernel.
inline constexpr double kPointNormalization = -1.0;

struct PointSystem {
    std::vector<Vec2> positions;
    std::vector<double> strengths;
    double d = 1.0;
    RadialKernel kernel;
};

// z_i = (2d i, 0), strength_i = kPointNormalization * (-1)^i. The m = 2 case
// is the uniformly translating pair.
PointSystem alternating_row(std::size_t m, double d, RadialKernel kernel = inverse_distance_kernel());

// v_i = sum_{k != i} strength_k G'(|z_i - z_k|) (z_i - z_k)^perp / |z_i - z_k|.
// Coincident points are an error.
std::vector<Vec2> rhs(const PointSystem& sys);

// The translation speed read two ways from the row configuration: the
// closed-form display sums sign(k) G'(|k|)/(2d)^2, the derivation behind it
// sums G'(2dk). They agree for every m with a power-law kernel and are both
// reported; m = 2 anchors the normalization at 1/(2d)^2.
struct WstarReading {
    double displayed = 0.0;
    double derivation = 0.0;
};

WstarReading wstar_readings(std::size_t m, double d, const RadialKernel& kernel);

// The derivation form; the value the trajectory acceptance uses.
double wstar(std::size_t m, double d, const RadialKernel& kernel);

struct TrajectorySample {
    double t = 0.0;
    std::vector<Vec2> z;
};

// Classical fixed-step RK4. Non-finite positions abort with the time stamp.
std::vector<TrajectorySample> integrate_rk4(const PointSystem& sys, double t_end, double h);

}  // namespace vsheet
