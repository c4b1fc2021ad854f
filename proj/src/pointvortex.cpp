#include "vsheet/pointvortex.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vsheet {

RadialKernel inverse_distance_kernel() {
    RadialKernel k;
    k.G = [](double rho) { return 1.0 / rho; };
    k.dG = [](double rho) { return -1.0 / (rho * rho); };
    return k;
}

PointSystem alternating_row(std::size_t m, double d, RadialKernel kernel) {
    if (m < 2) throw std::invalid_argument("alternating row needs at least two points");
    PointSystem sys;
    sys.d = d;
    sys.kernel = std::move(kernel);
    sys.positions.resize(m);
    sys.strengths.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        sys.positions[i] = {2.0 * d * (double)i, 0.0};
        sys.strengths[i] = (i % 2 == 0) ? kPointNormalization : -kPointNormalization;
    }
    return sys;
}

std::vector<Vec2> rhs(const PointSystem& sys) {
    const std::size_t m = sys.positions.size();
    if (sys.strengths.size() != m)
        throw std::invalid_argument("positions and strengths differ in length");
    std::vector<Vec2> v(m, Vec2{0.0, 0.0});
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            if (k == i) continue;
            Vec2 dz = sys.positions[i] - sys.positions[k];
            double L = std::sqrt(dz.x1 * dz.x1 + dz.x2 * dz.x2);
            if (L == 0.0)
                throw std::domain_error("coincident points in the row");
            double f = sys.strengths[k] * sys.kernel.dG(L) / L;
            Vec2 pz = perp(dz);
            v[i].x1 += f * pz.x1;
            v[i].x2 += f * pz.x2;
        }
    }
    return v;
}

WstarReading wstar_readings(std::size_t m, double d, const RadialKernel& kernel) {
    if (m < 2) throw std::invalid_argument("row speed needs at least two points");
    double disp = 0.0, der = 0.0;
    for (std::size_t k = 1; k < m; ++k) {
        disp += kernel.dG((double)k);
        der += kernel.dG(2.0 * d * (double)k);
    }
    WstarReading out;
    out.displayed = kPointNormalization * disp / (4.0 * d * d);
    out.derivation = kPointNormalization * der;
    return out;
}

double wstar(std::size_t m, double d, const RadialKernel& kernel) {
    return wstar_readings(m, d, kernel).derivation;
}

std::vector<TrajectorySample> integrate_rk4(const PointSystem& sys, double t_end, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
    if (!(t_end >= 0.0)) throw std::invalid_argument("end time must be nonnegative");
    const std::size_t m = sys.positions.size();
    long long nsteps = std::llround(t_end / h);
    if (nsteps < 0) nsteps = 0;

    PointSystem work = sys;
    auto vel = [&](const std::vector<Vec2>& z) {
        work.positions = z;
        return rhs(work);
    };

    std::vector<TrajectorySample> traj;
    traj.reserve((std::size_t)nsteps + 1);
    std::vector<Vec2> z = sys.positions;
    traj.push_back({0.0, z});
    for (long long s = 0; s < nsteps; ++s) {
        std::vector<Vec2> k1 = vel(z);
        std::vector<Vec2> zt(m);
        for (std::size_t i = 0; i < m; ++i) zt[i] = z[i] + (0.5 * h) * k1[i];
        std::vector<Vec2> k2 = vel(zt);
        for (std::size_t i = 0; i < m; ++i) zt[i] = z[i] + (0.5 * h) * k2[i];
        std::vector<Vec2> k3 = vel(zt);
        for (std::size_t i = 0; i < m; ++i) zt[i] = z[i] + h * k3[i];
        std::vector<Vec2> k4 = vel(zt);
        double t = (double)(s + 1) * h;
        for (std::size_t i = 0; i < m; ++i) {
            z[i] = z[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(z[i].x1) || !std::isfinite(z[i].x2)) {
                std::ostringstream msg;
                msg << "trajectory blew up at t=" << t << " (point " << i << ")";
                throw std::runtime_error(msg.str());
            }
        }
        traj.push_back({t, z});
    }
    return traj;
}

}  // namespace vsheet
