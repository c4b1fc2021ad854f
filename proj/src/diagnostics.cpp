#include "vsheet/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vsheet {

namespace {

struct RadialSamples {
    std::vector<double> r, r1, r2;
    std::vector<double> x;
};

RadialSamples radial_samples(const SheetState& st, const Grid& grid) {
    Grid gp(grid.M);
    double e2 = st.eps * st.eps;
    RadialSamples s;
    std::vector<double> p = synth(st.p, gp);
    std::vector<double> p1 = synth(differentiate(st.p), gp);
    std::vector<double> p2 = synth(differentiate(differentiate(st.p)), gp);
    s.r.resize(grid.M);
    s.r1.resize(grid.M);
    s.r2.resize(grid.M);
    s.x = gp.nodes();
    for (std::size_t i = 0; i < grid.M; ++i) {
        s.r[i] = 1.0 + e2 * p[i];
        s.r1[i] = e2 * p1[i];
        s.r2[i] = e2 * p2[i];
    }
    return s;
}

}  // namespace

std::vector<double> curvature(const SheetState& st, const Grid& grid) {
    RadialSamples s = radial_samples(st, grid);
    std::vector<double> k(grid.M);
    for (std::size_t i = 0; i < grid.M; ++i) {
        double num = s.r[i] * s.r[i] + 2.0 * s.r1[i] * s.r1[i] - s.r[i] * s.r2[i];
        double den = s.r[i] * s.r[i] + s.r1[i] * s.r1[i];
        k[i] = num / (den * std::sqrt(den));
    }
    return k;
}

std::vector<double> curvature_parametric(const SheetState& st, const Grid& grid) {
    RadialSamples s = radial_samples(st, grid);
    std::vector<double> k(grid.M);
    for (std::size_t i = 0; i < grid.M; ++i) {
        double cx = std::cos(s.x[i]), sx = std::sin(s.x[i]);
        double z1p = s.r1[i] * cx - s.r[i] * sx;
        double z2p = s.r1[i] * sx + s.r[i] * cx;
        double z1pp = s.r2[i] * cx - 2.0 * s.r1[i] * sx - s.r[i] * cx;
        double z2pp = s.r2[i] * sx + 2.0 * s.r1[i] * cx - s.r[i] * sx;
        double den = z1p * z1p + z2p * z2p;
        k[i] = (z1p * z2pp - z2p * z1pp) / (den * std::sqrt(den));
    }
    return k;
}

double min_curvature(const SheetState& st, const Grid& grid, std::size_t oversample) {
    if (oversample == 0) throw std::invalid_argument("oversample factor must be positive");
    double m = std::numeric_limits<double>::infinity();
    for (double v : curvature(st, grid)) m = std::min(m, v);
    if (oversample > 1) {
        Grid fine(grid.M * oversample);
        for (double v : curvature(st, fine)) m = std::min(m, v);
    }
    return m;
}

MirrorReport mirror_check(const ContinuationRecord& plus, const ContinuationRecord& minus) {
    if (std::fabs(plus.eps) != std::fabs(minus.eps))
        throw std::invalid_argument("mirror check needs matching |eps|");
    if (plus.p_coeffs.size() != minus.p_coeffs.size() ||
        plus.q_coeffs.size() != minus.q_coeffs.size())
        throw std::invalid_argument("mirror check needs matching mode counts");
    MirrorReport rep;
    for (std::size_t j = 0; j < plus.p_coeffs.size(); ++j) {
        double dv = std::fabs(plus.p_coeffs[j] - minus.p_coeffs[j]);
        if (dv > rep.max_coeff_diff) {
            rep.max_coeff_diff = dv;
            rep.worst_mode = j + 1;
        }
    }
    for (std::size_t j = 0; j < plus.q_coeffs.size(); ++j) {
        double dv = std::fabs(plus.q_coeffs[j] - minus.q_coeffs[j]);
        if (dv > rep.max_coeff_diff) {
            rep.max_coeff_diff = dv;
            rep.worst_mode = j + 1;
        }
    }
    rep.w_diff = std::fabs(plus.W - minus.W);
    rep.pass = rep.max_coeff_diff < 1e-9 && rep.w_diff < 1e-10;
    return rep;
}

SlopeFit wslope_fit(const std::vector<ContinuationRecord>& records) {
    if (records.size() < 4)
        throw std::invalid_argument("slope fit needs at least 4 records");
    std::size_t i0 = 0;
    double emin_all = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < records.size(); ++i) {
        double a = std::fabs(records[i].eps);
        if (a < emin_all) {
            emin_all = a;
            i0 = i;
        }
    }
    double emin = std::numeric_limits<double>::infinity(), emax = 0.0;
    for (const auto& r : records) {
        double a = std::fabs(r.eps);
        if (a > 0.0) {
            emin = std::min(emin, a);
            emax = std::max(emax, a);
        }
    }
    if (!(emax >= 10.0 * emin * (1.0 - 1e-12)))
        throw std::invalid_argument("slope fit needs records spanning a decade in eps");

    SlopeFit fit;
    fit.W0 = records[i0].W;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (const auto& r : records) {
        double a = std::fabs(r.eps);
        double dW = std::fabs(r.W - fit.W0);
        if (a == 0.0 || dW <= 1e-14) continue;
        double lx = std::log(a), ly = std::log(dW);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return fit;  // defined stays false
    double dn = (double)n;
    double slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
    double icept = (sy - slope * sx) / dn;
    fit.exponent = slope;
    fit.prefactor = std::exp(icept);
    fit.defined = true;
    return fit;
}

}  // namespace vsheet
