#include "vsheet/contour.hpp"

#include <cmath>
#include <stdexcept>

#include "vsheet/kernels.hpp"
#include "vsheet/parallel.hpp"

namespace vsheet {

namespace {

// Everything the node loops need, sampled once. The mirror curve has the
// same r and gamma by the pair symmetry, so plain-grid samples serve both
// the outer curve and the mirror integrand.
struct Samples {
    std::size_t M;
    double eps, e2, d, W;
    std::vector<double> cosx, sinx;    // plain nodes
    std::vector<double> cosxs, sinxs;  // staggered nodes
    std::vector<double> p, q, pp, r, rp, gam, rt;  // plain
    std::vector<double> pb, qb, rb, gamb, ppb;     // staggered
};

Samples sample_state(const SheetState& st, const Grid& grid) {
    Samples s;
    s.M = grid.M;
    s.eps = std::fabs(st.eps);
    s.e2 = s.eps * s.eps;
    s.d = st.d;
    s.W = st.W;
    Grid gp(grid.M), gs(grid.M, true);
    s.p = synth(st.p, gp);
    s.q = synth(st.q, gp);
    s.pp = synth(differentiate(st.p), gp);
    s.pb = synth(st.p, gs);
    s.qb = synth(st.q, gs);
    s.ppb = synth(differentiate(st.p), gs);
    s.cosx.resize(s.M);
    s.sinx.resize(s.M);
    s.cosxs.resize(s.M);
    s.sinxs.resize(s.M);
    s.r.resize(s.M);
    s.rp.resize(s.M);
    s.gam.resize(s.M);
    s.rt.resize(s.M);
    s.rb.resize(s.M);
    s.gamb.resize(s.M);
    for (std::size_t i = 0; i < s.M; ++i) {
        double x = gp.node(i), xs = gs.node(i);
        s.cosx[i] = std::cos(x);
        s.sinx[i] = std::sin(x);
        s.cosxs[i] = std::cos(xs);
        s.sinxs[i] = std::sin(xs);
        s.r[i] = 1.0 + s.e2 * s.p[i];
        s.rp[i] = s.e2 * s.pp[i];
        s.gam[i] = 1.0 + s.e2 * s.q[i];
        s.rt[i] = s.r[i] * s.r[i] + s.rp[i] * s.rp[i];
        s.rb[i] = 1.0 + s.e2 * s.pb[i];
        s.gamb[i] = 1.0 + s.e2 * s.qb[i];
    }
    return s;
}

double removed_mean(std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    double mean = acc / (double)v.size();
    for (double& x : v) x -= mean;
    return mean;
}

// Standard assembly. Near-field integrals run over the staggered grid in
// mirrored offset pairs; mirror-field integrals run over the plain grid in
// index order. Both orders are fixed per node, so the result is independent
// of how nodes are distributed over threads.
void assemble_standard(const Samples& s, const KernelTables& T, bool stable,
                       int threads, std::vector<double>& F, std::vector<double>& G) {
    const std::size_t M = s.M;
    const double eps = s.eps, e2 = s.e2, e4 = e2 * e2, d = s.d, W = s.W;
    F.assign(M, 0.0);
    G.assign(M, 0.0);
    parallel_for(M, threads, [&](std::size_t i) {
        const double pi = s.p[i], ppi = s.pp[i], ri = s.r[i], rpi = s.rp[i];
        double selfF = 0.0, selfG = 0.0;
        if (!stable) {
            double aF = 0.0, aG = 0.0;
            for (std::size_t m = 0; m < M / 2; ++m) {
                for (std::size_t idx : {m, M - 1 - m}) {
                    std::size_t k = (i + idx) % M;
                    double cu = T.cosu[idx];
                    double su = -T.sinu[idx];  // sin(x_i - xbar_k)
                    double dp = pi - s.pb[k];
                    double D1 = e4 * dp * dp + 4.0 * ri * s.rb[k] * T.s2sq[idx];
                    double D32 = D1 * std::sqrt(D1);
                    double numF = ri * rpi - s.rb[k] * rpi * cu + ri * s.rb[k] * su;
                    double numG = ri * ri - ri * s.rb[k] * cu - s.rb[k] * rpi * su;
                    aF += numF * s.gamb[k] / D32;
                    aG += numG * s.gamb[k] / D32;
                }
            }
            selfF = aF / (double)M / e2;
            selfG = aG / (double)M / e2;
        } else {
            // The 1 in the numerators cancels the 1 in gamma and the
            // normalization of D1^{3/2} analytically; what is left is the
            // relative factor Phi = (gamma_bar / (r_rel D1_rel^{3/2}) - 1)/eps^2,
            // finite down to eps = 0.
            double aF = 0.0, aGmain = 0.0, aGcorr = 0.0;
            for (std::size_t m = 0; m < M / 2; ++m) {
                for (std::size_t idx : {m, M - 1 - m}) {
                    std::size_t k = (i + idx) % M;
                    double cu = T.cosu[idx];
                    double su = -T.sinu[idx];
                    double dp = pi - s.pb[k];
                    double s2sq = T.s2sq[idx];
                    double D1 = e4 * dp * dp + 4.0 * ri * s.rb[k] * s2sq;
                    double D32 = D1 * std::sqrt(D1);
                    double piece1 = ri * ppi * (1.0 - cu) * s.gamb[k] / D32;
                    double piece2 = e2 * ppi * dp * cu * s.gamb[k] / D32;
                    double wt = e4 * dp * dp / (4.0 * ri * s.rb[k] * s2sq);
                    double Phi;
                    if (eps > 0.0) {
                        double lng = std::log1p(e2 * s.qb[k]) -
                                     0.5 * std::log1p(e2 * (pi + s.pb[k] + e2 * pi * s.pb[k])) -
                                     1.5 * std::log1p(wt);
                        Phi = std::expm1(lng) / e2;
                    } else {
                        Phi = s.qb[k] - 0.5 * (pi + s.pb[k]);
                    }
                    double ko = -0.5 * T.sine[idx];  // sin(x_i-xbar)/(8|sin(u/2)|^3)
                    aF += piece1 + piece2 + ko * Phi;
                    aGmain += T.weak[idx] * Phi;
                    aGcorr += (ri * dp - s.rb[k] * ppi * su) * s.gamb[k] / D32;
                }
            }
            selfF = aF / (double)M;
            // The flat part of the self term, c_mean/eps^2, is dropped here;
            // it is a constant shift of the same equation (the projection
            // kills the constant and the prefactor variation is restored
            // below through Phi2).
            selfG = aGmain / (double)M + aGcorr / (double)M;
        }
        double m1F = 0.0, m1G = 0.0, mw = 0.0;
        for (std::size_t k = 0; k < M; ++k) {
            double w1 = eps * (ri * s.cosx[i] + s.r[k] * s.cosx[k]) - 2.0 * d;
            double w2 = eps * (ri * s.sinx[i] + s.r[k] * s.sinx[k]);
            double ww = w1 * w1 + w2 * w2;
            double Wd3 = ww * std::sqrt(ww);
            double cuf = s.cosx[i] * s.cosx[k] + s.sinx[i] * s.sinx[k];
            double suf = s.sinx[i] * s.cosx[k] - s.cosx[i] * s.sinx[k];
            m1F += (ri * rpi + s.r[k] * rpi * cuf - ri * s.r[k] * suf) * s.gam[k] / Wd3;
            m1G += (ri * ri + rpi * s.r[k] * suf + ri * s.r[k] * cuf) * s.gam[k] / Wd3;
            mw += s.gam[k] / Wd3;
        }
        m1F /= (double)M;
        m1G /= (double)M;
        mw /= (double)M;
        double m2F = 2.0 * d * (rpi * s.cosx[i] - ri * s.sinx[i]) * mw;
        double m2G = 2.0 * d * (rpi * s.sinx[i] + ri * s.cosx[i]) * mw;

        F[i] = W * (ri * s.sinx[i] - rpi * s.cosx[i]) + selfF - eps * m1F + m2F;
        double gt = (s.gam[i] / s.rt[i]) *
                    (W * (rpi * s.sinx[i] + ri * s.cosx[i]) - selfG + eps * m1G - m2G);
        if (stable) {
            double Phi2;
            if (eps > 0.0) {
                double s2v = 2.0 * pi + e2 * (pi * pi + ppi * ppi);
                Phi2 = std::expm1(std::log1p(e2 * s.q[i]) - std::log1p(e2 * s2v)) / e2;
            } else {
                Phi2 = s.q[i] - 2.0 * pi;
            }
            gt -= T.c_mean * Phi2;
        }
        G[i] = gt;
    });
}

// Verbatim variant of the displayed formulas, kept for comparison: the
// second radius slot holds r'(xbar) instead of r(xbar), the leading W and
// mirror terms carry the opposite sign, and the first mirror integral has
// no eps prefactor. Report-only; never used by the solver.
void assemble_strict(const Samples& s, int threads, std::vector<double>& F,
                     std::vector<double>& G) {
    const std::size_t M = s.M;
    const double eps = s.eps, e2 = s.e2, d = s.d, W = s.W;
    if (eps == 0.0)
        throw std::domain_error("strict display formulas divide by eps^2; eps must be nonzero");
    Grid gp(M), gs(M, true);
    std::vector<double> xp = gp.nodes(), xs = gs.nodes();
    std::vector<double> rpb(M), rppl(M);
    for (std::size_t k = 0; k < M; ++k) {
        rpb[k] = e2 * s.ppb[k];  // r'(xbar) on the staggered grid
        rppl[k] = e2 * s.pp[k];  // r'(xbar) on the plain grid
    }
    F.assign(M, 0.0);
    G.assign(M, 0.0);
    parallel_for(M, threads, [&](std::size_t i) {
        const double ri = s.r[i], rpi = s.rp[i];
        double nearF = 0.0, nearG = 0.0, farF = 0.0, farG = 0.0, far2F = 0.0, far2G = 0.0;
        for (std::size_t k = 0; k < M; ++k) {
            double u = xp[i] - xs[k];
            double cu = std::cos(u), su = std::sin(u), s2 = std::sin(0.5 * u);
            double Dl = (ri - rpb[k]) * (ri - rpb[k]) + 4.0 * ri * rpb[k] * s2 * s2;
            if (Dl <= 0.0)
                throw std::runtime_error("strict near denominator not positive");
            double D32 = Dl * std::sqrt(Dl);
            nearF += (ri * rpi - rpi * rpb[k] * cu + ri * rpb[k] * su) * s.gamb[k] / D32;
            nearG += (-ri * ri + ri * rpb[k] * cu + rpi * rpb[k] * su) * s.gamb[k] / D32;
        }
        for (std::size_t k = 0; k < M; ++k) {
            double w1 = eps * ri * s.cosx[i] + eps * rppl[k] * s.cosx[k] - 2.0 * d;
            double w2 = eps * ri * s.sinx[i] + eps * rppl[k] * s.sinx[k];
            double ww = w1 * w1 + w2 * w2;
            double Wd3 = ww * std::sqrt(ww);
            double cuf = s.cosx[i] * s.cosx[k] + s.sinx[i] * s.sinx[k];
            double suf = s.sinx[i] * s.cosx[k] - s.cosx[i] * s.sinx[k];
            farF += (ri * rpi + rpi * rppl[k] * cuf - ri * rppl[k] * suf) * s.gam[k] / Wd3;
            farG += (ri * ri + ri * rppl[k] * cuf + rpi * rppl[k] * suf) * s.gam[k] / Wd3;
            far2F += (2.0 * d * ri * s.sinx[i] - 2.0 * d * rpi * s.cosx[i]) * s.gam[k] / Wd3;
            far2G += (2.0 * d * ri * s.cosx[i] + 2.0 * d * rpi * s.sinx[i]) * s.gam[k] / Wd3;
        }
        double inv = 1.0 / (double)M;
        F[i] = -W * (ri * s.sinx[i] - rpi * s.cosx[i]) + nearF * inv / e2 - farF * inv +
               far2F * inv;
        G[i] = (s.gam[i] / s.rt[i]) *
               (-W * (rpi * s.sinx[i] + ri * s.cosx[i]) + nearG * inv / e2 + farG * inv +
                far2G * inv);
    });
}

}  // namespace

void check_admissible(const SheetState& st, const Grid& grid) {
    double eps = std::fabs(st.eps), d = st.d;
    if (!(d >= 1.0)) throw std::domain_error("separation parameter d must be >= 1");
    Grid gp(grid.M), gs(grid.M, true);
    std::vector<double> a = synth(st.p, gp), b = synth(st.p, gs);
    double pmax = 0.0, rmin = 1.0;
    for (double v : a) {
        pmax = std::max(pmax, std::fabs(v));
        rmin = std::min(rmin, 1.0 + eps * eps * v);
    }
    for (double v : b) {
        pmax = std::max(pmax, std::fabs(v));
        rmin = std::min(rmin, 1.0 + eps * eps * v);
    }
    if (rmin <= 0.0) throw std::domain_error("radius r = 1 + eps^2 p is not positive");
    if (eps * (1.0 + eps * eps * pmax) >= d - 0.5)
        throw std::domain_error("sheets too close: eps (1 + eps^2 max|p|) must stay below d - 1/2");
}

NodalResiduals eval_nodal(const SheetState& st, const Grid& grid, const EvalOptions& opt) {
    check_admissible(st, grid);
    Samples s = sample_state(st, grid);
    NodalResiduals out;
    if (opt.strict_display) {
        assemble_strict(s, opt.threads, out.F, out.G);
        out.g_mean = removed_mean(out.G);
        return out;
    }
    bool stable;
    switch (opt.path) {
        case EvalPath::stable:
            stable = true;
            break;
        case EvalPath::direct:
            if (s.eps == 0.0)
                throw std::domain_error("direct path divides by eps^2; eps must be nonzero");
            stable = false;
            break;
        default:
            stable = s.eps < opt.eps_switch;
    }
    KernelTables T = build_kernel_tables(grid.M);
    assemble_standard(s, T, stable, opt.threads, out.F, out.G);
    out.g_mean = removed_mean(out.G);
    return out;
}

std::vector<double> eval_F(const SheetState& st, const Grid& grid, const EvalOptions& opt) {
    return eval_nodal(st, grid, opt).F;
}

GEval eval_G(const SheetState& st, const Grid& grid, const EvalOptions& opt) {
    NodalResiduals n = eval_nodal(st, grid, opt);
    return {std::move(n.G), n.g_mean};
}

ResidualPair eval_residual(const SheetState& st, const Grid& grid, std::size_t N,
                           const EvalOptions& opt) {
    NodalResiduals n = eval_nodal(st, grid, opt);
    ResidualPair rp;
    rp.f = analyze_odd(n.F, N);
    rp.g = analyze_even(n.G, N).series;
    rp.g_mean_removed = n.g_mean;
    return rp;
}

namespace {

Vec2 velocity_at(const Samples& s, double z1, double z2) {
    const std::size_t M = s.M;
    double u1 = 0.0, u2 = 0.0;
    for (std::size_t k = 0; k < M; ++k) {
        double d1 = z1 - s.rb[k] * s.cosxs[k];
        double d2 = z2 - s.rb[k] * s.sinxs[k];
        double n2 = d1 * d1 + d2 * d2;
        double n3 = n2 * std::sqrt(n2);
        u1 += -d2 / n3 * s.gamb[k];
        u2 += d1 / n3 * s.gamb[k];
    }
    u1 /= (double)M * s.e2;
    u2 /= (double)M * s.e2;
    for (std::size_t k = 0; k < M; ++k) {
        double w1 = s.eps * (z1 + s.r[k] * s.cosx[k]) - 2.0 * s.d;
        double w2 = s.eps * (z2 + s.r[k] * s.sinx[k]);
        double n2 = w1 * w1 + w2 * w2;
        double n3 = n2 * std::sqrt(n2);
        u1 -= -w2 / n3 * s.gam[k] / (double)M;
        u2 -= w1 / n3 * s.gam[k] / (double)M;
    }
    return {u1, u2};
}

}  // namespace

Vec2 eval_velocity(const SheetState& st, double x, const Grid& grid) {
    if (st.eps == 0.0)
        throw std::domain_error("velocity scales as 1/eps^2; use the residual path at eps = 0");
    check_admissible(st, grid);
    Samples s = sample_state(st, grid);
    double r = 1.0 + s.e2 * st.p(x);
    return velocity_at(s, r * std::cos(x), r * std::sin(x));
}

std::vector<Vec2> eval_velocity(const SheetState& st, const Grid& grid) {
    if (st.eps == 0.0)
        throw std::domain_error("velocity scales as 1/eps^2; use the residual path at eps = 0");
    check_admissible(st, grid);
    Samples s = sample_state(st, grid);
    std::vector<Vec2> U(s.M);
    for (std::size_t i = 0; i < s.M; ++i)
        U[i] = velocity_at(s, s.r[i] * s.cosx[i], s.r[i] * s.sinx[i]);
    return U;
}

std::vector<double> verify_tangency(const SheetState& st, const Grid& grid) {
    std::vector<Vec2> U = eval_velocity(st, grid);
    Samples s = sample_state(st, grid);
    std::vector<double> out(s.M);
    for (std::size_t i = 0; i < s.M; ++i) {
        double zx1 = s.rp[i] * s.cosx[i] - s.r[i] * s.sinx[i];
        double zx2 = s.rp[i] * s.sinx[i] + s.r[i] * s.cosx[i];
        double nz = std::sqrt(zx1 * zx1 + zx2 * zx2);
        // n = s^perp with s the unit tangent
        out[i] = (U[i].x1 * (-zx2) + (U[i].x2 - s.W) * zx1) / nz;
    }
    return out;
}

StrengthCheck verify_strength(const SheetState& st, const Grid& grid) {
    std::vector<Vec2> U = eval_velocity(st, grid);
    Samples s = sample_state(st, grid);
    StrengthCheck sc;
    sc.values.resize(s.M);
    double acc = 0.0;
    for (std::size_t i = 0; i < s.M; ++i) {
        double zx1 = s.rp[i] * s.cosx[i] - s.r[i] * s.sinx[i];
        double zx2 = s.rp[i] * s.sinx[i] + s.r[i] * s.cosx[i];
        double nz2 = zx1 * zx1 + zx2 * zx2;
        sc.values[i] = (U[i].x1 * zx1 + (U[i].x2 - s.W) * zx2) * s.gam[i] / nz2;
        acc += sc.values[i];
    }
    sc.K = -acc / (double)s.M;
    return sc;
}

}  // namespace vsheet
