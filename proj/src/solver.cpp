#include "vsheet/solver.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <sstream>

#include "vsheet/diagnostics.hpp"
#include "vsheet/parallel.hpp"

namespace vsheet {

namespace {

EvenSeries resized(const EvenSeries& s, std::size_t n) {
    EvenSeries out(n);
    for (std::size_t j = 0; j < n && j < s.modes(); ++j) out.c[j] = s.c[j];
    return out;
}

// Same serial loop the nodal evaluation uses for its projection, so that
// exact scale relations between residual and W-column survive in floating
// point.
void remove_mean(std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    double mean = acc / (double)v.size();
    for (double& x : v) x -= mean;
}

// Columns of the W-derivative: dF/dW = r sin x - r' cos x and
// dG/dW = gamma (r' sin x + r cos x) / |z_x|^2 with the mean removed.
void w_column(const SheetState& st, const Grid& grid, std::vector<double>& dF,
              std::vector<double>& dG) {
    const std::size_t M = grid.M;
    double e = std::fabs(st.eps), e2 = e * e;
    Grid gp(M);
    std::vector<double> pv = synth(st.p, gp);
    std::vector<double> ppv = synth(differentiate(st.p), gp);
    std::vector<double> qv = synth(st.q, gp);
    dF.resize(M);
    dG.resize(M);
    for (std::size_t i = 0; i < M; ++i) {
        double x = gp.node(i), cx = std::cos(x), sx = std::sin(x);
        double r = 1.0 + e2 * pv[i], rp = e2 * ppv[i], gam = 1.0 + e2 * qv[i];
        double rt = r * r + rp * rp;
        dF[i] = r * sx - rp * cx;
        dG[i] = gam * (rp * sx + r * cx) / rt;
    }
    remove_mean(dG);
}

Eigen::VectorXd project(const std::vector<double>& F, const std::vector<double>& G,
                        std::size_t N) {
    OddSeries f = analyze_odd(F, N);
    EvenSeries g = analyze_even(G, N).series;
    Eigen::VectorXd out(2 * (Eigen::Index)N);
    for (std::size_t j = 0; j < N; ++j) {
        out((Eigen::Index)j) = f.c[j];
        out((Eigen::Index)(N + j)) = g.c[j];
    }
    return out;
}

double sup_norm(const NodalResiduals& R) {
    double s = 0.0;
    for (double v : R.F) s = std::max(s, std::fabs(v));
    for (double v : R.G) s = std::max(s, std::fabs(v));
    return s;
}

}  // namespace

double closure_W(double eps, double d, const EvenSeries& p, const EvenSeries& q,
                 const Grid& grid) {
    if (grid.staggered)
        throw std::invalid_argument("closure_W expects the plain grid");
    SheetState s0;
    s0.eps = eps;
    s0.d = d;
    s0.W = 0.0;
    s0.p = p;
    s0.q = q;
    EvalOptions opt;
    opt.path = EvalPath::stable;
    opt.threads = 1;
    NodalResiduals R = eval_nodal(s0, grid, opt);
    double f10 = analyze_odd(R.F, 1).c[0];
    double g10 = analyze_even(R.G, 1).series.c[0];
    std::vector<double> dF, dG;
    w_column(s0, grid, dF, dG);
    double f1W = analyze_odd(dF, 1).c[0];
    double g1W = analyze_even(dG, 1).series.c[0];
    double den = f1W + g1W;
    if (!(std::fabs(den) > 1e-12))
        throw std::runtime_error("first-harmonic closure is degenerate: dW coefficient " +
                                 std::to_string(den));
    return -(f10 + g10) / den;
}

NewtonResult newton_solve(double eps, double d, const SheetState& init,
                          const SolverConfig& cfg) {
    const std::size_t N = cfg.N;
    Grid grid(cfg.M);
    SheetState st;
    st.eps = eps;
    st.d = d;
    st.W = init.W;
    st.p = resized(init.p, N);
    st.q = resized(init.q, N);

    EvalOptions opt;
    opt.path = EvalPath::stable;
    opt.threads = cfg.threads;
    EvalOptions colopt = opt;
    colopt.threads = 1;  // column loop is the parallel level

    std::vector<double> history;
    NodalResiduals R = eval_nodal(st, grid, opt);
    double sup = sup_norm(R);
    history.push_back(sup);
    std::size_t it = 0;

    while (sup >= cfg.tol) {
        if (it == cfg.max_iter) {
            std::ostringstream msg;
            msg << "newton stalled at eps=" << eps << ": residual sup " << sup << " after "
                << it << " iterations (tol " << cfg.tol << ")";
            throw NonConvergenceError(msg.str(), history);
        }
        Eigen::VectorXd Rv = project(R.F, R.G, N);
        double cmax = 0.0;
        for (double v : st.p.c) cmax = std::max(cmax, std::fabs(v));
        for (double v : st.q.c) cmax = std::max(cmax, std::fabs(v));
        double h = cfg.fd_step * std::max(1.0, cmax);

        Eigen::MatrixXd J(2 * (Eigen::Index)N, 2 * (Eigen::Index)N);
        parallel_for(2 * N - 1, cfg.threads, [&](std::size_t c) {
            SheetState sp = st;
            if (c < N) {
                sp.p.c[c] += h;
                if (c == 0) sp.q.c[0] -= h;  // gauge tie b1 = -a1
            } else {
                sp.q.c[c - N + 1] += h;
            }
            NodalResiduals Rp = eval_nodal(sp, grid, colopt);
            Eigen::VectorXd Rpv = project(Rp.F, Rp.G, N);
            J.col((Eigen::Index)c) = (Rpv - Rv) / h;
        });
        std::vector<double> dFW, dGW;
        w_column(st, grid, dFW, dGW);
        J.col(2 * (Eigen::Index)N - 1) = project(dFW, dGW, N);

        Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
        Eigen::VectorXd diag = lu.matrixLU().diagonal().cwiseAbs();
        double dmax = diag.maxCoeff(), dmin = diag.minCoeff();
        double rcond = dmax > 0.0 ? dmin / dmax : 0.0;
        if (rcond < 1e-14) {
            std::ostringstream msg;
            msg << "newton jacobian numerically singular at eps=" << eps
                << " (pivot ratio " << rcond << ")";
            throw SingularJacobianError(msg.str(), rcond);
        }
        Eigen::VectorXd delta = lu.solve(-Rv);

        double lam = 1.0;
        SheetState cand;
        NodalResiduals Rc;
        double supc = sup;
        for (int attempt = 0; attempt <= cfg.max_damping; ++attempt) {
            cand = st;
            for (std::size_t j = 0; j < N; ++j) cand.p.c[j] += lam * delta((Eigen::Index)j);
            cand.q.c[0] -= lam * delta(0);
            for (std::size_t j = 1; j < N; ++j)
                cand.q.c[j] += lam * delta((Eigen::Index)(N + j - 1));
            cand.W += lam * delta(2 * (Eigen::Index)N - 1);
            Rc = eval_nodal(cand, grid, opt);
            supc = sup_norm(Rc);
            if (supc < sup || supc < cfg.tol) break;
            lam *= 0.5;
        }
        st = cand;  // accept the last candidate even if damping ran out
        R = std::move(Rc);
        sup = supc;
        ++it;
        history.push_back(sup);
    }
    return {std::move(st), it, sup, std::move(history)};
}

ContinuationResult continuation(const std::vector<double>& eps_values, double d,
                                const SolverConfig& cfg) {
    if (eps_values.empty())
        throw std::invalid_argument("continuation needs at least one eps value");
    ContinuationResult out;
    Grid grid(cfg.M);
    SheetState cur;
    cur.d = d;
    cur.p = EvenSeries(cfg.N);
    cur.q = EvenSeries(cfg.N);
    for (std::size_t idx = 0; idx < eps_values.size(); ++idx) {
        double e = eps_values[idx];
        cur.eps = e;
        if (idx == 0) cur.W = closure_W(e, d, cur.p, cur.q, grid);
        auto t0 = std::chrono::steady_clock::now();
        NewtonResult nr;
        try {
            nr = newton_solve(e, d, cur, cfg);
        } catch (const NonConvergenceError& ex) {
            if (idx == 0) throw;
            out.failure = ex.what();
            return out;
        }
        auto t1 = std::chrono::steady_clock::now();
        cur = nr.state;
        ContinuationRecord rec;
        rec.eps = e;
        rec.d = d;
        rec.W = cur.W;
        rec.p_coeffs = cur.p.c;
        rec.q_coeffs = cur.q.c;
        rec.residual_sup = nr.residual_sup;
        rec.iterations = nr.iterations;
        rec.min_curvature = min_curvature(cur, grid);
        if (std::fabs(e) > 0.0) {
            rec.K = verify_strength(cur, grid).K;
            rec.K_defined = true;
        }
        rec.wall_ms =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0)
                .count();
        out.records.push_back(std::move(rec));
        out.eps_reached = e;
    }
    out.completed = true;
    return out;
}

}  // namespace vsheet
