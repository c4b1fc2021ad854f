// vsheet: spectral contour solver for a counter-rotating sheet pair, plus
// the point-row reduction and verification probes.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vsheet/contour.hpp"
#include "vsheet/diagnostics.hpp"
#include "vsheet/kernels.hpp"
#include "vsheet/linop.hpp"
#include "vsheet/pointvortex.hpp"
#include "vsheet/solver.hpp"

namespace fs = std::filesystem;
using namespace vsheet;

namespace {

struct Options {
    double eps = 0.0;
    double eps_max = 0.05;
    double eps_step = 0.01;
    double d = 1.0;
    std::size_t modes = 32;
    std::size_t grid = 256;
    double tol = 1e-9;
    std::size_t max_iter = 25;
    double eps_switch = 0.02;
    std::string out_dir = "out";
    int threads = 0;
    std::string format = "json";
    bool strict = false;
    std::size_t m = 2;
    double h = 1e-3;
    double t_end = 10.0;
    std::string config;
};

std::string g17(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

std::string gshort(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%g", v);
    return b;
}

// ------------------------------------------------------------ config file

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "eps",     "eps-max", "eps-step", "d",       "modes",   "grid",
        "tol",     "max-iter", "eps-switch", "out-dir", "threads", "format",
        "strict-display-formulas", "m", "h", "t-end"};
    return keys;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

bool parse_size(const std::string& s, std::size_t& out) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size() || v < 0) return false;
        out = (std::size_t)v;
        return true;
    } catch (...) {
        return false;
    }
}

bool parse_int(const std::string& s, int& out) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) return false;
        out = (int)v;
        return true;
    } catch (...) {
        return false;
    }
}

bool parse_bool(const std::string& s, bool& out) {
    if (s == "true" || s == "1") {
        out = true;
        return true;
    }
    if (s == "false" || s == "0") {
        out = false;
        return true;
    }
    return false;
}

// Flat key=value file; keys are the long option names. Values act as
// defaults and explicit flags still win. Returns an error message or "".
std::string load_config(const std::string& path, Options& o) {
    std::ifstream in(path);
    if (!in) return "cannot open config file: " + path;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            return "config line " + std::to_string(lineno) + " is not key=value: " + t;
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (known_keys().count(key) == 0)
            return "config line " + std::to_string(lineno) + ": unknown key '" + key + "'";
        bool ok = true;
        if (key == "eps") ok = parse_double(val, o.eps);
        else if (key == "eps-max") ok = parse_double(val, o.eps_max);
        else if (key == "eps-step") ok = parse_double(val, o.eps_step);
        else if (key == "d") ok = parse_double(val, o.d);
        else if (key == "modes") ok = parse_size(val, o.modes);
        else if (key == "grid") ok = parse_size(val, o.grid);
        else if (key == "tol") ok = parse_double(val, o.tol);
        else if (key == "max-iter") ok = parse_size(val, o.max_iter);
        else if (key == "eps-switch") ok = parse_double(val, o.eps_switch);
        else if (key == "out-dir") o.out_dir = val;
        else if (key == "threads") ok = parse_int(val, o.threads);
        else if (key == "format") {
            if (val != "json" && val != "csv") ok = false;
            else o.format = val;
        } else if (key == "strict-display-formulas") ok = parse_bool(val, o.strict);
        else if (key == "m") ok = parse_size(val, o.m);
        else if (key == "h") ok = parse_double(val, o.h);
        else if (key == "t-end") ok = parse_double(val, o.t_end);
        if (!ok)
            return "config line " + std::to_string(lineno) + ": bad value for '" + key +
                   "': " + val;
    }
    return "";
}

// --------------------------------------------------------------- writers

void require_good(const std::ofstream& f, const fs::path& p) {
    if (!f.good()) throw std::runtime_error("failed writing " + p.string());
}

void write_records_json(const fs::path& path, const std::vector<ContinuationRecord>& recs) {
    std::ofstream f(path);
    f << "[\n";
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        f << "  {\n";
        f << "    \"eps\": " << g17(r.eps) << ",\n";
        f << "    \"d\": " << g17(r.d) << ",\n";
        f << "    \"W\": " << g17(r.W) << ",\n";
        f << "    \"p_coeffs\": [";
        for (std::size_t j = 0; j < r.p_coeffs.size(); ++j)
            f << (j ? ", " : "") << g17(r.p_coeffs[j]);
        f << "],\n";
        f << "    \"q_coeffs\": [";
        for (std::size_t j = 0; j < r.q_coeffs.size(); ++j)
            f << (j ? ", " : "") << g17(r.q_coeffs[j]);
        f << "],\n";
        f << "    \"residual_sup\": " << g17(r.residual_sup) << ",\n";
        f << "    \"iterations\": " << r.iterations << ",\n";
        f << "    \"min_curvature\": " << g17(r.min_curvature) << ",\n";
        f << "    \"K\": " << (r.K_defined ? g17(r.K) : std::string("null")) << ",\n";
        f << "    \"wall_ms\": 0\n";  // timings go to stdout; files stay reproducible
        f << "  }" << (i + 1 < recs.size() ? "," : "") << "\n";
    }
    f << "]\n";
    require_good(f, path);
}

void write_records_csv(const fs::path& path, const std::vector<ContinuationRecord>& recs) {
    std::ofstream f(path);
    f << "eps,d,W,residual_sup,iterations,min_curvature,K,wall_ms\n";
    for (const auto& r : recs) {
        f << g17(r.eps) << ',' << g17(r.d) << ',' << g17(r.W) << ','
          << g17(r.residual_sup) << ',' << r.iterations << ',' << g17(r.min_curvature)
          << ',' << (r.K_defined ? g17(r.K) : std::string()) << ",0\n";
    }
    require_good(f, path);
}

SheetState state_from(const ContinuationRecord& r) {
    SheetState st;
    st.eps = r.eps;
    st.d = r.d;
    st.W = r.W;
    st.p = EvenSeries(r.p_coeffs);
    st.q = EvenSeries(r.q_coeffs);
    return st;
}

void write_curve(const fs::path& dir, const ContinuationRecord& rec, std::size_t M) {
    SheetState st = state_from(rec);
    Grid gp(M);
    double e2 = st.eps * st.eps;
    std::vector<double> p = synth(st.p, gp);
    std::vector<double> q = synth(st.q, gp);
    std::vector<double> kap = curvature(st, gp);
    fs::path path = dir / ("curve_" + gshort(rec.eps) + ".csv");
    std::ofstream f(path);
    f << "x,z1,z2,r,gamma,kappa\n";
    for (std::size_t i = 0; i < M; ++i) {
        double x = gp.node(i);
        double r = 1.0 + e2 * p[i];
        double gam = 1.0 + e2 * q[i];
        f << g17(x) << ',' << g17(r * std::cos(x)) << ',' << g17(r * std::sin(x)) << ','
          << g17(r) << ',' << g17(gam) << ',' << g17(kap[i]) << "\n";
    }
    require_good(f, path);
}

void write_wtable(const fs::path& path, const std::vector<ContinuationRecord>& recs) {
    std::ofstream f(path);
    f << "eps,W,W_paper_116,W_paper_224\n";
    for (const auto& r : recs) {
        double w116 = 1.0 / (4.0 * r.d * r.d);
        double w224 = 1.0 / (2.0 * r.d * r.d);
        f << g17(r.eps) << ',' << g17(r.W) << ',' << g17(w116) << ',' << g17(w224) << "\n";
    }
    require_good(f, path);
}

void write_multipliers(const fs::path& path, const MultiplierTable& t) {
    std::ofstream f(path);
    f << "j,lambda_j,mu_j,C_j,lambda_paper,mu_paper\n";
    for (std::size_t j = 1; j <= t.modes(); ++j) {
        double dj = (double)j;
        f << j << ',' << g17(t.lambda[j - 1]) << ',' << g17(t.mu[j - 1]) << ','
          << g17(t.C[j - 1]) << ',' << g17(0.5 * t.C[j - 1] * dj * dj) << ','
          << g17(0.5 * dj * dj) << "\n";
    }
    require_good(f, path);
}

void write_blocks(const fs::path& path, const MultiplierTable& t) {
    std::ofstream f(path);
    f << "j,q11,q12,q21,q22,det,source\n";
    for (BlockSource src : {BlockSource::measured, BlockSource::formal}) {
        BlockOperator op = assemble_blocks(t, src);
        const char* name = src == BlockSource::measured ? "measured" : "formal";
        for (std::size_t j = 1; j <= op.modes(); ++j) {
            const Mat2& q = op.blocks[j - 1];
            f << j << ',' << g17(q[0][0]) << ',' << g17(q[0][1]) << ',' << g17(q[1][0])
              << ',' << g17(q[1][1]) << ',' << g17(block_det(q)) << ',' << name << "\n";
        }
    }
    require_good(f, path);
}

void write_trajectory(const fs::path& path, const std::vector<TrajectorySample>& traj) {
    std::ofstream f(path);
    f << "t,i,z1,z2\n";
    for (const auto& s : traj)
        for (std::size_t i = 0; i < s.z.size(); ++i)
            f << g17(s.t) << ',' << i << ',' << g17(s.z[i].x1) << ',' << g17(s.z[i].x2)
              << "\n";
    require_good(f, path);
}

// ------------------------------------------------------------- ramps

std::vector<double> ramp_to(double target, double step) {
    std::vector<double> v{0.0};
    if (target == 0.0) return v;
    double a = std::fabs(target);
    int n = (int)std::ceil(a / step - 1e-9);
    if (n < 1) n = 1;
    double sgn = target < 0.0 ? -1.0 : 1.0;
    for (int k = 1; k <= n; ++k)
        v.push_back(k == n ? target : sgn * (double)k * step);
    return v;
}

std::vector<double> sweep_values(double emax, double step) {
    std::vector<double> v{0.0};
    if (emax == 0.0) return v;
    if (!(step > 0.0)) throw std::invalid_argument("eps-step must be positive");
    double a = std::fabs(emax);
    double sgn = emax < 0.0 ? -1.0 : 1.0;
    int n = (int)std::floor(a / step + 1e-9);
    for (int k = 1; k <= n; ++k) v.push_back(sgn * (double)k * step);
    if (std::fabs(v.back()) < a - 1e-12) v.push_back(emax);
    return v;
}

SolverConfig make_cfg(const Options& o) {
    SolverConfig cfg;
    cfg.N = o.modes;
    cfg.M = o.grid;
    cfg.tol = o.tol;
    cfg.max_iter = o.max_iter;
    cfg.eps_switch = o.eps_switch;
    cfg.threads = o.threads;
    return cfg;
}

void print_record_line(const ContinuationRecord& r) {
    std::printf("eps=%-8s W=%.12f iters=%zu residual=%.3e min_kappa=%.6f wall=%.1fms\n",
                gshort(r.eps).c_str(), r.W, r.iterations, r.residual_sup, r.min_curvature,
                r.wall_ms);
}

// ------------------------------------------------------------ commands

int cmd_solve(const Options& o) {
    SolverConfig cfg = make_cfg(o);
    fs::create_directories(o.out_dir);
    ContinuationResult res = continuation(ramp_to(o.eps, 0.01), o.d, cfg);
    if (!res.completed) {
        std::fprintf(stderr, "solve: %s\n", res.failure.c_str());
        return 3;
    }
    const ContinuationRecord& fin = res.records.back();
    std::vector<ContinuationRecord> one{fin};
    if (o.format == "csv")
        write_records_csv(fs::path(o.out_dir) / "records.csv", one);
    else
        write_records_json(fs::path(o.out_dir) / "records.json", one);
    write_curve(o.out_dir, fin, cfg.M);
    print_record_line(fin);
    if (o.eps == 0.0) {
        double c1 = 1.0 / (4.0 * o.d * o.d);
        double c2 = 1.0 / (2.0 * o.d * o.d);
        std::printf("flat-state speed: W = %.17g (%s)\n", fin.W,
                    fin.W >= 0 ? "positive" : "negative");
        std::printf("  candidate 1/(2d)^2 = %.17g%s\n", c1,
                    std::fabs(std::fabs(fin.W) - c1) < 1e-12 ? "   <- |W| matches" : "");
        std::printf("  candidate 1/(2d^2) = %.17g%s\n", c2,
                    std::fabs(std::fabs(fin.W) - c2) < 1e-12 ? "   <- |W| matches" : "");
    }
    if (o.strict) {
        if (fin.eps == 0.0) {
            std::fprintf(stderr, "solve: strict display formulas need eps != 0\n");
            return 4;
        }
        SheetState st = state_from(fin);
        Grid grid(cfg.M);
        EvalOptions sopt;
        sopt.strict_display = true;
        sopt.threads = o.threads;
        NodalResiduals R = eval_nodal(st, grid, sopt);
        double supF = 0.0, supG = 0.0;
        for (double v : R.F) supF = std::max(supF, std::fabs(v));
        for (double v : R.G) supG = std::max(supG, std::fabs(v));
        std::printf("strict display residuals at the solution: |F|=%.3e |G|=%.3e\n", supF,
                    supG);
    }
    return 0;
}

int cmd_continue(const Options& o) {
    SolverConfig cfg = make_cfg(o);
    fs::create_directories(o.out_dir);
    ContinuationResult res = continuation(sweep_values(o.eps_max, o.eps_step), o.d, cfg);
    if (o.format == "csv")
        write_records_csv(fs::path(o.out_dir) / "records.csv", res.records);
    else
        write_records_json(fs::path(o.out_dir) / "records.json", res.records);
    write_wtable(fs::path(o.out_dir) / "wtable.csv", res.records);
    for (const auto& r : res.records) write_curve(o.out_dir, r, cfg.M);
    for (const auto& r : res.records) print_record_line(r);
    if (!res.completed) {
        std::fprintf(stderr, "continue: stopped after eps=%s: %s\n",
                     gshort(res.eps_reached).c_str(), res.failure.c_str());
        return 3;
    }
    std::printf("continued to eps=%s in %zu records\n", gshort(res.eps_reached).c_str(),
                res.records.size());
    return 0;
}

int cmd_probe(const Options& o) {
    fs::create_directories(o.out_dir);
    Grid g1((std::size_t)o.grid);
    MultiplierTable t1 = measure_multipliers(o.modes, g1);
    write_multipliers(fs::path(o.out_dir) / "multipliers.csv", t1);
    write_blocks(fs::path(o.out_dir) / "blocks.csv", t1);
    Grid g2(2 * o.grid);
    MultiplierTable t2 = measure_multipliers(o.modes, g2);
    std::printf("multipliers at M=%zu and M=%zu (drift check)\n", o.grid, 2 * o.grid);
    std::printf("  c_mean: %.12f -> %.12f\n", t1.c_mean, t2.c_mean);
    std::size_t show = std::min<std::size_t>(o.modes, 8);
    std::printf("  %3s %14s %14s %14s %14s %12s %12s\n", "j", "lambda(M)", "lambda(2M)",
                "mu(M)", "mu(2M)", "C(M)", "C(2M)");
    for (std::size_t j = 1; j <= show; ++j)
        std::printf("  %3zu %14.8f %14.8f %14.8f %14.8f %12.8f %12.8f\n", j,
                    t1.lambda[j - 1], t2.lambda[j - 1], t1.mu[j - 1], t2.mu[j - 1],
                    t1.C[j - 1], t2.C[j - 1]);
    return 0;
}

int cmd_pointvortex(const Options& o) {
    fs::create_directories(o.out_dir);
    PointSystem sys = alternating_row(o.m, o.d);
    WstarReading w = wstar_readings(o.m, o.d, sys.kernel);
    std::printf("row speed, displayed reading:  %.17g\n", w.displayed);
    std::printf("row speed, derivation reading: %.17g\n", w.derivation);
    std::vector<TrajectorySample> traj = integrate_rk4(sys, o.t_end, o.h);
    write_trajectory(fs::path(o.out_dir) / "trajectory.csv", traj);
    const auto& first = traj.front();
    const auto& last = traj.back();
    double dev = 0.0;
    for (std::size_t i = 0; i < sys.positions.size(); ++i) {
        double e1 = last.z[i].x1 - first.z[i].x1;
        double e2 = last.z[i].x2 - (first.z[i].x2 + w.derivation * last.t);
        dev = std::max(dev, std::hypot(e1, e2));
    }
    std::printf("deviation from rigid drift at the derived speed over t=%g: %.3e\n",
                last.t, dev);
    if (sys.positions.size() == 2) {
        double d0 = std::hypot(first.z[1].x1 - first.z[0].x1, first.z[1].x2 - first.z[0].x2);
        double d1 = std::hypot(last.z[1].x1 - last.z[0].x1, last.z[1].x2 - last.z[0].x2);
        std::printf("pair distance drift: %.3e\n", std::fabs(d1 - d0));
    }
    return 0;
}

int cmd_verify(const Options& o) {
    SolverConfig cfg = make_cfg(o);
    fs::create_directories(o.out_dir);
    ContinuationResult res = continuation(ramp_to(o.eps, 0.01), o.d, cfg);
    if (!res.completed) {
        std::fprintf(stderr, "verify: %s\n", res.failure.c_str());
        return 3;
    }
    const ContinuationRecord& fin = res.records.back();
    SheetState st = state_from(fin);
    Grid grid(cfg.M);

    bool have = fin.eps != 0.0;
    double tang_sup = 0.0, smean = 0.0, sstd = 0.0, sratio = 0.0, K = 0.0;
    double gapF = 0.0, gapG = 0.0, cross = 0.0;
    double strictF = 0.0, strictG = 0.0;
    if (have) {
        std::vector<double> tg = verify_tangency(st, grid);
        for (double v : tg) tang_sup = std::max(tang_sup, std::fabs(v));
        StrengthCheck sc = verify_strength(st, grid);
        for (double v : sc.values) smean += v;
        smean /= (double)sc.values.size();
        for (double v : sc.values) sstd += (v - smean) * (v - smean);
        sstd = std::sqrt(sstd / (double)sc.values.size());
        sratio = smean != 0.0 ? sstd / std::fabs(smean) : 0.0;
        K = sc.K;

        EvalOptions so, dopt;
        so.path = EvalPath::stable;
        so.threads = o.threads;
        dopt.path = EvalPath::direct;
        dopt.threads = o.threads;
        NodalResiduals Rs = eval_nodal(st, grid, so);
        NodalResiduals Rd = eval_nodal(st, grid, dopt);
        for (std::size_t i = 0; i < grid.M; ++i) {
            gapF = std::max(gapF, std::fabs(Rs.F[i] - Rd.F[i]));
            gapG = std::max(gapG, std::fabs(Rs.G[i] - Rd.G[i]));
        }
        // F against |z_x| times the velocity-path tangency defect
        double e2 = st.eps * st.eps;
        Grid gp(grid.M);
        std::vector<double> pv = synth(st.p, gp);
        std::vector<double> ppv = synth(differentiate(st.p), gp);
        for (std::size_t i = 0; i < grid.M; ++i) {
            double r = 1.0 + e2 * pv[i], rp = e2 * ppv[i];
            double nz = std::sqrt(r * r + rp * rp);
            cross = std::max(cross, std::fabs(Rs.F[i] - nz * tg[i]));
        }
        if (o.strict) {
            EvalOptions lopt;
            lopt.strict_display = true;
            lopt.threads = o.threads;
            NodalResiduals Rl = eval_nodal(st, grid, lopt);
            for (double v : Rl.F) strictF = std::max(strictF, std::fabs(v));
            for (double v : Rl.G) strictG = std::max(strictG, std::fabs(v));
        }
    }

    fs::path path = fs::path(o.out_dir) / "verify.json";
    std::ofstream f(path);
    f << "{\n";
    f << "  \"eps\": " << g17(fin.eps) << ",\n";
    f << "  \"d\": " << g17(fin.d) << ",\n";
    f << "  \"W\": " << g17(fin.W) << ",\n";
    f << "  \"residual_sup\": " << g17(fin.residual_sup) << ",\n";
    auto num_or_null = [&](double v) { return have ? g17(v) : std::string("null"); };
    f << "  \"tangency_sup\": " << num_or_null(tang_sup) << ",\n";
    f << "  \"strength_mean\": " << num_or_null(smean) << ",\n";
    f << "  \"strength_std\": " << num_or_null(sstd) << ",\n";
    f << "  \"strength_ratio\": " << num_or_null(sratio) << ",\n";
    f << "  \"K\": " << num_or_null(K) << ",\n";
    f << "  \"dual_gap_F\": " << num_or_null(gapF) << ",\n";
    f << "  \"dual_gap_G\": " << num_or_null(gapG) << ",\n";
    f << "  \"cross_gap\": " << num_or_null(cross);
    if (o.strict && have) {
        f << ",\n  \"strict_F_sup\": " << g17(strictF);
        f << ",\n  \"strict_G_sup\": " << g17(strictG);
    }
    f << "\n}\n";
    require_good(f, path);

    print_record_line(fin);
    if (have) {
        std::printf("tangency sup:    %.3e\n", tang_sup);
        std::printf("strength ratio:  %.3e (mean %.10g, std %.3e)\n", sratio, smean, sstd);
        std::printf("path gap F/G:    %.3e / %.3e\n", gapF, gapG);
        std::printf("cross check F:   %.3e\n", cross);
        if (o.strict)
            std::printf("strict displays: |F|=%.3e |G|=%.3e\n", strictF, strictG);
    } else {
        std::printf("velocity-path probes need eps != 0; emitted nulls\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;

    // Pass one: the config file seeds the defaults, explicit flags override.
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--config") {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "--config needs a path\n");
                return 2;
            }
            o.config = argv[i + 1];
        } else if (a.rfind("--config=", 0) == 0) {
            o.config = a.substr(9);
        }
    }
    if (!o.config.empty()) {
        std::string err = load_config(o.config, o);
        if (!err.empty()) {
            std::fprintf(stderr, "%s\n", err.c_str());
            return 2;
        }
    }

    CLI::App app{"spectral solver for a traveling counter-rotating sheet pair"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* c, bool with_solver) {
        c->add_option("--out-dir", o.out_dir, "output directory");
        c->add_option("--config", o.config, "key=value defaults file")
            ->capture_default_str();
        if (with_solver) {
            c->add_option("--d", o.d, "half separation of the pair centers");
            c->add_option("--modes", o.modes, "cosine modes kept in p and q");
            c->add_option("--grid", o.grid, "collocation nodes, power of two");
            c->add_option("--tol", o.tol, "residual sup-norm target");
            c->add_option("--max-iter", o.max_iter, "newton iteration cap");
            c->add_option("--eps-switch", o.eps_switch, "automatic path threshold");
            c->add_option("--threads", o.threads, "worker threads, 0 = hardware");
        }
    };

    CLI::App* solve = app.add_subcommand("solve", "solve one sheet amplitude");
    solve->add_option("--eps", o.eps, "sheet amplitude");
    add_common(solve, true);
    solve->add_option("--format", o.format, "records format")
        ->check(CLI::IsMember({"json", "csv"}));
    solve->add_flag("--strict-display-formulas", o.strict,
                    "also evaluate the verbatim displayed formulas (report only)");

    CLI::App* cont = app.add_subcommand("continue", "sweep the amplitude from 0");
    cont->add_option("--eps-max", o.eps_max, "final amplitude");
    cont->add_option("--eps-step", o.eps_step, "sweep step");
    add_common(cont, true);
    cont->add_option("--format", o.format, "records format")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* probe = app.add_subcommand("probe-multipliers",
                                         "measure the kernel multipliers and blocks");
    probe->add_option("--modes", o.modes, "modes to probe");
    probe->add_option("--grid", o.grid, "collocation nodes, power of two");
    probe->add_option("--out-dir", o.out_dir, "output directory");
    probe->add_option("--config", o.config, "key=value defaults file");

    CLI::App* pv = app.add_subcommand("point-vortex", "integrate the reduced point row");
    pv->set_help_flag("--help", "print help");  // frees -h for the step option
    pv->add_option("--m", o.m, "number of points");
    pv->add_option("--d", o.d, "half spacing of the row");
    pv->add_option("--h", o.h, "rk4 step");
    pv->add_option("--t-end", o.t_end, "integration horizon");
    pv->add_option("--out-dir", o.out_dir, "output directory");
    pv->add_option("--config", o.config, "key=value defaults file");

    CLI::App* verify = app.add_subcommand("verify", "independent checks at one amplitude");
    verify->add_option("--eps", o.eps, "sheet amplitude");
    add_common(verify, true);
    verify->add_flag("--strict-display-formulas", o.strict,
                     "also evaluate the verbatim displayed formulas (report only)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(o);
        if (cont->parsed()) return cmd_continue(o);
        if (probe->parsed()) return cmd_probe(o);
        if (pv->parsed()) return cmd_pointvortex(o);
        if (verify->parsed()) return cmd_verify(o);
        std::fprintf(stderr, "no subcommand\n");
        return 2;
    } catch (const NonConvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const SingularJacobianError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
}
