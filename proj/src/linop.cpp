#include "vsheet/linop.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vsheet {

namespace {
void remove_mean(std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    double mean = acc / (double)v.size();
    for (double& x : v) x -= mean;
}
}  // namespace

std::pair<std::vector<double>, std::vector<double>> gateaux_origin(const EvenSeries& h1,
                                                                   const EvenSeries& h2,
                                                                   const Grid& grid,
                                                                   BlockSource source) {
    const std::size_t M = grid.M;
    Grid gp(M);
    std::vector<double> h1p = synth(differentiate(h1), gp);
    std::vector<double> h1v = synth(h1, gp);
    std::vector<double> h2v = synth(h2, gp);
    std::vector<double> Sh2 = sine_kernel_apply(h2, grid);
    std::vector<double> dF(M), dG(M);
    if (source == BlockSource::formal) {
        std::vector<double> Kh1 = even_kernel_apply(h1, grid);
        for (std::size_t i = 0; i < M; ++i) {
            dF[i] = 0.5 * h1p[i] + Sh2[i];
            dG[i] = h1v[i] - Kh1[i] - 0.5 * h2v[i];
        }
    } else {
        double c = build_kernel_tables(M).c_mean;
        std::vector<double> Sh1 = sine_kernel_apply(h1, grid);
        std::vector<double> Kh1 = even_kernel_apply(h1, grid);
        std::vector<double> Ah1 = mean_kernel_apply(h1, grid);
        std::vector<double> Ah2 = mean_kernel_apply(h2, grid);
        for (std::size_t i = 0; i < M; ++i) {
            dF[i] = c * h1p[i] - 0.25 * Sh1[i] + 0.5 * Sh2[i];
            dG[i] = 0.5 * Ah1[i] + 2.5 * c * h1v[i] - 0.5 * Kh1[i] - Ah2[i] - c * h2v[i];
        }
    }
    remove_mean(dG);
    return {std::move(dF), std::move(dG)};
}

BlockOperator assemble_blocks(const MultiplierTable& table, BlockSource source) {
    BlockOperator op;
    op.source = source;
    std::size_t N = table.modes();
    op.blocks.resize(N);
    double c = table.c_mean;
    for (std::size_t j = 1; j <= N; ++j) {
        double lam = table.lambda[j - 1], mu = table.mu[j - 1], nu = table.nu[j - 1];
        double Cj = table.C[j - 1];
        if (!std::isfinite(lam) || !std::isfinite(mu) || !std::isfinite(nu) || lam == 0.0)
            throw std::invalid_argument("assemble_blocks: degenerate multiplier at mode " +
                                        std::to_string(j));
        double dj = (double)j;
        if (source == BlockSource::formal) {
            op.blocks[j - 1] = {{{-0.5 * dj, 0.5 * Cj * dj * dj},
                                 {0.5 * (2.0 + dj * dj), -0.5}}};
        } else {
            op.blocks[j - 1] = {{{-(c * dj + 0.25 * lam), 0.5 * lam},
                                 {0.5 * nu + 2.5 * c - 0.5 * mu, -(nu + c)}}};
        }
    }
    return op;
}

double block_det(const Mat2& q) { return q[0][0] * q[1][1] - q[0][1] * q[1][0]; }

Mat2 invert_block(const Mat2& q, std::size_t j) {
    double det = block_det(q);
    if (std::fabs(det) < 1e-12)
        throw std::runtime_error("singular linearization block at mode " + std::to_string(j));
    return {{{q[1][1] / det, -q[0][1] / det}, {-q[1][0] / det, q[0][0] / det}}};
}

std::pair<EvenSeries, EvenSeries> linear_predict(const ResidualPair& res,
                                                 const BlockOperator& op) {
    std::size_t N = res.f.modes();
    if (res.g.modes() != N || op.modes() < N)
        throw std::invalid_argument("linear_predict: operator does not cover the residual modes");
    EvenSeries dp(N), dq(N);
    for (std::size_t j = 1; j <= N; ++j) {
        const Mat2& Q = op.blocks[j - 1];
        double fj = res.f.c[j - 1], gj = res.g.c[j - 1];
        if (j == 1 && std::fabs(block_det(Q)) < 1e-12) {
            // Translation/gauge direction: the first-mode block is exactly
            // rank one, with rows tied by q11 - q12 = -(q21 - q22). On the
            // gauge slice db = -da both equations reduce to the same scalar;
            // average them.
            double rowF = Q[0][0] - Q[0][1];
            double rowG = Q[1][0] - Q[1][1];
            if (rowF == 0.0)
                throw std::runtime_error("singular linearization block at mode 1");
            double da = 0.5 * (-fj / rowF - gj / rowG);
            dp.c[0] = da;
            dq.c[0] = -da;
            continue;
        }
        Mat2 inv = invert_block(Q, j);
        dp.c[j - 1] = -(inv[0][0] * fj + inv[0][1] * gj);
        dq.c[j - 1] = -(inv[1][0] * fj + inv[1][1] * gj);
    }
    return {std::move(dp), std::move(dq)};
}

}  // namespace vsheet
