#pragma once
#include <cstddef>
#include <vector>

#include "vsheet/trig.hpp"
#include "vsheet/vec2.hpp"

namespace vsheet {

// A candidate sheet pair: r(x) = 1 + eps^2 p(x), gamma(x) = 1 + eps^2 q(x),
// the left curve z(x) = r(x)(cos x, sin x) scaled by eps, its mirror at
// 2d e_1 with opposite strength, both translating at speed W along e_2.
// Negative eps is accepted and evaluated as |eps|: with even p, q the sign
// flip is a half-period reparameterization of the same pair.
struct SheetState {
    double eps = 0.0;
    double d = 1.0;
    double W = 0.0;
    EvenSeries p;
    EvenSeries q;
};

enum class EvalPath {
    automatic,  // stable below eps_switch, direct above
    direct,     // literal 1/eps^2 quotients; noisy for small eps
    stable      // cancellation done analytically; valid for all eps incl. 0
};

struct EvalOptions {
    EvalPath path = EvalPath::automatic;
    double eps_switch = 0.02;
    bool strict_display = false;  // verbatim source-text variant, report-only
    int threads = 0;
};

// r > 0 at the nodes, d >= 1, and the separation bound
// eps (1 + eps^2 max|p|) < d - 1/2 so the sheets cannot touch. Violations
// throw std::domain_error; nothing is clamped.
void check_admissible(const SheetState& st, const Grid& grid);

// Both governing residuals on the plain grid in one pass. F is the
// tangency residual scaled by |z_x|; G is the strength-transport residual
// with its mean removed (the projection is structural). The mean that was
// removed is kept for bookkeeping. On the stable path the removed mean
// excludes the grid-divergent pedestal c_mean/eps^2 of the self term, which
// an exact constant shift of the same equation absorbs.
struct NodalResiduals {
    std::vector<double> F;
    std::vector<double> G;
    double g_mean = 0.0;
};

NodalResiduals eval_nodal(const SheetState& st, const Grid& grid, const EvalOptions& opt = {});

std::vector<double> eval_F(const SheetState& st, const Grid& grid, const EvalOptions& opt = {});

struct GEval {
    std::vector<double> values;  // mean removed
    double removed_mean = 0.0;
};

GEval eval_G(const SheetState& st, const Grid& grid, const EvalOptions& opt = {});

// Projections of the residuals onto the unknown modes.
struct ResidualPair {
    OddSeries f;          // sine coefficients of F
    EvenSeries g;         // cosine coefficients of the mean-removed G
    double g_mean_removed = 0.0;
};

ResidualPair eval_residual(const SheetState& st, const Grid& grid, std::size_t N,
                           const EvalOptions& opt = {});

// Physical velocity at z(x): self-sheet PV integral over the staggered grid
// plus the mirror-sheet integral over the plain grid. The 1/eps^2 scaling is
// genuine here, so eps = 0 is rejected.
Vec2 eval_velocity(const SheetState& st, double x, const Grid& grid);
std::vector<Vec2> eval_velocity(const SheetState& st, const Grid& grid);

// (u - W e2) . n at the plain nodes, n = unit tangent rotated by +pi/2.
// Independent of the residual assembly; used to cross-check it.
std::vector<double> verify_tangency(const SheetState& st, const Grid& grid);

// gamma (u - W e2) . z_x / |z_x|^2 nodewise; constant on a true solution.
// K is minus the mean of the values.
struct StrengthCheck {
    std::vector<double> values;
    double K = 0.0;
};

StrengthCheck verify_strength(const SheetState& st, const Grid& grid);

}  // namespace vsheet
