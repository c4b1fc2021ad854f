#pragma once
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "vsheet/contour.hpp"
#include "vsheet/linop.hpp"

namespace vsheet {

struct SolverConfig {
    std::size_t N = 32;       // cosine modes in p and q
    std::size_t M = 256;      // grid size, power of two, >= 4N
    double tol = 1e-9;        // residual sup-norm over both equations
    std::size_t max_iter = 25;
    double eps_switch = 0.02;  // reporting threshold for the automatic path
    double fd_step = 1e-7;     // scaled by max(1, |coeffs|_inf)
    int max_damping = 5;       // step halvings before accepting anyway
    int threads = 0;
};

class NonConvergenceError : public std::runtime_error {
  public:
    NonConvergenceError(const std::string& what, std::vector<double> hist)
        : std::runtime_error(what), history(std::move(hist)) {}
    std::vector<double> history;  // residual sup-norm per iteration
};

class SingularJacobianError : public std::runtime_error {
  public:
    SingularJacobianError(const std::string& what, double rc)
        : std::runtime_error(what), rcond(rc) {}
    double rcond;
};

// Solves the first-harmonic closure for W using that both residuals are
// affine in W: the sine-1 content of F must balance minus the cosine-1
// content of G. Exact for the trivial state; used to seed continuation and
// to check the gauge tie.
double closure_W(double eps, double d, const EvenSeries& p, const EvenSeries& q,
                 const Grid& grid);

struct NewtonResult {
    SheetState state;
    std::size_t iterations = 0;
    double residual_sup = 0.0;
    std::vector<double> history;
};

// Newton on unknowns (a_1..a_N, b_2..b_N, W) with the gauge b_1 = -a_1
// substituted, matching equations (sine modes of F, cosine modes of G).
// Jacobian by forward differences in the coefficients, analytic in W.
// Residuals are always evaluated on the stable path: the direct quotients
// carry 1/eps^2-amplified rounding noise above tol for mid-range eps.
NewtonResult newton_solve(double eps, double d, const SheetState& init,
                          const SolverConfig& cfg);

struct ContinuationRecord {
    double eps = 0.0;
    double d = 1.0;
    double W = 0.0;
    std::vector<double> p_coeffs;
    std::vector<double> q_coeffs;
    double residual_sup = 0.0;
    std::size_t iterations = 0;
    double min_curvature = 0.0;
    double K = 0.0;        // strength constant via the velocity path
    bool K_defined = false;  // false at eps = 0 where that path is singular
    double wall_ms = 0.0;
};

struct ContinuationResult {
    std::vector<ContinuationRecord> records;
    bool completed = false;
    double eps_reached = 0.0;  // last accepted eps
    std::string failure;       // empty when completed
};

// Warm-started sweep over eps_values (first entry 0 or near 0). A failure on
// the first value throws; a later failure returns the accepted prefix with
// the failure message. Each accepted record carries curvature and strength
// diagnostics.
ContinuationResult continuation(const std::vector<double>& eps_values, double d,
                                const SolverConfig& cfg);

}  // namespace vsheet
