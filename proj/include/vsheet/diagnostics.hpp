#pragma once
#include <cstddef>
#include <vector>

#include "vsheet/contour.hpp"
#include "vsheet/solver.hpp"

namespace vsheet {

// Curvature of z(x) = r(x)(cos x, sin x) via the radial closed form
// (r^2 + 2 r'^2 - r r'') / (r^2 + r'^2)^{3/2}, derivatives spectral.
std::vector<double> curvature(const SheetState& st, const Grid& grid);

// Same quantity assembled from the parametric components
// (z2'' z1' - z1'' z2') / (z1'^2 + z2'^2)^{3/2}; consistency check.
std::vector<double> curvature_parametric(const SheetState& st, const Grid& grid);

// Minimum over the grid nodes and an oversampled refinement, to catch
// inter-node sign dips.
double min_curvature(const SheetState& st, const Grid& grid, std::size_t oversample = 4);

struct MirrorReport {
    bool pass = false;
    std::size_t worst_mode = 0;   // 1-based; 0 when coefficients all match
    double max_coeff_diff = 0.0;
    double w_diff = 0.0;
};

// Solutions at +eps and -eps must coincide coefficientwise (< 1e-9) and in
// W (< 1e-10): with even p, q the sign of eps is a reparameterization.
MirrorReport mirror_check(const ContinuationRecord& plus, const ContinuationRecord& minus);

struct SlopeFit {
    double W0 = 0.0;
    double prefactor = 0.0;  // exp(intercept) of the log-log fit
    double exponent = 0.0;
    bool defined = false;    // false when all W coincide with W0
};

// Least-squares fit of log|W(eps) - W0| against log eps over the accepted
// records; needs at least 4 records spanning a decade in eps.
SlopeFit wslope_fit(const std::vector<ContinuationRecord>& records);

}  // namespace vsheet
