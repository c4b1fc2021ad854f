#pragma once
#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "vsheet/contour.hpp"
#include "vsheet/kernels.hpp"

namespace vsheet {

using Mat2 = std::array<std::array<double, 2>, 2>;

// Two origin linearizations are kept side by side. "measured" is the honest
// directional derivative of the discrete residual at (eps=0, p=q=0, W fixed):
//   dF(h1,h2) = c_mean h1' - S[h1]/4 + S[h2]/2
//   dG(h1,h2) = A[h1]/2 + (5/2) c_mean h1 - K[h1]/2 - A[h2] - c_mean h2
// "formal" is the closed-form linearization the derivation sketches:
//   dF(h1,h2) = h1'/2 + S[h2],  dG(h1,h2) = h1 - K[h1] - h2/2
// The solver and the predictor use measured; formal is emitted for
// comparison in reports.
enum class BlockSource { measured, formal };

// Nodal directional derivative at the origin (odd values, even values).
std::pair<std::vector<double>, std::vector<double>> gateaux_origin(
    const EvenSeries& h1, const EvenSeries& h2, const Grid& grid,
    BlockSource source = BlockSource::measured);

struct BlockOperator {
    std::vector<Mat2> blocks;  // per mode j = 1..N
    BlockSource source = BlockSource::measured;
    std::size_t modes() const { return blocks.size(); }
};

// measured: [[-(c j + lambda_j/4), lambda_j/2], [nu_j/2 + 5c/2 - mu_j/2, -(nu_j + c)]]
// formal:   [[-j/2, C_j j^2/2], [(2 + j^2)/2, -1/2]]
BlockOperator assemble_blocks(const MultiplierTable& table, BlockSource source);

double block_det(const Mat2& q);

// Throws a singular-block error naming j when |det| < 1e-12.
Mat2 invert_block(const Mat2& q, std::size_t j);

// Blockwise Newton step -Q_j^{-1} (f_j, g_j) of the origin-linearized
// system. Mode 1 of the measured operator is exactly singular (the
// translation/gauge direction: its rows satisfy q11 - q12 = -(q21 - q22)),
// so that mode is solved on the gauge slice db1 = -da1, averaging the two
// consistent scalar equations. Modes j >= 2 must be invertible.
std::pair<EvenSeries, EvenSeries> linear_predict(const ResidualPair& res,
                                                 const BlockOperator& op);

}  // namespace vsheet
