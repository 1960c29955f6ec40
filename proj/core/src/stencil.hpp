#pragma once

#include <array>
#include <cstddef>

#include "parmax/coefficients.hpp"
#include "parmax/operator_ops.hpp"

namespace parmax::detail {

struct StencilEntry {
    std::ptrdiff_t offset;  // spatial-index offset
    double coeff;
};

/// Coefficient row of the spatial part S[u] = -a_ij D_i D_j u + b_i D_i u + c u
/// at one node and time level: S[u](node) = sum coeff * u[node + offset].
struct SpatialRow {
    std::array<StencilEntry, 9> entries{};
    int count = 0;
    bool monotone = true;  // all off-diagonal coefficients <= 0

    void add(std::ptrdiff_t offset, double coeff) {
        for (int k = 0; k < count; ++k) {
            if (entries[static_cast<std::size_t>(k)].offset == offset) {
                entries[static_cast<std::size_t>(k)].coeff += coeff;
                return;
            }
        }
        entries[static_cast<std::size_t>(count++)] = {offset, coeff};
    }
};

/// `monotone_split` selects the seven-point positive splitting for the 2D
/// mixed term when |a12| <= min(a11, a22); otherwise (and always for plain
/// operator evaluation) the four-point cross stencil is used.
SpatialRow spatial_row(const OperatorCoefficients& op, std::size_t is, int it,
                       DriftScheme scheme, bool monotone_split);

}  // namespace parmax::detail
