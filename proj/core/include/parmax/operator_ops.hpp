#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parmax/coefficients.hpp"
#include "parmax/exponents.hpp"
#include "parmax/grid.hpp"

namespace parmax {

enum class DriftScheme { Central, Upwind };

/// Nodewise operator application. Nodes whose stencil leaves the grid
/// (the initial slice and the box faces) are marked undefined and carry
/// the value zero, never a silent extrapolation.
struct OperatorApplication {
    GridFunction values;
    std::vector<std::uint8_t> defined;

    bool defined_at(std::size_t is, int it) const {
        return defined[values.grid().flat(is, it)] != 0;
    }
};

/// Backward difference in time, central second differences in space
/// (four-point cross stencil for the mixed term), drift per `scheme`.
OperatorApplication apply_operator(const OperatorCoefficients& op, const GridFunction& u,
                                   DriftScheme scheme = DriftScheme::Central);

enum class DegeneracyBranch {
    TracePositive,      // p0 = n
    SigmaPositive,      // q0 = 1
    CPositive,          // p0 = q0 = inf
    CPlusSigma,         // p0 = inf, 1 < q0 < inf
    TracePlusC,         // q0 = inf, n < p0 < inf
    TracePlusSigma,     // n/p0 + 1/q0 = 1, p0, q0 finite
    TraceSigmaC,        // otherwise
};

std::string degeneracy_branch_name(DegeneracyBranch b);

struct DegeneracyReport {
    DegeneracyBranch branch;
    bool pass;
    std::vector<std::size_t> violating_nodes;  // flat node indices

    std::string branch_name() const { return degeneracy_branch_name(branch); }
};

/// Selects the branch dictated by (p0, q0) and evaluates the required
/// strict positivity at every grid node.
DegeneracyReport check_degeneracy_condition(const OperatorCoefficients& op,
                                            const ExponentPair& e0);

/// Scalar field that may hold flagged +infinity values (genuine divisions
/// by zero in the drift weight); kept separate from GridFunction, whose
/// values are always finite.
struct WeightField {
    Cylinder grid;
    std::vector<double> values;
    std::vector<std::uint8_t> infinite;

    double at(std::size_t is, int it) const { return values[grid.flat(is, it)]; }
    bool any_infinite() const;
    std::size_t infinite_count() const;
    /// Throws if any value is flagged infinite.
    GridFunction as_grid_function() const;
};

inline constexpr int kDriftTotal = -1;

/// h = sigma^{-1/q} det(a)^{-1/p} c^{n/p+1/q-1} |b| (or |b^(k)|), with the
/// conventions 0^0 = 1 and 0/0 = 0; any other division by zero is a
/// flagged +infinity.
WeightField drift_weight(const OperatorCoefficients& op, const ExponentPair& e, int part = kDriftTotal);

/// Exponential time rescaling v = exp(-kappa t) u with c replaced by
/// c + kappa*sigma. factor = exp(kappa T).
struct RescaledProblem {
    OperatorCoefficients op;
    GridFunction v;
    double factor;
};

RescaledProblem exp_rescale(const OperatorCoefficients& op, const GridFunction& u);

/// x^e with the 0^0 = 1 convention; 0^negative is +infinity.
double pow_conv(double x, double e);

}  // namespace parmax
