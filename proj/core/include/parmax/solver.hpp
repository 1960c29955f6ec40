#pragma once

#include "parmax/coefficients.hpp"
#include "parmax/grid.hpp"
#include "parmax/operator_ops.hpp"

namespace parmax {

struct IterativeConfig {
    double tol = 1e-11;
    int max_iter = 20000;
};

/// Time-stepping scheme. theta = 1 (fully implicit) with upwind drift
/// yields an M-matrix step whenever sigma > 0 and sigma/ht + c > 0, and
/// with it the discrete maximum and comparison principles.
struct SchemeConfig {
    enum class Linear { BandedDirect, Iterative };

    double theta = 1.0;
    DriftScheme drift = DriftScheme::Upwind;
    Linear linear = Linear::BandedDirect;
    IterativeConfig iterative;
};

struct SolveResult {
    GridFunction u;
    double residual_inf;       // max per-level algebraic residual
    bool monotone_guaranteed;  // M-matrix conditions verified on every row
    long iterations;           // iterative solver only
};

/// Solves Lu = f on the cylinder with u = 0 on the parabolic boundary,
/// advancing level by level with the theta scheme.
SolveResult solve_forward(const OperatorCoefficients& op, const GridFunction& f,
                          const SchemeConfig& cfg = {});

/// Barrier problem L B = rhs (rhs typically |b| or |b^(k)|), zero parabolic
/// boundary data; nonnegative for rhs >= 0 under the monotone scheme.
SolveResult solve_barrier_problem(const OperatorCoefficients& op, const GridFunction& rhs,
                                  const SchemeConfig& cfg = {});

}  // namespace parmax
