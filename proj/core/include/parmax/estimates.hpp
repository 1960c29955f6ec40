#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "parmax/coefficients.hpp"
#include "parmax/exponents.hpp"
#include "parmax/grid.hpp"
#include "parmax/mixed_norm.hpp"
#include "parmax/operator_ops.hpp"
#include "parmax/solver.hpp"

namespace parmax {

struct DriftNormEntry {
    int part;  // 0-based part index, or kDriftTotal
    ExponentPair exps;
    double norm;
    bool infinite;
};

/// One bound evaluation: left side sup u, weighted right-side norm over
/// the positivity set, drift-weight norms, degeneracy verdict and solver
/// diagnostics. When kappa > 0 the report describes the rescaled problem
/// and carries exp(kappa T) plus the original supremum alongside.
struct EstimateReport {
    Cylinder grid;
    ExponentPair exponents;
    double lhs_sup = 0.0;
    double rhs_norm = 0.0;
    double ratio = 0.0;  // 0/0 -> 0
    std::vector<DriftNormEntry> drift_norms;
    DegeneracyReport degeneracy;
    bool hypotheses_valid = true;
    double rescale_factor = 1.0;
    double lhs_sup_original = 0.0;
    bool rescale_chain_ok = true;  // sup u <= exp(kappa T) sup v, scheme slack
    double solver_residual = 0.0;
    bool monotone_guaranteed = true;
    std::size_t positivity_count = 0;
};

/// Weighted norm of (Lu)+ over the positivity set of u:
///   || (Lu)+ / (sigma^{1/q} det(a)^{1/p} c^{1-n/p-1/q}) ||_{p,q,(Q_u)}
/// with the 0^0 = 1 and 0/0 = 0 conventions. Requires u <= 0 on the
/// parabolic boundary (tolerance 1e-10). exclude_core_radius > 0 drops the
/// nodes with |x| below it (regularization-ball studies near alpha = 2).
double estimate_rhs(const OperatorCoefficients& op, const GridFunction& u,
                    const ExponentPair& e0, double exclude_core_radius = 0.0);

/// Solves Lu = f with zero parabolic boundary data and assembles the full
/// report; applies the exponential rescaling first when kappa > 0.
EstimateReport verify_bound(const OperatorCoefficients& op, const GridFunction& f,
                            const ExponentPair& e0, const std::vector<ExponentPair>& e1_list,
                            const SchemeConfig& scheme = {},
                            double exclude_core_radius = 0.0);

double default_tol_bony(const Cylinder& grid);  // 10 (hx + ht)

struct BonyResult {
    bool applicable;       // u attains a nonnegative maximum at an interior node
    std::size_t max_flat;  // flat index of the interior maximum (when applicable)
    double max_value;
    double normalized_sup;  // sup Lu / (Sp(a) + sigma + c) over interior nodes
    double tol;
    bool pass;  // normalized_sup >= -tol
};

BonyResult bony_check(const OperatorCoefficients& op, const GridFunction& u,
                      double tol_bony = -1.0);

/// Regularized-drift norm study under halving of the regularization
/// radius; `divergent` is raised when the increments fail to decay.
struct DivergenceStudy {
    std::vector<double> eps;
    std::vector<double> value;
    std::vector<double> increment;     // value[k+1] - value[k]
    std::vector<double> growth_ratio;  // value[k+1] / value[k]
    bool divergent = false;
};

struct CounterexampleReport {
    Cylinder grid;
    double alpha = 0.0;
    double eps_sing = 0.0;
    double u_origin_final = 0.0;  // U at x = 0, t = T
    double boundary_max = 0.0;    // max U over the parabolic boundary
    double lu_interior_max = 0.0; // max LU over interior nodes with |x| >= 2 hx
    std::size_t lu_nonneg_count = 0;
    double h_norm_grid = 0.0;   // grid quadrature value of ||h||_{n,inf}
    double h_norm_exact = 0.0;  // closed-form radial integral at eps_sing
    DivergenceStudy study;
    // Naive sup/sup bound applied to U itself: with the regularization core
    // excluded, (L U)_+ vanishes while sup U = 1/2, so no finite constant
    // certifies the bound; with the core included the positive part lives
    // only on the regularized ball.
    double naive_sup = 0.0;                // sup+ of U
    double naive_rhs_core_included = 0.0;  // ||(L U)_+ / c||_{inf,inf,(Q_U)}
    double naive_rhs_core_excluded = 0.0;  // same, nodes |x| >= 2 hx only
};

/// Builds U = 2t - t^2 - |x|^2 - 1/2 against the drift (n+1) x / |x|^alpha
/// (sigma = 1, a = I, c = 1) and reports the supersolution facts together
/// with the ||h||_{n,inf} regularization study. alpha in (0, 2].
CounterexampleReport counterexample_remark41(double alpha, const Cylinder& grid,
                                             double eps_sing = -1.0);

/// Exact ||h||_{n,inf} over the ball for the drift strength*x/max(|x|,eps)^alpha
/// with unit sigma, a, c: piecewise closed-form radial integral.
double radial_drift_mixed_norm_exact(int dim, double radius, double alpha, double strength,
                                     double eps);

}  // namespace parmax
