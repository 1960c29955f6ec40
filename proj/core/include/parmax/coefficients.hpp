#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parmax/grid.hpp"

namespace parmax {

/// One additive part of the drift vector field; the full drift is the sum
/// of all parts, each of which may carry its own integrability exponents
/// at the estimate layer.
struct DriftPart {
    std::vector<GridFunction> comp;  // size = spatial dimension
};

/// Sampled coefficient fields of the operator
///   sigma D_t u - a_ij D_i D_j u + b_i D_i u + c u.
/// sigma >= 0, a symmetric positive semidefinite and c + kappa*sigma >= 0
/// are enforced on construction; kappa is the exponential time-rescaling
/// constant (0 when unused).
class OperatorCoefficients {
public:
    OperatorCoefficients(GridFunction sigma, std::vector<GridFunction> a,
                         std::vector<DriftPart> b_parts, GridFunction c, double kappa = 0.0);

    const Cylinder& grid() const { return sigma_.grid(); }
    int dim() const { return grid().dim(); }

    const GridFunction& sigma() const { return sigma_; }
    const GridFunction& c() const { return c_; }
    double kappa() const { return kappa_; }

    // a storage: 1D {a11}; 2D {a11, a22, a12}.
    double a11(std::size_t is, int it) const { return a_[0](is, it); }
    double a22(std::size_t is, int it) const { return a_[1](is, it); }
    double a12(std::size_t is, int it) const { return dim() == 2 ? a_[2](is, it) : 0.0; }
    double trace_a(std::size_t is, int it) const {
        return dim() == 1 ? a11(is, it) : a11(is, it) + a22(is, it);
    }
    /// det(a); tiny negative round-off is clamped to zero.
    double det_a(std::size_t is, int it) const;

    std::size_t part_count() const { return b_parts_.size(); }
    const std::vector<DriftPart>& b_parts() const { return b_parts_; }
    double b_total(std::size_t is, int it, int axis) const;
    double b_part(std::size_t k, std::size_t is, int it, int axis) const {
        return b_parts_[k].comp[static_cast<std::size_t>(axis)](is, it);
    }
    double abs_b_total(std::size_t is, int it) const;
    double abs_b_part(std::size_t k, std::size_t is, int it) const;

    bool time_independent() const { return time_independent_; }

    OperatorCoefficients with_c(GridFunction new_c, double new_kappa) const;

private:
    GridFunction sigma_;
    std::vector<GridFunction> a_;
    std::vector<DriftPart> b_parts_;
    GridFunction c_;
    double kappa_;
    double a_scale_;  // max |a entries|, for the det clamp tolerance
    bool time_independent_;
};

/// Uniform nondegeneracy constant delta: certifies
///   delta <= sigma, c <= 1/delta, |b| <= 1/delta,
///   delta |l|^2 <= a_ij l_i l_j <= 1/delta |l|^2.
struct NondegeneracyBounds {
    double delta;
};

struct CertificationResult {
    bool certified;
    std::string violation;  // empty when certified
};

CertificationResult certify_nondegenerate(const OperatorCoefficients& op, double delta);

// ---- Built-in coefficient families -------------------------------------

/// sigma = 1, a = I, b = 0, c = 0.
OperatorCoefficients make_heat(const Cylinder& grid);

struct ConstantCoefficients {
    double sigma = 1.0;
    double a11 = 1.0;
    double a22 = 1.0;
    double a12 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double c = 0.0;
    double kappa = 0.0;
};
OperatorCoefficients make_constant(const Cylinder& grid, const ConstantCoefficients& v);

/// Default regularization scale for the singular drift: half a grid step,
/// so the nodal values away from the origin are untouched.
double default_eps_sing(const Cylinder& grid);

/// b_i = strength * x_i / max(|x|, eps_sing)^alpha with sigma = 1, a = I,
/// c = c0. strength < 0 selects the natural value n + 1.
OperatorCoefficients make_singular_drift(const Cylinder& grid, double alpha,
                                         double strength = -1.0, double eps_sing = -1.0,
                                         double c0 = 1.0);

/// Diagonal-dominant anisotropic diffusion with optional smooth spatial
/// modulation of a11.
OperatorCoefficients make_anisotropic(const Cylinder& grid, double a11, double a22, double a12,
                                      double modulation = 0.0, double c0 = 0.0);

/// Two-part composite drift: a singular radial part plus a constant part.
OperatorCoefficients make_composite(const Cylinder& grid, double alpha, double strength,
                                    double eps_sing, double b_const1, double b_const2,
                                    double c0 = 1.0);

/// Name + parameter-table entry point used by scenario configs.
/// Known names: heat, constant, singular_drift, anisotropic, composite.
OperatorCoefficients build_coefficient_family(const Cylinder& grid, const std::string& name,
                                              const std::map<std::string, double>& params);

}  // namespace parmax
