#include "parmax/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parmax {
namespace {

bool slices_equal(const GridFunction& f) {
    const Cylinder& g = f.grid();
    for (int it = 1; it < g.nt(); ++it) {
        for (std::size_t is = 0; is < g.space_count(); ++is) {
            if (f(is, it) != f(is, 0)) return false;
        }
    }
    return true;
}

double map_get(const std::map<std::string, double>& params, const std::string& key,
               double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

}  // namespace

OperatorCoefficients::OperatorCoefficients(GridFunction sigma, std::vector<GridFunction> a,
                                           std::vector<DriftPart> b_parts, GridFunction c,
                                           double kappa)
    : sigma_(std::move(sigma)),
      a_(std::move(a)),
      b_parts_(std::move(b_parts)),
      c_(std::move(c)),
      kappa_(kappa) {
    const Cylinder& g = sigma_.grid();
    const int n = g.dim();
    const std::size_t expected_a = n == 1 ? 1 : 3;
    if (a_.size() != expected_a)
        throw std::invalid_argument("diffusion matrix needs a11 (1D) or a11,a22,a12 (2D)");
    if (!(c_.grid() == g)) throw std::invalid_argument("coefficient grids must agree");
    for (const auto& field : a_)
        if (!(field.grid() == g)) throw std::invalid_argument("coefficient grids must agree");
    for (const auto& part : b_parts_) {
        if (part.comp.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("drift part component count must match the dimension");
        for (const auto& field : part.comp)
            if (!(field.grid() == g)) throw std::invalid_argument("coefficient grids must agree");
    }
    if (kappa_ < 0.0) throw std::invalid_argument("rescaling constant kappa must be >= 0");

    a_scale_ = 0.0;
    for (const auto& field : a_)
        for (const double v : field.values()) a_scale_ = std::max(a_scale_, std::abs(v));
    const double tol_entry = 1e-12 * (a_scale_ + 1.0);
    const double tol_det = 1e-14 * (a_scale_ * a_scale_ + 1.0);

    for (int it = 0; it < g.nt(); ++it) {
        for (std::size_t is = 0; is < g.space_count(); ++is) {
            if (sigma_(is, it) < 0.0)
                throw std::invalid_argument("sigma must be nonnegative at every node");
            if (c_(is, it) + kappa_ * sigma_(is, it) < 0.0)
                throw std::invalid_argument("c + kappa*sigma must be nonnegative at every node");
            if (a11(is, it) < -tol_entry)
                throw std::invalid_argument("a11 must be nonnegative (matrix not psd)");
            if (n == 2) {
                if (a22(is, it) < -tol_entry)
                    throw std::invalid_argument("a22 must be nonnegative (matrix not psd)");
                const double det = a11(is, it) * a22(is, it) - a12(is, it) * a12(is, it);
                if (det < -tol_det)
                    throw std::invalid_argument("diffusion matrix must be positive semidefinite");
            }
        }
    }

    time_independent_ = slices_equal(sigma_) && slices_equal(c_);
    for (const auto& field : a_) time_independent_ = time_independent_ && slices_equal(field);
    for (const auto& part : b_parts_)
        for (const auto& field : part.comp)
            time_independent_ = time_independent_ && slices_equal(field);
}

double OperatorCoefficients::det_a(std::size_t is, int it) const {
    if (dim() == 1) return std::max(a11(is, it), 0.0);
    const double det = a11(is, it) * a22(is, it) - a12(is, it) * a12(is, it);
    const double tol = 1e-14 * (a_scale_ * a_scale_ + 1.0);
    return det < 0.0 && det > -tol ? 0.0 : det;
}

double OperatorCoefficients::b_total(std::size_t is, int it, int axis) const {
    double sum = 0.0;
    for (const auto& part : b_parts_) sum += part.comp[static_cast<std::size_t>(axis)](is, it);
    return sum;
}

double OperatorCoefficients::abs_b_total(std::size_t is, int it) const {
    double s = 0.0;
    for (int axis = 0; axis < dim(); ++axis) {
        const double b = b_total(is, it, axis);
        s += b * b;
    }
    return std::sqrt(s);
}

double OperatorCoefficients::abs_b_part(std::size_t k, std::size_t is, int it) const {
    double s = 0.0;
    for (int axis = 0; axis < dim(); ++axis) {
        const double b = b_part(k, is, it, axis);
        s += b * b;
    }
    return std::sqrt(s);
}

OperatorCoefficients OperatorCoefficients::with_c(GridFunction new_c, double new_kappa) const {
    return OperatorCoefficients(sigma_, a_, b_parts_, std::move(new_c), new_kappa);
}

CertificationResult certify_nondegenerate(const OperatorCoefficients& op, double delta) {
    if (!(delta > 0.0)) return {false, "delta must be positive"};
    const double inv = 1.0 / delta;
    const Cylinder& g = op.grid();
    for (int it = 0; it < g.nt(); ++it) {
        for (std::size_t is = 0; is < g.space_count(); ++is) {
            const double s = op.sigma()(is, it);
            if (s < delta || s > inv) return {false, "sigma outside [delta, 1/delta]"};
            const double c = op.c()(is, it);
            if (c < 0.0 || c > inv) return {false, "c outside [0, 1/delta]"};
            if (op.abs_b_total(is, it) > inv) return {false, "|b| exceeds 1/delta"};
            double lam_min, lam_max;
            if (g.dim() == 1) {
                lam_min = lam_max = op.a11(is, it);
            } else {
                const double tr = op.trace_a(is, it);
                const double det = op.det_a(is, it);
                const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
                lam_min = 0.5 * (tr - disc);
                lam_max = 0.5 * (tr + disc);
            }
            if (lam_min < delta || lam_max > inv)
                return {false, "diffusion eigenvalues outside [delta, 1/delta]"};
        }
    }
    return {true, ""};
}

// ---- Built-in families ---------------------------------------------------

namespace {

GridFunction constant_field(const Cylinder& grid, double value) {
    return GridFunction(grid, std::vector<double>(grid.node_count(), value));
}

std::vector<GridFunction> identity_matrix(const Cylinder& grid) {
    if (grid.dim() == 1) return {constant_field(grid, 1.0)};
    return {constant_field(grid, 1.0), constant_field(grid, 1.0), constant_field(grid, 0.0)};
}

DriftPart radial_drift_part(const Cylinder& grid, double alpha, double strength,
                            double eps_sing) {
    DriftPart part;
    for (int axis = 0; axis < grid.dim(); ++axis) {
        std::vector<double> values(grid.node_count());
        for (int it = 0; it < grid.nt(); ++it) {
            for (std::size_t is = 0; is < grid.space_count(); ++is) {
                const double r = std::max(grid.spatial_radius(is), eps_sing);
                values[grid.flat(is, it)] = strength * grid.coord(is, axis) / std::pow(r, alpha);
            }
        }
        part.comp.push_back(GridFunction(grid, std::move(values)));
    }
    return part;
}

DriftPart constant_drift_part(const Cylinder& grid, double b1, double b2) {
    DriftPart part;
    part.comp.push_back(constant_field(grid, b1));
    if (grid.dim() == 2) part.comp.push_back(constant_field(grid, b2));
    return part;
}

bool drift_part_is_zero(const DriftPart& part) {
    for (const auto& field : part.comp)
        for (const double v : field.values())
            if (v != 0.0) return false;
    return true;
}

}  // namespace

double default_eps_sing(const Cylinder& grid) { return 0.5 * grid.hx(); }

OperatorCoefficients make_heat(const Cylinder& grid) {
    return OperatorCoefficients(constant_field(grid, 1.0), identity_matrix(grid), {},
                                constant_field(grid, 0.0));
}

OperatorCoefficients make_constant(const Cylinder& grid, const ConstantCoefficients& v) {
    std::vector<GridFunction> a;
    if (grid.dim() == 1) {
        a = {constant_field(grid, v.a11)};
    } else {
        a = {constant_field(grid, v.a11), constant_field(grid, v.a22),
             constant_field(grid, v.a12)};
    }
    std::vector<DriftPart> parts;
    if (v.b1 != 0.0 || v.b2 != 0.0) parts.push_back(constant_drift_part(grid, v.b1, v.b2));
    return OperatorCoefficients(constant_field(grid, v.sigma), std::move(a), std::move(parts),
                                constant_field(grid, v.c), v.kappa);
}

OperatorCoefficients make_singular_drift(const Cylinder& grid, double alpha, double strength,
                                         double eps_sing, double c0) {
    if (!(alpha > 0.0)) throw std::invalid_argument("singular drift needs alpha > 0");
    if (strength < 0.0) strength = grid.dim() + 1;
    if (eps_sing < 0.0) eps_sing = default_eps_sing(grid);
    std::vector<DriftPart> parts;
    parts.push_back(radial_drift_part(grid, alpha, strength, eps_sing));
    return OperatorCoefficients(constant_field(grid, 1.0), identity_matrix(grid),
                                std::move(parts), constant_field(grid, c0));
}

OperatorCoefficients make_anisotropic(const Cylinder& grid, double a11, double a22, double a12,
                                      double modulation, double c0) {
    std::vector<GridFunction> a;
    std::vector<double> a11_values(grid.node_count());
    for (int it = 0; it < grid.nt(); ++it) {
        for (std::size_t is = 0; is < grid.space_count(); ++is) {
            const double x = grid.coord(is, 0) / grid.radius();
            a11_values[grid.flat(is, it)] = a11 * (1.0 + modulation * x * x);
        }
    }
    a.push_back(GridFunction(grid, std::move(a11_values)));
    if (grid.dim() == 2) {
        a.push_back(constant_field(grid, a22));
        a.push_back(constant_field(grid, a12));
    }
    return OperatorCoefficients(constant_field(grid, 1.0), std::move(a), {},
                                constant_field(grid, c0));
}

OperatorCoefficients make_composite(const Cylinder& grid, double alpha, double strength,
                                    double eps_sing, double b_const1, double b_const2,
                                    double c0) {
    if (strength < 0.0) strength = grid.dim() + 1;
    if (eps_sing < 0.0) eps_sing = default_eps_sing(grid);
    std::vector<DriftPart> parts;
    parts.push_back(radial_drift_part(grid, alpha, strength, eps_sing));
    parts.push_back(constant_drift_part(grid, b_const1, b_const2));
    if (drift_part_is_zero(parts.back()))
        throw std::invalid_argument("composite family: the bounded drift part is zero");
    return OperatorCoefficients(constant_field(grid, 1.0), identity_matrix(grid),
                                std::move(parts), constant_field(grid, c0));
}

OperatorCoefficients build_coefficient_family(const Cylinder& grid, const std::string& name,
                                              const std::map<std::string, double>& params) {
    if (name == "heat") return make_heat(grid);
    if (name == "constant") {
        ConstantCoefficients v;
        v.sigma = map_get(params, "sigma", 1.0);
        v.a11 = map_get(params, "a11", 1.0);
        v.a22 = map_get(params, "a22", 1.0);
        v.a12 = map_get(params, "a12", 0.0);
        v.b1 = map_get(params, "b1", 0.0);
        v.b2 = map_get(params, "b2", 0.0);
        v.c = map_get(params, "c", 0.0);
        v.kappa = map_get(params, "kappa", 0.0);
        return make_constant(grid, v);
    }
    if (name == "singular_drift") {
        return make_singular_drift(grid, map_get(params, "alpha", 1.0),
                                   map_get(params, "strength", -1.0),
                                   map_get(params, "eps_sing", -1.0), map_get(params, "c", 1.0));
    }
    if (name == "anisotropic") {
        return make_anisotropic(grid, map_get(params, "a11", 2.0), map_get(params, "a22", 1.0),
                                map_get(params, "a12", 0.0), map_get(params, "modulation", 0.0),
                                map_get(params, "c", 0.0));
    }
    if (name == "composite") {
        return make_composite(grid, map_get(params, "alpha", 1.0),
                              map_get(params, "strength", -1.0),
                              map_get(params, "eps_sing", -1.0), map_get(params, "b1", 1.0),
                              map_get(params, "b2", 0.0), map_get(params, "c", 1.0));
    }
    throw std::invalid_argument("unknown coefficient family '" + name + "'");
}

}  // namespace parmax
