#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "parmax/coefficients.hpp"
#include "parmax/grid.hpp"

namespace parmax::testing {

inline GridFunction random_grid_function(const Cylinder& grid, std::mt19937_64& rng,
                                         double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> values(grid.node_count());
    for (auto& v : values) v = dist(rng);
    return GridFunction(grid, std::move(values));
}

/// Smooth random field: a few low-frequency modes, bounded by `amp`.
inline GridFunction random_smooth_field(const Cylinder& grid, std::mt19937_64& rng,
                                        double amp = 1.0) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double a1 = unit(rng), a2 = unit(rng), a3 = unit(rng);
    const double kx = 1.0 + std::floor(std::abs(unit(rng)) * 2.0);
    const double kt = 1.0 + std::floor(std::abs(unit(rng)) * 2.0);
    const double R = grid.radius();
    const double T = grid.final_time();
    return GridFunction::sample(grid, [=](const std::array<double, 2>& x, double t) {
        double v = a1 * std::sin(kx * M_PI * (x[0] + R) / (2.0 * R));
        v += a2 * std::cos(kt * M_PI * t / T);
        if (grid.dim() == 2) v += a3 * std::sin(M_PI * (x[1] + R) / (2.0 * R));
        return amp * v / 3.0;
    });
}

/// Random operator certified nondegenerate with constant delta >= 0.1:
/// smooth bounded sigma, c, drift and a diagonally dominant diffusion
/// matrix (|a12| <= min(a11, a22) keeps the monotone splitting valid).
inline OperatorCoefficients random_certified_operator(const Cylinder& grid,
                                                      std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double R = grid.radius();
    const double s0 = 0.4 + 1.2 * unit(rng);
    const double svar = 0.25 * unit(rng);
    const double c0 = 0.8 * unit(rng);
    const double a0 = 0.5 + 1.0 * unit(rng);
    const double avar = 0.3 * unit(rng);
    const double a22v = 0.5 + 1.0 * unit(rng);
    const double a12v = 0.4 * std::min(a0 * (1.0 - avar), a22v) * unit(rng);
    const double b1 = 2.0 * unit(rng) - 1.0;
    const double b2 = 2.0 * unit(rng) - 1.0;

    const auto field = [&](double base, double var) {
        return GridFunction::sample(grid, [=](const std::array<double, 2>& x, double t) {
            return base * (1.0 + var * std::sin(M_PI * x[0] / R) *
                                     std::cos(M_PI * t / grid.final_time()));
        });
    };

    std::vector<GridFunction> a;
    a.push_back(field(a0, avar));
    if (grid.dim() == 2) {
        a.push_back(field(a22v, 0.0));
        a.push_back(field(a12v, 0.0));
    }
    std::vector<DriftPart> parts;
    DriftPart part;
    part.comp.push_back(field(b1, 0.3));
    if (grid.dim() == 2) part.comp.push_back(field(b2, 0.3));
    parts.push_back(std::move(part));
    return OperatorCoefficients(field(s0, svar), std::move(a), std::move(parts),
                                field(c0, 0.0));
}

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace parmax::testing
