#pragma once

#include <optional>
#include <span>

#include "parmax/exponents.hpp"
#include "parmax/grid.hpp"

namespace parmax {

enum class NormOrder { SpaceOuter, TimeOuter, Auto };

/// Weighted anisotropic norm specification. Auto order resolves to the
/// stronger norm: outer spatial integral for p < q, outer time integral
/// for p > q (they coincide for p = q).
struct MixedNormSpec {
    ExponentPair exps;
    NormOrder order = NormOrder::Auto;
    std::optional<GridFunction> weight;        // w > 0; default identically 1
    std::optional<PositivitySet> restriction;  // zero extension outside

    static MixedNormSpec plain(Exponent p, Exponent q) {
        return MixedNormSpec{ExponentPair{p, q}, NormOrder::Auto, std::nullopt, std::nullopt};
    }
};

NormOrder resolve_order(const ExponentPair& exps, NormOrder requested);

/// Composite trapezoid quadrature of the iterated integral, exact max over
/// nodes for infinite exponents. Spatial integration covers the closed
/// ball |x| <= R inside the box grid.
double mixed_norm(const GridFunction& u, const MixedNormSpec& spec);

/// Same quadrature on a raw value array; values may contain +infinity
/// (used for drift-weight norms), which propagates to the result.
double mixed_norm_raw(const Cylinder& grid, std::span<const double> values,
                      const MixedNormSpec& spec);

/// Brute-force reference: direct double-loop summation straight from the
/// definition, no shared kernels. Grids up to 1e5 nodes.
double mixed_norm_oracle(const GridFunction& u, const MixedNormSpec& spec);

struct EmbeddingCheck {
    double norm_space_outer;
    double norm_time_outer;
    bool ordered;  // time_outer <= space_outer (+ rounding slack)
};

/// For finite p < q: evaluates both iterated orders and checks that the
/// space-outer norm dominates.
EmbeddingCheck embedding_check(const GridFunction& u, const Exponent& p, const Exponent& q);

}  // namespace parmax
