#include "banded.hpp"

#include <lapacke.h>

#include <stdexcept>

namespace parmax::detail {

BandedSystem::BandedSystem(int n, int kl, int ku)
    : n_(n),
      kl_(kl),
      ku_(ku),
      ldab_(2 * kl + ku + 1),
      ab_(static_cast<std::size_t>(ldab_) * static_cast<std::size_t>(n), 0.0),
      ipiv_(static_cast<std::size_t>(n), 0) {}

void BandedSystem::clear() {
    std::fill(ab_.begin(), ab_.end(), 0.0);
    factored_ = false;
}

void BandedSystem::add(int i, int j, double v) {
    // Column-major band storage: A(i,j) lives at ab[j*ldab + kl + ku + i - j].
    if (i - j > kl_ || j - i > ku_)
        throw std::logic_error("banded system: entry outside the declared band");
    ab_[static_cast<std::size_t>(j) * static_cast<std::size_t>(ldab_) +
        static_cast<std::size_t>(kl_ + ku_ + i - j)] += v;
}

void BandedSystem::factor() {
    const lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_, ab_.data(),
                                           ldab_, ipiv_.data());
    if (info != 0)
        throw std::runtime_error("banded factorization failed: singular time-step matrix (info=" +
                                 std::to_string(info) + ")");
    factored_ = true;
}

void BandedSystem::solve(std::span<double> rhs_to_solution) const {
    if (!factored_) throw std::logic_error("banded system: solve before factor");
    if (rhs_to_solution.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("banded system: rhs size mismatch");
    const lapack_int info =
        LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1, ab_.data(), ldab_, ipiv_.data(),
                       rhs_to_solution.data(), n_);
    if (info != 0)
        throw std::runtime_error("banded back-substitution failed (info=" +
                                 std::to_string(info) + ")");
}

}  // namespace parmax::detail
