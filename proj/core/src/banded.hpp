#pragma once

#include <span>
#include <vector>

namespace parmax::detail {

/// General banded system in LAPACK band storage, factored once with
/// partial pivoting (dgbtrf) and reused across right-hand sides (dgbtrs).
class BandedSystem {
public:
    BandedSystem(int n, int kl, int ku);

    void clear();
    void add(int i, int j, double v);

    void factor();
    void solve(std::span<double> rhs_to_solution) const;
    bool factored() const { return factored_; }

    int size() const { return n_; }

private:
    int n_;
    int kl_;
    int ku_;
    int ldab_;
    std::vector<double> ab_;
    std::vector<int> ipiv_;
    bool factored_ = false;
};

}  // namespace parmax::detail
