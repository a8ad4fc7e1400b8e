#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace qg {

// Randomized fixture for the finite-rank perturbation principles: H0 random
// Hermitian, K Hermitian of exact rank r, T a unitary involution.
struct PerturbationFixture {
    Eigen::MatrixXcd H0;
    Eigen::MatrixXcd K;
    Eigen::MatrixXcd T;
    int rank_K = 0;
    std::uint64_t seed = 0;
};

PerturbationFixture make_fixture(int n, int rank_K, std::uint64_t seed);

// T = U diag(+-1) U* from a seeded Haar-ish unitary and random signs.
Eigen::MatrixXcd random_involution(int n, std::uint64_t seed);

// Energy grid over the union of the given spectra's ranges, resampled away
// from eigenvalues of all listed operators.
std::vector<double> safe_energy_grid(
    const std::vector<const Eigen::MatrixXcd*>& ops, int n_points,
    std::uint64_t seed);

// max over the grid of |N(E;H0) - N(E;H0+K)|; contract: <= rank(K).
int verify_rank_bound(const PerturbationFixture& fx,
                      const std::vector<double>& energy_grid);

struct ReflectionVerdict {
    int max_shift = 0;          // max |N(E;H0+K) - N(E;H0+TKT)|
    double antisym_residual = 0.0;  // ||T dH T + dH||_inf
    int positive_eigs = 0;      // of dH = TKT - K, above threshold
    int negative_eigs = 0;
};

// Reflection-bound verification; contract: max_shift <= ceil(rank(K)/2),
// antisym_residual ~ 0, signed counts each <= rank(K)/2.
ReflectionVerdict verify_reflection_bound(const PerturbationFixture& fx,
                                          const std::vector<double>& energy_grid);

}  // namespace qg
