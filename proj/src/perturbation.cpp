#include "qg/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qg/discrete.hpp"

namespace qg {

namespace {

Eigen::MatrixXcd ginibre(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = std::complex<double>(g(rng), g(rng));
    return m;
}

Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64& rng) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre(n, rng));
    Eigen::MatrixXcd q = qr.householderQ();
    // Fix the phase ambiguity so the distribution does not depend on the QR
    // convention.
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        std::complex<double> d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

}  // namespace

Eigen::MatrixXcd random_involution(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Eigen::MatrixXcd u = haar_unitary(n, rng);
    Eigen::VectorXd s(n);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < n; ++i) s(i) = coin(rng) ? 1.0 : -1.0;
    // Force both eigenspaces nonempty so T != +-I.
    s(0) = 1.0;
    s(n - 1) = -1.0;
    return u * s.asDiagonal() * u.adjoint();
}

PerturbationFixture make_fixture(int n, int rank_K, std::uint64_t seed) {
    if (rank_K < 1 || rank_K > n) throw std::invalid_argument("rank out of range");
    std::mt19937_64 rng(seed);

    PerturbationFixture fx;
    fx.seed = seed;
    fx.rank_K = rank_K;

    Eigen::MatrixXcd g = ginibre(n, rng);
    fx.H0 = 0.5 * (g + g.adjoint());

    Eigen::MatrixXcd u = haar_unitary(n, rng);
    Eigen::VectorXd s(n);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < n; ++i) s(i) = coin(rng) ? 1.0 : -1.0;
    s(0) = 1.0;
    s(n - 1) = -1.0;
    fx.T = u * s.asDiagonal() * u.adjoint();

    // Support K on a T-invariant subspace W (spanned by eigenvectors of T).
    // This keeps rank(TKT - K) <= rank(K), so the antisymmetry of the
    // difference forces at most rank(K)/2 eigenvalues of either sign -- the
    // property the comparison principle actually uses.
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    Eigen::MatrixXcd w(n, rank_K);
    for (int j = 0; j < rank_K; ++j) w.col(j) = u.col(idx[j]);

    Eigen::MatrixXcd rot = haar_unitary(rank_K, rng);
    Eigen::MatrixXcd phi = w * rot;

    std::uniform_real_distribution<double> mag(0.5, 2.0);
    fx.K = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < rank_K; ++j) {
        double mu = mag(rng) * (coin(rng) ? 1.0 : -1.0);
        fx.K += mu * phi.col(j) * phi.col(j).adjoint();
    }
    fx.K = 0.5 * (fx.K + fx.K.adjoint());
    return fx;
}

std::vector<double> safe_energy_grid(
    const std::vector<const Eigen::MatrixXcd*>& ops, int n_points,
    std::uint64_t seed) {
    std::vector<Eigen::VectorXd> spectra;
    double lo = 0.0, hi = 0.0, scale = 1.0;
    bool first = true;
    for (const auto* op : ops) {
        spectra.push_back(eigenvalues(*op));
        const auto& ev = spectra.back();
        if (first) {
            lo = ev.minCoeff();
            hi = ev.maxCoeff();
            first = false;
        } else {
            lo = std::min(lo, ev.minCoeff());
            hi = std::max(hi, ev.maxCoeff());
        }
        scale = std::max({scale, std::abs(ev.minCoeff()), std::abs(ev.maxCoeff())});
    }
    const double margin = 1e-6 * scale;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick(lo - 0.5, hi + 0.5);
    std::vector<double> grid;
    grid.reserve(n_points);
    while (static_cast<int>(grid.size()) < n_points) {
        double e = pick(rng);
        bool clear = true;
        for (const auto& ev : spectra)
            for (int i = 0; i < ev.size() && clear; ++i)
                if (std::abs(ev(i) - e) < margin) clear = false;
        if (clear) grid.push_back(e);
    }
    return grid;
}

int verify_rank_bound(const PerturbationFixture& fx,
                      const std::vector<double>& energy_grid) {
    Eigen::VectorXd ev0 = eigenvalues(fx.H0);
    Eigen::VectorXd ev1 = eigenvalues(fx.H0 + fx.K);
    int worst = 0;
    for (double e : energy_grid)
        worst = std::max(worst, std::abs(counting(ev0, e) - counting(ev1, e)));
    return worst;
}

ReflectionVerdict verify_reflection_bound(const PerturbationFixture& fx,
                                          const std::vector<double>& energy_grid) {
    ReflectionVerdict v;
    Eigen::MatrixXcd tkt = fx.T * fx.K * fx.T;
    Eigen::MatrixXcd dh = tkt - fx.K;

    v.antisym_residual = (fx.T * dh * fx.T + dh).cwiseAbs().maxCoeff();

    Eigen::VectorXd ev_dh = eigenvalues(dh);
    const double zero_tol = 1e-10 * std::max(ev_dh.cwiseAbs().maxCoeff(), 1.0);
    for (int i = 0; i < ev_dh.size(); ++i) {
        if (ev_dh(i) > zero_tol) ++v.positive_eigs;
        if (ev_dh(i) < -zero_tol) ++v.negative_eigs;
    }

    Eigen::VectorXd ev_k = eigenvalues(fx.H0 + fx.K);
    Eigen::VectorXd ev_t = eigenvalues(fx.H0 + tkt);
    for (double e : energy_grid)
        v.max_shift = std::max(v.max_shift,
                               std::abs(counting(ev_k, e) - counting(ev_t, e)));
    return v;
}

}  // namespace qg
