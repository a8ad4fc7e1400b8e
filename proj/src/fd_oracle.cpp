#include "qg/fd_oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qg {

namespace {

constexpr double kPi = std::numbers::pi;

double piece_value(const Potential* V, int edge_id, double x) {
    if (!V) return 0.0;
    auto it = V->find(edge_id);
    if (it == V->end()) return 0.0;
    for (const auto& p : it->second)
        if (x <= p.upto + 1e-12) return p.value;
    return it->second.empty() ? 0.0 : it->second.back().value;
}

Discretization build(const MetricGraph& g, const std::map<int, int>& counts,
                     double target_h, const Potential* V) {
    Discretization d;
    d.target_h = target_h;
    d.points_per_edge = counts;

    for (const auto& v : g.vertices()) {
        if (v.bc.kind != BcKind::Kirchhoff && v.bc.kind != BcKind::Dirichlet)
            throw std::domain_error("fd oracle supports Kirchhoff/Dirichlet only");
    }

    int next = 0;
    for (const auto& v : g.vertices()) {
        if (v.bc.kind == BcKind::Dirichlet || g.degree(v.id) == 0)
            d.vertex_site[v.id] = -1;
        else
            d.vertex_site[v.id] = next++;
    }
    for (const auto& e : g.edges()) {
        d.edge_base[e.id] = next;
        next += counts.at(e.id) - 1;
        d.step[e.id] = e.length / counts.at(e.id);
        if (e.alpha != 0.0) d.real_symmetric = false;
    }

    DiscreteGraph dg;
    dg.n = next;
    dg.potential.assign(next, 0.0);

    // Finite-volume form, symmetrized by the M^{1/2} similarity: cell
    // volumes are h_e at interior sites and sum of h_e/2 over incident edge
    // ends at a junction. This keeps the junction stencil O(h^2)-accurate in
    // the eigenvalues (the bare graph-Laplacian row is only O(h)).
    std::vector<double> vol(next, 0.0);
    std::vector<double> vsum(next, 0.0);
    std::vector<int> vcnt(next, 0);
    for (const auto& e : g.edges()) {
        const int m = counts.at(e.id);
        const double h = d.step.at(e.id);
        const int base = d.edge_base.at(e.id);
        const int ts = d.vertex_site.at(e.tail);
        const int hs = d.vertex_site.at(e.head);
        for (int j = 0; j < m - 1; ++j) vol[base + j] += h;
        if (ts >= 0) vol[ts] += h / 2.0;
        if (hs >= 0) vol[hs] += h / 2.0;
    }

    for (const auto& e : g.edges()) {
        const int m = counts.at(e.id);
        const double h = d.step.at(e.id);
        const double phase = e.alpha / m;
        // theta = phase + pi encodes the negative FD coupling with J > 0.
        const double theta = phase + kPi > kPi ? phase - kPi : phase + kPi;
        const int base = d.edge_base.at(e.id);
        const int ts = d.vertex_site.at(e.tail);
        const int hs = d.vertex_site.at(e.head);

        auto hop = [&](int u, int v) {
            dg.couplings.push_back(
                {u, v, 1.0 / (h * std::sqrt(vol[u] * vol[v])), theta});
        };
        auto sample = [&](double x) {
            const double val = piece_value(V, e.id, x);
            d.spectrum_floor = std::min(d.spectrum_floor, val);
            return val;
        };
        if (ts >= 0) {
            hop(ts, base);
            dg.potential[ts] += 1.0 / (h * vol[ts]);
            vsum[ts] += sample(0.0);
            vcnt[ts] += 1;
        }
        for (int j = 0; j + 1 < m - 1; ++j) hop(base + j, base + j + 1);
        if (hs >= 0) {
            hop(base + m - 2, hs);
            dg.potential[hs] += 1.0 / (h * vol[hs]);
            vsum[hs] += sample(e.length);
            vcnt[hs] += 1;
        }
        for (int j = 1; j < m; ++j) {
            dg.potential[base + j - 1] += 2.0 / (h * h);
            dg.potential[base + j - 1] += sample(j * h);
        }
    }
    for (int i = 0; i < next; ++i)
        if (vcnt[i] > 0) dg.potential[i] += vsum[i] / vcnt[i];

    d.graph = std::move(dg);
    validate_discrete(d.graph);
    return d;
}

template <typename Scalar>
Eigen::SparseMatrix<Scalar> assemble_sparse(const DiscreteGraph& dg) {
    std::vector<Eigen::Triplet<Scalar>> trips;
    trips.reserve(dg.couplings.size() * 2 + dg.n);
    for (int i = 0; i < dg.n; ++i)
        trips.emplace_back(i, i, Scalar(dg.potential[i]));
    for (const auto& c : dg.couplings) {
        if constexpr (std::is_same_v<Scalar, double>) {
            const double v = c.J * std::cos(c.theta);
            trips.emplace_back(c.u, c.v, v);
            trips.emplace_back(c.v, c.u, v);
        } else {
            const Scalar v = std::polar(c.J, c.theta);
            trips.emplace_back(c.u, c.v, v);
            trips.emplace_back(c.v, c.u, std::conj(v));
        }
    }
    Eigen::SparseMatrix<Scalar> H(dg.n, dg.n);
    H.setFromTriplets(trips.begin(), trips.end());
    return H;
}

// Block inverse iteration with Rayleigh-Ritz: robust for the degenerate
// pairs a loop produces, which single-vector Lanczos can silently drop.
template <typename Scalar>
std::vector<double> sparse_lowest(const Eigen::SparseMatrix<Scalar>& H,
                                  int n_levels, double spectrum_floor) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const int n = static_cast<int>(H.rows());
    const int q = std::min(n, n_levels + 10);

    // Shift just below the known spectral floor so inverse iteration
    // targets the bottom of the spectrum (Gershgorin is far too loose for
    // the volume-scaled junction rows).
    const double sigma = spectrum_floor - 1.0;

    Eigen::SparseMatrix<Scalar> A = H;
    for (int i = 0; i < n; ++i) A.coeffRef(i, i) -= Scalar(sigma);
    Eigen::SparseLU<Eigen::SparseMatrix<Scalar>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("sparse factorization failed");

    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat X(n, q);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < q; ++j) {
            if constexpr (std::is_same_v<Scalar, double>)
                X(i, j) = gauss(rng);
            else
                X(i, j) = Scalar(gauss(rng), gauss(rng));
        }

    Eigen::VectorXd ritz = Eigen::VectorXd::Zero(q);
    Eigen::VectorXd prev = Eigen::VectorXd::Constant(q, 1e300);
    int stable = 0;
    for (int iter = 0; iter < 400; ++iter) {
        Mat Y = lu.solve(X);
        Eigen::HouseholderQR<Mat> qr(Y);
        Mat Q = qr.householderQ() * Mat::Identity(n, q);
        Mat small = Q.adjoint() * (H * Q);
        small = Scalar(0.5) * (small + Mat(small.adjoint()));
        Eigen::SelfAdjointEigenSolver<Mat> es(small);
        X = Q * es.eigenvectors();
        ritz = es.eigenvalues().real();

        double diff = 0.0;
        for (int i = 0; i < n_levels && i < q; ++i)
            diff = std::max(diff, std::abs(ritz(i) - prev(i)) /
                                      std::max(1.0, std::abs(ritz(i))));
        prev = ritz;
        stable = diff < 1e-12 ? stable + 1 : 0;
        if (stable >= 2) break;
    }
    std::vector<double> out(ritz.data(), ritz.data() + std::min(q, n_levels));
    return out;
}

}  // namespace

Discretization discretize(const MetricGraph& g, double h, const Potential* V) {
    if (g.edges().empty()) throw std::invalid_argument("graph has no edges");
    double min_len = std::numeric_limits<double>::infinity();
    for (const auto& e : g.edges()) min_len = std::min(min_len, e.length);
    if (h > min_len / 4.0)
        throw std::invalid_argument("step too coarse: need h <= min edge length / 4");
    std::map<int, int> counts;
    for (const auto& e : g.edges())
        counts[e.id] = std::max(4, static_cast<int>(std::lround(e.length / h)));
    return build(g, counts, h, V);
}

std::vector<double> lowest_eigenvalues(const Discretization& d, int n_levels) {
    if (n_levels < 1) throw std::invalid_argument("need n_levels >= 1");
    const int n = d.graph.n;
    if (n <= 900 || n <= 2 * (n_levels + 10)) {
        Eigen::VectorXd ev = eigenvalues(assemble(d.graph));
        std::vector<double> out;
        for (int i = 0; i < std::min<int>(n_levels, ev.size()); ++i)
            out.push_back(ev(i));
        return out;
    }
    if (d.real_symmetric)
        return sparse_lowest(assemble_sparse<double>(d.graph), n_levels,
                             d.spectrum_floor);
    return sparse_lowest(assemble_sparse<std::complex<double>>(d.graph),
                         n_levels, d.spectrum_floor);
}

std::vector<OracleLevel> oracle_eigenvalues(const MetricGraph& g, int n_levels,
                                            double h, const Potential* V) {
    if (n_levels < 1 || n_levels > 20)
        throw std::invalid_argument("oracle supports 1..20 levels");
    Discretization coarse = discretize(g, h, V);
    std::map<int, int> fine_counts;
    for (const auto& [eid, m] : coarse.points_per_edge) fine_counts[eid] = 2 * m;
    Discretization fine = build(g, fine_counts, h / 2.0, V);

    std::vector<double> eh = lowest_eigenvalues(coarse, n_levels);
    std::vector<double> eh2 = lowest_eigenvalues(fine, n_levels);

    std::vector<OracleLevel> out;
    for (int i = 0; i < n_levels; ++i) {
        OracleLevel lvl;
        lvl.energy = (4.0 * eh2[i] - eh[i]) / 3.0;
        lvl.error_estimate = std::abs(eh[i] - eh2[i]) / 3.0;
        if (lvl.error_estimate > 0.5 * std::max(1.0, std::abs(lvl.energy)))
            throw std::runtime_error("oracle pair not convergent at requested step");
        out.push_back(lvl);
    }
    return out;
}

}  // namespace qg
