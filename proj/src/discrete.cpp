#include "qg/discrete.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace qg {

void validate_discrete(const DiscreteGraph& dg) {
    if (dg.n <= 0) throw std::invalid_argument("vertex count must be positive");
    if (static_cast<int>(dg.potential.size()) != dg.n)
        throw std::invalid_argument("potential size mismatch");
    std::set<std::pair<int, int>> seen;
    for (const auto& c : dg.couplings) {
        if (c.u < 0 || c.u >= dg.n || c.v < 0 || c.v >= dg.n)
            throw std::invalid_argument("coupling index out of range");
        if (c.u == c.v) throw std::invalid_argument("self-coupling not allowed");
        if (!(c.J > 0)) throw std::invalid_argument("coupling J must be positive");
        auto key = std::minmax(c.u, c.v);
        if (!seen.insert(key).second)
            throw std::invalid_argument("duplicate coupling (u,v)");
    }
}

Eigen::MatrixXcd assemble(const DiscreteGraph& dg) {
    validate_discrete(dg);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dg.n, dg.n);
    for (const auto& c : dg.couplings) {
        H(c.u, c.v) = std::polar(c.J, c.theta);
        H(c.v, c.u) = std::polar(c.J, -c.theta);
    }
    for (int i = 0; i < dg.n; ++i) H(i, i) = dg.potential[i];
    return H;
}

void assert_hermitian(const Eigen::MatrixXcd& H, double tol) {
    double dev = (H - H.adjoint()).cwiseAbs().maxCoeff();
    double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    if (dev > tol * scale)
        throw std::invalid_argument("matrix is not Hermitian (deviation " +
                                    std::to_string(dev) + ")");
}

Eigen::VectorXd eigenvalues(const Eigen::MatrixXcd& H) {
    assert_hermitian(H);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H,
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("Hermitian eigensolve failed");
    return es.eigenvalues();
}

int counting(const Eigen::VectorXd& evals, double E) {
    int n = 0;
    for (int i = 0; i < evals.size(); ++i)
        if (evals[i] < E) ++n;
    return n;
}

int counting(const Eigen::MatrixXcd& H, double E) {
    return counting(eigenvalues(H), E);
}

namespace {

std::vector<int> offdiag_neighbors(const Eigen::MatrixXcd& H, int row) {
    std::vector<int> nb;
    for (int j = 0; j < H.cols(); ++j)
        if (j != row && std::abs(H(row, j)) > 0) nb.push_back(j);
    return nb;
}

}  // namespace

SplitOperator split_endpoints(const Eigen::MatrixXcd& H, int A, int B,
                              std::pair<int, int> edge_neighbors,
                              std::pair<int, int> vertex_neighbors) {
    assert_hermitian(H);
    const int n = static_cast<int>(H.rows());
    auto [a_next, b_next] = edge_neighbors;
    auto [a_vert, b_vert] = vertex_neighbors;
    for (int X : {A, B}) {
        auto nb = offdiag_neighbors(H, X);
        if (nb.size() != 2)
            throw std::invalid_argument("split endpoint must have degree 2");
    }
    auto check_pair = [&](int X, int cn, int vn) {
        auto nb = offdiag_neighbors(H, X);
        std::set<int> got(nb.begin(), nb.end());
        if (got != std::set<int>{cn, vn})
            throw std::invalid_argument("designated neighbors do not match");
    };
    check_pair(A, a_next, a_vert);
    check_pair(B, b_next, b_vert);

    const double r2 = std::numbers::sqrt2;
    SplitOperator sp;
    sp.A1 = A;
    sp.B1 = B;
    sp.A2 = n;
    sp.B2 = n + 1;
    sp.H = Eigen::MatrixXcd::Zero(n + 2, n + 2);
    sp.H.topLeftCorner(n, n) = H;

    auto split_one = [&](int X1, int X2, int cn, int vn) {
        // chain side stays on X1 (scaled), vertex side moves to X2
        sp.H(X1, cn) = r2 * H(X1, cn);
        sp.H(cn, X1) = r2 * H(cn, X1);
        sp.H(X1, vn) = 0.0;
        sp.H(vn, X1) = 0.0;
        sp.H(X2, vn) = r2 * H(X1, vn);
        sp.H(vn, X2) = r2 * H(vn, X1);
        sp.H(X2, X2) = H(X1, X1);
    };
    split_one(sp.A1, sp.A2, a_next, a_vert);
    split_one(sp.B1, sp.B2, b_next, b_vert);
    return sp;
}

Eigen::MatrixXcd lambda_family(const SplitOperator& sp, double lambda) {
    if (lambda < 0) throw std::domain_error("lambda must be nonnegative");
    Eigen::MatrixXcd H = sp.H;
    auto add_penalty = [&](int X1, int X2) {
        H(X1, X1) += lambda;
        H(X2, X2) += lambda;
        H(X1, X2) -= lambda;
        H(X2, X1) -= lambda;
    };
    add_penalty(sp.A1, sp.A2);
    add_penalty(sp.B1, sp.B2);
    return H;
}

Eigen::MatrixXcd switch_conjugate(const SplitOperator& sp,
                                  const Eigen::MatrixXcd& H_lambda) {
    Eigen::MatrixXcd out = H_lambda;
    out.row(sp.A2).swap(out.row(sp.B2));
    out.col(sp.A2).swap(out.col(sp.B2));
    return out;
}

Eigen::MatrixXcd discrete_edge_switch(const Eigen::MatrixXcd& H, int A, int B,
                                      int a_vert, int b_vert) {
    assert_hermitian(H);
    if (A == B) throw std::invalid_argument("switch endpoints must differ");
    Eigen::MatrixXcd out = H;
    std::complex<double> ca = H(A, a_vert);
    std::complex<double> cb = H(B, b_vert);
    out(A, a_vert) = 0.0;
    out(a_vert, A) = 0.0;
    out(B, b_vert) = 0.0;
    out(b_vert, B) = 0.0;
    out(A, b_vert) += ca;
    out(b_vert, A) += std::conj(ca);
    out(B, a_vert) += cb;
    out(a_vert, B) += std::conj(cb);
    return out;
}

RandomDiscreteGraph random_discrete_graph(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> cluster_count(2, 3);
    std::uniform_int_distribution<int> cluster_size(1, 4);
    std::uniform_int_distribution<int> chain_len(2, 8);
    std::uniform_real_distribution<double> Jdist(0.5, 1.5);
    std::uniform_real_distribution<double> thdist(-std::numbers::pi,
                                                  std::numbers::pi);
    std::uniform_real_distribution<double> Vdist(-1.0, 1.0);

    RandomDiscreteGraph out;
    DiscreteGraph& g = out.graph;
    std::vector<std::vector<int>> clusters;
    int nc = cluster_count(rng);
    for (int c = 0; c < nc; ++c) {
        int sz = cluster_size(rng);
        std::vector<int> ids;
        for (int i = 0; i < sz; ++i) ids.push_back(g.n++);
        // random spanning tree inside the cluster
        for (size_t i = 1; i < ids.size(); ++i) {
            std::uniform_int_distribution<size_t> pick(0, i - 1);
            g.couplings.push_back(
                {ids[pick(rng)], ids[i], Jdist(rng), thdist(rng)});
        }
        clusters.push_back(ids);
    }
    int n_chains = nc + 1;  // enough to interconnect and form a cycle or two
    for (int c = 0; c < n_chains; ++c) {
        std::uniform_int_distribution<size_t> pc(0, clusters.size() - 1);
        const auto& ca = clusters[pc(rng)];
        const auto& cb = clusters[pc(rng)];
        std::uniform_int_distribution<size_t> pa(0, ca.size() - 1);
        std::uniform_int_distribution<size_t> pb(0, cb.size() - 1);
        int va = ca[pa(rng)];
        int vb = cb[pb(rng)];
        int len = chain_len(rng);
        std::vector<int> sites;
        for (int i = 0; i < len; ++i) sites.push_back(g.n++);
        g.couplings.push_back({va, sites.front(), Jdist(rng), thdist(rng)});
        for (int i = 0; i + 1 < len; ++i)
            g.couplings.push_back(
                {sites[i], sites[i + 1], Jdist(rng), thdist(rng)});
        g.couplings.push_back({sites.back(), vb, Jdist(rng), thdist(rng)});
        out.chains.push_back({sites.front(),
                              len > 1 ? sites[1] : vb,
                              va});
        out.chains.push_back({sites.back(),
                              len > 1 ? sites[len - 2] : va,
                              vb});
    }
    g.potential.resize(g.n);
    for (auto& v : g.potential) v = Vdist(rng);
    validate_discrete(g);
    return out;
}

SplitFixture split_fixture(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> chain_len(2, 6);
    std::uniform_real_distribution<double> Jdist(0.5, 1.5);
    std::uniform_real_distribution<double> thdist(-std::numbers::pi,
                                                  std::numbers::pi);
    std::uniform_real_distribution<double> Vdist(-1.0, 1.0);

    SplitFixture fx;
    DiscreteGraph& g = fx.graph;
    // small central cluster (triangle) plus one shared attachment vertex
    int w = g.n++;
    int c1 = g.n++;
    int c2 = g.n++;
    g.couplings.push_back({w, c1, Jdist(rng), thdist(rng)});
    g.couplings.push_back({w, c2, Jdist(rng), thdist(rng)});
    g.couplings.push_back({c1, c2, Jdist(rng), thdist(rng)});
    fx.vert = w;

    double J_attach = Jdist(rng);
    auto make_chain = [&](int& endpoint, int& next) {
        int len = chain_len(rng);
        std::vector<int> sites;
        for (int i = 0; i < len; ++i) sites.push_back(g.n++);
        g.couplings.push_back({sites[0], w, J_attach, 0.0});
        for (int i = 0; i + 1 < len; ++i)
            g.couplings.push_back(
                {sites[i], sites[i + 1], Jdist(rng), thdist(rng)});
        // close the far end onto the cluster so every site has degree >= 2
        g.couplings.push_back({sites.back(), c1, Jdist(rng), thdist(rng)});
        endpoint = sites[0];
        next = sites[1];
    };
    make_chain(fx.A, fx.a_next);
    make_chain(fx.B, fx.b_next);

    g.potential.resize(g.n);
    for (auto& v : g.potential) v = Vdist(rng);
    double V_end = Vdist(rng);
    g.potential[fx.A] = V_end;
    g.potential[fx.B] = V_end;
    validate_discrete(g);
    return fx;
}

}  // namespace qg
