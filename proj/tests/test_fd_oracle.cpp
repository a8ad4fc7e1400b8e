#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qg/fd_oracle.hpp"
#include "qg/fixtures.hpp"
#include "qg/spectra.hpp"
#include "qg/transform.hpp"

using namespace qg;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
}  // namespace

TEST_CASE("interval: lowest eigenvalue near pi^2") {
    Discretization d = discretize(interval(1.0), 1e-3);
    auto ev = lowest_eigenvalues(d, 3);
    CHECK(std::abs(ev[0] - kPi2) < 1e-4);
    CHECK(std::abs(ev[1] - 4.0 * kPi2) < 2e-3);
}

TEST_CASE("loop: zero mode plus degenerate 4 pi^2 pair") {
    Discretization d = discretize(loop_graph(1.0), 1e-3);
    auto ev = lowest_eigenvalues(d, 3);
    CHECK(std::abs(ev[0]) < 1e-6);
    CHECK(std::abs(ev[1] - 4.0 * kPi2) < 1e-3);
    CHECK(std::abs(ev[2] - 4.0 * kPi2) < 1e-3);
}

TEST_CASE("constant potential shifts the whole spectrum exactly") {
    MetricGraph g = interval(1.0);
    Potential V;
    V[0] = {{1.0, 10.0}};
    Discretization d0 = discretize(g, 2e-3);
    Discretization dV = discretize(g, 2e-3, &V);
    auto e0 = lowest_eigenvalues(d0, 5);
    auto eV = lowest_eigenvalues(dV, 5);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(eV[i] - e0[i] - 10.0) < 1e-9);
}

TEST_CASE("precondition: step must resolve the shortest edge") {
    CHECK_THROWS_AS(discretize(interval(1.0), 0.3), std::invalid_argument);
    CHECK_THROWS_AS(
        discretize(interval(1.0, BoundaryCondition::delta(1.0),
                            BoundaryCondition::dirichlet()),
                   1e-2),
        std::domain_error);  // delta vertices unsupported here
}

TEST_CASE("Richardson oracle: interval E_1 to 1e-6") {
    auto lv = oracle_eigenvalues(interval(1.0), 3, 1e-3);
    CHECK(std::abs(lv[0].energy - kPi2) < 1e-6);
    CHECK(lv[0].error_estimate < 1e-4);
}

TEST_CASE("convergence order is ~2") {
    MetricGraph g = interval(1.0);
    auto eh = lowest_eigenvalues(discretize(g, 4e-3), 1)[0];
    auto eh2 = lowest_eigenvalues(discretize(g, 2e-3), 1)[0];
    auto eh4 = lowest_eigenvalues(discretize(g, 1e-3), 1)[0];
    const double order = std::log2(std::abs(eh - kPi2) / std::abs(eh2 - kPi2));
    const double order2 = std::log2(std::abs(eh2 - kPi2) / std::abs(eh4 - kPi2));
    CHECK(order > 1.7);
    CHECK(order < 2.3);
    CHECK(order2 > 1.7);
    CHECK(order2 < 2.3);
}

TEST_CASE("3-star with Dirichlet tips matches the exact solver") {
    MetricGraph g = star_graph({1.0, 1.0, 1.0});
    auto oracle = oracle_eigenvalues(g, 5, 2e-3);
    auto exact = first_levels(g, 5).expanded();
    for (int i = 0; i < 5; ++i) {
        const double Ei = exact[i] * exact[i];
        CHECK(std::abs(oracle[i].energy - Ei) / Ei < 1e-4);
    }
}

TEST_CASE("magnetic flux enters through per-hop phases") {
    // flux loop: exact k from k L + alpha in 2 pi Z
    const double L = 1.0, alpha = 1.3;
    auto oracle = oracle_eigenvalues(loop_graph(L, alpha), 2, 1e-3);
    const double k1 = alpha;               // n = 0 branch, +alpha
    const double k2 = 2.0 * kPi - alpha;   // n = 1 branch, -alpha
    CHECK(std::abs(oracle[0].energy - k1 * k1) < 1e-5);
    CHECK(std::abs(oracle[1].energy - k2 * k2) < 1e-4);
}

TEST_CASE("edge switch commutes with discretization") {
    // 4-cycle, unit-free lengths chosen so cut points are grid points
    MetricGraph g = cycle_graph({1.0, 1.5, 2.0, 2.5});
    EdgeEndpoint p{0, EdgeEnd::Tail}, q{2, EdgeEnd::Tail};
    MetricGraph gs = edge_switch(g, p, q);

    const double h = 0.125;
    Discretization da = discretize(gs, h);
    Discretization db = discretize(g, h);

    // chain endpoint sites adjacent to the switched tails in db
    const int A = db.edge_base.at(0);
    const int B = db.edge_base.at(2);
    const int va = db.vertex_site.at(g.edge(0).tail);
    const int vb = db.vertex_site.at(g.edge(2).tail);
    Eigen::MatrixXcd Hb = assemble(db.graph);
    Eigen::MatrixXcd Hs = discrete_edge_switch(Hb, A, B, va, vb);

    // spectra must agree exactly (same matrix up to index permutation)
    Eigen::VectorXd ea = eigenvalues(assemble(da.graph));
    Eigen::VectorXd eb = eigenvalues(Hs);
    REQUIRE(ea.size() == eb.size());
    for (int i = 0; i < ea.size(); ++i) CHECK(std::abs(ea(i) - eb(i)) < 1e-10);
}

TEST_CASE("oracle agrees with the exact solver on the tetrahedron") {
    MetricGraph g = tetrahedron();
    auto oracle = oracle_eigenvalues(g, 10, 2e-2);
    Spectrum s = first_levels(g, 11);
    auto exact = s.expanded();  // zero mode listed first
    REQUIRE(s.zero_modes == 1);
    CHECK(std::abs(oracle[0].energy) < 1e-6);  // zero mode: absolute check
    for (int i = 1; i < 10; ++i) {
        const double Ei = exact[i] * exact[i];
        CHECK(std::abs(oracle[i].energy - Ei) / Ei < 1e-3);
    }
}
