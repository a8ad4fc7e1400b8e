#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "qg/metric_graph.hpp"

namespace qg {

struct Coupling {
    int u = -1, v = -1;
    double J = 1.0;      // > 0
    double theta = 0.0;  // theta(u,v) = -theta(v,u)
};

// Weighted discrete graph with per-hop magnetic phases and an on-site
// potential. H_{u,v} = J e^{i theta(u,v)}, H_{u,u} = V_u.
struct DiscreteGraph {
    int n = 0;
    std::vector<Coupling> couplings;
    std::vector<double> potential;
};

void validate_discrete(const DiscreteGraph& dg);  // throws on violations
Eigen::MatrixXcd assemble(const DiscreteGraph& dg);

void assert_hermitian(const Eigen::MatrixXcd& H, double tol = 1e-12);
Eigen::VectorXd eigenvalues(const Eigen::MatrixXcd& H);
int counting(const Eigen::MatrixXcd& H, double E);
int counting(const Eigen::VectorXd& evals, double E);

// The vertex split A -> (A1, A2), B -> (B1, B2): A1 keeps the chain-side
// coupling and A2 the vertex-side coupling, both scaled by sqrt(2); both
// carry the original on-site potential. Gluing A1 to A2 (lambda -> inf in
// the lambda family) recovers the original operator's counting function.
struct SplitOperator {
    Eigen::MatrixXcd H;
    int A1 = -1, A2 = -1, B1 = -1, B2 = -1;
};

SplitOperator split_endpoints(const Eigen::MatrixXcd& H, int A, int B,
                              std::pair<int, int> edge_neighbors,
                              std::pair<int, int> vertex_neighbors);

// H_lambda = Hhat + lambda (|A1>-|A2>)(<A1|-<A2|) + lambda (|B1>-|B2>)(<B1|-<B2|)
Eigen::MatrixXcd lambda_family(const SplitOperator& sp, double lambda);

// Conjugation by the A2 <-> B2 transposition.
Eigen::MatrixXcd switch_conjugate(const SplitOperator& sp,
                                  const Eigen::MatrixXcd& H_lambda);

// Genuine discrete edge switch: the chain endpoints A and B exchange their
// cluster attachments, each keeping its own coupling value. The difference
// from the input has rank at most 4.
Eigen::MatrixXcd discrete_edge_switch(const Eigen::MatrixXcd& H, int A, int B,
                                      int a_vert, int b_vert);

// -- fixtures ---------------------------------------------------------------

struct ChainInfo {
    int endpoint = -1;        // extremal degree-2 chain site
    int chain_neighbor = -1;  // next site along the chain
    int cluster_neighbor = -1;
};

// Clusters of 1-4 vertices joined by chains of 2-8 degree-2 vertices;
// J ~ U[0.5, 1.5], theta ~ U[-pi, pi], V ~ U[-1, 1].
struct RandomDiscreteGraph {
    DiscreteGraph graph;
    std::vector<ChainInfo> chains;  // one entry per chain endpoint
};

RandomDiscreteGraph random_discrete_graph(std::uint64_t seed);

// Fixture for the split construction: two chains attached to a common
// cluster vertex with identical attachment coupling and equal endpoint
// potentials, so the split operator is symmetric under the stub
// transposition (the setting of the rank-2 conjugation identity).
struct SplitFixture {
    DiscreteGraph graph;
    int A = -1, B = -1;
    int a_next = -1, b_next = -1;
    int vert = -1;  // shared cluster vertex
};

SplitFixture split_fixture(std::uint64_t seed);

}  // namespace qg
