#pragma once

#include <map>
#include <vector>

#include "qg/discrete.hpp"
#include "qg/metric_graph.hpp"

namespace qg {

// Piecewise-constant potential on one edge: value holds on (prev_upto, upto],
// measured from the tail. Pieces must be ordered and cover [0, L].
struct PotentialPiece {
    double upto = 0.0;
    double value = 0.0;
};
using EdgePotential = std::vector<PotentialPiece>;
// Keyed by edge id; absent edges get V = 0.
using Potential = std::map<int, EdgePotential>;

// Finite-difference image of a metric graph: each edge becomes a chain of
// degree-2 sites, each Kirchhoff vertex a junction site, Dirichlet vertices
// are eliminated.
struct Discretization {
    double target_h = 0.0;
    DiscreteGraph graph;
    std::map<int, int> points_per_edge;   // m_e = round(L_e / h), >= 4
    std::map<int, double> step;           // h_e = L_e / m_e
    std::map<int, int> vertex_site;       // metric vertex id -> site, -1 if eliminated
    std::map<int, int> edge_base;         // edge id -> site of first interior point
    bool real_symmetric = true;           // all alpha == 0
    // Lower bound on the spectrum: the kinetic part is a scaled graph
    // Laplacian (positive semidefinite), so lambda_min >= min sampled V.
    double spectrum_floor = 0.0;
};

Discretization discretize(const MetricGraph& g, double h,
                          const Potential* V = nullptr);

// Lowest n_levels eigenvalues, ascending with multiplicity. Dense solve for
// small grids; block inverse iteration with Rayleigh-Ritz otherwise.
std::vector<double> lowest_eigenvalues(const Discretization& d, int n_levels);

struct OracleLevel {
    double energy = 0.0;          // Richardson-extrapolated over h, h/2
    double error_estimate = 0.0;  // |E_h - E_{h/2}| / 3
};

std::vector<OracleLevel> oracle_eigenvalues(const MetricGraph& g, int n_levels,
                                            double h = 5e-3,
                                            const Potential* V = nullptr);

}  // namespace qg
