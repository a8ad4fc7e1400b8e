#pragma once

#include <cstdint>
#include <vector>

#include "qg/metric_graph.hpp"
#include "qg/transform.hpp"

namespace qg {

// Interval [0, L] with chosen boundary conditions (Dirichlet ends: k_n = n pi / L).
MetricGraph interval(double L,
                     BoundaryCondition left = BoundaryCondition::dirichlet(),
                     BoundaryCondition right = BoundaryCondition::dirichlet());

// Single loop of circumference L with magnetic phase alpha:
// k L + alpha in 2 pi Z (alpha = 0: k_n = 2 pi n / L, mult 2).
MetricGraph loop_graph(double L, double alpha = 0.0);

// Cycle on n = lengths.size() Kirchhoff vertices.
MetricGraph cycle_graph(const std::vector<double>& lengths);

// Star: one Kirchhoff center, one edge per length, tips with the given bc.
MetricGraph star_graph(const std::vector<double>& lengths,
                       BoundaryCondition tip = BoundaryCondition::dirichlet());

// Complete graph K4 with rationally independent lengths
// {sqrt 2, 3, 5, 6, 7, 10} normalized to total 11.2 - the histogram fixture.
MetricGraph tetrahedron();

// Connected Kirchhoff graph with 5-8 edges, lengths i.i.d. uniform [0.5, 3].
MetricGraph random_metric_graph(std::uint64_t seed);

// Random valid parameters on g for the given kind (cut positions in the
// interior, distinct edges where required).
Transformation random_transformation(const MetricGraph& g, TransformKind kind,
                                     std::uint64_t seed);

}  // namespace qg
