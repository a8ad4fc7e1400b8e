#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qg {

// Vertex boundary conditions. Delta(0) is identified with Kirchhoff.
enum class BcKind { Kirchhoff, Dirichlet, Delta };

struct BoundaryCondition {
    BcKind kind = BcKind::Kirchhoff;
    double chi = 0.0;  // delta coupling strength, only meaningful for Delta

    static BoundaryCondition kirchhoff() { return {BcKind::Kirchhoff, 0.0}; }
    static BoundaryCondition dirichlet() { return {BcKind::Dirichlet, 0.0}; }
    static BoundaryCondition delta(double chi) {
        if (chi == 0.0) return kirchhoff();
        return {BcKind::Delta, chi};
    }
    bool operator==(const BoundaryCondition& o) const {
        return kind == o.kind && chi == o.chi;
    }
};

struct Vertex {
    int id = -1;
    BoundaryCondition bc;
};

// A metrized, oriented edge. `alpha` is the line integral of the magnetic
// potential along the edge in the tail->head direction; it flips sign under
// edge reversal.
struct Edge {
    int id = -1;
    int tail = -1;
    int head = -1;
    double length = 0.0;
    double alpha = 0.0;
};

enum class EdgeEnd { Tail, Head };

struct EdgeEndpoint {
    int edge = -1;
    EdgeEnd end = EdgeEnd::Tail;
};

struct ValidationReport {
    bool ok = true;
    std::string first_violation;  // empty when ok
};

// Compact metric graph. Loops and multi-edges are allowed; the graph need
// not be connected. Values are immutable by convention: every operation
// returns a new graph.
class MetricGraph {
public:
    MetricGraph() = default;
    MetricGraph(std::vector<Vertex> vertices, std::vector<Edge> edges);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }

    const Vertex& vertex(int id) const;
    const Edge& edge(int id) const;
    bool has_vertex(int id) const;
    bool has_edge(int id) const;

    int next_vertex_id() const;
    int next_edge_id() const;

    // Number of edge ends incident to v (a loop counts twice).
    int degree(int v) const;
    // Vertex id at a given endpoint.
    int endpoint_vertex(const EdgeEndpoint& p) const;

    // Connected components of the subgraph induced by edges; isolated
    // vertices carry no L^2 space and are ignored. Returns one vertex-id
    // set per component.
    std::vector<std::vector<int>> edge_components() const;

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
};

ValidationReport validate(const MetricGraph& g);
double total_length(const MetricGraph& g);

// Splits edge e at arc position s from its tail, inserting a new Kirchhoff
// vertex of degree 2. Spectrum-preserving. Throws std::domain_error if s is
// outside (0, L_e).
MetricGraph insert_kirchhoff_vertex(const MetricGraph& g, int e, double s,
                                    int* new_vertex_id = nullptr);

// Same surgery with a chosen boundary condition at the inserted vertex
// (Dirichlet insertion severs the edge there).
MetricGraph insert_vertex_at(const MetricGraph& g, int e, double s,
                             BoundaryCondition bc, int* new_vertex_id = nullptr);

// Inverse of insertion: merges the two edges meeting at a degree-2
// Kirchhoff vertex into one (summed length and alpha, oriented tail-to-head
// through v). Throws std::invalid_argument on a wrong-degree or
// non-Kirchhoff vertex, or when v is incident twice to the same edge.
MetricGraph remove_kirchhoff_degree2(const MetricGraph& g, int v);

// Canonical serialization used for "equal up to ids" comparisons: vertices
// renumbered by sorted id, edges reduced to an orientation-normalized sorted
// multiset. Lengths/alphas are rounded to `digits` decimals first.
std::string canonical_form(const MetricGraph& g, int digits = 9);

}  // namespace qg
