#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qg/metric_graph.hpp"

namespace qg {

// Directed-bond basis: each edge appears in both orientations. Bond 2i runs
// tail->head of the i-th edge, bond 2i+1 runs head->tail; the reversal
// involution is 2i <-> 2i+1.
struct BondBasis {
    std::vector<int> edge_ids;    // edge id by edge index
    std::vector<double> length;   // per bond
    std::vector<double> alpha;    // per bond (sign follows orientation)
    std::vector<int> bond_tail;   // vertex the bond leaves
    std::vector<int> bond_head;   // vertex the bond enters

    int n_bonds() const { return static_cast<int>(length.size()); }
    static int reversal(int b) { return b ^ 1; }
};

// d x d unitary vertex scattering block. Kirchhoff: 2/d - delta. Dirichlet:
// -I. Delta(chi): 2/(d + i chi/k) - delta (k-dependent).
Eigen::MatrixXcd vertex_scattering(int degree, BoundaryCondition bc, double k);

// The bond scattering operator U(k) = D(k) S(k) whose unit eigenvalues mark
// the graph eigenvalues.
class SecularOperator {
public:
    explicit SecularOperator(const MetricGraph& g);

    const BondBasis& bonds() const { return bonds_; }
    bool k_independent_scattering() const { return !has_delta_; }

    Eigen::MatrixXcd scattering(double k) const;
    Eigen::MatrixXcd unitary(double k) const;

    // Eigenvalue arguments of U(k), sorted, in (-pi, pi].
    std::vector<double> eigenphases(double k) const;

    // Continuous lift of arg det U(k) up to an additive constant:
    // sum_b (k L_b) + sum over delta vertices of their analytic block
    // determinant phase. Constant terms drop out of differences.
    double argdet_lift(double k) const;

    // Sum of eigenphases taken in [0, 2pi).
    double phase_sum_mod(double k) const;

    double max_bond_length() const { return max_len_; }
    double bond_length_sum() const { return len_sum_; }

private:
    const MetricGraph* g_;
    BondBasis bonds_;
    bool has_delta_ = false;
    double max_len_ = 0.0;
    double len_sum_ = 0.0;
    // per-vertex scattering footprint: vertex id, degree, bc, incident bond
    // columns (incoming) and rows (outgoing)
    struct VertexBlock {
        int degree;
        BoundaryCondition bc;
        std::vector<int> in_bonds;   // bonds entering the vertex
        std::vector<int> out_bonds;  // bonds leaving the vertex
    };
    std::vector<VertexBlock> blocks_;
};

struct SpectrumLevel {
    double k = 0.0;
    int multiplicity = 1;
};

// Sorted positive spectrum (in k) with a completeness certificate: every
// eigenvalue with k_n < k_max is present. Zero modes (E = 0) are reported
// separately.
struct Spectrum {
    std::vector<SpectrumLevel> levels;
    double k_max = 0.0;
    int zero_modes = 0;

    // number of eigenvalues (with multiplicity, incl. zero modes) with
    // k_n < k
    int count_below(double k) const;
    int count_below_energy(double E) const;
    // flat list of k values with multiplicities expanded, zero modes first
    std::vector<double> expanded() const;
    int total_levels() const;
};

// Zero modes of the Laplacian, determined analytically per edge-connected
// component: one for a Kirchhoff-only component with all cycle fluxes
// congruent to 0 (mod 2pi), none otherwise.
int zero_mode_count(const MetricGraph& g);

class SpectralCounter {
public:
    explicit SpectralCounter(const MetricGraph& g);

    // N(k^2): eigenvalues with k_n < k, zero modes included. Throws
    // std::runtime_error if k is within tol of an eigenvalue (phase within
    // tol of 0), or on an integrality failure of the winding evaluation.
    int count(double k, double tol = 1e-9) const;

    // Winding count of eigenvalues in (k0, k], no zero modes, no
    // on-eigenvalue guard (used internally by the locator).
    int count_raw(double k) const;

    double k0() const { return k0_; }
    int zero_modes() const { return zero_modes_; }
    const SecularOperator& secular() const { return sec_; }

private:
    SecularOperator sec_;
    double k0_;
    double base_;  // argdet_lift(k0) - phase_sum_mod(k0)
    int zero_modes_;
};

// All eigenvalues with 0 < k_n < k_max, located by recursive bisection on
// the exact winding count; per-level accuracy ~1e-11 in phase.
Spectrum eigenvalues_up_to(const MetricGraph& g, double k_max);

// First n_levels positive eigenvalues (k_max chosen automatically).
Spectrum first_levels(const MetricGraph& g, int n_levels);

int count(const MetricGraph& g, double k);

// N(E)/sqrt(E); converges to (sum of edge lengths)/pi.
double weyl_ratio(const MetricGraph& g, double E);

// Inserts Dirichlet vertices at interior points, severing the edges there
// (the decoupled comparison operator H_0).
MetricGraph dirichlet_decouple(const MetricGraph& g,
                               const std::vector<std::pair<int, double>>& points);

}  // namespace qg
