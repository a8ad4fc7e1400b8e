#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qg/metric_graph.hpp"
#include "qg/spectra.hpp"
#include "qg/transform.hpp"

namespace qg {

// N_A(E) - N_B(E), multiplicities included. E must lie inside both certified
// ranges and off both spectra.
int counting_shift(const Spectrum& a, const Spectrum& b, double E);

// Smallest r with E_{n-r} <= Etilde_n <= E_{n+r} over the common certified
// range; equals max over E of |counting_shift|. Comparison is truncated one
// mean spacing below min(k_max) so boundary truncation cannot fake
// violations.
int interlacing_degree(const Spectrum& a, const Spectrum& b);

struct ShiftHistogram {
    std::map<int, long> counts;  // dN -> frequency
    long resamples = 0;
    int n_samples = 0;
    double k_max = 0.0;  // certified sampling range in k

    int max_abs_shift() const;
};

// Samples E with sqrt(E) uniform in (0, certified k_max); energies landing
// within 1e-9 of either spectrum are resampled and counted.
ShiftHistogram shift_histogram(const MetricGraph& gA, const MetricGraph& gB,
                               int n_levels, int n_samples, std::uint64_t seed);
ShiftHistogram shift_histogram(const Spectrum& a, const Spectrum& b,
                               int n_samples, std::uint64_t seed);

// Consistency of the three counting runs entering the decoupling argument:
// max over random energies of
//   | [N(E;g) - N(E;gt)] - ([N(E;g) - N(E;g0)] - [N(E;gt) - N(E;g0)]) |
// with g0 the Dirichlet decoupling of g at cut_points. Exact-zero contract.
int additivity_check(const MetricGraph& g, const MetricGraph& transformed,
                     const std::vector<std::pair<int, double>>& cut_points,
                     int grid_size, std::uint64_t seed);

struct ConvergenceRow {
    double eps = 0.0;
    std::vector<double> level_error;  // |k_n(eps) - k_n(switched)|
    double max_error = 0.0;
};

// Realizes the switch at (p, q) as an eps-crossing (stubs of length eps are
// exchanged) and tabulates per-level convergence to the switched graph.
std::vector<ConvergenceRow> switch_as_crossing_limit(
    const MetricGraph& g, EdgeEndpoint p, EdgeEndpoint q,
    const std::vector<double>& eps_sequence, int n_levels);

}  // namespace qg
