#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qg/metric_graph.hpp"
#include "qg/spectra.hpp"

namespace qg {

// One point of the length-arrangement ensemble: edge i of the topology gets
// lengths[perm[i]].
struct LengthArrangement {
    MetricGraph topology;
    std::vector<double> lengths;
    std::vector<int> perm;
};

MetricGraph arrange(const MetricGraph& topology,
                    const std::vector<double>& lengths,
                    const std::vector<int>& perm);

// Minimal number of transpositions between arrangements:
// n - #cycles(sigma o pi^{-1}). A metric on the permutation group.
int swap_distance(const std::vector<int>& pi, const std::vector<int>& sigma);

struct WalkResult {
    std::vector<int> final_perm;
    std::vector<int> delta_from_start;           // per step, incl. step 0
    std::vector<std::vector<int>> trajectory;    // kept only for short walks
    std::map<std::vector<int>, long> visit_counts;
    // Spectrum summaries keyed by permutation (computed when summary_levels
    // > 0; cached, the walk revisits states).
    std::map<std::vector<int>, std::vector<double>> summaries;
};

// Uniform random walk on arrangements: each step applies one transposition
// chosen uniformly among the n(n-1)/2 swaps.
WalkResult walk(const MetricGraph& topology, const std::vector<double>& lengths,
                long steps, std::uint64_t seed, int summary_levels = 0);

// Weyl-unfolded nearest-neighbour spacings: x_n = L_total k_n / pi.
std::vector<double> unfold_and_spacings(const Spectrum& spec, double L_total);

struct PairRow {
    std::vector<int> pi, sigma;
    int delta = 0;
    int rstar = 0;
};

// Random arrangement pairs with their swap distance and interlacing degree;
// contract: rstar <= 2 * delta.
std::vector<PairRow> shift_vs_distance(const MetricGraph& topology,
                                       const std::vector<double>& lengths,
                                       int pairs, std::uint64_t seed,
                                       int n_levels);

}  // namespace qg
