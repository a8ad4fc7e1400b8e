#include "qg/ensemble.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "qg/shift.hpp"

namespace qg {

MetricGraph arrange(const MetricGraph& topology,
                    const std::vector<double>& lengths,
                    const std::vector<int>& perm) {
    const auto& es = topology.edges();
    if (lengths.size() != es.size() || perm.size() != es.size())
        throw std::invalid_argument("lengths/perm size must match edge count");
    std::vector<int> seen(perm.size(), 0);
    for (int p : perm) {
        if (p < 0 || p >= static_cast<int>(perm.size()) || seen[p]++)
            throw std::invalid_argument("perm is not a permutation");
    }
    std::vector<Edge> edges = es;
    for (std::size_t i = 0; i < edges.size(); ++i)
        edges[i].length = lengths[perm[i]];
    return MetricGraph(topology.vertices(), std::move(edges));
}

int swap_distance(const std::vector<int>& pi, const std::vector<int>& sigma) {
    if (pi.size() != sigma.size())
        throw std::invalid_argument("permutation size mismatch");
    const int n = static_cast<int>(pi.size());
    // cycles of sigma o pi^{-1}
    std::vector<int> inv(n), comp(n);
    for (int i = 0; i < n; ++i) inv[pi[i]] = i;
    for (int i = 0; i < n; ++i) comp[i] = sigma[inv[i]];
    std::vector<char> seen(n, 0);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (int j = i; !seen[j]; j = comp[j]) seen[j] = 1;
    }
    return n - cycles;
}

WalkResult walk(const MetricGraph& topology, const std::vector<double>& lengths,
                long steps, std::uint64_t seed, int summary_levels) {
    const int n = static_cast<int>(topology.edges().size());
    if (n < 2) throw std::invalid_argument("walk needs at least two edges");

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    const std::vector<int> start = perm;

    WalkResult res;
    const bool keep_traj = steps <= 10000;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);

    auto record = [&](const std::vector<int>& p) {
        ++res.visit_counts[p];
        res.delta_from_start.push_back(swap_distance(start, p));
        if (keep_traj) res.trajectory.push_back(p);
        if (summary_levels > 0 && !res.summaries.count(p)) {
            std::vector<double> ex =
                first_levels(arrange(topology, lengths, p), summary_levels)
                    .expanded();
            ex.resize(summary_levels);
            res.summaries[p] = std::move(ex);
        }
    };

    record(perm);
    for (long s = 0; s < steps; ++s) {
        int i = pick(rng), j = pick(rng);
        while (j == i) j = pick(rng);
        std::swap(perm[i], perm[j]);
        record(perm);
    }
    res.final_perm = perm;
    return res;
}

std::vector<double> unfold_and_spacings(const Spectrum& spec, double L_total) {
    std::vector<double> ks = spec.expanded();
    if (ks.size() < 100)
        throw std::invalid_argument("unfolding needs >= 100 levels");
    std::vector<double> s;
    s.reserve(ks.size() - 1);
    for (std::size_t i = 0; i + 1 < ks.size(); ++i)
        s.push_back(L_total * (ks[i + 1] - ks[i]) / std::numbers::pi);
    return s;
}

std::vector<PairRow> shift_vs_distance(const MetricGraph& topology,
                                       const std::vector<double>& lengths,
                                       int pairs, std::uint64_t seed,
                                       int n_levels) {
    const int n = static_cast<int>(topology.edges().size());
    std::mt19937_64 rng(seed);
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);

    // Cache spectra: pairs often repeat arrangements on small ensembles.
    std::map<std::vector<int>, Spectrum> cache;
    auto spectrum_of = [&](const std::vector<int>& p) -> const Spectrum& {
        auto it = cache.find(p);
        if (it == cache.end())
            it = cache.emplace(p, first_levels(arrange(topology, lengths, p),
                                               n_levels))
                     .first;
        return it->second;
    };

    std::vector<PairRow> rows;
    for (int i = 0; i < pairs; ++i) {
        PairRow row;
        row.pi = id;
        row.sigma = id;
        std::shuffle(row.pi.begin(), row.pi.end(), rng);
        std::shuffle(row.sigma.begin(), row.sigma.end(), rng);
        row.delta = swap_distance(row.pi, row.sigma);
        row.rstar = row.delta == 0
                        ? 0
                        : interlacing_degree(spectrum_of(row.pi),
                                             spectrum_of(row.sigma));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qg
