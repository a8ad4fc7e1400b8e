#include "qg/shift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qg {

namespace {

constexpr double kEigTol = 1e-9;   // "on an eigenvalue" ambiguity zone
constexpr double kGapGuard = 1e-7; // near-coincident cross-spectrum levels

double mean_spacing(const Spectrum& s) {
    const int n = std::max(1, s.total_levels());
    return s.k_max / n;
}

// Common certified comparison range: one mean spacing below min(k_max).
double certified_k(const Spectrum& a, const Spectrum& b) {
    return std::min(a.k_max, b.k_max) -
           std::max(mean_spacing(a), mean_spacing(b));
}

bool near_any(const std::vector<double>& sorted_ks, double k, double tol) {
    auto it = std::lower_bound(sorted_ks.begin(), sorted_ks.end(), k);
    if (it != sorted_ks.end() && *it - k < tol) return true;
    if (it != sorted_ks.begin() && k - *(it - 1) < tol) return true;
    return false;
}

}  // namespace

int counting_shift(const Spectrum& a, const Spectrum& b, double E) {
    const double cert = std::min(a.k_max * a.k_max, b.k_max * b.k_max);
    if (E >= cert)
        throw std::domain_error("energy beyond certified range of the spectra");
    for (const Spectrum* s : {&a, &b}) {
        if (s->zero_modes > 0 && std::abs(E) < kEigTol)
            throw std::invalid_argument("energy on an eigenvalue");
        for (const auto& lv : s->levels)
            if (std::abs(E - lv.k * lv.k) < kEigTol)
                throw std::invalid_argument("energy on an eigenvalue");
    }
    return a.count_below_energy(E) - b.count_below_energy(E);
}

int interlacing_degree(const Spectrum& a, const Spectrum& b) {
    if (a.total_levels() < 10 || b.total_levels() < 10)
        throw std::invalid_argument("interlacing degree needs >= 10 levels");
    const double kcut = certified_k(a, b);

    // Signed step events; zero modes sit at k = 0 on both sides.
    struct Ev {
        double k;
        int da, db;
    };
    std::vector<Ev> evs;
    for (const auto& lv : a.levels)
        if (lv.k < kcut) evs.push_back({lv.k, lv.multiplicity, 0});
    for (const auto& lv : b.levels)
        if (lv.k < kcut) evs.push_back({lv.k, 0, lv.multiplicity});
    std::sort(evs.begin(), evs.end(),
              [](const Ev& x, const Ev& y) { return x.k < y.k; });

    int na = a.zero_modes, nb = b.zero_modes;
    int r = std::abs(na - nb);
    for (std::size_t i = 0; i < evs.size();) {
        // Coalesce events closer than the gap guard: a transient shift inside
        // such a sliver is numerical coincidence, not interlacing.
        std::size_t j = i;
        while (j < evs.size() && evs[j].k - evs[i].k <= kGapGuard) {
            na += evs[j].da;
            nb += evs[j].db;
            ++j;
        }
        const double next = j < evs.size() ? evs[j].k : kcut;
        if (next - evs[i].k > kGapGuard) r = std::max(r, std::abs(na - nb));
        i = j;
    }
    return r;
}

int ShiftHistogram::max_abs_shift() const {
    int m = 0;
    for (const auto& [dn, c] : counts)
        if (c > 0) m = std::max(m, std::abs(dn));
    return m;
}

ShiftHistogram shift_histogram(const Spectrum& a, const Spectrum& b,
                               int n_samples, std::uint64_t seed) {
    ShiftHistogram h;
    h.n_samples = n_samples;
    h.k_max = certified_k(a, b);
    if (h.k_max <= 0) throw std::invalid_argument("no common certified range");

    std::vector<double> ka = a.expanded(), kb = b.expanded();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick(0.0, h.k_max);
    for (int i = 0; i < n_samples; ++i) {
        double k;
        for (;;) {
            k = pick(rng);
            if (k > kEigTol && !near_any(ka, k, kEigTol) &&
                !near_any(kb, k, kEigTol))
                break;
            ++h.resamples;
        }
        ++h.counts[a.count_below(k) - b.count_below(k)];
    }
    return h;
}

ShiftHistogram shift_histogram(const MetricGraph& gA, const MetricGraph& gB,
                               int n_levels, int n_samples, std::uint64_t seed) {
    return shift_histogram(first_levels(gA, n_levels), first_levels(gB, n_levels),
                           n_samples, seed);
}

int additivity_check(const MetricGraph& g, const MetricGraph& transformed,
                     const std::vector<std::pair<int, double>>& cut_points,
                     int grid_size, std::uint64_t seed) {
    MetricGraph g0 = dirichlet_decouple(g, cut_points);

    // ~300 certified levels per operator suffice for the grid.
    const double k_max = 300.0 * std::numbers::pi / total_length(g);
    Spectrum sa = eigenvalues_up_to(g, k_max);
    Spectrum st = eigenvalues_up_to(transformed, k_max);
    Spectrum s0 = eigenvalues_up_to(g0, k_max);

    std::vector<double> ka = sa.expanded(), kt = st.expanded(), k0 = s0.expanded();
    const double kcut = std::min(certified_k(sa, st), certified_k(sa, s0));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick(0.0, kcut);
    int worst = 0;
    for (int i = 0; i < grid_size; ++i) {
        double k;
        for (;;) {
            k = pick(rng);
            if (k > kEigTol && !near_any(ka, k, kEigTol) &&
                !near_any(kt, k, kEigTol) && !near_any(k0, k, kEigTol))
                break;
        }
        const int direct = sa.count_below(k) - st.count_below(k);
        const int via0 = (sa.count_below(k) - s0.count_below(k)) -
                         (st.count_below(k) - s0.count_below(k));
        worst = std::max(worst, std::abs(direct - via0));
    }
    return worst;
}

std::vector<ConvergenceRow> switch_as_crossing_limit(
    const MetricGraph& g, EdgeEndpoint p, EdgeEndpoint q,
    const std::vector<double>& eps_sequence, int n_levels) {
    if (p.edge == q.edge)
        throw std::invalid_argument("switch endpoints must lie on distinct edges");

    // Orient both edges so the switched ends are tails; reversal leaves the
    // spectrum invariant, and the crossing below exchanges exactly the two
    // tail stubs.
    MetricGraph base = g;
    if (p.end == EdgeEnd::Head) base = edge_reversal(base, p.edge);
    if (q.end == EdgeEnd::Head) base = edge_reversal(base, q.edge);

    const double half = 0.5 * std::min(base.edge(p.edge).length,
                                       base.edge(q.edge).length);
    double prev = std::numeric_limits<double>::infinity();
    for (double e : eps_sequence) {
        if (!(e > 0.0 && e < half))
            throw std::invalid_argument("eps outside (0, min incident length / 2)");
        if (e >= prev)
            throw std::invalid_argument("eps sequence must decrease");
        prev = e;
    }

    MetricGraph switched =
        edge_switch(base, {p.edge, EdgeEnd::Tail}, {q.edge, EdgeEnd::Tail});
    std::vector<double> target = first_levels(switched, n_levels).expanded();
    target.resize(std::min<std::size_t>(target.size(), n_levels));

    std::vector<ConvergenceRow> rows;
    for (double eps : eps_sequence) {
        MetricGraph gc = edge_crossing(base, p.edge, eps, q.edge, eps);
        std::vector<double> got = first_levels(gc, n_levels).expanded();
        ConvergenceRow row;
        row.eps = eps;
        for (std::size_t n = 0; n < target.size() && n < got.size(); ++n) {
            row.level_error.push_back(std::abs(got[n] - target[n]));
            row.max_error = std::max(row.max_error, row.level_error.back());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qg
