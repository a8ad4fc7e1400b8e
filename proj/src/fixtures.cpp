#include "qg/fixtures.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qg {

MetricGraph interval(double L, BoundaryCondition left, BoundaryCondition right) {
    return MetricGraph({{0, left}, {1, right}}, {{0, 0, 1, L, 0.0}});
}

MetricGraph loop_graph(double L, double alpha) {
    return MetricGraph({{0, BoundaryCondition::kirchhoff()}},
                       {{0, 0, 0, L, alpha}});
}

MetricGraph cycle_graph(const std::vector<double>& lengths) {
    const int n = static_cast<int>(lengths.size());
    if (n < 1) throw std::invalid_argument("cycle needs at least one edge");
    if (n == 1) return loop_graph(lengths[0]);
    std::vector<Vertex> vs;
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) {
        vs.push_back({i, BoundaryCondition::kirchhoff()});
        es.push_back({i, i, (i + 1) % n, lengths[i], 0.0});
    }
    return MetricGraph(std::move(vs), std::move(es));
}

MetricGraph star_graph(const std::vector<double>& lengths, BoundaryCondition tip) {
    std::vector<Vertex> vs{{0, BoundaryCondition::kirchhoff()}};
    std::vector<Edge> es;
    for (int i = 0; i < static_cast<int>(lengths.size()); ++i) {
        vs.push_back({i + 1, tip});
        es.push_back({i, 0, i + 1, lengths[i], 0.0});
    }
    return MetricGraph(std::move(vs), std::move(es));
}

MetricGraph tetrahedron() {
    const double raw[6] = {std::sqrt(2.0), std::sqrt(3.0), std::sqrt(5.0),
                           std::sqrt(6.0), std::sqrt(7.0), std::sqrt(10.0)};
    double sum = 0.0;
    for (double r : raw) sum += r;
    const double c = 11.2 / sum;
    std::vector<Vertex> vs;
    for (int i = 0; i < 4; ++i) vs.push_back({i, BoundaryCondition::kirchhoff()});
    std::vector<Edge> es;
    int id = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            es.push_back({id, i, j, c * raw[id], 0.0});
            ++id;
        }
    return MetricGraph(std::move(vs), std::move(es));
}

MetricGraph random_metric_graph(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> len(0.5, 3.0);
    std::uniform_int_distribution<int> n_edges_d(5, 8);
    const int m = n_edges_d(rng);
    std::uniform_int_distribution<int> n_verts_d(3, std::min(6, m));
    const int nv = n_verts_d(rng);

    std::vector<Vertex> vs;
    for (int i = 0; i < nv; ++i) vs.push_back({i, BoundaryCondition::kirchhoff()});
    std::vector<Edge> es;
    // spanning tree first, extras (loops allowed) after
    for (int v = 1; v < nv; ++v) {
        std::uniform_int_distribution<int> anc(0, v - 1);
        es.push_back({v - 1, anc(rng), v, len(rng), 0.0});
    }
    std::uniform_int_distribution<int> any(0, nv - 1);
    for (int e = nv - 1; e < m; ++e)
        es.push_back({e, any(rng), any(rng), len(rng), 0.0});
    return MetricGraph(std::move(vs), std::move(es));
}

Transformation random_transformation(const MetricGraph& g, TransformKind kind,
                                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto& es = g.edges();
    if (es.size() < 2) throw std::invalid_argument("need at least two edges");
    std::uniform_int_distribution<int> pick(0, static_cast<int>(es.size()) - 1);
    int i = pick(rng), j = pick(rng);
    while (j == i) j = pick(rng);
    const Edge& a = es[i];
    const Edge& b = es[j];
    std::uniform_real_distribution<double> frac(0.1, 0.9);
    std::bernoulli_distribution coin(0.5);

    switch (kind) {
        case TransformKind::Switch:
            return Transformation::make_switch(
                {a.id, coin(rng) ? EdgeEnd::Tail : EdgeEnd::Head},
                {b.id, coin(rng) ? EdgeEnd::Tail : EdgeEnd::Head});
        case TransformKind::Crossing:
            return Transformation::make_crossing(a.id, frac(rng) * a.length,
                                                 b.id, frac(rng) * b.length);
        case TransformKind::Reversal:
            return Transformation::make_reversal(a.id);
        case TransformKind::Swap:
            return Transformation::make_swap(a.id, b.id);
        case TransformKind::SegmentExchange: {
            double s1 = frac(rng) * a.length, s2 = frac(rng) * a.length;
            double t1 = frac(rng) * b.length, t2 = frac(rng) * b.length;
            if (s2 < s1) std::swap(s1, s2);
            if (t2 < t1) std::swap(t1, t2);
            if (s2 - s1 < 1e-3) s2 = std::min(0.95 * a.length, s1 + 0.05 * a.length);
            if (t2 - t1 < 1e-3) t2 = std::min(0.95 * b.length, t1 + 0.05 * b.length);
            return Transformation::make_segment_exchange(a.id, s1, s2, b.id, t1, t2);
        }
        case TransformKind::Insert:
            return Transformation::make_insert(a.id, frac(rng) * a.length);
        case TransformKind::Remove:
            throw std::invalid_argument("random Remove is not generated");
    }
    throw std::logic_error("unreachable");
}

}  // namespace qg
