#pragma once

#include <string>
#include <vector>

#include "qg/metric_graph.hpp"

namespace qg {

enum class TransformKind {
    Switch,
    Crossing,
    Reversal,
    Swap,
    SegmentExchange,
    Insert,
    Remove,
};

// A reified, replayable edit. Parameter slots used per kind:
//   Switch:          p, q
//   Crossing:        e, s  /  e2, s2
//   Reversal:        e
//   Swap:            e, e2
//   SegmentExchange: e, s, s2 (interval on e)  /  e2, t, t2 (interval on e2)
//   Insert:          e, s
//   Remove:          v
struct Transformation {
    TransformKind kind = TransformKind::Reversal;
    EdgeEndpoint p, q;
    int e = -1, e2 = -1, v = -1;
    double s = 0.0, s2 = 0.0, t = 0.0, t2 = 0.0;
    std::string description;

    static Transformation make_switch(EdgeEndpoint p, EdgeEndpoint q);
    static Transformation make_crossing(int e, double s, int e2, double s2);
    static Transformation make_reversal(int e);
    static Transformation make_swap(int e, int e2);
    static Transformation make_segment_exchange(int e, double s1, double s2,
                                                int e2, double t1, double t2);
    static Transformation make_insert(int e, double s);
    static Transformation make_remove(int v);
};

// The five edit operations, plus insert/remove convenience re-exports.
MetricGraph edge_switch(const MetricGraph& g, EdgeEndpoint p, EdgeEndpoint q);
MetricGraph edge_crossing(const MetricGraph& g, int e, double s_e, int e2,
                          double s_e2);
MetricGraph edge_reversal(const MetricGraph& g, int e);
MetricGraph edge_swap(const MetricGraph& g, int e, int e2);
MetricGraph segment_exchange(const MetricGraph& g, int e, double s1, double s2,
                             int e2, double t1, double t2);

MetricGraph apply(const MetricGraph& g, const Transformation& t);
MetricGraph replay(const MetricGraph& g, const std::vector<Transformation>& log);

// Expands composite kinds (Crossing, SegmentExchange) into the primitive
// insert/switch/remove sequence whose replay equals applying them directly.
// Primitive kinds come back as a singleton list. The expansion is computed
// against `g` because inserted vertex/edge ids depend on the graph.
std::vector<Transformation> decompose(const MetricGraph& g,
                                      const Transformation& t);

}  // namespace qg
