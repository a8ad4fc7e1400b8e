#include "qg/transform.hpp"

#include <sstream>

namespace qg {

Transformation Transformation::make_switch(EdgeEndpoint p, EdgeEndpoint q) {
    Transformation t;
    t.kind = TransformKind::Switch;
    t.p = p;
    t.q = q;
    std::ostringstream d;
    d << "switch " << p.edge << (p.end == EdgeEnd::Tail ? ".tail" : ".head")
      << " <-> " << q.edge << (q.end == EdgeEnd::Tail ? ".tail" : ".head");
    t.description = d.str();
    return t;
}

Transformation Transformation::make_crossing(int e, double s, int e2, double s2) {
    Transformation t;
    t.kind = TransformKind::Crossing;
    t.e = e;
    t.s = s;
    t.e2 = e2;
    t.s2 = s2;
    std::ostringstream d;
    d << "cross " << e << "@" << s << " with " << e2 << "@" << s2;
    t.description = d.str();
    return t;
}

Transformation Transformation::make_reversal(int e) {
    Transformation t;
    t.kind = TransformKind::Reversal;
    t.e = e;
    t.description = "reverse " + std::to_string(e);
    return t;
}

Transformation Transformation::make_swap(int e, int e2) {
    Transformation t;
    t.kind = TransformKind::Swap;
    t.e = e;
    t.e2 = e2;
    t.description = "swap " + std::to_string(e) + " <-> " + std::to_string(e2);
    return t;
}

Transformation Transformation::make_segment_exchange(int e, double s1, double s2,
                                                     int e2, double t1, double t2) {
    Transformation t;
    t.kind = TransformKind::SegmentExchange;
    t.e = e;
    t.s = s1;
    t.s2 = s2;
    t.e2 = e2;
    t.t = t1;
    t.t2 = t2;
    std::ostringstream d;
    d << "exchange " << e << "[" << s1 << "," << s2 << "] with " << e2 << "["
      << t1 << "," << t2 << "]";
    t.description = d.str();
    return t;
}

Transformation Transformation::make_insert(int e, double s) {
    Transformation t;
    t.kind = TransformKind::Insert;
    t.e = e;
    t.s = s;
    t.description = "insert kirchhoff vertex on " + std::to_string(e);
    return t;
}

Transformation Transformation::make_remove(int v) {
    Transformation t;
    t.kind = TransformKind::Remove;
    t.v = v;
    t.description = "remove degree-2 vertex " + std::to_string(v);
    return t;
}

MetricGraph edge_switch(const MetricGraph& g, EdgeEndpoint p, EdgeEndpoint q) {
    if (p.edge == q.edge)
        throw std::invalid_argument(
            "edge switch requires endpoints on distinct edges (use edge_reversal)");
    int vp = g.endpoint_vertex(p);
    int vq = g.endpoint_vertex(q);
    std::vector<Edge> es = g.edges();
    for (auto& e : es) {
        if (e.id == p.edge) {
            (p.end == EdgeEnd::Tail ? e.tail : e.head) = vq;
        }
        if (e.id == q.edge) {
            (q.end == EdgeEnd::Tail ? e.tail : e.head) = vp;
        }
    }
    return MetricGraph(g.vertices(), std::move(es));
}

namespace {

// Crossing = insert + insert + switch + remove + remove.
// Reports the ids of the two merged result edges: f1 carries
// e's initial segment [0, s_e], f2 carries e2's initial segment [0, s_e2].
MetricGraph crossing_impl(const MetricGraph& g, int e, double s_e, int e2,
                          double s_e2, int* f1_out, int* f2_out) {
    if (e == e2) throw std::invalid_argument("crossing requires distinct edges");
    int c1 = -1, c2 = -1;
    MetricGraph g1 = insert_kirchhoff_vertex(g, e, s_e, &c1);
    int e1b = g1.next_edge_id() - 1;  // segment c1 -> head(e)
    MetricGraph g2 = insert_kirchhoff_vertex(g1, e2, s_e2, &c2);
    int e2b = g2.next_edge_id() - 1;  // segment c2 -> head(e2)
    MetricGraph g3 =
        edge_switch(g2, {e1b, EdgeEnd::Tail}, {e2b, EdgeEnd::Tail});
    MetricGraph g4 = remove_kirchhoff_degree2(g3, c1);
    if (f1_out) *f1_out = g4.next_edge_id() - 1;
    MetricGraph g5 = remove_kirchhoff_degree2(g4, c2);
    if (f2_out) *f2_out = g5.next_edge_id() - 1;
    return g5;
}

}  // namespace

MetricGraph edge_crossing(const MetricGraph& g, int e, double s_e, int e2,
                          double s_e2) {
    return crossing_impl(g, e, s_e, e2, s_e2, nullptr, nullptr);
}

MetricGraph edge_reversal(const MetricGraph& g, int eid) {
    std::vector<Edge> es = g.edges();
    bool found = false;
    for (auto& e : es) {
        if (e.id == eid) {
            std::swap(e.tail, e.head);
            e.alpha = -e.alpha;
            found = true;
        }
    }
    if (!found) throw std::out_of_range("no edge with id " + std::to_string(eid));
    return MetricGraph(g.vertices(), std::move(es));
}

MetricGraph edge_swap(const MetricGraph& g, int e, int e2) {
    if (e == e2) throw std::invalid_argument("swap requires distinct edges");
    std::vector<Edge> es = g.edges();
    Edge* a = nullptr;
    Edge* b = nullptr;
    for (auto& f : es) {
        if (f.id == e) a = &f;
        if (f.id == e2) b = &f;
    }
    if (!a || !b) throw std::out_of_range("swap edge id not found");
    std::swap(a->length, b->length);
    std::swap(a->alpha, b->alpha);
    return MetricGraph(g.vertices(), std::move(es));
}

MetricGraph segment_exchange(const MetricGraph& g, int e, double s1, double s2,
                             int e2, double t1, double t2) {
    if (e == e2)
        throw std::invalid_argument("segment exchange requires distinct edges");
    const double L = g.edge(e).length;
    const double L2 = g.edge(e2).length;
    if (!(0 < s1 && s1 < s2 && s2 < L) || !(0 < t1 && t1 < t2 && t2 < L2))
        throw std::domain_error("malformed exchange intervals");
    int f1 = -1, f2 = -1;
    MetricGraph h = crossing_impl(g, e, s1, e2, t1, &f1, &f2);
    // On f1 the point t2 of e2 sits at s1 + (t2 - t1); on f2 the point s2 of
    // e sits at t1 + (s2 - s1). Crossing back there completes the exchange.
    return edge_crossing(h, f1, s1 + (t2 - t1), f2, t1 + (s2 - s1));
}

MetricGraph apply(const MetricGraph& g, const Transformation& t) {
    switch (t.kind) {
        case TransformKind::Switch:
            return edge_switch(g, t.p, t.q);
        case TransformKind::Crossing:
            return edge_crossing(g, t.e, t.s, t.e2, t.s2);
        case TransformKind::Reversal:
            return edge_reversal(g, t.e);
        case TransformKind::Swap:
            return edge_swap(g, t.e, t.e2);
        case TransformKind::SegmentExchange:
            return segment_exchange(g, t.e, t.s, t.s2, t.e2, t.t, t.t2);
        case TransformKind::Insert:
            return insert_kirchhoff_vertex(g, t.e, t.s);
        case TransformKind::Remove:
            return remove_kirchhoff_degree2(g, t.v);
    }
    throw std::logic_error("unhandled transformation kind");
}

MetricGraph replay(const MetricGraph& g, const std::vector<Transformation>& log) {
    MetricGraph cur = g;
    for (const auto& t : log) cur = apply(cur, t);
    return cur;
}

std::vector<Transformation> decompose(const MetricGraph& g,
                                      const Transformation& t) {
    if (t.kind == TransformKind::Crossing) {
        int c1 = -1, c2 = -1;
        MetricGraph g1 = insert_kirchhoff_vertex(g, t.e, t.s, &c1);
        int e1b = g1.next_edge_id() - 1;
        MetricGraph g2 = insert_kirchhoff_vertex(g1, t.e2, t.s2, &c2);
        int e2b = g2.next_edge_id() - 1;
        return {Transformation::make_insert(t.e, t.s),
                Transformation::make_insert(t.e2, t.s2),
                Transformation::make_switch({e1b, EdgeEnd::Tail},
                                            {e2b, EdgeEnd::Tail}),
                Transformation::make_remove(c1), Transformation::make_remove(c2)};
    }
    if (t.kind == TransformKind::SegmentExchange) {
        int f1 = -1, f2 = -1;
        Transformation first = Transformation::make_crossing(t.e, t.s, t.e2, t.t);
        MetricGraph h = crossing_impl(g, t.e, t.s, t.e2, t.t, &f1, &f2);
        Transformation second = Transformation::make_crossing(
            f1, t.s + (t.t2 - t.t), f2, t.t + (t.s2 - t.s));
        std::vector<Transformation> out = decompose(g, first);
        std::vector<Transformation> tail = decompose(h, second);
        out.insert(out.end(), tail.begin(), tail.end());
        return out;
    }
    return {t};
}

}  // namespace qg
