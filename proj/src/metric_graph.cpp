#include "qg/metric_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace qg {

MetricGraph::MetricGraph(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {}

const Vertex& MetricGraph::vertex(int id) const {
    for (const auto& v : vertices_)
        if (v.id == id) return v;
    throw std::out_of_range("no vertex with id " + std::to_string(id));
}

const Edge& MetricGraph::edge(int id) const {
    for (const auto& e : edges_)
        if (e.id == id) return e;
    throw std::out_of_range("no edge with id " + std::to_string(id));
}

bool MetricGraph::has_vertex(int id) const {
    return std::any_of(vertices_.begin(), vertices_.end(),
                       [&](const Vertex& v) { return v.id == id; });
}

bool MetricGraph::has_edge(int id) const {
    return std::any_of(edges_.begin(), edges_.end(),
                       [&](const Edge& e) { return e.id == id; });
}

int MetricGraph::next_vertex_id() const {
    int m = -1;
    for (const auto& v : vertices_) m = std::max(m, v.id);
    return m + 1;
}

int MetricGraph::next_edge_id() const {
    int m = -1;
    for (const auto& e : edges_) m = std::max(m, e.id);
    return m + 1;
}

int MetricGraph::degree(int v) const {
    int d = 0;
    for (const auto& e : edges_) {
        if (e.tail == v) ++d;
        if (e.head == v) ++d;
    }
    return d;
}

int MetricGraph::endpoint_vertex(const EdgeEndpoint& p) const {
    const Edge& e = edge(p.edge);
    return p.end == EdgeEnd::Tail ? e.tail : e.head;
}

std::vector<std::vector<int>> MetricGraph::edge_components() const {
    std::map<int, int> comp;  // vertex id -> component index
    int n_comp = 0;
    for (const auto& e : edges_) {
        auto it_t = comp.find(e.tail);
        auto it_h = comp.find(e.head);
        if (it_t == comp.end() && it_h == comp.end()) {
            comp[e.tail] = n_comp;
            comp[e.head] = n_comp;
            ++n_comp;
        } else if (it_t == comp.end()) {
            comp[e.tail] = it_h->second;
        } else if (it_h == comp.end()) {
            comp[e.head] = it_t->second;
        } else if (it_t->second != it_h->second) {
            int a = it_t->second, b = it_h->second;
            for (auto& [v, c] : comp)
                if (c == b) c = a;
        }
    }
    std::map<int, std::vector<int>> groups;
    for (auto& [v, c] : comp) groups[c].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [c, vs] : groups) out.push_back(vs);
    return out;
}

ValidationReport validate(const MetricGraph& g) {
    std::set<int> vids, eids;
    for (const auto& v : g.vertices()) {
        if (!vids.insert(v.id).second)
            return {false, "duplicate vertex id " + std::to_string(v.id)};
    }
    double total = 0.0;
    for (const auto& e : g.edges()) {
        if (!eids.insert(e.id).second)
            return {false, "duplicate edge id " + std::to_string(e.id)};
        if (!vids.count(e.tail) || !vids.count(e.head))
            return {false, "dangling incidence on edge " + std::to_string(e.id)};
        if (!(e.length > 0.0) || !std::isfinite(e.length))
            return {false, "nonpositive length on edge " + std::to_string(e.id)};
        if (!std::isfinite(e.alpha))
            return {false, "non-finite alpha on edge " + std::to_string(e.id)};
        total += e.length;
    }
    if (!(total > 0.0)) return {false, "total length is zero"};
    return {true, ""};
}

double total_length(const MetricGraph& g) {
    double total = 0.0;
    for (const auto& e : g.edges()) total += e.length;
    return total;
}

MetricGraph insert_vertex_at(const MetricGraph& g, int eid, double s,
                             BoundaryCondition bc, int* new_vertex_id) {
    const Edge& e = g.edge(eid);
    if (!(s > 0.0 && s < e.length))
        throw std::domain_error("cut position outside (0, L_e)");
    int vnew = g.next_vertex_id();
    int e1 = g.next_edge_id();
    int e2 = e1 + 1;

    std::vector<Vertex> vs = g.vertices();
    vs.push_back({vnew, bc});
    std::vector<Edge> es;
    es.reserve(g.edges().size() + 1);
    for (const auto& f : g.edges())
        if (f.id != eid) es.push_back(f);
    double frac = s / e.length;
    es.push_back({e1, e.tail, vnew, s, e.alpha * frac});
    es.push_back({e2, vnew, e.head, e.length - s, e.alpha * (1.0 - frac)});
    if (new_vertex_id) *new_vertex_id = vnew;
    return MetricGraph(std::move(vs), std::move(es));
}

MetricGraph insert_kirchhoff_vertex(const MetricGraph& g, int e, double s,
                                    int* new_vertex_id) {
    return insert_vertex_at(g, e, s, BoundaryCondition::kirchhoff(), new_vertex_id);
}

MetricGraph remove_kirchhoff_degree2(const MetricGraph& g, int vid) {
    const Vertex& v = g.vertex(vid);
    if (v.bc.kind != BcKind::Kirchhoff)
        throw std::invalid_argument("vertex bc is not Kirchhoff");
    std::vector<EdgeEndpoint> incident;
    for (const auto& e : g.edges()) {
        if (e.tail == vid) incident.push_back({e.id, EdgeEnd::Tail});
        if (e.head == vid) incident.push_back({e.id, EdgeEnd::Head});
    }
    if (incident.size() != 2)
        throw std::invalid_argument("vertex degree is not 2");
    if (incident[0].edge == incident[1].edge)
        throw std::invalid_argument("cannot merge a loop at the removed vertex");

    // Orient both edges through v: a --ea--> v --eb--> b. The leg whose head
    // is v is taken as inbound, so a forward chain merges forward (arc
    // positions on the merged edge then compose additively). An edge
    // traversed against its orientation has its alpha negated.
    if (incident[0].end == EdgeEnd::Tail && incident[1].end == EdgeEnd::Head)
        std::swap(incident[0], incident[1]);
    Edge ea = g.edge(incident[0].edge);
    Edge eb = g.edge(incident[1].edge);
    auto oriented = [&](const Edge& e, bool into_v) {
        Edge r = e;
        bool points_in = (e.head == vid);
        if (points_in != into_v) {
            std::swap(r.tail, r.head);
            r.alpha = -r.alpha;
        }
        return r;
    };
    Edge in = oriented(ea, true);
    Edge out = oriented(eb, true);
    // Keep `in` as the inbound leg; re-orient the other as outbound.
    out = oriented(eb, false);

    Edge merged;
    merged.id = g.next_edge_id();
    merged.tail = in.tail;
    merged.head = out.head;
    merged.length = in.length + out.length;
    merged.alpha = in.alpha + out.alpha;

    std::vector<Vertex> vs;
    for (const auto& w : g.vertices())
        if (w.id != vid) vs.push_back(w);
    std::vector<Edge> es;
    for (const auto& e : g.edges())
        if (e.id != ea.id && e.id != eb.id) es.push_back(e);
    es.push_back(merged);
    return MetricGraph(std::move(vs), std::move(es));
}

std::string canonical_form(const MetricGraph& g, int digits) {
    const double scale = std::pow(10.0, digits);
    auto rnd = [&](double x) { return std::round(x * scale) / scale; };

    std::vector<int> vids;
    for (const auto& v : g.vertices()) vids.push_back(v.id);
    std::sort(vids.begin(), vids.end());
    std::map<int, int> relabel;
    for (size_t i = 0; i < vids.size(); ++i) relabel[vids[i]] = static_cast<int>(i);

    std::ostringstream os;
    os << "V[";
    for (int id : vids) {
        const auto& bc = g.vertex(id).bc;
        os << relabel[id] << ":"
           << (bc.kind == BcKind::Kirchhoff ? "K"
               : bc.kind == BcKind::Dirichlet ? "D"
                                              : "d" + std::to_string(rnd(bc.chi)))
           << ";";
    }
    os << "]E[";
    std::vector<std::string> reps;
    for (const auto& e : g.edges()) {
        int t = relabel[e.tail], h = relabel[e.head];
        double a = rnd(e.alpha);
        if (t > h || (t == h && a < 0)) {
            std::swap(t, h);
            a = -a;
        }
        std::ostringstream r;
        r << t << "-" << h << ":" << rnd(e.length) << ":" << (a == 0 ? 0.0 : a);
        reps.push_back(r.str());
    }
    std::sort(reps.begin(), reps.end());
    for (const auto& r : reps) os << r << ";";
    os << "]";
    return os.str();
}

}  // namespace qg
