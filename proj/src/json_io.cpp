#include "qg/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qg {

using nlohmann::json;

namespace {

BoundaryCondition bc_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "kirchhoff") return BoundaryCondition::kirchhoff();
        if (s == "dirichlet") return BoundaryCondition::dirichlet();
        throw std::invalid_argument("unknown bc \"" + s + "\"");
    }
    if (j.is_object() && j.contains("delta"))
        return BoundaryCondition::delta(j.at("delta").get<double>());
    throw std::invalid_argument("bc must be \"kirchhoff\", \"dirichlet\" or {\"delta\": chi}");
}

json bc_to_json(const BoundaryCondition& bc) {
    switch (bc.kind) {
        case BcKind::Kirchhoff: return "kirchhoff";
        case BcKind::Dirichlet: return "dirichlet";
        case BcKind::Delta: return json{{"delta", bc.chi}};
    }
    throw std::logic_error("unreachable");
}

EdgeEndpoint endpoint_from_json(const json& j) {
    EdgeEndpoint p;
    p.edge = j.at("edge").get<int>();
    const std::string end = j.at("end").get<std::string>();
    if (end == "tail")
        p.end = EdgeEnd::Tail;
    else if (end == "head")
        p.end = EdgeEnd::Head;
    else
        throw std::invalid_argument("endpoint end must be \"tail\" or \"head\"");
    return p;
}

json endpoint_to_json(const EdgeEndpoint& p) {
    return json{{"edge", p.edge},
                {"end", p.end == EdgeEnd::Tail ? "tail" : "head"}};
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("malformed JSON");
    if (!j.is_object())
        throw std::invalid_argument("expected a JSON object at top level");
    return j;
}

}  // namespace

MetricGraph metric_graph_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.contains("vertices") || !j.contains("edges"))
        throw std::invalid_argument("graph JSON needs \"vertices\" and \"edges\"");
    try {
    std::vector<Vertex> vs;
    for (const auto& jv : j.at("vertices")) {
        Vertex v;
        v.id = jv.at("id").get<int>();
        v.bc = jv.contains("bc") ? bc_from_json(jv.at("bc"))
                                 : BoundaryCondition::kirchhoff();
        vs.push_back(v);
    }
    std::vector<Edge> es;
    for (const auto& je : j.at("edges")) {
        Edge e;
        e.id = je.at("id").get<int>();
        e.tail = je.at("tail").get<int>();
        e.head = je.at("head").get<int>();
        e.length = je.at("length").get<double>();
        e.alpha = je.value("alpha", 0.0);
        es.push_back(e);
    }
    MetricGraph g(std::move(vs), std::move(es));
    ValidationReport rep = validate(g);
    if (!rep.ok) throw std::invalid_argument(rep.first_violation);
    return g;
    } catch (const json::exception& e) {
        throw std::invalid_argument(e.what());
    }
}

std::string metric_graph_to_json(const MetricGraph& g) {
    json jv = json::array();
    for (const auto& v : g.vertices())
        jv.push_back(json{{"id", v.id}, {"bc", bc_to_json(v.bc)}});
    json je = json::array();
    for (const auto& e : g.edges())
        je.push_back(json{{"id", e.id},
                          {"tail", e.tail},
                          {"head", e.head},
                          {"length", e.length},
                          {"alpha", e.alpha}});
    return json{{"vertices", jv}, {"edges", je}}.dump(2);
}

DiscreteGraph discrete_graph_from_json(const std::string& text) {
    json j = parse(text);
    try {
    DiscreteGraph g;
    g.n = j.at("n").get<int>();
    for (const auto& jc : j.at("couplings")) {
        if (!jc.is_array() || jc.size() != 4)
            throw std::invalid_argument("coupling entries are [u,v,J,theta]");
        g.couplings.push_back({jc[0].get<int>(), jc[1].get<int>(),
                               jc[2].get<double>(), jc[3].get<double>()});
    }
    g.potential = j.value("potential", std::vector<double>(g.n, 0.0));
    validate_discrete(g);
    return g;
    } catch (const json::exception& e) {
        throw std::invalid_argument(e.what());
    }
}

std::string discrete_graph_to_json(const DiscreteGraph& g) {
    json jc = json::array();
    for (const auto& c : g.couplings)
        jc.push_back(json::array({c.u, c.v, c.J, c.theta}));
    return json{{"n", g.n}, {"couplings", jc}, {"potential", g.potential}}.dump(2);
}

Transformation transformation_from_json(const std::string& line) {
    json j = parse(line);
    try {
    const std::string kind = j.at("kind").get<std::string>();
    Transformation t;
    if (kind == "switch") {
        t = Transformation::make_switch(endpoint_from_json(j.at("p")),
                                        endpoint_from_json(j.at("q")));
    } else if (kind == "crossing") {
        t = Transformation::make_crossing(j.at("e").get<int>(),
                                          j.at("s").get<double>(),
                                          j.at("e2").get<int>(),
                                          j.at("s2").get<double>());
    } else if (kind == "reversal") {
        t = Transformation::make_reversal(j.at("e").get<int>());
    } else if (kind == "swap") {
        t = Transformation::make_swap(j.at("e").get<int>(), j.at("e2").get<int>());
    } else if (kind == "segment_exchange") {
        t = Transformation::make_segment_exchange(
            j.at("e").get<int>(), j.at("s1").get<double>(),
            j.at("s2").get<double>(), j.at("e2").get<int>(),
            j.at("t1").get<double>(), j.at("t2").get<double>());
    } else if (kind == "insert") {
        t = Transformation::make_insert(j.at("e").get<int>(),
                                        j.at("s").get<double>());
    } else if (kind == "remove") {
        t = Transformation::make_remove(j.at("v").get<int>());
    } else {
        throw std::invalid_argument("unknown transformation kind \"" + kind + "\"");
    }
    if (j.contains("description"))
        t.description = j.at("description").get<std::string>();
    return t;
    } catch (const json::exception& e) {
        throw std::invalid_argument(e.what());
    }
}

std::string transformation_to_json(const Transformation& t) {
    json j;
    switch (t.kind) {
        case TransformKind::Switch:
            j = {{"kind", "switch"},
                 {"p", endpoint_to_json(t.p)},
                 {"q", endpoint_to_json(t.q)}};
            break;
        case TransformKind::Crossing:
            j = {{"kind", "crossing"}, {"e", t.e}, {"s", t.s}, {"e2", t.e2}, {"s2", t.s2}};
            break;
        case TransformKind::Reversal:
            j = {{"kind", "reversal"}, {"e", t.e}};
            break;
        case TransformKind::Swap:
            j = {{"kind", "swap"}, {"e", t.e}, {"e2", t.e2}};
            break;
        case TransformKind::SegmentExchange:
            j = {{"kind", "segment_exchange"}, {"e", t.e},   {"s1", t.s},
                 {"s2", t.s2},                 {"e2", t.e2}, {"t1", t.t},
                 {"t2", t.t2}};
            break;
        case TransformKind::Insert:
            j = {{"kind", "insert"}, {"e", t.e}, {"s", t.s}};
            break;
        case TransformKind::Remove:
            j = {{"kind", "remove"}, {"v", t.v}};
            break;
    }
    if (!t.description.empty()) j["description"] = t.description;
    return j.dump();
}

std::vector<Transformation> transformation_log_from_jsonl(const std::string& text) {
    std::vector<Transformation> log;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        log.push_back(transformation_from_json(line));
    }
    return log;
}

std::string transformation_log_to_jsonl(const std::vector<Transformation>& log) {
    std::string out;
    for (const auto& t : log) {
        out += transformation_to_json(t);
        out += '\n';
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << content;
}

}  // namespace qg
