#pragma once

#include <string>
#include <vector>

#include "qg/discrete.hpp"
#include "qg/metric_graph.hpp"
#include "qg/transform.hpp"

namespace qg {

// Graph file format:
//   {"vertices":[{"id":0,"bc":"kirchhoff"}...],
//    "edges":[{"id":0,"tail":0,"head":1,"length":1.5,"alpha":0.0}...]}
// bc is "kirchhoff", "dirichlet", or {"delta": chi}.
MetricGraph metric_graph_from_json(const std::string& text);
std::string metric_graph_to_json(const MetricGraph& g);

// {"n":..., "couplings":[[u,v,J,theta]...], "potential":[...]}
DiscreteGraph discrete_graph_from_json(const std::string& text);
std::string discrete_graph_to_json(const DiscreteGraph& g);

// Transformation log: JSON lines, one edit per line.
Transformation transformation_from_json(const std::string& line);
std::string transformation_to_json(const Transformation& t);
std::vector<Transformation> transformation_log_from_jsonl(const std::string& text);
std::string transformation_log_to_jsonl(const std::vector<Transformation>& log);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qg
