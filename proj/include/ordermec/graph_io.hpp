#pragma once

#include <string>

#include <json.hpp>

#include "ordermec/pdag.hpp"

namespace ordermec {

// Fixed JSON schema shared by golden tests and the CLI:
//   {"n": <int>, "directed": [[i, j], ...], "undirected": [[i, j], ...]}
// Edge lists are sorted; a Dag serializes with an empty undirected list.
nlohmann::json to_json(const Pdag& p);
nlohmann::json to_json(const Dag& g);
Pdag pdag_from_json(const nlohmann::json& j);
Dag dag_from_json(const nlohmann::json& j);

// Newline-delimited text form: one "i -> j" line per directed edge, one
// "i -- j" line per undirected edge, directed block first, both sorted.
std::string to_edge_list(const Pdag& p);
std::string to_edge_list(const Dag& g);
Pdag pdag_from_edge_list(const std::string& text, int n);

}  // namespace ordermec
