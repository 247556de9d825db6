#include "ordermec/graph_io.hpp"

#include <sstream>
#include <stdexcept>

namespace ordermec {

namespace {

nlohmann::json edges_to_json(const std::vector<Edge>& edges) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [a, b] : edges) out.push_back({a, b});
    return out;
}

std::vector<Edge> edges_from_json(const nlohmann::json& j) {
    std::vector<Edge> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("edge must be a two-element array");
        out.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return out;
}

}  // namespace

nlohmann::json to_json(const Pdag& p) {
    return {{"n", p.size()},
            {"directed", edges_to_json(p.directed_edges())},
            {"undirected", edges_to_json(p.undirected_edges())}};
}

nlohmann::json to_json(const Dag& g) {
    return {{"n", g.size()},
            {"directed", edges_to_json(g.edges())},
            {"undirected", nlohmann::json::array()}};
}

Pdag pdag_from_json(const nlohmann::json& j) {
    if (!j.contains("n") || !j.contains("directed") || !j.contains("undirected"))
        throw std::invalid_argument("graph JSON must contain n, directed, undirected");
    return Pdag::of(j.at("n").get<int>(), edges_from_json(j.at("directed")),
                    edges_from_json(j.at("undirected")));
}

Dag dag_from_json(const nlohmann::json& j) {
    if (!j.contains("n") || !j.contains("directed"))
        throw std::invalid_argument("graph JSON must contain n and directed");
    if (j.contains("undirected") && !j.at("undirected").empty())
        throw std::invalid_argument("a DAG may not carry undirected edges");
    return Dag::from_edges(j.at("n").get<int>(), edges_from_json(j.at("directed")));
}

std::string to_edge_list(const Pdag& p) {
    std::ostringstream out;
    for (const auto& [a, b] : p.directed_edges()) out << a << " -> " << b << "\n";
    for (const auto& [a, b] : p.undirected_edges()) out << a << " -- " << b << "\n";
    return out.str();
}

std::string to_edge_list(const Dag& g) {
    std::ostringstream out;
    for (const auto& [a, b] : g.edges()) out << a << " -> " << b << "\n";
    return out.str();
}

Pdag pdag_from_edge_list(const std::string& text, int n) {
    Pdag p(n);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        int a, b;
        std::string arrow;
        if (!(ls >> a >> arrow >> b) || (arrow != "->" && arrow != "--"))
            throw std::invalid_argument("bad edge-list line " + std::to_string(lineno) + ": " + line);
        if (arrow == "->")
            p.add_directed(a, b);
        else
            p.add_undirected(a, b);
    }
    return p;
}

}  // namespace ordermec
