#include "ordermec/dag.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ordermec {

namespace {

std::vector<int> identity_order(int n) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    return order;
}

void check_vertex_count(int n) {
    if (n < 1) throw std::invalid_argument("vertex count must be >= 1");
    if (n > kMaxVertices)
        throw std::invalid_argument("vertex count " + std::to_string(n) +
                                    " exceeds the supported maximum " +
                                    std::to_string(kMaxVertices));
}

// Kahn topological sort; empty result means a cycle.
std::vector<int> topological_order(int n, const std::vector<Edge>& edges) {
    std::vector<std::vector<int>> out(n);
    std::vector<int> indeg(n, 0);
    for (const auto& [a, b] : edges) {
        out[a].push_back(b);
        ++indeg[b];
    }
    std::vector<int> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    std::vector<int> order;
    order.reserve(n);
    // Pop the smallest ready vertex so the order is deterministic.
    std::make_heap(ready.begin(), ready.end(), std::greater<>());
    while (!ready.empty()) {
        std::pop_heap(ready.begin(), ready.end(), std::greater<>());
        int v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (int w : out[v]) {
            if (--indeg[w] == 0) {
                ready.push_back(w);
                std::push_heap(ready.begin(), ready.end(), std::greater<>());
            }
        }
    }
    if (static_cast<int>(order.size()) != n) order.clear();
    return order;
}

}  // namespace

Dag::Dag(int n) : Dag(n, identity_order(n)) {}

Dag::Dag(int n, std::vector<int> order) : n_(n), order_(std::move(order)) {
    check_vertex_count(n);
    if (static_cast<int>(order_.size()) != n)
        throw std::invalid_argument("order must be a permutation of 0..n-1");
    pos_.assign(n, -1);
    for (int k = 0; k < n; ++k) {
        int v = order_[k];
        if (v < 0 || v >= n || pos_[v] != -1)
            throw std::invalid_argument("order must be a permutation of 0..n-1");
        pos_[v] = k;
    }
    parents_.assign(n, VertexSet(n));
    children_.assign(n, VertexSet(n));
}

Dag Dag::from_edges(int n, const std::vector<Edge>& edges) {
    auto g = try_from_edges(n, edges);
    if (!g) throw std::invalid_argument("edge list contains a directed cycle");
    return *std::move(g);
}

std::optional<Dag> Dag::try_from_edges(int n, const std::vector<Edge>& edges) {
    check_vertex_count(n);
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (a == b) throw std::invalid_argument("self-loops are not allowed");
    }
    std::vector<int> order = topological_order(n, edges);
    if (order.empty() && n > 0) return std::nullopt;
    Dag g(n, std::move(order));
    for (const auto& [a, b] : edges) g.add_edge(a, b);
    return g;
}

void Dag::add_edge(int from, int to) {
    if (from < 0 || from >= n_ || to < 0 || to >= n_)
        throw std::invalid_argument("edge endpoint out of range");
    if (from == to) throw std::invalid_argument("self-loops are not allowed");
    if (pos_[from] >= pos_[to])
        throw std::invalid_argument("edge violates the generating order");
    if (parents_[to].test(from)) return;
    parents_[to].set(from);
    children_[from].set(to);
    ++edge_count_;
}

std::vector<Edge> Dag::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (int from = 0; from < n_; ++from)
        children_[from].for_each([&](int to) { out.emplace_back(from, to); });
    return out;
}

bool Dag::operator==(const Dag& o) const {
    if (n_ != o.n_ || edge_count_ != o.edge_count_) return false;
    for (int v = 0; v < n_; ++v)
        if (parents_[v] != o.parents_[v]) return false;
    return true;
}

InterventionSet::InterventionSet(std::initializer_list<int> targets)
    : InterventionSet(std::vector<int>(targets)) {}

InterventionSet::InterventionSet(std::vector<int> targets) : targets_(std::move(targets)) {
    for (int v : targets_)
        if (v < 0) throw std::invalid_argument("intervention target must be nonnegative");
    std::sort(targets_.begin(), targets_.end());
    targets_.erase(std::unique(targets_.begin(), targets_.end()), targets_.end());
}

bool InterventionSet::contains(int v) const {
    return std::binary_search(targets_.begin(), targets_.end(), v);
}

InterventionSet InterventionSet::with(int v) const {
    std::vector<int> t = targets_;
    t.push_back(v);
    return InterventionSet(std::move(t));
}

std::vector<Edge> skeleton(const Dag& g) {
    std::vector<Edge> out;
    out.reserve(g.edge_count());
    for (const auto& [a, b] : g.edges()) out.emplace_back(std::min(a, b), std::max(a, b));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::array<int, 3>> v_structures(const Dag& g) {
    std::vector<std::array<int, 3>> out;
    const int n = g.size();
    for (int k = 0; k < n; ++k) {
        const VertexSet& par = g.parents(k);
        for (int i = par.next(0); i != -1; i = par.next(i + 1)) {
            // j > i, j parent of k, j not adjacent to i
            VertexSet rest = par;
            rest.and_not(g.parents(i));
            rest.and_not(g.children(i));
            for (int j = rest.next(i + 1); j != -1; j = rest.next(j + 1))
                out.push_back({i, j, k});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Dag intervened_dag(const Dag& g, int target) {
    if (target < 0 || target >= g.size())
        throw std::out_of_range("intervention target out of range");
    Dag result(g.size(), g.order());
    for (const auto& [a, b] : g.edges())
        if (b != target) result.add_edge(a, b);
    return result;
}

Dag induced_subdag(const Dag& g, const std::vector<int>& vertices) {
    const int k = static_cast<int>(vertices.size());
    std::vector<int> label(g.size(), -1);
    for (int i = 0; i < k; ++i) {
        int v = vertices[i];
        if (v < 0 || v >= g.size()) throw std::out_of_range("vertex out of range");
        if (i > 0 && vertices[i - 1] >= v)
            throw std::invalid_argument("vertices must be sorted ascending");
        label[v] = i;
    }
    // Induced order: original order restricted to the kept vertices.
    std::vector<int> order;
    order.reserve(k);
    for (int v : g.order())
        if (label[v] != -1) order.push_back(label[v]);
    Dag sub(k, std::move(order));
    for (const auto& [a, b] : g.edges())
        if (label[a] != -1 && label[b] != -1) sub.add_edge(label[a], label[b]);
    return sub;
}

}  // namespace ordermec
