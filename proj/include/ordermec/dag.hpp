#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "ordermec/bitset.hpp"

namespace ordermec {

// (from, to) for directed edges; (min, max) for unordered pairs.
using Edge = std::pair<int, int>;

// Directed acyclic graph over vertices 0..n-1 together with the total order
// that generated it (ancestors first). Immutable once built; every edge
// i -> j satisfies position(i) < position(j) in the order.
class Dag {
public:
    explicit Dag(int n);               // empty graph, identity order
    Dag(int n, std::vector<int> order);

    // Builds a Dag from a directed edge list; the order is a topological sort
    // of the edges. Throws std::invalid_argument if the edges contain a cycle.
    static Dag from_edges(int n, const std::vector<Edge>& edges);
    static std::optional<Dag> try_from_edges(int n, const std::vector<Edge>& edges);

    int size() const { return n_; }
    bool has_edge(int from, int to) const { return parents_[to].test(from); }
    bool adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }
    const VertexSet& parents(int v) const { return parents_[v]; }
    const VertexSet& children(int v) const { return children_[v]; }
    const std::vector<int>& order() const { return order_; }
    int position(int v) const { return pos_[v]; }

    int edge_count() const { return edge_count_; }
    std::vector<Edge> edges() const;  // sorted (from, to)

    // Inserts from -> to; throws std::invalid_argument if the edge violates
    // the generating order or is a self-loop / duplicate.
    void add_edge(int from, int to);

    bool operator==(const Dag& o) const;

private:
    int n_;
    std::vector<VertexSet> parents_;
    std::vector<VertexSet> children_;
    std::vector<int> order_;  // order_[k] = k-th vertex in ancestor-first order
    std::vector<int> pos_;    // inverse permutation
    int edge_count_ = 0;
};

// Set of single-node intervention targets. Sorted and duplicate-free.
class InterventionSet {
public:
    InterventionSet() = default;
    InterventionSet(std::initializer_list<int> targets);
    explicit InterventionSet(std::vector<int> targets);

    const std::vector<int>& targets() const { return targets_; }
    bool contains(int v) const;
    int size() const { return static_cast<int>(targets_.size()); }
    bool empty() const { return targets_.empty(); }

    InterventionSet with(int v) const;  // copy plus one target

    bool operator==(const InterventionSet& o) const { return targets_ == o.targets_; }

private:
    std::vector<int> targets_;
};

// Unordered edge pairs (a < b), sorted.
std::vector<Edge> skeleton(const Dag& g);

// Uncovered colliders i -> k <- j with i < j and i, j nonadjacent, sorted.
std::vector<std::array<int, 3>> v_structures(const Dag& g);

// Copy of g with all edges into `target` removed (a perfect intervention on
// `target`). Throws std::out_of_range for a bad index.
Dag intervened_dag(const Dag& g, int target);

// Induced subgraph on `vertices` (sorted ascending), relabeled 0..k-1.
Dag induced_subdag(const Dag& g, const std::vector<int>& vertices);

}  // namespace ordermec
