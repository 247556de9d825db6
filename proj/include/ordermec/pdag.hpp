#pragma once

#include <vector>

#include "ordermec/dag.hpp"

namespace ordermec {

// Partially directed graph over a fixed skeleton: a directed edge set and an
// undirected edge set, disjoint as vertex pairs. Represents essential graphs
// and intermediate closure states. The skeleton never changes after
// construction; orientation converts undirected edges to directed ones.
class Pdag {
public:
    explicit Pdag(int n);

    static Pdag undirected_skeleton(const Dag& g);
    static Pdag fully_directed(const Dag& g);
    // Validates ranges, disjointness, and that no pair appears both ways.
    static Pdag of(int n, const std::vector<Edge>& directed,
                   const std::vector<Edge>& undirected);

    int size() const { return n_; }
    bool has_directed(int from, int to) const { return children_[from].test(to); }
    bool has_undirected(int a, int b) const { return neighbors_[a].test(b); }
    bool adjacent(int a, int b) const { return adj_[a].test(b); }

    const VertexSet& parents(int v) const { return parents_[v]; }
    const VertexSet& children(int v) const { return children_[v]; }
    const VertexSet& neighbors(int v) const { return neighbors_[v]; }  // undirected
    const VertexSet& adjacency(int v) const { return adj_[v]; }

    int directed_count() const { return n_directed_; }
    int undirected_count() const { return n_undirected_; }
    bool fully_directed() const { return n_undirected_ == 0; }

    std::vector<Edge> directed_edges() const;    // sorted (from, to)
    std::vector<Edge> undirected_edges() const;  // sorted (min, max)
    std::vector<Edge> skeleton_edges() const;    // sorted (min, max)

    void add_directed(int from, int to);
    void add_undirected(int a, int b);
    // Converts the undirected edge {from, to} into from -> to.
    void orient(int from, int to);

    bool operator==(const Pdag& o) const;
    bool operator!=(const Pdag& o) const { return !(*this == o); }

private:
    void check_pair(int a, int b) const;

    int n_;
    std::vector<VertexSet> parents_;
    std::vector<VertexSet> children_;
    std::vector<VertexSet> neighbors_;
    std::vector<VertexSet> adj_;
    int n_directed_ = 0;
    int n_undirected_ = 0;
};

bool has_directed_cycle(const Pdag& p);

// Induced sub-Pdag on `vertices` (sorted ascending), relabeled 0..k-1.
Pdag induced_pdag(const Pdag& p, const std::vector<int>& vertices);

}  // namespace ordermec
