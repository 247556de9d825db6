#pragma once

#include <functional>

#include "ordermec/pdag.hpp"

namespace ordermec::oracle {

// Brute-force reference implementations used only for verification. They work
// straight from the definitions (enumerate every orientation of the skeleton,
// keep the acyclic ones, compare v-structure sets) and deliberately share no
// orientation-propagation code with the production path.

inline constexpr int kMaxSkeletonEdges = 25;

struct DagClass {
    std::vector<Dag> members;   // pairwise distinct, shared skeleton
    std::vector<Edge> skeleton;
};

// All DAGs with the same skeleton and v-structures as g. Throws
// std::invalid_argument when the skeleton exceeds kMaxSkeletonEdges.
DagClass oracle_mec(const Dag& g);

// Members of oracle_mec(g) whose intervened graphs match g's for every
// target: equal skeletons and equal v-structure sets after cutting the
// target's incoming edges.
DagClass oracle_imec(const Dag& g, const InterventionSet& targets);

// Same filter applied to an already-enumerated observational class, for
// callers checking many target sets against one graph.
DagClass filter_imec(const DagClass& base, const Dag& g, const InterventionSet& targets);

// Consensus graph of a class: an edge is directed iff every member orients it
// the same way.
Pdag consensus(const DagClass& cls);

Pdag oracle_essential(const Dag& g);
Pdag oracle_i_essential(const Dag& g, const InterventionSet& targets);

// Visits every DAG on n labeled vertices exactly once (all skeletons, all
// acyclic orientations). Feasible for n <= 5; guarded at n <= 6.
void for_each_dag(int n, const std::function<void(const Dag&)>& visit);

// Visits every equivalence class of DAGs on n labeled vertices exactly once:
// enumerates each skeleton, partitions its acyclic orientations by
// v-structure set. The classes visited for one skeleton partition that
// skeleton's DAGs.
void for_each_skeleton_mec(int n, const std::function<void(const DagClass&)>& visit);

}  // namespace ordermec::oracle
