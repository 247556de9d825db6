#pragma once

#include <functional>

#include "ordermec/equivalence.hpp"

namespace ordermec {

// Record of a greedy intervention run: targets in pick order, the
// interventional essential graph after each pick, and the number of
// undirected edges left after each pick (non-increasing).
struct GreedyRun {
    std::vector<int> chosen;
    std::vector<Pdag> after_each;
    std::vector<int> unoriented_after;
};

// Sequentially picks the vertex whose intervention (evaluated against the
// true DAG) orients the most additional edges given the current
// interventional essential graph; ties break to the smallest index. Stops
// early once fully oriented. `r < 0` runs to full orientation.
GreedyRun greedy_select(const Dag& g, int r);
GreedyRun greedy_to_completion(const Dag& g);

struct StripResult {
    Pdag reduced;               // induced on `kept`, relabeled 0..k-1
    std::vector<int> kept;      // ascending original labels
    std::vector<int> removed;   // ascending original labels
};

// Fixpoint of removing vertices with no undirected and no outgoing directed
// edges (edges to already-removed vertices do not count).
StripResult strip_downstream(const Pdag& p);

// An intervention-selection policy: full pick sequence on a DAG, run until
// the graph is fully oriented.
using InterventionAlgorithm = std::function<std::vector<int>(const Dag&)>;

// True iff the algorithm picks the same sequence on g and on g restricted to
// the vertices that survive strip_downstream(essential_graph(g)), compared
// after mapping the restricted run back to original labels.
bool check_downstream_independence(const InterventionAlgorithm& algorithm, const Dag& g);

std::vector<int> greedy_algorithm(const Dag& g);  // greedy_to_completion(g).chosen

struct AlgorithmMetrics {
    int unoriented;        // undirected edges after r greedy picks
    int unique;            // 1 iff unoriented == 0
    double log2_mec;       // log2 class size of the post-run essential graph
    bool mec_capped;
    int interventions;     // greedy picks needed for full orientation
};

AlgorithmMetrics metrics_after_algorithm(const Dag& g, int r,
                                         std::uint64_t cap = kDefaultMecCap);

}  // namespace ordermec
