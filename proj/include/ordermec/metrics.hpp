#pragma once

#include <optional>

#include "ordermec/design.hpp"
#include "ordermec/sampler.hpp"

namespace ordermec {

struct MetricKnobs {
    std::vector<int> r_values;            // intervention budgets to evaluate
    std::uint64_t cap = kDefaultMecCap;   // per-component extension cap
    int exact_limit = 14;                 // max candidate count for the exact I search
    std::uint64_t subset_budget = 50000;  // max candidate sets per exact X_r search
};

// One sampled graph's measured metrics plus provenance. Interventional
// values carry exact/greedy flags: the exact search minimizes over candidate
// sets, the greedy values are valid upper bounds.
struct MetricRecord {
    int n = 0;
    double rho = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;

    int unoriented = 0;          // undirected edges in the essential graph
    int unique = 0;              // 1 iff the essential graph is a DAG
    int interventions = 0;       // single-node interventions to fully orient
    bool interventions_exact = true;
    int greedy_interventions = 0;
    double log2_mec = 0.0;
    bool mec_capped = false;

    struct PerR {
        int r = 0;
        int min_unoriented = 0;  // X after the best size-r intervention set
        bool exact = true;       // false when the greedy upper bound stands in
        int unique = 0;          // 1 iff min_unoriented == 0
        double log2_mec = 0.0;   // class size at the minimizing set
        bool mec_capped = false;
        int greedy_unoriented = 0;  // after r greedy picks
        int greedy_unique = 0;
        double greedy_log2_mec = 0.0;
        bool greedy_mec_capped = false;
    };
    std::vector<PerR> per_r;
};

// Unoriented edges of the essential graph of g.
int metric_X(const Dag& g);

// Minimum number of single-node interventions that fully orient g. Exact
// (iterative deepening over candidate subsets) when the candidate count is at
// most exact_limit, otherwise the greedy upper bound; the flag says which.
// Candidates are the vertices incident to undirected essential-graph edges —
// interventions elsewhere orient nothing.
std::pair<int, bool> metric_I(const Dag& g, int exact_limit);

struct XrResult {
    int min_unoriented;
    InterventionSet argmin;  // lexicographically smallest minimizer, padded to size r
};

// Exact minimum of the unoriented count over intervention sets of size r.
// Returns nullopt when the candidate-subset count exceeds `budget` (caller
// falls back to greedy).
std::optional<XrResult> metric_Xr_exact(const Dag& g, int r, std::uint64_t budget);

// Class size of the interventional essential graph at `argmin`.
MecSize metric_Lr(const Dag& g, const InterventionSet& argmin, std::uint64_t cap);

// Vertices incident to at least one undirected edge, ascending.
std::vector<int> intervention_candidates(const Pdag& essential);

// Full per-sample record: observational metrics, exact-or-greedy minima per
// r, and the greedy-algorithm curve values.
MetricRecord compute_metric_record(const Dag& g, const SampleConfig& cfg,
                                   const MetricKnobs& knobs);

}  // namespace ordermec
