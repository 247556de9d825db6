#pragma once

#include <cstdint>
#include <vector>

#include "ordermec/dag.hpp"
#include "ordermec/equivalence.hpp"
#include "ordermec/sampler.hpp"

namespace ordermec::test {

inline Dag make_dag(int n, const std::vector<Edge>& edges) { return Dag::from_edges(n, edges); }

// Random DAG drawn from the order-DAG model with a rho cycling over a small
// palette; handy for property tests.
inline Dag random_dag(int n, std::uint64_t seed, std::uint64_t index) {
    static constexpr double kRhos[] = {0.2, 0.5, 0.8};
    SampleConfig cfg{n, kRhos[index % 3], seed, index};
    return sample_order_dag(cfg);
}

// Deliberately not downstream-independent: intervenes on the globally largest
// unpicked vertex regardless of whether that orients anything.
inline std::vector<int> largest_index_algorithm(const Dag& g) {
    std::vector<int> chosen;
    Pdag state = essential_graph(g);
    for (int v = g.size() - 1; v >= 0 && !state.fully_directed(); --v) {
        chosen.push_back(v);
        state = interventional_essential_graph(g, InterventionSet(chosen));
    }
    return chosen;
}

}  // namespace ordermec::test
