#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordermec/pdag.hpp"

namespace ordermec {

// How an edge orientation was decided: v-structure seeding, an intervention
// target, or one of Meek's four propagation rules (Meek, UAI 1995).
enum class OrientRule { kVStructure, kIntervention, kR1, kR2, kR3, kR4 };

const char* rule_name(OrientRule rule);

struct ClosureStep {
    OrientRule rule;
    int from;
    int to;
};

// Replayable record of a closure run: applying `steps` to `initial` yields
// `final_state`; every step orients exactly one previously-undirected edge.
struct ClosureTrace {
    Pdag initial{0};
    std::vector<ClosureStep> steps;
    Pdag final_state{0};
};

Pdag replay_trace(const ClosureTrace& trace);
std::string trace_to_json_lines(const ClosureTrace& trace);

// Fixpoint of the four Meek orientation rules. Preserves the skeleton and all
// input orientations. The directed part of `p` must be acyclic. A rule
// conflict (an edge forced both ways) cannot happen for inputs arising from
// essential-graph construction and is reported as std::logic_error.
Pdag meek_closure(const Pdag& p, ClosureTrace* trace = nullptr);

// Test support: processes rule candidates in a seed-dependent order. The
// fixpoint must not depend on the order.
Pdag meek_closure_shuffled(const Pdag& p, std::uint64_t shuffle_seed);

// Essential graph of g: skeleton + v-structure orientations, closed under the
// Meek rules.
Pdag essential_graph(const Dag& g, ClosureTrace* trace = nullptr);

// Interventional essential graph: additionally orients every edge incident to
// an intervention target with its direction in g before closing.
Pdag interventional_essential_graph(const Dag& g, const InterventionSet& targets,
                                    ClosureTrace* trace = nullptr);

inline constexpr std::uint64_t kDefaultMecCap = 10'000'000;

// Equivalence-class size. `value` is exact when !capped; when capped it is a
// lower bound (a component's extension count hit the cap, or the product
// overflowed). log2_value accumulates log2 of the per-component counts and is
// exact whenever !capped.
struct MecSize {
    std::uint64_t value = 1;
    bool capped = false;
    double log2_value = 0.0;
};

// Number of DAGs represented by an (interventional) essential graph: the
// product over undirected components of the number of acyclic, v-structure-
// free orientations of that component. Throws std::invalid_argument if the
// directed part has a cycle.
MecSize mec_size(const Pdag& p, std::uint64_t cap = kDefaultMecCap);

int unoriented_count(const Pdag& p);
bool is_unique(const Pdag& p);

}  // namespace ordermec
