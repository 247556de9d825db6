#pragma once

#include <cstdint>
#include <vector>

#include "ordermec/dag.hpp"

namespace ordermec {

struct SampleConfig {
    int n = 1;
    double rho = 0.5;        // edge probability
    std::uint64_t seed = 0;  // master seed
    std::uint64_t index = 0; // sample index within a run
    void validate() const;   // throws std::invalid_argument
};

// g_big restricted to the first n vertices equals g_small; all edges between
// them and the extra vertex point into it.
struct CoupledPair {
    Dag g_small;
    Dag g_big;
};

// Deterministic U[0,1) draw for vertex pair (i, j) of sample `index`. A pure
// function of its arguments, so coupled graphs of different sizes share the
// same per-pair randomness and parallel runs are bit-identical to serial ones.
double edge_uniform(std::uint64_t seed, std::uint64_t index, int i, int j);

// Random order DAG: each pair i < j carries the edge i -> j independently
// with probability rho; the generating order is the identity. Fixing the
// permutation and filling the upper triangle is distributionally equivalent
// to orienting an Erdos-Renyi skeleton along a uniformly random order.
Dag sample_order_dag(const SampleConfig& cfg);

// Coupled (n, n+1) pair built from the shared per-pair draws.
CoupledPair sample_coupled(const SampleConfig& cfg);

// Nested graphs on n, n+1, ..., n+extra vertices; consecutive entries form
// coupled pairs.
std::vector<Dag> sample_chain(const SampleConfig& cfg, int extra);

// Statistical cross-check variant: samples an undirected skeleton and an
// explicit uniform permutation, then orients along it. Used in tests to
// confirm the identity-order sampler has the same distribution.
Dag sample_permuted_order_dag(const SampleConfig& cfg);

}  // namespace ordermec
