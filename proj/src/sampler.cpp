#include "ordermec/sampler.hpp"

#include <random>
#include <stdexcept>

namespace ordermec {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t kPermStream = 0x7065726d75746564ull;  // tag for the permuted sampler

}  // namespace

void SampleConfig::validate() const {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (n > kMaxVertices) throw std::invalid_argument("n exceeds the supported maximum");
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must be in [0, 1]");
}

double edge_uniform(std::uint64_t seed, std::uint64_t index, int i, int j) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ index);
    h = mix64(h ^ ((std::uint64_t(std::uint32_t(i)) << 32) | std::uint32_t(j)));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Dag sample_order_dag(const SampleConfig& cfg) {
    cfg.validate();
    Dag g(cfg.n);
    for (int j = 1; j < cfg.n; ++j)
        for (int i = 0; i < j; ++i)
            if (edge_uniform(cfg.seed, cfg.index, i, j) < cfg.rho) g.add_edge(i, j);
    return g;
}

CoupledPair sample_coupled(const SampleConfig& cfg) {
    cfg.validate();
    if (cfg.n + 1 > kMaxVertices)
        throw std::invalid_argument("n + 1 exceeds the supported maximum");
    SampleConfig big = cfg;
    big.n = cfg.n + 1;
    return {sample_order_dag(cfg), sample_order_dag(big)};
}

std::vector<Dag> sample_chain(const SampleConfig& cfg, int extra) {
    cfg.validate();
    if (extra < 0) throw std::invalid_argument("chain length must be >= 0");
    if (cfg.n + extra > kMaxVertices)
        throw std::invalid_argument("n + extra exceeds the supported maximum");
    std::vector<Dag> chain;
    chain.reserve(extra + 1);
    for (int k = 0; k <= extra; ++k) {
        SampleConfig c = cfg;
        c.n = cfg.n + k;
        chain.push_back(sample_order_dag(c));
    }
    return chain;
}

Dag sample_permuted_order_dag(const SampleConfig& cfg) {
    cfg.validate();
    std::mt19937_64 engine(mix64(mix64(cfg.seed ^ kPermStream) ^ cfg.index));
    std::vector<int> perm(cfg.n);
    for (int i = 0; i < cfg.n; ++i) perm[i] = i;
    for (int i = cfg.n - 1; i > 0; --i) {
        int j = static_cast<int>(engine() % std::uint64_t(i + 1));
        std::swap(perm[i], perm[j]);
    }
    Dag g(cfg.n, perm);
    for (int j = 1; j < cfg.n; ++j)
        for (int i = 0; i < j; ++i)
            if (edge_uniform(cfg.seed, cfg.index, i, j) < cfg.rho) {
                // Orient the undirected pair {i, j} along the permutation.
                if (g.position(i) < g.position(j))
                    g.add_edge(i, j);
                else
                    g.add_edge(j, i);
            }
    return g;
}

}  // namespace ordermec
