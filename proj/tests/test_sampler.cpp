#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "ordermec/metrics.hpp"
#include "support.hpp"

using namespace ordermec;

TEST_SUITE_BEGIN("sampler");

TEST_CASE("degenerate densities") {
    Dag empty = sample_order_dag({3, 0.0, 42, 0});
    CHECK(empty.edge_count() == 0);
    Dag complete = sample_order_dag({3, 1.0, 42, 0});
    CHECK(complete.edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("determinism in (seed, index, n, rho)") {
    SampleConfig cfg{12, 0.37, 987654321, 17};
    CHECK(sample_order_dag(cfg) == sample_order_dag(cfg));
    SampleConfig other = cfg;
    other.index = 18;
    CHECK_FALSE(sample_order_dag(cfg) == sample_order_dag(other));
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(sample_order_dag({0, 0.5, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(sample_order_dag({3, 1.5, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(sample_order_dag({3, -0.1, 0, 0}), std::invalid_argument);
}

TEST_CASE("edge count matches the binomial mean at n=30, rho=0.5") {
    // 100000 samples of Binomial(435, 0.5): mean 217.5, sd of the sample mean
    // is sqrt(435/4/100000) ~ 0.033, so +-1 is a ~30-sigma band.
    const std::uint64_t samples = 100000;
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < samples; ++i)
        total += sample_order_dag({30, 0.5, 2024, i}).edge_count();
    const double mean = double(total) / double(samples);
    CHECK(mean == doctest::Approx(217.5).epsilon(1.0 / 217.5));
}

TEST_CASE("coupled pair restriction and marginal frequency") {
    std::uint64_t big_edges = 0;
    const std::uint64_t pairs = 10000;
    const int n = 8;
    for (std::uint64_t i = 0; i < pairs; ++i) {
        CoupledPair pair = sample_coupled({n, 0.5, 7, i});
        CHECK(pair.g_big.size() == n + 1);
        // Restriction to the first n vertices is exactly the small graph.
        for (int v = 0; v < n; ++v) CHECK(pair.g_big.parents(v) == pair.g_small.parents(v));
        // All edges at the extra vertex point into it.
        CHECK(pair.g_big.children(n).none());
        big_edges += pair.g_big.edge_count();
    }
    // Binomial(pairs * 36, 0.5): 3-sigma band on the per-pair edge frequency.
    const double per_pair = double(big_edges) / double(pairs);
    const double expect = 36 * 0.5;
    const double sigma = std::sqrt(36 * 0.25 / double(pairs));
    CHECK(std::abs(per_pair - expect) < 3 * sigma);
}

TEST_CASE("degenerate coupled pairs") {
    CoupledPair none = sample_coupled({5, 0.0, 3, 0});
    CHECK(none.g_big.edge_count() == 0);
    CoupledPair full = sample_coupled({5, 1.0, 3, 0});
    CHECK(full.g_big.parents(5).count() == 5);
}

TEST_CASE("chains nest and extend coupled pairs") {
    auto chain = sample_chain({4, 0.6, 99, 5}, 2);
    REQUIRE(chain.size() == 3);
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        for (int v = 0; v < chain[k].size(); ++v)
            CHECK(chain[k + 1].parents(v) == chain[k].parents(v));
        CHECK(chain[k + 1].children(chain[k].size()).none());
    }
    auto singleton = sample_chain({4, 0.6, 99, 5}, 0);
    CHECK(singleton.size() == 1);
    CHECK(singleton[0] == chain[0]);
    CoupledPair pair = sample_coupled({4, 0.6, 99, 5});
    CHECK(pair.g_small == chain[0]);
    CHECK(pair.g_big == chain[1]);
    auto three_empty = sample_chain({3, 0.0, 1, 0}, 2);
    for (const Dag& g : three_empty) CHECK(g.edge_count() == 0);
}

TEST_CASE("permuted sampler matches the identity-order sampler statistically") {
    // Same skeleton law, orientation along a random order vs the identity:
    // the distributions agree, so sampled means of the edge count and of the
    // unoriented-essential-edge count must match within CLT bands.
    const std::uint64_t samples = 20000;
    const int n = 5;
    double edges_a = 0, edges_b = 0, x_a = 0, x_b = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Dag a = sample_order_dag({n, 0.5, 31, i});
        Dag b = sample_permuted_order_dag({n, 0.5, 77, i});
        edges_a += a.edge_count();
        edges_b += b.edge_count();
        x_a += metric_X(a);
        x_b += metric_X(b);
        for (const auto& [from, to] : b.edges())
            CHECK(b.position(from) < b.position(to));
    }
    // Edge count: Binomial(10, .5) per sample, sd ~ 1.58; X_5 is bounded by
    // 10 so a crude sd bound of 3 covers it. 4-sigma two-sample bands.
    const double scale = 1.0 / double(samples);
    CHECK(std::abs(edges_a - edges_b) * scale < 4 * 1.6 * std::sqrt(2.0 * scale));
    CHECK(std::abs(x_a - x_b) * scale < 4 * 3.0 * std::sqrt(2.0 * scale));
}

TEST_SUITE_END();
