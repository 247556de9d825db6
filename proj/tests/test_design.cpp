#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ordermec/design.hpp"
#include "ordermec/metrics.hpp"
#include "support.hpp"

using namespace ordermec;
using test::make_dag;
using test::random_dag;

TEST_SUITE_BEGIN("design");

TEST_CASE("greedy worked examples") {
    Dag chain = make_dag(3, {{0, 1}, {1, 2}});
    GreedyRun run = greedy_select(chain, 1);
    // Vertices 0 and 1 both orient two edges; the tie breaks to 0.
    CHECK(run.chosen == std::vector<int>{0});
    CHECK(run.unoriented_after == std::vector<int>{0});

    GreedyRun oriented = greedy_select(make_dag(3, {{0, 2}, {1, 2}}), 5);
    CHECK(oriented.chosen.empty());

    GreedyRun single = greedy_select(make_dag(2, {{0, 1}}), 1);
    CHECK(single.chosen == std::vector<int>{0});
    CHECK(single.unoriented_after == std::vector<int>{0});
}

TEST_CASE("greedy picks are non-increasing in unoriented count and stop early") {
    for (std::uint64_t i = 0; i < 60; ++i) {
        Dag g = random_dag(3 + int(i % 6), 83, i);
        GreedyRun run = greedy_to_completion(g);
        int previous = metric_X(g);
        for (std::size_t k = 0; k < run.chosen.size(); ++k) {
            CHECK(run.unoriented_after[k] < previous);  // every pick orients something
            previous = run.unoriented_after[k];
        }
        CHECK(previous == 0);
        // Requesting more picks than needed changes nothing.
        GreedyRun capped = greedy_select(g, int(run.chosen.size()) + 3);
        CHECK(capped.chosen == run.chosen);
    }
}

TEST_CASE("strip_downstream worked examples") {
    // Fully directed collider: the sink peels first, then everything else.
    StripResult collider = strip_downstream(essential_graph(make_dag(3, {{0, 2}, {1, 2}})));
    CHECK(collider.kept.empty());
    CHECK(collider.removed == std::vector<int>{0, 1, 2});
    CHECK(collider.reduced.size() == 0);

    StripResult triangle = strip_downstream(Pdag::of(3, {}, {{0, 1}, {0, 2}, {1, 2}}));
    CHECK(triangle.removed.empty());
    CHECK(triangle.reduced.undirected_count() == 3);

    StripResult isolated = strip_downstream(Pdag::of(2, {}, {}));
    CHECK(isolated.kept.empty());
    CHECK(isolated.removed == std::vector<int>{0, 1});
}

TEST_CASE("stripped vertices have no undirected edges and no live out-edges") {
    for (std::uint64_t i = 0; i < 80; ++i) {
        Dag g = random_dag(3 + int(i % 6), 89, i);
        Pdag ess = essential_graph(g);
        StripResult strip = strip_downstream(ess);
        for (int v : strip.removed) CHECK(ess.neighbors(v).none());
        // Kept vertices with no undirected edge must keep a live out-edge.
        InterventionSet removed(strip.removed);
        for (int v : strip.kept) {
            if (ess.neighbors(v).any()) continue;
            bool live = false;
            ess.children(v).for_each([&](int w) { live = live || !removed.contains(w); });
            CHECK(live);
        }
    }
}

TEST_CASE("greedy is downstream independent; largest-index is not") {
    int checked = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        Dag g = random_dag(3 + int(i % 8), 97, i);
        CHECK(check_downstream_independence(greedy_algorithm, g));
        ++checked;
    }
    CHECK(checked == 200);
    // Counterexample: the largest-index vertex is stripped (isolated), yet the
    // broken policy intervenes on it first.
    Dag counter = make_dag(3, {{0, 1}});
    CHECK_FALSE(check_downstream_independence(test::largest_index_algorithm, counter));
    CHECK(check_downstream_independence(greedy_algorithm, counter));
}

TEST_CASE("metrics_after_algorithm worked examples") {
    Dag chain = make_dag(3, {{0, 1}, {1, 2}});
    AlgorithmMetrics m1 = metrics_after_algorithm(chain, 1);
    CHECK(m1.unoriented == 0);
    CHECK(m1.unique == 1);
    CHECK(m1.log2_mec == doctest::Approx(0.0));
    CHECK(m1.interventions == 1);

    AlgorithmMetrics m0 = metrics_after_algorithm(chain, 0);
    CHECK(m0.unoriented == 2);
    CHECK(m0.unique == 0);
    CHECK(m0.log2_mec == doctest::Approx(std::log2(3.0)));

    AlgorithmMetrics oriented = metrics_after_algorithm(make_dag(3, {{0, 2}, {1, 2}}), 4);
    CHECK(oriented.unoriented == 0);
    CHECK(oriented.unique == 1);
    CHECK(oriented.interventions == 0);
    CHECK_THROWS_AS(metrics_after_algorithm(chain, -1), std::invalid_argument);
}

TEST_CASE("greedy upper-bounds the exact minimum at every r") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        Dag g = random_dag(4 + int(i % 5), 101, i);
        for (int r : {0, 1, 2, 3}) {
            auto exact = metric_Xr_exact(g, r, 1u << 20);
            REQUIRE(exact.has_value());
            AlgorithmMetrics greedy = metrics_after_algorithm(g, r);
            CHECK(greedy.unoriented >= exact->min_unoriented);
        }
    }
}

TEST_SUITE_END();
