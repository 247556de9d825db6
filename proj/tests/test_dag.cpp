#include <doctest.h>

#include <stdexcept>

#include "ordermec/graph_io.hpp"
#include "support.hpp"

using namespace ordermec;
using test::make_dag;
using test::random_dag;

TEST_SUITE_BEGIN("dag");

TEST_CASE("skeleton forgets direction") {
    CHECK(skeleton(make_dag(2, {{0, 1}})) == std::vector<Edge>{{0, 1}});
    CHECK(skeleton(make_dag(3, {{0, 2}, {1, 2}})) == std::vector<Edge>{{0, 2}, {1, 2}});
    CHECK(skeleton(Dag(3)).empty());
}

TEST_CASE("v_structures finds exactly the uncovered colliders") {
    CHECK(v_structures(make_dag(3, {{0, 2}, {1, 2}})) ==
          std::vector<std::array<int, 3>>{{0, 1, 2}});
    CHECK(v_structures(make_dag(3, {{0, 1}, {1, 2}})).empty());
    // Covered collider: 0 and 1 adjacent.
    CHECK(v_structures(make_dag(3, {{0, 2}, {1, 2}, {0, 1}})).empty());
}

TEST_CASE("intervened_dag cuts incoming edges only") {
    Dag chain = make_dag(3, {{0, 1}, {1, 2}});
    CHECK(intervened_dag(chain, 1).edges() == std::vector<Edge>{{1, 2}});
    Dag single = make_dag(2, {{0, 1}});
    CHECK(intervened_dag(single, 0).edges() == std::vector<Edge>{{0, 1}});
    Dag collider = make_dag(3, {{0, 2}, {1, 2}});
    CHECK(intervened_dag(collider, 2).edges().empty());
    CHECK_THROWS_AS(intervened_dag(chain, 3), std::out_of_range);
    CHECK_THROWS_AS(intervened_dag(chain, -1), std::out_of_range);
}

TEST_CASE("construction rejects cycles, self-loops, and bad orders") {
    CHECK_THROWS_AS(Dag::from_edges(3, {{0, 1}, {1, 2}, {2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Dag::from_edges(2, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Dag::from_edges(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Dag(3, {0, 1, 1}), std::invalid_argument);
    CHECK_FALSE(Dag::try_from_edges(2, {{0, 1}, {1, 0}}).has_value());
}

TEST_CASE("structural properties on random instances") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        Dag g = random_dag(2 + int(i % 7), 11, i);
        auto skel = skeleton(g);
        auto vs = v_structures(g);
        // Every collider's legs are skeleton edges.
        for (const auto& [a, b, k] : vs) {
            CHECK(g.has_edge(a, k));
            CHECK(g.has_edge(b, k));
            CHECK_FALSE(g.adjacent(a, b));
        }
        // Edges always respect the generating order.
        for (const auto& [from, to] : g.edges()) CHECK(g.position(from) < g.position(to));
        if (g.size() > 1) {
            int v = int(i % g.size());
            Dag cut = intervened_dag(g, v);
            CHECK(cut.edge_count() == g.edge_count() - g.parents(v).count());
            for (const auto& [from, to] : cut.edges()) CHECK(g.has_edge(from, to));
            // Skeleton loses exactly the parent-side pairs at v.
            auto cut_skel = skeleton(cut);
            CHECK(int(cut_skel.size()) == int(skel.size()) - g.parents(v).count());
        }
    }
}

TEST_CASE("induced subgraph keeps edges among kept vertices") {
    Dag g = make_dag(4, {{0, 1}, {1, 2}, {0, 3}});
    Dag sub = induced_subdag(g, {0, 1, 3});
    CHECK(sub.edges() == std::vector<Edge>{{0, 1}, {0, 2}});
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("graph_io");

TEST_CASE("json golden forms") {
    Dag triangle = make_dag(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(to_json(triangle).dump() ==
          R"({"directed":[[0,1],[0,2],[1,2]],"n":3,"undirected":[]})");
    Pdag p = Pdag::of(3, {{0, 2}}, {{0, 1}});
    CHECK(to_json(p).dump() == R"({"directed":[[0,2]],"n":3,"undirected":[[0,1]]})");
}

TEST_CASE("json round trip") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        Dag g = random_dag(2 + int(i % 6), 5, i);
        CHECK(dag_from_json(to_json(g)) == g);
        Pdag ess = essential_graph(g);
        CHECK(pdag_from_json(to_json(ess)) == ess);
    }
}

TEST_CASE("edge list text form") {
    Pdag p = Pdag::of(3, {{0, 2}}, {{0, 1}});
    CHECK(to_edge_list(p) == "0 -> 2\n0 -- 1\n");
    CHECK(pdag_from_edge_list("0 -> 2\n0 -- 1\n", 3) == p);
    CHECK_THROWS_AS(pdag_from_edge_list("0 => 1\n", 2), std::invalid_argument);
}

TEST_CASE("pdag validation") {
    CHECK_THROWS_AS(Pdag::of(2, {{0, 1}}, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Pdag::of(2, {{0, 1}, {1, 0}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Pdag::of(2, {{0, 2}}, {}), std::invalid_argument);
}

TEST_SUITE_END();
