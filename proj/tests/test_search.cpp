#include <doctest.h>

#include <algorithm>

#include "bnboot/core.hpp"
#include "bnboot/pdag.hpp"
#include "bnboot/search.hpp"
#include "oracles.hpp"

using namespace bnboot;
using namespace bnboot::testing;

namespace {

Dataset correlated_pairs(int n) {
    Dataset ds;
    ds.variables = binary_domain(2);
    for (int i = 0; i < n; ++i) ds.rows.push_back({i % 2, i % 2});
    return ds;
}

double exhaustive_best_score(const Dataset& ds, double ess) {
    ScoreCache cache;
    double best = -1e300;
    for (const auto& dag : enumerate_dags(ds.variables))
        best = std::max(best, network_score(dag, ds, ess, cache));
    return best;
}

}  // namespace

TEST_CASE("legal_moves") {
    auto vars = binary_domain(2);
    Constraints none;

    SUBCASE("empty two-variable graph") {
        auto moves = legal_moves(Dag(vars), none);
        REQUIRE(moves.size() == 2);
        CHECK(moves[0] == Move{MoveKind::AddArc, 0, 1});
        CHECK(moves[1] == Move{MoveKind::AddArc, 1, 0});
    }
    SUBCASE("single arc offers delete and reverse") {
        Dag dag(vars);
        dag.add_edge(0, 1);
        auto moves = legal_moves(dag, none);
        REQUIRE(moves.size() == 2);
        CHECK(moves[0] == Move{MoveKind::DeleteArc, 0, 1});
        CHECK(moves[1] == Move{MoveKind::ReverseArc, 0, 1});
    }
    SUBCASE("forbidden parent filters the add") {
        Constraints cs;
        cs.forbidden_parents.insert({0, 1});  // X0 may not parent X1
        auto moves = legal_moves(Dag(vars), cs);
        REQUIRE(moves.size() == 1);
        CHECK(moves[0] == Move{MoveKind::AddArc, 1, 0});
    }
    SUBCASE("moves never create cycles") {
        auto vars3 = binary_domain(3);
        Dag dag(vars3);
        dag.add_edge(0, 1);
        dag.add_edge(1, 2);
        for (const auto& m : legal_moves(dag, none))
            CHECK_NOTHROW(apply_move(dag, m).validate());
        // in particular Add 2->0 is absent
        auto moves = legal_moves(dag, none);
        CHECK(std::find(moves.begin(), moves.end(), Move{MoveKind::AddArc, 2, 0}) ==
              moves.end());
    }
    SUBCASE("max_parents is enforced") {
        auto vars3 = binary_domain(3);
        Dag dag(vars3);
        dag.add_edge(0, 2);
        auto moves = legal_moves(dag, none, 1);
        CHECK(std::find(moves.begin(), moves.end(), Move{MoveKind::AddArc, 1, 2}) ==
              moves.end());
    }
}

TEST_CASE("apply_move") {
    auto vars = binary_domain(2);
    Dag empty(vars);
    auto added = apply_move(empty, {MoveKind::AddArc, 0, 1});
    CHECK(added.has_edge(0, 1));
    CHECK_FALSE(empty.has_edge(0, 1));  // input unchanged

    auto reversed = apply_move(added, {MoveKind::ReverseArc, 0, 1});
    CHECK(reversed.has_edge(1, 0));
    CHECK_FALSE(reversed.has_edge(0, 1));

    auto deleted = apply_move(added, {MoveKind::DeleteArc, 0, 1});
    CHECK(deleted.num_edges() == 0);

    CHECK_THROWS_AS(apply_move(added, Move{MoveKind::AddArc, 0, 1}), UsageError);
    CHECK_THROWS_AS(apply_move(empty, Move{MoveKind::DeleteArc, 0, 1}), UsageError);
}

TEST_CASE("satisfies") {
    auto vars = binary_domain(2);
    Constraints cs;
    cs.required_orders.insert({1, 0});  // X0 must not be an ancestor of X1
    CHECK(satisfies(Dag(vars), cs));

    Dag ab(vars);
    ab.add_edge(0, 1);
    CHECK_FALSE(satisfies(ab, cs));

    Constraints forbidden;
    forbidden.forbidden_parents.insert({0, 1});
    CHECK_FALSE(satisfies(ab, forbidden));
    Dag ba(vars);
    ba.add_edge(1, 0);
    CHECK(satisfies(ba, forbidden));
}

TEST_CASE("hill_climb") {
    SearchConfig config;
    config.max_restarts = 5;

    SUBCASE("one variable yields the empty graph") {
        Dataset ds;
        ds.variables = binary_domain(1);
        ds.rows = {{0}, {1}};
        CHECK(hill_climb(ds, config).num_edges() == 0);
    }
    SUBCASE("correlated pair yields one edge") {
        auto dag = hill_climb(correlated_pairs(200), config);
        CHECK(dag.num_edges() == 1);
    }
    SUBCASE("collider golden model is recovered at N=2000") {
        BayesianNetwork golden;
        golden.structure = Dag(binary_domain(3));
        golden.structure.add_edge(0, 2);
        golden.structure.add_edge(1, 2);
        golden.parameters.tables = {
            {{0.5, 0.5}},
            {{0.5, 0.5}},
            {{0.95, 0.05}, {0.2, 0.8}, {0.2, 0.8}, {0.02, 0.98}}};
        auto ds = forward_sample(golden, 2000, 77);
        auto learned = hill_climb(ds, config);
        // exhaustive 25-DAG oracle agrees this is the optimum
        ScoreCache cache;
        CHECK(network_score(learned, ds, config.ess, cache) ==
              doctest::Approx(exhaustive_best_score(ds, config.ess)).epsilon(1e-9));
        CHECK(is_equivalent(learned, golden.structure));
    }
    SUBCASE("empty dataset and cyclic constraints are usage errors") {
        Dataset ds;
        ds.variables = binary_domain(2);
        CHECK_THROWS_AS(hill_climb(ds, config), UsageError);
        ds.rows = {{0, 0}};
        Constraints cyclic;
        cyclic.required_orders.insert({0, 1});
        cyclic.required_orders.insert({1, 0});
        CHECK_THROWS_AS(hill_climb(ds, config, cyclic), UsageError);
    }
    SUBCASE("constraints hold on the result") {
        BayesianNetwork golden;
        golden.structure = Dag(binary_domain(2));
        golden.structure.add_edge(0, 1);
        golden.parameters.tables = {{{0.5, 0.5}}, {{0.9, 0.1}, {0.1, 0.9}}};
        auto ds = forward_sample(golden, 500, 5);
        Constraints cs;
        cs.forbidden_parents.insert({0, 1});
        cs.forbidden_parents.insert({1, 0});
        auto learned = hill_climb(ds, config, cs);
        CHECK(learned.num_edges() == 0);
        CHECK(satisfies(learned, cs));
    }
    SUBCASE("deterministic given seed") {
        auto ds = random_dataset(binary_domain(4), 120, 31);
        auto a = hill_climb(ds, config);
        auto b = hill_climb(ds, config);
        CHECK(a == b);
    }
}

TEST_CASE("hill_climb reaches the exhaustive optimum almost always") {
    SearchConfig config;
    config.max_restarts = 5;
    int hits = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        const auto vars = binary_domain(4);
        Dataset ds = random_dataset(vars, 50 + (t % 5) * 100, 1000 + t);
        config.seed = t;
        double score = 0.0;
        hill_climb(ds, config, {}, &score);
        const double best = exhaustive_best_score(ds, config.ess);
        if (score >= best - 1e-9) ++hits;
        CHECK(score <= best + 1e-9);
    }
    CHECK(hits >= 95);
}

TEST_CASE("hill_climb score dominates the empty graph") {
    auto ds = random_dataset(binary_domain(4), 200, 55);
    SearchConfig config;
    double score = 0.0;
    hill_climb(ds, config, {}, &score);
    ScoreCache cache;
    CHECK(score >= network_score(Dag(ds.variables), ds, config.ess, cache) - 1e-9);
}

TEST_CASE("learn_tree") {
    SUBCASE("independent variables give an empty graph") {
        auto ds = random_dataset(binary_domain(3), 2000, 13);
        CHECK(learn_tree(ds, 5.0).num_edges() == 0);
    }
    SUBCASE("correlated pair gives one arc") {
        CHECK(learn_tree(correlated_pairs(200), 5.0).num_edges() == 1);
    }
    SUBCASE("chain data gives the two adjacent arcs") {
        BayesianNetwork golden;
        golden.structure = Dag(binary_domain(3));
        golden.structure.add_edge(0, 1);
        golden.structure.add_edge(1, 2);
        golden.parameters.tables = {{{0.5, 0.5}},
                                    {{0.9, 0.1}, {0.1, 0.9}},
                                    {{0.9, 0.1}, {0.1, 0.9}}};
        auto ds = forward_sample(golden, 2000, 3);
        auto tree = learn_tree(ds, 5.0);
        CHECK(tree.num_edges() == 2);
        CHECK(tree.adjacent(0, 1));
        CHECK(tree.adjacent(1, 2));
    }
}

TEST_CASE("learn_tree equals the exhaustive in-degree-1 optimum") {
    for (int trial = 0; trial < 10; ++trial) {
        const auto vars = binary_domain(4);
        const auto ds = random_dataset(vars, 100, 500 + trial);
        ScoreCache cache;
        double best = -1e300;
        for (const auto& dag : enumerate_indegree1(vars))
            best = std::max(best, network_score(dag, ds, 5.0, cache));
        const auto tree = learn_tree(ds, 5.0);
        for (const auto& ps : tree.parents) CHECK(ps.size() <= 1);
        CHECK(network_score(tree, ds, 5.0, cache) ==
              doctest::Approx(best).epsilon(1e-9));
    }
}
