#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bnboot/core.hpp"
#include "bnboot/rng.hpp"
#include "oracles.hpp"

using namespace bnboot;
using namespace bnboot::testing;

namespace {

BayesianNetwork single_binary_node(double p0) {
    BayesianNetwork bn;
    bn.structure = Dag(binary_domain(1));
    bn.parameters.tables = {{{p0, 1.0 - p0}}};
    return bn;
}

// X -> Y with P(X=1)=0.8, P(Y=1|X=0)=0.5, P(Y=1|X=1)=0.25
BayesianNetwork xy_network() {
    BayesianNetwork bn;
    bn.structure = Dag(binary_domain(2));
    bn.structure.add_edge(0, 1);
    bn.parameters.tables = {{{0.2, 0.8}}, {{0.5, 0.5}, {0.75, 0.25}}};
    return bn;
}

}  // namespace

TEST_CASE("topological_order") {
    auto vars = binary_domain(3);

    SUBCASE("empty graph keeps index order") {
        CHECK(topological_order(Dag(vars)) == std::vector<int>{0, 1, 2});
    }
    SUBCASE("chain is forced") {
        Dag dag(vars);
        dag.add_edge(0, 1);
        dag.add_edge(1, 2);
        CHECK(topological_order(dag) == std::vector<int>{0, 1, 2});
    }
    SUBCASE("common parent first, then index tie-break") {
        Dag dag(vars);
        dag.add_edge(2, 0);
        dag.add_edge(2, 1);
        CHECK(topological_order(dag) == std::vector<int>{2, 0, 1});
    }
    SUBCASE("cycle is reported") {
        Dag dag(vars);
        dag.add_edge(0, 1);
        dag.add_edge(1, 0);
        CHECK_THROWS_AS(topological_order(dag), UsageError);
    }
}

TEST_CASE("joint_probability") {
    CHECK(joint_probability(single_binary_node(0.5), {0}) == doctest::Approx(0.5));
    CHECK(joint_probability(xy_network(), {1, 1}) == doctest::Approx(0.2));

    // 3-node chain, all tables uniform
    BayesianNetwork chain;
    chain.structure = Dag(binary_domain(3));
    chain.structure.add_edge(0, 1);
    chain.structure.add_edge(1, 2);
    chain.parameters.tables = {
        {{0.5, 0.5}}, {{0.5, 0.5}, {0.5, 0.5}}, {{0.5, 0.5}, {0.5, 0.5}}};
    CHECK(joint_probability(chain, {1, 0, 1}) == doctest::Approx(0.125));

    CHECK_THROWS_AS(joint_probability(chain, {0, 1}), UsageError);
}

TEST_CASE("joint sums to one over all assignments") {
    CHECK(joint_total_mass(xy_network()) == doctest::Approx(1.0).epsilon(1e-12));

    BayesianNetwork bn;
    bn.structure = Dag({{"A", {"a0", "a1", "a2"}}, {"B", {"b0", "b1"}}});
    bn.structure.add_edge(0, 1);
    bn.parameters.tables = {{{0.2, 0.3, 0.5}},
                            {{0.9, 0.1}, {0.4, 0.6}, {0.25, 0.75}}};
    CHECK(joint_total_mass(bn) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("forward_sample") {
    SUBCASE("count zero gives an empty dataset") {
        auto ds = forward_sample(xy_network(), 0, 7);
        CHECK(ds.num_rows() == 0);
        CHECK(ds.num_variables() == 2);
    }
    SUBCASE("deterministic network forces identical rows") {
        BayesianNetwork bn;
        bn.structure = Dag(binary_domain(2));
        bn.structure.add_edge(0, 1);
        bn.parameters.tables = {{{0.0, 1.0}}, {{1.0, 0.0}, {0.0, 1.0}}};
        auto ds = forward_sample(bn, 5, 13);
        REQUIRE(ds.num_rows() == 5);
        for (const auto& row : ds.rows) CHECK(row == std::vector<int>{1, 1});
    }
    SUBCASE("fair coin frequency concentrates") {
        auto ds = forward_sample(single_binary_node(0.5), 10000, 99);
        int zeros = 0;
        for (const auto& row : ds.rows) zeros += row[0] == 0;
        // exact binomial 99.9% interval for p=0.5, n=10000 is within +-0.017
        CHECK(std::abs(zeros / 10000.0 - 0.5) <= 0.02);
    }
    SUBCASE("same seed reproduces, different seed varies") {
        auto a = forward_sample(xy_network(), 50, 3);
        auto b = forward_sample(xy_network(), 50, 3);
        auto c = forward_sample(xy_network(), 50, 4);
        CHECK(a.rows == b.rows);
        CHECK(a.rows != c.rows);
    }
}

TEST_CASE("forward_sample marginals match enumeration") {
    auto bn = xy_network();
    auto ds = forward_sample(bn, 50000, 11);
    for (int v = 0; v < 2; ++v) {
        int count = 0;
        for (const auto& row : ds.rows) count += row[v] == 1;
        CHECK(count / 50000.0 ==
              doctest::Approx(exact_marginal(bn, v, 1)).epsilon(0.02));
    }
}

TEST_CASE("resample_with_replacement") {
    SUBCASE("single row is repeated") {
        Dataset ds;
        ds.variables = binary_domain(2);
        ds.rows = {{0, 1}};
        auto out = resample_with_replacement(ds, 5);
        CHECK(out.rows == ds.rows);
    }
    SUBCASE("empty dataset is rejected") {
        Dataset ds;
        ds.variables = binary_domain(1);
        CHECK_THROWS_AS(resample_with_replacement(ds, 1), UsageError);
    }
    SUBCASE("ordered outcomes of a 2-row dataset are uniform") {
        Dataset ds;
        ds.variables = binary_domain(1);
        ds.rows = {{0}, {1}};
        int outcome[4] = {0, 0, 0, 0};
        for (int trial = 0; trial < 10000; ++trial) {
            auto out = resample_with_replacement(ds, derive_seed(1234, trial));
            outcome[out.rows[0][0] * 2 + out.rows[1][0]]++;
        }
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(outcome[k] / 10000.0 - 0.25) <= 0.02);
    }
    SUBCASE("output rows are drawn from the input") {
        auto ds = random_dataset(binary_domain(3), 40, 8);
        auto out = resample_with_replacement(ds, 17);
        REQUIRE(out.num_rows() == ds.num_rows());
        for (const auto& row : out.rows) {
            CHECK(std::find(ds.rows.begin(), ds.rows.end(), row) != ds.rows.end());
        }
    }
}

TEST_CASE("test_log_loss") {
    SUBCASE("deterministic network on its forced assignment") {
        BayesianNetwork bn = single_binary_node(1.0);
        Dataset test;
        test.variables = bn.structure.variables;
        test.rows = {{0}, {0}};
        CHECK(test_log_loss(bn, test) == doctest::Approx(0.0));
    }
    SUBCASE("fair coin gives log(1/2)") {
        auto bn = single_binary_node(0.5);
        Dataset test;
        test.variables = bn.structure.variables;
        test.rows = {{0}, {1}, {1}};
        CHECK(test_log_loss(bn, test) == doctest::Approx(std::log(0.5)));
    }
    SUBCASE("matches the joint_probability example") {
        Dataset test;
        test.variables = binary_domain(2);
        test.rows = {{1, 1}};
        CHECK(test_log_loss(xy_network(), test) == doctest::Approx(std::log(0.2)));
    }
    SUBCASE("equals the average of per-row log joints") {
        auto bn = xy_network();
        auto ds = forward_sample(bn, 100, 5);
        double total = 0.0;
        for (const auto& row : ds.rows) total += log_joint(bn, row);
        CHECK(test_log_loss(bn, ds) == doctest::Approx(total / 100).epsilon(1e-12));
    }
    SUBCASE("mismatched domain is rejected") {
        Dataset test;
        test.variables = binary_domain(3);
        test.rows = {{0, 0, 0}};
        CHECK_THROWS_AS(test_log_loss(xy_network(), test), UsageError);
    }
}
