#include <doctest.h>

#include <cmath>

#include "bnboot/core.hpp"
#include "bnboot/pdag.hpp"
#include "bnboot/rng.hpp"
#include "bnboot/scoring.hpp"
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

FamilyStats root_counts(long long n0, long long n1) {
    FamilyStats stats;
    stats.child = 0;
    stats.child_arity = 2;
    stats.counts = {{n0, n1}};
    return stats;
}

}  // namespace

TEST_CASE("count_family_stats") {
    SUBCASE("empty dataset") {
        Dataset ds;
        ds.variables = binary_domain(2);
        auto stats = count_family_stats(ds, 0, {1});
        CHECK(stats.total() == 0);
    }
    SUBCASE("root tally") {
        Dataset ds;
        ds.variables = binary_domain(1);
        ds.rows = {{0}, {1}, {1}};
        auto stats = count_family_stats(ds, 0, {});
        CHECK(stats.counts == std::vector<std::vector<long long>>{{1, 2}});
    }
    SUBCASE("one parent tally") {
        Dataset ds;
        ds.variables = binary_domain(2);
        ds.rows = {{0, 0}, {0, 1}, {1, 1}};  // columns: parent X0, child X1
        auto stats = count_family_stats(ds, 1, {0});
        CHECK(stats.counts == std::vector<std::vector<long long>>{{1, 1}, {0, 1}});
    }
    SUBCASE("bad indices") {
        Dataset ds;
        ds.variables = binary_domain(2);
        CHECK_THROWS_AS(count_family_stats(ds, 5, {}), UsageError);
        CHECK_THROWS_AS(count_family_stats(ds, 0, {0}), UsageError);
    }
}

TEST_CASE("family_score closed forms") {
    CHECK(family_score(root_counts(0, 0), 5.0) == doctest::Approx(0.0));
    // counts (1,1), ess 5: Gamma(5)/Gamma(7) * (Gamma(3.5)/Gamma(2.5))^2
    CHECK(family_score(root_counts(1, 1), 5.0) ==
          doctest::Approx(std::log(6.25 / 30.0)).epsilon(1e-12));
    // single observation: alpha_k / alpha = 2.5 / 5
    CHECK(family_score(root_counts(1, 0), 5.0) ==
          doctest::Approx(std::log(0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(family_score(root_counts(1, 1), 0.0), UsageError);
}

TEST_CASE("family_score matches the product-form oracle") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        FamilyStats stats;
        stats.child = 0;
        stats.child_arity = 2 + rng.uniform_int(2);
        const int q = 1 << rng.uniform_int(3);
        stats.counts.assign(q, std::vector<long long>(stats.child_arity, 0));
        for (int j = 0; j < q; ++j)
            for (int k = 0; k < stats.child_arity; ++k)
                stats.counts[j][k] = rng.uniform_int(21);
        const double ess = 0.5 + rng.uniform01() * 10.0;
        CHECK(family_score(stats, ess) ==
              doctest::Approx(family_score_oracle(stats, ess)).epsilon(1e-10));
    }
}

TEST_CASE("network_score") {
    ScoreCache cache;
    SUBCASE("empty dataset scores zero") {
        Dataset ds;
        ds.variables = binary_domain(3);
        Dag dag(ds.variables);
        dag.add_edge(0, 1);
        CHECK(network_score(dag, ds, 5.0, cache) == doctest::Approx(0.0));
    }
    SUBCASE("correlated pair prefers the edge") {
        auto ds = correlated_pairs(100);
        Dag empty(ds.variables);
        Dag edge(ds.variables);
        edge.add_edge(0, 1);
        CHECK(network_score(edge, ds, 5.0, cache) >
              network_score(empty, ds, 5.0, cache));
    }
    SUBCASE("equivalent single-edge DAGs score identically") {
        auto ds = random_dataset(binary_domain(2), 80, 3);
        Dag ab(ds.variables), ba(ds.variables);
        ab.add_edge(0, 1);
        ba.add_edge(1, 0);
        ScoreCache c1, c2;
        CHECK(network_score(ab, ds, 5.0, c1) ==
              doctest::Approx(network_score(ba, ds, 5.0, c2)).epsilon(1e-12));
    }
    SUBCASE("domain mismatch is rejected") {
        Dataset ds;
        ds.variables = binary_domain(2);
        Dag dag(binary_domain(3));
        CHECK_THROWS_AS(network_score(dag, ds, 5.0, cache), UsageError);
    }
}

TEST_CASE("score equivalence across random datasets") {
    const auto vars = binary_domain(4);
    const auto dags = enumerate_dags(vars);
    for (int trial = 0; trial < 3; ++trial) {
        const auto ds = random_dataset(vars, 60, 100 + trial);
        ScoreCache cache;
        std::vector<double> scores;
        for (const auto& dag : dags) scores.push_back(network_score(dag, ds, 5.0, cache));
        int checked = 0;
        for (std::size_t i = 0; i < dags.size() && checked < 400; ++i) {
            for (std::size_t j = i + 1; j < dags.size() && checked < 400; ++j) {
                if (is_equivalent(dags[i], dags[j])) {
                    CHECK(scores[i] == doctest::Approx(scores[j]).epsilon(1e-9));
                    ++checked;
                }
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("decomposability: changing one family changes one term") {
    auto ds = random_dataset(binary_domain(4), 50, 7);
    Dag dag(ds.variables);
    dag.add_edge(0, 1);
    dag.add_edge(2, 3);
    Dag modified = dag;
    modified.add_edge(0, 3);

    ScoreCache cache;
    const double before = network_score(dag, ds, 5.0, cache);
    const double after = network_score(modified, ds, 5.0, cache);
    const double delta_family =
        family_score(count_family_stats(ds, 3, {0, 2}), 5.0) -
        family_score(count_family_stats(ds, 3, {2}), 5.0);
    CHECK(after - before == doctest::Approx(delta_family).epsilon(1e-12));
}

TEST_CASE("normalized_score") {
    CHECK(normalized_score(-100.0, 10) == doctest::Approx(-10.0));
    CHECK(normalized_score(0.0, 5) == doctest::Approx(0.0));
    CHECK(normalized_score(-1.5686, 2) == doctest::Approx(-0.7843));
    CHECK_THROWS_AS(normalized_score(-1.0, 0), UsageError);
}

TEST_CASE("fit_parameters") {
    SUBCASE("empty data gives the uniform prior mean") {
        Dataset ds;
        ds.variables = binary_domain(2);
        Dag dag(ds.variables);
        dag.add_edge(0, 1);
        auto bn = fit_parameters(dag, ds, 5.0);
        for (const auto& table : bn.parameters.tables)
            for (const auto& dist : table)
                for (double p : dist) CHECK(p == doctest::Approx(0.5));
    }
    SUBCASE("posterior-mean closed forms") {
        Dataset ds;
        ds.variables = binary_domain(1);
        ds.rows = {{0}, {1}};
        auto bn = fit_parameters(Dag(ds.variables), ds, 5.0);
        CHECK(bn.parameters.tables[0][0][0] == doctest::Approx(3.5 / 7.0));

        Dataset skewed;
        skewed.variables = binary_domain(1);
        for (int i = 0; i < 95; ++i) skewed.rows.push_back({0});
        auto bn2 = fit_parameters(Dag(skewed.variables), skewed, 5.0);
        CHECK(bn2.parameters.tables[0][0][0] == doctest::Approx(97.5 / 100.0));
        CHECK(bn2.parameters.tables[0][0][1] == doctest::Approx(2.5 / 100.0));
    }
    SUBCASE("rows are strictly positive and normalized") {
        auto ds = random_dataset({{"A", {"0", "1", "2"}}, {"B", {"0", "1"}}}, 30, 9);
        Dag dag(ds.variables);
        dag.add_edge(0, 1);
        auto bn = fit_parameters(dag, ds, 5.0);
        for (const auto& table : bn.parameters.tables) {
            for (const auto& dist : table) {
                double sum = 0.0;
                for (double p : dist) {
                    CHECK(p > 0.0);
                    sum += p;
                }
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("score cache returns exact recomputations") {
    auto ds = random_dataset(binary_domain(3), 40, 21);
    ScoreCache cache;
    Dag dag(ds.variables);
    dag.add_edge(0, 2);
    const double first = network_score(dag, ds, 5.0, cache);
    const double second = network_score(dag, ds, 5.0, cache);
    ScoreCache fresh;
    CHECK(first == second);
    CHECK(first == network_score(dag, ds, 5.0, fresh));
}
