#include "bnboot/core.hpp"

#include <cmath>
#include <limits>
#include <queue>

#include "bnboot/rng.hpp"

namespace bnboot {

std::vector<int> topological_order(const Dag& dag) {
    const int n = dag.num_variables();
    std::vector<int> indegree(n);
    for (int c = 0; c < n; ++c) indegree[c] = static_cast<int>(dag.parents[c].size());
    auto children = dag.children_lists();
    // min-heap gives the ascending-index tie-break
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.push(i);
    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int c : children[v])
            if (--indegree[c] == 0) ready.push(c);
    }
    if (static_cast<int>(order.size()) != n) dag.validate();  // throws with cycle detail
    return order;
}

double log_joint(const BayesianNetwork& bn, const std::vector<int>& assignment) {
    const Dag& dag = bn.structure;
    if (static_cast<int>(assignment.size()) != dag.num_variables())
        throw UsageError("assignment does not cover all variables");
    double total = 0.0;
    for (int i = 0; i < dag.num_variables(); ++i) {
        const long long j = parent_config_index(dag, i, assignment);
        const double p = bn.parameters.tables[i][j][assignment[i]];
        if (p <= 0.0) return -std::numeric_limits<double>::infinity();
        total += std::log(p);
    }
    return total;
}

double joint_probability(const BayesianNetwork& bn, const std::vector<int>& assignment) {
    return std::exp(log_joint(bn, assignment));
}

Dataset forward_sample(const BayesianNetwork& bn, int count, std::uint64_t seed) {
    if (count < 0) throw UsageError("sample count must be >= 0");
    const Dag& dag = bn.structure;
    const auto order = topological_order(dag);
    Rng rng(seed);
    Dataset out;
    out.variables = dag.variables;
    out.rows.reserve(count);
    std::vector<int> row(dag.num_variables());
    for (int l = 0; l < count; ++l) {
        for (int i : order) {
            const long long j = parent_config_index(dag, i, row);
            row[i] = rng.sample_categorical(bn.parameters.tables[i][j]);
        }
        out.rows.push_back(row);
    }
    return out;
}

Dataset resample_with_replacement(const Dataset& dataset, std::uint64_t seed) {
    const int n = dataset.num_rows();
    if (n == 0) throw UsageError("cannot resample an empty dataset");
    Rng rng(seed);
    Dataset out;
    out.variables = dataset.variables;
    out.rows.reserve(n);
    for (int l = 0; l < n; ++l) out.rows.push_back(dataset.rows[rng.uniform_int(n)]);
    return out;
}

double test_log_loss(const BayesianNetwork& bn, const Dataset& test) {
    if (test.num_rows() == 0) throw UsageError("test set is empty");
    if (!same_domain(bn.structure.variables, test.variables))
        throw UsageError("test set variables do not match the network");
    double total = 0.0;
    for (const auto& row : test.rows) total += log_joint(bn, row);
    return total / test.num_rows();
}

}  // namespace bnboot
