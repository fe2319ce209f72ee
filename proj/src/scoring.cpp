#include "bnboot/scoring.hpp"

#include <cmath>
#include <sstream>

namespace bnboot {

long long FamilyStats::row_total(long long j) const {
    long long sum = 0;
    for (long long c : counts[j]) sum += c;
    return sum;
}

long long FamilyStats::total() const {
    long long sum = 0;
    for (std::size_t j = 0; j < counts.size(); ++j) sum += row_total(j);
    return sum;
}

std::string ScoreCache::key(int child, const std::vector<int>& parents) {
    std::ostringstream oss;
    oss << child << '|';
    for (int p : parents) oss << p << ',';
    return oss.str();
}

bool ScoreCache::lookup(int child, const std::vector<int>& parents, double* out) const {
    auto it = map_.find(key(child, parents));
    if (it == map_.end()) return false;
    *out = it->second;
    return true;
}

void ScoreCache::insert(int child, const std::vector<int>& parents, double value) {
    map_.emplace(key(child, parents), value);
}

FamilyStats count_family_stats(const Dataset& dataset, int child,
                               const std::vector<int>& parents) {
    const int n = dataset.num_variables();
    if (child < 0 || child >= n) throw UsageError("child index out of range");
    long long q = 1;
    for (int p : parents) {
        if (p < 0 || p >= n) throw UsageError("parent index out of range");
        if (p == child) throw UsageError("child may not be its own parent");
        q *= dataset.variables[p].arity();
        if (q > (1LL << 30)) throw UsageError("parent configuration space too large");
    }
    FamilyStats stats;
    stats.child = child;
    stats.parents = parents;
    stats.child_arity = dataset.variables[child].arity();
    stats.counts.assign(q, std::vector<long long>(stats.child_arity, 0));
    for (const auto& row : dataset.rows) {
        long long j = 0;
        for (int p : parents) j = j * dataset.variables[p].arity() + row[p];
        ++stats.counts[j][row[child]];
    }
    return stats;
}

double family_score(const FamilyStats& stats, double ess) {
    if (ess <= 0.0) throw UsageError("ess must be positive");
    const long long q = static_cast<long long>(stats.counts.size());
    const int r = stats.child_arity;
    const double alpha_jk = ess / (static_cast<double>(r) * q);
    const double alpha_j = ess / static_cast<double>(q);
    double score = 0.0;
    for (long long j = 0; j < q; ++j) {
        const long long nj = stats.row_total(j);
        if (nj == 0) continue;  // empty rows contribute exactly zero
        score += std::lgamma(alpha_j) - std::lgamma(alpha_j + nj);
        for (int k = 0; k < r; ++k) {
            const long long njk = stats.counts[j][k];
            if (njk == 0) continue;
            score += std::lgamma(alpha_jk + njk) - std::lgamma(alpha_jk);
        }
    }
    return score;
}

double network_score(const Dag& dag, const Dataset& dataset, double ess,
                     ScoreCache& cache) {
    if (!same_domain(dag.variables, dataset.variables))
        throw UsageError("dag and dataset variable domains differ");
    double total = 0.0;
    for (int i = 0; i < dag.num_variables(); ++i) {
        double s;
        if (!cache.lookup(i, dag.parents[i], &s)) {
            s = family_score(count_family_stats(dataset, i, dag.parents[i]), ess);
            cache.insert(i, dag.parents[i], s);
        }
        total += s;
    }
    return total;
}

double normalized_score(double score, int n) {
    if (n < 1) throw UsageError("dataset size must be >= 1 for normalization");
    return score / n;
}

BayesianNetwork fit_parameters(const Dag& dag, const Dataset& dataset, double ess) {
    if (!same_domain(dag.variables, dataset.variables))
        throw UsageError("dag and dataset variable domains differ");
    if (ess <= 0.0) throw UsageError("ess must be positive");
    BayesianNetwork bn;
    bn.structure = dag;
    bn.parameters.tables.resize(dag.num_variables());
    for (int i = 0; i < dag.num_variables(); ++i) {
        const auto stats = count_family_stats(dataset, i, dag.parents[i]);
        const long long q = static_cast<long long>(stats.counts.size());
        const int r = stats.child_arity;
        const double alpha_jk = ess / (static_cast<double>(r) * q);
        const double alpha_j = ess / static_cast<double>(q);
        auto& table = bn.parameters.tables[i];
        table.assign(q, std::vector<double>(r, 0.0));
        for (long long j = 0; j < q; ++j) {
            const double denom = alpha_j + stats.row_total(j);
            for (int k = 0; k < r; ++k)
                table[j][k] = (alpha_jk + stats.counts[j][k]) / denom;
        }
    }
    return bn;
}

}  // namespace bnboot
