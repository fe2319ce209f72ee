#ifndef BNBOOT_SCORING_HPP
#define BNBOOT_SCORING_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "bnboot/types.hpp"

namespace bnboot {

/// Contingency counts for one family: counts[j][k] = N_ijk over parent
/// configuration j (row-major, earlier parents slowest) and child state k.
struct FamilyStats {
    int child = -1;
    std::vector<int> parents;          // sorted ascending
    int child_arity = 0;
    std::vector<std::vector<long long>> counts;

    long long row_total(long long j) const;
    long long total() const;
};

/// Cache of family log-scores keyed by (child, sorted parent set). Confined
/// to one search thread; bootstrap replicates each own their cache.
class ScoreCache {
public:
    bool lookup(int child, const std::vector<int>& parents, double* out) const;
    void insert(int child, const std::vector<int>& parents, double value);
    std::size_t size() const { return map_.size(); }

private:
    static std::string key(int child, const std::vector<int>& parents);
    std::unordered_map<std::string, double> map_;
};

/// Exact contingency counts of `child` against `parents` over the dataset.
FamilyStats count_family_stats(const Dataset& dataset, int child,
                               const std::vector<int>& parents);

/// BDe family log-score with uniform hyperparameters alpha_ijk = ess/(r*q).
double family_score(const FamilyStats& stats, double ess);

/// Sum of family scores over the DAG (uniform structure prior dropped).
double network_score(const Dag& dag, const Dataset& dataset, double ess,
                     ScoreCache& cache);

/// BDe score divided by the dataset size.
double normalized_score(double score, int n);

/// Posterior-mean parameter fit with the same uniform BDe prior; all
/// resulting distributions are strictly positive.
BayesianNetwork fit_parameters(const Dag& dag, const Dataset& dataset, double ess);

}  // namespace bnboot

#endif
