#ifndef BNBOOT_EVAL_HPP
#define BNBOOT_EVAL_HPP

#include <string>
#include <vector>

#include "bnboot/bootstrap.hpp"
#include "bnboot/features.hpp"
#include "bnboot/types.hpp"

namespace bnboot {

struct ConfusionCounts {
    long long true_positives = 0;
    long long false_positives = 0;
    long long false_negatives = 0;
    long long true_negatives = 0;
};

struct ExperimentSpec {
    BayesianNetwork golden;
    std::vector<int> sizes{100, 250, 500, 1000};
    int replicates = 10;
    BootstrapConfig bootstrap;
    std::vector<double> thresholds{0.95, 0.8, 0.75, 0.5};
    std::vector<FeatureKind> kinds{kAllFeatureKinds.begin(), kAllFeatureKinds.end()};
    double order_threshold = 0.8;    // constraint experiment only
    double markov_threshold = 0.05;  // constraint experiment only
    std::uint64_t seed = 0;
};

/// Features with confidence >= t (inclusive).
std::set<Feature> classify(const ConfidenceReport& report, double t);

/// Confusion counts against the golden structure for one feature kind.
ConfusionCounts confusion(const std::set<Feature>& positives, const Dag& golden_dag,
                          FeatureKind kind);

struct TradeoffPoint {
    double threshold;
    long long false_positives;
    long long false_negatives;
};

/// One confusion point per threshold (thresholds sorted descending).
std::vector<TradeoffPoint> tradeoff_curve(const ConfidenceReport& report,
                                          const Dag& golden_dag,
                                          const std::vector<double>& thresholds,
                                          FeatureKind kind);

/// One output row: mean and standard deviation of one metric over replicates.
struct MetricRow {
    int size;
    double threshold;  // unused (-1) in the constraint experiment
    std::string group;  // feature kind, or arm name
    std::string metric;
    double mean;
    double sd;
};

/// Feature-recovery pipeline: sample datasets from the golden network, run
/// the configured bootstrap, and count confusions at each threshold. Rows
/// are emitted per (size, threshold, kind, metric).
std::vector<MetricRow> run_recovery_experiment(const ExperimentSpec& spec);

/// Constrained-vs-unconstrained learning pipeline: derives constraints from
/// a non-parametric bootstrap on each training set and compares normalized
/// training score and held-out log-loss. Rows per (size, arm, metric).
std::vector<MetricRow> run_constraint_experiment(const ExperimentSpec& spec,
                                                 int test_size = 10000);

}  // namespace bnboot

#endif
