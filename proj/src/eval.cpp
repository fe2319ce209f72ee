#include "bnboot/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "bnboot/core.hpp"
#include "bnboot/rng.hpp"
#include "bnboot/scoring.hpp"

namespace bnboot {

std::set<Feature> classify(const ConfidenceReport& report, double t) {
    if (t < 0.0 || t > 1.0) throw UsageError("threshold must lie in [0,1]");
    std::set<Feature> out;
    for (const Feature& f : feature_universe(report.variables, report.kinds)) {
        if (report.confidence(f) >= t) out.insert(f);
    }
    return out;
}

ConfusionCounts confusion(const std::set<Feature>& positives, const Dag& golden_dag,
                          FeatureKind kind) {
    const auto golden = extract_features(golden_dag, {kind});
    const auto universe = feature_universe(golden_dag.variables, {kind});
    ConfusionCounts counts;
    for (const Feature& f : universe) {
        const bool predicted = positives.count(f) > 0;
        const bool actual = golden.count(f) > 0;
        if (predicted && actual) ++counts.true_positives;
        else if (predicted && !actual) ++counts.false_positives;
        else if (!predicted && actual) ++counts.false_negatives;
        else ++counts.true_negatives;
    }
    return counts;
}

std::vector<TradeoffPoint> tradeoff_curve(const ConfidenceReport& report,
                                          const Dag& golden_dag,
                                          const std::vector<double>& thresholds,
                                          FeatureKind kind) {
    if (!std::is_sorted(thresholds.rbegin(), thresholds.rend()))
        throw UsageError("thresholds must be sorted descending");
    std::vector<TradeoffPoint> curve;
    for (double t : thresholds) {
        const auto counts = confusion(classify(report, t), golden_dag, kind);
        curve.push_back({t, counts.false_positives, counts.false_negatives});
    }
    return curve;
}

namespace {

struct Accumulator {
    std::vector<double> values;

    void add(double v) { values.push_back(v); }
    double mean() const {
        double sum = 0.0;
        for (double v : values) sum += v;
        return values.empty() ? 0.0 : sum / values.size();
    }
    double sd() const {
        if (values.size() < 2) return 0.0;
        const double mu = mean();
        double ss = 0.0;
        for (double v : values) ss += (v - mu) * (v - mu);
        return std::sqrt(ss / (values.size() - 1));
    }
};

}  // namespace

std::vector<MetricRow> run_recovery_experiment(const ExperimentSpec& spec) {
    spec.golden.validate();
    if (spec.sizes.empty() || spec.thresholds.empty())
        throw UsageError("experiment needs at least one size and one threshold");

    std::vector<MetricRow> rows;
    for (std::size_t si = 0; si < spec.sizes.size(); ++si) {
        const int size = spec.sizes[si];
        // accumulator per (threshold, kind, metric)
        std::map<std::tuple<double, FeatureKind, std::string>, Accumulator> acc;
        for (int rep = 0; rep < spec.replicates; ++rep) {
            const std::uint64_t rep_seed = derive_seed(
                spec.seed, (static_cast<std::uint64_t>(si) << 32) + rep);
            const Dataset data =
                forward_sample(spec.golden, size, derive_seed(rep_seed, 1));
            BootstrapConfig bc = spec.bootstrap;
            bc.kinds = spec.kinds;
            bc.seed = derive_seed(rep_seed, 2);
            const ConfidenceReport report = run_bootstrap(data, bc);
            for (double t : spec.thresholds) {
                const auto positives = classify(report, t);
                for (FeatureKind kind : spec.kinds) {
                    const auto c = confusion(positives, spec.golden.structure, kind);
                    acc[{t, kind, "tp"}].add(static_cast<double>(c.true_positives));
                    acc[{t, kind, "fp"}].add(static_cast<double>(c.false_positives));
                    acc[{t, kind, "fn"}].add(static_cast<double>(c.false_negatives));
                }
            }
        }
        for (const auto& [key, a] : acc) {
            const auto& [t, kind, metric] = key;
            rows.push_back({size, t, kind_name(kind), metric, a.mean(), a.sd()});
        }
    }
    return rows;
}

std::vector<MetricRow> run_constraint_experiment(const ExperimentSpec& spec,
                                                 int test_size) {
    spec.golden.validate();
    if (test_size < 1) throw UsageError("test size must be >= 1");

    std::vector<MetricRow> rows;
    for (std::size_t si = 0; si < spec.sizes.size(); ++si) {
        const int size = spec.sizes[si];
        std::map<std::pair<std::string, std::string>, Accumulator> acc;
        for (int rep = 0; rep < spec.replicates; ++rep) {
            const std::uint64_t rep_seed = derive_seed(
                spec.seed, (static_cast<std::uint64_t>(si) << 32) + rep);
            const Dataset train =
                forward_sample(spec.golden, size, derive_seed(rep_seed, 1));
            const Dataset test =
                forward_sample(spec.golden, test_size, derive_seed(rep_seed, 2));

            BootstrapConfig bc = spec.bootstrap;
            bc.method = BootstrapMethod::NonParametric;
            bc.kinds = {FeatureKind::MarkovNeighbor, FeatureKind::AncestorOrder};
            bc.seed = derive_seed(rep_seed, 3);
            const ConfidenceReport report = nonparametric_bootstrap(train, bc);
            const DerivedConstraints derived =
                derive_constraints(report, spec.order_threshold, spec.markov_threshold);

            SearchConfig sc = spec.bootstrap.search;
            sc.seed = derive_seed(rep_seed, 4);
            for (const bool constrained : {true, false}) {
                const Constraints& cs =
                    constrained ? derived.constraints : Constraints{};
                double score = 0.0;
                const Dag learned = hill_climb(train, sc, cs, &score);
                if (constrained && !satisfies(learned, cs))
                    throw InternalError("constrained search violated its constraints");
                const BayesianNetwork fitted = fit_parameters(learned, train, sc.ess);
                const std::string arm = constrained ? "constrained" : "unconstrained";
                acc[{arm, "normalized_score"}].add(
                    normalized_score(score, train.num_rows()));
                acc[{arm, "test_log_loss"}].add(test_log_loss(fitted, test));
            }
        }
        for (const auto& [key, a] : acc)
            rows.push_back({size, -1.0, key.first, key.second, a.mean(), a.sd()});
    }
    return rows;
}

}  // namespace bnboot
