#ifndef BNBOOT_BOOTSTRAP_HPP
#define BNBOOT_BOOTSTRAP_HPP

#include <map>
#include <string>
#include <vector>

#include "bnboot/features.hpp"
#include "bnboot/search.hpp"
#include "bnboot/types.hpp"

namespace bnboot {

enum class BootstrapMethod { NonParametric, Parametric, BayesianWeighted };

std::string method_name(BootstrapMethod method);
BootstrapMethod method_from_name(const std::string& name);  // throws UsageError

struct BootstrapConfig {
    int m = 100;
    BootstrapMethod method = BootstrapMethod::NonParametric;
    SearchConfig search;
    std::vector<FeatureKind> kinds{kAllFeatureKinds.begin(), kAllFeatureKinds.end()};
    std::uint64_t seed = 0;
    int jobs = 1;
};

/// Per-feature confidence values in [0,1]. Only features seen in at least
/// one replicate are stored; absent features read as 0.
struct ConfidenceReport {
    std::string method;
    int m = 0;
    std::vector<Variable> variables;
    std::vector<FeatureKind> kinds;
    std::map<Feature, double> confidences;
    std::vector<double> replicate_scores;  // filled by the Bayesian estimator

    double confidence(const Feature& f) const {
        auto it = confidences.find(f);
        return it == confidences.end() ? 0.0 : it->second;
    }
};

/// p*n(f): fraction of structures learned from resampled datasets in which
/// the feature holds.
ConfidenceReport nonparametric_bootstrap(const Dataset& dataset,
                                         const BootstrapConfig& config);

/// p*p(f): as above, but replicate datasets are drawn from a network fitted
/// to the original data.
ConfidenceReport parametric_bootstrap(const Dataset& dataset,
                                      const BootstrapConfig& config);

/// Normalized weights proportional to exp(score), computed with log-sum-exp
/// so widely separated scores stay finite.
std::vector<double> posterior_weights(const std::vector<double>& scores);

/// Posterior-weighted confidence over the distinct structures of the
/// non-parametric replicate set; weights proportional to exp(BDe score on
/// the original data), computed via log-sum-exp.
ConfidenceReport bayesian_weighted_confidence(const Dataset& dataset,
                                              const BootstrapConfig& config);

/// Dispatch on config.method.
ConfidenceReport run_bootstrap(const Dataset& dataset, const BootstrapConfig& config);

struct DerivedConstraints {
    Constraints constraints;
    /// Required orders dropped (ascending confidence) to restore acyclicity.
    std::vector<std::pair<int, int>> dropped_orders;
};

/// Order constraints from high-confidence ancestor features (strictly above
/// order_threshold) and forbidden parents from low-confidence Markov
/// neighborhoods (strictly below markov_threshold).
DerivedConstraints derive_constraints(const ConfidenceReport& report,
                                      double order_threshold = 0.8,
                                      double markov_threshold = 0.05);

}  // namespace bnboot

#endif
