#include "bnboot/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "bnboot/core.hpp"
#include "bnboot/rng.hpp"
#include "bnboot/scoring.hpp"

namespace bnboot {

std::string method_name(BootstrapMethod method) {
    switch (method) {
        case BootstrapMethod::NonParametric: return "np";
        case BootstrapMethod::Parametric: return "p";
        case BootstrapMethod::BayesianWeighted: return "bayes";
    }
    throw InternalError("unknown bootstrap method");
}

BootstrapMethod method_from_name(const std::string& name) {
    if (name == "np") return BootstrapMethod::NonParametric;
    if (name == "p") return BootstrapMethod::Parametric;
    if (name == "bayes") return BootstrapMethod::BayesianWeighted;
    throw UsageError("unknown bootstrap method '" + name + "' (expected np, p, or bayes)");
}

namespace {

struct Replicate {
    Dag dag;
    std::set<Feature> features;
    double score = 0.0;
};

// Runs the m learning replicates, optionally in parallel. Each replicate
// draws its seeds from its own index, so the outputs are identical for any
// job count.
std::vector<Replicate> run_replicates(const Dataset& dataset,
                                      const BootstrapConfig& config,
                                      const BayesianNetwork* generator,
                                      bool score_on_original) {
    if (dataset.num_rows() == 0) throw UsageError("cannot bootstrap an empty dataset");
    if (config.m < 1) throw UsageError("replicate count m must be >= 1");

    std::vector<Replicate> reps(config.m);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        try {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= config.m) return;
                const std::uint64_t data_seed =
                    derive_seed(config.seed, 2 * static_cast<std::uint64_t>(i) + 1);
                const std::uint64_t search_seed =
                    derive_seed(config.seed, 2 * static_cast<std::uint64_t>(i) + 2);
                Dataset replicate_data =
                    generator ? forward_sample(*generator, dataset.num_rows(), data_seed)
                              : resample_with_replacement(dataset, data_seed);
                SearchConfig sc = config.search;
                sc.seed = search_seed;
                Replicate& rep = reps[i];
                rep.dag = hill_climb(replicate_data, sc);
                rep.features = extract_features(rep.dag, config.kinds);
                if (score_on_original) {
                    ScoreCache cache;
                    rep.score = network_score(rep.dag, dataset, sc.ess, cache);
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    const int jobs = std::max(1, std::min(config.jobs, config.m));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return reps;
}

ConfidenceReport count_report(const Dataset& dataset, const BootstrapConfig& config,
                              const std::vector<Replicate>& reps) {
    ConfidenceReport report;
    report.method = method_name(config.method);
    report.m = config.m;
    report.variables = dataset.variables;
    report.kinds = config.kinds;
    std::map<Feature, int> counts;
    for (const auto& rep : reps)
        for (const auto& f : rep.features) ++counts[f];
    for (const auto& [f, c] : counts)
        report.confidences[f] = static_cast<double>(c) / config.m;
    return report;
}

}  // namespace

ConfidenceReport nonparametric_bootstrap(const Dataset& dataset,
                                         const BootstrapConfig& config) {
    const auto reps = run_replicates(dataset, config, nullptr, false);
    return count_report(dataset, config, reps);
}

ConfidenceReport parametric_bootstrap(const Dataset& dataset,
                                      const BootstrapConfig& config) {
    SearchConfig sc = config.search;
    sc.seed = derive_seed(config.seed, 0);
    const Dag g0 = hill_climb(dataset, sc);
    const BayesianNetwork generator = fit_parameters(g0, dataset, config.search.ess);
    const auto reps = run_replicates(dataset, config, &generator, false);
    return count_report(dataset, config, reps);
}

std::vector<double> posterior_weights(const std::vector<double>& scores) {
    if (scores.empty()) throw UsageError("cannot normalize an empty score list");
    double max_score = -std::numeric_limits<double>::infinity();
    for (double s : scores) max_score = std::max(max_score, s);
    double normalizer = 0.0;
    for (double s : scores) normalizer += std::exp(s - max_score);
    const double log_z = max_score + std::log(normalizer);
    std::vector<double> weights;
    weights.reserve(scores.size());
    for (double s : scores) weights.push_back(std::exp(s - log_z));
    return weights;
}

ConfidenceReport bayesian_weighted_confidence(const Dataset& dataset,
                                              const BootstrapConfig& config) {
    const auto reps = run_replicates(dataset, config, nullptr, true);

    // One entry per distinct structure; duplicates would otherwise be
    // weighted by both frequency and posterior.
    std::unordered_map<std::string, std::size_t> seen;
    std::vector<const Replicate*> distinct;
    for (const auto& rep : reps) {
        const std::string key = rep.dag.canonical_key();
        if (seen.emplace(key, distinct.size()).second) distinct.push_back(&rep);
    }

    std::vector<double> distinct_scores;
    distinct_scores.reserve(distinct.size());
    for (const auto* rep : distinct) distinct_scores.push_back(rep->score);
    const std::vector<double> weights = posterior_weights(distinct_scores);

    ConfidenceReport report;
    report.method = method_name(BootstrapMethod::BayesianWeighted);
    report.m = config.m;
    report.variables = dataset.variables;
    report.kinds = config.kinds;
    for (const auto& rep : reps) report.replicate_scores.push_back(rep.score);
    std::map<Feature, double> acc;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        for (const auto& f : distinct[i]->features) acc[f] += weights[i];
    }
    for (auto& [f, c] : acc) report.confidences[f] = std::min(c, 1.0);
    return report;
}

ConfidenceReport run_bootstrap(const Dataset& dataset, const BootstrapConfig& config) {
    switch (config.method) {
        case BootstrapMethod::NonParametric: return nonparametric_bootstrap(dataset, config);
        case BootstrapMethod::Parametric: return parametric_bootstrap(dataset, config);
        case BootstrapMethod::BayesianWeighted:
            return bayesian_weighted_confidence(dataset, config);
    }
    throw InternalError("unknown bootstrap method");
}

DerivedConstraints derive_constraints(const ConfidenceReport& report,
                                      double order_threshold, double markov_threshold) {
    const int n = static_cast<int>(report.variables.size());
    DerivedConstraints out;

    // Candidate orders, strictly above the threshold, processed in
    // descending confidence; any candidate closing a precedence cycle is
    // dropped (equivalently: cycles shed their lowest-confidence members).
    struct Candidate {
        Feature f;
        double conf;
    };
    std::vector<Candidate> candidates;
    for (const auto& [f, conf] : report.confidences) {
        if (f.kind == FeatureKind::AncestorOrder && conf > order_threshold)
            candidates.push_back({f, conf});
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.conf > b.conf; });

    std::vector<std::vector<int>> succ(n);
    auto precedes = [&](int from, int to) {
        std::vector<char> visited(n, 0);
        std::vector<int> stack = {from};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (v == to) return true;
            for (int s : succ[v]) {
                if (!visited[s]) {
                    visited[s] = 1;
                    stack.push_back(s);
                }
            }
        }
        return false;
    };
    for (const auto& c : candidates) {
        if (precedes(c.f.y, c.f.x)) {
            out.dropped_orders.emplace_back(c.f.x, c.f.y);
        } else {
            out.constraints.required_orders.insert({c.f.x, c.f.y});
            succ[c.f.x].push_back(c.f.y);
        }
    }

    std::reverse(out.dropped_orders.begin(), out.dropped_orders.end());

    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            const double conf =
                report.confidence(Feature::make(FeatureKind::MarkovNeighbor, x, y));
            if (conf < markov_threshold) {
                out.constraints.forbidden_parents.insert({x, y});
                out.constraints.forbidden_parents.insert({y, x});
            }
        }
    }
    return out;
}

}  // namespace bnboot
