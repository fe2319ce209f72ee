#include "bnboot.h"

#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "bnboot/bootstrap.hpp"
#include "bnboot/core.hpp"
#include "bnboot/eval.hpp"
#include "bnboot/io.hpp"
#include "bnboot/pdag.hpp"
#include "bnboot/scoring.hpp"
#include "bnboot/search.hpp"
#include "bnboot/types.hpp"

using namespace bnboot;

struct bnb_network {
    BayesianNetwork bn;
};
struct bnb_dataset {
    Dataset ds;
};
struct bnb_report {
    ConfidenceReport report;
};
// Constraints are stored name-based so a handle can be applied to any
// dataset sharing the variable names.
struct bnb_constraints {
    std::vector<std::pair<std::string, std::string>> required_orders;
    std::vector<std::pair<std::string, std::string>> forbidden_parents;
    std::vector<std::pair<std::string, std::string>> dropped_orders;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return BNB_OK;
    } catch (const UsageError& e) {
        return fail(BNB_EUSAGE, e.what());
    } catch (const FormatError& e) {
        return fail(BNB_EFORMAT, e.what());
    } catch (const std::exception& e) {
        return fail(BNB_EINTERNAL, e.what());
    }
}

void require(const void* p, const char* what) {
    if (!p) throw UsageError(std::string(what) + " must not be null");
}

std::vector<FeatureKind> kinds_from_mask(int mask) {
    std::vector<FeatureKind> kinds;
    if (mask & BNB_KIND_DIRECTED_EDGE) kinds.push_back(FeatureKind::DirectedEdge);
    if (mask & BNB_KIND_UNDIRECTED_EDGE) kinds.push_back(FeatureKind::UndirectedEdge);
    if (mask & BNB_KIND_MARKOV_NEIGHBOR) kinds.push_back(FeatureKind::MarkovNeighbor);
    if (mask & BNB_KIND_ANCESTOR_ORDER) kinds.push_back(FeatureKind::AncestorOrder);
    if (kinds.empty()) throw UsageError("no feature kinds selected");
    return kinds;
}

SearchConfig to_search_config(const bnb_search_options& opts) {
    SearchConfig sc;
    sc.ess = opts.ess;
    sc.max_restarts = opts.max_restarts;
    sc.perturbation_size = opts.perturbation_size;
    sc.tabu_length = opts.tabu_length;
    sc.max_parents = opts.max_parents;
    sc.seed = opts.seed;
    if (sc.ess <= 0.0) throw UsageError("ess must be positive");
    if (sc.max_restarts < 0 || sc.perturbation_size < 0 || sc.tabu_length < 0)
        throw UsageError("search counts must be >= 0");
    return sc;
}

BootstrapMethod to_method(int method) {
    switch (method) {
        case BNB_METHOD_NONPARAMETRIC: return BootstrapMethod::NonParametric;
        case BNB_METHOD_PARAMETRIC: return BootstrapMethod::Parametric;
        case BNB_METHOD_BAYESIAN: return BootstrapMethod::BayesianWeighted;
    }
    throw UsageError("unknown bootstrap method code");
}

BootstrapConfig to_bootstrap_config(const bnb_bootstrap_options& opts) {
    BootstrapConfig bc;
    bc.m = opts.m;
    bc.method = to_method(opts.method);
    bc.kinds = kinds_from_mask(opts.kinds);
    bc.jobs = opts.jobs;
    bc.seed = opts.seed;
    bc.search = to_search_config(opts.search);
    if (bc.m < 1) throw UsageError("m must be >= 1");
    if (bc.jobs < 1) throw UsageError("jobs must be >= 1");
    return bc;
}

int resolve_name(const std::vector<Variable>& variables, const std::string& name) {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i].name == name) return static_cast<int>(i);
    throw UsageError("constraint references unknown variable '" + name + "'");
}

Constraints resolve_constraints(const bnb_constraints& handle,
                                const std::vector<Variable>& variables) {
    Constraints cs;
    for (const auto& [x, y] : handle.required_orders)
        cs.required_orders.insert({resolve_name(variables, x), resolve_name(variables, y)});
    for (const auto& [p, c] : handle.forbidden_parents)
        cs.forbidden_parents.insert({resolve_name(variables, p), resolve_name(variables, c)});
    return cs;
}

ExperimentSpec to_experiment_spec(const bnb_network* golden,
                                  const bnb_eval_options* opts) {
    ExperimentSpec spec;
    spec.golden = golden->bn;
    if (opts->num_sizes > 0)
        spec.sizes.assign(opts->sizes, opts->sizes + opts->num_sizes);
    if (opts->num_thresholds > 0)
        spec.thresholds.assign(opts->thresholds, opts->thresholds + opts->num_thresholds);
    spec.replicates = opts->replicates;
    spec.bootstrap = to_bootstrap_config(opts->bootstrap);
    spec.kinds = spec.bootstrap.kinds;
    spec.order_threshold = opts->order_threshold;
    spec.markov_threshold = opts->markov_threshold;
    spec.seed = opts->seed;
    if (spec.replicates < 1) throw UsageError("replicates must be >= 1");
    return spec;
}

}  // namespace

extern "C" {

void bnb_search_options_init(bnb_search_options* opts) {
    opts->ess = 5.0;
    opts->max_restarts = 10;
    opts->perturbation_size = 20;
    opts->tabu_length = 100;
    opts->max_parents = -1;
    opts->seed = 0;
    opts->tree = 0;
}

void bnb_bootstrap_options_init(bnb_bootstrap_options* opts) {
    opts->m = 100;
    opts->method = BNB_METHOD_NONPARAMETRIC;
    opts->kinds = BNB_KIND_ALL;
    opts->jobs = 1;
    opts->seed = 0;
    bnb_search_options_init(&opts->search);
}

void bnb_eval_options_init(bnb_eval_options* opts) {
    opts->sizes = nullptr;
    opts->num_sizes = 0;
    opts->thresholds = nullptr;
    opts->num_thresholds = 0;
    opts->replicates = 10;
    opts->test_size = 10000;
    opts->order_threshold = 0.8;
    opts->markov_threshold = 0.05;
    opts->seed = 0;
    bnb_bootstrap_options_init(&opts->bootstrap);
}

const char* bnb_last_error(void) { return g_last_error.c_str(); }

int bnb_network_load(const char* path, bnb_network** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new bnb_network{read_network(path)};
    });
}

int bnb_network_save(const bnb_network* network, const char* path) {
    return guarded([&] {
        require(network, "network");
        require(path, "path");
        write_network(path, network->bn);
    });
}

void bnb_network_free(bnb_network* network) { delete network; }

int bnb_network_num_variables(const bnb_network* network) {
    return network ? network->bn.structure.num_variables() : 0;
}

int bnb_network_num_edges(const bnb_network* network) {
    return network ? network->bn.structure.num_edges() : 0;
}

int bnb_network_pdag(const bnb_network* network, const char* out_path,
                     int* num_directed, int* num_undirected) {
    return guarded([&] {
        require(network, "network");
        const Pdag pdag = dag_to_pdag(network->bn.structure);
        if (out_path) write_pdag(out_path, pdag);
        if (num_directed) *num_directed = static_cast<int>(pdag.directed_edges.size());
        if (num_undirected)
            *num_undirected = static_cast<int>(pdag.undirected_edges.size());
    });
}

int bnb_dataset_load(const char* path, bnb_dataset** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new bnb_dataset{read_dataset(path)};
    });
}

int bnb_dataset_save(const bnb_dataset* dataset, const char* path) {
    return guarded([&] {
        require(dataset, "dataset");
        require(path, "path");
        write_dataset(path, dataset->ds);
    });
}

void bnb_dataset_free(bnb_dataset* dataset) { delete dataset; }

int bnb_dataset_num_rows(const bnb_dataset* dataset) {
    return dataset ? dataset->ds.num_rows() : 0;
}

int bnb_dataset_num_variables(const bnb_dataset* dataset) {
    return dataset ? dataset->ds.num_variables() : 0;
}

int bnb_sample(const bnb_network* network, int count, uint64_t seed,
               bnb_dataset** out) {
    return guarded([&] {
        require(network, "network");
        require(out, "out");
        *out = new bnb_dataset{forward_sample(network->bn, count, seed)};
    });
}

int bnb_learn(const bnb_dataset* dataset, const bnb_search_options* opts,
              const bnb_constraints* constraints, bnb_network** out,
              double* score_out) {
    return guarded([&] {
        require(dataset, "dataset");
        require(opts, "opts");
        require(out, "out");
        const SearchConfig sc = to_search_config(*opts);
        Constraints cs;
        if (constraints) cs = resolve_constraints(*constraints, dataset->ds.variables);
        Dag learned;
        double score = 0.0;
        if (opts->tree) {
            if (!cs.empty())
                throw UsageError("the tree learner does not support constraints");
            learned = learn_tree(dataset->ds, sc.ess);
            ScoreCache cache;
            score = network_score(learned, dataset->ds, sc.ess, cache);
        } else {
            learned = hill_climb(dataset->ds, sc, cs, &score);
        }
        auto fitted = fit_parameters(learned, dataset->ds, sc.ess);
        if (score_out) *score_out = score;
        *out = new bnb_network{std::move(fitted)};
    });
}

int bnb_bootstrap(const bnb_dataset* dataset, const bnb_bootstrap_options* opts,
                  bnb_report** out) {
    return guarded([&] {
        require(dataset, "dataset");
        require(opts, "opts");
        require(out, "out");
        *out = new bnb_report{run_bootstrap(dataset->ds, to_bootstrap_config(*opts))};
    });
}

int bnb_report_save(const bnb_report* report, const char* path) {
    return guarded([&] {
        require(report, "report");
        require(path, "path");
        write_report(path, report->report);
    });
}

int bnb_report_load(const char* path, bnb_report** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new bnb_report{read_report(path)};
    });
}

void bnb_report_free(bnb_report* report) { delete report; }

int bnb_report_confidence(const bnb_report* report, int kind, const char* x,
                          const char* y, double* out) {
    return guarded([&] {
        require(report, "report");
        require(x, "x");
        require(y, "y");
        require(out, "out");
        const auto kinds = kinds_from_mask(kind);
        if (kinds.size() != 1) throw UsageError("kind must be a single BNB_KIND_ bit");
        const int xi = resolve_name(report->report.variables, x);
        const int yi = resolve_name(report->report.variables, y);
        *out = report->report.confidence(Feature::make(kinds[0], xi, yi));
    });
}

int bnb_derive_constraints(const bnb_report* report, double order_threshold,
                           double markov_threshold, bnb_constraints** out) {
    return guarded([&] {
        require(report, "report");
        require(out, "out");
        const DerivedConstraints derived =
            derive_constraints(report->report, order_threshold, markov_threshold);
        auto* handle = new bnb_constraints;
        const auto& vars = report->report.variables;
        for (const auto& [x, y] : derived.constraints.required_orders)
            handle->required_orders.emplace_back(vars[x].name, vars[y].name);
        for (const auto& [p, c] : derived.constraints.forbidden_parents)
            handle->forbidden_parents.emplace_back(vars[p].name, vars[c].name);
        for (const auto& [x, y] : derived.dropped_orders)
            handle->dropped_orders.emplace_back(vars[x].name, vars[y].name);
        *out = handle;
    });
}

int bnb_constraints_save(const bnb_constraints* constraints, const char* path) {
    return guarded([&] {
        require(constraints, "constraints");
        require(path, "path");
        // rebuild an index-based view over the names mentioned
        std::vector<Variable> vars;
        auto intern = [&](const std::string& name) {
            for (std::size_t i = 0; i < vars.size(); ++i)
                if (vars[i].name == name) return static_cast<int>(i);
            vars.push_back({name, {"0", "1"}});
            return static_cast<int>(vars.size() - 1);
        };
        DerivedConstraints derived;
        for (const auto& [x, y] : constraints->required_orders)
            derived.constraints.required_orders.insert({intern(x), intern(y)});
        for (const auto& [p, c] : constraints->forbidden_parents)
            derived.constraints.forbidden_parents.insert({intern(p), intern(c)});
        for (const auto& [x, y] : constraints->dropped_orders)
            derived.dropped_orders.emplace_back(intern(x), intern(y));
        write_constraints(path, derived, vars);
    });
}

int bnb_constraints_load(const char* path, const bnb_dataset* dataset,
                         bnb_constraints** out) {
    return guarded([&] {
        require(path, "path");
        require(dataset, "dataset");
        require(out, "out");
        const Constraints cs = read_constraints(path, dataset->ds.variables);
        auto* handle = new bnb_constraints;
        const auto& vars = dataset->ds.variables;
        for (const auto& [x, y] : cs.required_orders)
            handle->required_orders.emplace_back(vars[x].name, vars[y].name);
        for (const auto& [p, c] : cs.forbidden_parents)
            handle->forbidden_parents.emplace_back(vars[p].name, vars[c].name);
        *out = handle;
    });
}

void bnb_constraints_free(bnb_constraints* constraints) { delete constraints; }

int bnb_run_recovery_experiment(const bnb_network* golden,
                                const bnb_eval_options* opts, const char* out_csv) {
    return guarded([&] {
        require(golden, "golden");
        require(opts, "opts");
        require(out_csv, "out_csv");
        const auto rows = run_recovery_experiment(to_experiment_spec(golden, opts));
        write_recovery_rows(out_csv, rows);
    });
}

int bnb_run_constraint_experiment(const bnb_network* golden,
                                  const bnb_eval_options* opts, const char* out_csv) {
    return guarded([&] {
        require(golden, "golden");
        require(opts, "opts");
        require(out_csv, "out_csv");
        const auto rows = run_constraint_experiment(to_experiment_spec(golden, opts),
                                                    opts->test_size);
        write_constraint_rows(out_csv, rows);
    });
}

}  // extern "C"
