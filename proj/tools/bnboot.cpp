// bnboot command-line front end. Links only the C API; all output files are
// pure functions of (inputs, flags, seed) and every command drops a manifest
// next to its output.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bnboot.h"

namespace {

using nlohmann::json;

int fail(int code) {
    std::cerr << "bnboot: " << bnb_last_error() << '\n';
    return code;
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const json& config) {
    json manifest;
    manifest["command"] = command;
    manifest["tool_version"] = "0.1.0";
    manifest["config"] = config;
    std::ofstream out(out_path + ".manifest.json");
    out << manifest.dump(2) << '\n';
}

struct SearchFlags {
    double ess = 5.0;
    int restarts = 10;
    int perturbation = 20;
    int tabu = 100;
    int max_parents = -1;
    std::uint64_t seed = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--ess", ess, "equivalent sample size");
        cmd->add_option("--restarts", restarts, "random restarts");
        cmd->add_option("--perturbation", perturbation, "random arc changes per restart");
        cmd->add_option("--tabu", tabu, "TABU list length");
        cmd->add_option("--max-parents", max_parents, "parent limit (-1 = unlimited)");
        cmd->add_option("--seed", seed, "RNG seed");
    }

    void apply(bnb_search_options* opts) const {
        opts->ess = ess;
        opts->max_restarts = restarts;
        opts->perturbation_size = perturbation;
        opts->tabu_length = tabu;
        opts->max_parents = max_parents;
        opts->seed = seed;
    }

    json to_json() const {
        return {{"ess", ess},           {"restarts", restarts},
                {"perturbation", perturbation}, {"tabu", tabu},
                {"max_parents", max_parents},   {"seed", seed}};
    }
};

int parse_kinds(const std::string& spec) {
    if (spec == "all") return BNB_KIND_ALL;
    int mask = 0;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "edge") mask |= BNB_KIND_DIRECTED_EDGE | BNB_KIND_UNDIRECTED_EDGE;
        else if (item == "mb") mask |= BNB_KIND_MARKOV_NEIGHBOR;
        else if (item == "order") mask |= BNB_KIND_ANCESTOR_ORDER;
        else {
            std::cerr << "bnboot: unknown feature kind '" << item << "'\n";
            std::exit(1);
        }
    }
    return mask;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian network structure learning with bootstrap confidence"};
    app.require_subcommand(1);

    // sample
    auto* sample = app.add_subcommand("sample", "draw a dataset from a network");
    std::string sample_network, sample_out;
    int sample_count = 1000;
    std::uint64_t sample_seed = 0;
    sample->add_option("--network", sample_network, "network JSON")->required();
    sample->add_option("--count", sample_count, "rows to draw")->required();
    sample->add_option("--seed", sample_seed, "RNG seed");
    sample->add_option("--out", sample_out, "output CSV")->required();

    // learn
    auto* learn = app.add_subcommand("learn", "learn a network from data");
    std::string learn_data, learn_out, learn_constraints;
    bool learn_tree_mode = false;
    SearchFlags learn_flags;
    learn->add_option("--data", learn_data, "dataset CSV")->required();
    learn->add_option("--out", learn_out, "output network JSON")->required();
    learn->add_option("--constraints", learn_constraints, "constraints JSON");
    learn->add_flag("--tree", learn_tree_mode, "exact in-degree-1 learner");
    learn_flags.attach(learn);

    // bootstrap
    auto* bootstrap = app.add_subcommand("bootstrap", "estimate feature confidences");
    std::string boot_data, boot_out, boot_method = "np", boot_kinds = "all";
    int boot_m = 100, boot_jobs = 1;
    std::uint64_t boot_seed = 0;
    SearchFlags boot_flags;
    bootstrap->add_option("--data", boot_data, "dataset CSV")->required();
    bootstrap->add_option("--method", boot_method, "np | p | bayes");
    bootstrap->add_option("--m", boot_m, "replicate count");
    bootstrap->add_option("--jobs", boot_jobs, "replicate parallelism");
    bootstrap->add_option("--boot-seed", boot_seed, "bootstrap RNG seed");
    bootstrap->add_option("--kinds", boot_kinds, "all | comma list of edge,mb,order");
    bootstrap->add_option("--out", boot_out, "output report CSV")->required();
    boot_flags.attach(bootstrap);

    // constrain
    auto* constrain = app.add_subcommand("constrain", "derive search constraints");
    std::string con_report, con_out;
    double con_order = 0.8, con_markov = 0.05;
    constrain->add_option("--report", con_report, "confidence report CSV")->required();
    constrain->add_option("--order-threshold", con_order, "required-order threshold");
    constrain->add_option("--markov-threshold", con_markov, "forbidden-parent threshold");
    constrain->add_option("--out", con_out, "output constraints JSON")->required();

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "golden-model experiments");
    std::string eval_golden, eval_out, eval_experiment = "recovery",
                eval_method = "np";
    std::vector<int> eval_sizes{100, 250, 500, 1000};
    std::vector<double> eval_thresholds{0.95, 0.8, 0.75, 0.5};
    int eval_replicates = 10, eval_m = 100, eval_jobs = 1, eval_test_size = 10000;
    double eval_order = 0.8, eval_markov = 0.05;
    std::uint64_t eval_seed = 0;
    SearchFlags eval_flags;
    evaluate->add_option("--golden", eval_golden, "golden network JSON")->required();
    evaluate->add_option("--experiment", eval_experiment, "recovery | constraints");
    evaluate->add_option("--sizes", eval_sizes, "training sizes")->delimiter(',');
    evaluate->add_option("--thresholds", eval_thresholds, "confidence thresholds")
        ->delimiter(',');
    evaluate->add_option("--replicates", eval_replicates, "datasets per size");
    evaluate->add_option("--m", eval_m, "bootstrap replicates");
    evaluate->add_option("--method", eval_method, "np | p | bayes (recovery only)");
    evaluate->add_option("--jobs", eval_jobs, "replicate parallelism");
    evaluate->add_option("--test-size", eval_test_size, "held-out test rows");
    evaluate->add_option("--order-threshold", eval_order, "required-order threshold");
    evaluate->add_option("--markov-threshold", eval_markov, "forbidden-parent threshold");
    evaluate->add_option("--eval-seed", eval_seed, "experiment RNG seed");
    evaluate->add_option("--out", eval_out, "output CSV")->required();
    eval_flags.attach(evaluate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    if (sample->parsed()) {
        bnb_network* net = nullptr;
        int rc = bnb_network_load(sample_network.c_str(), &net);
        if (rc != BNB_OK) return fail(rc);
        bnb_dataset* ds = nullptr;
        rc = bnb_sample(net, sample_count, sample_seed, &ds);
        if (rc == BNB_OK) rc = bnb_dataset_save(ds, sample_out.c_str());
        bnb_dataset_free(ds);
        bnb_network_free(net);
        if (rc != BNB_OK) return fail(rc);
        write_manifest(sample_out, "sample",
                       {{"network", sample_network},
                        {"count", sample_count},
                        {"seed", sample_seed},
                        {"out", sample_out}});
        return 0;
    }

    if (learn->parsed()) {
        bnb_dataset* ds = nullptr;
        int rc = bnb_dataset_load(learn_data.c_str(), &ds);
        if (rc != BNB_OK) return fail(rc);
        bnb_constraints* cs = nullptr;
        if (!learn_constraints.empty()) {
            rc = bnb_constraints_load(learn_constraints.c_str(), ds, &cs);
            if (rc != BNB_OK) {
                bnb_dataset_free(ds);
                return fail(rc);
            }
        }
        bnb_search_options opts;
        bnb_search_options_init(&opts);
        learn_flags.apply(&opts);
        opts.tree = learn_tree_mode ? 1 : 0;
        bnb_network* net = nullptr;
        double score = 0.0;
        rc = bnb_learn(ds, &opts, cs, &net, &score);
        if (rc == BNB_OK) rc = bnb_network_save(net, learn_out.c_str());
        bnb_network_free(net);
        bnb_constraints_free(cs);
        bnb_dataset_free(ds);
        if (rc != BNB_OK) return fail(rc);
        json config = learn_flags.to_json();
        config["data"] = learn_data;
        config["constraints"] = learn_constraints;
        config["tree"] = learn_tree_mode;
        config["out"] = learn_out;
        config["score"] = score;
        write_manifest(learn_out, "learn", config);
        std::cout << "score " << score << '\n';
        return 0;
    }

    if (bootstrap->parsed()) {
        bnb_dataset* ds = nullptr;
        int rc = bnb_dataset_load(boot_data.c_str(), &ds);
        if (rc != BNB_OK) return fail(rc);
        bnb_bootstrap_options opts;
        bnb_bootstrap_options_init(&opts);
        opts.m = boot_m;
        opts.jobs = boot_jobs;
        opts.seed = boot_seed;
        opts.kinds = parse_kinds(boot_kinds);
        boot_flags.apply(&opts.search);
        if (boot_method == "np") opts.method = BNB_METHOD_NONPARAMETRIC;
        else if (boot_method == "p") opts.method = BNB_METHOD_PARAMETRIC;
        else if (boot_method == "bayes") opts.method = BNB_METHOD_BAYESIAN;
        else {
            std::cerr << "bnboot: unknown method '" << boot_method << "'\n";
            bnb_dataset_free(ds);
            return 1;
        }
        bnb_report* report = nullptr;
        rc = bnb_bootstrap(ds, &opts, &report);
        if (rc == BNB_OK) rc = bnb_report_save(report, boot_out.c_str());
        bnb_report_free(report);
        bnb_dataset_free(ds);
        if (rc != BNB_OK) return fail(rc);
        json config = boot_flags.to_json();
        config["data"] = boot_data;
        config["method"] = boot_method;
        config["m"] = boot_m;
        config["jobs"] = boot_jobs;
        config["boot_seed"] = boot_seed;
        config["kinds"] = boot_kinds;
        config["out"] = boot_out;
        write_manifest(boot_out, "bootstrap", config);
        return 0;
    }

    if (constrain->parsed()) {
        bnb_report* report = nullptr;
        int rc = bnb_report_load(con_report.c_str(), &report);
        if (rc != BNB_OK) return fail(rc);
        bnb_constraints* cs = nullptr;
        rc = bnb_derive_constraints(report, con_order, con_markov, &cs);
        if (rc == BNB_OK) rc = bnb_constraints_save(cs, con_out.c_str());
        bnb_constraints_free(cs);
        bnb_report_free(report);
        if (rc != BNB_OK) return fail(rc);
        write_manifest(con_out, "constrain",
                       {{"report", con_report},
                        {"order_threshold", con_order},
                        {"markov_threshold", con_markov},
                        {"out", con_out}});
        return 0;
    }

    // evaluate
    bnb_network* golden = nullptr;
    int rc = bnb_network_load(eval_golden.c_str(), &golden);
    if (rc != BNB_OK) return fail(rc);
    bnb_eval_options opts;
    bnb_eval_options_init(&opts);
    opts.sizes = eval_sizes.data();
    opts.num_sizes = static_cast<int>(eval_sizes.size());
    opts.thresholds = eval_thresholds.data();
    opts.num_thresholds = static_cast<int>(eval_thresholds.size());
    opts.replicates = eval_replicates;
    opts.test_size = eval_test_size;
    opts.order_threshold = eval_order;
    opts.markov_threshold = eval_markov;
    opts.seed = eval_seed;
    opts.bootstrap.m = eval_m;
    opts.bootstrap.jobs = eval_jobs;
    if (eval_method == "np") opts.bootstrap.method = BNB_METHOD_NONPARAMETRIC;
    else if (eval_method == "p") opts.bootstrap.method = BNB_METHOD_PARAMETRIC;
    else if (eval_method == "bayes") opts.bootstrap.method = BNB_METHOD_BAYESIAN;
    else {
        std::cerr << "bnboot: unknown method '" << eval_method << "'\n";
        bnb_network_free(golden);
        return 1;
    }
    eval_flags.apply(&opts.bootstrap.search);
    if (eval_experiment == "recovery") {
        rc = bnb_run_recovery_experiment(golden, &opts, eval_out.c_str());
    } else if (eval_experiment == "constraints") {
        rc = bnb_run_constraint_experiment(golden, &opts, eval_out.c_str());
    } else {
        std::cerr << "bnboot: unknown experiment '" << eval_experiment << "'\n";
        bnb_network_free(golden);
        return 1;
    }
    bnb_network_free(golden);
    if (rc != BNB_OK) return fail(rc);
    json config = eval_flags.to_json();
    config["golden"] = eval_golden;
    config["experiment"] = eval_experiment;
    config["sizes"] = eval_sizes;
    config["thresholds"] = eval_thresholds;
    config["replicates"] = eval_replicates;
    config["m"] = eval_m;
    config["method"] = eval_method;
    config["jobs"] = eval_jobs;
    config["test_size"] = eval_test_size;
    config["order_threshold"] = eval_order;
    config["markov_threshold"] = eval_markov;
    config["eval_seed"] = eval_seed;
    config["out"] = eval_out;
    write_manifest(eval_out, "evaluate", config);
    return 0;
}
