/* C API for the bnboot library: Bayesian network structure learning with
 * bootstrap confidence estimation. Opaque handles, integer error codes.
 *
 * Every function returning int yields BNB_OK (0) on success; on failure it
 * returns an error code and leaves a message retrievable (per thread) via
 * bnb_last_error(). Out-parameters are untouched on failure.
 */
#ifndef BNBOOT_H
#define BNBOOT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    BNB_OK = 0,
    BNB_EUSAGE = 1,   /* invalid arguments or configuration */
    BNB_EFORMAT = 2,  /* unreadable or malformed input file */
    BNB_EINTERNAL = 3 /* invariant violation inside the library */
};

enum {
    BNB_METHOD_NONPARAMETRIC = 0,
    BNB_METHOD_PARAMETRIC = 1,
    BNB_METHOD_BAYESIAN = 2
};

/* Feature kind bitmask for selecting what a bootstrap run tracks. */
enum {
    BNB_KIND_DIRECTED_EDGE = 1,
    BNB_KIND_UNDIRECTED_EDGE = 2,
    BNB_KIND_MARKOV_NEIGHBOR = 4,
    BNB_KIND_ANCESTOR_ORDER = 8,
    BNB_KIND_ALL = 15
};

typedef struct bnb_network bnb_network;
typedef struct bnb_dataset bnb_dataset;
typedef struct bnb_report bnb_report;
typedef struct bnb_constraints bnb_constraints;

typedef struct bnb_search_options {
    double ess;            /* equivalent sample size, default 5 */
    int max_restarts;      /* default 10 */
    int perturbation_size; /* random arc changes per restart, default 20 */
    int tabu_length;       /* default 100 */
    int max_parents;       /* -1 = unlimited */
    uint64_t seed;
    int tree;              /* nonzero: exact in-degree-1 learner instead */
} bnb_search_options;

typedef struct bnb_bootstrap_options {
    int m;      /* replicate count, default 100 */
    int method; /* BNB_METHOD_* */
    int kinds;  /* BNB_KIND_* bitmask */
    int jobs;   /* replicate parallelism, default 1 */
    uint64_t seed;
    bnb_search_options search;
} bnb_bootstrap_options;

typedef struct bnb_eval_options {
    const int* sizes;
    int num_sizes;
    const double* thresholds;
    int num_thresholds;
    int replicates;
    int test_size;           /* constraint experiment hold-out size */
    double order_threshold;  /* default 0.8 */
    double markov_threshold; /* default 0.05 */
    uint64_t seed;
    bnb_bootstrap_options bootstrap;
} bnb_eval_options;

/* Fill option structs with the library defaults. */
void bnb_search_options_init(bnb_search_options* opts);
void bnb_bootstrap_options_init(bnb_bootstrap_options* opts);
void bnb_eval_options_init(bnb_eval_options* opts);

/* Message describing the most recent failure on this thread. */
const char* bnb_last_error(void);

/* --- networks ----------------------------------------------------------- */
int bnb_network_load(const char* path, bnb_network** out);
int bnb_network_save(const bnb_network* network, const char* path);
void bnb_network_free(bnb_network* network);
int bnb_network_num_variables(const bnb_network* network);
int bnb_network_num_edges(const bnb_network* network);

/* Write the completed PDAG of the network's structure (JSON with `edges`
 * and `undirected_edges`). Counts are optional out-parameters. */
int bnb_network_pdag(const bnb_network* network, const char* out_path,
                     int* num_directed, int* num_undirected);

/* --- datasets ----------------------------------------------------------- */
int bnb_dataset_load(const char* path, bnb_dataset** out);
int bnb_dataset_save(const bnb_dataset* dataset, const char* path);
void bnb_dataset_free(bnb_dataset* dataset);
int bnb_dataset_num_rows(const bnb_dataset* dataset);
int bnb_dataset_num_variables(const bnb_dataset* dataset);

/* Ancestral sampling from the network. */
int bnb_sample(const bnb_network* network, int count, uint64_t seed,
               bnb_dataset** out);

/* --- learning ----------------------------------------------------------- */
/* Learns a structure (hill-climbing, or the exact tree learner when
 * opts->tree is set), fits posterior-mean parameters, and returns the
 * resulting network. constraints may be NULL. score_out may be NULL. */
int bnb_learn(const bnb_dataset* dataset, const bnb_search_options* opts,
              const bnb_constraints* constraints, bnb_network** out,
              double* score_out);

/* --- bootstrap confidence ---------------------------------------------- */
int bnb_bootstrap(const bnb_dataset* dataset, const bnb_bootstrap_options* opts,
                  bnb_report** out);
int bnb_report_save(const bnb_report* report, const char* path);
int bnb_report_load(const char* path, bnb_report** out);
void bnb_report_free(bnb_report* report);

/* Confidence of one feature; kind is a single BNB_KIND_ bit, x and y are
 * variable names. */
int bnb_report_confidence(const bnb_report* report, int kind, const char* x,
                          const char* y, double* out);

/* --- constraints -------------------------------------------------------- */
int bnb_derive_constraints(const bnb_report* report, double order_threshold,
                           double markov_threshold, bnb_constraints** out);
int bnb_constraints_save(const bnb_constraints* constraints, const char* path);
/* Loading resolves variable names against the dataset the constraints will
 * be used with. */
int bnb_constraints_load(const char* path, const bnb_dataset* dataset,
                         bnb_constraints** out);
void bnb_constraints_free(bnb_constraints* constraints);

/* --- experiments -------------------------------------------------------- */
/* Golden-model feature recovery; writes size,threshold,kind,metric,mean,sd. */
int bnb_run_recovery_experiment(const bnb_network* golden,
                                const bnb_eval_options* opts, const char* out_csv);
/* Constrained vs. unconstrained learning; writes size,arm,metric,mean,sd. */
int bnb_run_constraint_experiment(const bnb_network* golden,
                                  const bnb_eval_options* opts, const char* out_csv);

#ifdef __cplusplus
}
#endif

#endif /* BNBOOT_H */
