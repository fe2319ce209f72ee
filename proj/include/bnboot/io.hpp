#ifndef BNBOOT_IO_HPP
#define BNBOOT_IO_HPP

#include <string>
#include <vector>

#include "bnboot/bootstrap.hpp"
#include "bnboot/eval.hpp"
#include "bnboot/pdag.hpp"
#include "bnboot/types.hpp"

namespace bnboot {

// Network JSON: {"variables": [{"name", "states"}], "edges": [[parent, child]],
// "cpts": {name: [[p...], ...]}} with parent configurations in row-major
// order, earlier-listed parents varying slowest.
BayesianNetwork read_network(const std::string& path);
void write_network(const std::string& path, const BayesianNetwork& bn,
                   const double* score_metadata = nullptr);

/// Same JSON layout with an `undirected_edges` list alongside `edges`.
void write_pdag(const std::string& path, const Pdag& pdag);

// Dataset CSV: first line variable names, then one state label per cell.
Dataset read_dataset(const std::string& path);
void write_dataset(const std::string& path, const Dataset& dataset);

// Report CSV: method,kind,x,y,confidence over the full tracked-kind feature
// universe, 6 decimal digits.
void write_report(const std::string& path, const ConfidenceReport& report);
ConfidenceReport read_report(const std::string& path);

// Constraints JSON: name-based required_orders / forbidden_parents plus the
// orders dropped for cyclicity.
void write_constraints(const std::string& path, const DerivedConstraints& derived,
                       const std::vector<Variable>& variables);
Constraints read_constraints(const std::string& path,
                             const std::vector<Variable>& variables);

// Experiment tables: size,threshold,kind,metric,mean,sd (recovery) or
// size,arm,metric,mean,sd (constraint experiment).
void write_recovery_rows(const std::string& path, const std::vector<MetricRow>& rows);
void write_constraint_rows(const std::string& path, const std::vector<MetricRow>& rows);

/// Run manifest JSON: command, resolved configuration, inputs/outputs.
void write_manifest(const std::string& path, const std::string& command,
                    const std::string& config_json);

}  // namespace bnboot

#endif
