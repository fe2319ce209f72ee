#ifndef BNBOOT_TYPES_HPP
#define BNBOOT_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bnboot {

// Error taxonomy mirrored by the C API / CLI exit codes.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A categorical variable: a name and an ordered list of state labels.
struct Variable {
    std::string name;
    std::vector<std::string> states;

    int arity() const { return static_cast<int>(states.size()); }
};

/// Checks name/state uniqueness and arity >= 2; throws UsageError on violation.
void validate_domain(const std::vector<Variable>& variables);

/// True iff the two domains have identical names, state lists, and order.
bool same_domain(const std::vector<Variable>& a, const std::vector<Variable>& b);

/// Directed acyclic graph over a variable domain. Parent lists are kept
/// sorted ascending; acyclicity is enforced by validate() and by the search
/// operators, not by the raw struct.
struct Dag {
    std::vector<Variable> variables;
    std::vector<std::vector<int>> parents;  // parents[i] sorted ascending

    Dag() = default;
    explicit Dag(std::vector<Variable> vars)
        : variables(std::move(vars)), parents(variables.size()) {}

    int num_variables() const { return static_cast<int>(variables.size()); }
    int num_edges() const;
    bool has_edge(int parent, int child) const;
    bool adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }
    void add_edge(int parent, int child);
    void remove_edge(int parent, int child);
    std::vector<std::vector<int>> children_lists() const;

    /// Throws UsageError on self-loops, bad indices, or a cycle.
    void validate() const;

    /// Stable identity string for deduplication (domain order + parent sets).
    std::string canonical_key() const;

    bool operator==(const Dag& other) const;
};

/// Conditional probability tables. tables[i][j][k] = P(X_i = k | config j),
/// where parent configurations are indexed row-major over the sorted parent
/// list with earlier-listed parents varying slowest.
struct Parameters {
    std::vector<std::vector<std::vector<double>>> tables;
};

struct BayesianNetwork {
    Dag structure;
    Parameters parameters;

    /// Throws UsageError if table shapes or normalization do not match the DAG.
    void validate() const;
};

/// Complete categorical data: one state index per variable per row.
struct Dataset {
    std::vector<Variable> variables;
    std::vector<std::vector<int>> rows;

    int num_variables() const { return static_cast<int>(variables.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }

    /// Throws UsageError on incomplete rows or out-of-range state indices.
    void validate() const;
};

/// Number of parent configurations q_i = prod of parent arities (1 if none).
long long parent_config_count(const Dag& dag, int child);

/// Row-major parent configuration index for one data row.
long long parent_config_index(const Dag& dag, int child, const std::vector<int>& row);

}  // namespace bnboot

#endif
