#include "bnboot/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace bnboot {

void validate_domain(const std::vector<Variable>& variables) {
    std::set<std::string> names;
    for (const auto& v : variables) {
        if (v.arity() < 2)
            throw UsageError("variable '" + v.name + "' must have arity >= 2");
        if (!names.insert(v.name).second)
            throw UsageError("duplicate variable name '" + v.name + "'");
        std::set<std::string> states(v.states.begin(), v.states.end());
        if (states.size() != v.states.size())
            throw UsageError("duplicate state label in variable '" + v.name + "'");
    }
}

bool same_domain(const std::vector<Variable>& a, const std::vector<Variable>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].name != b[i].name || a[i].states != b[i].states) return false;
    }
    return true;
}

int Dag::num_edges() const {
    int total = 0;
    for (const auto& ps : parents) total += static_cast<int>(ps.size());
    return total;
}

bool Dag::has_edge(int parent, int child) const {
    const auto& ps = parents[child];
    return std::binary_search(ps.begin(), ps.end(), parent);
}

void Dag::add_edge(int parent, int child) {
    auto& ps = parents[child];
    ps.insert(std::upper_bound(ps.begin(), ps.end(), parent), parent);
}

void Dag::remove_edge(int parent, int child) {
    auto& ps = parents[child];
    auto it = std::lower_bound(ps.begin(), ps.end(), parent);
    if (it == ps.end() || *it != parent)
        throw UsageError("edge to remove is not present");
    ps.erase(it);
}

std::vector<std::vector<int>> Dag::children_lists() const {
    std::vector<std::vector<int>> children(variables.size());
    for (int c = 0; c < num_variables(); ++c)
        for (int p : parents[c]) children[p].push_back(c);
    return children;
}

void Dag::validate() const {
    const int n = num_variables();
    if (static_cast<int>(parents.size()) != n)
        throw UsageError("parent list count does not match variable count");
    for (int c = 0; c < n; ++c) {
        for (int p : parents[c]) {
            if (p < 0 || p >= n) throw UsageError("parent index out of range");
            if (p == c) throw UsageError("self-parent on variable " + variables[c].name);
        }
    }
    // Kahn's algorithm; leftover nodes witness a cycle.
    std::vector<int> indegree(n);
    for (int c = 0; c < n; ++c) indegree[c] = static_cast<int>(parents[c].size());
    auto children = children_lists();
    std::vector<int> queue;
    for (int i = 0; i < n; ++i)
        if (indegree[i] == 0) queue.push_back(i);
    int visited = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++visited;
        for (int c : children[v])
            if (--indegree[c] == 0) queue.push_back(c);
    }
    if (visited != n) {
        std::ostringstream oss;
        oss << "cycle detected among variables:";
        for (int i = 0; i < n; ++i)
            if (indegree[i] > 0) oss << ' ' << variables[i].name;
        throw UsageError(oss.str());
    }
}

std::string Dag::canonical_key() const {
    std::ostringstream oss;
    for (std::size_t c = 0; c < parents.size(); ++c) {
        oss << c << ':';
        for (int p : parents[c]) oss << p << ',';
        oss << ';';
    }
    return oss.str();
}

bool Dag::operator==(const Dag& other) const {
    return same_domain(variables, other.variables) && parents == other.parents;
}

long long parent_config_count(const Dag& dag, int child) {
    long long q = 1;
    for (int p : dag.parents[child]) {
        q *= dag.variables[p].arity();
        if (q > (1LL << 40))
            throw UsageError("parent configuration space too large for variable " +
                             dag.variables[child].name);
    }
    return q;
}

long long parent_config_index(const Dag& dag, int child, const std::vector<int>& row) {
    long long idx = 0;
    for (int p : dag.parents[child]) idx = idx * dag.variables[p].arity() + row[p];
    return idx;
}

void BayesianNetwork::validate() const {
    structure.validate();
    const int n = structure.num_variables();
    if (static_cast<int>(parameters.tables.size()) != n)
        throw UsageError("parameter table count does not match variable count");
    for (int i = 0; i < n; ++i) {
        const long long q = parent_config_count(structure, i);
        const int r = structure.variables[i].arity();
        const auto& table = parameters.tables[i];
        if (static_cast<long long>(table.size()) != q)
            throw UsageError("wrong number of parent configurations for " +
                             structure.variables[i].name);
        for (const auto& dist : table) {
            if (static_cast<int>(dist.size()) != r)
                throw UsageError("distribution length mismatch for " +
                                 structure.variables[i].name);
            double sum = 0.0;
            for (double p : dist) {
                if (p < 0.0 || p > 1.0)
                    throw UsageError("probability out of [0,1] in table for " +
                                     structure.variables[i].name);
                sum += p;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw UsageError("distribution does not sum to 1 in table for " +
                                 structure.variables[i].name);
        }
    }
}

void Dataset::validate() const {
    const int n = num_variables();
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n)
            throw UsageError("incomplete data row");
        for (int i = 0; i < n; ++i) {
            if (row[i] < 0 || row[i] >= variables[i].arity())
                throw UsageError("state index out of range for variable " +
                                 variables[i].name);
        }
    }
}

}  // namespace bnboot
