#ifndef BNBOOT_PDAG_HPP
#define BNBOOT_PDAG_HPP

#include <array>
#include <set>
#include <utility>
#include <vector>

#include "bnboot/types.hpp"

namespace bnboot {

/// Completed partially directed graph of an equivalence class. Directed
/// edges are compelled; undirected edges are reversible within the class.
struct Pdag {
    std::vector<Variable> variables;
    std::set<std::pair<int, int>> directed_edges;    // (from, to)
    std::set<std::pair<int, int>> undirected_edges;  // stored with first < second

    int num_variables() const { return static_cast<int>(variables.size()); }
    bool has_directed(int from, int to) const {
        return directed_edges.count({from, to}) > 0;
    }
    bool has_undirected(int a, int b) const {
        if (a > b) std::swap(a, b);
        return undirected_edges.count({a, b}) > 0;
    }
};

/// Completed PDAG of the DAG's equivalence class (compelled-edge labelling).
Pdag dag_to_pdag(const Dag& dag);

/// True iff the DAGs share skeleton and v-structures.
bool is_equivalent(const Dag& d1, const Dag& d2);

/// All Z with a nonempty directed path Z -> ... -> x; undirected edges are
/// not traversed.
std::set<int> pdag_ancestors(const Pdag& pdag, int x);

/// Variables adjacent to x plus those sharing a child with x. Invariant
/// across equivalence classes.
std::set<int> markov_neighbors(const Dag& dag, int x);

/// The v-structures of a DAG: tuples (a, b, c) with a->c<-b, a < b, and
/// a, b non-adjacent.
std::set<std::array<int, 3>> v_structures(const Dag& dag);

}  // namespace bnboot

#endif
