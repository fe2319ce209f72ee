#ifndef BNBOOT_SEARCH_HPP
#define BNBOOT_SEARCH_HPP

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "bnboot/scoring.hpp"
#include "bnboot/types.hpp"

namespace bnboot {

enum class MoveKind { AddArc, DeleteArc, ReverseArc };

struct Move {
    MoveKind kind;
    int source;
    int target;

    /// True iff `other` undoes this move (re-add of a delete, re-delete of
    /// an add, back-reversal of a reversal).
    bool reverses(const Move& other) const;

    bool operator==(const Move& o) const = default;
    bool operator<(const Move& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (source != o.source) return source < o.source;
        return target < o.target;
    }
};

/// Structural prior knowledge fed into search. required_orders (X, Y) means
/// Y must never become an ancestor of X; forbidden_parents (Y, X) means Y
/// may not be a parent of X.
struct Constraints {
    std::set<std::pair<int, int>> required_orders;
    std::set<std::pair<int, int>> forbidden_parents;

    bool empty() const { return required_orders.empty() && forbidden_parents.empty(); }

    /// Throws UsageError if required_orders, viewed as a relation, is cyclic.
    void validate(int num_variables) const;
};

struct SearchConfig {
    double ess = 5.0;
    int max_restarts = 10;
    int perturbation_size = 20;
    int tabu_length = 100;
    int max_parents = -1;  // -1 = unlimited
    std::uint64_t seed = 0;
};

/// All moves that keep the graph acyclic and constraint-satisfying, sorted
/// by (kind, source, target).
std::vector<Move> legal_moves(const Dag& dag, const Constraints& constraints,
                              int max_parents = -1);

/// Applies a legal move to a copy; throws UsageError on an illegal move.
Dag apply_move(const Dag& dag, const Move& move);

/// True iff no forbidden parent arc is present and no required order is
/// violated by ancestry.
bool satisfies(const Dag& dag, const Constraints& constraints);

/// Greedy hill-climbing with a TABU list and random-restart perturbation.
/// Returns the best structure seen across restarts; deterministic given the
/// config seed.
Dag hill_climb(const Dataset& dataset, const SearchConfig& config,
               const Constraints& constraints = {});

/// As above, also reporting the achieved BDe score.
Dag hill_climb(const Dataset& dataset, const SearchConfig& config,
               const Constraints& constraints, double* score_out);

/// Exact best structure with in-degree <= 1: maximum-weight spanning forest
/// over positive pairwise score gains, oriented outward from the
/// lowest-index node of each tree.
Dag learn_tree(const Dataset& dataset, double ess);

}  // namespace bnboot

#endif
