#include "bnboot/search.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "bnboot/rng.hpp"

namespace bnboot {

namespace {

// Is `to` reachable from `from` by a nonempty directed path? An edge equal to
// (skip_from, skip_to) is ignored when skip_from >= 0.
bool reachable(const Dag& dag, int from, int to, int skip_from = -1, int skip_to = -1) {
    const int n = dag.num_variables();
    std::vector<char> seen(n, 0);
    std::vector<int> stack = {from};
    auto children = dag.children_lists();
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int c : children[v]) {
            if (v == skip_from && c == skip_to) continue;
            if (c == to) return true;
            if (!seen[c]) {
                seen[c] = 1;
                stack.push_back(c);
            }
        }
    }
    return false;
}

bool violates_required_orders(const Dag& dag, const Constraints& constraints) {
    for (const auto& [x, y] : constraints.required_orders) {
        if (reachable(dag, y, x)) return true;  // y became an ancestor of x
    }
    return false;
}

bool move_is_legal(const Dag& dag, const Constraints& constraints, int max_parents,
                   const Move& m) {
    const int a = m.source;
    const int b = m.target;
    if (a == b) return false;
    switch (m.kind) {
        case MoveKind::AddArc: {
            if (dag.adjacent(a, b)) return false;
            if (constraints.forbidden_parents.count({a, b})) return false;
            if (max_parents >= 0 &&
                static_cast<int>(dag.parents[b].size()) + 1 > max_parents)
                return false;
            if (reachable(dag, b, a)) return false;
            break;
        }
        case MoveKind::DeleteArc: {
            if (!dag.has_edge(a, b)) return false;
            break;
        }
        case MoveKind::ReverseArc: {
            if (!dag.has_edge(a, b)) return false;
            if (constraints.forbidden_parents.count({b, a})) return false;
            if (max_parents >= 0 &&
                static_cast<int>(dag.parents[a].size()) + 1 > max_parents)
                return false;
            if (reachable(dag, a, b, a, b)) return false;  // alternative path a->..->b
            break;
        }
    }
    if (!constraints.required_orders.empty()) {
        Dag trial = apply_move(dag, m);
        if (violates_required_orders(trial, constraints)) return false;
    }
    return true;
}

}  // namespace

bool Move::reverses(const Move& other) const {
    switch (kind) {
        case MoveKind::AddArc:
            return other.kind == MoveKind::DeleteArc && other.source == source &&
                   other.target == target;
        case MoveKind::DeleteArc:
            return other.kind == MoveKind::AddArc && other.source == source &&
                   other.target == target;
        case MoveKind::ReverseArc:
            return other.kind == MoveKind::ReverseArc && other.source == target &&
                   other.target == source;
    }
    return false;
}

void Constraints::validate(int num_variables) const {
    // required_orders as a precedence digraph must be acyclic
    std::vector<std::vector<int>> succ(num_variables);
    std::vector<int> indegree(num_variables, 0);
    for (const auto& [x, y] : required_orders) {
        if (x < 0 || x >= num_variables || y < 0 || y >= num_variables)
            throw UsageError("constraint variable index out of range");
        succ[x].push_back(y);
        ++indegree[y];
    }
    std::vector<int> queue;
    for (int i = 0; i < num_variables; ++i)
        if (indegree[i] == 0) queue.push_back(i);
    int visited = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++visited;
        for (int s : succ[v])
            if (--indegree[s] == 0) queue.push_back(s);
    }
    if (visited != num_variables)
        throw UsageError("required order constraints are cyclic");
}

std::vector<Move> legal_moves(const Dag& dag, const Constraints& constraints,
                              int max_parents) {
    std::vector<Move> moves;
    const int n = dag.num_variables();
    for (MoveKind kind : {MoveKind::AddArc, MoveKind::DeleteArc, MoveKind::ReverseArc}) {
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                Move m{kind, a, b};
                if (move_is_legal(dag, constraints, max_parents, m)) moves.push_back(m);
            }
        }
    }
    return moves;
}

Dag apply_move(const Dag& dag, const Move& move) {
    Dag out = dag;
    switch (move.kind) {
        case MoveKind::AddArc:
            if (dag.adjacent(move.source, move.target))
                throw UsageError("cannot add: arc already present");
            out.add_edge(move.source, move.target);
            break;
        case MoveKind::DeleteArc:
            out.remove_edge(move.source, move.target);
            break;
        case MoveKind::ReverseArc:
            out.remove_edge(move.source, move.target);
            out.add_edge(move.target, move.source);
            break;
    }
    out.validate();
    return out;
}

bool satisfies(const Dag& dag, const Constraints& constraints) {
    for (const auto& [parent, child] : constraints.forbidden_parents) {
        if (dag.has_edge(parent, child)) return false;
    }
    return !violates_required_orders(dag, constraints);
}

namespace {

// Running search state: the current DAG, its per-family scores, and a shared
// score cache.
class Climber {
public:
    Climber(const Dataset& dataset, const SearchConfig& config,
            const Constraints& constraints)
        : dataset_(dataset), config_(config), constraints_(constraints),
          dag_(dataset.variables), family_(dataset.num_variables()) {
        for (int i = 0; i < dataset_.num_variables(); ++i)
            family_[i] = family(i, dag_.parents[i]);
    }

    double total_score() const {
        return std::accumulate(family_.begin(), family_.end(), 0.0);
    }

    const Dag& dag() const { return dag_; }

    double family(int child, const std::vector<int>& parents) {
        double s;
        if (!cache_.lookup(child, parents, &s)) {
            s = family_score(count_family_stats(dataset_, child, parents), config_.ess);
            cache_.insert(child, parents, s);
        }
        return s;
    }

    double delta(const Move& m) {
        switch (m.kind) {
            case MoveKind::AddArc: {
                auto ps = with(dag_.parents[m.target], m.source);
                return family(m.target, ps) - family_[m.target];
            }
            case MoveKind::DeleteArc: {
                auto ps = without(dag_.parents[m.target], m.source);
                return family(m.target, ps) - family_[m.target];
            }
            case MoveKind::ReverseArc: {
                auto pt = without(dag_.parents[m.target], m.source);
                auto pa = with(dag_.parents[m.source], m.target);
                return family(m.target, pt) - family_[m.target] +
                       family(m.source, pa) - family_[m.source];
            }
        }
        return 0.0;
    }

    void apply(const Move& m) {
        dag_ = apply_move(dag_, m);
        family_[m.target] = family(m.target, dag_.parents[m.target]);
        if (m.kind == MoveKind::ReverseArc)
            family_[m.source] = family(m.source, dag_.parents[m.source]);
    }

    // Greedy ascent: repeatedly applies the best-delta non-tabu legal move
    // while that delta is positive. Applied moves are recorded in the list.
    void climb(std::deque<Move>& tabu) {
        for (;;) {
            const auto moves = legal_moves(dag_, constraints_, config_.max_parents);
            bool found = false;
            Move best{};
            double best_delta = 0.0;
            for (const auto& m : moves) {
                bool is_tabu = false;
                for (const auto& t : tabu) {
                    if (m.reverses(t)) {
                        is_tabu = true;
                        break;
                    }
                }
                if (is_tabu) continue;
                const double d = delta(m);
                if (d > best_delta) {  // first max wins: lexicographic tie-break
                    best_delta = d;
                    best = m;
                    found = true;
                }
            }
            if (!found) return;
            apply(best);
            tabu.push_back(best);
            while (static_cast<int>(tabu.size()) > config_.tabu_length) tabu.pop_front();
        }
    }

    // Random walk of up to `steps` uniformly chosen legal moves; not recorded
    // in the TABU list.
    void perturb(int steps, Rng& rng) {
        for (int s = 0; s < steps; ++s) {
            const auto moves = legal_moves(dag_, constraints_, config_.max_parents);
            if (moves.empty()) return;
            apply(moves[rng.uniform_int(static_cast<int>(moves.size()))]);
        }
    }

private:
    static std::vector<int> with(std::vector<int> ps, int v) {
        ps.insert(std::upper_bound(ps.begin(), ps.end(), v), v);
        return ps;
    }
    static std::vector<int> without(std::vector<int> ps, int v) {
        ps.erase(std::find(ps.begin(), ps.end(), v));
        return ps;
    }

    const Dataset& dataset_;
    const SearchConfig& config_;
    const Constraints& constraints_;
    Dag dag_;
    std::vector<double> family_;
    ScoreCache cache_;
};

}  // namespace

Dag hill_climb(const Dataset& dataset, const SearchConfig& config,
               const Constraints& constraints) {
    return hill_climb(dataset, config, constraints, nullptr);
}

Dag hill_climb(const Dataset& dataset, const SearchConfig& config,
               const Constraints& constraints, double* score_out) {
    if (dataset.num_rows() == 0) throw UsageError("cannot learn from an empty dataset");
    constraints.validate(dataset.num_variables());

    Climber climber(dataset, config, constraints);
    Rng rng(config.seed);
    std::deque<Move> tabu;

    climber.climb(tabu);
    Dag best = climber.dag();
    double best_score = climber.total_score();

    for (int r = 0; r < config.max_restarts; ++r) {
        climber.perturb(config.perturbation_size, rng);
        climber.climb(tabu);
        if (climber.total_score() > best_score) {
            best = climber.dag();
            best_score = climber.total_score();
        }
    }
    if (score_out) *score_out = best_score;
    return best;
}

Dag learn_tree(const Dataset& dataset, double ess) {
    if (dataset.num_rows() == 0) throw UsageError("cannot learn from an empty dataset");
    const int n = dataset.num_variables();

    std::vector<double> empty_family(n);
    for (int i = 0; i < n; ++i)
        empty_family[i] = family_score(count_family_stats(dataset, i, {}), ess);

    struct PairGain {
        int a, b;
        double gain;
    };
    std::vector<PairGain> gains;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            // symmetric by score equivalence; evaluated as b's gain from parent a
            const double g =
                family_score(count_family_stats(dataset, b, {a}), ess) - empty_family[b];
            if (g > 0.0) gains.push_back({a, b, g});
        }
    }
    std::stable_sort(gains.begin(), gains.end(),
                     [](const PairGain& x, const PairGain& y) { return x.gain > y.gain; });

    // Kruskal over positive gains
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int v) {
        while (comp[v] != v) v = comp[v] = comp[comp[v]];
        return v;
    };
    std::vector<std::vector<int>> adjacency(n);
    for (const auto& pg : gains) {
        const int ra = find(pg.a);
        const int rb = find(pg.b);
        if (ra == rb) continue;
        comp[std::max(ra, rb)] = std::min(ra, rb);
        adjacency[pg.a].push_back(pg.b);
        adjacency[pg.b].push_back(pg.a);
    }

    // Orient each tree outward from its lowest-index node
    Dag out(dataset.variables);
    std::vector<char> visited(n, 0);
    for (int root = 0; root < n; ++root) {
        if (visited[root]) continue;
        std::vector<int> stack = {root};
        visited[root] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : adjacency[v]) {
                if (visited[u]) continue;
                visited[u] = 1;
                out.add_edge(v, u);
                stack.push_back(u);
            }
        }
    }
    return out;
}

}  // namespace bnboot
