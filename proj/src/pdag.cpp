#include "bnboot/pdag.hpp"

#include <algorithm>

#include "bnboot/core.hpp"

namespace bnboot {

namespace {

enum class Label { Unknown, Compelled, Reversible };

struct OrderedEdge {
    int from;
    int to;
};

// Chickering's edge ordering: edges sorted by the child's topological
// position ascending, then by the parent's position descending.
std::vector<OrderedEdge> order_edges(const Dag& dag) {
    const auto topo = topological_order(dag);
    std::vector<int> pos(dag.num_variables());
    for (std::size_t i = 0; i < topo.size(); ++i) pos[topo[i]] = static_cast<int>(i);
    std::vector<OrderedEdge> edges;
    for (int c = 0; c < dag.num_variables(); ++c)
        for (int p : dag.parents[c]) edges.push_back({p, c});
    std::sort(edges.begin(), edges.end(), [&](const OrderedEdge& a, const OrderedEdge& b) {
        if (pos[a.to] != pos[b.to]) return pos[a.to] < pos[b.to];
        return pos[a.from] > pos[b.from];
    });
    return edges;
}

}  // namespace

Pdag dag_to_pdag(const Dag& dag) {
    const int n = dag.num_variables();
    const auto edges = order_edges(dag);
    const int ne = static_cast<int>(edges.size());

    // edge index lookup by (from, to)
    std::vector<std::vector<int>> edge_idx(n, std::vector<int>(n, -1));
    for (int e = 0; e < ne; ++e) edge_idx[edges[e].from][edges[e].to] = e;

    std::vector<Label> label(ne, Label::Unknown);

    for (int e = 0; e < ne; ++e) {
        if (label[e] != Label::Unknown) continue;
        const int x = edges[e].from;
        const int y = edges[e].to;

        bool done = false;
        for (int w : dag.parents[x]) {
            const int wx = edge_idx[w][x];
            if (label[wx] != Label::Compelled) continue;
            if (!dag.has_edge(w, y)) {
                // w -> x compelled but w is no parent of y: every edge into y
                // is compelled.
                for (int p : dag.parents[y]) label[edge_idx[p][y]] = Label::Compelled;
                done = true;
                break;
            }
            label[edge_idx[w][y]] = Label::Compelled;
        }
        if (done) continue;

        bool exists_z = false;
        for (int z : dag.parents[y]) {
            if (z == x) continue;
            if (!dag.has_edge(z, x)) {
                exists_z = true;
                break;
            }
        }
        const Label verdict = exists_z ? Label::Compelled : Label::Reversible;
        for (int p : dag.parents[y]) {
            const int idx = edge_idx[p][y];
            if (label[idx] == Label::Unknown) label[idx] = verdict;
        }
    }

    Pdag pdag;
    pdag.variables = dag.variables;
    for (int e = 0; e < ne; ++e) {
        const int a = edges[e].from;
        const int b = edges[e].to;
        if (label[e] == Label::Compelled)
            pdag.directed_edges.insert({a, b});
        else
            pdag.undirected_edges.insert({std::min(a, b), std::max(a, b)});
    }
    return pdag;
}

std::set<std::array<int, 3>> v_structures(const Dag& dag) {
    std::set<std::array<int, 3>> out;
    for (int c = 0; c < dag.num_variables(); ++c) {
        const auto& ps = dag.parents[c];
        for (std::size_t i = 0; i < ps.size(); ++i) {
            for (std::size_t j = i + 1; j < ps.size(); ++j) {
                if (!dag.adjacent(ps[i], ps[j])) out.insert({ps[i], ps[j], c});
            }
        }
    }
    return out;
}

bool is_equivalent(const Dag& d1, const Dag& d2) {
    if (!same_domain(d1.variables, d2.variables))
        throw UsageError("cannot compare DAGs over different domains");
    std::set<std::pair<int, int>> s1, s2;
    for (int c = 0; c < d1.num_variables(); ++c) {
        for (int p : d1.parents[c]) s1.insert({std::min(p, c), std::max(p, c)});
        for (int p : d2.parents[c]) s2.insert({std::min(p, c), std::max(p, c)});
    }
    return s1 == s2 && v_structures(d1) == v_structures(d2);
}

std::set<int> pdag_ancestors(const Pdag& pdag, int x) {
    // DFS along directed edges, reversed
    std::vector<std::vector<int>> parents(pdag.num_variables());
    for (const auto& [from, to] : pdag.directed_edges) parents[to].push_back(from);
    std::set<int> out;
    std::vector<int> stack = {x};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int p : parents[v]) {
            if (p != x && out.insert(p).second) stack.push_back(p);
        }
    }
    out.erase(x);
    return out;
}

std::set<int> markov_neighbors(const Dag& dag, int x) {
    std::set<int> out;
    for (int p : dag.parents[x]) out.insert(p);
    for (int c = 0; c < dag.num_variables(); ++c) {
        if (c == x) continue;
        if (dag.has_edge(x, c)) {
            out.insert(c);
            for (int p : dag.parents[c]) out.insert(p);  // co-parents
        }
    }
    out.erase(x);
    return out;
}

}  // namespace bnboot
