#include "bnboot/features.hpp"

#include <algorithm>

namespace bnboot {

bool kind_is_ordered(FeatureKind kind) {
    return kind == FeatureKind::DirectedEdge || kind == FeatureKind::AncestorOrder;
}

std::string kind_name(FeatureKind kind) {
    switch (kind) {
        case FeatureKind::DirectedEdge: return "directed_edge";
        case FeatureKind::UndirectedEdge: return "undirected_edge";
        case FeatureKind::MarkovNeighbor: return "markov_neighbor";
        case FeatureKind::AncestorOrder: return "ancestor_order";
    }
    throw InternalError("unknown feature kind");
}

FeatureKind kind_from_name(const std::string& name) {
    for (FeatureKind k : kAllFeatureKinds) {
        if (kind_name(k) == name) return k;
    }
    throw FormatError("unknown feature kind '" + name + "'");
}

Feature Feature::make(FeatureKind kind, int x, int y) {
    if (x == y) throw UsageError("feature endpoints must differ");
    if (!kind_is_ordered(kind) && x > y) std::swap(x, y);
    return Feature{kind, x, y};
}

std::string feature_to_text(const Feature& f, const std::vector<Variable>& variables) {
    const std::string& a = variables[f.x].name;
    const std::string& b = variables[f.y].name;
    switch (f.kind) {
        case FeatureKind::DirectedEdge: return "edge " + a + " -> " + b;
        case FeatureKind::UndirectedEdge: return "edge " + a + " -- " + b;
        case FeatureKind::MarkovNeighbor: return "mb " + a + " -- " + b;
        case FeatureKind::AncestorOrder: return "order " + a + " < " + b;
    }
    throw InternalError("unknown feature kind");
}

int evaluate_feature(const Feature& feature, const Dag& dag) {
    const int n = dag.num_variables();
    if (feature.x < 0 || feature.x >= n || feature.y < 0 || feature.y >= n)
        throw UsageError("feature endpoint out of the variable domain");
    switch (feature.kind) {
        case FeatureKind::MarkovNeighbor:
            return markov_neighbors(dag, feature.x).count(feature.y) ? 1 : 0;
        case FeatureKind::DirectedEdge: {
            return dag_to_pdag(dag).has_directed(feature.x, feature.y) ? 1 : 0;
        }
        case FeatureKind::UndirectedEdge: {
            return dag_to_pdag(dag).has_undirected(feature.x, feature.y) ? 1 : 0;
        }
        case FeatureKind::AncestorOrder: {
            return pdag_ancestors(dag_to_pdag(dag), feature.y).count(feature.x) ? 1 : 0;
        }
    }
    throw InternalError("unknown feature kind");
}

std::vector<Feature> feature_universe(const std::vector<Variable>& variables,
                                      const std::vector<FeatureKind>& kinds) {
    const int n = static_cast<int>(variables.size());
    std::vector<Feature> out;
    std::vector<FeatureKind> sorted_kinds = kinds;
    std::sort(sorted_kinds.begin(), sorted_kinds.end());
    sorted_kinds.erase(std::unique(sorted_kinds.begin(), sorted_kinds.end()),
                       sorted_kinds.end());
    for (FeatureKind kind : sorted_kinds) {
        if (kind_is_ordered(kind)) {
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    if (x != y) out.push_back(Feature{kind, x, y});
        } else {
            for (int x = 0; x < n; ++x)
                for (int y = x + 1; y < n; ++y) out.push_back(Feature{kind, x, y});
        }
    }
    return out;
}

std::set<Feature> extract_features(const Dag& dag, const std::vector<FeatureKind>& kinds) {
    const Pdag pdag = dag_to_pdag(dag);
    const int n = dag.num_variables();
    std::set<Feature> out;
    for (FeatureKind kind : kinds) {
        switch (kind) {
            case FeatureKind::DirectedEdge:
                for (const auto& [a, b] : pdag.directed_edges)
                    out.insert(Feature{FeatureKind::DirectedEdge, a, b});
                break;
            case FeatureKind::UndirectedEdge:
                for (const auto& [a, b] : pdag.undirected_edges)
                    out.insert(Feature{FeatureKind::UndirectedEdge, a, b});
                break;
            case FeatureKind::MarkovNeighbor:
                for (int x = 0; x < n; ++x) {
                    for (int y : markov_neighbors(dag, x)) {
                        if (x < y) out.insert(Feature{FeatureKind::MarkovNeighbor, x, y});
                    }
                }
                break;
            case FeatureKind::AncestorOrder:
                for (int y = 0; y < n; ++y) {
                    for (int x : pdag_ancestors(pdag, y))
                        out.insert(Feature{FeatureKind::AncestorOrder, x, y});
                }
                break;
        }
    }
    return out;
}

}  // namespace bnboot
