#ifndef BNBOOT_FEATURES_HPP
#define BNBOOT_FEATURES_HPP

#include <set>
#include <string>
#include <vector>

#include "bnboot/pdag.hpp"
#include "bnboot/types.hpp"

namespace bnboot {

enum class FeatureKind { DirectedEdge, UndirectedEdge, MarkovNeighbor, AncestorOrder };

constexpr std::array<FeatureKind, 4> kAllFeatureKinds = {
    FeatureKind::DirectedEdge, FeatureKind::UndirectedEdge,
    FeatureKind::MarkovNeighbor, FeatureKind::AncestorOrder};

/// True for kinds whose endpoint pair is ordered.
bool kind_is_ordered(FeatureKind kind);

std::string kind_name(FeatureKind kind);
FeatureKind kind_from_name(const std::string& name);  // throws FormatError

/// A 0/1 structural indicator: an edge, Markov-neighbor, or ancestor-order
/// statement about a pair of variables. Unordered kinds are stored with
/// x < y.
struct Feature {
    FeatureKind kind;
    int x;
    int y;

    static Feature make(FeatureKind kind, int x, int y);

    bool operator==(const Feature& o) const = default;
    bool operator<(const Feature& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
};

/// Text encoding used in report files, e.g. "edge A -> B", "mb A -- B".
std::string feature_to_text(const Feature& f, const std::vector<Variable>& variables);

/// Evaluates the indicator on one DAG (via its completed PDAG for edge and
/// order kinds).
int evaluate_feature(const Feature& feature, const Dag& dag);

/// All features of the requested kinds over the domain, in deterministic
/// (kind, x, y) order.
std::vector<Feature> feature_universe(const std::vector<Variable>& variables,
                                      const std::vector<FeatureKind>& kinds);

/// The features of the requested kinds that hold in the DAG. One PDAG
/// conversion, shared across all indicators.
std::set<Feature> extract_features(const Dag& dag, const std::vector<FeatureKind>& kinds);

}  // namespace bnboot

#endif
