#ifndef BNBOOT_CORE_HPP
#define BNBOOT_CORE_HPP

#include <cstdint>
#include <vector>

#include "bnboot/types.hpp"

namespace bnboot {

/// Topological order of the DAG; ties broken by ascending variable index.
/// Throws UsageError naming one cycle if the graph is cyclic.
std::vector<int> topological_order(const Dag& dag);

/// log P_B(x) for a full assignment; -inf if any factor is zero.
double log_joint(const BayesianNetwork& bn, const std::vector<int>& assignment);

/// P_B(x) as a probability (exp of log_joint).
double joint_probability(const BayesianNetwork& bn, const std::vector<int>& assignment);

/// Draws `count` independent rows by ancestral sampling. Deterministic given seed.
Dataset forward_sample(const BayesianNetwork& bn, int count, std::uint64_t seed);

/// N uniform draws with replacement from the rows of `dataset` (N = its size).
Dataset resample_with_replacement(const Dataset& dataset, std::uint64_t seed);

/// (1/N) sum_l log P_B(x[l]); natural log, -inf permitted.
double test_log_loss(const BayesianNetwork& bn, const Dataset& test);

}  // namespace bnboot

#endif
