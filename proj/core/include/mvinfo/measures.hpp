#pragma once

#include "mvinfo/distribution.hpp"

namespace mvinfo {

// Every quantity below is in bits (base-2 logarithms) and follows the
// convention 0*log(0) = 0. Quantities that are non-negative by theory may
// come out a hair below zero from floating-point cancellation; anything in
// [-1e-12, 0) is clamped to exactly 0, more negative values are returned
// as-is so bugs stay visible.

// H(vars): joint entropy of the selected variables.
double entropy(const DiscreteDistribution& d, const IndexSet& vars);

// H(of | given): expected entropy of `of` under conditioning on each
// positive-probability state of `given`. `given` may be empty.
double conditional_entropy(const DiscreteDistribution& d, const IndexSet& of,
                           const IndexSet& given);

// I(a ; b) between two disjoint, non-empty groups of variables.
double mutual_information(const DiscreteDistribution& d, const IndexSet& a,
                          const IndexSet& b);

// I(a ; b | given); `given` may be empty, in which case this is plain
// mutual information. May legitimately exceed I(a ; b).
double conditional_mutual_information(const DiscreteDistribution& d,
                                      const IndexSet& a, const IndexSet& b,
                                      const IndexSet& given);

// Interaction information over two or more variables: the alternating
// inclusion-exclusion sum of subset entropies. For two variables it equals
// their mutual information; for three or more it is signed, with positive
// values indicating synergy under the convention used throughout this
// library.
double interaction_information(const DiscreteDistribution& d,
                               const IndexSet& vars);

// Co-information: (-1)^|vars| times interaction information.
double co_information(const DiscreteDistribution& d, const IndexSet& vars);

// Total correlation: sum of marginal entropies minus joint entropy.
double total_correlation(const DiscreteDistribution& d, const IndexSet& vars);

// Dual total correlation: sum over i of H(vars minus i) minus
// (|vars| - 1) * H(vars).
double dual_total_correlation(const DiscreteDistribution& d,
                              const IndexSet& vars);

// How much the data's source-to-target channel p(y|x) diverges from the
// model that keeps every pairwise source-target relationship but assumes
// the sources are conditionally independent given the target:
// sum_{x,y} p(x,y) log2(p(y|x) / p_ind(y|x)), where
// p_ind(y|x) = p(y) prod_i p(x_i|y) / p_ind(x) and
// p_ind(x) = sum_y p(y) prod_i p(x_i|y). Non-negative.
double delta_i(const DiscreteDistribution& d, const SourceTargetSplit& split);

// I(sources ; target) - delta_i, evaluated in one pass as
// sum_{x,y} p(x,y) log2(prod_i p(x_i|y) / p_ind(x)). Can be negative.
double mi_delta_gap(const DiscreteDistribution& d,
                    const SourceTargetSplit& split);

// Redundancy-synergy index: I(sources ; target) minus the sum of the
// individual source informations. Equal to interaction information over
// sources and target for two sources.
double redundancy_synergy_index(const DiscreteDistribution& d,
                                const SourceTargetSplit& split);

// Synergy as maximum gain of the whole over the best partitioned view:
// I(sources ; target) minus the maximum over all partitions of the sources
// into two or more blocks of the sum of per-block informations. Requires at
// least two sources.
double varadan_synergy(const DiscreteDistribution& d,
                       const SourceTargetSplit& split);

}  // namespace mvinfo
