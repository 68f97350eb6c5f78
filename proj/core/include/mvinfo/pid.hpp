#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mvinfo/distribution.hpp"

namespace mvinfo {

// A node of the redundancy lattice: a set of source subsets in which no
// subset contains another. Each subset is a bitmask over source positions
// (bit k = k-th source of the split, zero-based). Members are kept in a
// canonical order (fewer sources first, then by mask), which also fixes the
// node's printed label: "{1}{23}" means the singleton {source 1} together
// with the pair {source 2, source 3}, positions printed one-based.
class Antichain {
 public:
  explicit Antichain(std::vector<std::uint8_t> members);

  const std::vector<std::uint8_t>& members() const { return members_; }
  std::string label() const;
  // Identifier-friendly form of the label: "{1}{23}" -> "pid_1_23".
  std::string column_name() const;

  bool operator==(const Antichain&) const = default;

 private:
  std::vector<std::uint8_t> members_;
};

// Partial order of the redundancy lattice: alpha precedes beta when every
// member of beta contains some member of alpha.
bool lattice_leq(const Antichain& alpha, const Antichain& beta);

// All lattice nodes for 2 sources (4 nodes) or 3 sources (18 nodes), in a
// fixed bottom-up order: every node appears after all nodes below it.
const std::vector<Antichain>& lattice(std::size_t n_sources);

// Information that the source subset carries about one specific target
// state: the divergence of p(sources in subset | y) from the subset's
// marginal. Non-negative; throws ZeroProbabilityCondition if p(y) = 0.
double specific_information(const DiscreteDistribution& d,
                            const SourceTargetSplit& split,
                            std::uint8_t source_subset, Symbol y);

// Expected (over the target) minimum specific information across the node's
// members: what every member at least provides about the target.
double i_min(const DiscreteDistribution& d, const SourceTargetSplit& split,
             const Antichain& node);

// Full decomposition of I(sources ; target) into lattice terms.
struct Decomposition {
  std::vector<Antichain> nodes;  // same order as lattice(n)
  std::vector<double> i_min;     // aligned with nodes
  std::vector<double> terms;     // aligned with nodes, each >= 0

  // Term lookup by label ("{1}{2}") or column name ("pid_1_2").
  double term(std::string_view name) const;
};

// Moebius inversion of i_min over the lattice. Supports 2 or 3 sources.
// Terms that land within -1e-9 of zero are snapped to zero; anything more
// negative aborts with DecompositionError.
Decomposition decompose(const DiscreteDistribution& d,
                        const SourceTargetSplit& split);

// How far the decomposition is from reproducing interaction information
// over sources and target via its synergy/redundancy combination. Returns
// the absolute difference; it should be at floating-point noise level.
double ii_consistency(const DiscreteDistribution& d,
                      const SourceTargetSplit& split,
                      const Decomposition& pid);

}  // namespace mvinfo
