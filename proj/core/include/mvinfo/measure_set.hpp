#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvinfo/distribution.hpp"

namespace mvinfo {

// A validated selection of measures to evaluate on a source/target split.
//
// Recognized names, for n sources:
//   h_y            target entropy
//   mi_1 .. mi_n   information from each single source
//   mi             information from all sources jointly
//   ii             interaction information over sources and target
//   ci             co-information over sources and target
//   tc             total correlation over sources and target
//   dtc            dual total correlation over sources and target
//   delta_i        divergence from conditional independence given the target
//   mi_delta_gap   mi minus delta_i, evaluated directly
//   rsi            redundancy-synergy index (needs >= 2 sources)
//   vs             partition-maximum synergy (needs >= 2 sources)
//   pid            every decomposition term (needs 2 or 3 sources); expands
//                  to one column per lattice node, e.g. pid_1_2, pid_12
//   pid_<node>     a single decomposition term, e.g. pid_1 or pid_12_13_23
//   all            shorthand for the full battery in the order above
class MeasureSet {
 public:
  // Parses and validates names against the source count. Duplicates are
  // rejected; "all" may appear alone only.
  static MeasureSet parse(const std::vector<std::string>& names,
                          std::size_t n_sources);
  static MeasureSet all(std::size_t n_sources);

  std::size_t n_sources() const { return n_sources_; }
  // One name per output value; "pid" contributes one column per lattice
  // node, everything else exactly one.
  const std::vector<std::string>& column_names() const { return columns_; }
  // True if any decomposition term was requested.
  bool wants_decomposition() const;

  // Evaluates every column on the distribution, in column order. The split
  // must have exactly n_sources sources.
  std::vector<double> evaluate(const DiscreteDistribution& d,
                               const SourceTargetSplit& split) const;

 private:
  enum class Kind : std::uint8_t {
    kTargetEntropy,
    kSourceMi,
    kJointMi,
    kInteraction,
    kCoInformation,
    kTotalCorrelation,
    kDualTotalCorrelation,
    kDeltaI,
    kMiDeltaGap,
    kRsi,
    kVaradanSynergy,
    kPidAll,
    kPidTerm,
  };
  struct Item {
    Kind kind;
    std::size_t source = 0;    // for kSourceMi
    std::size_t pid_node = 0;  // lattice position for kPidTerm
  };

  MeasureSet() = default;

  std::size_t n_sources_ = 0;
  std::vector<Item> items_;
  std::vector<std::string> columns_;
};

}  // namespace mvinfo
