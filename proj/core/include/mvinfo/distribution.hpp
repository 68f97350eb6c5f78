#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mvinfo/errors.hpp"

namespace mvinfo {

// A symbol is one value of one discrete variable, always in
// [0, alphabet_size). A state is one complete joint outcome.
using Symbol = std::uint32_t;
using State = std::vector<Symbol>;

// Sorted set of variable positions. Construction rejects duplicates, so an
// IndexSet is always strictly ascending.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::size_t> members)
      : IndexSet(std::vector<std::size_t>(members)) {}
  explicit IndexSet(std::vector<std::size_t> members);

  // {0, 1, ..., n-1}
  static IndexSet full(std::size_t n);

  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  bool contains(std::size_t i) const;
  const std::vector<std::size_t>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  IndexSet unioned(const IndexSet& other) const;
  IndexSet minus(const IndexSet& other) const;
  // Members of {0..n-1} not in this set.
  IndexSet complement_in(std::size_t n) const;
  bool disjoint_with(const IndexSet& other) const;

  bool operator==(const IndexSet&) const = default;

 private:
  std::vector<std::size_t> members_;
};

// Immutable joint probability mass function over named discrete variables.
//
// Only states with p > 0 are stored; the support is kept sorted in
// lexicographic state order so lookups are binary searches and serialized
// output is deterministic. Construction validates everything once
// (normalization within 1e-9, symbols within their alphabets, no duplicate
// states); the manipulation methods below return new distributions that are
// valid by construction.
class DiscreteDistribution {
 public:
  DiscreteDistribution(std::vector<std::string> names,
                       std::vector<Symbol> alphabet_sizes,
                       std::vector<std::pair<State, double>> pmf);

  std::size_t variable_count() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const;
  const std::vector<Symbol>& alphabet_sizes() const { return alphabet_sizes_; }
  Symbol alphabet_size(std::size_t i) const;
  // Position of the variable with this name; throws UnknownVariable.
  std::size_t index_of(std::string_view name) const;

  // Support entries, sorted lexicographically by state. Every stored
  // probability is > 0.
  const std::vector<std::pair<State, double>>& support() const {
    return pmf_;
  }
  // Probability of a full state; 0 if the state is off-support.
  double probability(const State& state) const;

  // Re-checks every construction invariant, throwing on violation. Useful
  // after deserialization or in property tests; a distribution obtained from
  // this class always passes.
  void validate() const;

  // Sum out every variable not in `keep`. The result keeps the retained
  // variables in ascending original order.
  DiscreteDistribution marginalize(const IndexSet& keep) const;

  // Distribution of the remaining variables given that the variables in `on`
  // take `on_state` (symbols aligned with the ascending members of `on`).
  // Throws ZeroProbabilityCondition when the conditioning event has zero
  // probability. Conditioning on nothing returns a copy.
  DiscreteDistribution condition(const IndexSet& on,
                                 const State& on_state) const;

  // Merge each block of variables into one composite variable whose alphabet
  // is the product of the member alphabets. Blocks must be non-empty and
  // pairwise disjoint. The result lists composites first (in block order,
  // named by joining member names with '+'), then any uncovered variables as
  // themselves in ascending order.
  DiscreteDistribution group(const std::vector<IndexSet>& blocks) const;

 private:
  struct unchecked_t {};
  // Trusted path for internally produced pmfs (already sorted, deduplicated
  // and strictly positive).
  DiscreteDistribution(unchecked_t, std::vector<std::string> names,
                       std::vector<Symbol> alphabet_sizes,
                       std::vector<std::pair<State, double>> pmf);

  void check_index(std::size_t i) const;

  std::vector<std::string> names_;
  std::vector<Symbol> alphabet_sizes_;
  std::vector<std::pair<State, double>> pmf_;
};

// A measurement layout: which variables act as sources and which single
// variable is the target. The target may not be a source and at least one
// source is required.
struct SourceTargetSplit {
  IndexSet sources;
  std::size_t target = 0;

  // Throws InvalidSplit / UnknownVariable if the split does not fit `d`.
  void check_against(const DiscreteDistribution& d) const;
};

}  // namespace mvinfo
