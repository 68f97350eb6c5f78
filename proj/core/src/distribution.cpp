#include "mvinfo/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <unordered_set>

namespace mvinfo {

namespace {

constexpr double kNormalizationTolerance = 1e-9;

std::string format_deficit(double sum) {
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "probabilities sum to %.17g (deficit %.3g, tolerance 1e-9)",
                sum, 1.0 - sum);
  return buf;
}

}  // namespace

IndexSet::IndexSet(std::vector<std::size_t> members)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw InvalidArgument("index set has duplicate members");
}

IndexSet IndexSet::full(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return IndexSet(std::move(m));
}

bool IndexSet::contains(std::size_t i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

IndexSet IndexSet::unioned(const IndexSet& other) const {
  std::vector<std::size_t> out;
  out.reserve(members_.size() + other.members_.size());
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out));
  IndexSet r;
  r.members_ = std::move(out);
  return r;
}

IndexSet IndexSet::minus(const IndexSet& other) const {
  std::vector<std::size_t> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out));
  IndexSet r;
  r.members_ = std::move(out);
  return r;
}

IndexSet IndexSet::complement_in(std::size_t n) const {
  std::vector<std::size_t> out;
  out.reserve(n - members_.size());
  for (std::size_t i = 0; i < n; ++i)
    if (!contains(i)) out.push_back(i);
  IndexSet r;
  r.members_ = std::move(out);
  return r;
}

bool IndexSet::disjoint_with(const IndexSet& other) const {
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return false;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return true;
}

DiscreteDistribution::DiscreteDistribution(
    std::vector<std::string> names, std::vector<Symbol> alphabet_sizes,
    std::vector<std::pair<State, double>> pmf)
    : names_(std::move(names)),
      alphabet_sizes_(std::move(alphabet_sizes)),
      pmf_(std::move(pmf)) {
  if (names_.size() != alphabet_sizes_.size())
    throw MalformedState("variable name and alphabet counts differ");
  std::unordered_set<std::string_view> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw MalformedState("empty variable name");
    if (!seen.insert(n).second)
      throw MalformedState("duplicate variable name: " + n);
  }
  for (std::size_t i = 0; i < alphabet_sizes_.size(); ++i)
    if (alphabet_sizes_[i] == 0)
      throw MalformedState("variable " + names_[i] + " has empty alphabet");

  double sum = 0.0;
  for (auto& [state, p] : pmf_) {
    if (state.size() != names_.size())
      throw MalformedState("state arity does not match variable count");
    for (std::size_t i = 0; i < state.size(); ++i)
      if (state[i] >= alphabet_sizes_[i])
        throw MalformedState("symbol out of range for variable " + names_[i]);
    if (p < 0.0) throw NegativeProbability("negative probability in pmf");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance)
    throw NotNormalized(format_deficit(sum));

  std::erase_if(pmf_, [](const auto& e) { return e.second == 0.0; });
  std::sort(pmf_.begin(), pmf_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < pmf_.size(); ++i)
    if (pmf_[i].first == pmf_[i - 1].first)
      throw MalformedState("duplicate state in pmf");
}

DiscreteDistribution::DiscreteDistribution(
    unchecked_t, std::vector<std::string> names,
    std::vector<Symbol> alphabet_sizes,
    std::vector<std::pair<State, double>> pmf)
    : names_(std::move(names)),
      alphabet_sizes_(std::move(alphabet_sizes)),
      pmf_(std::move(pmf)) {}

const std::string& DiscreteDistribution::name(std::size_t i) const {
  check_index(i);
  return names_[i];
}

Symbol DiscreteDistribution::alphabet_size(std::size_t i) const {
  check_index(i);
  return alphabet_sizes_[i];
}

std::size_t DiscreteDistribution::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw UnknownVariable("unknown variable: " + std::string(name));
}

double DiscreteDistribution::probability(const State& state) const {
  if (state.size() != names_.size())
    throw MalformedState("state arity does not match variable count");
  auto it = std::lower_bound(
      pmf_.begin(), pmf_.end(), state,
      [](const auto& e, const State& s) { return e.first < s; });
  if (it != pmf_.end() && it->first == state) return it->second;
  return 0.0;
}

void DiscreteDistribution::validate() const {
  double sum = 0.0;
  for (const auto& [state, p] : pmf_) {
    if (state.size() != names_.size())
      throw MalformedState("state arity does not match variable count");
    for (std::size_t i = 0; i < state.size(); ++i)
      if (state[i] >= alphabet_sizes_[i])
        throw MalformedState("symbol out of range for variable " + names_[i]);
    if (p < 0.0) throw NegativeProbability("negative probability in pmf");
    if (p == 0.0) throw MalformedState("explicit zero entry in support");
    sum += p;
  }
  for (std::size_t i = 1; i < pmf_.size(); ++i) {
    if (pmf_[i].first == pmf_[i - 1].first)
      throw MalformedState("duplicate state in pmf");
    if (pmf_[i].first < pmf_[i - 1].first)
      throw InternalInconsistency("support not sorted");
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance)
    throw NotNormalized(format_deficit(sum));
}

void DiscreteDistribution::check_index(std::size_t i) const {
  if (i >= names_.size())
    throw UnknownVariable("variable index " + std::to_string(i) +
                          " out of range");
}

DiscreteDistribution DiscreteDistribution::marginalize(
    const IndexSet& keep) const {
  if (keep.empty()) throw EmptyKeepSet("cannot marginalize onto no variables");
  for (std::size_t i : keep) check_index(i);

  std::map<State, double> acc;
  State key(keep.size());
  for (const auto& [state, p] : pmf_) {
    std::size_t k = 0;
    for (std::size_t i : keep) key[k++] = state[i];
    acc[key] += p;
  }

  std::vector<std::string> names;
  std::vector<Symbol> alphabets;
  for (std::size_t i : keep) {
    names.push_back(names_[i]);
    alphabets.push_back(alphabet_sizes_[i]);
  }
  std::vector<std::pair<State, double>> pmf;
  pmf.reserve(acc.size());
  for (auto& [s, p] : acc)
    if (p > 0.0) pmf.emplace_back(s, p);
  return DiscreteDistribution(unchecked_t{}, std::move(names),
                              std::move(alphabets), std::move(pmf));
}

DiscreteDistribution DiscreteDistribution::condition(
    const IndexSet& on, const State& on_state) const {
  if (on.empty()) return *this;
  for (std::size_t i : on) check_index(i);
  if (on_state.size() != on.size())
    throw MalformedState("conditioning state arity does not match index set");
  {
    std::size_t k = 0;
    for (std::size_t i : on) {
      if (on_state[k] >= alphabet_sizes_[i])
        throw MalformedState("conditioning symbol out of range for variable " +
                             names_[i]);
      ++k;
    }
  }

  IndexSet rest = on.complement_in(variable_count());
  double mass = 0.0;
  std::map<State, double> acc;
  State key(rest.size());
  for (const auto& [state, p] : pmf_) {
    bool match = true;
    std::size_t k = 0;
    for (std::size_t i : on) {
      if (state[i] != on_state[k++]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    mass += p;
    std::size_t r = 0;
    for (std::size_t i : rest) key[r++] = state[i];
    acc[key] += p;
  }
  if (mass <= 0.0)
    throw ZeroProbabilityCondition(
        "conditioning event has zero probability");

  std::vector<std::string> names;
  std::vector<Symbol> alphabets;
  for (std::size_t i : rest) {
    names.push_back(names_[i]);
    alphabets.push_back(alphabet_sizes_[i]);
  }
  std::vector<std::pair<State, double>> pmf;
  pmf.reserve(acc.size());
  for (auto& [s, p] : acc) pmf.emplace_back(s, p / mass);
  return DiscreteDistribution(unchecked_t{}, std::move(names),
                              std::move(alphabets), std::move(pmf));
}

DiscreteDistribution DiscreteDistribution::group(
    const std::vector<IndexSet>& blocks) const {
  std::vector<bool> used(variable_count(), false);
  for (const auto& block : blocks) {
    if (block.empty()) throw EmptyBlock("empty block in grouping");
    for (std::size_t i : block) {
      check_index(i);
      if (used[i])
        throw OverlappingBlocks("variable " + names_[i] +
                                " appears in more than one block");
      used[i] = true;
    }
  }

  IndexSet leftovers;
  {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < variable_count(); ++i)
      if (!used[i]) rest.push_back(i);
    leftovers = IndexSet(std::move(rest));
  }

  std::vector<std::string> names;
  std::vector<Symbol> alphabets;
  for (const auto& block : blocks) {
    std::string name;
    std::uint64_t product = 1;
    for (std::size_t i : block) {
      if (!name.empty()) name += '+';
      name += names_[i];
      product *= alphabet_sizes_[i];
      if (product > std::numeric_limits<Symbol>::max())
        throw MalformedState("composite alphabet for " + name +
                             " exceeds symbol range");
    }
    names.push_back(std::move(name));
    alphabets.push_back(static_cast<Symbol>(product));
  }
  for (std::size_t i : leftovers) {
    names.push_back(names_[i]);
    alphabets.push_back(alphabet_sizes_[i]);
  }
  {
    std::unordered_set<std::string_view> seen;
    for (const auto& n : names)
      if (!seen.insert(n).second)
        throw MalformedState("grouping produced duplicate variable name: " +
                             std::string(n));
  }

  // Composite symbol = mixed-radix encoding of the member symbols, first
  // member most significant.
  std::map<State, double> acc;
  State key(names.size());
  for (const auto& [state, p] : pmf_) {
    std::size_t k = 0;
    for (const auto& block : blocks) {
      std::uint64_t code = 0;
      for (std::size_t i : block) code = code * alphabet_sizes_[i] + state[i];
      key[k++] = static_cast<Symbol>(code);
    }
    for (std::size_t i : leftovers) key[k++] = state[i];
    acc[key] += p;
  }
  std::vector<std::pair<State, double>> pmf;
  pmf.reserve(acc.size());
  for (auto& [s, p] : acc) pmf.emplace_back(s, p);
  return DiscreteDistribution(unchecked_t{}, std::move(names),
                              std::move(alphabets), std::move(pmf));
}

void SourceTargetSplit::check_against(const DiscreteDistribution& d) const {
  if (sources.empty()) throw InvalidSplit("split needs at least one source");
  for (std::size_t i : sources)
    if (i >= d.variable_count())
      throw UnknownVariable("source index " + std::to_string(i) +
                            " out of range");
  if (target >= d.variable_count())
    throw UnknownVariable("target index " + std::to_string(target) +
                          " out of range");
  if (sources.contains(target))
    throw InvalidSplit("target variable " + d.name(target) +
                       " also listed as a source");
}

}  // namespace mvinfo
