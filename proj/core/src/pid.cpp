#include "mvinfo/pid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "marginal_tables.hpp"
#include "mvinfo/measures.hpp"

namespace mvinfo {

namespace {

bool member_less(std::uint8_t a, std::uint8_t b) {
  int pa = std::popcount(a);
  int pb = std::popcount(b);
  return pa != pb ? pa < pb : a < b;
}

}  // namespace

Antichain::Antichain(std::vector<std::uint8_t> members)
    : members_(std::move(members)) {
  if (members_.empty())
    throw InvalidArgument("lattice node needs at least one source subset");
  std::sort(members_.begin(), members_.end(), member_less);
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
  for (std::uint8_t m : members_) {
    if (m == 0) throw InvalidArgument("empty source subset in lattice node");
    for (std::uint8_t other : members_) {
      if (other == m) continue;
      if ((m & other) == m)
        throw InvalidArgument(
            "lattice node members must not contain one another");
    }
  }
}

std::string Antichain::label() const {
  std::string out;
  for (std::uint8_t m : members_) {
    out += '{';
    for (int k = 0; k < 8; ++k)
      if (m & (1u << k)) out += static_cast<char>('1' + k);
    out += '}';
  }
  return out;
}

std::string Antichain::column_name() const {
  std::string out = "pid";
  for (std::uint8_t m : members_) {
    out += '_';
    for (int k = 0; k < 8; ++k)
      if (m & (1u << k)) out += static_cast<char>('1' + k);
  }
  return out;
}

bool lattice_leq(const Antichain& alpha, const Antichain& beta) {
  for (std::uint8_t b : beta.members()) {
    bool covered = false;
    for (std::uint8_t a : alpha.members()) {
      if ((a & ~b) == 0) {  // a is a subset of b
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

const std::vector<Antichain>& lattice(std::size_t n_sources) {
  // Hard-coded bottom-up orders; checked against lattice_leq by the tests.
  static const std::vector<Antichain> two = {
      Antichain({1, 2}),  // {1}{2}
      Antichain({1}),     // {1}
      Antichain({2}),     // {2}
      Antichain({3}),     // {12}
  };
  static const std::vector<Antichain> three = {
      Antichain({1, 2, 4}),  // {1}{2}{3}
      Antichain({1, 2}),     // {1}{2}
      Antichain({1, 4}),     // {1}{3}
      Antichain({2, 4}),     // {2}{3}
      Antichain({1, 6}),     // {1}{23}
      Antichain({2, 5}),     // {2}{13}
      Antichain({4, 3}),     // {3}{12}
      Antichain({1}),        // {1}
      Antichain({2}),        // {2}
      Antichain({4}),        // {3}
      Antichain({3, 5, 6}),  // {12}{13}{23}
      Antichain({3, 5}),     // {12}{13}
      Antichain({3, 6}),     // {12}{23}
      Antichain({5, 6}),     // {13}{23}
      Antichain({3}),        // {12}
      Antichain({5}),        // {13}
      Antichain({6}),        // {23}
      Antichain({7}),        // {123}
  };
  switch (n_sources) {
    case 2:
      return two;
    case 3:
      return three;
    default:
      throw UnsupportedSourceCount(
          "decomposition supports 2 or 3 sources, got " +
          std::to_string(n_sources));
  }
}

namespace {

// Specific information of one source subset about every target state:
// result[y] = sum_a p(a|y) log2( p(a,y) / (p(a) p(y)) ), 0 where p(y) = 0.
std::vector<double> spec_by_target(const DiscreteDistribution& d,
                                   const SourceTargetSplit& split,
                                   std::uint8_t subset,
                                   const detail::DenseMarginal& py) {
  const auto& src = split.sources.members();
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < src.size(); ++k)
    if (subset & (1u << k)) keep.push_back(src[k]);
  detail::DenseMarginal pay =
      detail::dense_marginal(d, IndexSet(keep).unioned(IndexSet{split.target}));
  std::size_t target_slot = static_cast<std::size_t>(
      std::lower_bound(pay.vars.begin(), pay.vars.end(), split.target) -
      pay.vars.begin());

  // Marginal of the subset alone, indexed by the pay cell code with the
  // target digit pinned to zero.
  std::vector<double> pa(pay.size(), 0.0);
  State state;
  for (std::size_t c = 0; c < pay.size(); ++c) {
    double p = pay.at(c);
    if (p <= 0.0) continue;
    pay.decode(c, state);
    state[target_slot] = 0;
    pa[pay.code_of_projected(state)] += p;
  }

  std::vector<double> spec(py.size(), 0.0);
  for (std::size_t c = 0; c < pay.size(); ++c) {
    double p_ay = pay.at(c);
    if (p_ay <= 0.0) continue;
    pay.decode(c, state);
    std::size_t y = state[target_slot];
    double p_y = py.at(y);
    state[target_slot] = 0;
    double p_a = pa[pay.code_of_projected(state)];
    if (p_a <= 0.0 || p_y <= 0.0)
      throw InternalInconsistency("marginal vanished under a supported state");
    spec[y] += (p_ay / p_y) * std::log2(p_ay / (p_a * p_y));
  }
  for (double& s : spec) {
    if (s < -1e-12)
      throw InternalInconsistency("specific information came out negative");
    s = detail::clamp_nonneg(s);
  }
  return spec;
}

void check_subset(const SourceTargetSplit& split, std::uint8_t subset) {
  if (subset == 0)
    throw InvalidArgument("source subset must be non-empty");
  if (subset >= (1u << split.sources.size()))
    throw InvalidArgument("source subset has bits beyond the source count");
}

}  // namespace

double specific_information(const DiscreteDistribution& d,
                            const SourceTargetSplit& split,
                            std::uint8_t source_subset, Symbol y) {
  split.check_against(d);
  check_subset(split, source_subset);
  if (y >= d.alphabet_size(split.target))
    throw MalformedState("target state out of range");
  detail::DenseMarginal py = detail::dense_marginal(d, IndexSet{split.target});
  if (py.at(y) <= 0.0)
    throw ZeroProbabilityCondition("target state has zero probability");
  return spec_by_target(d, split, source_subset, py)[y];
}

double i_min(const DiscreteDistribution& d, const SourceTargetSplit& split,
             const Antichain& node) {
  split.check_against(d);
  detail::DenseMarginal py = detail::dense_marginal(d, IndexSet{split.target});
  std::vector<std::vector<double>> spec;
  for (std::uint8_t m : node.members()) {
    check_subset(split, m);
    spec.push_back(spec_by_target(d, split, m, py));
  }
  double total = 0.0;
  for (std::size_t y = 0; y < py.size(); ++y) {
    double p_y = py.at(y);
    if (p_y <= 0.0) continue;
    double lo = spec[0][y];
    for (std::size_t k = 1; k < spec.size(); ++k)
      lo = std::min(lo, spec[k][y]);
    total += p_y * lo;
  }
  return total;
}

Decomposition decompose(const DiscreteDistribution& d,
                        const SourceTargetSplit& split) {
  split.check_against(d);
  const std::size_t n = split.sources.size();
  const std::vector<Antichain>& nodes = lattice(n);

  detail::DenseMarginal py = detail::dense_marginal(d, IndexSet{split.target});
  std::vector<std::vector<double>> spec(std::size_t{1} << n);
  for (std::uint8_t m = 1; m < (1u << n); ++m)
    spec[m] = spec_by_target(d, split, m, py);

  Decomposition out;
  out.nodes = nodes;
  out.i_min.reserve(nodes.size());
  for (const Antichain& node : nodes) {
    double total = 0.0;
    for (std::size_t y = 0; y < py.size(); ++y) {
      double p_y = py.at(y);
      if (p_y <= 0.0) continue;
      double lo = spec[node.members()[0]][y];
      for (std::size_t k = 1; k < node.members().size(); ++k)
        lo = std::min(lo, spec[node.members()[k]][y]);
      total += p_y * lo;
    }
    out.i_min.push_back(total);
  }

  // The top node's value must match the plain mutual information it
  // redistributes; disagreement means an internal bug, not bad input.
  {
    double mi = mutual_information(d, split.sources, IndexSet{split.target});
    if (std::abs(out.i_min.back() - mi) > 1e-9)
      throw InternalInconsistency(
          "full-set lattice node disagrees with mutual information");
  }

  out.terms.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double t = out.i_min[i];
    for (std::size_t j = 0; j < i; ++j)
      if (lattice_leq(nodes[j], nodes[i])) t -= out.terms[j];
    if (t < -1e-9)
      throw DecompositionError("negative decomposition term at " +
                               nodes[i].label());
    out.terms[i] = std::max(t, 0.0);
  }
  return out;
}

double Decomposition::term(std::string_view name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].label() == name || nodes[i].column_name() == name)
      return terms[i];
  throw UnknownMeasure("no decomposition term named " + std::string(name));
}

double ii_consistency(const DiscreteDistribution& d,
                      const SourceTargetSplit& split,
                      const Decomposition& pid) {
  const std::size_t n = split.sources.size();
  double ii = interaction_information(
      d, split.sources.unioned(IndexSet{split.target}));
  double combo = 0.0;
  if (n == 2) {
    combo = pid.term("{12}") - pid.term("{1}{2}");
  } else if (n == 3) {
    combo = pid.term("{123}") + pid.term("{1}{2}{3}") - pid.term("{1}{23}") -
            pid.term("{2}{13}") - pid.term("{3}{12}") - pid.term("{12}{13}") -
            pid.term("{12}{23}") - pid.term("{13}{23}") -
            2.0 * pid.term("{12}{13}{23}");
  } else {
    throw UnsupportedSourceCount("consistency check needs 2 or 3 sources");
  }
  return std::abs(ii - combo);
}

}  // namespace mvinfo
