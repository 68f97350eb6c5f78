#include "mvinfo/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "marginal_tables.hpp"

namespace mvinfo {

namespace detail {

namespace {

constexpr std::uint64_t kMaxSparseCode = std::uint64_t{1} << 62;
constexpr std::size_t kMaxDenseCells = std::size_t{1} << 24;

void check_vars(const DiscreteDistribution& d, const IndexSet& vars) {
  for (std::size_t i : vars)
    if (i >= d.variable_count())
      throw UnknownVariable("variable index " + std::to_string(i) +
                            " out of range");
}

}  // namespace

DenseMarginal dense_marginal(const DiscreteDistribution& d,
                             const IndexSet& over) {
  check_vars(d, over);
  DenseMarginal m;
  m.vars.assign(over.begin(), over.end());
  std::size_t cells = 1;
  for (std::size_t i : m.vars) {
    Symbol a = d.alphabet_size(i);
    if (cells > kMaxDenseCells / a)
      throw InvalidArgument("joint alphabet too large for a dense marginal");
    cells *= a;
    m.radix.push_back(a);
  }
  m.p.assign(cells, 0.0);
  for (const auto& [state, prob] : d.support()) m.p[m.code_of(state)] += prob;
  return m;
}

double entropy_over(const DiscreteDistribution& d, const IndexSet& vars) {
  if (vars.empty()) return 0.0;
  check_vars(d, vars);

  // Project the support onto `vars`, collapse equal projections, then sum
  // -p*log2(p) over the collapsed masses. The projection is encoded as a
  // mixed-radix integer so collapsing is a sort of plain integers.
  std::uint64_t stride = 1;
  std::vector<std::pair<std::size_t, std::uint64_t>> layout;  // (var, stride)
  for (auto it = vars.members().rbegin(); it != vars.members().rend(); ++it) {
    layout.emplace_back(*it, stride);
    Symbol a = d.alphabet_size(*it);
    if (stride > kMaxSparseCode / a)
      throw InvalidArgument("joint alphabet too large to encode");
    stride *= a;
  }

  std::vector<std::pair<std::uint64_t, double>> proj;
  proj.reserve(d.support().size());
  for (const auto& [state, p] : d.support()) {
    std::uint64_t code = 0;
    for (const auto& [var, s] : layout) code += s * state[var];
    proj.emplace_back(code, p);
  }
  std::sort(proj.begin(), proj.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  double h = 0.0;
  std::size_t i = 0;
  while (i < proj.size()) {
    double mass = proj[i].second;
    std::size_t j = i + 1;
    while (j < proj.size() && proj[j].first == proj[i].first)
      mass += proj[j++].second;
    if (mass > 0.0) h -= mass * std::log2(mass);
    i = j;
  }
  return h;
}

}  // namespace detail

using detail::clamp_nonneg;
using detail::entropy_over;

double entropy(const DiscreteDistribution& d, const IndexSet& vars) {
  if (vars.empty()) throw EmptyKeepSet("entropy needs at least one variable");
  return clamp_nonneg(entropy_over(d, vars));
}

double conditional_entropy(const DiscreteDistribution& d, const IndexSet& of,
                           const IndexSet& given) {
  if (of.empty())
    throw EmptyKeepSet("conditional entropy needs at least one variable");
  if (!of.disjoint_with(given))
    throw OverlappingBlocks("conditioned variables overlap the condition");
  if (given.empty()) return entropy(d, of);

  // Positions of `of` inside the distribution that conditioning leaves
  // behind (all variables except `given`, in ascending order).
  IndexSet rest = given.complement_in(d.variable_count());
  std::vector<std::size_t> of_in_rest;
  for (std::size_t i : of) {
    auto it = std::lower_bound(rest.begin(), rest.end(), i);
    of_in_rest.push_back(static_cast<std::size_t>(it - rest.begin()));
  }
  IndexSet mapped(std::move(of_in_rest));

  double h = 0.0;
  DiscreteDistribution cond_marg = d.marginalize(given);
  for (const auto& [gstate, pg] : cond_marg.support()) {
    DiscreteDistribution slice = d.condition(given, gstate);
    h += pg * entropy_over(slice, mapped);
  }
  return clamp_nonneg(h);
}

double mutual_information(const DiscreteDistribution& d, const IndexSet& a,
                          const IndexSet& b) {
  if (a.empty() || b.empty())
    throw EmptyKeepSet("mutual information needs two non-empty groups");
  if (!a.disjoint_with(b))
    throw OverlappingBlocks("mutual information groups overlap");
  return clamp_nonneg(entropy_over(d, a) + entropy_over(d, b) -
                      entropy_over(d, a.unioned(b)));
}

double conditional_mutual_information(const DiscreteDistribution& d,
                                      const IndexSet& a, const IndexSet& b,
                                      const IndexSet& given) {
  if (a.empty() || b.empty())
    throw EmptyKeepSet("mutual information needs two non-empty groups");
  if (!a.disjoint_with(b) || !a.disjoint_with(given) ||
      !b.disjoint_with(given))
    throw OverlappingBlocks("conditional mutual information groups overlap");
  double h_ag = entropy_over(d, a.unioned(given));
  double h_bg = entropy_over(d, b.unioned(given));
  double h_g = entropy_over(d, given);
  double h_abg = entropy_over(d, a.unioned(b).unioned(given));
  return clamp_nonneg(h_ag + h_bg - h_g - h_abg);
}

double interaction_information(const DiscreteDistribution& d,
                               const IndexSet& vars) {
  if (vars.size() < 2)
    throw InvalidArgument("interaction information needs >= 2 variables");
  if (vars.size() > 20)
    throw InvalidArgument("interaction information limited to 20 variables");
  detail::check_vars(d, vars);

  const auto& members = vars.members();
  const std::size_t n = members.size();
  double ii = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (1u << k)) subset.push_back(members[k]);
    double h = entropy_over(d, IndexSet(std::move(subset)));
    // -(-1)^(n - |subset|) * H(subset)
    bool negate = ((n - static_cast<std::size_t>(std::popcount(mask))) % 2) == 0;
    ii += negate ? -h : h;
  }
  return ii;
}

double co_information(const DiscreteDistribution& d, const IndexSet& vars) {
  double ii = interaction_information(d, vars);
  return (vars.size() % 2 == 0) ? ii : -ii;
}

double total_correlation(const DiscreteDistribution& d, const IndexSet& vars) {
  if (vars.empty())
    throw EmptyKeepSet("total correlation needs at least one variable");
  double sum = 0.0;
  for (std::size_t i : vars) sum += entropy_over(d, IndexSet{i});
  return clamp_nonneg(sum - entropy_over(d, vars));
}

double dual_total_correlation(const DiscreteDistribution& d,
                              const IndexSet& vars) {
  if (vars.empty())
    throw EmptyKeepSet("dual total correlation needs at least one variable");
  double joint = entropy_over(d, vars);
  double sum = 0.0;
  for (std::size_t i : vars) sum += entropy_over(d, vars.minus(IndexSet{i}));
  return clamp_nonneg(sum - static_cast<double>(vars.size() - 1) * joint);
}

namespace {

// Conditional tables p(x_i | y) for each source, plus the source-and-target
// joint, shared by delta_i and mi_delta_gap.
struct ConditionalIndependenceModel {
  detail::DenseMarginal joint;  // over sources + target
  detail::DenseMarginal py;     // over target
  std::size_t target_slot;      // position of the target inside joint.vars
  // cond[i][y * radix_i + x_i] = p(x_i | y); only filled where p(y) > 0.
  std::vector<std::vector<double>> cond;
  std::vector<Symbol> source_radix;
};

ConditionalIndependenceModel build_ci_model(const DiscreteDistribution& d,
                                            const SourceTargetSplit& split) {
  split.check_against(d);
  ConditionalIndependenceModel m;
  IndexSet all = split.sources.unioned(IndexSet{split.target});
  m.joint = detail::dense_marginal(d, all);
  m.py = detail::dense_marginal(d, IndexSet{split.target});
  m.target_slot = static_cast<std::size_t>(
      std::lower_bound(m.joint.vars.begin(), m.joint.vars.end(),
                       split.target) -
      m.joint.vars.begin());

  const std::size_t ny = m.py.size();
  for (std::size_t i : split.sources) {
    detail::DenseMarginal pxy =
        detail::dense_marginal(d, IndexSet{i, split.target});
    Symbol ai = d.alphabet_size(i);
    std::vector<double> table(static_cast<std::size_t>(ai) * ny, 0.0);
    // pxy cells are (x, y) or (y, x) depending on index order.
    bool target_first = split.target < i;
    for (std::size_t c = 0; c < pxy.size(); ++c) {
      double p = pxy.at(c);
      if (p <= 0.0) continue;
      std::size_t x = target_first ? c % ai : c / ny;
      std::size_t y = target_first ? c / ai : c % ny;
      table[y * ai + x] = p / m.py.at(y);
    }
    m.cond.push_back(std::move(table));
    m.source_radix.push_back(ai);
  }
  return m;
}

// Product over sources of p(x_i | y) for the joint cell decoded in `state`.
double independent_conditional(const ConditionalIndependenceModel& m,
                               const State& state, std::size_t y) {
  double prod = 1.0;
  std::size_t si = 0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    if (k == m.target_slot) continue;
    prod *= m.cond[si][y * m.source_radix[si] + state[k]];
    ++si;
  }
  return prod;
}

}  // namespace

double delta_i(const DiscreteDistribution& d, const SourceTargetSplit& split) {
  ConditionalIndependenceModel m = build_ci_model(d, split);

  // Per source state: the data marginal p(x) and the independent model's
  // p_ind(x) = sum_y p(y) prod_i p(x_i|y), both indexed by the joint cell
  // code with the target digit pinned to zero.
  std::vector<double> p_x(m.joint.size(), 0.0);
  std::vector<double> p_ind_x(m.joint.size(), 0.0);
  State state;
  for (std::size_t c = 0; c < m.joint.size(); ++c) {
    m.joint.decode(c, state);
    if (state[m.target_slot] == 0) {
      double acc = 0.0;
      for (std::size_t y = 0; y < m.py.size(); ++y) {
        double py = m.py.at(y);
        if (py <= 0.0) continue;
        acc += py * independent_conditional(m, state, y);
      }
      p_ind_x[c] = acc;
    }
    double pxy = m.joint.at(c);
    if (pxy > 0.0) {
      state[m.target_slot] = 0;
      p_x[m.joint.code_of_projected(state)] += pxy;
    }
  }

  // Expected divergence of p(y | x) from the Bayes inversion of the
  // independent model, p_ind(y | x) = p(y) prod_i p(x_i|y) / p_ind(x).
  double sum = 0.0;
  for (std::size_t c = 0; c < m.joint.size(); ++c) {
    double pxy = m.joint.at(c);
    if (pxy <= 0.0) continue;
    m.joint.decode(c, state);
    std::size_t y = state[m.target_slot];
    double prod = independent_conditional(m, state, y);
    state[m.target_slot] = 0;
    std::size_t x_code = m.joint.code_of_projected(state);
    double p_cond = pxy / p_x[x_code];
    double p_ind_cond = m.py.at(y) * prod / p_ind_x[x_code];
    if (p_ind_cond <= 0.0)
      throw InternalInconsistency(
          "independent model assigns zero to a supported state");
    sum += pxy * std::log2(p_cond / p_ind_cond);
  }
  return clamp_nonneg(sum);
}

double mi_delta_gap(const DiscreteDistribution& d,
                    const SourceTargetSplit& split) {
  ConditionalIndependenceModel m = build_ci_model(d, split);

  // p_ind(x) = sum_y p(y) * prod_i p(x_i | y), indexed like the joint table
  // with the target slot pinned to zero stride.
  std::vector<double> p_ind_x(m.joint.size(), 0.0);
  State state;
  for (std::size_t c = 0; c < m.joint.size(); ++c) {
    m.joint.decode(c, state);
    if (state[m.target_slot] != 0) continue;
    double acc = 0.0;
    for (std::size_t y = 0; y < m.py.size(); ++y) {
      double py = m.py.at(y);
      if (py <= 0.0) continue;
      acc += py * independent_conditional(m, state, y);
    }
    p_ind_x[c] = acc;
  }

  double sum = 0.0;
  for (std::size_t c = 0; c < m.joint.size(); ++c) {
    double pxy = m.joint.at(c);
    if (pxy <= 0.0) continue;
    m.joint.decode(c, state);
    std::size_t y = state[m.target_slot];
    double p_ind_cond = independent_conditional(m, state, y);
    state[m.target_slot] = 0;
    double p_ind_marg = p_ind_x[m.joint.code_of_projected(state)];
    if (p_ind_cond <= 0.0 || p_ind_marg <= 0.0)
      throw InternalInconsistency(
          "independent model assigns zero to a supported state");
    sum += pxy * std::log2(p_ind_cond / p_ind_marg);
  }
  return sum;
}

double redundancy_synergy_index(const DiscreteDistribution& d,
                                const SourceTargetSplit& split) {
  split.check_against(d);
  IndexSet y{split.target};
  double rsi = mutual_information(d, split.sources, y);
  for (std::size_t i : split.sources)
    rsi -= mutual_information(d, IndexSet{i}, y);
  return rsi;
}

namespace {

// Calls `fn` with every partition of {0..n-1} into at least `min_blocks`
// blocks, using restricted-growth assignment.
template <typename Fn>
void for_each_partition(std::size_t n, std::size_t min_blocks, Fn&& fn) {
  std::vector<std::size_t> assign(n, 0);
  auto recurse = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      if (used >= min_blocks) fn(assign, used);
      return;
    }
    for (std::size_t b = 0; b <= used; ++b) {
      assign[i] = b;
      self(self, i + 1, b == used ? used + 1 : used);
    }
  };
  recurse(recurse, 0, 0);
}

}  // namespace

double varadan_synergy(const DiscreteDistribution& d,
                       const SourceTargetSplit& split) {
  split.check_against(d);
  const std::size_t n = split.sources.size();
  if (n < 2)
    throw UnsupportedSourceCount("synergy needs at least two sources");
  if (n > 10)
    throw UnsupportedSourceCount("synergy limited to 10 sources");

  IndexSet y{split.target};
  const auto& members = split.sources.members();
  double best = -std::numeric_limits<double>::infinity();
  for_each_partition(n, 2, [&](const std::vector<std::size_t>& assign,
                               std::size_t blocks) {
    std::vector<std::vector<std::size_t>> groups(blocks);
    for (std::size_t i = 0; i < n; ++i)
      groups[assign[i]].push_back(members[i]);
    double sum = 0.0;
    for (auto& g : groups)
      sum += mutual_information(d, IndexSet(std::move(g)), y);
    best = std::max(best, sum);
  });
  return mutual_information(d, split.sources, y) - best;
}

}  // namespace mvinfo
