// Acceptance gate: one self-contained check per shipped guarantee, each
// printing a single PASS/FAIL line. Run with no arguments for the whole
// gate or with a number (1-10) for one check. Exit status is 0 exactly
// when every selected check passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "mvinfo/io.hpp"
#include "mvinfo/measure_set.hpp"
#include "mvinfo/measures.hpp"
#include "mvinfo/netgen.hpp"
#include "mvinfo/pid.hpp"
#include "mvinfo/spikes.hpp"
#include "oracle.hpp"
#include "random_dist.hpp"
#include "tables.hpp"

using namespace mvinfo;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

int failures = 0;

bool expect(bool ok, const char* what) {
  if (!ok) {
    std::printf("  check failed: %s\n", what);
    ++failures;
  }
  return ok;
}

bool expect_near(double got, double want, double tol, const char* what) {
  if (!(std::abs(got - want) <= tol)) {
    std::printf("  check failed: %s (got %.15g, want %.15g, tol %g)\n", what,
                got, want, tol);
    ++failures;
    return false;
  }
  return true;
}

std::filesystem::path data_dir() { return MVINFO_DATA_PATH; }

// ---- reference-table criteria ----------------------------------------------

bool reference_table(const std::string& filter) {
  return run_tables(data_dir(), filter, /*verbose=*/false) == 0;
}

bool criterion1(double& elapsed) {
  Timer timer;
  bool ok = reference_table("gates");
  elapsed = timer.seconds();
  return ok && expect(elapsed < 1.0, "gate battery under one second");
}

bool criterion2(double&) { return reference_table("and_channel"); }

bool criterion3(double&) {
  bool ok = reference_table("twins_noisy");
  // The headline relation of that system: the divergence from conditional
  // independence exceeds the joint information itself.
  auto d = io::load_distribution(data_dir() / "systems" / "twins_noisy.csv");
  SourceTargetSplit split{IndexSet{0, 1}, 2};
  double di = delta_i(d, split);
  double mi = mutual_information(d, IndexSet{0, 1}, IndexSet{2});
  ok &= expect(di > mi, "divergence exceeds joint information");
  ok &= expect_near(di, 0.0337, 5e-5, "divergence value");
  ok &= expect_near(mi, 0.0323, 5e-5, "joint information value");
  return ok;
}

bool criterion4(double&) {
  return reference_table("two_bit_copy") & reference_table("twins_constant");
}

bool criterion5(double&) { return reference_table("parity_gates"); }

bool criterion6(double& elapsed) {
  Timer timer;
  bool ok = reference_table("network_joint");
  ok &= reference_table("network_battery");
  elapsed = timer.seconds();
  return ok && expect(elapsed < 1.0, "network tables under one second");
}

// ---- identity suite ---------------------------------------------------------

bool criterion7(double&) {
  const double tol = 1e-10;
  std::mt19937_64 gen(2024);
  bool ok = true;
  int decompositions = 0;

  for (int round = 0; round < 1000 && ok; ++round) {
    std::size_t n_vars = 2 + static_cast<std::size_t>(round % 3);
    auto d = testutil::random_distribution(gen, n_vars, 3);
    std::size_t last = n_vars - 1;

    std::vector<std::size_t> all_members;
    for (std::size_t i = 0; i < n_vars; ++i) all_members.push_back(i);
    IndexSet everything(all_members);
    std::vector<std::size_t> front_members(all_members.begin(),
                                           all_members.end() - 1);
    IndexSet front(front_members);
    IndexSet back{last};

    // Mutual information written three ways.
    double mi = mutual_information(d, front, back);
    ok &= expect_near(
        mi, entropy(d, front) - conditional_entropy(d, front, back), tol,
        "mi = H(A) - H(A|B)");
    ok &= expect_near(
        mi, entropy(d, back) - conditional_entropy(d, back, front), tol,
        "mi = H(B) - H(B|A)");
    ok &= expect_near(
        mi,
        entropy(d, front) + entropy(d, back) - entropy(d, everything), tol,
        "mi = H(A) + H(B) - H(AB)");

    // Interaction information over the first three variables: the three
    // conditioning orders and the subset-entropy expansion must agree.
    if (n_vars >= 3) {
      IndexSet a{0}, b{1}, c{2};
      double ii = interaction_information(d, IndexSet{0, 1, 2});
      ok &= expect_near(ii,
                        conditional_mutual_information(d, a, b, c) -
                            mutual_information(d, a, b),
                        tol, "ii via conditioning on the third");
      ok &= expect_near(ii,
                        conditional_mutual_information(d, a, c, b) -
                            mutual_information(d, a, c),
                        tol, "ii via conditioning on the second");
      ok &= expect_near(ii,
                        conditional_mutual_information(d, b, c, a) -
                            mutual_information(d, b, c),
                        tol, "ii via conditioning on the first");
      double expansion = entropy(d, IndexSet{0, 1}) +
                         entropy(d, IndexSet{0, 2}) +
                         entropy(d, IndexSet{1, 2}) - entropy(d, a) -
                         entropy(d, b) - entropy(d, c) -
                         entropy(d, IndexSet{0, 1, 2});
      ok &= expect_near(ii, expansion, tol, "ii entropy expansion");
    }

    // Sign law between the two conventions holds exactly.
    double ii_all = interaction_information(d, everything);
    double ci_all = co_information(d, everything);
    double sign = (n_vars % 2 == 0) ? 1.0 : -1.0;
    ok &= expect(ci_all == sign * ii_all, "ci sign law is exact");

    // Total correlation accumulates along the chain.
    double chain = 0.0;
    for (std::size_t k = 1; k < n_vars; ++k) {
      std::vector<std::size_t> head;
      for (std::size_t i = 0; i < k; ++i) head.push_back(i);
      chain += mutual_information(d, IndexSet(head), IndexSet{k});
    }
    ok &= expect_near(total_correlation(d, everything), chain, tol,
                      "tc chain form");

    // Dual total correlation two ways.
    double dtc = dual_total_correlation(d, everything);
    double via_conditionals = entropy(d, everything);
    double via_informations = -total_correlation(d, everything);
    for (std::size_t i = 0; i < n_vars; ++i) {
      IndexSet self{i};
      IndexSet rest = self.complement_in(n_vars);
      via_conditionals -= conditional_entropy(d, self, rest);
      via_informations += mutual_information(d, self, rest);
    }
    ok &= expect_near(dtc, via_conditionals, tol,
                      "dtc = H(S) - sum of residual entropies");
    ok &= expect_near(dtc, via_informations, tol,
                      "dtc = sum of each-against-rest informations - tc");

    // Decomposition bookkeeping against the split (sources = all but last).
    SourceTargetSplit split{front, last};
    double di = delta_i(d, split);
    ok &= expect(di >= 0.0, "divergence from conditional independence >= 0");
    ok &= expect_near(di + mi_delta_gap(d, split), mi, tol,
                      "divergence plus gap recovers mi");

    if (front.size() == 2 || front.size() == 3) {
      auto pid = decompose(d, split);
      ++decompositions;
      double sum = 0.0;
      for (double t : pid.terms) {
        ok &= expect(t >= 0.0, "decomposition terms are non-negative");
        sum += t;
      }
      ok &= expect_near(sum, mi, tol, "decomposition terms sum to mi");
      ok &= expect_near(ii_consistency(d, split, pid), 0.0, tol,
                        "decomposition reproduces interaction information");
      if (front.size() == 2)
        ok &= expect_near(pid.term("pid_12") - pid.term("pid_1_2"), ii_all,
                          tol, "synergy minus redundancy equals ii");
    }
  }
  return ok && expect(decompositions >= 600, "identity suite coverage");
}

// ---- exhaustive oracle grid -------------------------------------------------

bool criterion8(double&) {
  const double tol = 1e-10;
  bool ok = true;
  std::size_t count = 0;

  // Every pmf over three binary variables whose probabilities are
  // multiples of 1/8.
  std::vector<int> cells(8, 0);
  auto visit = [&](const auto& self, std::size_t cell, int left) -> void {
    if (!ok) return;
    if (cell == 7) {
      cells[7] = left;
      ++count;

      std::vector<std::pair<State, double>> pmf;
      for (std::size_t c = 0; c < 8; ++c) {
        if (cells[c] == 0) continue;
        State s{static_cast<Symbol>(c >> 2 & 1),
                static_cast<Symbol>(c >> 1 & 1),
                static_cast<Symbol>(c & 1)};
        pmf.emplace_back(std::move(s), cells[c] / 8.0);
      }
      DiscreteDistribution d({"a", "b", "y"}, {2, 2, 2}, pmf);
      auto j = oracle::joint(d);

      ok &= expect_near(entropy(d, IndexSet{0, 1, 2}),
                        oracle::entropy_of(j, {0, 1, 2}), tol, "entropy");
      ok &= expect_near(entropy(d, IndexSet{1}), oracle::entropy_of(j, {1}),
                        tol, "marginal entropy");
      ok &= expect_near(
          conditional_entropy(d, IndexSet{2}, IndexSet{0, 1}),
          oracle::entropy_of(j, {0, 1, 2}) - oracle::entropy_of(j, {0, 1}),
          tol, "conditional entropy");
      ok &= expect_near(mutual_information(d, IndexSet{0}, IndexSet{2}),
                        oracle::mutual_information(j, {0}, {2}), tol,
                        "pairwise mi");
      ok &= expect_near(mutual_information(d, IndexSet{0, 1}, IndexSet{2}),
                        oracle::mutual_information(j, {0, 1}, {2}), tol,
                        "joint mi");
      ok &= expect_near(
          conditional_mutual_information(d, IndexSet{0}, IndexSet{1},
                                         IndexSet{2}),
          oracle::conditional_mutual_information(j, {0}, {1}, {2}), tol,
          "conditional mi");
      ok &= expect_near(interaction_information(d, IndexSet{0, 1, 2}),
                        oracle::interaction_information(j, {0, 1, 2}), tol,
                        "interaction information");
      ok &= expect_near(co_information(d, IndexSet{0, 1, 2}),
                        oracle::co_information(j, {0, 1, 2}), tol,
                        "co-information");
      ok &= expect_near(total_correlation(d, IndexSet{0, 1, 2}),
                        oracle::total_correlation(j, {0, 1, 2}), tol,
                        "total correlation");
      ok &= expect_near(dual_total_correlation(d, IndexSet{0, 1, 2}),
                        oracle::dual_total_correlation(j, {0, 1, 2}), tol,
                        "dual total correlation");

      SourceTargetSplit split{IndexSet{0, 1}, 2};
      ok &= expect_near(delta_i(d, split), oracle::delta_i(j, {0, 1}, 2), tol,
                        "divergence from conditional independence");
      ok &= expect_near(mi_delta_gap(d, split),
                        oracle::mi_delta_gap(j, {0, 1}, 2), tol,
                        "information gap");
      ok &= expect_near(redundancy_synergy_index(d, split),
                        oracle::redundancy_synergy_index(j, {0, 1}, 2), tol,
                        "redundancy-synergy index");
      ok &= expect_near(varadan_synergy(d, split),
                        oracle::varadan_synergy(j, {0, 1}, 2), tol,
                        "partition synergy");

      auto pid = decompose(d, split);
      auto want = oracle::decompose(j, {0, 1}, 2);
      for (std::size_t i = 0; i < pid.nodes.size(); ++i) {
        oracle::Node key = oracle::node_from_masks(pid.nodes[i].members());
        double expected = want.at(key);
        if (expected < 0.0 && expected > -1e-9) expected = 0.0;
        ok &= expect_near(pid.terms[i], expected, tol,
                          "decomposition term");
        ok &= expect_near(pid.i_min[i],
                          oracle::i_min(j, {0, 1}, 2, key), tol,
                          "lattice i_min");
      }
      return;
    }
    for (int take = 0; take <= left; ++take) {
      cells[cell] = take;
      self(self, cell + 1, left - take);
      if (!ok) return;
    }
  };
  visit(visit, 0, 8);

  return ok && expect(count == 6435, "eighth-grid enumeration is complete");
}

// ---- estimation pipeline ----------------------------------------------------

bool criterion9(double& elapsed) {
  Timer timer;
  bool ok = true;

  NetworkParams params{0.02, 0.0, 0.1, 0.1};  // the "parallel" network
  auto exact_dist = expand(params);
  SourceTargetSplit split{IndexSet{0, 1}, 2};
  MeasureSet set =
      MeasureSet::parse({"mi_1", "ii", "pid"}, 2);
  auto exact = set.evaluate(exact_dist, split);

  // Draw one million time steps from the joint and lay them out as a
  // recording: sources at t, target response at t+1.
  const std::size_t kSteps = 1000000;
  std::vector<double> cum;
  std::vector<State> states;
  {
    double acc = 0.0;
    for (const auto& [state, p] : exact_dist.support()) {
      acc += p;
      cum.push_back(acc);
      states.push_back(state);
    }
    cum.back() = 1.0;
  }
  SpikeRaster raster({1, 2, 3}, 0.016, kSteps + 1);
  std::vector<std::size_t> counts(states.size(), 0);
  std::mt19937_64 gen(418);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t t = 0; t < kSteps; ++t) {
    double u = unit(gen);
    std::size_t pick =
        static_cast<std::size_t>(std::lower_bound(cum.begin(), cum.end(), u) -
                                 cum.begin());
    ++counts[pick];
    const State& s = states[pick];
    if (s[0]) raster.set_cell(0, t, true);
    if (s[1]) raster.set_cell(1, t, true);
    if (s[2]) raster.set_cell(2, t + 1, true);
  }

  // The packed-word counting path must reproduce the sampled counts.
  auto est_dist = triplet_distribution(raster, 1, 2, 3);
  for (std::size_t i = 0; i < states.size(); ++i) {
    double recovered =
        est_dist.probability(states[i]) * static_cast<double>(kSteps);
    ok &= expect_near(recovered, static_cast<double>(counts[i]), 1e-6,
                      "raster counting matches the sampled draws");
  }
  auto est = set.evaluate(est_dist, split);

  // Resampling standard errors for the plug-in estimates.
  const int kResamples = 200;
  std::vector<std::vector<double>> resampled(exact.size());
  for (int b = 0; b < kResamples; ++b) {
    std::vector<std::pair<State, double>> pmf;
    std::size_t remaining = kSteps;
    double mass_left = 1.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      std::size_t draw;
      double p_cell = static_cast<double>(counts[i]) /
                      static_cast<double>(kSteps);
      if (i + 1 == states.size()) {
        draw = remaining;
      } else {
        double q = std::min(1.0, std::max(0.0, p_cell / mass_left));
        std::binomial_distribution<std::size_t> binom(remaining, q);
        draw = binom(gen);
      }
      remaining -= draw;
      mass_left -= p_cell;
      if (draw > 0)
        pmf.emplace_back(states[i],
                         static_cast<double>(draw) /
                             static_cast<double>(kSteps));
    }
    DiscreteDistribution boot(exact_dist.names(),
                              exact_dist.alphabet_sizes(), pmf);
    auto values = set.evaluate(boot, split);
    for (std::size_t c = 0; c < values.size(); ++c)
      resampled[c].push_back(values[c]);
  }

  for (std::size_t c = 0; c < exact.size(); ++c) {
    double mean = 0.0;
    for (double v : resampled[c]) mean += v;
    mean /= kResamples;
    double var = 0.0;
    for (double v : resampled[c]) var += (v - mean) * (v - mean);
    double se = std::sqrt(var / (kResamples - 1));
    const std::string& column = set.column_names()[c];
    std::printf("  %-10s exact %.6f estimated %.6f se %.6f\n", column.c_str(),
                exact[c], est[c], se);
    ok &= expect(std::abs(est[c] - exact[c]) <= 3.0 * se + 1e-12,
                 "estimate within three standard errors");
  }

  // Rotation nulls must flatten the normalized source-target information.
  double h_y = entropy(est_dist, IndexSet{2});
  double nmi_data =
      mutual_information(est_dist, IndexSet{0, 1}, IndexSet{2}) / h_y;
  std::vector<double> nmi_null;
  for (std::uint64_t seed = 1; seed <= 11; ++seed) {
    auto null_dist =
        triplet_distribution(rotation_shuffle(raster, seed), 1, 2, 3);
    nmi_null.push_back(
        mutual_information(null_dist, IndexSet{0, 1}, IndexSet{2}) /
        entropy(null_dist, IndexSet{2}));
  }
  std::sort(nmi_null.begin(), nmi_null.end());
  double median = nmi_null[nmi_null.size() / 2];
  std::printf("  normalized mi: data %.6g, shuffled median %.6g\n", nmi_data,
              median);
  ok &= expect(median < 0.05 * nmi_data,
               "shuffled normalized information collapses below 5%");

  elapsed = timer.seconds();
  return ok && expect(elapsed < 60.0, "pipeline check under a minute");
}

// ---- full-scale sweep -------------------------------------------------------

bool criterion10(double& elapsed) {
  Timer timer;
  bool ok = true;

  const std::size_t kChannels = 60;
  const std::size_t kBins = 100000;
  std::vector<int> ids;
  for (std::size_t c = 0; c < kChannels; ++c)
    ids.push_back(static_cast<int>(c + 1));
  SpikeRaster raster(ids, 0.016, kBins);
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t c = 0; c < kChannels; ++c)
    for (std::size_t t = 0; t < kBins; ++t)
      if (unit(gen) < 0.05) raster.set_cell(c, t, true);

  MeasureSet battery = MeasureSet::all(2);
  auto results = triplet_sweep(raster, battery);
  ok &= expect(results.size() == 102660, "60 channels give 102660 triplets");
  for (std::size_t i = 1; i < results.size() && ok; ++i) {
    auto key = [](const TripletResult& r) {
      return std::tuple<int, int, int>(r.y, r.x1, r.x2);
    };
    ok &= expect(key(results[i - 1]) < key(results[i]),
                 "results are strictly ordered by (y, x1, x2)");
  }

  // Thread count must not change any value: rerun a 12-channel slice with
  // one worker and compare against the full run.
  std::vector<int> slice_ids(ids.begin(), ids.begin() + 12);
  SpikeRaster slice(slice_ids, 0.016, kBins);
  for (std::size_t c = 0; c < slice_ids.size(); ++c) {
    // Channel positions match because both lists are ascending.
    for (std::size_t w = 0; w < raster.row(c).size(); ++w)
      if (raster.row(c)[w] != 0)
        for (std::size_t b = 0; b < 64 && w * 64 + b < kBins; ++b)
          if (raster.cell(c, w * 64 + b)) slice.set_cell(c, w * 64 + b, true);
  }
  auto serial = triplet_sweep(slice, battery, 1);
  std::map<std::tuple<int, int, int>, const TripletResult*> by_triplet;
  for (const auto& r : results)
    by_triplet[{r.y, r.x1, r.x2}] = &r;
  for (const auto& r : serial) {
    const TripletResult* big = by_triplet.at({r.y, r.x1, r.x2});
    ok &= expect(big->values == r.values && big->h_y == r.h_y,
                 "single-threaded slice reproduces the full run exactly");
    if (!ok) break;
  }

  elapsed = timer.seconds();
  return ok && expect(elapsed < 600.0, "full sweep under ten minutes");
}

struct Criterion {
  int id;
  const char* what;
  bool (*check)(double&);
};

const Criterion kCriteria[] = {
    {1, "gate battery reference values (under 1 s)", criterion1},
    {2, "independent-model conditionals for the AND gate", criterion2},
    {3, "coupled-source battery and its headline inequality", criterion3},
    {4, "two-bit-copy and constant-target batteries", criterion4},
    {5, "three-source parity batteries, exact", criterion5},
    {6, "network expansion and battery sweep (under 1 s)", criterion6},
    {7, "identity suite over 1000 random distributions", criterion7},
    {8, "exhaustive eighth-grid against the direct-summation oracle",
     criterion8},
    {9, "estimation pipeline recovers the parallel network", criterion9},
    {10, "full sweep over a 60-channel raster", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > 10) {
      std::fprintf(stderr, "usage: %s [1-10]\n", argv[0]);
      return 2;
    }
  }

  bool all_ok = true;
  for (const Criterion& criterion : kCriteria) {
    if (only != 0 && criterion.id != only) continue;
    double elapsed = 0.0;
    bool ok = criterion.check(elapsed);
    std::printf("%s %2d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", criterion.id,
                criterion.what, elapsed);
    all_ok &= ok;
  }
  return all_ok ? 0 : 1;
}
