#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mvinfo/io.hpp"
#include "mvinfo/measure_set.hpp"
#include "mvinfo/netgen.hpp"
#include "mvinfo/pid.hpp"
#include "mvinfo/spikes.hpp"
#include "tables.hpp"

namespace {

using namespace mvinfo;

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> names;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) names.push_back(item);
  return names;
}

struct ComputeOptions {
  std::string dist_file;
  std::string sources;
  std::string target;
  std::string measures = "all";
  std::string unit = "bits";
};

int run_compute(const ComputeOptions& opt) {
  DiscreteDistribution d = io::load_distribution(opt.dist_file);

  std::vector<std::size_t> source_idx;
  for (const std::string& name : split_names(opt.sources))
    source_idx.push_back(d.index_of(name));
  SourceTargetSplit split{IndexSet(std::move(source_idx)),
                          d.index_of(opt.target)};
  split.check_against(d);

  MeasureSet set =
      MeasureSet::parse(split_names(opt.measures), split.sources.size());
  std::vector<double> values = set.evaluate(d, split);

  double scale = opt.unit == "millibits" ? 1000.0 : 1.0;
  std::cout << "measure," << opt.unit << '\n';
  for (std::size_t i = 0; i < values.size(); ++i)
    std::cout << set.column_names()[i] << ','
              << io::format_number(values[i] * scale) << '\n';
  return 0;
}

struct NetgenOptions {
  double p_r = 0.0;
  double p_12 = 0.0;
  double p_1y = 0.0;
  double p_2y = 0.0;
  std::string out;
};

int run_netgen(const NetgenOptions& opt) {
  NetworkParams params{opt.p_r, opt.p_12, opt.p_1y, opt.p_2y};
  io::save_distribution(opt.out, expand(params));
  std::cout << "measure,millibits\n";
  for (const SweepValue& v : sweep(params))
    std::cout << v.name << ',' << io::format_number(v.millibits) << '\n';
  return 0;
}

struct AnalyzeOptions {
  std::string events_file;
  std::string raster_file;
  double bin_width = 0.0;
  std::string measures = "all";
  std::string out;
  std::optional<std::uint64_t> shuffle_seed;
  unsigned threads = 0;
};

int run_analyze(const AnalyzeOptions& opt) {
  std::optional<SpikeRaster> raster;
  if (!opt.events_file.empty()) {
    raster = bin_events(io::load_events(opt.events_file), opt.bin_width);
  } else {
    raster = io::load_raster(opt.raster_file);
  }

  MeasureSet set = MeasureSet::parse(split_names(opt.measures), 2);
  std::vector<TripletResult> results = triplet_sweep(*raster, set, opt.threads);

  std::optional<std::vector<TripletResult>> shuffled;
  if (opt.shuffle_seed) {
    SpikeRaster null_raster = rotation_shuffle(*raster, *opt.shuffle_seed);
    shuffled = triplet_sweep(null_raster, set, opt.threads);
  }

  std::ofstream out(opt.out);
  if (!out) throw FileNotFound("cannot create " + opt.out);
  io::write_sweep_csv(out, results, set, shuffled ? &*shuffled : nullptr);

  io::write_summary_csv(std::cout, summarize(results, set));
  return 0;
}

struct ShuffleOptions {
  std::string raster_file;
  std::uint64_t seed = 0;
  std::string out;
};

int run_shuffle(const ShuffleOptions& opt) {
  io::save_raster(opt.out,
                  rotation_shuffle(io::load_raster(opt.raster_file), opt.seed));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "information measures over discrete joint distributions and event "
      "recordings"};
  app.require_subcommand(1);

  ComputeOptions compute_opt;
  CLI::App* compute =
      app.add_subcommand("compute",
                         "evaluate measures on a stored distribution");
  compute->add_option("--dist", compute_opt.dist_file, "distribution file")
      ->required();
  compute
      ->add_option("--sources", compute_opt.sources,
                   "comma-separated source variable names")
      ->required();
  compute->add_option("--target", compute_opt.target, "target variable name")
      ->required();
  compute->add_option("--measures", compute_opt.measures,
                      "comma-separated measure names (default: all)");
  compute->add_option("--unit", compute_opt.unit, "bits or millibits")
      ->check(CLI::IsMember({"bits", "millibits"}));

  std::string tables_filter;
  std::string tables_data = MVINFO_DEFAULT_DATA_DIR;
  CLI::App* tables = app.add_subcommand(
      "tables", "recompute the shipped reference values and report drift");
  tables->add_option("--filter", tables_filter,
                     "check only this reference table");
  tables->add_option("--data", tables_data, "data directory");

  NetgenOptions netgen_opt;
  CLI::App* netgen = app.add_subcommand(
      "netgen", "expand a three-node model network into its joint "
                "distribution");
  netgen->add_option("--pr", netgen_opt.p_r, "spontaneous rate")->required();
  netgen->add_option("--p12", netgen_opt.p_12, "x1 -> x2 weight")->required();
  netgen->add_option("--p1y", netgen_opt.p_1y, "x1 -> y weight")->required();
  netgen->add_option("--p2y", netgen_opt.p_2y, "x2 -> y weight")->required();
  netgen->add_option("--out", netgen_opt.out, "output distribution file")
      ->required();

  AnalyzeOptions analyze_opt;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "sweep the measures over every channel triplet");
  CLI::Option* events_opt =
      analyze->add_option("--events", analyze_opt.events_file,
                          "event file (channel,time_s)");
  CLI::Option* raster_opt =
      analyze->add_option("--raster", analyze_opt.raster_file,
                          "pre-binned raster file");
  events_opt->excludes(raster_opt);
  raster_opt->excludes(events_opt);
  CLI::Option* width_opt = analyze->add_option(
      "--bin-width", analyze_opt.bin_width, "bin width in seconds");
  width_opt->needs(events_opt);
  events_opt->needs(width_opt);
  analyze->add_option("--measures", analyze_opt.measures,
                      "comma-separated measure names (default: all)");
  analyze->add_option("--out", analyze_opt.out, "output CSV path")->required();
  analyze->add_option("--shuffle", analyze_opt.shuffle_seed,
                      "also sweep a rotation-shuffled raster with this seed");
  analyze->add_option("--threads", analyze_opt.threads,
                      "worker threads (default: all cores)");

  ShuffleOptions shuffle_opt;
  CLI::App* shuffle = app.add_subcommand(
      "shuffle", "rotation-shuffle a raster into a timing-destroyed null");
  shuffle->add_option("--raster", shuffle_opt.raster_file, "raster file")
      ->required();
  shuffle->add_option("--seed", shuffle_opt.seed, "random seed")->required();
  shuffle->add_option("--out", shuffle_opt.out, "output raster path")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) return run_compute(compute_opt);
    if (tables->parsed()) {
      int failures = run_tables(tables_data, tables_filter);
      return failures == 0 ? 0 : 1;
    }
    if (netgen->parsed()) return run_netgen(netgen_opt);
    if (analyze->parsed()) {
      if (analyze_opt.events_file.empty() && analyze_opt.raster_file.empty())
        throw mvinfo::InvalidArgument("analyze needs --events or --raster");
      return run_analyze(analyze_opt);
    }
    if (shuffle->parsed()) return run_shuffle(shuffle_opt);
  } catch (const mvinfo::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
