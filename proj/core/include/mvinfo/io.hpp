#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mvinfo/distribution.hpp"
#include "mvinfo/measure_set.hpp"
#include "mvinfo/spikes.hpp"

namespace mvinfo::io {

// Canonical text form of every number this library emits: decimal, 12
// significant digits, ties resolved to even by the underlying conversion.
// Negative zero prints as "0".
std::string format_number(double value);

// Distributions.
//
// CSV: header "p,<var1>,...,<varN>", one support row per line, e.g.
//   p,x1,x2,y
//   0.25,0,1,1
// Alphabet sizes are inferred (largest symbol + 1 per variable). The JSON
// form carries them explicitly:
//   {"variables": ["x1","x2","y"], "alphabets": [2,2,2],
//    "states": [{"p": 0.25, "state": [0,1,1]}, ...]}
DiscreteDistribution read_distribution_csv(std::istream& in);
DiscreteDistribution read_distribution_json(std::istream& in);
void write_distribution_csv(std::ostream& out, const DiscreteDistribution& d);
void write_distribution_json(std::ostream& out, const DiscreteDistribution& d);
// Dispatches on the extension: ".json" is JSON, anything else CSV.
DiscreteDistribution load_distribution(const std::filesystem::path& path);
void save_distribution(const std::filesystem::path& path,
                       const DiscreteDistribution& d);

// Event lists. CSV with header "channel,time_s", one event per line.
EventSeries read_events_csv(std::istream& in);
EventSeries load_events(const std::filesystem::path& path);

// Rasters. CSV whose comment line "# bin_width_s=<w>" fixes the bin width,
// followed by one row per channel: "<channel_id>,<bit>,<bit>,...".
SpikeRaster read_raster_csv(std::istream& in);
void write_raster_csv(std::ostream& out, const SpikeRaster& raster);
SpikeRaster load_raster(const std::filesystem::path& path);
void save_raster(const std::filesystem::path& path, const SpikeRaster& raster);

// Sweep results. Columns: y,x1,x2, the raw measure columns, the same
// columns normalized by the target entropy (empty where that entropy is 0),
// then h_y. With `shuffled` the same blocks repeat with a _shuffled suffix;
// the shuffled results must cover the same triplets in the same order.
void write_sweep_csv(std::ostream& out,
                     const std::vector<TripletResult>& results,
                     const MeasureSet& measures,
                     const std::vector<TripletResult>* shuffled = nullptr);

// Percentile summary as CSV: column,count,p10,median,p90,mean.
void write_summary_csv(std::ostream& out,
                       const std::vector<SummaryRow>& rows);

}  // namespace mvinfo::io
