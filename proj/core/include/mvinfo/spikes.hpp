#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvinfo/distribution.hpp"
#include "mvinfo/measure_set.hpp"

namespace mvinfo {

// One timestamped event on one channel.
struct Event {
  int channel = 0;
  double time_s = 0.0;
};

// A recording: events sorted by time, the sorted distinct channel ids, and
// the recording length. Build through make_event_series so the invariants
// hold.
struct EventSeries {
  std::vector<Event> events;
  std::vector<int> channels;
  double duration_s = 0.0;
};

// Sorts events (by time, then channel), derives the channel list, and checks
// times against [0, duration]. Without an explicit duration the recording is
// taken to end at the last event.
EventSeries make_event_series(std::vector<Event> events,
                              std::optional<double> duration_s = std::nullopt);

// Binary raster: for each channel, one bit per time bin ("was there at least
// one event in this bin"). Rows are packed 64 bins to a word, which is what
// makes sweeping every channel triple over long recordings cheap.
class SpikeRaster {
 public:
  SpikeRaster(std::vector<int> channel_ids, double bin_width_s,
              std::size_t n_bins);

  std::size_t channel_count() const { return channel_ids_.size(); }
  std::size_t n_bins() const { return n_bins_; }
  double bin_width_s() const { return bin_width_s_; }
  const std::vector<int>& channel_ids() const { return channel_ids_; }
  // Position of a channel id in channel_ids(); throws UnknownChannel.
  std::size_t position_of(int channel_id) const;

  bool cell(std::size_t channel_pos, std::size_t bin) const;
  void set_cell(std::size_t channel_pos, std::size_t bin, bool value);
  // Packed row, least significant bit = first bin of each word.
  const std::vector<std::uint64_t>& row(std::size_t channel_pos) const;

 private:
  std::vector<int> channel_ids_;
  double bin_width_s_;
  std::size_t n_bins_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

// Discretize with the given bin width; the number of bins is
// ceil(duration / width) and an event exactly at the end of the recording
// lands in the last bin.
SpikeRaster bin_events(const EventSeries& series, double bin_width_s);

// Joint distribution of (x1 at t, x2 at t, y at t+1) over all consecutive
// bin pairs, as counts over the t = 0 .. n_bins-2 window. Variables are
// named "x1", "x2", "y". Arguments are channel ids.
DiscreteDistribution triplet_distribution(const SpikeRaster& raster, int x1,
                                          int x2, int y);

// Circularly rotate each channel by an independent random offset in
// [1, n_bins-1], destroying cross-channel timing while keeping each
// channel's event count and autostructure. Deterministic in the seed.
SpikeRaster rotation_shuffle(const SpikeRaster& raster, std::uint64_t seed);

// One row of a full sweep: the measure battery evaluated on the triplet
// (x1, x2 -> y). `values` aligns with the column names the measure set
// reports; h_y is the target's entropy in the same triplet, used as the
// normalizer when writing results out.
struct TripletResult {
  int x1 = 0;
  int x2 = 0;
  int y = 0;
  std::vector<double> values;
  double h_y = 0.0;
};

// Evaluates the measures on every ordered choice of target y and unordered
// source pair {x1 < x2} from the raster's channels, sorted by (y, x1, x2).
// n_threads = 0 picks the hardware concurrency. The result is deterministic
// regardless of thread count.
std::vector<TripletResult> triplet_sweep(const SpikeRaster& raster,
                                         const MeasureSet& measures,
                                         unsigned n_threads = 0);

// Percentile summary of one result column across triplets. Normalized
// columns skip triplets whose target entropy is zero.
struct SummaryRow {
  std::string column;
  std::size_t count = 0;
  double p10 = 0.0;
  double median = 0.0;
  double p90 = 0.0;
  double mean = 0.0;
};

// Summaries for every raw column, every normalized column (value / h_y),
// and h_y itself. Percentiles use linear interpolation between order
// statistics.
std::vector<SummaryRow> summarize(const std::vector<TripletResult>& results,
                                  const MeasureSet& measures);

}  // namespace mvinfo
