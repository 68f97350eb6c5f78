#include "mvinfo/spikes.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <utility>

#include "mvinfo/measures.hpp"

namespace mvinfo {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

}  // namespace

EventSeries make_event_series(std::vector<Event> events,
                              std::optional<double> duration_s) {
  for (const Event& e : events) {
    if (!std::isfinite(e.time_s) || e.time_s < 0.0)
      throw InvalidArgument("event time must be finite and non-negative");
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.time_s != b.time_s ? a.time_s < b.time_s
                                : a.channel < b.channel;
  });

  EventSeries series;
  series.duration_s =
      duration_s.value_or(events.empty() ? 0.0 : events.back().time_s);
  if (series.duration_s < 0.0)
    throw InvalidArgument("duration must be non-negative");
  if (!events.empty() && events.back().time_s > series.duration_s)
    throw InvalidArgument("event time exceeds the recording duration");

  for (const Event& e : events) series.channels.push_back(e.channel);
  std::sort(series.channels.begin(), series.channels.end());
  series.channels.erase(
      std::unique(series.channels.begin(), series.channels.end()),
      series.channels.end());
  series.events = std::move(events);
  return series;
}

SpikeRaster::SpikeRaster(std::vector<int> channel_ids, double bin_width_s,
                         std::size_t n_bins)
    : channel_ids_(std::move(channel_ids)),
      bin_width_s_(bin_width_s),
      n_bins_(n_bins) {
  if (!(bin_width_s_ > 0.0))
    throw NonPositiveBinWidth("bin width must be positive");
  if (n_bins_ == 0) throw TooShort("raster needs at least one bin");
  if (channel_ids_.empty()) throw EmptyInput("raster needs channels");
  std::vector<int> sorted = channel_ids_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DuplicateChannel("duplicate channel id");
  rows_.assign(channel_ids_.size(),
               std::vector<std::uint64_t>(words_for(n_bins_), 0));
}

std::size_t SpikeRaster::position_of(int channel_id) const {
  for (std::size_t i = 0; i < channel_ids_.size(); ++i)
    if (channel_ids_[i] == channel_id) return i;
  throw UnknownChannel("no channel with id " + std::to_string(channel_id));
}

bool SpikeRaster::cell(std::size_t channel_pos, std::size_t bin) const {
  return (rows_.at(channel_pos).at(bin / kWordBits) >> (bin % kWordBits)) & 1u;
}

void SpikeRaster::set_cell(std::size_t channel_pos, std::size_t bin,
                           bool value) {
  std::uint64_t& word = rows_.at(channel_pos).at(bin / kWordBits);
  std::uint64_t mask = std::uint64_t{1} << (bin % kWordBits);
  if (value)
    word |= mask;
  else
    word &= ~mask;
}

const std::vector<std::uint64_t>& SpikeRaster::row(
    std::size_t channel_pos) const {
  return rows_.at(channel_pos);
}

SpikeRaster bin_events(const EventSeries& series, double bin_width_s) {
  if (!(bin_width_s > 0.0))
    throw NonPositiveBinWidth("bin width must be positive");
  if (series.channels.empty()) throw EmptyInput("no channels to bin");

  // ceil(duration / width), nudged so that a duration that is an exact
  // multiple of the width is not pushed into an extra bin by the division
  // rounding up by one ulp.
  double q = series.duration_s / bin_width_s;
  auto n_bins = static_cast<std::size_t>(std::ceil(q * (1.0 - 1e-12)));
  if (n_bins == 0) n_bins = 1;

  SpikeRaster raster(series.channels, bin_width_s, n_bins);
  for (const Event& e : series.events) {
    auto bin = static_cast<std::size_t>(e.time_s / bin_width_s);
    // An event exactly at the end of the recording belongs to the last bin.
    if (bin >= n_bins) bin = n_bins - 1;
    raster.set_cell(raster.position_of(e.channel), bin, true);
  }
  return raster;
}

namespace {

// The two packed windows a triplet needs: `x` holds bins 0 .. n-2 of a
// channel, `y` holds bins 1 .. n-1 (the same channel one step later). Both
// are exactly W = n_bins - 1 valid bits, with the tail masked to zero.
struct Windows {
  std::vector<std::uint64_t> x;
  std::vector<std::uint64_t> y;
};

Windows make_windows(const SpikeRaster& raster, std::size_t pos) {
  const std::size_t w_bits = raster.n_bins() - 1;
  const std::size_t n_words = words_for(w_bits);
  const auto& row = raster.row(pos);

  Windows w;
  w.x.assign(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n_words));
  w.y.resize(n_words);
  for (std::size_t i = 0; i < n_words; ++i) {
    std::uint64_t lo = row[i] >> 1;
    std::uint64_t hi = (i + 1 < row.size()) ? row[i + 1] << 63 : 0;
    w.y[i] = lo | hi;
  }
  if (w_bits % kWordBits != 0) {
    std::uint64_t mask = (std::uint64_t{1} << (w_bits % kWordBits)) - 1;
    w.x.back() &= mask;
    w.y.back() &= mask;
  }
  return w;
}

std::uint64_t count_bits(const std::vector<std::uint64_t>& a) {
  std::uint64_t n = 0;
  for (std::uint64_t word : a) n += static_cast<std::uint64_t>(std::popcount(word));
  return n;
}

std::uint64_t count_and(const std::vector<std::uint64_t>& a,
                        const std::vector<std::uint64_t>& b) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    n += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return n;
}

std::uint64_t count_and3(const std::vector<std::uint64_t>& a,
                         const std::vector<std::uint64_t>& b,
                         const std::vector<std::uint64_t>& c) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    n += static_cast<std::uint64_t>(std::popcount(a[i] & b[i] & c[i]));
  return n;
}

// Joint (x1 at t, x2 at t, y at t+1) counts assembled from the five packed
// counts by inclusion-exclusion. Index = x1*4 + x2*2 + y.
std::array<std::uint64_t, 8> triplet_counts(std::uint64_t w, std::uint64_t c1,
                                            std::uint64_t c2, std::uint64_t cy,
                                            std::uint64_t c12,
                                            std::uint64_t c1y,
                                            std::uint64_t c2y,
                                            std::uint64_t c12y) {
  std::array<std::uint64_t, 8> n{};
  n[0b111] = c12y;
  n[0b110] = c12 - c12y;
  n[0b101] = c1y - c12y;
  n[0b011] = c2y - c12y;
  n[0b100] = c1 - c12 - c1y + c12y;
  n[0b010] = c2 - c12 - c2y + c12y;
  n[0b001] = cy - c1y - c2y + c12y;
  n[0b000] = w - c1 - c2 - cy + c12 + c1y + c2y - c12y;
  return n;
}

DiscreteDistribution distribution_from_counts(
    const std::array<std::uint64_t, 8>& counts, std::uint64_t window) {
  std::vector<std::pair<State, double>> pmf;
  for (Symbol s = 0; s < 8; ++s) {
    if (counts[s] == 0) continue;
    pmf.push_back({{(s >> 2) & 1u, (s >> 1) & 1u, s & 1u},
                   static_cast<double>(counts[s]) /
                       static_cast<double>(window)});
  }
  return DiscreteDistribution({"x1", "x2", "y"}, {2, 2, 2}, std::move(pmf));
}

}  // namespace

DiscreteDistribution triplet_distribution(const SpikeRaster& raster, int x1,
                                          int x2, int y) {
  if (x1 == x2 || x1 == y || x2 == y)
    throw InvalidArgument("triplet channels must be distinct");
  if (raster.n_bins() < 2)
    throw TooShort("need at least two bins to pair t with t+1");

  Windows wx1 = make_windows(raster, raster.position_of(x1));
  Windows wx2 = make_windows(raster, raster.position_of(x2));
  Windows wy = make_windows(raster, raster.position_of(y));
  const std::uint64_t window = raster.n_bins() - 1;

  auto counts = triplet_counts(
      window, count_bits(wx1.x), count_bits(wx2.x), count_bits(wy.y),
      count_and(wx1.x, wx2.x), count_and(wx1.x, wy.y), count_and(wx2.x, wy.y),
      count_and3(wx1.x, wx2.x, wy.y));
  return distribution_from_counts(counts, window);
}

SpikeRaster rotation_shuffle(const SpikeRaster& raster, std::uint64_t seed) {
  const std::size_t n = raster.n_bins();
  if (n < 2) throw TooShort("need at least two bins to rotate");

  SpikeRaster out(raster.channel_ids(), raster.bin_width_s(), n);
  std::mt19937_64 gen(seed);
  for (std::size_t c = 0; c < raster.channel_count(); ++c) {
    // Offsets are drawn channel by channel in channel order, by modulo so
    // the stream is reproducible across standard libraries.
    std::size_t offset = 1 + static_cast<std::size_t>(gen() % (n - 1));
    for (std::size_t b = 0; b < n; ++b)
      if (raster.cell(c, b)) out.set_cell(c, (b + offset) % n, true);
  }
  return out;
}

namespace {

struct TripletJob {
  std::size_t x1_pos, x2_pos, y_pos;
  int x1_id, x2_id, y_id;
};

}  // namespace

std::vector<TripletResult> triplet_sweep(const SpikeRaster& raster,
                                         const MeasureSet& measures,
                                         unsigned n_threads) {
  if (measures.n_sources() != 2)
    throw InvalidSplit("the sweep evaluates two sources against one target");
  if (raster.channel_count() < 3)
    throw InvalidArgument("sweep needs at least three channels");
  if (raster.n_bins() < 2)
    throw TooShort("need at least two bins to pair t with t+1");

  const std::size_t n_ch = raster.channel_count();
  const std::uint64_t window = raster.n_bins() - 1;

  // Channel positions in ascending id order, so results come out sorted by
  // (y, x1, x2) ids no matter how the raster lists its channels.
  std::vector<std::size_t> order(n_ch);
  for (std::size_t i = 0; i < n_ch; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return raster.channel_ids()[a] < raster.channel_ids()[b];
  });

  std::vector<Windows> windows;
  windows.reserve(n_ch);
  for (std::size_t pos = 0; pos < n_ch; ++pos)
    windows.push_back(make_windows(raster, pos));

  // Everything except the three-way intersection count can be shared across
  // triplets.
  std::vector<std::uint64_t> ones_x(n_ch), ones_y(n_ch);
  for (std::size_t i = 0; i < n_ch; ++i) {
    ones_x[i] = count_bits(windows[i].x);
    ones_y[i] = count_bits(windows[i].y);
  }
  std::vector<std::uint64_t> pair_xx(n_ch * n_ch, 0);
  std::vector<std::uint64_t> pair_xy(n_ch * n_ch, 0);
  for (std::size_t i = 0; i < n_ch; ++i) {
    for (std::size_t j = i + 1; j < n_ch; ++j) {
      std::uint64_t c = count_and(windows[i].x, windows[j].x);
      pair_xx[i * n_ch + j] = c;
      pair_xx[j * n_ch + i] = c;
    }
    for (std::size_t k = 0; k < n_ch; ++k)
      if (k != i) pair_xy[i * n_ch + k] = count_and(windows[i].x, windows[k].y);
  }

  std::vector<TripletJob> jobs;
  jobs.reserve(n_ch * (n_ch - 1) * (n_ch - 2) / 2);
  for (std::size_t yi = 0; yi < n_ch; ++yi) {
    for (std::size_t ai = 0; ai < n_ch; ++ai) {
      if (ai == yi) continue;
      for (std::size_t bi = ai + 1; bi < n_ch; ++bi) {
        if (bi == yi) continue;
        TripletJob job;
        job.x1_pos = order[ai];
        job.x2_pos = order[bi];
        job.y_pos = order[yi];
        job.x1_id = raster.channel_ids()[job.x1_pos];
        job.x2_id = raster.channel_ids()[job.x2_pos];
        job.y_id = raster.channel_ids()[job.y_pos];
        jobs.push_back(job);
      }
    }
  }

  std::vector<TripletResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    try {
      SourceTargetSplit split{IndexSet{0, 1}, 2};
      for (;;) {
        std::size_t start = next.fetch_add(32);
        if (start >= jobs.size()) return;
        std::size_t stop = std::min(start + 32, jobs.size());
        for (std::size_t t = start; t < stop; ++t) {
          const TripletJob& job = jobs[t];
          std::uint64_t c12y =
              count_and3(windows[job.x1_pos].x, windows[job.x2_pos].x,
                         windows[job.y_pos].y);
          auto counts = triplet_counts(
              window, ones_x[job.x1_pos], ones_x[job.x2_pos],
              ones_y[job.y_pos], pair_xx[job.x1_pos * n_ch + job.x2_pos],
              pair_xy[job.x1_pos * n_ch + job.y_pos],
              pair_xy[job.x2_pos * n_ch + job.y_pos], c12y);
          DiscreteDistribution d = distribution_from_counts(counts, window);
          TripletResult& r = results[t];
          r.x1 = job.x1_id;
          r.x2 = job.x2_id;
          r.y = job.y_id;
          r.values = measures.evaluate(d, split);
          r.h_y = entropy(d, IndexSet{2});
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      // Drain remaining work so other threads finish quickly.
      next.store(jobs.size());
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  unsigned threads = n_threads != 0 ? n_threads : (hw != 0 ? hw : 1);
  threads = std::min<unsigned>(
      threads, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

namespace {

double percentile(std::vector<double> sorted, double q) {
  // Linear interpolation between order statistics; q in [0, 100].
  if (sorted.empty()) return 0.0;
  if (sorted.size() == 1) return sorted[0];
  double rank = q / 100.0 * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(rank);
  if (lo >= sorted.size() - 1) return sorted.back();
  double frac = rank - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

SummaryRow summarize_column(std::string column, std::vector<double> values) {
  SummaryRow row;
  row.column = std::move(column);
  row.count = values.size();
  if (values.empty()) return row;
  double sum = 0.0;
  for (double v : values) sum += v;
  row.mean = sum / static_cast<double>(values.size());
  std::sort(values.begin(), values.end());
  row.p10 = percentile(values, 10.0);
  row.median = percentile(values, 50.0);
  row.p90 = percentile(std::move(values), 90.0);
  return row;
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<TripletResult>& results,
                                  const MeasureSet& measures) {
  if (results.empty()) throw EmptyInput("no sweep results to summarize");
  const auto& columns = measures.column_names();

  std::vector<SummaryRow> rows;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == "h_y") continue;  // reported once, at the end
    std::vector<double> raw;
    raw.reserve(results.size());
    for (const auto& r : results) raw.push_back(r.values[c]);
    rows.push_back(summarize_column(columns[c], std::move(raw)));
  }
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == "h_y") continue;
    std::vector<double> norm;
    for (const auto& r : results)
      if (r.h_y > 0.0) norm.push_back(r.values[c] / r.h_y);
    rows.push_back(summarize_column(columns[c] + "_norm", std::move(norm)));
  }
  {
    std::vector<double> hy;
    hy.reserve(results.size());
    for (const auto& r : results) hy.push_back(r.h_y);
    rows.push_back(summarize_column("h_y", std::move(hy)));
  }
  return rows;
}

}  // namespace mvinfo
