#include "mvinfo/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>
#include <utility>

#include "json.hpp"

namespace mvinfo::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    parse_fail(line_no, "expected a number, got '" + std::string(field) + "'");
  return value;
}

long long parse_int(std::string_view field, std::size_t line_no) {
  long long value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    parse_fail(line_no,
               "expected an integer, got '" + std::string(field) + "'");
  return value;
}

std::ifstream open_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open " + path.string());
  return in;
}

std::ofstream create_file(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FileNotFound("cannot create " + path.string());
  return out;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // fold -0 into 0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

DiscreteDistribution read_distribution_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw ParseError("empty distribution file");
  ++line_no;
  auto header = split(line, ',');
  if (header.size() < 2 || header[0] != "p")
    parse_fail(line_no, "header must be p,<var1>,...");
  std::vector<std::string> names;
  for (std::size_t i = 1; i < header.size(); ++i)
    names.emplace_back(header[i]);
  const std::size_t n = names.size();

  std::vector<std::pair<State, double>> pmf;
  std::vector<Symbol> alphabets(n, 1);
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (text.empty()) continue;
    auto fields = split(text, ',');
    if (fields.size() != n + 1)
      parse_fail(line_no, "expected " + std::to_string(n + 1) + " fields");
    double p = parse_double(fields[0], line_no);
    State state(n);
    for (std::size_t i = 0; i < n; ++i) {
      long long s = parse_int(fields[i + 1], line_no);
      if (s < 0 || s > std::numeric_limits<Symbol>::max() - 1)
        parse_fail(line_no, "symbol out of range");
      state[i] = static_cast<Symbol>(s);
      alphabets[i] = std::max(alphabets[i], static_cast<Symbol>(s + 1));
    }
    pmf.emplace_back(std::move(state), p);
  }
  if (pmf.empty()) throw ParseError("distribution file has no states");
  return DiscreteDistribution(std::move(names), std::move(alphabets),
                              std::move(pmf));
}

DiscreteDistribution read_distribution_json(std::istream& in) {
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    std::vector<std::string> names =
        j.at("variables").get<std::vector<std::string>>();
    std::vector<Symbol> alphabets =
        j.at("alphabets").get<std::vector<Symbol>>();
    std::vector<std::pair<State, double>> pmf;
    for (const auto& entry : j.at("states")) {
      pmf.emplace_back(entry.at("state").get<State>(),
                       entry.at("p").get<double>());
    }
    return DiscreteDistribution(std::move(names), std::move(alphabets),
                                std::move(pmf));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad distribution JSON: ") + e.what());
  }
}

void write_distribution_csv(std::ostream& out, const DiscreteDistribution& d) {
  out << "p";
  for (const auto& name : d.names()) out << ',' << name;
  out << '\n';
  for (const auto& [state, p] : d.support()) {
    out << format_number(p);
    for (Symbol s : state) out << ',' << s;
    out << '\n';
  }
}

void write_distribution_json(std::ostream& out,
                             const DiscreteDistribution& d) {
  nlohmann::json j;
  j["variables"] = d.names();
  j["alphabets"] = d.alphabet_sizes();
  nlohmann::json states = nlohmann::json::array();
  for (const auto& [state, p] : d.support())
    states.push_back({{"p", p}, {"state", state}});
  j["states"] = std::move(states);
  out << j.dump(2) << '\n';
}

DiscreteDistribution load_distribution(const std::filesystem::path& path) {
  std::ifstream in = open_file(path);
  return path.extension() == ".json" ? read_distribution_json(in)
                                     : read_distribution_csv(in);
}

void save_distribution(const std::filesystem::path& path,
                       const DiscreteDistribution& d) {
  std::ofstream out = create_file(path);
  if (path.extension() == ".json")
    write_distribution_json(out, d);
  else
    write_distribution_csv(out, d);
}

EventSeries read_events_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty event file");
  ++line_no;
  auto header = split(line, ',');
  if (header.size() != 2 || header[0] != "channel" || header[1] != "time_s")
    parse_fail(line_no, "header must be channel,time_s");

  std::vector<Event> events;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (text.empty()) continue;
    auto fields = split(text, ',');
    if (fields.size() != 2) parse_fail(line_no, "expected 2 fields");
    Event e;
    long long channel = parse_int(fields[0], line_no);
    if (channel < std::numeric_limits<int>::min() ||
        channel > std::numeric_limits<int>::max())
      parse_fail(line_no, "channel id out of range");
    e.channel = static_cast<int>(channel);
    e.time_s = parse_double(fields[1], line_no);
    events.push_back(e);
  }
  try {
    return make_event_series(std::move(events));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

EventSeries load_events(const std::filesystem::path& path) {
  std::ifstream in = open_file(path);
  return read_events_csv(in);
}

SpikeRaster read_raster_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  double bin_width = 0.0;
  bool have_width = false;
  std::vector<int> channels;
  std::vector<std::vector<bool>> bits;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      text = trim(text.substr(1));
      constexpr std::string_view kKey = "bin_width_s=";
      if (text.starts_with(kKey)) {
        if (have_width) parse_fail(line_no, "bin width given twice");
        bin_width = parse_double(text.substr(kKey.size()), line_no);
        have_width = true;
      }
      continue;
    }
    auto fields = split(text, ',');
    if (fields.size() < 2)
      parse_fail(line_no, "expected a channel id and at least one bin");
    long long channel = parse_int(fields[0], line_no);
    if (channel < std::numeric_limits<int>::min() ||
        channel > std::numeric_limits<int>::max())
      parse_fail(line_no, "channel id out of range");
    channels.push_back(static_cast<int>(channel));
    std::vector<bool> row;
    row.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i] == "0")
        row.push_back(false);
      else if (fields[i] == "1")
        row.push_back(true);
      else
        parse_fail(line_no, "raster cells must be 0 or 1");
    }
    if (!bits.empty() && row.size() != bits.front().size())
      parse_fail(line_no, "rows disagree on the number of bins");
    bits.push_back(std::move(row));
  }
  if (!have_width) throw ParseError("missing '# bin_width_s=' comment");
  if (bits.empty()) throw ParseError("raster file has no channel rows");

  try {
    SpikeRaster raster(std::move(channels), bin_width, bits.front().size());
    for (std::size_t c = 0; c < bits.size(); ++c)
      for (std::size_t b = 0; b < bits[c].size(); ++b)
        if (bits[c][b]) raster.set_cell(c, b, true);
    return raster;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

void write_raster_csv(std::ostream& out, const SpikeRaster& raster) {
  out << "# bin_width_s=" << format_number(raster.bin_width_s()) << '\n';
  for (std::size_t c = 0; c < raster.channel_count(); ++c) {
    out << raster.channel_ids()[c];
    for (std::size_t b = 0; b < raster.n_bins(); ++b)
      out << ',' << (raster.cell(c, b) ? '1' : '0');
    out << '\n';
  }
}

SpikeRaster load_raster(const std::filesystem::path& path) {
  std::ifstream in = open_file(path);
  return read_raster_csv(in);
}

void save_raster(const std::filesystem::path& path,
                 const SpikeRaster& raster) {
  std::ofstream out = create_file(path);
  write_raster_csv(out, raster);
}

namespace {

// Indices of the measure columns that make up the per-triplet blocks; h_y
// is excluded because it gets a dedicated final column.
std::vector<std::size_t> value_columns(const MeasureSet& measures) {
  std::vector<std::size_t> keep;
  const auto& columns = measures.column_names();
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] != "h_y") keep.push_back(i);
  return keep;
}

void write_result_block(std::ostream& out, const TripletResult& r,
                        const std::vector<std::size_t>& keep) {
  for (std::size_t i : keep) out << ',' << format_number(r.values[i]);
  for (std::size_t i : keep) {
    out << ',';
    if (r.h_y > 0.0) out << format_number(r.values[i] / r.h_y);
  }
  out << ',' << format_number(r.h_y);
}

}  // namespace

void write_sweep_csv(std::ostream& out,
                     const std::vector<TripletResult>& results,
                     const MeasureSet& measures,
                     const std::vector<TripletResult>* shuffled) {
  if (shuffled) {
    if (shuffled->size() != results.size())
      throw InvalidArgument("shuffled results do not match the sweep");
    for (std::size_t i = 0; i < results.size(); ++i) {
      const TripletResult& a = results[i];
      const TripletResult& b = (*shuffled)[i];
      if (a.x1 != b.x1 || a.x2 != b.x2 || a.y != b.y)
        throw InvalidArgument("shuffled results cover different triplets");
    }
  }

  const auto& columns = measures.column_names();
  std::vector<std::size_t> keep = value_columns(measures);

  out << "y,x1,x2";
  auto emit_header = [&](const char* suffix) {
    for (std::size_t i : keep) out << ',' << columns[i] << suffix;
    for (std::size_t i : keep) out << ',' << columns[i] << "_norm" << suffix;
    out << ",h_y" << suffix;
  };
  emit_header("");
  if (shuffled) emit_header("_shuffled");
  out << '\n';

  for (std::size_t i = 0; i < results.size(); ++i) {
    const TripletResult& r = results[i];
    out << r.y << ',' << r.x1 << ',' << r.x2;
    write_result_block(out, r, keep);
    if (shuffled) write_result_block(out, (*shuffled)[i], keep);
    out << '\n';
  }
}

void write_summary_csv(std::ostream& out,
                       const std::vector<SummaryRow>& rows) {
  out << "column,count,p10,median,p90,mean\n";
  for (const SummaryRow& row : rows) {
    out << row.column << ',' << row.count << ',' << format_number(row.p10)
        << ',' << format_number(row.median) << ',' << format_number(row.p90)
        << ',' << format_number(row.mean) << '\n';
  }
}

}  // namespace mvinfo::io
