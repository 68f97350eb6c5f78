#include "tables.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mvinfo/io.hpp"
#include "mvinfo/measure_set.hpp"
#include "mvinfo/netgen.hpp"

namespace {

using namespace mvinfo;

struct GoldenCell {
  std::string table;
  std::string system;
  std::string quantity;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string unit;
};

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

std::vector<GoldenCell> load_cells(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) ||
      line != "table,system,quantity,expected,tolerance,unit")
    throw ParseError("unexpected header in " + path.string());
  std::vector<GoldenCell> cells;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (fields.size() != 6)
      throw ParseError("bad row in " + path.string() + ": " + line);
    cells.push_back({fields[0], fields[1], fields[2], std::stod(fields[3]),
                     std::stod(fields[4]), fields[5]});
  }
  return cells;
}

std::map<std::string, NetworkParams> load_network_params(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "system,p_r,p_12,p_1y,p_2y")
    throw ParseError("unexpected header in " + path.string());
  std::map<std::string, NetworkParams> params;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (fields.size() != 5)
      throw ParseError("bad row in " + path.string() + ": " + line);
    params[fields[0]] = {std::stod(fields[1]), std::stod(fields[2]),
                         std::stod(fields[3]), std::stod(fields[4])};
  }
  return params;
}

struct SystemContext {
  DiscreteDistribution dist;
  SourceTargetSplit split;
};

SystemContext make_context(DiscreteDistribution dist) {
  std::size_t target = dist.index_of("y");
  std::vector<std::size_t> sources;
  for (std::size_t i = 0; i < dist.variable_count(); ++i)
    if (i != target) sources.push_back(i);
  SourceTargetSplit split{IndexSet(std::move(sources)), target};
  return {std::move(dist), split};
}

// p_ind(y | x): the Bayes inversion of the conditionally independent source
// model, p(y) prod_i p(x_i|y) normalized over the target states.
double independent_conditional_prob(const SystemContext& ctx,
                                    const std::string& quantity) {
  // pind_y<digit>_x<digit per source>
  std::string rest = quantity.substr(5);
  std::size_t sep = rest.find("_x");
  if (rest.size() < 2 || rest[0] != 'y' || sep == std::string::npos)
    throw ParseError("bad quantity: " + quantity);
  std::string y_digits = rest.substr(1, sep - 1);
  std::string x_digits = rest.substr(sep + 2);
  if (y_digits.size() != 1 || x_digits.size() != ctx.split.sources.size())
    throw ParseError("bad quantity: " + quantity);
  Symbol y_wanted = static_cast<Symbol>(y_digits[0] - '0');

  DiscreteDistribution py = ctx.dist.marginalize(IndexSet{ctx.split.target});
  double numerator = 0.0;
  double normalizer = 0.0;
  for (Symbol y = 0; y < ctx.dist.alphabet_size(ctx.split.target); ++y) {
    double p_y = py.probability({y});
    if (p_y <= 0.0) continue;
    DiscreteDistribution cond =
        ctx.dist.condition(IndexSet{ctx.split.target}, {y});
    double prod = p_y;
    std::size_t k = 0;
    for (std::size_t i : ctx.split.sources) {
      std::size_t shifted = i - (i > ctx.split.target ? 1 : 0);
      DiscreteDistribution m = cond.marginalize(IndexSet{shifted});
      prod *= m.probability({static_cast<Symbol>(x_digits[k++] - '0')});
    }
    normalizer += prod;
    if (y == y_wanted) numerator = prod;
  }
  if (normalizer <= 0.0)
    throw InvalidArgument("independent model assigns zero to " + quantity);
  return numerator / normalizer;
}

double joint_cell_prob(const SystemContext& ctx, const std::string& quantity) {
  std::string digits = quantity.substr(2);
  if (digits.size() != ctx.dist.variable_count())
    throw ParseError("bad quantity: " + quantity);
  State state;
  for (char c : digits) state.push_back(static_cast<Symbol>(c - '0'));
  return ctx.dist.probability(state);
}

double evaluate_quantity(const SystemContext& ctx,
                         const std::string& quantity) {
  if (quantity.rfind("p_", 0) == 0) return joint_cell_prob(ctx, quantity);
  if (quantity.rfind("pind_", 0) == 0)
    return independent_conditional_prob(ctx, quantity);
  MeasureSet one = MeasureSet::parse({quantity}, ctx.split.sources.size());
  return one.evaluate(ctx.dist, ctx.split)[0];
}

}  // namespace

int run_tables(const std::filesystem::path& data_dir, const std::string& filter,
               bool verbose) {
  auto cells = load_cells(data_dir / "golden" / "golden_cells.csv");
  auto network = load_network_params(data_dir / "golden" / "network_params.csv");

  std::map<std::string, SystemContext> contexts;
  auto context_for = [&](const std::string& system) -> const SystemContext& {
    auto it = contexts.find(system);
    if (it != contexts.end()) return it->second;
    auto net = network.find(system);
    DiscreteDistribution dist =
        net != network.end()
            ? expand(net->second)
            : io::load_distribution(data_dir / "systems" / (system + ".csv"));
    return contexts.emplace(system, make_context(std::move(dist)))
        .first->second;
  };

  std::size_t checked = 0;
  std::size_t failed = 0;
  for (const GoldenCell& cell : cells) {
    if (!filter.empty() && cell.table != filter) continue;
    ++checked;
    double value = evaluate_quantity(context_for(cell.system), cell.quantity);
    if (cell.unit == "millibits") value *= 1000.0;
    bool ok = std::abs(value - cell.expected) <= cell.tolerance;
    if (!ok) ++failed;
    if (verbose || !ok)
      std::printf("%s %s %s %s expected=%s got=%s (%s)\n",
                  ok ? "PASS" : "FAIL", cell.table.c_str(),
                  cell.system.c_str(), cell.quantity.c_str(),
                  io::format_number(cell.expected).c_str(),
                  io::format_number(value).c_str(), cell.unit.c_str());
  }
  if (checked == 0) {
    std::fprintf(stderr, "error: no reference cells match '%s'\n",
                 filter.c_str());
    return 1;
  }
  if (verbose) std::printf("%zu cells checked, %zu failed\n", checked, failed);
  return static_cast<int>(failed);
}
