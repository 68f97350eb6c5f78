#include "mvinfo/netgen.hpp"

#include <string>

#include "mvinfo/measure_set.hpp"

namespace mvinfo {

namespace {

void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ParamOutOfRange(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

void NetworkParams::check() const {
  check_prob(p_r, "p_r");
  check_prob(p_12, "p_12");
  check_prob(p_1y, "p_1y");
  check_prob(p_2y, "p_2y");
}

DiscreteDistribution expand(const NetworkParams& params) {
  params.check();
  const double q_r = 1.0 - params.p_r;

  std::vector<std::pair<State, double>> pmf;
  for (Symbol x1 = 0; x1 < 2; ++x1) {
    double p_x1 = x1 ? params.p_r : q_r;
    double fire_x2 = 1.0 - q_r * (x1 ? 1.0 - params.p_12 : 1.0);
    for (Symbol x2 = 0; x2 < 2; ++x2) {
      double p_x2 = x2 ? fire_x2 : 1.0 - fire_x2;
      double fire_y = 1.0 - q_r * (x1 ? 1.0 - params.p_1y : 1.0) *
                                (x2 ? 1.0 - params.p_2y : 1.0);
      for (Symbol y = 0; y < 2; ++y) {
        double p_y = y ? fire_y : 1.0 - fire_y;
        double p = p_x1 * p_x2 * p_y;
        if (p > 0.0) pmf.push_back({{x1, x2, y}, p});
      }
    }
  }
  return DiscreteDistribution({"x1", "x2", "y"}, {2, 2, 2}, std::move(pmf));
}

std::vector<SweepValue> sweep(const NetworkParams& params) {
  DiscreteDistribution d = expand(params);
  SourceTargetSplit split{IndexSet{0, 1}, 2};
  MeasureSet battery = MeasureSet::all(2);
  std::vector<double> values = battery.evaluate(d, split);

  std::vector<SweepValue> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    out.push_back({battery.column_names()[i], values[i] * 1000.0});
  return out;
}

}  // namespace mvinfo
