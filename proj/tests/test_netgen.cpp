#include <cmath>

#include "doctest.h"
#include "mvinfo/measure_set.hpp"
#include "mvinfo/netgen.hpp"

using namespace mvinfo;

namespace {

// The model written out longhand: independent chances to fire combine
// multiplicatively on the silent side.
double cell(const NetworkParams& q, Symbol x1, Symbol x2, Symbol y) {
  double p_x1 = x1 ? q.p_r : 1.0 - q.p_r;
  double fire_x2 = 1.0 - (1.0 - q.p_r) * (x1 ? 1.0 - q.p_12 : 1.0);
  double p_x2 = x2 ? fire_x2 : 1.0 - fire_x2;
  double silent = (1.0 - q.p_r) * (x1 ? 1.0 - q.p_1y : 1.0) *
                  (x2 ? 1.0 - q.p_2y : 1.0);
  double p_y = y ? 1.0 - silent : silent;
  return p_x1 * p_x2 * p_y;
}

}  // namespace

TEST_SUITE_BEGIN("netgen");

TEST_CASE("parameters outside [0, 1] are rejected") {
  CHECK_THROWS_AS(expand({-0.1, 0.0, 0.0, 0.0}), ParamOutOfRange);
  CHECK_THROWS_AS(expand({0.5, 1.5, 0.0, 0.0}), ParamOutOfRange);
  CHECK_THROWS_AS(expand({0.5, 0.0, -1.0, 0.0}), ParamOutOfRange);
  CHECK_THROWS_AS(expand({0.5, 0.0, 0.0, 2.0}), ParamOutOfRange);
  expand({0.0, 0.0, 0.0, 0.0}).validate();
  expand({1.0, 1.0, 1.0, 1.0}).validate();
}

TEST_CASE("expansion reproduces the longhand factorization") {
  for (const NetworkParams& q :
       {NetworkParams{0.02, 0.0, 0.1, 0.1}, NetworkParams{0.02, 0.1, 0.1, 0.1},
        NetworkParams{0.3, 0.7, 0.2, 0.9}}) {
    auto d = expand(q);
    d.validate();
    CHECK(d.names() == std::vector<std::string>{"x1", "x2", "y"});
    double total = 0.0;
    for (Symbol x1 = 0; x1 < 2; ++x1)
      for (Symbol x2 = 0; x2 < 2; ++x2)
        for (Symbol y = 0; y < 2; ++y) {
          double want = cell(q, x1, x2, y);
          CAPTURE(x1);
          CAPTURE(x2);
          CAPTURE(y);
          CHECK(std::abs(d.probability({x1, x2, y}) - want) <= 1e-15);
          total += want;
        }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("boundary parameters produce degenerate but valid supports") {
  auto d = expand({1.0, 0.0, 0.0, 0.0});
  // Everything fires all the time.
  CHECK(d.support().size() == 1);
  CHECK(d.probability({1, 1, 1}) == 1.0);
}

TEST_CASE("the sweep reports the full battery in millibits") {
  NetworkParams q{0.02, 0.1, 0.1, 0.1};
  auto values = sweep(q);
  auto columns = MeasureSet::all(2).column_names();
  REQUIRE(values.size() == columns.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    CHECK(values[i].name == columns[i]);

  auto d = expand(q);
  SourceTargetSplit split{IndexSet{0, 1}, 2};
  auto bits = MeasureSet::all(2).evaluate(d, split);
  for (std::size_t i = 0; i < values.size(); ++i)
    CHECK(std::abs(values[i].millibits - 1000.0 * bits[i]) <= 1e-9);
}

TEST_CASE("an unconnected target carries no information") {
  auto values = sweep({0.02, 0.1, 0.0, 0.0});
  for (const auto& v : values) {
    if (v.name == "h_y" || v.name == "tc" || v.name == "dtc") continue;
    CAPTURE(v.name);
    CHECK(std::abs(v.millibits) <= 1e-9);
  }
}

TEST_SUITE_END();
