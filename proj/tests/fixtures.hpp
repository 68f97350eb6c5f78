#pragma once

#include "mvinfo/distribution.hpp"

// Small closed-form systems used across the test suites, plus reference
// values for them computed independently by direct summation in 64-bit
// floats (frozen here so the tests do not depend on the library's own
// arithmetic).
namespace fixtures {

using mvinfo::DiscreteDistribution;
using mvinfo::IndexSet;
using mvinfo::SourceTargetSplit;

// y = x1 XOR x2, inputs uniform.
inline DiscreteDistribution xor_gate() {
  return DiscreteDistribution({"x1", "x2", "y"}, {2, 2, 2},
                              {{{0, 0, 0}, 0.25},
                               {{0, 1, 1}, 0.25},
                               {{1, 0, 1}, 0.25},
                               {{1, 1, 0}, 0.25}});
}

// y = x1 AND x2, inputs uniform.
inline DiscreteDistribution and_gate() {
  return DiscreteDistribution({"x1", "x2", "y"}, {2, 2, 2},
                              {{{0, 0, 0}, 0.25},
                               {{0, 1, 0}, 0.25},
                               {{1, 0, 0}, 0.25},
                               {{1, 1, 1}, 0.25}});
}

// y = x1; x2 is an independent fair coin.
inline DiscreteDistribution copy_first() {
  return DiscreteDistribution({"x1", "x2", "y"}, {2, 2, 2},
                              {{{0, 0, 0}, 0.25},
                               {{0, 1, 0}, 0.25},
                               {{1, 0, 1}, 0.25},
                               {{1, 1, 1}, 0.25}});
}

// The two sources always agree; the target follows them only loosely.
inline DiscreteDistribution twins_noisy() {
  return DiscreteDistribution({"x1", "x2", "y"}, {2, 2, 2},
                              {{{0, 0, 0}, 0.1},
                               {{1, 1, 0}, 0.1},
                               {{0, 0, 1}, 0.2},
                               {{1, 1, 1}, 0.6}});
}

// The target enumerates the joint source state: y = 2 x1 + x2.
inline DiscreteDistribution two_bit_copy() {
  return DiscreteDistribution({"x1", "x2", "y"}, {2, 2, 4},
                              {{{0, 0, 0}, 0.25},
                               {{0, 1, 1}, 0.25},
                               {{1, 0, 2}, 0.25},
                               {{1, 1, 3}, 0.25}});
}

// The two sources are one shared fair coin; the target never fires.
inline DiscreteDistribution twins_constant() {
  return DiscreteDistribution({"x1", "x2", "y"}, {2, 2, 2},
                              {{{0, 0, 0}, 0.5}, {{1, 1, 0}, 0.5}});
}

// y = x1 XOR x2 XOR x3, inputs uniform.
inline DiscreteDistribution xor3_gate() {
  std::vector<std::pair<mvinfo::State, double>> pmf;
  for (mvinfo::Symbol a = 0; a < 2; ++a)
    for (mvinfo::Symbol b = 0; b < 2; ++b)
      for (mvinfo::Symbol c = 0; c < 2; ++c)
        pmf.push_back({{a, b, c, a ^ b ^ c}, 0.125});
  return DiscreteDistribution({"x1", "x2", "x3", "y"}, {2, 2, 2, 2}, pmf);
}

// y = x1 XOR x2; x3 is an independent fair coin.
inline DiscreteDistribution parity12_gate() {
  std::vector<std::pair<mvinfo::State, double>> pmf;
  for (mvinfo::Symbol a = 0; a < 2; ++a)
    for (mvinfo::Symbol b = 0; b < 2; ++b)
      for (mvinfo::Symbol c = 0; c < 2; ++c)
        pmf.push_back({{a, b, c, a ^ b}, 0.125});
  return DiscreteDistribution({"x1", "x2", "x3", "y"}, {2, 2, 2, 2}, pmf);
}

inline SourceTargetSplit split2() { return {IndexSet{0, 1}, 2}; }
inline SourceTargetSplit split3() { return {IndexSet{0, 1, 2}, 3}; }

// Reference values, independently derived.
inline constexpr double kAndTargetEntropy = 0.8112781244591328;
inline constexpr double kAndSingleMi = 0.31127812445913294;
inline constexpr double kAndSpecInfoY0X1 = 0.08170416594551039;
inline constexpr double kTwinsNoisyMi = 0.03226839966338613;
inline constexpr double kTwinsNoisyTc = 0.913559298894079;
inline constexpr double kTwinsNoisyDtc = 0.8812908992306925;

}  // namespace fixtures
