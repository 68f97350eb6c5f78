#pragma once

#include <string>
#include <vector>

#include "mvinfo/distribution.hpp"

namespace mvinfo {

// Parameters of the three-node model: two binary inputs x1, x2 feeding a
// binary output y. Every node fires spontaneously with rate p_r; x1 drives
// x2 with weight p_12; x1 and x2 drive y with weights p_1y and p_2y.
// Influences combine as independent chances to fire (noisy OR):
//   p(x1=1)            = p_r
//   p(x2=1 | x1)       = 1 - (1-p_r) (1-p_12)^x1
//   p(y=1  | x1, x2)   = 1 - (1-p_r) (1-p_1y)^x1 (1-p_2y)^x2
struct NetworkParams {
  double p_r = 0.0;
  double p_12 = 0.0;
  double p_1y = 0.0;
  double p_2y = 0.0;

  // All four probabilities must lie in [0, 1].
  void check() const;
};

// The exact joint distribution p(x1, x2, y) implied by the parameters, with
// variables named "x1", "x2", "y" in that order.
DiscreteDistribution expand(const NetworkParams& params);

// One named value of the standard measure battery evaluated on the expanded
// joint with sources {x1, x2} and target y. Values are in millibits.
struct SweepValue {
  std::string name;
  double millibits = 0.0;
};

// Evaluates every registered measure (including all decomposition terms)
// on expand(params).
std::vector<SweepValue> sweep(const NetworkParams& params);

}  // namespace mvinfo
