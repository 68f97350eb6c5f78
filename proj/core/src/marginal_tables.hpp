#pragma once

// Internal helpers shared by the measure and decomposition code. Not
// installed.

#include <cstdint>
#include <vector>

#include "mvinfo/distribution.hpp"
#include "mvinfo/errors.hpp"

namespace mvinfo::detail {

// Dense probability table over a subset of variables (kept in ascending
// original order). Cell index is the mixed-radix code of the projected
// state, first kept variable most significant. Suitable for the small
// marginals used by the source/target measures; guarded against blowing up
// on wide joint alphabets.
struct DenseMarginal {
  std::vector<std::size_t> vars;
  std::vector<Symbol> radix;
  std::vector<double> p;

  std::size_t size() const { return p.size(); }
  double at(std::size_t code) const { return p[code]; }

  std::size_t code_of(const State& full_state) const {
    std::size_t code = 0;
    for (std::size_t k = 0; k < vars.size(); ++k)
      code = code * radix[k] + full_state[vars[k]];
    return code;
  }

  // Encoding of a state already projected onto `vars` (one symbol per kept
  // variable, as produced by decode).
  std::size_t code_of_projected(const State& projected) const {
    std::size_t code = 0;
    for (std::size_t k = 0; k < vars.size(); ++k)
      code = code * radix[k] + projected[k];
    return code;
  }

  // Inverse of the cell encoding.
  void decode(std::size_t code, State& out) const {
    out.resize(vars.size());
    for (std::size_t k = vars.size(); k-- > 0;) {
      out[k] = static_cast<Symbol>(code % radix[k]);
      code /= radix[k];
    }
  }
};

DenseMarginal dense_marginal(const DiscreteDistribution& d,
                             const IndexSet& over);

// Joint entropy of the selected variables in bits; 0 for the empty set.
// Bounds on the selection are the caller's responsibility.
double entropy_over(const DiscreteDistribution& d, const IndexSet& vars);

// Quantities that are non-negative by theory are snapped to zero when
// floating-point cancellation leaves them a hair below it.
inline double clamp_nonneg(double v) {
  return (v < 0.0 && v >= -1e-12) ? 0.0 : v;
}

}  // namespace mvinfo::detail
