#pragma once

#include "rrcolor/rational.hpp"
#include "rrcolor/state.hpp"

namespace rrcolor {

// Drift-analysis constants for a (k, max_degree) pair, all exact rationals:
//   alpha = (k-1)/delta
//   epsilon = (2*d*a^2 - 7*d*a - d + 3a - 1) / (3*d^2*a - 3*d^2 + 2*d*a^2 - 4*d*a - d + 3a + 2)
//   w2 = 2/(3*delta - 1) * (alpha - 1 - epsilon*(alpha + 1))
//   w1 = 1 + delta*w2 + epsilon
// The expected per-step decrease of the potential is at least epsilon when
// epsilon > 0, which happens exactly when 2*alpha^2 - 7*alpha - 1 > 0
// (alpha above (7 + sqrt(57))/4, about 3.637).
struct PotentialParams {
  int k = 0;
  int delta = 0;
  Rational alpha;
  Rational epsilon;
  Rational w1;
  Rational w2;
};

// Throws std::domain_error when the closed form's denominator vanishes.
Rational epsilon_bound(int k, int delta);

PotentialParams make_potential_params(int k, int delta);

// Exact test for the linear-expected-time guarantee: 2a^2 - 7a - 1 > 0 with
// a = (k-1)/delta. No floating point near the threshold.
bool guarantee_applies(int k, int delta);

// phi = w1 * #frozen + w2 * #forbidden + #ignored.
Rational potential_value(const IndexState& xs, const PotentialParams& params);

}  // namespace rrcolor
