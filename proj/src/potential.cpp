#include "rrcolor/potential.hpp"

#include <stdexcept>

namespace rrcolor {

Rational epsilon_bound(int k, int delta) {
  if (delta < 1 || k < 2) throw std::invalid_argument("epsilon_bound: need delta >= 1, k >= 2");
  const Rational a(k - 1, delta);
  const Rational d(delta);
  const Rational num = Rational(2) * d * a * a - Rational(7) * d * a - d + Rational(3) * a - 1;
  const Rational den = Rational(3) * d * d * a - Rational(3) * d * d + Rational(2) * d * a * a -
                       Rational(4) * d * a - d + Rational(3) * a + 2;
  if (den.is_zero()) throw std::domain_error("epsilon_bound: guarantee formula undefined");
  return num / den;
}

PotentialParams make_potential_params(int k, int delta) {
  PotentialParams p;
  p.k = k;
  p.delta = delta;
  p.alpha = Rational(k - 1, delta);
  p.epsilon = epsilon_bound(k, delta);
  p.w2 = Rational(2, 3 * delta - 1) * (p.alpha - 1 - p.epsilon * (p.alpha + 1));
  p.w1 = Rational(1) + Rational(delta) * p.w2 + p.epsilon;
  return p;
}

bool guarantee_applies(int k, int delta) {
  if (delta < 1) return true;  // an edgeless graph terminates in n steps regardless
  const Rational a(k - 1, delta);
  return (Rational(2) * a * a - Rational(7) * a - 1).is_positive();
}

Rational potential_value(const IndexState& xs, const PotentialParams& params) {
  return params.w1 * Rational(xs.frozen_set().size()) +
         params.w2 * Rational(xs.forbidden_set().size()) + Rational(xs.ignored_set().size());
}

}  // namespace rrcolor
