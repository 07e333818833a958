#include <cmath>

#include "doctest.h"

#include "rrcolor/graph.hpp"
#include "rrcolor/potential.hpp"

using namespace rrcolor;

TEST_CASE("the (k=13, delta=3) constants are exact") {
  CHECK(epsilon_bound(13, 3) == Rational(1, 7));
  const auto p = make_potential_params(13, 3);
  CHECK(p.alpha == Rational(4));
  CHECK(p.w2 == Rational(4, 7));
  CHECK(p.w1 == Rational(20, 7));
}

TEST_CASE("w1 = 1 + delta*w2 + epsilon holds across a sweep") {
  for (int delta = 1; delta <= 8; ++delta) {
    for (int k = delta + 2; k <= 10 * delta + 2; ++k) {
      const auto p = make_potential_params(k, delta);
      CHECK(p.w1 == Rational(1) + Rational(delta) * p.w2 + p.epsilon);
    }
  }
}

TEST_CASE("epsilon solves its defining balance equation") {
  // delta*(alpha-1) * (w2 - eps) == (3/2)*(delta-1)*w2 + 2 + eps, exactly.
  for (int delta = 1; delta <= 8; ++delta) {
    for (int k = 4 * delta; k <= 8 * delta; ++k) {
      const auto p = make_potential_params(k, delta);
      const Rational lhs = Rational(delta) * (p.alpha - 1) * (p.w2 - p.epsilon);
      const Rational rhs = Rational(3, 2) * Rational(delta - 1) * p.w2 + 2 + p.epsilon;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("the guarantee quadratic implies a positive epsilon") {
  // The epsilon numerator is delta*(2a^2-7a-1) + (3a-1): the quadratic's sign
  // forces epsilon's exactly one way; the converse is only asymptotic in
  // delta (epsilon turns positive slightly earlier).
  for (int delta = 2; delta <= 8; ++delta) {
    for (int k = delta + 2; k <= 8 * delta; ++k) {
      const Rational a(k - 1, delta);
      const Rational quad = Rational(2) * a * a - Rational(7) * a - 1;
      CHECK(guarantee_applies(k, delta) == quad.is_positive());
      if (quad.is_positive()) CHECK(epsilon_bound(k, delta).is_positive());
      // Well below the threshold epsilon cannot be positive.
      if (a <= Rational(3)) CHECK_FALSE(epsilon_bound(k, delta).is_positive());
    }
  }
}

TEST_CASE("the sign flip converges to alpha = (7+sqrt(57))/4 = 3.637...") {
  const int delta = 10'000;
  // First k whose epsilon is positive.
  int first_k = 0;
  for (int k = 3 * delta; k <= 4 * delta; ++k) {
    if (epsilon_bound(k, delta).is_positive()) {
      first_k = k;
      break;
    }
  }
  REQUIRE(first_k > 0);
  const double alpha = static_cast<double>(first_k - 1) / delta;
  const double threshold = (7.0 + std::sqrt(57.0)) / 4.0;
  // The flip sits an O(1/delta) hair below the asymptotic threshold.
  CHECK(alpha >= threshold - 5e-4);
  CHECK(alpha <= threshold + 2.0 / delta);
  CHECK_FALSE(epsilon_bound(first_k - 1, delta).is_positive());
}

TEST_CASE("potential values") {
  const auto p = make_potential_params(13, 3);
  IndexState xs = IndexState::all_ignored(7);
  CHECK(potential_value(xs, p) == Rational(7));

  IndexState done = IndexState::all_unrestricted(7);
  CHECK(potential_value(done, p) == Rational(0));

  IndexState mixed = IndexState::all_unrestricted(7);
  mixed.set_frozen(0, 2);
  mixed.set_forbidden(1, 5);
  mixed.set_forbidden(2, 5);
  CHECK(potential_value(mixed, p) == Rational(20, 7) + Rational(2) * Rational(4, 7));
  CHECK(potential_value(mixed, p) == Rational(4));
}

TEST_CASE("parameter preconditions") {
  CHECK_THROWS_AS(epsilon_bound(13, 0), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_bound(1, 3), std::invalid_argument);
}
