#include <array>
#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "rrcolor/stats.hpp"

using namespace rrcolor;

namespace {

// Closed form for even degrees of freedom:
// P(chi2_df > x) = exp(-x/2) * sum_{i<df/2} (x/2)^i / i!
double upper_tail_even_df(int df, double x) {
  const double h = x / 2.0;
  double term = 1.0, sum = 0.0;
  for (int i = 0; i < df / 2; ++i) {
    sum += term;
    term *= h / (i + 1);
  }
  return std::exp(-h) * sum;
}

}  // namespace

TEST_CASE("p-values match the even-df closed form") {
  for (const int df : {2, 4, 8, 20, 60}) {
    for (const double x : {0.5, 1.0, 3.3, 7.0, 15.0, 31.4, 80.0}) {
      CHECK(chi_square_p_value(x, df) ==
            doctest::Approx(upper_tail_even_df(df, x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("p-values hit known quantiles") {
  // 0.1% upper quantiles: chi2(1) = 10.828, chi2(5) = 20.515, chi2(10) = 29.588.
  CHECK(chi_square_p_value(10.828, 1) == doctest::Approx(0.001).epsilon(1e-3));
  CHECK(chi_square_p_value(20.515, 5) == doctest::Approx(0.001).epsilon(1e-3));
  CHECK(chi_square_p_value(29.588, 10) == doctest::Approx(0.001).epsilon(1e-3));
}

TEST_CASE("large degrees of freedom converge") {
  // At the mean the upper tail is close to one half.
  const double p = chi_square_p_value(20000.0, 20000);
  CHECK(p > 0.45);
  CHECK(p < 0.55);
}

TEST_CASE("uniform gof on balanced and skewed counts") {
  const std::array<std::uint64_t, 4> balanced{2500, 2500, 2500, 2500};
  const auto r = chi_square_uniform(balanced);
  CHECK(r.statistic == doctest::Approx(0.0));
  CHECK(r.df == 3);
  CHECK(r.p_value == doctest::Approx(1.0));

  const std::array<std::uint64_t, 4> skewed{4000, 2000, 2000, 2000};
  CHECK(chi_square_uniform(skewed).p_value < 1e-6);
}

TEST_CASE("gof validates inputs") {
  const std::array<std::uint64_t, 2> counts{1, 1};
  const std::array<double, 3> probs{0.5, 0.25, 0.25};
  CHECK_THROWS_AS(chi_square_gof(counts, probs), std::invalid_argument);
  const std::array<std::uint64_t, 2> zero{0, 0};
  const std::array<double, 2> p2{0.5, 0.5};
  CHECK_THROWS_AS(chi_square_gof(zero, p2), std::invalid_argument);
}
