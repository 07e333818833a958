#pragma once

#include <cstdint>
#include <span>

namespace rrcolor {

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double regularized_gamma_upper(double a, double x);

// Upper-tail p-value of a chi-square statistic with df degrees of freedom.
double chi_square_p_value(double statistic, int df);

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  std::uint64_t total = 0;
};

// Goodness of fit against the uniform distribution over counts.size() cells.
ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts);

// Goodness of fit against arbitrary cell probabilities (must sum to 1).
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> counts,
                               std::span<const double> probs);

}  // namespace rrcolor
