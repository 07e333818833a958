#include "rrcolor/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rrcolor {

namespace {

// Series expansion of P(a, x), good for x < a + 1.
double gamma_p_series(double a, double x) {
  const double gln = std::lgamma(a);
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 100000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) {
      return sum * std::exp(-x + a * std::log(x) - gln);
    }
  }
  throw std::runtime_error("gamma_p_series: no convergence");
}

// Lentz continued fraction for Q(a, x), good for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double gln = std::lgamma(a);
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) {
      return std::exp(-x + a * std::log(x) - gln) * h;
    }
  }
  throw std::runtime_error("gamma_q_cf: no convergence");
}

}  // namespace

double regularized_gamma_upper(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("regularized_gamma_upper: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_p_value(double statistic, int df) {
  if (df < 1) throw std::invalid_argument("chi_square_p_value: df < 1");
  if (statistic <= 0.0) return 1.0;
  return regularized_gamma_upper(df / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts) {
  if (counts.empty()) throw std::invalid_argument("chi_square_uniform: no cells");
  std::vector<double> probs(counts.size(), 1.0 / static_cast<double>(counts.size()));
  return chi_square_gof(counts, probs);
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> counts,
                               std::span<const double> probs) {
  if (counts.size() != probs.size() || counts.empty()) {
    throw std::invalid_argument("chi_square_gof: size mismatch");
  }
  ChiSquareResult r;
  for (const std::uint64_t c : counts) r.total += c;
  if (r.total == 0) throw std::invalid_argument("chi_square_gof: zero observations");
  r.df = static_cast<int>(counts.size()) - 1;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = probs[i] * static_cast<double>(r.total);
    if (expected <= 0.0) {
      if (counts[i] != 0) r.statistic = std::numeric_limits<double>::infinity();
      continue;
    }
    const double diff = static_cast<double>(counts[i]) - expected;
    r.statistic += diff * diff / expected;
  }
  r.p_value = r.df == 0 ? 1.0 : chi_square_p_value(r.statistic, r.df);
  return r;
}

}  // namespace rrcolor
