#include "anosov/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace anosov {

namespace {

// Series expansion of the regularized lower incomplete gamma P(a, x),
// effective for x < a + 1.
double gamma_p_series(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 1; n < 1000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) (modified Lentz), effective for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0)
    throw std::invalid_argument("regularized_gamma_q requires a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

ChiSquareResult chi_square_uniform(const std::vector<double>& samples, std::size_t bins) {
  if (bins < 2) throw std::invalid_argument("chi_square_uniform needs >= 2 bins");
  if (samples.size() < 5 * bins)
    throw std::invalid_argument("chi_square_uniform needs >= 5 samples per bin");
  std::vector<std::size_t> counts(bins, 0);
  for (double u : samples) {
    auto b = static_cast<std::size_t>(u * static_cast<double>(bins));
    if (b >= bins) b = bins - 1;
    ++counts[b];
  }
  const double expected = static_cast<double>(samples.size()) / static_cast<double>(bins);
  double stat = 0.0;
  for (std::size_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  ChiSquareResult r;
  r.statistic = stat;
  r.dof = bins - 1;
  r.p_value = regularized_gamma_q(static_cast<double>(r.dof) / 2.0, stat / 2.0);
  return r;
}

double lag1_autocorrelation(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (n < 3) throw std::invalid_argument("lag1_autocorrelation needs >= 3 samples");
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(n);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = samples[i] - mean;
    den += d * d;
    if (i + 1 < n) num += d * (samples[i + 1] - mean);
  }
  if (den == 0.0) return 1.0;  // constant stream is perfectly correlated
  return num / den;
}

}  // namespace anosov
