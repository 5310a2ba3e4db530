#pragma once

#include <cstddef>
#include <vector>

namespace anosov {

// Regularized upper incomplete gamma Q(a, x) = Γ(a, x) / Γ(a).
double regularized_gamma_q(double a, double x);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 0.0;
};

// Pearson chi-square against the uniform law on [0,1) with equal-width bins.
ChiSquareResult chi_square_uniform(const std::vector<double>& samples, std::size_t bins);

// Sample lag-1 autocorrelation coefficient.
double lag1_autocorrelation(const std::vector<double>& samples);

}  // namespace anosov
