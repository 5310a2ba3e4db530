#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace anosov {

struct TimeScaleInputs {
  double h = 0.0;             // entropy, nats/iteration
  double nu = 0.0;            // smoothness index 2 p N
  int p = 0;                  // smoothness order
  std::size_t N = 0;          // dimension
  double log2_inv_dv0 = 0.0;  // log2(1/δv0), kept in log form to avoid underflow
};

struct TimeScales {
  double decorrelation_tau0 = 0.0;         // 1 / (h ν)
  double decorrelation_tau0_family = 0.0;  // π / (4 p N²), asymptotic-entropy form
  double interaction_t = 1.0;
  double stationary_tau = 0.0;  // ln(1/δv0) / h
  TimeScaleInputs inputs;
  bool ordered = false;  // τ0 < 1 < τ
  std::vector<std::string> discrepancies;
};

/// τ0 = 1 / (h ν).
double decorrelation_time(double h, double nu);

/// τ0 = π / (4 p N²), using h ≈ 2N/π and ν = 2 p N.
double decorrelation_time_family(std::size_t n, int p);

/// τ = ln(1/δv0) / h with δv0 given as log2(1/δv0).
double stationary_time(double h, double log2_inv_dv0);

/// σ² ≤ 4C (1 + e^{-hν}) / (1 - e^{-hν}).
double variance_bound(double c, double h, double nu);

/// Assembles the three scales; when reported reference values are supplied
/// and disagree with the formulas by more than 5%, both figures are recorded
/// in `discrepancies` rather than silently preferring either.
TimeScales timescale_report(std::size_t n, int p, double h, double log2_inv_dv0,
                            std::optional<double> reported_tau0 = std::nullopt,
                            std::optional<double> reported_tau = std::nullopt);

std::string to_json(const TimeScales& ts);

}  // namespace anosov
