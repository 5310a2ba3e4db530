#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anosov/observable.hpp"
#include "anosov/spectral.hpp"

namespace anosov {

enum class CorrelationMethod : std::uint8_t { ExactResonance, MonteCarlo, ClosedForm };

std::string method_name(CorrelationMethod m);

struct CorrelationSeries {
  std::vector<std::uint64_t> n_values;
  std::vector<double> d_values;
  CorrelationMethod method = CorrelationMethod::ExactResonance;
  std::vector<double> std_errors;  // empty for exact series
  std::optional<std::uint64_t> sample_count;
};

/// Torus integral of the product of two single trig terms: nonzero only when
/// the integer frequency vectors cancel. Total on every phase/frequency case.
double pair_integral(Phase phase_a, const std::vector<BigInt>& freq_a, Phase phase_b,
                     const std::vector<BigInt>& freq_b);

/// D_n(f,g) = <f(x) g(T^n x)> - <f><g>, evaluated exactly: g's frequencies are
/// transported by (T^n)^T with arbitrary-precision integers and joined against
/// f's frequency table; only canceling frequencies contribute ±amp/2.
double exact_correlation(const IntMatrix& m, const Observable& f, const Observable& g,
                         std::uint64_t n);

struct ExactCorrelationDetail {
  double value = 0.0;
  std::size_t matched_terms = 0;  // resonance-join hits
};
ExactCorrelationDetail exact_correlation_detail(const IntMatrix& m, const Observable& f,
                                                const Observable& g, std::uint64_t n);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo D_n estimate on uniform dyadic-lattice samples from a
/// counter-based splittable stream (independent of the generator module).
/// Sample means are subtracted, not stored means. Chunked fixed-order
/// pairwise reduction makes the result bit-identical for any worker count.
McEstimate monte_carlo_correlation(const IntMatrix& m, const Observable& f,
                                   const Observable& g, std::uint64_t n,
                                   std::uint64_t samples, std::uint64_t seed,
                                   unsigned workers = 0);

/// Closed form of the one-step correlator of f against the first coordinate
/// after one step of the N=2 operator, g(Tx) = {x1 + x2}: only the diagonal
/// sine amplitudes of f survive, each contributing -amp / (2π r).
double one_step_sawtooth_correlator(const Observable& f);

struct OneStepScan {
  std::vector<int> r_values;
  std::vector<double> d1, d1_std_error;
  std::vector<double> k1, k1_std_error;
  std::uint64_t samples = 0;
};

/// Monte Carlo scan of the polynomial one-step correlators on the N=2 torus:
/// D1(r) pairs x1*x2^r with the first output coordinate, K1(r) pairs x1*x2
/// with the r-th power of the second. Polynomials are evaluated on exported
/// doubles; mod 1 happens in the dynamics, not in the observable.
OneStepScan polynomial_one_step_scan(int r_max, std::uint64_t samples,
                                     std::uint64_t seed, unsigned workers = 0);

struct DecayFit {
  double fitted_rate = 0.0;       // slope of -ln|D_n| vs n
  double fitted_prefactor = 0.0;  // exp(intercept)
  double bound_rate = 0.0;        // h(T) * nu
  double bound_prefactor = 0.0;   // C(f,g) with the M_p safety factor applied
  double nu = 0.0;
  int points_used = 0;
  bool bound_violation = false;
  double mp_safety_factor = 1.5;
  double noise_floor = 0.0;
};

/// Least-squares exponential fit of |D_n| over points above the noise floor
/// (5x the standard error for Monte Carlo series, 1e-14 for exact series),
/// against the entropy bound with nu = 2 p N and the documented prefactor.
DecayFit fit_decay(const CorrelationSeries& series, const Spectrum& spectrum,
                   const Observable& f, const Observable& g);

std::string to_csv(const CorrelationSeries& series);
std::string to_json(const DecayFit& fit);

}  // namespace anosov
