#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anosov/torus.hpp"

namespace anosov {

enum class Phase : std::uint8_t { Cos, Sin };

struct TrigTerm {
  std::vector<std::int64_t> freq;  // canonical: first nonzero entry positive
  Phase phase = Phase::Cos;
  double amp = 0.0;

  bool operator==(const TrigTerm& other) const = default;
};

/// Finite trigonometric polynomial on the N-torus, kept in expanded
/// sum-of-single-terms form: mean + Σ amp·cos/sin(2π k·x). Construction
/// canonicalizes frequencies (cos is even, sin is odd), folds zero-frequency
/// terms into the mean, merges duplicates, and sorts terms, so equal
/// observables compare equal and iteration order is deterministic.
class Observable {
 public:
  Observable(std::size_t dim, double mean, std::vector<TrigTerm> terms,
             std::optional<int> smoothness_p = std::nullopt,
             std::optional<double> deriv_bound_mp = std::nullopt);

  static Observable constant(std::size_t dim, double value);
  static Observable single(std::vector<std::int64_t> freq, Phase phase, double amp);

  std::size_t dim() const { return dim_; }
  double mean() const { return mean_; }
  const std::vector<TrigTerm>& terms() const { return terms_; }
  std::optional<int> smoothness_p() const { return smoothness_p_; }
  std::optional<double> deriv_bound_mp() const { return deriv_bound_mp_; }
  std::int64_t max_abs_frequency() const;

  double evaluate(const TorusPoint& x) const;

  /// Exact product via the trig product-to-sum identities; amplitudes pick up
  /// dyadic factors only. Smoothness metadata does not propagate.
  Observable operator*(const Observable& other) const;
  Observable operator+(const Observable& other) const;

  Observable with_metadata(std::optional<int> p, std::optional<double> mp) const;

 private:
  std::size_t dim_;
  double mean_;
  std::vector<TrigTerm> terms_;
  std::optional<int> smoothness_p_;
  std::optional<double> deriv_bound_mp_;
};

/// Truncated Fourier series of the sawtooth observable x_coord mod 1:
/// 1/2 - (1/π) Σ_{r=1..cutoff} sin(2π r x_coord)/r.
Observable sawtooth_series(std::size_t coordinate, int cutoff, std::size_t dim);

/// Zero-mean cosine-product family with amplitude Π_d i_d^{-2p} on
/// frequencies 1 <= i_d <= cutoff; smoothness p recorded and the derivative
/// bound M_p estimated by grid maximization (a numerical estimate, not a
/// proven supremum).
Observable smooth_family(int p, int cutoff, std::size_t dim);

/// Termwise 2p-th mixed partial in every coordinate (kills the mean; each
/// term scales by Π_d (2π k_d)^{2p} with sign (-1)^(p·N)).
Observable mixed_partial(const Observable& f, int p);

/// Grid-maximized |f|: full 256-per-axis grid for N <= 2, fixed-seed sampled
/// lattice points for larger N.
double grid_max_abs(const Observable& f);

std::string to_json(const Observable& f);
Observable observable_from_json(const std::string& text);

}  // namespace anosov
