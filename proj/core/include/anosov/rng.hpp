#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anosov/int_matrix.hpp"
#include "anosov/stats.hpp"

namespace anosov {

inline constexpr std::uint64_t kMersenne61 = (1ull << 61) - 1;

/// Matrix-recurrence generator over the prime field p = 2^61 - 1: the state
/// advances by state <- T state (mod p) and emits state/p as uniform doubles
/// (53-bit mantissa truncation of the 61-bit lattice). Single-owner type;
/// parallel streams are carved out with jump_ahead.
class GeneratorState {
 public:
  /// Family-matrix generator of the given dimension.
  GeneratorState(std::size_t dim, std::uint64_t seed_value);
  /// Generator driven by an arbitrary integer matrix (reduced mod p).
  GeneratorState(const IntMatrix& matrix, std::uint64_t seed_value);

  std::size_t dim() const { return dim_; }
  const std::vector<std::uint64_t>& state() const { return state_; }
  /// Output index within the current emitted vector (0..dim).
  std::size_t counter() const { return counter_; }

  /// Advances the state by one matrix application and returns the whole
  /// vector as doubles in [0,1).
  std::vector<double> next_vector();

  /// Per-value emission from the buffered vector, refilling as needed.
  double next_double();

  /// state <- (T^k mod p) state; equals k next_vector transitions bit-exactly.
  /// Any partially emitted vector is discarded.
  void jump_ahead(const BigInt& k);

 private:
  void refill();
  std::size_t dim_;
  std::vector<std::uint64_t> matrix_;  // row-major, entries in [0, p)
  std::vector<std::uint64_t> state_;   // entries in [0, p), never all zero
  std::vector<double> buffer_;
  std::size_t counter_;
};

struct SelfTestReport {
  ChiSquareResult chi_square;
  double lag1_corr = 0.0;
  double lag1_z = 0.0;
  std::vector<double> coord_mean_z;
  std::uint64_t samples = 0;
  bool pass = false;
};

/// Chi-square uniformity on 256 bins, lag-1 serial correlation, and the
/// per-coordinate mean check, on `samples` streamed values.
SelfTestReport rng_self_test(GeneratorState& gen, std::uint64_t samples);

std::string to_json(const SelfTestReport& report);

}  // namespace anosov
