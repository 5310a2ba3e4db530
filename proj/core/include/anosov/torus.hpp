#pragma once

#include <cstdint>
#include <vector>

#include "anosov/int_matrix.hpp"

namespace anosov {

/// Point on the unit N-torus in 2^-64 fixed point: coordinate i has value
/// word(i) / 2^64 in [0,1). Wraparound of the 64-bit words realizes mod 1
/// exactly on the dyadic lattice, so the dynamics never touches floats.
class TorusPoint {
 public:
  explicit TorusPoint(std::size_t dim) : words_(dim, 0) {}

  static TorusPoint from_words(std::vector<std::uint64_t> words);
  /// Nearest lattice point; inputs are wrapped into [0,1) first.
  static TorusPoint from_doubles(const std::vector<double>& coords);

  std::size_t dim() const { return words_.size(); }
  std::uint64_t word(std::size_t i) const { return words_[i]; }
  std::uint64_t& word(std::size_t i) { return words_[i]; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  double coord(std::size_t i) const;  // word / 2^64, round-to-nearest export
  std::vector<double> to_doubles() const;

  bool operator==(const TorusPoint& other) const = default;

 private:
  std::vector<std::uint64_t> words_;
};

/// Integer matrix with entries reduced modulo 2^64, for the hot loops of the
/// dynamics. Reduction is exact: the map is linear mod 1 on the lattice.
class WordMatrix {
 public:
  static WordMatrix from(const IntMatrix& m);

  std::size_t dim() const { return dim_; }
  TorusPoint apply(const TorusPoint& x) const;

 private:
  WordMatrix(std::size_t dim, std::vector<std::uint64_t> words)
      : dim_(dim), words_(std::move(words)) {}
  std::size_t dim_;
  std::vector<std::uint64_t> words_;  // row-major
};

/// One application of x -> M x (mod 1), exact on the fixed-point lattice.
TorusPoint step(const IntMatrix& m, const TorusPoint& x);

/// n-fold composition of step, computed through M^n reduced mod 2^64.
TorusPoint step_n(const IntMatrix& m, std::uint64_t n, const TorusPoint& x);

/// [x0, M x0, ..., M^(length-1) x0].
std::vector<TorusPoint> trajectory(const IntMatrix& m, const TorusPoint& x0,
                                   std::size_t length);

/// CSV with header x_0,...,x_{N-1}, one point per row at 17 significant
/// digits (round-to-nearest double export of the exact words).
std::string trajectory_csv(const std::vector<TorusPoint>& points);

/// Raw hex words, one point per line, for bit-exact replay.
std::string trajectory_hex(const std::vector<TorusPoint>& points);
TorusPoint torus_point_from_hex(const std::string& line);

/// Euclidean distance with every coordinate difference wrapped to the nearest
/// image on the circle.
double torus_distance(const TorusPoint& a, const TorusPoint& b);

/// Taxicab (L1) distance with wrapped coordinate differences.
double torus_distance_l1(const TorusPoint& a, const TorusPoint& b);

}  // namespace anosov
