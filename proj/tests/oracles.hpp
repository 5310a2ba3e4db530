#pragma once

// Test-only oracles, kept independent of the implementation paths they check:
// - lattice_correlation: exact torus integrals of trig polynomials by uniform
//   lattice averaging (exact below the Nyquist frequency of the grid);
// - simpson / d1_poly_oracle / k1_poly_oracle: composite-Simpson quadrature of
//   the polynomial one-step correlators, splitting the unit square along the
//   mod-1 break lines;
// - random_observable: deterministic trig-polynomial generator for the
//   randomized exact-vs-Monte-Carlo suites.

#include <cmath>
#include <functional>
#include <vector>

#include "anosov/correlation.hpp"
#include "anosov/counter_rng.hpp"
#include "anosov/observable.hpp"
#include "anosov/torus.hpp"

namespace oracles {

// <f(x) g(T^n x)> - <f><g> averaged over the uniform grid lattice. Exact (to
// rounding) when grid exceeds twice the largest combined frequency.
inline double lattice_correlation(const anosov::IntMatrix& m, const anosov::Observable& f,
                                  const anosov::Observable& g, std::uint64_t n,
                                  int grid) {
  const std::size_t dim = m.dim();
  const anosov::WordMatrix w = anosov::WordMatrix::from(anosov::matrix_power(m, n));
  std::vector<int> idx(dim, 0);
  double sum = 0.0;
  std::size_t count = 0;
  for (;;) {
    std::vector<double> coords(dim);
    for (std::size_t d = 0; d < dim; ++d)
      coords[d] = static_cast<double>(idx[d]) / grid;
    const anosov::TorusPoint x = anosov::TorusPoint::from_doubles(coords);
    sum += f.evaluate(x) * g.evaluate(w.apply(x));
    ++count;
    std::size_t d = 0;
    while (d < dim && ++idx[d] == grid) {
      idx[d] = 0;
      ++d;
    }
    if (d == dim) break;
  }
  return sum / static_cast<double>(count) - f.mean() * g.mean();
}

inline double simpson(const std::function<double(double)>& fn, double a, double b,
                      int panels) {
  if (b <= a) return 0.0;
  const double h = (b - a) / (2 * panels);
  double acc = fn(a) + fn(b);
  for (int i = 1; i < 2 * panels; ++i) acc += fn(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// <x1 x2^r {x1+x2}> - <x1 x2^r><{x1+x2}>, splitting at x2 = 1 - x1.
inline double d1_poly_oracle(int r) {
  auto inner = [r](double x1) {
    auto low = [&](double x2) { return std::pow(x2, r) * (x1 + x2); };
    auto high = [&](double x2) { return std::pow(x2, r) * (x1 + x2 - 1.0); };
    return x1 * (simpson(low, 0.0, 1.0 - x1, 64) + simpson(high, 1.0 - x1, 1.0, 64));
  };
  const double joint = simpson(inner, 0.0, 1.0, 512);
  const double mean_f = 0.5 / (r + 1.0);  // <x1 x2^r>
  return joint - mean_f * 0.5;
}

// <x1 x2 {x1+2x2}^r> - <x1 x2><{x1+2x2}^r>, splitting at x1+2x2 = 1 and 2.
inline double k1_poly_oracle(int r) {
  auto inner = [r](double x1) {
    auto piece = [&](double shift) {
      return [x1, r, shift](double x2) {
        return x2 * std::pow(x1 + 2.0 * x2 - shift, r);
      };
    };
    const double b1 = (1.0 - x1) / 2.0;
    const double b2 = 1.0 - x1 / 2.0;
    return x1 * (simpson(piece(0.0), 0.0, b1, 64) + simpson(piece(1.0), b1, b2, 64) +
                 simpson(piece(2.0), b2, 1.0, 64));
  };
  const double joint = simpson(inner, 0.0, 1.0, 512);
  auto mean_g_inner = [r](double x1) {
    auto piece = [&](double shift) {
      return [x1, r, shift](double x2) { return std::pow(x1 + 2.0 * x2 - shift, r); };
    };
    const double b1 = (1.0 - x1) / 2.0;
    const double b2 = 1.0 - x1 / 2.0;
    return simpson(piece(0.0), 0.0, b1, 64) + simpson(piece(1.0), b1, b2, 64) +
           simpson(piece(2.0), b2, 1.0, 64);
  };
  const double mean_g = simpson(mean_g_inner, 0.0, 1.0, 512);
  return joint - 0.25 * mean_g;
}

// Deterministic small trig polynomial: `terms` single modes with frequencies
// in [-3,3]^dim (never all zero) and amplitudes in [-1,1].
inline anosov::Observable random_observable(std::size_t dim, int terms,
                                            std::uint64_t seed) {
  std::vector<anosov::TrigTerm> list;
  std::uint64_t ctr = 0;
  for (int t = 0; t < terms; ++t) {
    anosov::TrigTerm term;
    term.freq.resize(dim);
    bool nonzero = false;
    do {
      for (std::size_t d = 0; d < dim; ++d) {
        term.freq[d] =
            static_cast<std::int64_t>(anosov::counter_hash(seed, ctr++) % 7) - 3;
        nonzero = nonzero || term.freq[d] != 0;
      }
    } while (!nonzero);
    term.phase =
        anosov::counter_hash(seed, ctr++) % 2 == 0 ? anosov::Phase::Cos : anosov::Phase::Sin;
    term.amp = 2.0 * anosov::counter_uniform(seed, ctr++) - 1.0;
    list.push_back(std::move(term));
  }
  return anosov::Observable(dim, 2.0 * anosov::counter_uniform(seed, ctr++) - 1.0,
                            std::move(list));
}

}  // namespace oracles
