#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "anosov/int_matrix.hpp"

namespace anosov {

/// Eigenvalue spectrum of an integer operator, classified against the unit
/// circle. `c_system` is false when any modulus falls inside the dead band
/// around 1; that is a recorded condition, not an error.
struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;
  std::vector<std::size_t> contracting;   // indices with |λ| < 1
  std::vector<std::size_t> expanding;     // indices with |λ| > 1
  std::vector<std::size_t> unit_modulus;  // indices with ||λ|-1| <= tol
  double entropy = 0.0;                   // Σ ln|λ| over the expanding set, nats/iteration
  bool c_system = true;
  double tol = 0.0;
};

/// All eigenvalues by balancing + Hessenberg reduction + Francis double-shift
/// QR, classified with dead band `tol` around the unit circle.
/// Throws ConvergenceError if the QR iteration exceeds 100*N sweeps.
Spectrum compute_spectrum(const IntMatrix& m, double tol = 1e-9);

/// Kolmogorov entropy: sum of logs of expanding moduli. Throws NotCSystem when
/// the spectrum has unit-modulus eigenvalues.
double entropy(const IntMatrix& m);

struct SubspaceSplit {
  // Real eigenvectors, or orthonormal pairs spanning the invariant plane of a
  // complex-conjugate pair. Vector counts equal the expanding/contracting
  // index-set sizes.
  std::vector<std::vector<double>> expanding_basis;
  std::vector<std::vector<double>> contracting_basis;
};

/// Expanding/contracting invariant bases by inverse iteration. Residual cap:
/// ||T v - λ v|| <= tol ||v|| per real eigenvector (plane-projected residual
/// for complex pairs); exceeding it raises DegenerateMatrix.
SubspaceSplit invariant_subspaces(const IntMatrix& m, double tol = 1e-8);

/// Eigenvalues of the inverse operator, as reciprocals (Det T = 1 guarantees
/// invertibility).
std::vector<std::complex<double>> inverse_spectrum(const Spectrum& s);

/// CSV block(s) with header `re,im`, one eigenvalue per row at 17 significant
/// digits; with `also_inverse` a second block for the inverse operator is
/// appended after a blank line.
std::string spectrum_distribution_csv(const IntMatrix& m, bool also_inverse);
std::string eigenvalue_csv(const std::vector<std::complex<double>>& eigenvalues);

}  // namespace anosov
