#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "anosov/bigint.hpp"

namespace anosov {

/// Dense square matrix over arbitrary-precision integers. Immutable use is
/// intended after construction; all operations return fresh matrices.
class IntMatrix {
 public:
  explicit IntMatrix(std::size_t dim);

  static IntMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }

  BigInt& at(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const BigInt& at(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  IntMatrix transposed() const;

  bool operator==(const IntMatrix& other) const = default;

 private:
  std::size_t dim_;
  std::vector<BigInt> entries_;
};

IntMatrix operator*(const IntMatrix& lhs, const IntMatrix& rhs);

/// The integer operator family: first row and first column all ones, row i
/// (0-indexed) continues (i+1, i, ..., 3, 2) from column 1 and pads with ones,
/// with the single normative exception entry(2,1) = 2. The last row of every
/// N >= 4 instance reads (1, N, N-1, ..., 3, 2).
IntMatrix build_family_matrix(std::size_t n);

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
BigInt determinant_exact(const IntMatrix& m);

/// Exact m^n by binary exponentiation; n = 0 yields the identity.
IntMatrix matrix_power(const IntMatrix& m, std::uint64_t n);

/// Entries reduced modulo 2^64, row-major.
std::vector<std::uint64_t> reduce_mod_word(const IntMatrix& m);

/// JSON array-of-arrays of decimal strings (entries exceed 64 bits).
std::string to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const std::string& text);

/// Closed-form coefficients of the n-th power of the N=2 family matrix,
/// computed by the integer Fibonacci recurrence: b = c = F(2n),
/// a = F(2n) - F(2n-2), d = 2 F(2n) - F(2n-2).
struct FibonacciPower {
  std::uint64_t n = 0;
  BigInt a, b, c, d;
};

FibonacciPower fibonacci_power(std::uint64_t n);

}  // namespace anosov
