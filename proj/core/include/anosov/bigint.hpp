#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace anosov {

using BigInt = boost::multiprecision::cpp_int;

// x modulo 2^64, mapped onto the unsigned word range (two's-complement style
// for negative x).
std::uint64_t mod_word(const BigInt& x);

// x modulo m, result in [0, m).
std::uint64_t mod_u64(const BigInt& x, std::uint64_t m);

}  // namespace anosov
