#include "anosov/bigint.hpp"

namespace anosov {

namespace {
const BigInt kTwo64 = BigInt(1) << 64;
}

std::uint64_t mod_word(const BigInt& x) {
  BigInt r = x % kTwo64;
  if (r < 0) r += kTwo64;
  return r.convert_to<std::uint64_t>();
}

std::uint64_t mod_u64(const BigInt& x, std::uint64_t m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r.convert_to<std::uint64_t>();
}

}  // namespace anosov
