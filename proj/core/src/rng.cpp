#include "anosov/rng.hpp"

#include <cmath>

#include <json.hpp>

#include "anosov/counter_rng.hpp"
#include "anosov/errors.hpp"

namespace anosov {

namespace {

using u128 = unsigned __int128;

// x mod 2^61-1 for x < 2^122-ish: two shift-add folds then one subtract.
inline std::uint64_t reduce61(u128 x) {
  x = (x & kMersenne61) + (x >> 61);
  x = (x & kMersenne61) + (x >> 61);
  auto r = static_cast<std::uint64_t>(x);
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

inline std::uint64_t mul_mod61(std::uint64_t a, std::uint64_t b) {
  return reduce61(static_cast<u128>(a) * b);
}

std::vector<std::uint64_t> mat_vec_mod61(const std::vector<std::uint64_t>& m,
                                         const std::vector<std::uint64_t>& v,
                                         std::size_t n) {
  std::vector<std::uint64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    u128 acc = 0;  // per-product reduction keeps the sum well inside 128 bits
    const std::uint64_t* row = &m[i * n];
    for (std::size_t j = 0; j < n; ++j) acc += mul_mod61(row[j], v[j]);
    out[i] = reduce61(acc);
  }
  return out;
}

std::vector<std::uint64_t> mat_mul_mod61(const std::vector<std::uint64_t>& a,
                                         const std::vector<std::uint64_t>& b,
                                         std::size_t n) {
  std::vector<std::uint64_t> out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      u128 acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += mul_mod61(a[i * n + k], b[k * n + j]);
      out[i * n + j] = reduce61(acc);
    }
  }
  return out;
}

std::vector<std::uint64_t> identity61(std::size_t n) {
  std::vector<std::uint64_t> out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) out[i * n + i] = 1;
  return out;
}

}  // namespace

GeneratorState::GeneratorState(std::size_t dim, std::uint64_t seed_value)
    : GeneratorState(build_family_matrix(dim), seed_value) {}

GeneratorState::GeneratorState(const IntMatrix& matrix, std::uint64_t seed_value)
    : dim_(matrix.dim()), state_(matrix.dim()), counter_(0) {
  if (dim_ < 2) throw InvalidDimension("generator dimension must be >= 2");
  matrix_.resize(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      matrix_[i * dim_ + j] = mod_u64(matrix.at(i, j), kMersenne61);
  // Deterministic seed expansion; the all-zero state is a fixed point and is
  // re-hashed away.
  for (std::uint64_t round = 0;; ++round) {
    bool nonzero = false;
    for (std::size_t i = 0; i < dim_; ++i) {
      state_[i] = counter_hash(seed_value, round * dim_ + i) % kMersenne61;
      nonzero = nonzero || state_[i] != 0;
    }
    if (nonzero) break;
  }
  buffer_.assign(dim_, 0.0);
  counter_ = dim_;  // empty buffer; first emission triggers a refill
}

void GeneratorState::refill() {
  state_ = mat_vec_mod61(matrix_, state_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    buffer_[i] = static_cast<double>(state_[i]) / static_cast<double>(kMersenne61);
  counter_ = 0;
}

std::vector<double> GeneratorState::next_vector() {
  refill();
  counter_ = dim_;  // whole vector handed out
  return buffer_;
}

double GeneratorState::next_double() {
  if (counter_ >= dim_) refill();
  return buffer_[counter_++];
}

void GeneratorState::jump_ahead(const BigInt& k) {
  if (k < 0) throw std::invalid_argument("jump_ahead requires k >= 0");
  std::vector<std::uint64_t> power = identity61(dim_);
  std::vector<std::uint64_t> base = matrix_;
  BigInt e = k;
  while (e > 0) {
    if ((e & 1) != 0) power = mat_mul_mod61(power, base, dim_);
    e >>= 1;
    if (e > 0) base = mat_mul_mod61(base, base, dim_);
  }
  state_ = mat_vec_mod61(power, state_, dim_);
  counter_ = dim_;  // drop any partially emitted vector
}

SelfTestReport rng_self_test(GeneratorState& gen, std::uint64_t samples) {
  if (samples < 100000)
    throw std::invalid_argument("rng_self_test requires >= 1e5 samples");
  SelfTestReport report;
  report.samples = samples;
  std::vector<double> stream;
  stream.reserve(samples);
  const std::size_t dim = gen.dim();
  std::vector<double> coord_sum(dim, 0.0);
  std::vector<std::uint64_t> coord_count(dim, 0);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double u = gen.next_double();
    stream.push_back(u);
    coord_sum[i % dim] += u;
    ++coord_count[i % dim];
  }
  report.chi_square = chi_square_uniform(stream, 256);
  report.lag1_corr = lag1_autocorrelation(stream);
  report.lag1_z = report.lag1_corr * std::sqrt(static_cast<double>(samples));
  bool coords_ok = true;
  for (std::size_t d = 0; d < dim; ++d) {
    const double mean = coord_sum[d] / static_cast<double>(coord_count[d]);
    const double z =
        (mean - 0.5) * std::sqrt(12.0 * static_cast<double>(coord_count[d]));
    report.coord_mean_z.push_back(z);
    coords_ok = coords_ok && std::fabs(z) <= 4.0;
  }
  const bool chi_ok =
      report.chi_square.p_value >= 0.001 && report.chi_square.p_value <= 0.999;
  const bool lag_ok = std::fabs(report.lag1_z) <= 4.0;
  report.pass = chi_ok && lag_ok && coords_ok;
  return report;
}

std::string to_json(const SelfTestReport& report) {
  nlohmann::json j;
  j["samples"] = report.samples;
  j["chi_square"] = {{"statistic", report.chi_square.statistic},
                     {"dof", report.chi_square.dof},
                     {"p_value", report.chi_square.p_value}};
  j["lag1_corr"] = report.lag1_corr;
  j["lag1_z"] = report.lag1_z;
  j["coord_mean_z"] = report.coord_mean_z;
  j["pass"] = report.pass;
  return j.dump();
}

}  // namespace anosov
