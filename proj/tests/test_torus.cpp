#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "anosov/counter_rng.hpp"
#include "anosov/errors.hpp"
#include "anosov/spectral.hpp"
#include "anosov/torus.hpp"

using namespace anosov;

namespace {

TorusPoint random_point(std::size_t dim, std::uint64_t seed) {
  TorusPoint x(dim);
  for (std::size_t d = 0; d < dim; ++d) x.word(d) = counter_hash(seed, d);
  return x;
}

}  // namespace

TEST_CASE("one exact step on N=2") {
  const IntMatrix t2 = build_family_matrix(2);
  const TorusPoint x = TorusPoint::from_doubles({0.5, 0.5});
  const TorusPoint y = step(t2, x);
  CHECK(y.coord(0) == 0.0);  // {1.0} == 0
  CHECK(y.coord(1) == 0.5);  // {1.5} == 0.5

  const TorusPoint z = step(t2, TorusPoint::from_doubles({0.25, 0.125}));
  CHECK(z.coord(0) == 0.375);
  CHECK(z.coord(1) == 0.5);
}

TEST_CASE("step_n equals repeated composition bit-exactly") {
  const IntMatrix t2 = build_family_matrix(2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    TorusPoint iterated = random_point(2, seed);
    const TorusPoint x0 = iterated;
    for (int k = 0; k < 5; ++k) iterated = step(t2, iterated);
    CHECK(step_n(t2, 5, x0) == iterated);
    CHECK(step_n(t2, 0, x0) == x0);
  }
  // N=3 as well, against the same composition oracle.
  const IntMatrix t3 = build_family_matrix(3);
  TorusPoint p = random_point(3, 99);
  const TorusPoint p0 = p;
  for (int k = 0; k < 7; ++k) p = step(t3, p);
  CHECK(step_n(t3, 7, p0) == p);
}

TEST_CASE("step_n composition law") {
  const IntMatrix t3 = build_family_matrix(3);
  for (std::uint64_t seed = 20; seed < 25; ++seed) {
    const TorusPoint x = random_point(3, seed);
    const std::uint64_t a = counter_hash(seed, 50) % 9;
    const std::uint64_t b = counter_hash(seed, 51) % 9;
    CHECK(step_n(t3, a + b, x) == step_n(t3, a, step_n(t3, b, x)));
  }
}

TEST_CASE("T^3 on N=2 uses the Fibonacci coefficients") {
  const IntMatrix cube = matrix_power(build_family_matrix(2), 3);
  CHECK(cube.at(0, 0) == 5);
  CHECK(cube.at(0, 1) == 8);
  CHECK(cube.at(1, 0) == 8);
  CHECK(cube.at(1, 1) == 13);
}

TEST_CASE("trajectory basics") {
  const IntMatrix t2 = build_family_matrix(2);
  const TorusPoint x0 = random_point(2, 7);
  const auto single = trajectory(t2, x0, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == x0);

  const TorusPoint origin(2);
  for (const auto& p : trajectory(t2, origin, 8)) CHECK(p == origin);

  const auto path = trajectory(t2, x0, 6);
  CHECK(path[5] == step_n(t2, 5, x0));
  CHECK_THROWS(trajectory(t2, x0, 0));
}

TEST_CASE("a dyadic cube keeps its cardinality under one step") {
  const IntMatrix t2 = build_family_matrix(2);
  std::set<std::pair<std::uint64_t, std::uint64_t>> image;
  for (std::uint64_t i = 0; i < 16; ++i) {
    for (std::uint64_t j = 0; j < 16; ++j) {
      TorusPoint x(2);
      x.word(0) = 0x0123456789ABCDEFull + (i << 60);
      x.word(1) = 0xFEDCBA9876543210ull + (j << 60);
      const TorusPoint y = step(t2, x);
      image.insert({y.word(0), y.word(1)});
    }
  }
  CHECK(image.size() == 256);
}

TEST_CASE("step is injective on random sample pairs") {
  const IntMatrix t3 = build_family_matrix(3);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const TorusPoint a = random_point(3, 2 * seed);
    const TorusPoint b = random_point(3, 2 * seed + 1);
    if (a == b) continue;
    CHECK(step(t3, a) != step(t3, b));
  }
}

TEST_CASE("last-bit perturbations separate at the entropy rate") {
  // Separation is measured in the L1 torus metric: the entropy-rate step cap
  // assumes the perturbation grows like e^h, while a single difference vector
  // grows at ln(lambda_max) < h once several directions expand, which costs
  // one extra Euclidean step at N=8.
  for (std::size_t n : {std::size_t{2}, std::size_t{8}}) {
    const IntMatrix t = build_family_matrix(n);
    const double h = entropy(t);
    const int cap = static_cast<int>(std::ceil(64.0 * std::numbers::ln2 / h)) + 5;
    const WordMatrix w = WordMatrix::from(t);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      TorusPoint a = random_point(n, seed * 31 + n);
      TorusPoint b = a;
      b.word(0) ^= 1;  // last fixed-point bit
      bool separated = false;
      for (int k = 0; k < cap && !separated; ++k) {
        a = w.apply(a);
        b = w.apply(b);
        separated = torus_distance_l1(a, b) > 0.25;
      }
      CHECK(separated);
    }
  }
}

TEST_CASE("torus distance wraps to the nearest image") {
  const TorusPoint a = TorusPoint::from_doubles({0.95, 0.0});
  const TorusPoint b = TorusPoint::from_doubles({0.05, 0.0});
  CHECK(torus_distance(a, b) == doctest::Approx(0.10).epsilon(1e-12));
  CHECK(torus_distance(a, a) == 0.0);
}

TEST_CASE("trajectory CSV and hex replay") {
  const IntMatrix t2 = build_family_matrix(2);
  const auto path = trajectory(t2, random_point(2, 3), 4);

  const std::string csv = trajectory_csv(path);
  CHECK(csv.rfind("x_0,x_1\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  // Hex dump round-trips bit-exactly.
  const std::string hex = trajectory_hex(path);
  std::size_t line_start = 0;
  for (const auto& expected : path) {
    const std::size_t line_end = hex.find('\n', line_start);
    REQUIRE(line_end != std::string::npos);
    const TorusPoint parsed =
        torus_point_from_hex(hex.substr(line_start, line_end - line_start));
    CHECK(parsed == expected);
    line_start = line_end + 1;
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const IntMatrix t2 = build_family_matrix(2);
  CHECK_THROWS_AS(step(t2, TorusPoint(3)), DimensionMismatch);
  CHECK_THROWS_AS(torus_distance(TorusPoint(2), TorusPoint(3)), DimensionMismatch);
}
