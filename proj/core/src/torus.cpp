#include "anosov/torus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "anosov/errors.hpp"

namespace anosov {

TorusPoint TorusPoint::from_words(std::vector<std::uint64_t> words) {
  TorusPoint p(words.size());
  p.words_ = std::move(words);
  return p;
}

TorusPoint TorusPoint::from_doubles(const std::vector<double>& coords) {
  TorusPoint p(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    double frac = coords[i] - std::floor(coords[i]);
    if (frac >= 1.0) frac = 0.0;
    p.words_[i] = static_cast<std::uint64_t>(std::nearbyint(frac * 0x1.0p64));
  }
  return p;
}

double TorusPoint::coord(std::size_t i) const {
  return static_cast<double>(words_[i]) * 0x1.0p-64;
}

std::vector<double> TorusPoint::to_doubles() const {
  std::vector<double> out(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) out[i] = coord(i);
  return out;
}

WordMatrix WordMatrix::from(const IntMatrix& m) {
  return WordMatrix(m.dim(), reduce_mod_word(m));
}

TorusPoint WordMatrix::apply(const TorusPoint& x) const {
  if (x.dim() != dim_)
    throw DimensionMismatch("torus point dimension does not match the operator");
  TorusPoint y(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    std::uint64_t acc = 0;  // wrapping accumulation is the exact mod 1
    const std::uint64_t* row = &words_[i * dim_];
    for (std::size_t j = 0; j < dim_; ++j) acc += row[j] * x.word(j);
    y.word(i) = acc;
  }
  return y;
}

TorusPoint step(const IntMatrix& m, const TorusPoint& x) {
  return WordMatrix::from(m).apply(x);
}

TorusPoint step_n(const IntMatrix& m, std::uint64_t n, const TorusPoint& x) {
  return WordMatrix::from(matrix_power(m, n)).apply(x);
}

std::vector<TorusPoint> trajectory(const IntMatrix& m, const TorusPoint& x0,
                                   std::size_t length) {
  if (length == 0) throw std::invalid_argument("trajectory length must be >= 1");
  const WordMatrix w = WordMatrix::from(m);
  std::vector<TorusPoint> out;
  out.reserve(length);
  out.push_back(x0);
  for (std::size_t k = 1; k < length; ++k) out.push_back(w.apply(out.back()));
  return out;
}

std::string trajectory_csv(const std::vector<TorusPoint>& points) {
  std::string out;
  if (points.empty()) return out;
  for (std::size_t d = 0; d < points.front().dim(); ++d) {
    if (d > 0) out += ',';
    out += "x_" + std::to_string(d);
  }
  out += '\n';
  char buf[32];
  for (const auto& p : points) {
    for (std::size_t d = 0; d < p.dim(); ++d) {
      if (d > 0) out += ',';
      std::snprintf(buf, sizeof(buf), "%.17g", p.coord(d));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string trajectory_hex(const std::vector<TorusPoint>& points) {
  std::string out;
  char buf[24];
  for (const auto& p : points) {
    for (std::size_t d = 0; d < p.dim(); ++d) {
      if (d > 0) out += ' ';
      std::snprintf(buf, sizeof(buf), "%016llx",
                    static_cast<unsigned long long>(p.word(d)));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

TorusPoint torus_point_from_hex(const std::string& line) {
  std::vector<std::uint64_t> words;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\n')) ++pos;
    if (pos >= line.size()) break;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\n') ++pos;
    words.push_back(std::stoull(line.substr(start, pos - start), nullptr, 16));
  }
  if (words.empty()) throw std::invalid_argument("empty torus point line");
  return TorusPoint::from_words(std::move(words));
}

namespace {

double wrapped_coordinate_gap(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t d = a - b;
  const std::uint64_t wrapped = std::min(d, std::uint64_t{0} - d);
  return static_cast<double>(wrapped) * 0x1.0p-64;
}

}  // namespace

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("torus distance requires equal dimensions");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double di = wrapped_coordinate_gap(a.word(i), b.word(i));
    sum += di * di;
  }
  return std::sqrt(sum);
}

double torus_distance_l1(const TorusPoint& a, const TorusPoint& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("torus distance requires equal dimensions");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    sum += wrapped_coordinate_gap(a.word(i), b.word(i));
  return sum;
}

}  // namespace anosov
