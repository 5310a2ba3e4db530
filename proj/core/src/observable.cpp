#include "anosov/observable.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include <json.hpp>

#include "anosov/counter_rng.hpp"
#include "anosov/errors.hpp"

namespace anosov {

namespace {

// Canonical form: first nonzero frequency entry positive. cos(-k·x) = cos(k·x)
// and sin(-k·x) = -sin(k·x); all-zero frequencies fold into the mean.
void canonicalize_into(std::size_t dim, double& mean,
                       std::map<std::pair<std::vector<std::int64_t>, int>, double>& acc,
                       TrigTerm term) {
  if (term.freq.size() != dim)
    throw DimensionMismatch("term frequency dimension does not match observable");
  if (term.amp == 0.0) return;
  bool all_zero = true;
  bool flip = false;
  for (std::int64_t k : term.freq) {
    if (k != 0) {
      all_zero = false;
      flip = k < 0;
      break;
    }
  }
  if (all_zero) {
    if (term.phase == Phase::Cos) mean += term.amp;  // sin(0) contributes nothing
    return;
  }
  if (flip) {
    for (auto& k : term.freq) k = -k;
    if (term.phase == Phase::Sin) term.amp = -term.amp;
  }
  acc[{std::move(term.freq), static_cast<int>(term.phase)}] += term.amp;
}

std::vector<TrigTerm> flatten(
    std::map<std::pair<std::vector<std::int64_t>, int>, double>&& acc) {
  std::vector<TrigTerm> out;
  out.reserve(acc.size());
  for (auto& [key, amp] : acc) {
    if (amp == 0.0) continue;
    out.push_back({key.first, static_cast<Phase>(key.second), amp});
  }
  return out;
}

}  // namespace

Observable::Observable(std::size_t dim, double mean, std::vector<TrigTerm> terms,
                       std::optional<int> smoothness_p,
                       std::optional<double> deriv_bound_mp)
    : dim_(dim),
      mean_(mean),
      smoothness_p_(smoothness_p),
      deriv_bound_mp_(deriv_bound_mp) {
  if (dim == 0) throw InvalidDimension("observable dimension must be positive");
  std::map<std::pair<std::vector<std::int64_t>, int>, double> acc;
  for (auto& t : terms) canonicalize_into(dim_, mean_, acc, std::move(t));
  terms_ = flatten(std::move(acc));
}

Observable Observable::constant(std::size_t dim, double value) {
  return Observable(dim, value, {});
}

Observable Observable::single(std::vector<std::int64_t> freq, Phase phase, double amp) {
  const std::size_t dim = freq.size();
  std::vector<TrigTerm> terms;
  terms.push_back({std::move(freq), phase, amp});
  return Observable(dim, 0.0, std::move(terms));
}

std::int64_t Observable::max_abs_frequency() const {
  std::int64_t m = 0;
  for (const auto& t : terms_)
    for (std::int64_t k : t.freq) m = std::max(m, std::abs(k));
  return m;
}

double Observable::evaluate(const TorusPoint& x) const {
  if (x.dim() != dim_)
    throw DimensionMismatch("evaluation point dimension does not match observable");
  double acc = mean_;
  for (const auto& t : terms_) {
    // k·x mod 1, exactly, through wrapping word arithmetic; the angle then
    // never loses precision to a large integer part.
    std::uint64_t frac = 0;
    for (std::size_t d = 0; d < dim_; ++d)
      frac += static_cast<std::uint64_t>(t.freq[d]) * x.word(d);
    const double theta = 2.0 * std::numbers::pi * (static_cast<double>(frac) * 0x1.0p-64);
    acc += t.amp * (t.phase == Phase::Cos ? std::cos(theta) : std::sin(theta));
  }
  return acc;
}

Observable Observable::operator*(const Observable& other) const {
  if (dim_ != other.dim_)
    throw DimensionMismatch("product requires equal observable dimensions");
  std::vector<TrigTerm> terms;
  terms.reserve(terms_.size() * other.terms_.size() * 2 + terms_.size() +
                other.terms_.size());
  for (const auto& t : terms_) terms.push_back({t.freq, t.phase, t.amp * other.mean_});
  for (const auto& t : other.terms_) terms.push_back({t.freq, t.phase, t.amp * mean_});
  for (const auto& ta : terms_) {
    for (const auto& tb : other.terms_) {
      std::vector<std::int64_t> sum(dim_), diff(dim_);
      for (std::size_t d = 0; d < dim_; ++d) {
        sum[d] = ta.freq[d] + tb.freq[d];
        diff[d] = ta.freq[d] - tb.freq[d];
      }
      const double half = 0.5 * ta.amp * tb.amp;
      if (ta.phase == Phase::Cos && tb.phase == Phase::Cos) {
        terms.push_back({diff, Phase::Cos, half});
        terms.push_back({sum, Phase::Cos, half});
      } else if (ta.phase == Phase::Sin && tb.phase == Phase::Sin) {
        terms.push_back({diff, Phase::Cos, half});
        terms.push_back({sum, Phase::Cos, -half});
      } else if (ta.phase == Phase::Sin && tb.phase == Phase::Cos) {
        terms.push_back({sum, Phase::Sin, half});
        terms.push_back({diff, Phase::Sin, half});
      } else {  // cos * sin
        terms.push_back({sum, Phase::Sin, half});
        terms.push_back({diff, Phase::Sin, -half});
      }
    }
  }
  return Observable(dim_, mean_ * other.mean_, std::move(terms));
}

Observable Observable::operator+(const Observable& other) const {
  if (dim_ != other.dim_)
    throw DimensionMismatch("sum requires equal observable dimensions");
  std::vector<TrigTerm> terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return Observable(dim_, mean_ + other.mean_, std::move(terms));
}

Observable Observable::with_metadata(std::optional<int> p,
                                     std::optional<double> mp) const {
  Observable out = *this;
  out.smoothness_p_ = p;
  out.deriv_bound_mp_ = mp;
  return out;
}

Observable sawtooth_series(std::size_t coordinate, int cutoff, std::size_t dim) {
  if (cutoff < 1) throw std::invalid_argument("sawtooth cutoff must be >= 1");
  if (coordinate >= dim) throw DimensionMismatch("sawtooth coordinate out of range");
  std::vector<TrigTerm> terms;
  terms.reserve(static_cast<std::size_t>(cutoff));
  for (int r = 1; r <= cutoff; ++r) {
    std::vector<std::int64_t> freq(dim, 0);
    freq[coordinate] = r;
    terms.push_back({std::move(freq), Phase::Sin, -1.0 / (std::numbers::pi * r)});
  }
  return Observable(dim, 0.5, std::move(terms));
}

Observable smooth_family(int p, int cutoff, std::size_t dim) {
  if (p < 1 || cutoff < 1)
    throw std::invalid_argument("smooth_family requires p >= 1 and cutoff >= 1");
  if (dim == 0) throw InvalidDimension("smooth_family dimension must be positive");
  Observable f = Observable::constant(dim, 0.0);
  bool first = true;
  // Σ over (i_1..i_N) in [1..cutoff]^N of Π i_d^{-2p} Π cos(2π i_d x_d),
  // built one axis at a time.
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<TrigTerm> axis_terms;
    for (int i = 1; i <= cutoff; ++i) {
      std::vector<std::int64_t> freq(dim, 0);
      freq[d] = i;
      axis_terms.push_back(
          {std::move(freq), Phase::Cos, std::pow(static_cast<double>(i), -2.0 * p)});
    }
    Observable axis(dim, 0.0, std::move(axis_terms));
    f = first ? axis : f * axis;
    first = false;
  }
  const double mp = grid_max_abs(mixed_partial(f, p));
  return f.with_metadata(p, mp);
}

Observable mixed_partial(const Observable& f, int p) {
  if (p < 1) throw std::invalid_argument("mixed_partial requires p >= 1");
  std::vector<TrigTerm> terms;
  const double two_pi = 2.0 * std::numbers::pi;
  const bool negate = (static_cast<std::size_t>(p) * f.dim()) % 2 == 1;
  for (const auto& t : f.terms()) {
    double scale = 1.0;
    bool alive = true;
    for (std::int64_t k : t.freq) {
      if (k == 0) {
        alive = false;
        break;
      }
      scale *= std::pow(two_pi * static_cast<double>(k), 2.0 * p);
    }
    if (!alive) continue;
    terms.push_back({t.freq, t.phase, (negate ? -scale : scale) * t.amp});
  }
  return Observable(f.dim(), 0.0, std::move(terms));
}

double grid_max_abs(const Observable& f) {
  const std::size_t dim = f.dim();
  double best = 0.0;
  if (dim == 1) {
    for (int i = 0; i < 256; ++i) {
      TorusPoint x = TorusPoint::from_doubles({i / 256.0});
      best = std::max(best, std::fabs(f.evaluate(x)));
    }
  } else if (dim == 2) {
    for (int i = 0; i < 256; ++i) {
      for (int j = 0; j < 256; ++j) {
        TorusPoint x = TorusPoint::from_doubles({i / 256.0, j / 256.0});
        best = std::max(best, std::fabs(f.evaluate(x)));
      }
    }
  } else {
    // 65536 fixed-seed lattice samples; documented as an estimate.
    for (std::uint64_t s = 0; s < 65536; ++s) {
      TorusPoint x(dim);
      for (std::size_t d = 0; d < dim; ++d)
        x.word(d) = counter_hash(0x9124D00Full, s * dim + d);
      best = std::max(best, std::fabs(f.evaluate(x)));
    }
  }
  return best;
}

std::string to_json(const Observable& f) {
  nlohmann::json j;
  j["mean"] = f.mean();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : f.terms()) {
    nlohmann::json jt;
    jt["freq"] = t.freq;
    jt["phase"] = t.phase == Phase::Cos ? "cos" : "sin";
    jt["amp"] = t.amp;
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  if (f.smoothness_p())
    j["p"] = *f.smoothness_p();
  else
    j["p"] = nullptr;
  if (f.deriv_bound_mp())
    j["Mp"] = *f.deriv_bound_mp();
  else
    j["Mp"] = nullptr;
  return j.dump();
}

Observable observable_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<TrigTerm> terms;
  std::size_t dim = 0;
  for (const auto& jt : j.at("terms")) {
    TrigTerm t;
    t.freq = jt.at("freq").get<std::vector<std::int64_t>>();
    const auto phase = jt.at("phase").get<std::string>();
    if (phase != "cos" && phase != "sin")
      throw std::invalid_argument("observable phase must be \"cos\" or \"sin\"");
    t.phase = phase == "cos" ? Phase::Cos : Phase::Sin;
    t.amp = jt.at("amp").get<double>();
    dim = std::max(dim, t.freq.size());
    terms.push_back(std::move(t));
  }
  if (dim == 0) dim = 1;  // constant observable; dimension is immaterial
  std::optional<int> p;
  if (j.contains("p") && !j.at("p").is_null()) p = j.at("p").get<int>();
  std::optional<double> mp;
  if (j.contains("Mp") && !j.at("Mp").is_null()) mp = j.at("Mp").get<double>();
  return Observable(dim, j.at("mean").get<double>(), std::move(terms), p, mp);
}

}  // namespace anosov
