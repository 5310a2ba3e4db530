#include "anosov/correlation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "anosov/counter_rng.hpp"
#include "anosov/errors.hpp"

namespace anosov {

namespace {

constexpr std::size_t kChunks = 64;

bool all_zero(const std::vector<BigInt>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

bool equal_vec(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool negated_vec(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != -b[i]) return false;
  return true;
}

struct McSums {
  double sum_f = 0.0;
  double sum_g = 0.0;
  double sum_p = 0.0;
  double sum_p2 = 0.0;
  void add(double fv, double gv) {
    const double p = fv * gv;
    sum_f += fv;
    sum_g += gv;
    sum_p += p;
    sum_p2 += p * p;
  }
  void merge(const McSums& o) {
    sum_f += o.sum_f;
    sum_g += o.sum_g;
    sum_p += o.sum_p;
    sum_p2 += o.sum_p2;
  }
};

unsigned resolve_workers(unsigned workers) {
  if (workers == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    workers = hw == 0 ? 1 : std::min(hw, 8u);
  }
  return std::min<unsigned>(workers, kChunks);
}

// Chunked counter-stream Monte Carlo covariance of fx(x) and gx(x) over
// uniform lattice points. The chunk layout and the pairwise merge order are
// fixed, so the estimate is a pure function of (seed, samples).
McEstimate mc_covariance(std::size_t dim, std::uint64_t samples, std::uint64_t seed,
                         unsigned workers,
                         const std::function<double(const TorusPoint&)>& fx,
                         const std::function<double(const TorusPoint&)>& gx) {
  if (samples < 1000)
    throw std::invalid_argument("Monte Carlo estimation needs >= 1000 samples");
  std::vector<McSums> slots(kChunks);
  const std::uint64_t per = (samples + kChunks - 1) / kChunks;
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= kChunks) return;
      const std::uint64_t begin = per * c;
      const std::uint64_t end = std::min(samples, begin + per);
      McSums local;
      TorusPoint x(dim);
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        for (std::size_t d = 0; d < dim; ++d)
          x.word(d) = counter_hash(seed, idx * dim + d);
        local.add(fx(x), gx(x));
      }
      slots[c] = local;
    }
  };
  const unsigned nw = resolve_workers(workers);
  if (nw <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned t = 0; t < nw; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (std::size_t width = 1; width < kChunks; width *= 2)
    for (std::size_t i = 0; i + width < kChunks; i += 2 * width)
      slots[i].merge(slots[i + width]);
  const McSums& total = slots[0];
  const double s = static_cast<double>(samples);
  McEstimate out;
  out.estimate = total.sum_p / s - (total.sum_f / s) * (total.sum_g / s);
  const double mean_p = total.sum_p / s;
  const double var_p = std::max(0.0, (total.sum_p2 - s * mean_p * mean_p) / (s - 1.0));
  out.std_error = std::sqrt(var_p / s);
  return out;
}

std::vector<BigInt> transported_frequency(const IntMatrix& a_transposed,
                                          const std::vector<std::int64_t>& j) {
  const std::size_t n = a_transposed.dim();
  std::vector<BigInt> k(n);
  for (std::size_t r = 0; r < n; ++r) {
    BigInt acc = 0;
    for (std::size_t c = 0; c < n; ++c) acc += a_transposed.at(r, c) * j[c];
    k[r] = std::move(acc);
  }
  return k;
}

double zeta_even(int p) {
  // Σ r^{-2p}; closed forms for the small orders, Euler-Maclaurin tail above.
  switch (p) {
    case 1:
      return std::numbers::pi * std::numbers::pi / 6.0;
    case 2:
      return std::pow(std::numbers::pi, 4) / 90.0;
    case 3:
      return std::pow(std::numbers::pi, 6) / 945.0;
    case 4:
      return std::pow(std::numbers::pi, 8) / 9450.0;
    default: {
      const double s = 2.0 * p;
      double sum = 0.0;
      const int cutoff = 1000;
      for (int r = 1; r <= cutoff; ++r) sum += std::pow(r, -s);
      sum += std::pow(cutoff, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(cutoff, -s);
      return sum;
    }
  }
}

}  // namespace

std::string method_name(CorrelationMethod m) {
  switch (m) {
    case CorrelationMethod::ExactResonance:
      return "exact_resonance";
    case CorrelationMethod::MonteCarlo:
      return "monte_carlo";
    case CorrelationMethod::ClosedForm:
      return "closed_form";
  }
  return "unknown";
}

double pair_integral(Phase phase_a, const std::vector<BigInt>& freq_a, Phase phase_b,
                     const std::vector<BigInt>& freq_b) {
  if (freq_a.size() != freq_b.size())
    throw DimensionMismatch("pair_integral requires equal frequency dimensions");
  const bool za = all_zero(freq_a);
  const bool zb = all_zero(freq_b);
  if (za || zb) {
    // cos_0 is the constant 1, sin_0 vanishes identically.
    if (za && zb)
      return phase_a == Phase::Cos && phase_b == Phase::Cos ? 1.0 : 0.0;
    return 0.0;
  }
  if (phase_a != phase_b) return 0.0;  // <sin cos> = 0 always
  if (equal_vec(freq_a, freq_b)) return 0.5;
  if (negated_vec(freq_a, freq_b)) return phase_a == Phase::Cos ? 0.5 : -0.5;
  return 0.0;
}

ExactCorrelationDetail exact_correlation_detail(const IntMatrix& m, const Observable& f,
                                                const Observable& g, std::uint64_t n) {
  if (f.dim() != m.dim() || g.dim() != m.dim())
    throw DimensionMismatch("observable dimensions must match the operator");
  ExactCorrelationDetail out;
  if (f.terms().empty() || g.terms().empty()) return out;

  std::map<std::pair<std::vector<std::int64_t>, int>, double> f_index;
  for (const auto& t : f.terms()) f_index[{t.freq, static_cast<int>(t.phase)}] = t.amp;
  const std::int64_t max_f = f.max_abs_frequency();

  const IntMatrix a_t = matrix_power(m, n).transposed();
  for (const auto& t : g.terms()) {
    std::vector<BigInt> k = transported_frequency(a_t, t.freq);
    // Canonicalize the transported frequency; skip anything outside f's band.
    bool flip = false;
    bool in_range = true;
    bool seen_nonzero = false;
    for (const auto& x : k) {
      if (!seen_nonzero && x != 0) {
        seen_nonzero = true;
        flip = x < 0;
      }
      if (x > max_f || x < -max_f) {
        in_range = false;
        break;
      }
    }
    if (!in_range || !seen_nonzero) continue;
    std::vector<std::int64_t> key(k.size());
    for (std::size_t d = 0; d < k.size(); ++d) {
      const BigInt v = flip ? -k[d] : k[d];
      key[d] = v.convert_to<std::int64_t>();
    }
    double amp = t.amp;
    if (flip && t.phase == Phase::Sin) amp = -amp;
    const auto hit = f_index.find({std::move(key), static_cast<int>(t.phase)});
    if (hit != f_index.end()) {
      out.value += 0.5 * hit->second * amp;
      ++out.matched_terms;
    }
  }
  return out;
}

double exact_correlation(const IntMatrix& m, const Observable& f, const Observable& g,
                         std::uint64_t n) {
  return exact_correlation_detail(m, f, g, n).value;
}

McEstimate monte_carlo_correlation(const IntMatrix& m, const Observable& f,
                                   const Observable& g, std::uint64_t n,
                                   std::uint64_t samples, std::uint64_t seed,
                                   unsigned workers) {
  if (f.dim() != m.dim() || g.dim() != m.dim())
    throw DimensionMismatch("observable dimensions must match the operator");
  const WordMatrix w = WordMatrix::from(matrix_power(m, n));
  return mc_covariance(
      m.dim(), samples, seed, workers,
      [&f](const TorusPoint& x) { return f.evaluate(x); },
      [&g, &w](const TorusPoint& x) { return g.evaluate(w.apply(x)); });
}

double one_step_sawtooth_correlator(const Observable& f) {
  if (f.dim() != 2)
    throw DimensionMismatch("the one-step sawtooth correlator is defined on N=2");
  double acc = 0.0;
  for (const auto& t : f.terms()) {
    if (t.phase != Phase::Sin) continue;
    const std::int64_t r = t.freq[0];
    if (r >= 1 && t.freq[1] == r)
      acc -= t.amp / (2.0 * std::numbers::pi * static_cast<double>(r));
  }
  return acc;
}

OneStepScan polynomial_one_step_scan(int r_max, std::uint64_t samples,
                                     std::uint64_t seed, unsigned workers) {
  if (r_max < 0) throw std::invalid_argument("r_max must be >= 0");
  const IntMatrix t2 = build_family_matrix(2);
  const WordMatrix w = WordMatrix::from(t2);
  OneStepScan scan;
  scan.samples = samples;
  for (int r = 0; r <= r_max; ++r) {
    const std::uint64_t sub_seed = counter_hash(seed, 1000 + static_cast<std::uint64_t>(r));
    const double rd = static_cast<double>(r);
    const auto d1 = mc_covariance(
        2, samples, sub_seed, workers,
        [rd](const TorusPoint& x) { return x.coord(0) * std::pow(x.coord(1), rd); },
        [&w](const TorusPoint& x) { return w.apply(x).coord(0); });
    const auto k1 = mc_covariance(
        2, samples, sub_seed ^ 0x517CC1B727220A95ull, workers,
        [](const TorusPoint& x) { return x.coord(0) * x.coord(1); },
        [&w, rd](const TorusPoint& x) { return std::pow(w.apply(x).coord(1), rd); });
    scan.r_values.push_back(r);
    scan.d1.push_back(d1.estimate);
    scan.d1_std_error.push_back(d1.std_error);
    scan.k1.push_back(k1.estimate);
    scan.k1_std_error.push_back(k1.std_error);
  }
  return scan;
}

DecayFit fit_decay(const CorrelationSeries& series, const Spectrum& spectrum,
                   const Observable& f, const Observable& g) {
  if (series.n_values.size() != series.d_values.size())
    throw std::invalid_argument("correlation series lengths disagree");
  if (!f.smoothness_p() || !g.smoothness_p())
    throw std::invalid_argument("fit_decay requires smoothness metadata on both observables");
  if (!f.deriv_bound_mp() || !g.deriv_bound_mp())
    throw std::invalid_argument("fit_decay requires derivative bounds on both observables");
  if (f.dim() != g.dim())
    throw DimensionMismatch("fit_decay requires equal observable dimensions");

  DecayFit fit;
  const bool mc = series.method == CorrelationMethod::MonteCarlo;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < series.n_values.size(); ++i) {
    const double d = std::fabs(series.d_values[i]);
    const double floor_i = mc ? 5.0 * series.std_errors.at(i) : 1e-14;
    if (d > floor_i) {
      xs.push_back(static_cast<double>(series.n_values[i]));
      ys.push_back(std::log(d));
    }
    fit.noise_floor = std::max(fit.noise_floor, floor_i);
  }
  if (xs.size() < 3)
    throw TooFewPoints("fit_decay needs at least 3 points above the noise floor");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw TooFewPoints("fit_decay needs distinct n values");
  const double slope = sxy / sxx;
  fit.fitted_rate = -slope;
  fit.fitted_prefactor = std::exp(my - slope * mx);
  fit.points_used = static_cast<int>(xs.size());

  const int p = std::min(*f.smoothness_p(), *g.smoothness_p());
  const auto dim = f.dim();
  fit.nu = 2.0 * p * static_cast<double>(dim);
  fit.bound_rate = spectrum.entropy * fit.nu;
  const double mp = fit.mp_safety_factor * *f.deriv_bound_mp();
  const double mq = fit.mp_safety_factor * *g.deriv_bound_mp();
  const double zeta = zeta_even(p);
  const double two_pi = 2.0 * std::numbers::pi;
  if (dim == 2) {
    // 4C = 72 MpMq / (16 π^4)^{2p} · ζ(2p)^2
    fit.bound_prefactor =
        72.0 * mp * mq / std::pow(16.0 * std::pow(std::numbers::pi, 4), 2.0 * p) *
        zeta * zeta;
  } else {
    // C = MpMq / (2π)^{4pN} · ζ(2p)^N
    fit.bound_prefactor = mp * mq / std::pow(two_pi, 4.0 * p * static_cast<double>(dim)) *
                          std::pow(zeta, static_cast<double>(dim));
  }
  for (std::size_t i = 0; i < series.n_values.size(); ++i) {
    const double d = std::fabs(series.d_values[i]);
    const double floor_i = mc ? 5.0 * series.std_errors.at(i) : 1e-14;
    if (d <= floor_i) continue;
    const double bound =
        fit.bound_prefactor *
        std::exp(-static_cast<double>(series.n_values[i]) * fit.bound_rate);
    if (d > bound * (1.0 + 1e-9)) fit.bound_violation = true;
  }
  return fit;
}

std::string to_csv(const CorrelationSeries& series) {
  std::string out = "n,d_n,stderr,method,samples\n";
  char buf[160];
  const std::string name = method_name(series.method);
  for (std::size_t i = 0; i < series.n_values.size(); ++i) {
    std::string stderr_field;
    if (i < series.std_errors.size()) {
      std::snprintf(buf, sizeof(buf), "%.17g", series.std_errors[i]);
      stderr_field = buf;
    }
    std::string samples_field;
    if (series.sample_count) samples_field = std::to_string(*series.sample_count);
    std::snprintf(buf, sizeof(buf), "%llu,%.17g,",
                  static_cast<unsigned long long>(series.n_values[i]),
                  series.d_values[i]);
    out += buf;
    out += stderr_field;
    out += ',';
    out += name;
    out += ',';
    out += samples_field;
    out += '\n';
  }
  return out;
}

std::string to_json(const DecayFit& fit) {
  nlohmann::json j;
  j["fitted_rate"] = fit.fitted_rate;
  j["fitted_prefactor"] = fit.fitted_prefactor;
  j["bound_rate"] = fit.bound_rate;
  j["bound_prefactor"] = fit.bound_prefactor;
  j["nu"] = fit.nu;
  j["points_used"] = fit.points_used;
  j["bound_violation"] = fit.bound_violation;
  j["mp_safety_factor"] = fit.mp_safety_factor;
  j["noise_floor"] = fit.noise_floor;
  return j.dump();
}

}  // namespace anosov
