// anosov: exact and statistical analysis of integer hyperbolic torus
// automorphisms, with a matrix-recurrence uniform generator.
//
// Every run writes a reproducibility header (tool version, full config echo,
// seed, worker count) so identical configurations replay byte-identically.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "anosov/correlation.hpp"
#include "anosov/errors.hpp"
#include "anosov/int_matrix.hpp"
#include "anosov/observable.hpp"
#include "anosov/rng.hpp"
#include "anosov/spectral.hpp"
#include "anosov/timescales.hpp"
#include "anosov/torus.hpp"
#include "anosov/version.hpp"

namespace {

using nlohmann::json;

std::string resolve_output_path(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* base = std::getenv("ANOSOV_OUT");
  if (base == nullptr || *base == '\0') return path;
  std::string out = base;
  if (out.back() != '/') out += '/';
  return out + path;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  const std::string resolved = resolve_output_path(path);
  std::ofstream file(resolved, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output path: " + resolved);
  file << text;
  if (!file.good()) throw std::runtime_error("write failed: " + resolved);
}

std::string csv_header(const std::string& subcommand, const std::string& config) {
  std::string out = "# anosov " + std::string(anosov::kVersion) + "\n";
  out += "# cmd=" + subcommand;
  if (!config.empty()) out += " " + config;
  out += "\n";
  return out;
}

json json_config(const std::string& subcommand, const json& config) {
  json j;
  j["version"] = anosov::kVersion;
  j["cmd"] = subcommand;
  j["config"] = config;
  return j;
}

anosov::Observable load_or_build_observable(const std::string& json_path, int p,
                                            int cutoff, std::size_t dim) {
  if (json_path.empty()) return anosov::smooth_family(p, cutoff, dim);
  std::ifstream in(json_path);
  if (!in) throw std::runtime_error("cannot read observable file: " + json_path);
  std::stringstream buf;
  buf << in.rdbuf();
  return anosov::observable_from_json(buf.str());
}

struct CommonOut {
  std::string output_path;
  std::string format = "csv";
};

void add_output_options(CLI::App* cmd, CommonOut& out, bool with_format = true) {
  cmd->add_option("-o,--output", out.output_path,
                  "Output file (default stdout; relative paths resolve under "
                  "$ANOSOV_OUT when set)");
  if (with_format)
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Exact spectra, correlation decay, time scales, and a "
               "matrix-recurrence uniform generator for integer torus "
               "automorphisms"};
  app.require_subcommand(1);

  // --- matrix ---------------------------------------------------------------
  auto* matrix_cmd =
      app.add_subcommand("matrix", "Emit the family operator (or a power) as "
                                   "JSON decimal strings");
  std::size_t matrix_n = 2;
  std::uint64_t matrix_power_arg = 1;
  CommonOut matrix_out;
  matrix_cmd->add_option("--N", matrix_n, "Dimension (>= 2)")->required();
  matrix_cmd->add_option("--power", matrix_power_arg, "Matrix power (default 1)");
  add_output_options(matrix_cmd, matrix_out, /*with_format=*/false);
  matrix_cmd->callback([&] {
    const anosov::IntMatrix t = anosov::build_family_matrix(matrix_n);
    const anosov::IntMatrix tn = anosov::matrix_power(t, matrix_power_arg);
    json j = json_config("matrix", {{"N", matrix_n}, {"power", matrix_power_arg}});
    j["matrix"] = json::parse(anosov::to_json(tn));
    j["determinant"] = anosov::determinant_exact(tn).str();
    write_text(matrix_out.output_path, j.dump(2) + "\n");
  });

  // --- spectrum ---------------------------------------------------------  --
  auto* spectrum_cmd = app.add_subcommand(
      "spectrum", "Eigenvalues of the family operator (optionally of its "
                  "inverse), entropy, and the C-condition check");
  std::size_t spectrum_n = 2;
  double spectrum_tol = 1e-9;
  bool spectrum_inverse = false;
  CommonOut spectrum_out;
  spectrum_cmd->add_option("--N", spectrum_n, "Dimension (>= 2)")->required();
  spectrum_cmd->add_option("--tol", spectrum_tol,
                           "Unit-circle dead band, in (0, 1e-4]");
  spectrum_cmd->add_flag("--inverse", spectrum_inverse,
                         "Also emit the inverse operator's eigenvalues");
  add_output_options(spectrum_cmd, spectrum_out);
  spectrum_cmd->callback([&] {
    const anosov::IntMatrix t = anosov::build_family_matrix(spectrum_n);
    const anosov::Spectrum s = anosov::compute_spectrum(t, spectrum_tol);
    std::ostringstream cfg;
    cfg << "N=" << spectrum_n << " tol=" << spectrum_tol
        << " inverse=" << (spectrum_inverse ? 1 : 0);
    if (spectrum_out.format == "csv") {
      std::string text = csv_header("spectrum", cfg.str());
      text += anosov::eigenvalue_csv(s.eigenvalues);
      if (spectrum_inverse) {
        text += "\n";
        text += anosov::eigenvalue_csv(anosov::inverse_spectrum(s));
      }
      write_text(spectrum_out.output_path, text);
    } else {
      json j = json_config("spectrum", {{"N", spectrum_n},
                                        {"tol", spectrum_tol},
                                        {"inverse", spectrum_inverse}});
      json eigs = json::array();
      for (const auto& l : s.eigenvalues) eigs.push_back({l.real(), l.imag()});
      j["eigenvalues"] = std::move(eigs);
      j["entropy"] = s.entropy;
      j["c_system"] = s.c_system;
      j["expanding_count"] = s.expanding.size();
      j["contracting_count"] = s.contracting.size();
      if (spectrum_inverse) {
        json inv = json::array();
        for (const auto& l : anosov::inverse_spectrum(s))
          inv.push_back({l.real(), l.imag()});
        j["inverse_eigenvalues"] = std::move(inv);
      }
      write_text(spectrum_out.output_path, j.dump(2) + "\n");
    }
  });

  // --- correlate --------------------------------------------------------  --
  auto* correlate_cmd = app.add_subcommand(
      "correlate", "Correlation series D_n(f,g), exact or Monte Carlo");
  std::size_t corr_n_dim = 2;
  std::uint64_t corr_n_from = 0, corr_n_to = 8;
  std::string corr_method = "exact";
  std::uint64_t corr_samples = 1000000, corr_seed = 1;
  int corr_p = 1, corr_cutoff = 4;
  unsigned corr_workers = 0;
  std::string corr_f_json, corr_g_json;
  CommonOut corr_out;
  correlate_cmd->add_option("--N", corr_n_dim, "Dimension (>= 2)")->required();
  correlate_cmd->add_option("--n-from", corr_n_from, "First time step");
  correlate_cmd->add_option("--n-to", corr_n_to, "Last time step");
  correlate_cmd->add_option("--method", corr_method, "exact or mc")
      ->check(CLI::IsMember({"exact", "mc"}));
  correlate_cmd->add_option("--samples", corr_samples, "Monte Carlo samples");
  correlate_cmd->add_option("--seed", corr_seed, "Monte Carlo seed");
  correlate_cmd->add_option("--p", corr_p, "Smoothness order of the default pair");
  correlate_cmd->add_option("--cutoff", corr_cutoff,
                            "Frequency cutoff of the default pair");
  correlate_cmd->add_option("--f-json", corr_f_json, "Observable f as JSON file");
  correlate_cmd->add_option("--g-json", corr_g_json, "Observable g as JSON file");
  correlate_cmd->add_option("--workers", corr_workers,
                            "Worker threads (0 = auto); results do not depend "
                            "on this");
  add_output_options(correlate_cmd, corr_out, /*with_format=*/false);
  correlate_cmd->callback([&] {
    if (corr_n_to < corr_n_from)
      throw CLI::ValidationError("--n-to must be >= --n-from");
    const anosov::IntMatrix t = anosov::build_family_matrix(corr_n_dim);
    const anosov::Observable f =
        load_or_build_observable(corr_f_json, corr_p, corr_cutoff, corr_n_dim);
    const anosov::Observable g =
        load_or_build_observable(corr_g_json, corr_p, corr_cutoff, corr_n_dim);
    anosov::CorrelationSeries series;
    series.method = corr_method == "exact" ? anosov::CorrelationMethod::ExactResonance
                                           : anosov::CorrelationMethod::MonteCarlo;
    if (corr_method == "mc") series.sample_count = corr_samples;
    for (std::uint64_t n = corr_n_from; n <= corr_n_to; ++n) {
      series.n_values.push_back(n);
      if (corr_method == "exact") {
        series.d_values.push_back(anosov::exact_correlation(t, f, g, n));
      } else {
        const auto est = anosov::monte_carlo_correlation(t, f, g, n, corr_samples,
                                                         corr_seed, corr_workers);
        series.d_values.push_back(est.estimate);
        series.std_errors.push_back(est.std_error);
      }
    }
    std::ostringstream cfg;
    cfg << "N=" << corr_n_dim << " n=" << corr_n_from << ":" << corr_n_to
        << " method=" << corr_method << " samples=" << corr_samples
        << " seed=" << corr_seed << " p=" << corr_p << " cutoff=" << corr_cutoff
        << " workers=" << corr_workers;
    write_text(corr_out.output_path,
               csv_header("correlate", cfg.str()) + anosov::to_csv(series));
  });

  // --- scan-d1 ----------------------------------------------------------  --
  auto* scan_cmd = app.add_subcommand(
      "scan-d1", "Monte Carlo scan of the polynomial one-step correlators "
                 "D1(r) and K1(r) on the N=2 torus");
  int scan_r_max = 30;
  std::uint64_t scan_samples = 1000000, scan_seed = 1;
  unsigned scan_workers = 0;
  CommonOut scan_out;
  scan_cmd->add_option("--r-max", scan_r_max, "Largest polynomial order");
  scan_cmd->add_option("--samples", scan_samples, "Monte Carlo samples per point");
  scan_cmd->add_option("--seed", scan_seed, "Monte Carlo seed");
  scan_cmd->add_option("--workers", scan_workers, "Worker threads (0 = auto)");
  add_output_options(scan_cmd, scan_out, /*with_format=*/false);
  scan_cmd->callback([&] {
    const anosov::OneStepScan scan =
        anosov::polynomial_one_step_scan(scan_r_max, scan_samples, scan_seed,
                                         scan_workers);
    std::ostringstream cfg;
    cfg << "r_max=" << scan_r_max << " samples=" << scan_samples
        << " seed=" << scan_seed << " workers=" << scan_workers;
    std::string text = csv_header("scan-d1", cfg.str());
    text += "r,d1,d1_stderr,k1,k1_stderr\n";
    char buf[200];
    for (std::size_t i = 0; i < scan.r_values.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g\n",
                    scan.r_values[i], scan.d1[i], scan.d1_std_error[i], scan.k1[i],
                    scan.k1_std_error[i]);
      text += buf;
    }
    write_text(scan_out.output_path, text);
  });

  // --- fit-decay --------------------------------------------------------  --
  auto* fit_cmd = app.add_subcommand(
      "fit-decay", "Fit the exponential decay of D_n(f,g) and compare against "
                   "the entropy bound");
  std::size_t fit_n_dim = 2;
  std::uint64_t fit_n_from = 0, fit_n_to = 8;
  std::string fit_method = "exact";
  std::uint64_t fit_samples = 1000000, fit_seed = 1;
  int fit_p = 1, fit_cutoff = 4;
  unsigned fit_workers = 0;
  std::string fit_series_out;
  CommonOut fit_out;
  fit_cmd->add_option("--N", fit_n_dim, "Dimension (>= 2)")->required();
  fit_cmd->add_option("--n-from", fit_n_from, "First time step");
  fit_cmd->add_option("--n-to", fit_n_to, "Last time step");
  fit_cmd->add_option("--method", fit_method, "exact or mc")
      ->check(CLI::IsMember({"exact", "mc"}));
  fit_cmd->add_option("--samples", fit_samples, "Monte Carlo samples");
  fit_cmd->add_option("--seed", fit_seed, "Monte Carlo seed");
  fit_cmd->add_option("--p", fit_p, "Smoothness order of the observable pair");
  fit_cmd->add_option("--cutoff", fit_cutoff, "Frequency cutoff of the pair");
  fit_cmd->add_option("--workers", fit_workers, "Worker threads (0 = auto)");
  fit_cmd->add_option("--series-out", fit_series_out,
                      "Also write the underlying series CSV here");
  add_output_options(fit_cmd, fit_out, /*with_format=*/false);
  fit_cmd->callback([&] {
    if (fit_n_to < fit_n_from)
      throw CLI::ValidationError("--n-to must be >= --n-from");
    const anosov::IntMatrix t = anosov::build_family_matrix(fit_n_dim);
    const anosov::Observable f = anosov::smooth_family(fit_p, fit_cutoff, fit_n_dim);
    const anosov::Spectrum s = anosov::compute_spectrum(t);
    anosov::CorrelationSeries series;
    series.method = fit_method == "exact" ? anosov::CorrelationMethod::ExactResonance
                                          : anosov::CorrelationMethod::MonteCarlo;
    if (fit_method == "mc") series.sample_count = fit_samples;
    for (std::uint64_t n = fit_n_from; n <= fit_n_to; ++n) {
      series.n_values.push_back(n);
      if (fit_method == "exact") {
        series.d_values.push_back(anosov::exact_correlation(t, f, f, n));
      } else {
        const auto est = anosov::monte_carlo_correlation(t, f, f, n, fit_samples,
                                                         fit_seed, fit_workers);
        series.d_values.push_back(est.estimate);
        series.std_errors.push_back(est.std_error);
      }
    }
    const anosov::DecayFit fit = anosov::fit_decay(series, s, f, f);
    json j = json_config("fit-decay", {{"N", fit_n_dim},
                                       {"n_from", fit_n_from},
                                       {"n_to", fit_n_to},
                                       {"method", fit_method},
                                       {"samples", fit_samples},
                                       {"seed", fit_seed},
                                       {"p", fit_p},
                                       {"cutoff", fit_cutoff},
                                       {"workers", fit_workers}});
    j["fit"] = json::parse(anosov::to_json(fit));
    j["entropy"] = s.entropy;
    write_text(fit_out.output_path, j.dump(2) + "\n");
    if (!fit_series_out.empty())
      write_text(fit_series_out, csv_header("fit-decay-series", "") +
                                     anosov::to_csv(series));
  });

  // --- timescales -------------------------------------------------------  --
  auto* times_cmd = app.add_subcommand(
      "timescales", "Decorrelation, interaction, and stationary-distribution "
                    "time scales");
  std::string times_preset;
  std::size_t times_n = 0;
  int times_p = 1;
  double times_h = 0.0, times_log2 = 0.0;
  CommonOut times_out;
  times_cmd->set_help_flag("--help", "Print this help message and exit");
  times_cmd->add_option("--preset", times_preset,
                        "mixmax240 (N=240, h=8679, log2(1/dv0)=61*240) or "
                        "mixmax256 (N=256, h=194, log2(1/dv0)=61*256)")
      ->check(CLI::IsMember({"mixmax240", "mixmax256"}));
  times_cmd->add_option("--N", times_n, "Dimension");
  times_cmd->add_option("--p", times_p, "Smoothness order");
  times_cmd->add_option("--h", times_h, "Entropy in nats per iteration");
  times_cmd->add_option("--log2-inv-dv0", times_log2, "log2(1/dv0) in bits");
  add_output_options(times_cmd, times_out, /*with_format=*/false);
  times_cmd->callback([&] {
    std::optional<double> reported_tau0, reported_tau;
    if (times_preset == "mixmax240") {
      times_n = 240;
      times_p = 1;
      times_h = 8679.0;
      times_log2 = 61.0 * 240.0;
      reported_tau0 = 0.000004;
      reported_tau = 1.17;
    } else if (times_preset == "mixmax256") {
      times_n = 256;
      times_p = 1;
      times_h = 194.0;
      times_log2 = 61.0 * 256.0;
      reported_tau0 = 0.000012;
      reported_tau = 95.0;
    }
    if (times_n < 2 || !(times_h > 0.0) || !(times_log2 > 0.0))
      throw CLI::ValidationError(
          "either --preset or all of --N/--h/--log2-inv-dv0 are required");
    const anosov::TimeScales ts = anosov::timescale_report(
        times_n, times_p, times_h, times_log2, reported_tau0, reported_tau);
    json j = json_config("timescales", {{"preset", times_preset},
                                        {"N", times_n},
                                        {"p", times_p},
                                        {"h", times_h},
                                        {"log2_inv_dv0", times_log2}});
    j.update(json::parse(anosov::to_json(ts)));
    write_text(times_out.output_path, j.dump(2) + "\n");
  });

  // --- rng --------------------------------------------------------------  --
  auto* rng_cmd = app.add_subcommand(
      "rng", "Stream uniform variates from the matrix-recurrence generator");
  std::size_t rng_n = 256;
  std::uint64_t rng_seed = 1, rng_count = 16;
  std::string rng_format = "dec";
  std::string rng_output;
  rng_cmd->add_option("--N", rng_n, "Generator dimension (>= 2)");
  rng_cmd->add_option("--seed", rng_seed, "Seed value");
  rng_cmd->add_option("--count", rng_count, "Number of values to emit");
  rng_cmd->add_option("--format", rng_format,
                      "dec = decimal doubles, raw = little-endian 64-bit words")
      ->check(CLI::IsMember({"dec", "raw"}));
  rng_cmd->add_option("-o,--output", rng_output, "Output file (default stdout)");
  rng_cmd->callback([&] {
    anosov::GeneratorState gen(rng_n, rng_seed);
    std::ostringstream cfg;
    cfg << "N=" << rng_n << " seed=" << rng_seed << " count=" << rng_count
        << " format=" << rng_format;
    if (rng_format == "dec") {
      std::string text = csv_header("rng", cfg.str());
      char buf[48];
      for (std::uint64_t i = 0; i < rng_count; ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", gen.next_double());
        text += buf;
      }
      write_text(rng_output, text);
    } else {
      // Binary stream: the header goes to stderr to keep the payload pure.
      std::cerr << csv_header("rng", cfg.str());
      std::string bytes;
      bytes.reserve(rng_count * 8);
      for (std::uint64_t i = 0; i < rng_count; ++i) {
        gen.next_double();
        const std::uint64_t w = gen.state()[(gen.counter() - 1) % gen.dim()];
        for (int b = 0; b < 8; ++b)
          bytes.push_back(static_cast<char>((w >> (8 * b)) & 0xFF));
      }
      write_text(rng_output, bytes);
    }
  });

  // --- selftest -----------------------------------------------------------
  auto* selftest_cmd = app.add_subcommand(
      "selftest", "Built-in statistical checks of the generator stream");
  std::size_t st_n = 256;
  std::uint64_t st_seed = 1, st_samples = 1000000;
  CommonOut st_out;
  selftest_cmd->add_option("--N", st_n, "Generator dimension (>= 2)");
  selftest_cmd->add_option("--seed", st_seed, "Seed value");
  selftest_cmd->add_option("--samples", st_samples, "Stream length (>= 1e5)");
  add_output_options(selftest_cmd, st_out, /*with_format=*/false);
  int selftest_status = 0;
  selftest_cmd->callback([&] {
    anosov::GeneratorState gen(st_n, st_seed);
    const anosov::SelfTestReport report = anosov::rng_self_test(gen, st_samples);
    json j = json_config("selftest",
                         {{"N", st_n}, {"seed", st_seed}, {"samples", st_samples}});
    j.update(json::parse(anosov::to_json(report)));
    write_text(st_out.output_path, j.dump(2) + "\n");
    if (!report.pass) selftest_status = 3;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
      return app.exit(e);  // --help and friends
    json err;
    err["error"] = "invalid arguments";
    err["detail"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return selftest_status;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    json err;
    err["error"] = "runtime failure";
    err["detail"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }
}
