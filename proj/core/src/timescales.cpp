#include "anosov/timescales.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace anosov {

namespace {

std::string short_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

double decorrelation_time(double h, double nu) {
  if (!(h > 0.0) || !(nu > 0.0))
    throw std::invalid_argument("decorrelation_time requires h > 0 and nu > 0");
  return 1.0 / (h * nu);
}

double decorrelation_time_family(std::size_t n, int p) {
  if (n < 2 || p < 1)
    throw std::invalid_argument("decorrelation_time_family requires N >= 2, p >= 1");
  const double dn = static_cast<double>(n);
  return std::numbers::pi / (4.0 * p * dn * dn);
}

double stationary_time(double h, double log2_inv_dv0) {
  if (!(h > 0.0)) throw std::invalid_argument("stationary_time requires h > 0");
  return log2_inv_dv0 * std::numbers::ln2 / h;
}

double variance_bound(double c, double h, double nu) {
  if (c < 0.0) throw std::invalid_argument("variance_bound requires C >= 0");
  const double hnu = h * nu;
  if (!(hnu > 0.0))
    throw std::domain_error("variance_bound diverges when h*nu is not positive");
  const double e = std::exp(-hnu);
  return 4.0 * c * (1.0 + e) / (1.0 - e);
}

TimeScales timescale_report(std::size_t n, int p, double h, double log2_inv_dv0,
                            std::optional<double> reported_tau0,
                            std::optional<double> reported_tau) {
  TimeScales ts;
  ts.inputs.h = h;
  ts.inputs.p = p;
  ts.inputs.N = n;
  ts.inputs.nu = 2.0 * p * static_cast<double>(n);
  ts.inputs.log2_inv_dv0 = log2_inv_dv0;
  ts.decorrelation_tau0 = decorrelation_time(h, ts.inputs.nu);
  ts.decorrelation_tau0_family = decorrelation_time_family(n, p);
  ts.interaction_t = 1.0;
  ts.stationary_tau = stationary_time(h, log2_inv_dv0);
  ts.ordered = ts.decorrelation_tau0 < 1.0 && 1.0 < ts.stationary_tau;

  auto far = [](double a, double b) { return std::fabs(a - b) > 0.05 * std::fabs(b); };
  if (reported_tau0 && far(ts.decorrelation_tau0, *reported_tau0) &&
      far(ts.decorrelation_tau0_family, *reported_tau0)) {
    ts.discrepancies.push_back(
        "reported tau0=" + short_num(*reported_tau0) + " differs from 1/(h*nu)=" +
        short_num(ts.decorrelation_tau0) + " and pi/(4pN^2)=" +
        short_num(ts.decorrelation_tau0_family));
  }
  if (reported_tau && far(ts.stationary_tau, *reported_tau)) {
    ts.discrepancies.push_back("reported tau=" + short_num(*reported_tau) +
                               " differs from ln(1/dv0)/h=" +
                               short_num(ts.stationary_tau));
  }
  if (!ts.ordered) {
    ts.discrepancies.push_back("time-scale ordering tau0 < 1 < tau does not hold");
  }
  return ts;
}

std::string to_json(const TimeScales& ts) {
  nlohmann::json j;
  j["tau0_exact"] = ts.decorrelation_tau0;
  j["tau0_family"] = ts.decorrelation_tau0_family;
  j["t_int"] = ts.interaction_t;
  j["tau"] = ts.stationary_tau;
  j["inputs"] = {{"h", ts.inputs.h},
                 {"nu", ts.inputs.nu},
                 {"p", ts.inputs.p},
                 {"N", ts.inputs.N},
                 {"log2_inv_dv0", ts.inputs.log2_inv_dv0}};
  j["ordering_holds"] = ts.ordered;
  j["discrepancies"] = ts.discrepancies;
  return j.dump();
}

}  // namespace anosov
