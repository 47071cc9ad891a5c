#include "cavitydyn/correlations.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cavitydyn {

namespace {

void require_nonnegative_time(double kappa_t, const char* who) {
  if (kappa_t < 0.0 || !std::isfinite(kappa_t)) {
    throw std::invalid_argument(std::string(who) + ": kappa_t must be nonnegative");
  }
}

}  // namespace

double mean_photon_closed(const InitialStateParams& params, double kappa_t) {
  require_nonnegative_time(kappa_t, "mean_photon_closed");
  const double u = std::exp(-2.0 * kappa_t);
  const double c1sq = params.mod_c1 * params.mod_c1;
  const double c2sq = params.mod_c2 * params.mod_c2;
  return 4.0 * c2sq * u * u + 2.0 * c2sq * u * (1.0 - 2.0 * u) + c1sq * u;
}

double second_factorial_moment_closed(const InitialStateParams& params,
                                      double kappa_t) {
  require_nonnegative_time(kappa_t, "second_factorial_moment_closed");
  const double u = std::exp(-2.0 * kappa_t);
  return 2.0 * params.mod_c2 * params.mod_c2 * u * u;
}

double g2_closed(const InitialStateParams& params, double kappa_t) {
  const double mean = mean_photon_closed(params, kappa_t);
  if (mean <= kVacuumMeanThreshold) {
    throw std::domain_error("g2_closed: undefined at vacuum");
  }
  return second_factorial_moment_closed(params, kappa_t) / (mean * mean);
}

double g2_from_rho(const DensityMatrix& rho) {
  double mean = 0.0;
  double m2 = 0.0;
  for (int n = 0; n < rho.dim(); ++n) {
    const double p = rho.population(n);
    mean += n * p;
    m2 += static_cast<double>(n) * (n - 1) * p;
  }
  if (mean <= kVacuumMeanThreshold) {
    throw std::domain_error("g2_from_rho: undefined at vacuum");
  }
  return m2 / (mean * mean);
}

double g2_antinormal_closed(const InitialStateParams& params, double kappa_t) {
  require_nonnegative_time(kappa_t, "g2_antinormal_closed");
  const double u = std::exp(-2.0 * kappa_t);
  const double c1sq = params.mod_c1 * params.mod_c1;
  const double c2sq = params.mod_c2 * params.mod_c2;
  const double numerator = 4.0 * c1sq * u + 8.0 * c2sq * u + 2.0 * c2sq * u * u + 2.0;
  const double root = c1sq * u + 2.0 * c2sq * u + 1.0;
  return numerator / (root * root);
}

double g2_antinormal_from_rho(const DensityMatrix& rho) {
  double mean = 0.0;
  double m2 = 0.0;
  for (int n = 0; n < rho.dim(); ++n) {
    const double p = rho.population(n);
    mean += n * p;
    m2 += static_cast<double>(n) * (n - 1) * p;
  }
  const double root = mean + 1.0;
  return (m2 + 4.0 * mean + 2.0) / (root * root);
}

WignerMoments moments_from_wigner(const WignerGrid& grid) {
  if (grid.x_min > -4.0 || grid.x_max < 4.0 || grid.p_min > -4.0 ||
      grid.p_max < 4.0) {
    throw std::invalid_argument("moments_from_wigner: grid must cover |alpha| <= 4");
  }
  if (grid.nx < 101 || grid.np < 101) {
    throw std::invalid_argument(
        "moments_from_wigner: need at least 101 samples per axis");
  }
  const double hx = (grid.x_max - grid.x_min) / (grid.nx - 1);
  const double hp = (grid.p_max - grid.p_min) / (grid.np - 1);
  double mean = 0.0;
  double m2 = 0.0;
  for (int ix = 0; ix < grid.nx; ++ix) {
    const double x = grid.x_at(ix);
    const double wx = (ix == 0 || ix == grid.nx - 1) ? 0.5 : 1.0;
    for (int ip = 0; ip < grid.np; ++ip) {
      const double p = grid.p_at(ip);
      const double wp = (ip == 0 || ip == grid.np - 1) ? 0.5 : 1.0;
      const double r2 = x * x + p * p;
      const double w = wx * wp * grid.values(ix, ip);
      mean += w * (r2 - 0.5);
      m2 += w * (0.5 - 2.0 * r2 + r2 * r2);
    }
  }
  return WignerMoments{mean * hx * hp, m2 * hx * hp};
}

std::vector<CorrelationSample> correlation_sweep(
    const InitialStateParams& params,
    const std::vector<double>& kappa_t_samples) {
  for (double t : kappa_t_samples) {
    require_nonnegative_time(t, "correlation_sweep");
  }
  std::vector<CorrelationSample> out;
  out.reserve(kappa_t_samples.size());
  for (double t : kappa_t_samples) {
    CorrelationSample sample;
    sample.kappa_t = t;
    sample.mean_n = mean_photon_closed(params, t);
    sample.second_factorial_moment = second_factorial_moment_closed(params, t);
    sample.g2 = (sample.mean_n <= kVacuumMeanThreshold)
                    ? std::numeric_limits<double>::quiet_NaN()
                    : sample.second_factorial_moment / (sample.mean_n * sample.mean_n);
    sample.g2a = g2_antinormal_closed(params, t);
    out.push_back(sample);
  }
  return out;
}

}  // namespace cavitydyn
