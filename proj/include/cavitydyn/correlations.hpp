#pragma once

#include <vector>

#include "cavitydyn/wigner.hpp"

namespace cavitydyn {

// Below this mean photon number g2 is treated as undefined (the ratio is
// 0/0 at exact vacuum) and reported as NaN / rejected.
inline constexpr double kVacuumMeanThreshold = 1e-12;

// Photon statistics of one trajectory sample. g2 is NaN when the mean
// photon number is below kVacuumMeanThreshold.
struct CorrelationSample {
  double kappa_t = 0.0;
  double g2 = 0.0;
  double g2a = 0.0;
  double mean_n = 0.0;
  double second_factorial_moment = 0.0;
};

// <a^dag a>(t). Evaluated as the full four-term expression
//   4|c2|^2 e^{-4kt} + 2|c2|^2 e^{-2kt}[1 - 2e^{-2kt}] + |c1|^2 e^{-2kt},
// which simplifies algebraically to (|c1|^2 + 2|c2|^2) e^{-2kt}.
double mean_photon_closed(const InitialStateParams& params, double kappa_t);

// <a^dag^2 a^2>(t) = 2|c2|^2 e^{-4kt}.
double second_factorial_moment_closed(const InitialStateParams& params,
                                      double kappa_t);

// Normal-ordered g2(0) at scaled time kappa*t, computed as the
// time-dependent ratio of the two moments above (never short-circuited to
// the t = 0 constant). Throws at vacuum.
double g2_closed(const InitialStateParams& params, double kappa_t);

// g2(0) from the Fock-diagonal sums sum n(n-1) rho_nn / [sum n rho_nn]^2.
double g2_from_rho(const DensityMatrix& rho);

// Anti-normal-ordered g2A(0) in closed form. Well defined at vacuum; tends
// to 2 as kappa*t grows.
double g2_antinormal_closed(const InitialStateParams& params, double kappa_t);

// g2A(0) = [<a^dag^2 a^2> + 4<a^dag a> + 2] / [<a^dag a> + 1]^2 by traces.
double g2_antinormal_from_rho(const DensityMatrix& rho);

struct WignerMoments {
  double mean_n;
  double second_factorial_moment;
};

// Phase-space moments from the symmetric-ordered symbols: |alpha|^2 - 1/2
// for the photon number and 1/2 - 2|alpha|^2 + |alpha|^4 for the second
// factorial moment. The grid must cover |alpha| <= 4 with at least 101
// samples per axis.
WignerMoments moments_from_wigner(const WignerGrid& grid);

// Closed-form sweep over the requested kappa*t values.
std::vector<CorrelationSample> correlation_sweep(
    const InitialStateParams& params, const std::vector<double>& kappa_t_samples);

}  // namespace cavitydyn
