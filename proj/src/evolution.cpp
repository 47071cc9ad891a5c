#include "cavitydyn/evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace cavitydyn {

DecayParams::DecayParams(double kappa_in) : kappa(kappa_in) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("DecayParams: kappa must be positive and finite");
  }
}

namespace {

// -(n rho + rho n - 2 a rho a^dag) written out element-wise; equals the
// loss generator at kappa = 1 in the dimensionless time kappa*t.
ComplexMatrix loss_generator(const ComplexMatrix& rho) {
  const int dim = static_cast<int>(rho.rows());
  ComplexMatrix out(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      out(i, j) = -static_cast<double>(i + j) * rho(i, j);
      if (i + 1 < dim && j + 1 < dim) {
        out(i, j) += 2.0 * std::sqrt(static_cast<double>((i + 1) * (j + 1))) *
                     rho(i + 1, j + 1);
      }
    }
  }
  return out;
}

ComplexMatrix rk4_integrate(ComplexMatrix rho, double duration, double step) {
  if (duration <= 0.0) return rho;
  const int n_steps = static_cast<int>(std::ceil(duration / step - 1e-12));
  const double h = duration / n_steps;
  for (int s = 0; s < n_steps; ++s) {
    const ComplexMatrix k1 = loss_generator(rho);
    const ComplexMatrix k2 = loss_generator(rho + (0.5 * h) * k1);
    const ComplexMatrix k3 = loss_generator(rho + (0.5 * h) * k2);
    const ComplexMatrix k4 = loss_generator(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

}  // namespace

ComplexMatrix lindblad_rhs(const DensityMatrix& rho, double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("lindblad_rhs: kappa must be positive and finite");
  }
  return kappa * loss_generator(rho.elements());
}

ComplexMatrix lindblad_rhs(const DensityMatrix& rho, const DecayParams& params) {
  return lindblad_rhs(rho, params.kappa);
}

DensityMatrix evolve_rk4(const DensityMatrix& rho0, double kappa_t_final, double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("evolve_rk4: step must be positive");
  }
  if (kappa_t_final < 0.0) {
    throw std::invalid_argument("evolve_rk4: kappa_t_final must be nonnegative");
  }
  return DensityMatrix(rk4_integrate(rho0.elements(), kappa_t_final, step));
}

Trajectory evolve_trajectory(const DensityMatrix& rho0,
                             const std::vector<double>& kappa_t_samples,
                             double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("evolve_trajectory: step must be positive");
  }
  if (kappa_t_samples.empty()) {
    throw std::invalid_argument("evolve_trajectory: empty sample list");
  }
  double prev = 0.0;
  for (double t : kappa_t_samples) {
    if (!(t >= prev) || !std::isfinite(t)) {
      throw std::invalid_argument(
          "evolve_trajectory: samples must be ascending and nonnegative");
    }
    prev = t;
  }

  Trajectory traj;
  traj.times = kappa_t_samples;
  traj.states.reserve(kappa_t_samples.size());
  ComplexMatrix current = rho0.elements();
  double t_now = 0.0;
  for (double t : kappa_t_samples) {
    current = rk4_integrate(std::move(current), t - t_now, step);
    t_now = t;
    traj.states.emplace_back(current);
  }
  return traj;
}

std::array<double, 3> diagonals_analytic(const std::array<double, 3>& initial,
                                         double kappa_t) {
  for (double p : initial) {
    if (p < 0.0 || !std::isfinite(p)) {
      throw std::invalid_argument("diagonals_analytic: populations must be nonnegative");
    }
  }
  if (std::abs(initial[0] + initial[1] + initial[2] - 1.0) > 1e-10) {
    throw std::invalid_argument("diagonals_analytic: populations must sum to one");
  }
  if (kappa_t < 0.0) {
    throw std::invalid_argument("diagonals_analytic: kappa_t must be nonnegative");
  }
  const double e2 = std::exp(-2.0 * kappa_t);
  const double e4 = std::exp(-4.0 * kappa_t);
  const double p1 = (initial[1] + 2.0 * initial[2]) * e2 - 2.0 * initial[2] * e4;
  const double p2 = initial[2] * e4;
  return {1.0 - p1 - p2, p1, p2};
}

}  // namespace cavitydyn
