#pragma once

#include <array>
#include <vector>

#include "cavitydyn/fock.hpp"

namespace cavitydyn {

inline constexpr double kDefaultRk4Step = 1e-3;

// Cavity loss coefficient (inverse time). Public interfaces work in the
// dimensionless product kappa*t; kappa itself only sets the scale of the
// master-equation right-hand side.
struct DecayParams {
  double kappa;

  explicit DecayParams(double kappa_in);
};

// Sampled solution of the loss master equation at ascending kappa*t values.
struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

// Right-hand side of the zero-temperature loss master equation,
//   d(rho)/dt = -kappa (a^dag a rho + rho a^dag a - 2 a rho a^dag).
// The result is traceless and Hermitian to machine precision.
ComplexMatrix lindblad_rhs(const DensityMatrix& rho, double kappa);
ComplexMatrix lindblad_rhs(const DensityMatrix& rho, const DecayParams& params);

// Classical fixed-step RK4 in the dimensionless time kappa*t.
DensityMatrix evolve_rk4(const DensityMatrix& rho0, double kappa_t_final,
                         double step = kDefaultRk4Step);

// One continuous integration pass sampled at the requested kappa*t values
// (no restart between samples). Samples must be ascending and nonnegative.
Trajectory evolve_trajectory(const DensityMatrix& rho0,
                             const std::vector<double>& kappa_t_samples,
                             double step = kDefaultRk4Step);

// Closed-form diagonal populations for initial states supported on n <= 2:
//   p2(t) = p2(0) e^{-4 kt}
//   p1(t) = [p1(0) + 2 p2(0)] e^{-2 kt} - 2 p2(0) e^{-4 kt}
//   p0(t) = 1 - p1(t) - p2(t)
// Input entries must be nonnegative and sum to one within 1e-10.
std::array<double, 3> diagonals_analytic(const std::array<double, 3>& initial,
                                         double kappa_t);

}  // namespace cavitydyn
