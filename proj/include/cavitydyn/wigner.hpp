#pragma once

#include <functional>

#include "cavitydyn/evolution.hpp"

namespace cavitydyn {

// One phase-space coordinate alpha = x + i p, with cartesian and polar views.
struct PhasePoint {
  Complex alpha;

  explicit PhasePoint(Complex a);
  static PhasePoint from_xy(double x, double p) { return PhasePoint(Complex(x, p)); }
  static PhasePoint from_polar(double radius, double theta);

  double x() const { return alpha.real(); }
  double p() const { return alpha.imag(); }
  double radius() const { return std::abs(alpha); }
  double angle() const { return std::arg(alpha); }
};

// Moduli and phases of a three-component superposition: c0 carries phase
// phi, c1 is real and nonnegative, c2 carries phase varphi. The moduli must
// be normalized, |c0|^2 + |c1|^2 + |c2|^2 = 1 within 1e-12.
struct InitialStateParams {
  double mod_c0;
  double mod_c1;
  double mod_c2;
  double phi;
  double varphi;

  InitialStateParams(double mod_c0_in, double mod_c1_in, double mod_c2_in,
                     double phi_in, double varphi_in);

  // Derives mod_c0 from the other two moduli.
  static InitialStateParams from_c1_c2(double mod_c1, double mod_c2,
                                       double phi, double varphi);

  StateVector to_state(int dim = kDefaultDim) const;
};

struct GridSpec {
  double x_min = -3.0;
  double x_max = 3.0;
  double p_min = -3.0;
  double p_max = 3.0;
  int nx = 101;
  int np = 101;
};

// Real Wigner samples over a rectangular (x, p) lattice, normalized so that
// the integral of W over the plane is one. values(ix, ip) is the sample at
// (x_at(ix), p_at(ip)).
struct WignerGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  double p_min = 0.0;
  double p_max = 0.0;
  int nx = 0;
  int np = 0;
  RealMatrix values;

  double x_at(int ix) const { return x_min + ix * (x_max - x_min) / (nx - 1); }
  double p_at(int ip) const { return p_min + ip * (p_max - p_min) / (np - 1); }
};

// Fock-representation sum over the density-matrix elements against the
// displaced-parity kernel. Valid for any density matrix on the truncated
// basis; the imaginary residue is checked to stay below 1e-10 and dropped.
double wigner_from_rho(const DensityMatrix& rho, const PhasePoint& point);

// Closed form for the initial three-component superposition.
double wigner_initial_closed(const InitialStateParams& params,
                             const PhasePoint& point);

// Closed form for the dissipated superposition at scaled time kappa*t.
double wigner_evolved_closed(const InitialStateParams& params, double kappa_t,
                             const PhasePoint& point);

using WignerFunction = std::function<double(const PhasePoint&)>;

// Quadrature controls for the Gaussian-convolution propagator. The kernel
// standard deviation per axis is sigma = sqrt(1-e^{-2kt})/(2 e^{-kt}); once
// it drops below narrow_sigma the nodes are recentered on the kernel so the
// rule keeps resolving it.
struct ConvolutionQuadrature {
  int order = 80;
  double half_width = 5.0;
  double narrow_sigma = 0.3;
  double box_sigmas = 8.5;
};

// Evaluates the dissipated Wigner function as the Gaussian convolution of
// the initial one. Caches the initial-function samples on the wide-kernel
// node grid, so repeated evaluation against one initial function is cheap.
class GaussianConvolution {
 public:
  explicit GaussianConvolution(WignerFunction initial,
                               ConvolutionQuadrature quad = {});

  double operator()(double kappa_t, const PhasePoint& point) const;

 private:
  WignerFunction initial_;
  ConvolutionQuadrature quad_;
  RealVector base_nodes_;
  RealVector base_weights_;
  RealMatrix base_values_;
};

// One-shot convenience wrapper around GaussianConvolution.
double wigner_convolution(const WignerFunction& initial, double kappa_t,
                          const PhasePoint& point,
                          const ConvolutionQuadrature& quad = {});

WignerGrid wigner_grid(const WignerFunction& evaluator, const GridSpec& spec);
WignerGrid wigner_grid(const DensityMatrix& rho, const GridSpec& spec);
WignerGrid wigner_grid(const InitialStateParams& params, double kappa_t,
                       const GridSpec& spec);

// Trapezoidal lattice quadrature of the samples over the grid bounds.
double grid_quadrature(const WignerGrid& grid);

struct NegativityMetrics {
  double min_value;
  PhasePoint min_location;
  double negative_volume;
};

// Minimum sample, its location, and the quadrature of max(-W, 0).
NegativityMetrics negativity_metrics(const WignerGrid& grid);

}  // namespace cavitydyn
