#include "cavitydyn/wigner.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cavitydyn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

}  // namespace

PhasePoint::PhasePoint(Complex a) : alpha(a) {
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
    throw std::invalid_argument("PhasePoint: coordinate must be finite");
  }
}

PhasePoint PhasePoint::from_polar(double radius, double theta) {
  return PhasePoint(std::polar(radius, theta));
}

InitialStateParams::InitialStateParams(double mod_c0_in, double mod_c1_in,
                                       double mod_c2_in, double phi_in,
                                       double varphi_in)
    : mod_c0(mod_c0_in), mod_c1(mod_c1_in), mod_c2(mod_c2_in),
      phi(phi_in), varphi(varphi_in) {
  if (mod_c0 < 0.0 || mod_c1 < 0.0 || mod_c2 < 0.0) {
    throw std::invalid_argument("InitialStateParams: moduli must be nonnegative");
  }
  if (!std::isfinite(phi) || !std::isfinite(varphi)) {
    throw std::invalid_argument("InitialStateParams: phases must be finite");
  }
  const double n2 = mod_c0 * mod_c0 + mod_c1 * mod_c1 + mod_c2 * mod_c2;
  if (std::abs(n2 - 1.0) > kNormTol) {
    throw std::invalid_argument("InitialStateParams: moduli must be normalized");
  }
}

InitialStateParams InitialStateParams::from_c1_c2(double mod_c1, double mod_c2,
                                                  double phi, double varphi) {
  const double rest = 1.0 - mod_c1 * mod_c1 - mod_c2 * mod_c2;
  if (rest < -kNormTol) {
    throw std::invalid_argument("InitialStateParams: |c1|^2 + |c2|^2 exceeds one");
  }
  return InitialStateParams(std::sqrt(std::max(rest, 0.0)), mod_c1, mod_c2,
                            phi, varphi);
}

StateVector InitialStateParams::to_state(int dim) const {
  return make_superposition(std::polar(mod_c0, phi), Complex(mod_c1, 0.0),
                            std::polar(mod_c2, varphi), dim);
}

namespace {

// 1 / sqrt(n! / m!) for n >= m, as a running product.
double inv_sqrt_factorial_ratio(int m, int n) {
  double prod = 1.0;
  for (int k = m + 1; k <= n; ++k) {
    prod *= static_cast<double>(k);
  }
  return 1.0 / std::sqrt(prod);
}

}  // namespace

double wigner_from_rho(const DensityMatrix& rho, const PhasePoint& point) {
  const ComplexMatrix& m = rho.elements();
  const int dim = rho.dim();
  const double abs2 = std::norm(point.alpha);
  const double big_x = 4.0 * abs2;
  const double envelope = std::exp(-2.0 * abs2);
  const Complex two_alpha = 2.0 * point.alpha;

  Complex acc(0.0, 0.0);
  for (int n = 0; n < dim; ++n) {
    const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
    acc += m(n, n) * sign_n * laguerre_assoc(n, 0, big_x);
    Complex power(1.0, 0.0);  // (2 alpha)^(n - mm)
    for (int mm = n - 1; mm >= 0; --mm) {
      power *= two_alpha;
      const double sign_m = (mm % 2 == 0) ? 1.0 : -1.0;
      const Complex kernel = sign_m * inv_sqrt_factorial_ratio(mm, n) * power *
                             laguerre_assoc(mm, n - mm, big_x);
      acc += kernel * m(mm, n) + std::conj(kernel) * m(n, mm);
    }
  }
  acc *= (2.0 / kPi) * envelope;
  if (std::abs(acc.imag()) > 1e-10) {
    throw std::runtime_error("wigner_from_rho: imaginary residue above 1e-10");
  }
  return acc.real();
}

double wigner_initial_closed(const InitialStateParams& params,
                             const PhasePoint& point) {
  const double r = point.radius();
  const double theta = point.angle();
  const double big_x = 4.0 * r * r;
  const double envelope = std::exp(-2.0 * r * r);

  double w = (2.0 / kPi) * envelope *
             (params.mod_c0 * params.mod_c0 -
              params.mod_c1 * params.mod_c1 * laguerre_assoc(1, 0, big_x) +
              params.mod_c2 * params.mod_c2 * laguerre_assoc(2, 0, big_x));
  w += (8.0 * kSqrt2 / kPi) * envelope * params.mod_c0 * params.mod_c2 * r * r *
       std::cos(2.0 * theta - params.varphi + params.phi);
  w -= (4.0 * kSqrt2 / kPi) * envelope * params.mod_c1 * params.mod_c2 * r *
       std::cos(theta - params.varphi) * laguerre_assoc(1, 1, big_x);
  w += (8.0 / kPi) * envelope * params.mod_c0 * params.mod_c1 * r *
       std::cos(theta + params.phi);
  return w;
}

double wigner_evolved_closed(const InitialStateParams& params, double kappa_t,
                             const PhasePoint& point) {
  if (kappa_t < 0.0 || !std::isfinite(kappa_t)) {
    throw std::domain_error("wigner_evolved_closed: kappa_t must be nonnegative");
  }
  const double u = std::exp(-2.0 * kappa_t);
  const double s = std::exp(-kappa_t);
  const double r = point.radius();
  const double theta = point.angle();
  const double big_x = 4.0 * r * r;
  const double envelope = std::exp(-2.0 * r * r);

  // Diagonal Laguerre factors (2u-1)^k L_k^0[-u X / (1-2u)] expanded in
  // powers of u; the expansion is polynomial, so u = 1/2 is regular.
  const double f1 = 1.0 - 2.0 * u + u * big_x;
  const double f2 = (1.0 - 2.0 * u) * (1.0 - 2.0 * u) +
                    2.0 * u * big_x * (1.0 - 2.0 * u) +
                    0.5 * u * u * big_x * big_x;

  double w = (2.0 / kPi) * envelope *
             (params.mod_c0 * params.mod_c0 +
              params.mod_c1 * params.mod_c1 * f1 +
              params.mod_c2 * params.mod_c2 * f2);
  w += (8.0 * kSqrt2 / kPi) * envelope * u * params.mod_c0 * params.mod_c2 *
       r * r * std::cos(2.0 * theta - params.varphi + params.phi);
  w += (8.0 / kPi) * envelope * s * params.mod_c0 * params.mod_c1 * r *
       std::cos(theta + params.phi);
  w += (8.0 * kSqrt2 / kPi) * envelope * s * params.mod_c1 * params.mod_c2 * r *
       std::cos(theta - params.varphi) * (2.0 * (r * r - 1.0) * u + 1.0);
  return w;
}

namespace {

struct QuadratureRule {
  RealVector nodes;
  RealVector weights;
};

// Gauss-Legendre nodes and weights on [a, b] by Newton iteration on the
// Legendre recurrence.
QuadratureRule gauss_legendre(int order, double a, double b) {
  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  const double mid = 0.5 * (a + b);
  const double span = 0.5 * (b - a);
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      dp = order * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.nodes(i) = mid - span * z;
    rule.nodes(order - 1 - i) = mid + span * z;
    rule.weights(i) = 2.0 * span / ((1.0 - z * z) * dp * dp);
    rule.weights(order - 1 - i) = rule.weights(i);
  }
  return rule;
}

}  // namespace

GaussianConvolution::GaussianConvolution(WignerFunction initial,
                                         ConvolutionQuadrature quad)
    : initial_(std::move(initial)), quad_(quad) {
  if (!initial_) {
    throw std::invalid_argument("GaussianConvolution: empty initial function");
  }
  if (quad_.order < 2 || quad_.half_width <= 0.0) {
    throw std::invalid_argument("GaussianConvolution: invalid quadrature rule");
  }
  const QuadratureRule rule =
      gauss_legendre(quad_.order, -quad_.half_width, quad_.half_width);
  base_nodes_ = rule.nodes;
  base_weights_ = rule.weights;
  base_values_.resize(quad_.order, quad_.order);
  for (int i = 0; i < quad_.order; ++i) {
    for (int j = 0; j < quad_.order; ++j) {
      base_values_(i, j) =
          initial_(PhasePoint::from_xy(base_nodes_(i), base_nodes_(j)));
    }
  }
}

double GaussianConvolution::operator()(double kappa_t,
                                       const PhasePoint& point) const {
  if (kappa_t < 0.0 || !std::isfinite(kappa_t)) {
    throw std::domain_error("GaussianConvolution: kappa_t must be nonnegative");
  }
  if (kappa_t == 0.0) {
    // The kernel degenerates to a delta.
    return initial_(point);
  }
  const double u = std::exp(-2.0 * kappa_t);
  const double s = std::exp(-kappa_t);
  const double variance = 1.0 - u;
  const double sigma = std::sqrt(variance) / (2.0 * s);
  const double prefactor = 2.0 / (variance * kPi);

  const auto kernel_weights = [&](const RealVector& nodes, const RealVector& weights,
                                  double center) {
    RealVector k(nodes.size());
    for (int i = 0; i < nodes.size(); ++i) {
      const double d = center - nodes(i) * s;
      k(i) = weights(i) * std::exp(-2.0 * d * d / variance);
    }
    return k;
  };

  if (sigma >= quad_.narrow_sigma) {
    const RealVector kx = kernel_weights(base_nodes_, base_weights_, point.x());
    const RealVector kp = kernel_weights(base_nodes_, base_weights_, point.p());
    return prefactor * kx.dot(base_values_ * kp);
  }

  // Narrow kernel: recenter the rule on the kernel so it stays resolved.
  const auto boxed_rule = [&](double target) -> QuadratureRule {
    const double center = target / s;
    const double lo = std::max(center - quad_.box_sigmas * sigma,
                               -(quad_.half_width + 0.5));
    const double hi = std::min(center + quad_.box_sigmas * sigma,
                               quad_.half_width + 0.5);
    if (lo >= hi) return {};
    return gauss_legendre(quad_.order, lo, hi);
  };
  const QuadratureRule rx = boxed_rule(point.x());
  const QuadratureRule rp = boxed_rule(point.p());
  if (rx.nodes.size() == 0 || rp.nodes.size() == 0) {
    // The kernel sits entirely outside the initial-function support.
    return 0.0;
  }
  RealMatrix values(quad_.order, quad_.order);
  for (int i = 0; i < quad_.order; ++i) {
    for (int j = 0; j < quad_.order; ++j) {
      values(i, j) = initial_(PhasePoint::from_xy(rx.nodes(i), rp.nodes(j)));
    }
  }
  const RealVector kx = kernel_weights(rx.nodes, rx.weights, point.x());
  const RealVector kp = kernel_weights(rp.nodes, rp.weights, point.p());
  return prefactor * kx.dot(values * kp);
}

double wigner_convolution(const WignerFunction& initial, double kappa_t,
                          const PhasePoint& point,
                          const ConvolutionQuadrature& quad) {
  return GaussianConvolution(initial, quad)(kappa_t, point);
}

WignerGrid wigner_grid(const WignerFunction& evaluator, const GridSpec& spec) {
  if (!evaluator) {
    throw std::invalid_argument("wigner_grid: empty evaluator");
  }
  if (!(spec.x_min < spec.x_max) || !(spec.p_min < spec.p_max) ||
      !std::isfinite(spec.x_min) || !std::isfinite(spec.x_max) ||
      !std::isfinite(spec.p_min) || !std::isfinite(spec.p_max)) {
    throw std::invalid_argument("wigner_grid: invalid bounds");
  }
  if (spec.nx < 2 || spec.np < 2) {
    throw std::invalid_argument("wigner_grid: need at least 2 samples per axis");
  }
  WignerGrid grid;
  grid.x_min = spec.x_min;
  grid.x_max = spec.x_max;
  grid.p_min = spec.p_min;
  grid.p_max = spec.p_max;
  grid.nx = spec.nx;
  grid.np = spec.np;
  grid.values.resize(spec.nx, spec.np);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int ix = 0; ix < spec.nx; ++ix) {
    for (int ip = 0; ip < spec.np; ++ip) {
      grid.values(ix, ip) =
          evaluator(PhasePoint::from_xy(grid.x_at(ix), grid.p_at(ip)));
    }
  }
  if (!grid.values.allFinite()) {
    throw std::runtime_error("wigner_grid: non-finite sample");
  }
  return grid;
}

WignerGrid wigner_grid(const DensityMatrix& rho, const GridSpec& spec) {
  return wigner_grid(
      [&rho](const PhasePoint& pt) { return wigner_from_rho(rho, pt); }, spec);
}

WignerGrid wigner_grid(const InitialStateParams& params, double kappa_t,
                       const GridSpec& spec) {
  return wigner_grid(
      [&params, kappa_t](const PhasePoint& pt) {
        return wigner_evolved_closed(params, kappa_t, pt);
      },
      spec);
}

namespace {

double trapezoid_weight(int i, int n) {
  return (i == 0 || i == n - 1) ? 0.5 : 1.0;
}

}  // namespace

double grid_quadrature(const WignerGrid& grid) {
  const double hx = (grid.x_max - grid.x_min) / (grid.nx - 1);
  const double hp = (grid.p_max - grid.p_min) / (grid.np - 1);
  double sum = 0.0;
  for (int ix = 0; ix < grid.nx; ++ix) {
    double row = 0.0;
    for (int ip = 0; ip < grid.np; ++ip) {
      row += trapezoid_weight(ip, grid.np) * grid.values(ix, ip);
    }
    sum += trapezoid_weight(ix, grid.nx) * row;
  }
  return sum * hx * hp;
}

NegativityMetrics negativity_metrics(const WignerGrid& grid) {
  const double hx = (grid.x_max - grid.x_min) / (grid.nx - 1);
  const double hp = (grid.p_max - grid.p_min) / (grid.np - 1);
  double min_value = grid.values(0, 0);
  int min_ix = 0, min_ip = 0;
  double negative_volume = 0.0;
  for (int ix = 0; ix < grid.nx; ++ix) {
    for (int ip = 0; ip < grid.np; ++ip) {
      const double w = grid.values(ix, ip);
      if (w < min_value) {
        min_value = w;
        min_ix = ix;
        min_ip = ip;
      }
      if (w < 0.0) {
        negative_volume -= trapezoid_weight(ix, grid.nx) *
                           trapezoid_weight(ip, grid.np) * w;
      }
    }
  }
  return NegativityMetrics{
      min_value, PhasePoint::from_xy(grid.x_at(min_ix), grid.p_at(min_ip)),
      negative_volume * hx * hp};
}

}  // namespace cavitydyn
