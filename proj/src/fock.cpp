#include "cavitydyn/fock.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace cavitydyn {

StateVector::StateVector(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) {
    throw std::invalid_argument("StateVector: empty amplitude vector");
  }
  if (!amps_.allFinite()) {
    throw std::invalid_argument("StateVector: non-finite amplitude");
  }
  const double norm = amps_.norm();
  if (norm <= 0.0) {
    throw std::domain_error("StateVector: zero amplitude vector");
  }
  amps_ /= norm;
}

DensityMatrix::DensityMatrix(ComplexMatrix elements) : elements_(std::move(elements)) {
  if (elements_.rows() != elements_.cols() || elements_.rows() == 0) {
    throw std::invalid_argument("DensityMatrix: matrix must be square and nonempty");
  }
  if (!elements_.allFinite()) {
    throw std::invalid_argument("DensityMatrix: non-finite element");
  }
  const double herm = (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-12");
  }
  const Complex tr = elements_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace differs from one beyond 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(elements_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < kEigenvalueFloor) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond slack");
  }
}

StateVector make_superposition(Complex c0, Complex c1, Complex c2, int dim) {
  if (dim < 3) {
    throw std::invalid_argument("make_superposition: dim must be at least 3");
  }
  const double n2 = std::norm(c0) + std::norm(c1) + std::norm(c2);
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw std::domain_error("make_superposition: zero amplitude vector");
  }
  ComplexVector amps = ComplexVector::Zero(dim);
  amps(0) = c0;
  amps(1) = c1;
  amps(2) = c2;
  return StateVector(std::move(amps));
}

DensityMatrix density_from_state(const StateVector& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

Complex expectation(const DensityMatrix& rho, const ComplexMatrix& op) {
  if (op.rows() != rho.dim() || op.cols() != rho.dim()) {
    throw std::invalid_argument("expectation: operator dimension mismatch");
  }
  return (op * rho.elements()).trace();
}

ComplexMatrix lowering_operator(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("lowering_operator: dim must be positive");
  }
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

ComplexMatrix raising_operator(int dim) {
  return lowering_operator(dim).adjoint();
}

ComplexMatrix number_operator(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("number_operator: dim must be positive");
  }
  ComplexMatrix n = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    n(k, k) = static_cast<double>(k);
  }
  return n;
}

namespace {

// C(n, k) exactly in 64-bit integers; safe for n <= 20 and a fair way past.
std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

double binomial_double(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (int i = 1; i <= k; ++i) {
    result *= static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return result;
}

}  // namespace

double laguerre_assoc(int n, int j, double x) {
  if (n < 0 || j < 0) {
    throw std::invalid_argument("laguerre_assoc: indices must be nonnegative");
  }
  const bool exact = (n + j) <= 20;
  long double sum = 0.0L;
  long double x_pow_over_kfact = 1.0L;  // x^k / k!
  for (int k = 0; k <= n; ++k) {
    const long double coeff = exact
        ? static_cast<long double>(binomial_u64(n + j, n - k))
        : static_cast<long double>(binomial_double(n + j, n - k));
    const long double term = coeff * x_pow_over_kfact;
    sum += (k % 2 == 0) ? term : -term;
    x_pow_over_kfact *= static_cast<long double>(x) / static_cast<long double>(k + 1);
  }
  return static_cast<double>(sum);
}

}  // namespace cavitydyn
