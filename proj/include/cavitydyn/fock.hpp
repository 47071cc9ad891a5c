#pragma once

#include "cavitydyn/types.hpp"

namespace cavitydyn {

inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;

// Normalized pure state over the truncated Fock basis |0>, ..., |dim-1>.
// The constructor rescales to unit norm and rejects the zero vector.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);

  int dim() const { return static_cast<int>(amps_.size()); }
  const ComplexVector& amplitudes() const { return amps_; }
  Complex amplitude(int n) const { return amps_(n); }

 private:
  ComplexVector amps_;
};

// Hermitian, trace-one, positive-semidefinite matrix over the truncated
// Fock basis. The constructor enforces all three invariants (Hermiticity
// within 1e-12, trace within 1e-10, eigenvalues above -1e-10).
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix elements);

  int dim() const { return static_cast<int>(elements_.rows()); }
  const ComplexMatrix& elements() const { return elements_; }
  Complex element(int n, int m) const { return elements_(n, m); }
  // Diagonal occupation probability <n|rho|n>.
  double population(int n) const { return elements_(n, n).real(); }

 private:
  ComplexMatrix elements_;
};

// Normalized superposition (c0, c1, c2, 0, ..., 0) on a dim-level basis.
// Normalization is always applied, so callers may pass unnormalized
// amplitudes verbatim. Requires dim >= 3 and a nonzero input vector.
StateVector make_superposition(Complex c0, Complex c1, Complex c2, int dim);

// Outer product |psi><psi|.
DensityMatrix density_from_state(const StateVector& psi);

// |<a|b>|^2. States are compared this way throughout; global phase is
// never canonicalized.
double fidelity(const StateVector& a, const StateVector& b);

// trace(op * rho). Throws on dimension mismatch.
Complex expectation(const DensityMatrix& rho, const ComplexMatrix& op);

ComplexMatrix lowering_operator(int dim);   // a, with a|n> = sqrt(n)|n-1>
ComplexMatrix raising_operator(int dim);    // a^dagger
ComplexMatrix number_operator(int dim);     // a^dagger a

// Associated Laguerre polynomial L_n^J(x) as the finite sum
//   sum_{k=0}^{n} (-1)^k (n+J)! / [(n-k)! (J+k)!] x^k / k!.
// Coefficients are exact integers for n+J <= 20.
double laguerre_assoc(int n, int j, double x);

}  // namespace cavitydyn
