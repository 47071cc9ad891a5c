#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "cavitydyn/wigner.hpp"

namespace cavitydyn {

enum class AtomLevel { excited = 0, ground = 1 };

// Resonant Jaynes-Cummings rotation convention for the |n,e> <-> |n+1,g>
// blocks: uniform_angle rotates every block by the bare angle g*t, as in
// idealized protocol sketches; photon_scaled applies the sqrt(n+1) ladder
// enhancement of the resonant Hamiltonian.
enum class JcModel { uniform_angle, photon_scaled };

// Joint pure state of the cavity mode and one or two two-level atoms.
// Flat index = n * 2^n_atoms + bits, atom 1 in the most significant bit,
// bit 0 for the excited level. Unit norm within 1e-12.
class AtomCavityState {
 public:
  // |0> cavity with every atom excited.
  AtomCavityState(int cavity_dim, int n_atoms);
  static AtomCavityState from_amplitudes(ComplexVector amplitudes,
                                         int cavity_dim, int n_atoms);

  int cavity_dim() const { return cavity_dim_; }
  int n_atoms() const { return n_atoms_; }
  const ComplexVector& amplitudes() const { return amps_; }

  Complex amplitude(int n, AtomLevel a1) const;
  Complex amplitude(int n, AtomLevel a1, AtomLevel a2) const;

 private:
  AtomCavityState(ComplexVector amps, int cavity_dim, int n_atoms, bool checked);

  ComplexVector amps_;
  int cavity_dim_;
  int n_atoms_;
};

// Resonant Jaynes-Cummings pass of one atom through the cavity for a Rabi
// angle g*t. Rotates each |n, e> <-> |n+1, g> pair of the active atom;
// |0, g> is dark and the top excited level is frozen by the truncation.
AtomCavityState jc_evolve(const AtomCavityState& state, int atom_index,
                          double gt, JcModel model);

// Classical microwave pulse on one atom:
//   |e> -> cos(theta/2)|e> + i e^{-i phi} sin(theta/2)|g>
//   |g> -> cos(theta/2)|g> + i e^{+i phi} sin(theta/2)|e>
AtomCavityState microwave_rotation(const AtomCavityState& state, int atom_index,
                                   double theta, double phi);

// Control knobs of the two-atom preparation: Rabi angles g*t1, g*t2 and the
// microwave pulse angles/phases per atom.
struct PrepParams {
  double gt1;
  double gt2;
  double theta1;
  double theta2;
  double phi1;
  double phi2;

  PrepParams(double gt1_in, double gt2_in, double theta1_in, double theta2_in,
             double phi1_in, double phi2_in);
};

struct PreparationResult {
  StateVector cavity;
  double success_probability;
};

// Thrown when the chosen parameters give the post-selected outcome zero
// probability.
class PostSelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs atom 1 (Jaynes-Cummings pass gt1, then pulse theta1/phi1), atom 2
// (gt2, theta2/phi2), projects both atoms onto the excited level and
// renormalizes. success_probability is the squared norm before
// renormalization.
PreparationResult two_atom_prepare(const PrepParams& params, JcModel model,
                                   int cavity_dim = kDefaultDim);

// Detection probabilities of the four atomic outcomes
// (e,e), (e,g), (g,e), (g,g); they sum to one.
std::array<double, 4> prepare_outcome_probabilities(const PrepParams& params,
                                                    JcModel model,
                                                    int cavity_dim = kDefaultDim);

// Fock dimension used internally for displaced-parity probes. Displacement
// pushes population upward, so the probe space is elevated well past the
// state support; 72 keeps probe probabilities at roundoff accuracy for
// |x|, |p| <= 3.
inline constexpr int kProbeDim = 72;

ComplexMatrix parity_operator(int dim);                      // diag (-1)^n
ComplexMatrix displacement_operator(Complex alpha, int dim); // exp(alpha a^dag - alpha^* a)

// <P> of the state displaced by -alpha, computed on the elevated probe
// space via the matrix exponential of the displacement generator.
double parity_expectation(const DensityMatrix& rho, const PhasePoint& alpha,
                          int probe_dim = kProbeDim);

// Ramsey excited-state detection probability (1/2)[1 + <P> cos(phase)],
// clamped to [0,1] after checking the excursion stays below 1e-9.
double ramsey_probe_probability(const DensityMatrix& rho, const PhasePoint& alpha,
                                double ramsey_phase, int probe_dim = kProbeDim);

// One measured phase-space point. shots = 0 means exact probabilities;
// w_estimate is converted to the integral-normalized convention (division
// by pi relative to the raw parity signal 2[Pe(0) - Pe(pi)]).
struct MeasurementRecord {
  PhasePoint alpha;
  double p_e_phase0;
  double p_e_phase_pi;
  std::uint64_t shots;
  double w_estimate;
};

// With shots > 0, draws one binomial count per Ramsey phase from a
// deterministic generator seeded by the caller; runs are reproducible for a
// fixed seed.
MeasurementRecord measured_wigner(const DensityMatrix& rho, const PhasePoint& alpha,
                                  std::uint64_t shots, std::uint64_t seed,
                                  int probe_dim = kProbeDim);

// True iff Pe(0, alpha) < Pe(pi, alpha), equivalently W(alpha) < 0.
bool negativity_criterion(const DensityMatrix& rho, const PhasePoint& alpha,
                          int probe_dim = kProbeDim);

}  // namespace cavitydyn
