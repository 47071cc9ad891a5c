#include "cavitydyn/qed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace cavitydyn {

namespace {

constexpr double kPi = std::numbers::pi;

int atom_bit(int n_atoms, int atom_index) { return n_atoms - 1 - atom_index; }

void check_atom_index(const AtomCavityState& state, int atom_index) {
  if (atom_index < 0 || atom_index >= state.n_atoms()) {
    throw std::invalid_argument("atom index out of range");
  }
}

}  // namespace

AtomCavityState::AtomCavityState(ComplexVector amps, int cavity_dim, int n_atoms,
                                 bool /*checked*/)
    : amps_(std::move(amps)), cavity_dim_(cavity_dim), n_atoms_(n_atoms) {}

AtomCavityState::AtomCavityState(int cavity_dim, int n_atoms) {
  if (cavity_dim < 1) {
    throw std::invalid_argument("AtomCavityState: cavity_dim must be positive");
  }
  if (n_atoms != 1 && n_atoms != 2) {
    throw std::invalid_argument("AtomCavityState: n_atoms must be 1 or 2");
  }
  cavity_dim_ = cavity_dim;
  n_atoms_ = n_atoms;
  amps_ = ComplexVector::Zero(cavity_dim << n_atoms);
  amps_(0) = 1.0;  // |0, e, ...>
}

AtomCavityState AtomCavityState::from_amplitudes(ComplexVector amplitudes,
                                                 int cavity_dim, int n_atoms) {
  if (n_atoms != 1 && n_atoms != 2) {
    throw std::invalid_argument("AtomCavityState: n_atoms must be 1 or 2");
  }
  if (cavity_dim < 1 || amplitudes.size() != (cavity_dim << n_atoms)) {
    throw std::invalid_argument("AtomCavityState: amplitude length mismatch");
  }
  if (std::abs(amplitudes.squaredNorm() - 1.0) > kNormTol) {
    throw std::invalid_argument("AtomCavityState: amplitudes must be unit norm");
  }
  return AtomCavityState(std::move(amplitudes), cavity_dim, n_atoms, true);
}

Complex AtomCavityState::amplitude(int n, AtomLevel a1) const {
  if (n_atoms_ != 1) {
    throw std::invalid_argument("AtomCavityState: single-atom accessor on two-atom state");
  }
  return amps_(n * 2 + static_cast<int>(a1));
}

Complex AtomCavityState::amplitude(int n, AtomLevel a1, AtomLevel a2) const {
  if (n_atoms_ != 2) {
    throw std::invalid_argument("AtomCavityState: two-atom accessor on single-atom state");
  }
  return amps_(n * 4 + static_cast<int>(a1) * 2 + static_cast<int>(a2));
}

AtomCavityState jc_evolve(const AtomCavityState& state, int atom_index,
                          double gt, JcModel model) {
  check_atom_index(state, atom_index);
  if (!std::isfinite(gt)) {
    throw std::invalid_argument("jc_evolve: gt must be finite");
  }
  const int n_atoms = state.n_atoms();
  const int bit = atom_bit(n_atoms, atom_index);
  const int patterns = 1 << n_atoms;
  const Complex minus_i(0.0, -1.0);

  ComplexVector amps = state.amplitudes();
  for (int n = 0; n + 1 < state.cavity_dim(); ++n) {
    const double angle = (model == JcModel::photon_scaled)
                             ? std::sqrt(static_cast<double>(n + 1)) * gt
                             : gt;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    for (int bits = 0; bits < patterns; ++bits) {
      if ((bits >> bit) & 1) continue;  // enumerate excited-side patterns once
      const int idx_e = n * patterns + bits;
      const int idx_g = (n + 1) * patterns + (bits | (1 << bit));
      const Complex ae = amps(idx_e);
      const Complex ag = amps(idx_g);
      amps(idx_e) = c * ae + minus_i * s * ag;
      amps(idx_g) = c * ag + minus_i * s * ae;
    }
  }
  return AtomCavityState::from_amplitudes(std::move(amps), state.cavity_dim(),
                                          n_atoms);
}

AtomCavityState microwave_rotation(const AtomCavityState& state, int atom_index,
                                   double theta, double phi) {
  check_atom_index(state, atom_index);
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw std::invalid_argument("microwave_rotation: angles must be finite");
  }
  const int n_atoms = state.n_atoms();
  const int bit = atom_bit(n_atoms, atom_index);
  const int patterns = 1 << n_atoms;
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex i_unit(0.0, 1.0);
  // |e> -> c|e> + i e^{-i phi} s |g>,  |g> -> c|g> + i e^{+i phi} s |e>
  const Complex eg = i_unit * std::polar(s, phi);   // feeds e' from g
  const Complex ge = i_unit * std::polar(s, -phi);  // feeds g' from e

  ComplexVector amps = state.amplitudes();
  for (int n = 0; n < state.cavity_dim(); ++n) {
    for (int bits = 0; bits < patterns; ++bits) {
      if ((bits >> bit) & 1) continue;
      const int idx_e = n * patterns + bits;
      const int idx_g = n * patterns + (bits | (1 << bit));
      const Complex ae = amps(idx_e);
      const Complex ag = amps(idx_g);
      amps(idx_e) = c * ae + eg * ag;
      amps(idx_g) = ge * ae + c * ag;
    }
  }
  return AtomCavityState::from_amplitudes(std::move(amps), state.cavity_dim(),
                                          n_atoms);
}

PrepParams::PrepParams(double gt1_in, double gt2_in, double theta1_in,
                       double theta2_in, double phi1_in, double phi2_in)
    : gt1(gt1_in), gt2(gt2_in), theta1(theta1_in), theta2(theta2_in),
      phi1(phi1_in), phi2(phi2_in) {
  for (double v : {gt1, gt2, theta1, theta2, phi1, phi2}) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("PrepParams: parameters must be finite");
    }
  }
}

namespace {

AtomCavityState run_preparation(const PrepParams& params, JcModel model,
                                int cavity_dim) {
  if (cavity_dim < 3) {
    throw std::invalid_argument("two_atom_prepare: cavity_dim must be at least 3");
  }
  AtomCavityState state(cavity_dim, 2);
  state = jc_evolve(state, 0, params.gt1, model);
  state = microwave_rotation(state, 0, params.theta1, params.phi1);
  state = jc_evolve(state, 1, params.gt2, model);
  state = microwave_rotation(state, 1, params.theta2, params.phi2);
  return state;
}

constexpr double kPostSelectionFloor = 1e-15;

}  // namespace

PreparationResult two_atom_prepare(const PrepParams& params, JcModel model,
                                   int cavity_dim) {
  const AtomCavityState state = run_preparation(params, model, cavity_dim);
  ComplexVector cavity(cavity_dim);
  for (int n = 0; n < cavity_dim; ++n) {
    cavity(n) = state.amplitude(n, AtomLevel::excited, AtomLevel::excited);
  }
  const double probability = cavity.squaredNorm();
  if (probability < kPostSelectionFloor) {
    throw PostSelectionError(
        "two_atom_prepare: the (e,e) outcome has zero probability");
  }
  return PreparationResult{StateVector(std::move(cavity)), probability};
}

std::array<double, 4> prepare_outcome_probabilities(const PrepParams& params,
                                                    JcModel model,
                                                    int cavity_dim) {
  const AtomCavityState state = run_preparation(params, model, cavity_dim);
  std::array<double, 4> probs{0.0, 0.0, 0.0, 0.0};
  for (int n = 0; n < cavity_dim; ++n) {
    for (int bits = 0; bits < 4; ++bits) {
      probs[bits] += std::norm(state.amplitudes()(n * 4 + bits));
    }
  }
  return probs;  // order: (e,e), (e,g), (g,e), (g,g)
}

ComplexMatrix parity_operator(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("parity_operator: dim must be positive");
  }
  ComplexMatrix parity = ComplexMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    parity(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  }
  return parity;
}

ComplexMatrix displacement_operator(Complex alpha, int dim) {
  if (dim < 1) {
    throw std::invalid_argument("displacement_operator: dim must be positive");
  }
  ComplexMatrix generator = ComplexMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    const double root = std::sqrt(static_cast<double>(n));
    generator(n, n - 1) = alpha * root;              // alpha a^dag
    generator(n - 1, n) = -std::conj(alpha) * root;  // -alpha^* a
  }
  return generator.exp();
}

double parity_expectation(const DensityMatrix& rho, const PhasePoint& alpha,
                          int probe_dim) {
  const int dim = std::max(probe_dim, rho.dim());
  ComplexMatrix embedded = ComplexMatrix::Zero(dim, dim);
  embedded.topLeftCorner(rho.dim(), rho.dim()) = rho.elements();
  const ComplexMatrix disp = displacement_operator(alpha.alpha, dim);
  const ComplexMatrix displaced = disp.adjoint() * embedded * disp;
  Complex acc(0.0, 0.0);
  for (int n = 0; n < dim; ++n) {
    acc += ((n % 2 == 0) ? 1.0 : -1.0) * displaced(n, n);
  }
  if (std::abs(acc.imag()) > 1e-9) {
    throw std::runtime_error("parity_expectation: imaginary residue above 1e-9");
  }
  return acc.real();
}

namespace {

double probe_probability_from_parity(double parity, double ramsey_phase) {
  const double p = 0.5 * (1.0 + parity * std::cos(ramsey_phase));
  if (p < -1e-9 || p > 1.0 + 1e-9) {
    throw std::runtime_error("ramsey_probe_probability: excursion above 1e-9");
  }
  return std::clamp(p, 0.0, 1.0);
}

// Counts successes among `shots` Bernoulli(p) draws. The generator output
// is consumed as raw 64-bit words so the sequence is fully specified.
std::uint64_t binomial_count(std::uint64_t shots, double p, std::mt19937_64& rng) {
  const long double threshold =
      static_cast<long double>(p) * 18446744073709551616.0L;  // p * 2^64
  std::uint64_t count = 0;
  for (std::uint64_t k = 0; k < shots; ++k) {
    if (static_cast<long double>(rng()) < threshold) ++count;
  }
  return count;
}

}  // namespace

double ramsey_probe_probability(const DensityMatrix& rho, const PhasePoint& alpha,
                                double ramsey_phase, int probe_dim) {
  if (!std::isfinite(ramsey_phase)) {
    throw std::invalid_argument("ramsey_probe_probability: phase must be finite");
  }
  return probe_probability_from_parity(parity_expectation(rho, alpha, probe_dim),
                                       ramsey_phase);
}

MeasurementRecord measured_wigner(const DensityMatrix& rho, const PhasePoint& alpha,
                                  std::uint64_t shots, std::uint64_t seed,
                                  int probe_dim) {
  const double parity = parity_expectation(rho, alpha, probe_dim);
  const double p0 = probe_probability_from_parity(parity, 0.0);
  const double ppi = probe_probability_from_parity(parity, kPi);

  MeasurementRecord record{alpha, p0, ppi, shots, 0.0};
  if (shots > 0) {
    std::mt19937_64 rng(seed);
    record.p_e_phase0 =
        static_cast<double>(binomial_count(shots, p0, rng)) / shots;
    record.p_e_phase_pi =
        static_cast<double>(binomial_count(shots, ppi, rng)) / shots;
  }
  record.w_estimate =
      2.0 * (record.p_e_phase0 - record.p_e_phase_pi) / kPi;
  return record;
}

bool negativity_criterion(const DensityMatrix& rho, const PhasePoint& alpha,
                          int probe_dim) {
  const double parity = parity_expectation(rho, alpha, probe_dim);
  return probe_probability_from_parity(parity, 0.0) <
         probe_probability_from_parity(parity, kPi);
}

}  // namespace cavitydyn
