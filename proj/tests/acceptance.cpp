// Acceptance suite: one check per release criterion, each printed as a
// single PASS/FAIL line with the measured figure and its tolerance.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "cavitydyn/correlations.hpp"
#include "cavitydyn/io.hpp"
#include "cavitydyn/qed.hpp"

using namespace cavitydyn;

namespace {

constexpr double kPi = std::numbers::pi;

struct Reporter {
  int failures = 0;

  void check(int index, const std::string& name, bool ok,
             const std::string& detail) {
    std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

std::string fmt(const char* pattern, ...) {
  char buffer[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buffer, sizeof(buffer), pattern, args);
  va_end(args);
  return buffer;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

InitialStateParams demo_params() {
  return InitialStateParams::from_c1_c2(1.0 / 3.0, std::sqrt(2.0) / 2.0, 0.0, kPi);
}

std::vector<InitialStateParams> all_reference_sets() {
  const double s6 = std::sqrt(6.0);
  return {
      demo_params(),
      InitialStateParams::from_c1_c2(s6 / 6.0, s6 / 3.0, 0.0, kPi),
      InitialStateParams::from_c1_c2(2.0 / 9.0, 2.0 / 3.0, 0.0, kPi),
      InitialStateParams::from_c1_c2(1.0 / 3.0, 1.0 / 3.0, 0.0, kPi),
      InitialStateParams::from_c1_c2(1.0 / 5.0, 1.0 / 3.0, 0.0, kPi),
  };
}

std::vector<double> sweep_61() {
  std::vector<double> ts(61);
  for (int i = 0; i < 61; ++i) ts[i] = 3.0 * i / 60.0;
  return ts;
}

const GridSpec kGrid41{-3, 3, -3, 3, 41, 41};
const GridSpec kGrid101{-3, 3, -3, 3, 101, 101};

void criterion_1_g2_invariance(Reporter& rep) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> times = sweep_61();

  double closed_dev = 0.0;
  double trace_dev = 0.0;
  for (const InitialStateParams& params : all_reference_sets()) {
    const double reference = g2_closed(params, 0.0);
    for (double t : times) {
      closed_dev = std::max(closed_dev, std::abs(g2_closed(params, t) - reference));
    }
    const Trajectory traj =
        evolve_trajectory(density_from_state(params.to_state()), times);
    const double rho_reference = g2_from_rho(traj.states.front());
    for (const DensityMatrix& rho : traj.states) {
      trace_dev = std::max(trace_dev, std::abs(g2_from_rho(rho) - rho_reference));
    }
  }
  const double elapsed = seconds_since(start);
  rep.check(1, "g2 invariance along the decay",
            closed_dev < 1e-12 && trace_dev < 1e-6 && elapsed < 5.0,
            fmt("closed max dev %.2e (tol 1e-12), trace route max dev %.2e "
                "(tol 1e-6), runtime %.2f s (limit 5 s)",
                closed_dev, trace_dev, elapsed));
}

void criterion_2_g2_values(Reporter& rep) {
  const double s6 = std::sqrt(6.0);
  const InitialStateParams prepared =
      InitialStateParams::from_c1_c2(s6 / 3.0, s6 / 6.0, 0.0, 0.0);
  const InitialStateParams heavy =
      InitialStateParams::from_c1_c2(s6 / 6.0, s6 / 3.0, 0.0, kPi);

  double worst = 0.0;
  for (double t : {0.0, 0.8, 2.9}) {
    worst = std::max(worst, std::abs(g2_closed(demo_params(), t) - 0.81));
    worst = std::max(worst, std::abs(g2_closed(heavy, t) - 16.0 / 27.0));
    worst = std::max(worst, std::abs(g2_closed(prepared, t) - 1.0 / 3.0));
  }
  rep.check(2, "g2 reference values 0.81, 16/27, 1/3", worst < 1e-12,
            fmt("max deviation %.2e (tol 1e-12)", worst));
}

void criterion_3_g2a(Reporter& rep) {
  double asymptote_dev = 0.0;
  for (const InitialStateParams& params : all_reference_sets()) {
    asymptote_dev =
        std::max(asymptote_dev, std::abs(g2_antinormal_closed(params, 10.0) - 2.0));
  }
  const double value_closed = g2_antinormal_closed(demo_params(), 0.0);
  const double value_rho =
      g2_antinormal_from_rho(density_from_state(demo_params().to_state()));
  const double value_dev = std::max(std::abs(value_closed - 603.0 / 361.0),
                                    std::abs(value_rho - 603.0 / 361.0));
  rep.check(3, "g2a asymptote and initial value",
            asymptote_dev < 1e-6 && value_dev < 1e-12,
            fmt("|g2a(10) - 2| max %.2e (tol 1e-6), |g2a(0) - 603/361| %.2e "
                "(tol 1e-12)",
                asymptote_dev, value_dev));
}

void criterion_4_three_routes(Reporter& rep) {
  const auto start = std::chrono::steady_clock::now();
  const InitialStateParams params = demo_params();
  const std::vector<double> times{0.0, 0.2, 0.35, 3.0};

  const Trajectory traj =
      evolve_trajectory(density_from_state(params.to_state()), times);
  const GaussianConvolution conv(
      [&params](const PhasePoint& pt) { return wigner_initial_closed(params, pt); });

  double worst = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const WignerGrid fock = wigner_grid(traj.states[k], kGrid41);
    const WignerGrid closed = wigner_grid(params, times[k], kGrid41);
    const WignerGrid convolved = wigner_grid(
        [&](const PhasePoint& pt) { return conv(times[k], pt); }, kGrid41);
    worst = std::max(worst, (fock.values - closed.values).cwiseAbs().maxCoeff());
    worst = std::max(worst, (fock.values - convolved.values).cwiseAbs().maxCoeff());
    worst = std::max(worst, (closed.values - convolved.values).cwiseAbs().maxCoeff());
  }
  const double elapsed = seconds_since(start);
  rep.check(4, "three Wigner routes agree", worst < 1e-6 && elapsed < 60.0,
            fmt("max pairwise difference %.2e (tol 1e-6), runtime %.2f s "
                "(limit 60 s)",
                worst, elapsed));
}

void criterion_5_negativity_timeline(Reporter& rep) {
  const InitialStateParams params = demo_params();
  const auto min_w = [&params](double kt) {
    return negativity_metrics(wigner_grid(params, kt, kGrid101)).min_value;
  };
  const double w0 = min_w(0.0);
  const double w35 = min_w(0.35);
  const double w3 = min_w(3.0);

  double lo = 0.2, hi = 0.6;
  for (int iter = 0; iter < 40; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (min_w(mid) < 0.0 ? lo : hi) = mid;
  }
  const double crossing = 0.5 * (lo + hi);
  rep.check(5, "negativity timeline and crossover",
            w0 < -0.05 && w35 >= -1e-6 && w3 >= -1e-6 &&
                std::abs(crossing - 0.35) <= 0.05,
            fmt("min W(0) = %.3f (< -0.05), min W(0.35) = %.1e, min W(3) = "
                "%.1e (both >= -1e-6), crossover at kt = %.4f (0.35 +- 0.05)",
                w0, w35, w3, crossing));
}

void criterion_6_vacuum_limit(Reporter& rep) {
  const InitialStateParams params = demo_params();
  const DensityMatrix late =
      evolve_rk4(density_from_state(params.to_state()), 10.0);
  double worst = 0.0;
  for (int ix = 0; ix < kGrid101.nx; ++ix) {
    for (int ip = 0; ip < kGrid101.np; ++ip) {
      const double x = -3.0 + 6.0 * ix / (kGrid101.nx - 1);
      const double p = -3.0 + 6.0 * ip / (kGrid101.np - 1);
      const PhasePoint pt = PhasePoint::from_xy(x, p);
      const double gauss = (2.0 / kPi) * std::exp(-2.0 * (x * x + p * p));
      worst = std::max(worst,
                       std::abs(wigner_evolved_closed(params, 10.0, pt) - gauss));
      worst = std::max(worst, std::abs(wigner_from_rho(late, pt) - gauss));
    }
  }
  rep.check(6, "vacuum Gaussian limit at kt = 10", worst < 1e-6,
            fmt("sup deviation %.2e (tol 1e-6)", worst));
}

void criterion_7_mean_decay(Reporter& rep) {
  const Trajectory traj = evolve_trajectory(
      density_from_state(demo_params().to_state()), sweep_61());
  const ComplexMatrix number = number_operator(kDefaultDim);
  const double n0 = expectation(traj.states.front(), number).real();
  double decay_dev = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double expected = n0 * std::exp(-2.0 * traj.times[k]);
    decay_dev = std::max(decay_dev,
                         std::abs(expectation(traj.states[k], number).real() -
                                  expected));
  }

  double simplification_dev = 0.0;
  for (const InitialStateParams& params : all_reference_sets()) {
    const double weight =
        params.mod_c1 * params.mod_c1 + 2.0 * params.mod_c2 * params.mod_c2;
    for (double t = 0.0; t <= 10.0; t += 0.1) {
      simplification_dev =
          std::max(simplification_dev,
                   std::abs(mean_photon_closed(params, t) -
                            weight * std::exp(-2.0 * t)));
    }
  }
  rep.check(7, "mean photon number decays as e^{-2kt}",
            decay_dev < 1e-8 && simplification_dev < 1e-14,
            fmt("trajectory deviation %.2e (tol 1e-8), four-term vs "
                "simplified %.2e (tol 1e-14)",
                decay_dev, simplification_dev));
}

void criterion_8_preparation(Reporter& rep) {
  const double s6 = std::sqrt(6.0);
  const StateVector target = make_superposition(s6 / 6.0, s6 / 3.0, s6 / 6.0, 8);
  const PrepParams params(kPi / 4.0, kPi / 4.0, 7.0 * kPi / 2.0, kPi / 2.0, kPi, 0.0);
  const PreparationResult result =
      two_atom_prepare(params, JcModel::uniform_angle);
  const double fid = fidelity(result.cavity, target);
  const double prob_dev = std::abs(result.success_probability - 3.0 / 8.0);
  rep.check(8, "two-atom preparation protocol",
            fid > 1.0 - 1e-12 && prob_dev < 1e-12,
            fmt("target fidelity 1 - %.1e (need > 1 - 1e-12), |success - 3/8| "
                "= %.1e (tol 1e-12)",
                1.0 - fid, prob_dev));
}

void criterion_9_measurement(Reporter& rep) {
  const Trajectory traj = evolve_trajectory(
      density_from_state(demo_params().to_state()), {0.0, 0.35});
  const GridSpec grid{-3, 3, -3, 3, 21, 21};

  double exact_dev = 0.0;
  bool signs_agree = true;
  for (const DensityMatrix& rho : traj.states) {
    for (int ip = 0; ip < grid.np; ++ip) {
      for (int ix = 0; ix < grid.nx; ++ix) {
        const PhasePoint pt =
            PhasePoint::from_xy(-3.0 + 0.3 * ix, -3.0 + 0.3 * ip);
        const double engine = wigner_from_rho(rho, pt);
        const MeasurementRecord rec = measured_wigner(rho, pt, 0, 0);
        exact_dev = std::max(exact_dev, std::abs(rec.w_estimate - engine));
        const bool criterion = rec.p_e_phase0 < rec.p_e_phase_pi;
        if (criterion != (engine < 0.0)) signs_agree = false;
      }
    }
  }

  const std::uint64_t shots = 100000;
  const std::uint64_t base_seed = 20240901;
  int within = 0;
  int total = 0;
  std::uint64_t index = 0;
  const DensityMatrix& rho0 = traj.states.front();
  for (int ip = 0; ip < grid.np; ++ip) {
    for (int ix = 0; ix < grid.nx; ++ix, ++index) {
      const PhasePoint pt = PhasePoint::from_xy(-3.0 + 0.3 * ix, -3.0 + 0.3 * ip);
      const MeasurementRecord exact = measured_wigner(rho0, pt, 0, 0);
      const MeasurementRecord noisy =
          measured_wigner(rho0, pt, shots, base_seed + index);
      const double variance = exact.p_e_phase0 * (1.0 - exact.p_e_phase0) +
                              exact.p_e_phase_pi * (1.0 - exact.p_e_phase_pi);
      const double sigma = (2.0 / kPi) * std::sqrt(variance / shots);
      if (std::abs(noisy.w_estimate - exact.w_estimate) <= 4.0 * sigma) ++within;
      ++total;
    }
  }
  const double fraction = static_cast<double>(within) / total;
  rep.check(9, "displaced-parity measurement protocol",
            exact_dev < 1e-9 && signs_agree && fraction >= 0.99,
            fmt("exact-probability deviation %.2e (tol 1e-9), sign agreement "
                "%s, %.2f%% of shot-noise points within 4 sigma (need 99%%)",
                exact_dev, signs_agree ? "yes" : "NO", 100.0 * fraction));
}

void criterion_10_hygiene(Reporter& rep) {
  std::vector<double> times;
  for (double t = 0.5; t <= 10.001; t += 0.5) times.push_back(t);
  const Trajectory traj =
      evolve_trajectory(density_from_state(demo_params().to_state()), times);

  double trace_dev = 0.0, herm_dev = 0.0, min_eig = 1.0;
  for (const DensityMatrix& rho : traj.states) {
    trace_dev = std::max(trace_dev, std::abs(rho.elements().trace() - Complex(1, 0)));
    herm_dev = std::max(
        herm_dev,
        (rho.elements() - rho.elements().adjoint()).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.elements(),
                                                        Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, solver.eigenvalues().minCoeff());
  }
  rep.check(10, "master-equation trajectory hygiene",
            trace_dev < 1e-9 && herm_dev < 1e-10 && min_eig > -1e-8,
            fmt("trace deviation %.2e (tol 1e-9), Hermiticity %.2e (tol "
                "1e-10), min eigenvalue %.2e (floor -1e-8)",
                trace_dev, herm_dev, min_eig));
}

}  // namespace

int main() {
  Reporter rep;
  criterion_1_g2_invariance(rep);
  criterion_2_g2_values(rep);
  criterion_3_g2a(rep);
  criterion_4_three_routes(rep);
  criterion_5_negativity_timeline(rep);
  criterion_6_vacuum_limit(rep);
  criterion_7_mean_decay(rep);
  criterion_8_preparation(rep);
  criterion_9_measurement(rep);
  criterion_10_hygiene(rep);

  if (rep.failures == 0) {
    std::printf("all 10 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", rep.failures);
  return 1;
}
