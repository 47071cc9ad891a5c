#pragma once

#include <string>
#include <vector>

#include "cavitydyn/correlations.hpp"
#include "cavitydyn/qed.hpp"

namespace cavitydyn {

// Thrown on unreadable input or unwritable output paths.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All numeric output is written with 17 significant digits so doubles
// round-trip losslessly; undefined values are written as the token "nan".

// Header "x,p,W", one row per lattice point, row-major with x fastest.
void write_wigner_csv(const WignerGrid& grid, const std::string& path);
WignerGrid read_wigner_csv(const std::string& path);

// Header "kappa_t,g2,g2a,mean_n,m2".
void write_sweep_csv(const std::vector<CorrelationSample>& samples,
                     const std::string& path);
std::vector<CorrelationSample> read_sweep_csv(const std::string& path);

// Header "x,p,Pe0,Pepi,W_est,shots".
void write_measurement_csv(const std::vector<MeasurementRecord>& records,
                           const std::string& path);
std::vector<MeasurementRecord> read_measurement_csv(const std::string& path);

// JSON report of one preparation run: parameters, model name, success
// probability, cavity amplitudes as re/im pairs, and the fidelity against
// the protocol's reference target state.
struct PreparationReport {
  PrepParams params{0, 0, 0, 0, 0, 0};
  std::string model;
  double success_probability = 0.0;
  std::vector<Complex> cavity_amplitudes;
  double target_fidelity = 0.0;
};

void write_preparation_report(const PreparationReport& report,
                              const std::string& path);
PreparationReport read_preparation_report(const std::string& path);

// Formats one double with 17 significant digits ("nan" for NaN).
std::string format_full(double value);

}  // namespace cavitydyn
