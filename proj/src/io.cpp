#include "cavitydyn/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cavitydyn {

std::string format_full(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open for writing: " + path);
  }
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open for reading: " + path);
  }
  return in;
}

std::vector<double> parse_csv_row(const std::string& line, std::size_t expected,
                                  const std::string& path) {
  std::vector<double> fields;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell == "nan") {
      fields.push_back(std::nan(""));
      continue;
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(cell, &used);
    } catch (const std::exception&) {
      throw IoError("malformed numeric field in " + path + ": " + cell);
    }
    if (used != cell.size()) {
      throw IoError("malformed numeric field in " + path + ": " + cell);
    }
    fields.push_back(value);
  }
  if (fields.size() != expected) {
    throw IoError("wrong column count in " + path);
  }
  return fields;
}

void expect_header(std::ifstream& in, const std::string& header,
                   const std::string& path) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw IoError("missing header '" + header + "' in " + path);
  }
}

}  // namespace

void write_wigner_csv(const WignerGrid& grid, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "x,p,W\n";
  for (int ip = 0; ip < grid.np; ++ip) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      out << format_full(grid.x_at(ix)) << ',' << format_full(grid.p_at(ip))
          << ',' << format_full(grid.values(ix, ip)) << '\n';
    }
  }
  if (!out) {
    throw IoError("write failure: " + path);
  }
}

WignerGrid read_wigner_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  expect_header(in, "x,p,W", path);
  std::vector<std::array<double, 3>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<double> f = parse_csv_row(line, 3, path);
    rows.push_back({f[0], f[1], f[2]});
  }
  if (rows.size() < 4) {
    throw IoError("too few rows in " + path);
  }
  // x varies fastest; the first repeat of the leading x value starts row 2.
  std::size_t nx = 1;
  while (nx < rows.size() && rows[nx][0] != rows[0][0]) ++nx;
  if (nx < 2 || rows.size() % nx != 0) {
    throw IoError("inconsistent lattice in " + path);
  }
  const std::size_t np = rows.size() / nx;
  if (np < 2) {
    throw IoError("inconsistent lattice in " + path);
  }
  WignerGrid grid;
  grid.nx = static_cast<int>(nx);
  grid.np = static_cast<int>(np);
  grid.x_min = rows[0][0];
  grid.x_max = rows[nx - 1][0];
  grid.p_min = rows[0][1];
  grid.p_max = rows.back()[1];
  grid.values.resize(grid.nx, grid.np);
  for (std::size_t ip = 0; ip < np; ++ip) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      grid.values(static_cast<int>(ix), static_cast<int>(ip)) =
          rows[ip * nx + ix][2];
    }
  }
  return grid;
}

void write_sweep_csv(const std::vector<CorrelationSample>& samples,
                     const std::string& path) {
  std::ofstream out = open_output(path);
  out << "kappa_t,g2,g2a,mean_n,m2\n";
  for (const CorrelationSample& s : samples) {
    out << format_full(s.kappa_t) << ',' << format_full(s.g2) << ','
        << format_full(s.g2a) << ',' << format_full(s.mean_n) << ','
        << format_full(s.second_factorial_moment) << '\n';
  }
  if (!out) {
    throw IoError("write failure: " + path);
  }
}

std::vector<CorrelationSample> read_sweep_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  expect_header(in, "kappa_t,g2,g2a,mean_n,m2", path);
  std::vector<CorrelationSample> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<double> f = parse_csv_row(line, 5, path);
    samples.push_back(CorrelationSample{f[0], f[1], f[2], f[3], f[4]});
  }
  return samples;
}

void write_measurement_csv(const std::vector<MeasurementRecord>& records,
                           const std::string& path) {
  std::ofstream out = open_output(path);
  out << "x,p,Pe0,Pepi,W_est,shots\n";
  for (const MeasurementRecord& r : records) {
    out << format_full(r.alpha.x()) << ',' << format_full(r.alpha.p()) << ','
        << format_full(r.p_e_phase0) << ',' << format_full(r.p_e_phase_pi)
        << ',' << format_full(r.w_estimate) << ',' << r.shots << '\n';
  }
  if (!out) {
    throw IoError("write failure: " + path);
  }
}

std::vector<MeasurementRecord> read_measurement_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  expect_header(in, "x,p,Pe0,Pepi,W_est,shots", path);
  std::vector<MeasurementRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<double> f = parse_csv_row(line, 6, path);
    records.push_back(MeasurementRecord{PhasePoint::from_xy(f[0], f[1]), f[2],
                                        f[3], static_cast<std::uint64_t>(f[5]),
                                        f[4]});
  }
  return records;
}

void write_preparation_report(const PreparationReport& report,
                              const std::string& path) {
  nlohmann::json j;
  j["params"] = {{"gt1", report.params.gt1},       {"gt2", report.params.gt2},
                 {"theta1", report.params.theta1}, {"theta2", report.params.theta2},
                 {"phi1", report.params.phi1},     {"phi2", report.params.phi2}};
  j["model"] = report.model;
  j["success_probability"] = report.success_probability;
  nlohmann::json amps = nlohmann::json::array();
  for (const Complex& c : report.cavity_amplitudes) {
    amps.push_back({c.real(), c.imag()});
  }
  j["cavity_amplitudes"] = amps;
  j["target_fidelity"] = report.target_fidelity;

  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
  if (!out) {
    throw IoError("write failure: " + path);
  }
}

PreparationReport read_preparation_report(const std::string& path) {
  std::ifstream in = open_input(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed JSON in " + path + ": " + e.what());
  }
  try {
    const auto& p = j.at("params");
    PreparationReport report{
        PrepParams(p.at("gt1").get<double>(), p.at("gt2").get<double>(),
                   p.at("theta1").get<double>(), p.at("theta2").get<double>(),
                   p.at("phi1").get<double>(), p.at("phi2").get<double>()),
        j.at("model").get<std::string>(),
        j.at("success_probability").get<double>(),
        {},
        j.at("target_fidelity").get<double>()};
    for (const auto& pair : j.at("cavity_amplitudes")) {
      report.cavity_amplitudes.emplace_back(pair.at(0).get<double>(),
                                            pair.at(1).get<double>());
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("missing field in " + path + ": " + e.what());
  }
}

}  // namespace cavitydyn
