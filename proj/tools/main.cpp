// Command-line front end: wigner snapshots, correlation sweeps, the
// two-atom preparation protocol, and displaced-parity measurement scans.
// Runs are configured by a single JSON document plus a few flag overrides;
// every default reproduces the demo state used across the test suite.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cavitydyn/correlations.hpp"
#include "cavitydyn/io.hpp"
#include "cavitydyn/qed.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cavitydyn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitPhysics = 3;

constexpr double kPi = std::numbers::pi;

// Collects configuration problems so a bad config is reported in one pass.
struct Validator {
  std::vector<std::string> issues;

  void require(bool ok, const std::string& message) {
    if (!ok) issues.push_back(message);
  }
};

struct StateConfig {
  double c1_abs = 1.0 / 3.0;
  double c2_abs = std::sqrt(2.0) / 2.0;
  double phi = 0.0;
  double varphi = kPi;
};

struct RunConfig {
  std::string command;
  StateConfig state;
  std::vector<StateConfig> states;  // correlations
  std::vector<double> snapshots{0.0, 0.2, 0.35, 3.0};
  std::vector<double> sweep;        // filled with the default below
  GridSpec grid;
  std::string route = "rho";
  std::string model = "paper";
  double step = kDefaultRk4Step;
  int dim = kDefaultDim;
  double measure_kappa_t = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  PrepParams prep{kPi / 4.0, kPi / 4.0, 7.0 * kPi / 2.0, kPi / 2.0, kPi, 0.0};
  std::string out_dir = "out";
};

std::vector<double> linspace(double start, double stop, int count) {
  std::vector<double> xs(count);
  for (int i = 0; i < count; ++i) {
    xs[i] = start + (stop - start) * i / (count - 1);
  }
  return xs;
}

std::vector<StateConfig> default_correlation_sets() {
  const double s6 = std::sqrt(6.0);
  return {
      StateConfig{s6 / 6.0, s6 / 3.0, 0.0, kPi},
      StateConfig{2.0 / 9.0, 2.0 / 3.0, 0.0, kPi},
      StateConfig{1.0 / 3.0, 1.0 / 3.0, 0.0, kPi},
      StateConfig{1.0 / 5.0, 1.0 / 3.0, 0.0, kPi},
  };
}

double get_number(const json& j, const std::string& key, double fallback,
                  Validator& v) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) {
    v.issues.push_back("field '" + key + "' must be a number");
    return fallback;
  }
  return j.at(key).get<double>();
}

StateConfig parse_state(const json& j, const StateConfig& fallback, Validator& v) {
  StateConfig s = fallback;
  s.c1_abs = get_number(j, "c1_abs", s.c1_abs, v);
  s.c2_abs = get_number(j, "c2_abs", s.c2_abs, v);
  s.phi = get_number(j, "phi", s.phi, v);
  s.varphi = get_number(j, "varphi", s.varphi, v);
  v.require(s.c1_abs >= 0.0 && s.c2_abs >= 0.0, "state moduli must be nonnegative");
  v.require(s.c1_abs * s.c1_abs + s.c2_abs * s.c2_abs <= 1.0 + 1e-12,
            "state moduli must satisfy |c1|^2 + |c2|^2 <= 1");
  return s;
}

std::vector<double> parse_number_list(const json& j, const std::string& key,
                                      Validator& v) {
  std::vector<double> xs;
  if (!j.at(key).is_array()) {
    v.issues.push_back("field '" + key + "' must be an array of numbers");
    return xs;
  }
  for (const auto& e : j.at(key)) {
    if (!e.is_number()) {
      v.issues.push_back("field '" + key + "' must contain only numbers");
      return {};
    }
    xs.push_back(e.get<double>());
  }
  return xs;
}

GridSpec parse_grid(const json& j, const GridSpec& fallback, Validator& v) {
  GridSpec g = fallback;
  g.x_min = get_number(j, "x_min", g.x_min, v);
  g.x_max = get_number(j, "x_max", g.x_max, v);
  g.p_min = get_number(j, "p_min", g.p_min, v);
  g.p_max = get_number(j, "p_max", g.p_max, v);
  g.nx = static_cast<int>(get_number(j, "nx", g.nx, v));
  g.np = static_cast<int>(get_number(j, "np", g.np, v));
  v.require(g.x_min < g.x_max && g.p_min < g.p_max, "grid bounds must be ordered");
  v.require(g.nx >= 2 && g.np >= 2, "grid needs at least 2 samples per axis");
  return g;
}

RunConfig parse_config(const std::string& command,
                       const std::optional<std::string>& config_path,
                       Validator& v) {
  RunConfig cfg;
  cfg.command = command;
  if (command == "measure") {
    cfg.grid = GridSpec{-3.0, 3.0, -3.0, 3.0, 21, 21};
  }

  json j = json::object();
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) {
      throw IoError("cannot open config: " + *config_path);
    }
    try {
      in >> j;
    } catch (const json::exception& e) {
      v.issues.push_back(std::string("config is not valid JSON: ") + e.what());
      return cfg;
    }
    if (!j.is_object()) {
      v.issues.push_back("config root must be a JSON object");
      return cfg;
    }
  }

  if (j.contains("command")) {
    const std::string from_file = j.at("command").get<std::string>();
    v.require(from_file == command, "config command '" + from_file +
                                        "' does not match subcommand '" +
                                        command + "'");
  }
  if (j.contains("state")) cfg.state = parse_state(j.at("state"), cfg.state, v);
  if (j.contains("states")) {
    cfg.states.clear();
    for (const auto& e : j.at("states")) {
      cfg.states.push_back(parse_state(e, StateConfig{}, v));
    }
    v.require(!cfg.states.empty(), "'states' must not be empty");
  }
  if (j.contains("kappa_t")) {
    if (command == "measure") {
      cfg.measure_kappa_t = get_number(j, "kappa_t", 0.0, v);
      v.require(cfg.measure_kappa_t >= 0.0, "kappa_t must be nonnegative");
    } else {
      cfg.snapshots = parse_number_list(j, "kappa_t", v);
    }
  }
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    const double start = get_number(s, "start", 0.0, v);
    const double stop = get_number(s, "stop", 3.0, v);
    const int count = static_cast<int>(get_number(s, "count", 61, v));
    v.require(count >= 2 && stop > start && start >= 0.0,
              "sweep must have count >= 2 and 0 <= start < stop");
    if (v.issues.empty()) cfg.sweep = linspace(start, stop, count);
  }
  if (j.contains("grid")) cfg.grid = parse_grid(j.at("grid"), cfg.grid, v);
  if (j.contains("route")) cfg.route = j.at("route").get<std::string>();
  if (j.contains("model")) cfg.model = j.at("model").get<std::string>();
  if (j.contains("step")) {
    cfg.step = get_number(j, "step", cfg.step, v);
    v.require(cfg.step > 0.0, "step must be positive");
  }
  if (j.contains("dim")) {
    cfg.dim = static_cast<int>(get_number(j, "dim", cfg.dim, v));
    v.require(cfg.dim >= 3, "dim must be at least 3");
  }
  if (j.contains("shots")) {
    const double raw = get_number(j, "shots", 0.0, v);
    v.require(raw >= 0.0, "shots must be nonnegative");
    cfg.shots = static_cast<std::uint64_t>(raw);
  }
  if (j.contains("seed")) {
    cfg.seed = static_cast<std::uint64_t>(get_number(j, "seed", 1.0, v));
  }
  if (j.contains("prep")) {
    const json& p = j.at("prep");
    cfg.prep = PrepParams(get_number(p, "gt1", cfg.prep.gt1, v),
                          get_number(p, "gt2", cfg.prep.gt2, v),
                          get_number(p, "theta1", cfg.prep.theta1, v),
                          get_number(p, "theta2", cfg.prep.theta2, v),
                          get_number(p, "phi1", cfg.prep.phi1, v),
                          get_number(p, "phi2", cfg.prep.phi2, v));
  }

  if (cfg.states.empty()) cfg.states = default_correlation_sets();
  if (cfg.sweep.empty()) cfg.sweep = linspace(0.0, 3.0, 61);

  v.require(cfg.route == "closed" || cfg.route == "rho" ||
                cfg.route == "convolution" || cfg.route == "both",
            "route must be one of closed|rho|convolution|both");
  v.require(cfg.model == "paper" || cfg.model == "exact",
            "model must be 'paper' or 'exact'");
  if (command == "wigner") {
    v.require(!cfg.snapshots.empty(), "need at least one kappa_t snapshot");
    double prev = 0.0;
    for (double t : cfg.snapshots) {
      v.require(t >= prev, "kappa_t snapshots must be ascending and nonnegative");
      prev = t;
    }
  }
  if (command == "correlations") {
    for (double t : cfg.sweep) {
      v.require(t >= 0.0, "sweep times must be nonnegative");
    }
  }
  return cfg;
}

InitialStateParams to_params(const StateConfig& s) {
  return InitialStateParams::from_c1_c2(s.c1_abs, s.c2_abs, s.phi, s.varphi);
}

JcModel to_model(const std::string& name) {
  return name == "exact" ? JcModel::photon_scaled : JcModel::uniform_angle;
}

std::string snapshot_name(double kappa_t) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "wigner_kt%g.csv", kappa_t);
  return buffer;
}

void write_json_file(const json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failure: " + path.string());
}

int cmd_wigner(const RunConfig& cfg) {
  const InitialStateParams params = to_params(cfg.state);
  const bool want_rho = cfg.route == "rho" || cfg.route == "both";
  const bool want_closed = cfg.route == "closed" || cfg.route == "both";
  const bool want_conv = cfg.route == "convolution" || cfg.route == "both";

  std::optional<Trajectory> traj;
  if (want_rho) {
    traj = evolve_trajectory(density_from_state(params.to_state(cfg.dim)),
                             cfg.snapshots, cfg.step);
  }
  std::optional<GaussianConvolution> conv;
  if (want_conv) {
    conv.emplace([&params](const PhasePoint& pt) {
      return wigner_initial_closed(params, pt);
    });
  }

  json summary;
  summary["route"] = cfg.route;
  summary["snapshots"] = json::array();
  double max_discrepancy = 0.0;

  for (std::size_t k = 0; k < cfg.snapshots.size(); ++k) {
    const double kt = cfg.snapshots[k];
    std::optional<WignerGrid> grid_rho, grid_closed, grid_conv;
    if (want_rho) grid_rho = wigner_grid(traj->states[k], cfg.grid);
    if (want_closed) grid_closed = wigner_grid(params, kt, cfg.grid);
    if (want_conv) {
      grid_conv = wigner_grid(
          [&](const PhasePoint& pt) { return (*conv)(kt, pt); }, cfg.grid);
    }
    const WignerGrid& canonical =
        grid_rho ? *grid_rho : (grid_closed ? *grid_closed : *grid_conv);

    if (cfg.route == "both") {
      const double d1 =
          (grid_rho->values - grid_closed->values).cwiseAbs().maxCoeff();
      const double d2 =
          (grid_rho->values - grid_conv->values).cwiseAbs().maxCoeff();
      const double d3 =
          (grid_closed->values - grid_conv->values).cwiseAbs().maxCoeff();
      max_discrepancy = std::max({max_discrepancy, d1, d2, d3});
    }

    const std::string name = snapshot_name(kt);
    write_wigner_csv(canonical, (fs::path(cfg.out_dir) / name).string());

    const NegativityMetrics metrics = negativity_metrics(canonical);
    json entry;
    entry["kappa_t"] = kt;
    entry["file"] = name;
    entry["min_value"] = metrics.min_value;
    entry["min_x"] = metrics.min_location.x();
    entry["min_p"] = metrics.min_location.p();
    entry["negative_volume"] = metrics.negative_volume;
    entry["grid_integral"] = grid_quadrature(canonical);
    summary["snapshots"].push_back(entry);
  }
  if (cfg.route == "both") {
    summary["max_route_discrepancy"] = max_discrepancy;
  }
  write_json_file(summary, fs::path(cfg.out_dir) / "wigner_summary.json");
  return kExitOk;
}

int cmd_correlations(const RunConfig& cfg) {
  json summary;
  summary["sets"] = json::array();
  for (std::size_t k = 0; k < cfg.states.size(); ++k) {
    const InitialStateParams params = to_params(cfg.states[k]);
    const std::vector<CorrelationSample> samples =
        correlation_sweep(params, cfg.sweep);

    const std::string name = "correlations_set" + std::to_string(k) + ".csv";
    write_sweep_csv(samples, (fs::path(cfg.out_dir) / name).string());

    double g2_reference = std::numeric_limits<double>::quiet_NaN();
    double g2_deviation = 0.0;
    for (const CorrelationSample& s : samples) {
      if (std::isnan(s.g2)) continue;
      if (std::isnan(g2_reference)) {
        g2_reference = s.g2;
      } else {
        g2_deviation = std::max(g2_deviation, std::abs(s.g2 - g2_reference));
      }
    }
    json entry;
    entry["file"] = name;
    entry["c1_abs"] = cfg.states[k].c1_abs;
    entry["c2_abs"] = cfg.states[k].c2_abs;
    entry["g2_first"] = samples.front().g2;
    entry["g2_max_deviation"] = g2_deviation;
    entry["g2a_first"] = samples.front().g2a;
    entry["g2a_last"] = samples.back().g2a;
    summary["sets"].push_back(entry);
  }
  write_json_file(summary, fs::path(cfg.out_dir) / "correlations_summary.json");
  return kExitOk;
}

int cmd_prepare(const RunConfig& cfg) {
  const double s6 = std::sqrt(6.0);
  const StateVector target = make_superposition(s6 / 6.0, s6 / 3.0, s6 / 6.0, cfg.dim);

  PreparationReport report;
  report.params = cfg.prep;
  report.model = cfg.model;

  int exit_code = kExitOk;
  try {
    const PreparationResult result =
        two_atom_prepare(cfg.prep, to_model(cfg.model), cfg.dim);
    report.success_probability = result.success_probability;
    const ComplexVector& amps = result.cavity.amplitudes();
    report.cavity_amplitudes.assign(amps.data(), amps.data() + amps.size());
    report.target_fidelity = fidelity(result.cavity, target);
  } catch (const PostSelectionError& e) {
    std::cerr << e.what() << '\n';
    report.success_probability = 0.0;
    report.target_fidelity = 0.0;
    exit_code = kExitPhysics;
  }
  write_preparation_report(report,
                           (fs::path(cfg.out_dir) / "preparation.json").string());
  return exit_code;
}

int cmd_measure(const RunConfig& cfg) {
  const InitialStateParams params = to_params(cfg.state);
  const DensityMatrix rho =
      evolve_rk4(density_from_state(params.to_state(cfg.dim)),
                 cfg.measure_kappa_t, cfg.step);

  std::vector<MeasurementRecord> records;
  records.reserve(static_cast<std::size_t>(cfg.grid.nx) * cfg.grid.np);
  const WignerGrid frame{cfg.grid.x_min, cfg.grid.x_max, cfg.grid.p_min,
                         cfg.grid.p_max, cfg.grid.nx, cfg.grid.np, {}};
  // Row-major scan, x fastest; per-point seed = seed + flat index.
  std::uint64_t index = 0;
  for (int ip = 0; ip < cfg.grid.np; ++ip) {
    for (int ix = 0; ix < cfg.grid.nx; ++ix, ++index) {
      const PhasePoint pt = PhasePoint::from_xy(frame.x_at(ix), frame.p_at(ip));
      records.push_back(measured_wigner(rho, pt, cfg.shots, cfg.seed + index));
    }
  }
  write_measurement_csv(records,
                        (fs::path(cfg.out_dir) / "measurement.csv").string());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative dynamics of few-photon cavity states"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed_flag;
  std::optional<std::string> model_flag;
  std::optional<std::string> route_flag;

  std::vector<CLI::App*> commands;
  for (const std::string name :
       {"wigner", "correlations", "prepare", "measure"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed_flag, "measurement base seed");
    sub->add_option("--model", model_flag, "protocol model: paper|exact");
    sub->add_option("--route", route_flag,
                    "wigner route: closed|rho|convolution|both");
    commands.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    Validator v;
    RunConfig cfg = parse_config(command, config_path, v);
    cfg.out_dir = out_dir;
    if (seed_flag) cfg.seed = *seed_flag;
    if (model_flag) cfg.model = *model_flag;
    if (route_flag) cfg.route = *route_flag;
    v.require(cfg.model == "paper" || cfg.model == "exact",
              "model must be 'paper' or 'exact'");
    v.require(cfg.route == "closed" || cfg.route == "rho" ||
                  cfg.route == "convolution" || cfg.route == "both",
              "route must be one of closed|rho|convolution|both");
    if (!v.issues.empty()) {
      std::cerr << "invalid configuration:\n";
      for (const std::string& issue : v.issues) {
        std::cerr << "  - " << issue << '\n';
      }
      return kExitConfig;
    }

    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) {
      std::cerr << "cannot create output directory: " << cfg.out_dir << '\n';
      return kExitIo;
    }

    if (command == "wigner") return cmd_wigner(cfg);
    if (command == "correlations") return cmd_correlations(cfg);
    if (command == "prepare") return cmd_prepare(cfg);
    return cmd_measure(cfg);
  } catch (const IoError& e) {
    std::cerr << e.what() << '\n';
    return kExitIo;
  } catch (const PostSelectionError& e) {
    std::cerr << e.what() << '\n';
    return kExitPhysics;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  }
}
