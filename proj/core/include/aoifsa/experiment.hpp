#ifndef AOIFSA_EXPERIMENT_HPP
#define AOIFSA_EXPERIMENT_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aoifsa/bipolar.hpp"
#include "aoifsa/cellular.hpp"
#include "aoifsa/simulator.hpp"

namespace aoifsa::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { Analytic, Simulate, Both };
enum class Network { Bipolar, Cellular };
enum class OutputFormat { Csv, Json };

/// One experiment: a network config, protocol point or sweep, and run mode.
/// Populated from the key/value config file (see parse_config_file) with
/// command-line overrides applied on top.
struct ExperimentConfig {
  Network network = Network::Bipolar;

  // bipolar parameters
  double lambda = 1e-2;
  double r = 10.0;

  // cellular parameters
  double lambda_s = 5e-3;
  double lambda_d = 1e-3;
  double epsilon = 0.0;
  std::optional<double> p_max_ratio;

  // shared channel parameters
  double alpha = 3.5;
  double theta = 1.0;  // stored linear; the config file accepts "x dB" too

  double eta = 0.8;
  int frame_size = 3;

  Mode mode = Mode::Analytic;
  std::string sweep_axis;  // empty = single point
  std::vector<double> sweep_values;
  bool with_variance = true;
  bool cellular_exact = true;  // false = series approximation for cellular means

  simulator::SimSpec sim;
  std::string output_path;  // empty = stdout
  OutputFormat format = OutputFormat::Csv;

  bipolar::BipolarConfig bipolar_config() const {
    return {lambda, r, alpha, theta};
  }
  cellular::CellularConfig cellular_config() const {
    return {lambda_s, lambda_d, alpha, theta, epsilon, p_max_ratio};
  }
};

/// Tabular result: header row plus cells; absent values are nullopt and
/// infinities survive the CSV round trip as the "inf" token.
struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
};

/// theta values: bare numbers are linear, a "dB" suffix converts.
double parse_theta(const std::string& text);

/// Key/value config with [section] headers and # comments; keys are
/// documented in the README. Throws ConfigError on unknown keys or bad values.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

/// Applies one "section.key=value" override.
void apply_override(ExperimentConfig& cfg, const std::string& dotted_key,
                    const std::string& value);

/// Runs the configured sweep (analytic columns, simulation columns, or both
/// with a relative-agreement column).
SweepResult run_experiment(const ExperimentConfig& cfg);

std::string to_csv(const SweepResult& result);
SweepResult parse_csv(const std::string& text);
std::string to_json(const SweepResult& result);

/// Writes to cfg.output_path (or stdout when empty) in cfg.format.
void write_result(const SweepResult& result, const ExperimentConfig& cfg);

/// Optimal-framesize report: root of the framesize derivative, the chosen
/// integer, the achieved mean, and samples of the derivative curve.
struct OptimalFReport {
  int f_star = 1;
  double f_root = 0.0;  // real-valued root, 0 when none
  bool root_found = false;
  double achieved_mean = 0.0;
  SweepResult curve;  // columns: F, y(F), mean_aoi(F)
};
OptimalFReport optimal_f_report(const ExperimentConfig& cfg, int f_max = 50);

/// SA-to-FSA conversion report: the doubled-rate F=2 scheme and the
/// every-frame 1/eta scheme, with their mean-gap terms and mean AoI deltas.
struct CompareReport {
  double eta_sa = 0.0;
  double sa_mean = 0.0;  // +inf when divergent

  bool scheme_a_applicable = false;
  double a_eta = 0.0, a_q1 = 0.0, a_mean = 0.0;

  bool scheme_b_applicable = false;
  int b_frame = 0;
  double b_q1 = 0.0, b_mean = 0.0;
};
CompareReport compare_report(const ExperimentConfig& cfg, double eta_sa);

/// Canned parameter studies reproducing the reference figures at desk scale;
/// ids: 2a 2b 4a 4b 5a 5b 6a 6b 8a 8b 9a 9b 10a 10b.
std::vector<std::string> figure_ids();
SweepResult run_figure(const std::string& id, std::uint64_t seed = 1);

}  // namespace aoifsa::cli

#endif  // AOIFSA_EXPERIMENT_HPP
