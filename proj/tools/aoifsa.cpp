// Command-line front end: evaluate the closed-form AoI results, run the
// spatial-temporal simulator, locate optimal framesizes, compare SA-to-FSA
// conversions, and emit the canned figure datasets as CSV.
//
// Exit codes: 0 ok, 2 config error, 3 numerical failure, 4 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aoifsa/experiment.hpp"

namespace cli = aoifsa::cli;

namespace {

cli::ExperimentConfig load_config(const std::string& config_path,
                                  const std::vector<std::string>& overrides) {
  cli::ExperimentConfig cfg;
  if (!config_path.empty()) cfg = cli::parse_config_file(config_path);
  for (const std::string& ov : overrides) {
    const size_t eq = ov.find('=');
    if (eq == std::string::npos)
      throw cli::ConfigError("--set expects section.key=value, got '" + ov + "'");
    cli::apply_override(cfg, ov.substr(0, eq), ov.substr(eq + 1));
  }
  return cfg;
}

void apply_common(cli::ExperimentConfig& cfg, const std::string& output, int threads,
                  std::uint64_t seed) {
  if (!output.empty()) cfg.output_path = output;
  if (threads > 0) cfg.sim.threads = threads;
  if (seed != 0) cfg.sim.seed = seed;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const cli::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age-of-information analysis and simulation for frame-slotted ALOHA networks"};
  app.require_subcommand(1);

  std::string config_path, output;
  std::vector<std::string> overrides;
  int threads = 0;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "experiment config file");
  app.add_option("--set", overrides, "override a config key (section.key=value)")
      ->take_all();
  app.add_option("-o,--output", output, "output path (default: stdout)");
  app.add_option("--threads", threads,
                 "simulation worker threads (default: AOIFSA_THREADS or all cores)");
  app.add_option("--seed", seed, "master RNG seed");

  auto* analytic = app.add_subcommand("analytic", "evaluate closed-form results over a sweep");
  auto* simulate = app.add_subcommand("simulate", "run the Monte Carlo simulator over a sweep");
  auto* optimal_f = app.add_subcommand("optimal-f", "find the AoI-minimizing framesize");
  int opt_f_max = 50;
  optimal_f->add_option("--f-max", opt_f_max, "largest framesize considered");
  auto* compare = app.add_subcommand("compare", "SA-to-FSA conversion schemes at a given rate");
  double eta_sa = 0.25;
  compare->add_option("--eta-sa", eta_sa, "slotted-ALOHA update rate to convert")->required();
  auto* figures = app.add_subcommand("figures", "emit the canned figure datasets as CSV");
  std::vector<std::string> figure_list;
  std::string figure_dir = "figures";
  figures->add_option("ids", figure_list, "figure ids (default: all)");
  figures->add_option("--dir", figure_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  return run_guarded([&]() -> int {
    cli::ExperimentConfig cfg = load_config(config_path, overrides);
    apply_common(cfg, output, threads, seed);

    if (analytic->parsed() || simulate->parsed()) {
      cfg.mode = analytic->parsed()
                     ? (cfg.mode == cli::Mode::Both ? cli::Mode::Both : cli::Mode::Analytic)
                     : cli::Mode::Simulate;
      if (simulate->parsed() && cfg.mode != cli::Mode::Simulate) cfg.mode = cli::Mode::Both;
      const cli::SweepResult result = cli::run_experiment(cfg);
      cli::write_result(result, cfg);
      return 0;
    }

    if (optimal_f->parsed()) {
      const cli::OptimalFReport rep = cli::optimal_f_report(cfg, opt_f_max);
      if (rep.root_found)
        std::printf("derivative root F* = %.6f\n", rep.f_root);
      else
        std::printf("no derivative root in [1, %d]; framing does not help\n", opt_f_max);
      std::printf("optimal integer framesize: %d\n", rep.f_star);
      std::printf("achieved mean AoI: %.10g slots\n", rep.achieved_mean);
      cli::ExperimentConfig out_cfg = cfg;
      if (!out_cfg.output_path.empty()) {
        cli::write_result(rep.curve, out_cfg);
        std::printf("curve samples written to %s\n", out_cfg.output_path.c_str());
      }
      return 0;
    }

    if (compare->parsed()) {
      const cli::CompareReport rep = cli::compare_report(cfg, eta_sa);
      std::printf("SA at eta = %.6g: mean AoI %.10g slots\n", rep.eta_sa, rep.sa_mean);
      if (rep.scheme_a_applicable)
        std::printf("scheme a (eta = %.6g, F = 2): Q1 = %.10g, mean %.10g (delta %.10g)\n",
                    rep.a_eta, rep.a_q1, rep.a_mean, rep.a_mean - rep.sa_mean);
      else
        std::printf("scheme a inapplicable (2*eta_sa > 1)\n");
      if (rep.scheme_b_applicable)
        std::printf("scheme b (eta = 1, F = %d): Q1 = %.10g, mean %.10g (delta %.10g)\n",
                    rep.b_frame, rep.b_q1, rep.b_mean, rep.b_mean - rep.sa_mean);
      else
        std::printf("scheme b inapplicable (1/eta_sa not an integer)\n");
      return 0;
    }

    if (figures->parsed()) {
      std::vector<std::string> ids = figure_list;
      if (ids.empty()) ids = cli::figure_ids();
      std::filesystem::create_directories(figure_dir);
      for (const std::string& id : ids) {
        const cli::SweepResult result = cli::run_figure(id, cfg.sim.seed);
        const std::string path = figure_dir + "/fig" + id + ".csv";
        std::ofstream out(path);
        if (!out) throw cli::IoError("cannot open '" + path + "'");
        out << cli::to_csv(result);
        std::printf("wrote %s (%zu rows)\n", path.c_str(), result.rows.size());
      }
      return 0;
    }
    return 2;
  });
}
