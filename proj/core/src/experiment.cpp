#include "aoifsa/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace aoifsa::cli {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw ConfigError(what + ": trailing characters in '" + text + "'");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError(what + ": cannot parse number '" + text + "'");
  }
}

bool parse_bool(const std::string& text, const std::string& what) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "on" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "off" || t == "0" || t == "no") return false;
  throw ConfigError(what + ": expected boolean, got '" + text + "'");
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number(item, "sweep.values"));
  }
  return out;
}

std::vector<double> parse_range(const std::string& text) {
  // lo:hi:step, inclusive of hi within half a step.
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(parse_number(trim(item), "sweep.range"));
  if (parts.size() != 3 || parts[2] <= 0.0)
    throw ConfigError("sweep.range: expected lo:hi:step with step > 0");
  std::vector<double> out;
  for (double v = parts[0]; v <= parts[1] + 0.5 * parts[2]; v += parts[2]) out.push_back(v);
  return out;
}

void set_key(ExperimentConfig& cfg, const std::string& section, const std::string& key,
             const std::string& value) {
  const std::string k = lower(key);
  const std::string sec = lower(section);
  auto bad_key = [&]() -> ConfigError {
    return ConfigError("unknown config key '" + (sec.empty() ? k : sec + "." + k) + "'");
  };

  if (sec.empty()) {
    if (k == "network") {
      const std::string v = lower(trim(value));
      if (v == "bipolar") cfg.network = Network::Bipolar;
      else if (v == "cellular") cfg.network = Network::Cellular;
      else throw ConfigError("network: expected bipolar|cellular");
    } else if (k == "mode") {
      const std::string v = lower(trim(value));
      if (v == "analytic") cfg.mode = Mode::Analytic;
      else if (v == "simulate") cfg.mode = Mode::Simulate;
      else if (v == "both") cfg.mode = Mode::Both;
      else throw ConfigError("mode: expected analytic|simulate|both");
    } else {
      throw bad_key();
    }
    return;
  }
  if (sec == "bipolar") {
    if (k == "lambda") cfg.lambda = parse_number(value, "bipolar.lambda");
    else if (k == "r") cfg.r = parse_number(value, "bipolar.r");
    else throw bad_key();
    return;
  }
  if (sec == "cellular") {
    if (k == "lambda_s") cfg.lambda_s = parse_number(value, "cellular.lambda_s");
    else if (k == "lambda_d") cfg.lambda_d = parse_number(value, "cellular.lambda_d");
    else if (k == "ratio") cfg.lambda_s = parse_number(value, "cellular.ratio") * cfg.lambda_d;
    else if (k == "epsilon") cfg.epsilon = parse_number(value, "cellular.epsilon");
    else if (k == "p_max_ratio") cfg.p_max_ratio = parse_number(value, "cellular.p_max_ratio");
    else if (k == "exact") cfg.cellular_exact = parse_bool(value, "cellular.exact");
    else throw bad_key();
    return;
  }
  if (sec == "channel") {
    if (k == "alpha") cfg.alpha = parse_number(value, "channel.alpha");
    else if (k == "theta") cfg.theta = parse_theta(value);
    else throw bad_key();
    return;
  }
  if (sec == "protocol") {
    if (k == "eta") cfg.eta = parse_number(value, "protocol.eta");
    else if (k == "frame") cfg.frame_size = static_cast<int>(parse_number(value, "protocol.frame"));
    else throw bad_key();
    return;
  }
  if (sec == "sweep") {
    if (k == "axis") cfg.sweep_axis = lower(trim(value));
    else if (k == "values") cfg.sweep_values = parse_values(value);
    else if (k == "range") cfg.sweep_values = parse_range(value);
    else throw bad_key();
    return;
  }
  if (sec == "sim") {
    if (k == "realizations") cfg.sim.num_realizations = static_cast<int>(parse_number(value, "sim.realizations"));
    else if (k == "slots") cfg.sim.slots_per_realization = static_cast<std::int64_t>(parse_number(value, "sim.slots"));
    else if (k == "burn_in") cfg.sim.burn_in_successes = static_cast<int>(parse_number(value, "sim.burn_in"));
    else if (k == "window") cfg.sim.window_halfwidth = parse_number(value, "sim.window");
    else if (k == "seed") cfg.sim.seed = static_cast<std::uint64_t>(parse_number(value, "sim.seed"));
    else if (k == "threads") cfg.sim.threads = static_cast<int>(parse_number(value, "sim.threads"));
    else if (k == "torus") cfg.sim.torus_wrap = parse_bool(value, "sim.torus");
    else throw bad_key();
    return;
  }
  if (sec == "output") {
    if (k == "path") cfg.output_path = trim(value);
    else if (k == "format") {
      const std::string v = lower(trim(value));
      if (v == "csv") cfg.format = OutputFormat::Csv;
      else if (v == "json") cfg.format = OutputFormat::Json;
      else throw ConfigError("output.format: expected csv|json");
    } else if (k == "variance") {
      cfg.with_variance = parse_bool(value, "output.variance");
    } else {
      throw bad_key();
    }
    return;
  }
  throw ConfigError("unknown config section '" + sec + "'");
}

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes = {
      "eta",      "frame",   "lambda",  "r",       "alpha",      "theta",
      "lambda_s", "lambda_d", "ratio",  "epsilon", "p_max_ratio"};
  return axes;
}

void apply_axis(ExperimentConfig& cfg, const std::string& axis, double v) {
  if (axis == "eta") cfg.eta = v;
  else if (axis == "frame") cfg.frame_size = static_cast<int>(std::lround(v));
  else if (axis == "lambda") cfg.lambda = v;
  else if (axis == "r") cfg.r = v;
  else if (axis == "alpha") cfg.alpha = v;
  else if (axis == "theta") cfg.theta = v;
  else if (axis == "lambda_s") cfg.lambda_s = v;
  else if (axis == "lambda_d") cfg.lambda_d = v;
  else if (axis == "ratio") cfg.lambda_s = v * cfg.lambda_d;
  else if (axis == "epsilon") cfg.epsilon = v;
  else if (axis == "p_max_ratio") cfg.p_max_ratio = v;
  else throw ConfigError("sweep.axis: unknown axis '" + axis + "'");
}

std::optional<double> cell_of(const AoiOutcome& o) { return o.value_or_inf(); }

std::string format_cell(const std::optional<double>& v) {
  if (!v) return "";
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", *v);
  return buf;
}

}  // namespace

double parse_theta(const std::string& text) {
  std::string t = trim(text);
  const std::string tl = lower(t);
  if (tl.size() > 2 && tl.substr(tl.size() - 2) == "db") {
    const double db = parse_number(trim(t.substr(0, t.size() - 2)), "theta");
    return std::pow(10.0, db / 10.0);
  }
  const double v = parse_number(t, "theta");
  if (!(v > 0.0)) throw ConfigError("theta must be > 0");
  return v;
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    set_key(cfg, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  if (!cfg.sweep_axis.empty()) {
    if (std::find(sweep_axes().begin(), sweep_axes().end(), cfg.sweep_axis) ==
        sweep_axes().end())
      throw ConfigError("sweep.axis: unknown axis '" + cfg.sweep_axis + "'");
    if (cfg.sweep_values.empty()) throw ConfigError("sweep: axis set but no values/range");
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_override(ExperimentConfig& cfg, const std::string& dotted_key,
                    const std::string& value) {
  const size_t dot = dotted_key.find('.');
  if (dot == std::string::npos) {
    set_key(cfg, "", dotted_key, value);
  } else {
    set_key(cfg, dotted_key.substr(0, dot), dotted_key.substr(dot + 1), value);
  }
}

SweepResult run_experiment(const ExperimentConfig& base) {
  SweepResult out;
  const bool bip = base.network == Network::Bipolar;
  const bool analytic = base.mode != Mode::Simulate;
  const bool simulate = base.mode != Mode::Analytic;

  out.columns = {"eta", "frame", "alpha", "theta_linear"};
  if (bip) {
    out.columns.insert(out.columns.end(), {"lambda_per_m2", "r_m"});
  } else {
    out.columns.insert(out.columns.end(), {"ratio_s_over_d", "epsilon"});
  }
  if (analytic) {
    out.columns.insert(out.columns.end(), {"analytic_mean_slots", "analytic_var_slots2",
                                           "lower_bound_slots"});
    if (bip) {
      out.columns.insert(out.columns.end(),
                         {"q1_slots", "q2_slots2", "throughput_nats_per_slot", "optimal_frame"});
    } else {
      out.columns.insert(out.columns.end(), {"approx_mean_slots", "q2_slots"});
    }
  }
  if (simulate) {
    out.columns.insert(out.columns.end(),
                       {"sim_mean_slots", "sim_var_slots2", "sim_ci_mean_slots",
                        "sim_success_rate_per_slot", "sim_energy_per_slot_ptx",
                        "sim_inf_fraction"});
  }
  if (analytic && simulate) out.columns.push_back("rel_agreement_mean");

  std::vector<double> points = base.sweep_values;
  if (base.sweep_axis.empty()) points = {0.0};

  for (double v : points) {
    ExperimentConfig cfg = base;
    if (!base.sweep_axis.empty()) apply_axis(cfg, base.sweep_axis, v);
    const renewal::ProtocolParams p(cfg.eta, cfg.frame_size);

    std::vector<std::optional<double>> row;
    row.insert(row.end(), {cfg.eta, static_cast<double>(cfg.frame_size), cfg.alpha, cfg.theta});
    std::optional<double> a_mean, s_mean;

    if (bip) {
      row.insert(row.end(), {cfg.lambda, cfg.r});
      const auto bcfg = cfg.bipolar_config();
      if (analytic) {
        const AoiOutcome mean = bipolar::avg_aoi_bipolar(bcfg, p);
        a_mean = cell_of(mean);
        row.push_back(a_mean);
        row.push_back(cfg.with_variance ? cell_of(bipolar::var_aoi_bipolar(bcfg, p))
                                        : std::optional<double>{});
        row.push_back(bipolar::aoi_lower_bound(cfg.frame_size));
        row.push_back(bipolar::q1(bcfg, p));
        row.push_back(cell_of(bipolar::q2_bipolar(bcfg, p)));
        row.push_back(bipolar::spatial_throughput(bcfg, p));
        row.push_back(static_cast<double>(bipolar::optimal_frame(bcfg, cfg.eta)));
      }
      if (simulate) {
        const auto est = simulator::estimate(bcfg, p, cfg.sim);
        s_mean = est.stats.mean;
        row.insert(row.end(),
                   {est.stats.mean, est.stats.variance, est.stats.ci_halfwidth_mean,
                    est.success_rate, est.energy_per_slot, est.infinite_fraction});
      }
    } else {
      const auto ccfg = cfg.cellular_config();
      row.insert(row.end(), {ccfg.ratio(), cfg.epsilon});
      if (analytic) {
        AoiOutcome mean = AoiOutcome::infinite(DivergenceCause::None);
        if (!cfg.cellular_exact) {
          mean = cellular::avg_aoi_cellular_approx(ccfg, p);
        } else if (cfg.epsilon == 0.0) {
          mean = cellular::avg_aoi_no_power_control(ccfg, p);
        } else if (cfg.epsilon == 1.0) {
          mean = cellular::avg_aoi_full_inversion(ccfg, p);
        } else {
          mean = cellular::avg_aoi_cellular(ccfg, p);
        }
        a_mean = cell_of(mean);
        row.push_back(a_mean);
        row.push_back(cfg.with_variance ? cell_of(cellular::var_aoi_cellular(ccfg, p))
                                        : std::optional<double>{});
        row.push_back(bipolar::aoi_lower_bound(cfg.frame_size));
        row.push_back(cell_of(cellular::avg_aoi_cellular_approx(ccfg, p)));
        row.push_back(cellular::q2_cellular(ccfg, p));
      }
      if (simulate) {
        const auto est = simulator::estimate(ccfg, p, cfg.sim);
        s_mean = est.stats.mean;
        row.insert(row.end(),
                   {est.stats.mean, est.stats.variance, est.stats.ci_halfwidth_mean,
                    est.success_rate, est.energy_per_slot, est.infinite_fraction});
      }
    }
    if (analytic && simulate) {
      if (a_mean && s_mean && std::isfinite(*a_mean) && *a_mean != 0.0)
        row.push_back(std::abs(*s_mean - *a_mean) / std::abs(*a_mean));
      else
        row.push_back(std::nullopt);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string to_csv(const SweepResult& result) {
  std::string s;
  for (size_t c = 0; c < result.columns.size(); ++c) {
    if (c) s += ',';
    s += result.columns[c];
  }
  s += '\n';
  for (const auto& row : result.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) s += ',';
      s += format_cell(row[c]);
    }
    s += '\n';
  }
  return s;
}

SweepResult parse_csv(const std::string& text) {
  SweepResult out;
  std::stringstream ss(text);
  std::string line;
  bool header = true;
  while (std::getline(ss, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (line.back() == ',') fields.push_back("");
    if (header) {
      out.columns = fields;
      header = false;
      continue;
    }
    std::vector<std::optional<double>> row;
    for (const std::string& cell : fields) {
      const std::string t = trim(cell);
      if (t.empty()) row.push_back(std::nullopt);
      else if (t == "inf") row.push_back(std::numeric_limits<double>::infinity());
      else if (t == "-inf") row.push_back(-std::numeric_limits<double>::infinity());
      else row.push_back(parse_number(t, "csv cell"));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string to_json(const SweepResult& result) {
  nlohmann::json j;
  j["columns"] = result.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : result.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& cell : row) {
      if (!cell) r.push_back(nullptr);
      else if (std::isinf(*cell)) r.push_back(*cell > 0 ? "inf" : "-inf");
      else r.push_back(*cell);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2);
}

void write_result(const SweepResult& result, const ExperimentConfig& cfg) {
  const std::string payload =
      cfg.format == OutputFormat::Csv ? to_csv(result) : to_json(result);
  if (cfg.output_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(cfg.output_path);
  if (!out) throw IoError("cannot open output file '" + cfg.output_path + "'");
  out << payload;
  if (!out) throw IoError("write failed for '" + cfg.output_path + "'");
}

OptimalFReport optimal_f_report(const ExperimentConfig& cfg, int f_max) {
  if (cfg.network != Network::Bipolar)
    throw ConfigError("optimal-f: only the bipolar network has the framesize derivative");
  const auto bcfg = cfg.bipolar_config();
  OptimalFReport rep;
  rep.f_star = bipolar::optimal_frame(bcfg, cfg.eta, f_max);
  rep.achieved_mean =
      bipolar::avg_aoi_bipolar(bcfg, {cfg.eta, rep.f_star}).value_or_inf();

  // Locate the real root for the report (same scan as optimal_frame).
  double lo = 1.0, ylo = bipolar::y_of_f(bcfg, cfg.eta, lo);
  for (int f = 2; f <= f_max; ++f) {
    const double yhi = bipolar::y_of_f(bcfg, cfg.eta, f);
    if (ylo * yhi <= 0.0) {
      auto root = numerics::find_root_bracketed(
          [&](double x) { return bipolar::y_of_f(bcfg, cfg.eta, x); }, lo, f, 1e-9);
      if (root) {
        rep.f_root = *root;
        rep.root_found = true;
      }
      break;
    }
    lo = f;
    ylo = yhi;
  }

  rep.curve.columns = {"frame", "y_of_f", "mean_aoi_slots"};
  for (int f = 1; f <= f_max; ++f) {
    rep.curve.rows.push_back({static_cast<double>(f), bipolar::y_of_f(bcfg, cfg.eta, f),
                              bipolar::avg_aoi_bipolar(bcfg, {cfg.eta, f}).value_or_inf()});
  }
  return rep;
}

CompareReport compare_report(const ExperimentConfig& cfg, double eta_sa) {
  if (cfg.network != Network::Bipolar)
    throw ConfigError("compare: SA-to-FSA conversion schemes are bipolar results");
  if (!(eta_sa > 0.0 && eta_sa <= 1.0)) throw ConfigError("compare: eta_sa must be in (0,1]");
  const auto bcfg = cfg.bipolar_config();
  CompareReport rep;
  rep.eta_sa = eta_sa;
  rep.sa_mean = bipolar::avg_aoi_sa(bcfg, eta_sa).value_or_inf();

  if (2.0 * eta_sa <= 1.0) {
    rep.scheme_a_applicable = true;
    rep.a_eta = 2.0 * eta_sa;
    const renewal::ProtocolParams pa(rep.a_eta, 2);
    rep.a_q1 = bipolar::q1(bcfg, pa);
    rep.a_mean = bipolar::avg_aoi_bipolar(bcfg, pa).value_or_inf();
  }
  const double inv = 1.0 / eta_sa;
  if (std::abs(inv - std::round(inv)) < 1e-9 && std::round(inv) >= 1.0) {
    rep.scheme_b_applicable = true;
    rep.b_frame = static_cast<int>(std::round(inv));
    const renewal::ProtocolParams pb(1.0, rep.b_frame);
    rep.b_q1 = bipolar::q1(bcfg, pb);
    rep.b_mean = bipolar::avg_aoi_bipolar(bcfg, pb).value_or_inf();
  }
  return rep;
}

std::vector<std::string> figure_ids() {
  return {"2a", "2b", "4a", "4b", "5a", "5b", "6a", "6b", "8a", "8b", "9a", "9b", "10a", "10b"};
}

namespace {

SweepResult figure_renewal(std::uint64_t seed) {
  SweepResult out;
  out.columns = {"mu",        "eta",          "analytic_mean_slots", "analytic_second_slots2",
                 "sim_mean_slots", "sim_second_slots2", "sim_ci_mean_slots"};
  int stream = 0;
  for (double mu : {0.4, 0.6, 0.8}) {
    for (int i = 1; i <= 10; ++i) {
      const double eta = 0.1 * i;
      const renewal::ProtocolParams p(eta, 3);
      const renewal::CondSuccessProb m(mu);
      const auto sim = renewal::renewal_oracle_sim(
          p, m, 4000000, simulator::derive_seed(seed, static_cast<std::uint64_t>(stream++), 2));
      out.rows.push_back({mu, eta, renewal::cond_avg_aoi(p, m), renewal::cond_quad_aoi(p, m),
                          sim.mean, sim.second_moment, sim.ci_halfwidth_mean});
    }
  }
  return out;
}

SweepResult figure_bipolar_eta() {
  SweepResult out;
  out.columns = {"eta", "frame", "analytic_mean_slots", "analytic_var_slots2"};
  const bipolar::BipolarConfig cfg(1e-2, 10.0, 3.5, 1.0);
  for (int F : {1, 3, 5, 7}) {
    for (int i = 1; i <= 20; ++i) {
      const double eta = 0.05 * i;
      const renewal::ProtocolParams p(eta, F);
      out.rows.push_back({eta, static_cast<double>(F),
                          bipolar::avg_aoi_bipolar(cfg, p).value_or_inf(),
                          bipolar::var_aoi_bipolar(cfg, p).value_or_inf()});
    }
  }
  return out;
}

SweepResult figure_bipolar_frame() {
  SweepResult out;
  out.columns = {"lambda_per_m2", "frame", "analytic_mean_slots", "analytic_var_slots2"};
  for (double lambda : {2e-2, 1e-2, 5e-3, 5e-5}) {
    const bipolar::BipolarConfig cfg(lambda, 10.0, 3.5, 1.0);
    for (int F = 1; F <= 20; ++F) {
      const renewal::ProtocolParams p(0.8, F);
      out.rows.push_back({lambda, static_cast<double>(F),
                          bipolar::avg_aoi_bipolar(cfg, p).value_or_inf(),
                          bipolar::var_aoi_bipolar(cfg, p).value_or_inf()});
    }
  }
  return out;
}

SweepResult figure_bipolar_density() {
  SweepResult out;
  out.columns = {"lambda_per_m2", "r_m",
                 "sa_mean_slots", "fsa_mean_slots", "sa_var_slots2", "fsa_var_slots2"};
  for (double r : {10.0, 15.0}) {
    for (int i = 0; i <= 24; ++i) {
      const double lambda = std::pow(10.0, -4.0 + i * (2.7 / 24.0));  // 1e-4 .. 5e-2
      const bipolar::BipolarConfig cfg(lambda, r, 3.5, 1.0);
      const renewal::ProtocolParams fsa(0.8, 3);
      out.rows.push_back({lambda, r, bipolar::avg_aoi_sa(cfg, 0.8).value_or_inf(),
                          bipolar::avg_aoi_bipolar(cfg, fsa).value_or_inf(),
                          bipolar::var_aoi_sa(cfg, 0.8).value_or_inf(),
                          bipolar::var_aoi_bipolar(cfg, fsa).value_or_inf()});
    }
  }
  return out;
}

SweepResult figure_cellular_eta(double epsilon) {
  SweepResult out;
  out.columns = {"eta", "frame", "epsilon", "analytic_mean_slots", "approx_mean_slots"};
  for (int F : {1, 3, 5, 7}) {
    for (int i = 1; i <= 19; ++i) {
      const double eta = 0.05 * i;
      const renewal::ProtocolParams p(eta, F);
      const cellular::CellularConfig cfg(5e-3, 1e-3, 3.5, 1.0, epsilon);
      const AoiOutcome mean = epsilon == 0.0 ? cellular::avg_aoi_no_power_control(cfg, p)
                                             : cellular::avg_aoi_full_inversion(cfg, p);
      out.rows.push_back({eta, static_cast<double>(F), epsilon, mean.value_or_inf(),
                          cellular::avg_aoi_cellular_approx(cfg, p).value_or_inf()});
    }
  }
  return out;
}

SweepResult figure_cellular_epsilon(bool with_variance) {
  SweepResult out;
  out.columns = {"epsilon", "frame", "analytic_mean_slots"};
  if (with_variance) out.columns.push_back("analytic_var_slots2");
  for (int F : {1, 3, 5, 7}) {
    for (int i = 0; i <= 10; ++i) {
      const double eps = 0.1 * i;
      const cellular::CellularConfig cfg(5e-3, 1e-3, 3.5, 1.0, eps);
      const renewal::ProtocolParams p(0.4, F);
      std::vector<std::optional<double>> row = {
          eps, static_cast<double>(F), cellular::avg_aoi_cellular(cfg, p).value_or_inf()};
      if (with_variance) row.push_back(cellular::var_aoi_cellular(cfg, p).value_or_inf());
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

SweepResult figure_cellular_frame(double epsilon) {
  SweepResult out;
  out.columns = {"ratio_s_over_d", "frame", "epsilon", "analytic_mean_slots"};
  for (double ratio : {2.0, 4.0, 6.0, 8.0}) {
    for (int F = 1; F <= 15; ++F) {
      const cellular::CellularConfig cfg(ratio * 1e-3, 1e-3, 3.5, 1.0, epsilon);
      const renewal::ProtocolParams p(0.4, F);
      const AoiOutcome mean = epsilon == 0.0 ? cellular::avg_aoi_no_power_control(cfg, p)
                                             : cellular::avg_aoi_full_inversion(cfg, p);
      out.rows.push_back({ratio, static_cast<double>(F), epsilon, mean.value_or_inf()});
    }
  }
  return out;
}

}  // namespace

SweepResult run_figure(const std::string& id, std::uint64_t seed) {
  if (id == "2a" || id == "2b") return figure_renewal(seed);
  if (id == "4a" || id == "4b") return figure_bipolar_eta();
  if (id == "5a" || id == "5b") return figure_bipolar_frame();
  if (id == "6a" || id == "6b") return figure_bipolar_density();
  if (id == "8a") return figure_cellular_eta(0.0);
  if (id == "8b") return figure_cellular_eta(1.0);
  if (id == "9a") return figure_cellular_epsilon(false);
  if (id == "9b") return figure_cellular_epsilon(true);
  if (id == "10a") return figure_cellular_frame(0.0);
  if (id == "10b") return figure_cellular_frame(1.0);
  throw ConfigError("unknown figure id '" + id + "'");
}

}  // namespace aoifsa::cli
