#include "aoifsa/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

namespace aoifsa::simulator {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::uint64_t kSaltTopology = 0x746f706f;
constexpr std::uint64_t kSaltTemporal = 0x74656d70;
constexpr std::uint64_t kSaltResample = 0x72736d70;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double torus_dist(const Point& a, const Point& b, double halfwidth, bool wrap) {
  double dx = std::abs(a.x - b.x);
  double dy = std::abs(a.y - b.y);
  if (wrap) {
    const double period = 2.0 * halfwidth;
    dx = std::min(dx, period - dx);
    dy = std::min(dy, period - dy);
  }
  return std::hypot(dx, dy);
}

// Triangular sums of ages u - s_prev for u in [lo, hi].
struct AgeSums {
  double sum = 0.0;
  double sum_sq = 0.0;
  void add(std::int64_t lo, std::int64_t hi, std::int64_t s_prev) {
    if (hi < lo) return;
    const double a = static_cast<double>(lo - s_prev);
    const double b = static_cast<double>(hi - s_prev);
    const double n = b - a + 1.0;
    sum += 0.5 * n * (a + b);
    auto sq = [](double m) { return m * (m + 1.0) * (2.0 * m + 1.0) / 6.0; };
    sum_sq += sq(b) - sq(a - 1.0);
  }
};

// Slot-level protocol run against precomputed interference weights
// w_i = theta * P_i * d_i^(-alpha) / S0 (success iff h0 > sum of active h_i w_i).
//
// Only the typical link's transmission slots need an SIR draw: conditioned on
// the typical picking some slot, each interferer lands in that same slot
// independently with probability eta/F (frame activation times the uniform
// slot pick), independently across frames, which is the exact per-slot law of
// the protocol.
RunResult run_core(const std::vector<double>& weights, double eta, int frame_size,
                   double typical_power, const SimSpec& spec, std::uint64_t temporal_seed) {
  const int F = frame_size;
  const double beta = eta / F;
  const std::int64_t frames = spec.slots_per_realization / F;
  const std::int64_t horizon = frames * F;
  const int n = static_cast<int>(weights.size());

  std::mt19937_64 rng(temporal_seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> slot_pick(1, F);
  std::exponential_distribution<double> expo(1.0);
  std::binomial_distribution<int> active_count(n, beta);
  std::uniform_int_distribution<int> pick_from;  // re-parameterized per draw

  std::vector<int> idx(weights.size());
  std::iota(idx.begin(), idx.end(), 0);

  RunResult out;
  AgeSums sums;
  std::int64_t window_start = 0;
  std::int64_t last_delivery = 0;
  std::int64_t deliveries = 0;

  for (std::int64_t w = 0; w < frames; ++w) {
    if (unif(rng) >= eta) continue;
    const int slot = slot_pick(rng);
    ++out.attempts;

    double interference = 0.0;
    if (n > 0) {
      const int k = active_count(rng);
      for (int j = 0; j < k; ++j) {
        // partial Fisher-Yates: uniform k-subset of interferers
        const int r = j + pick_from(rng, std::uniform_int_distribution<int>::param_type(
                                             0, n - 1 - j));
        std::swap(idx[static_cast<size_t>(j)], idx[static_cast<size_t>(r)]);
        interference += expo(rng) * weights[static_cast<size_t>(idx[static_cast<size_t>(j)])];
      }
    }
    const bool success = expo(rng) > interference;
    if (!success) continue;

    const std::int64_t s = w * F + slot;
    ++deliveries;
    if (deliveries == spec.burn_in_successes) {
      window_start = s + 1;
      last_delivery = s;
      continue;
    }
    if (deliveries > spec.burn_in_successes) {
      sums.add(std::max(last_delivery + 1, window_start), s, last_delivery);
      last_delivery = s;
      ++out.successes;
    }
  }

  out.slots = horizon;
  out.energy_per_slot =
      typical_power * static_cast<double>(out.attempts) / static_cast<double>(horizon);

  if (window_start == 0 || window_start > horizon) {
    out.infinite_sample = true;
    return out;
  }
  sums.add(std::max(last_delivery + 1, window_start), horizon, last_delivery);

  const double n_slots = static_cast<double>(horizon - window_start + 1);
  out.stats.sample_count = horizon - window_start + 1;
  out.stats.mean = sums.sum / n_slots;
  out.stats.second_moment = sums.sum_sq / n_slots;
  out.stats.variance =
      std::max(0.0, out.stats.second_moment - out.stats.mean * out.stats.mean);
  out.stats.low_sample_warning = out.successes < 100;
  return out;
}

int resolve_threads(const SimSpec& spec) {
  if (spec.threads > 0) return spec.threads;
  if (const char* env = std::getenv("AOIFSA_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

double auto_window(double density, double fallback_scale) {
  // 15x the mean nearest-neighbor spacing 0.5/sqrt(lambda).
  if (density > 0.0) return 7.5 / std::sqrt(density);
  return fallback_scale;
}

struct Moments {
  double mean = 0.0;
  double ci = 0.0;
};

Moments batch_means(const std::vector<double>& xs) {
  Moments m;
  const int n = static_cast<int>(xs.size());
  if (n == 0) return m;
  m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const int b = std::min(100, n);
  if (b < 2) return m;
  const int per = n / b;
  std::vector<double> bm(static_cast<size_t>(b), 0.0);
  for (int i = 0; i < b * per; ++i) bm[static_cast<size_t>(i / per)] += xs[static_cast<size_t>(i)];
  double mean_bm = 0.0;
  for (double& v : bm) {
    v /= per;
    mean_bm += v;
  }
  mean_bm /= b;
  double var = 0.0;
  for (double v : bm) var += (v - mean_bm) * (v - mean_bm);
  var /= (b - 1);
  m.ci = 1.96 * std::sqrt(var / b);
  return m;
}

template <typename Sampler, typename Runner>
EstimateResult estimate_impl(const SimSpec& spec, Sampler&& sample, Runner&& run) {
  const int n = spec.num_realizations;
  std::vector<RunResult> results(static_cast<size_t>(n));
  const int threads = std::min(resolve_threads(spec), std::max(1, n));

  auto worker = [&](int t) {
    for (int i = t; i < n; i += threads) {
      const NetworkRealization real = sample(derive_seed(spec.seed, i, kSaltTopology));
      results[static_cast<size_t>(i)] = run(real, derive_seed(spec.seed, i, kSaltTemporal));
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  EstimateResult agg;
  std::vector<double> means, seconds, succ_rates, energies;
  std::int64_t infinite = 0;
  for (const RunResult& r : results) {
    succ_rates.push_back(static_cast<double>(r.successes) / static_cast<double>(r.slots));
    energies.push_back(r.energy_per_slot);
    if (r.infinite_sample) {
      ++infinite;
      continue;
    }
    means.push_back(r.stats.mean);
    seconds.push_back(r.stats.second_moment);
  }
  const Moments m_mean = batch_means(means);
  const Moments m_sec = batch_means(seconds);
  const Moments m_succ = batch_means(succ_rates);
  const Moments m_en = batch_means(energies);

  agg.realizations_used = static_cast<int>(means.size());
  agg.stats.mean = m_mean.mean;
  agg.stats.second_moment = m_sec.mean;
  agg.stats.variance = std::max(0.0, m_sec.mean - m_mean.mean * m_mean.mean);
  agg.stats.ci_halfwidth_mean = m_mean.ci;
  agg.stats.sample_count = agg.realizations_used;
  agg.stats.low_sample_warning = agg.realizations_used < n / 2;
  agg.ci_halfwidth_second = m_sec.ci;
  agg.success_rate = m_succ.mean;
  agg.ci_halfwidth_success = m_succ.ci;
  agg.energy_per_slot = m_en.mean;
  agg.ci_halfwidth_energy = m_en.ci;
  agg.infinite_fraction = static_cast<double>(infinite) / std::max(1, n);
  agg.non_comparable = agg.infinite_fraction > 0.20;
  return agg;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t salt) {
  return splitmix64(splitmix64(master ^ (stream * 0xA24BAED4963EE407ull)) ^
                    (salt * 0x9FB21C651E98DF25ull));
}

double PowerModel::power(double own_link_distance, double alpha) const {
  switch (kind) {
    case Kind::Constant: return 1.0;
    case Kind::Fractional: return std::pow(own_link_distance, alpha * epsilon);
    case Kind::Capped:
      return std::min(std::pow(own_link_distance, alpha * epsilon), p_max_ratio);
  }
  return 1.0;
}

NetworkRealization sample_bipolar(const bipolar::BipolarConfig& cfg, double window_halfwidth,
                                  std::uint64_t seed, bool torus_wrap) {
  if (cfg.r > window_halfwidth)
    throw std::invalid_argument("sample_bipolar: window smaller than the pair distance");
  NetworkRealization real;
  real.kind = NetworkKind::Bipolar;
  real.window_halfwidth = window_halfwidth;
  real.seed = seed;
  real.torus_wrap = torus_wrap;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-window_halfwidth, window_halfwidth);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);

  const double area = 4.0 * window_halfwidth * window_halfwidth;
  const double expected = cfg.lambda * area;
  real.low_count_warning = cfg.lambda > 0.0 && expected < 50.0;

  int count = 0;
  if (cfg.lambda > 0.0) {
    std::poisson_distribution<int> pois(expected);
    count = pois(rng);
  }
  real.transmitters.reserve(static_cast<size_t>(count) + 1);
  real.receivers.reserve(static_cast<size_t>(count) + 1);
  for (int i = 0; i < count; ++i) {
    const Point tx{coord(rng), coord(rng)};
    const double phi = angle(rng);
    real.transmitters.push_back(tx);
    real.receivers.push_back({tx.x + cfg.r * std::cos(phi), tx.y + cfg.r * std::sin(phi)});
    real.association.push_back(i);
    real.link_distances.push_back(cfg.r);
    real.dist_to_origin.push_back(torus_dist(tx, {0.0, 0.0}, window_halfwidth, torus_wrap));
  }
  // Typical pair: receiver pinned at the origin (reduced Palm).
  const double phi = angle(rng);
  real.transmitters.push_back({cfg.r * std::cos(phi), cfg.r * std::sin(phi)});
  real.receivers.push_back({0.0, 0.0});
  real.association.push_back(count);
  real.link_distances.push_back(cfg.r);
  real.dist_to_origin.push_back(cfg.r);
  real.typical_index = count;
  return real;
}

NetworkRealization sample_cellular(const cellular::CellularConfig& cfg, double window_halfwidth,
                                   std::uint64_t seed, bool torus_wrap,
                                   bool palm_center_at_origin) {
  constexpr int kMaxResamples = 1000;
  for (int attempt = 0;; ++attempt) {
    if (attempt > kMaxResamples)
      throw std::runtime_error("sample_cellular: typical cell empty after max resamples");
    const std::uint64_t sub_seed =
        attempt == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(attempt), kSaltResample);
    NetworkRealization real;
    real.kind = NetworkKind::Cellular;
    real.window_halfwidth = window_halfwidth;
    real.seed = sub_seed;
    real.torus_wrap = torus_wrap;
    real.resample_count = attempt;

    std::mt19937_64 rng(sub_seed);
    std::uniform_real_distribution<double> coord(-window_halfwidth, window_halfwidth);
    const double area = 4.0 * window_halfwidth * window_halfwidth;
    real.low_count_warning = cfg.lambda_s * area < 50.0;

    if (palm_center_at_origin) real.receivers.push_back({0.0, 0.0});
    std::poisson_distribution<int> pois_d(cfg.lambda_d * area);
    const int nd = pois_d(rng);
    for (int i = 0; i < nd; ++i) real.receivers.push_back({coord(rng), coord(rng)});
    if (real.receivers.empty()) continue;  // no centers at all: resample

    std::poisson_distribution<int> pois_s(cfg.lambda_s * area);
    const int ns = pois_s(rng);
    real.transmitters.reserve(static_cast<size_t>(ns));
    for (int i = 0; i < ns; ++i) real.transmitters.push_back({coord(rng), coord(rng)});

    // Nearest-center association.
    real.association.resize(real.transmitters.size());
    real.link_distances.resize(real.transmitters.size());
    real.dist_to_origin.resize(real.transmitters.size());
    std::vector<int> origin_cell;
    for (size_t i = 0; i < real.transmitters.size(); ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (size_t c = 0; c < real.receivers.size(); ++c) {
        const double d =
            torus_dist(real.transmitters[i], real.receivers[c], window_halfwidth, torus_wrap);
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(c);
        }
      }
      real.association[i] = best;
      real.link_distances[i] = best_d;
      real.dist_to_origin[i] =
          torus_dist(real.transmitters[i], {0.0, 0.0}, window_halfwidth, torus_wrap);
      if (palm_center_at_origin && best == 0) origin_cell.push_back(static_cast<int>(i));
    }

    if (!palm_center_at_origin) {
      real.typical_index = -1;
      return real;
    }
    if (!origin_cell.empty()) {
      std::uniform_int_distribution<size_t> pick(0, origin_cell.size() - 1);
      real.typical_index = origin_cell[pick(rng)];
      return real;
    }
  }
}

RunResult run_fsa(const NetworkRealization& real, const ProtocolParams& p,
                  const bipolar::BipolarConfig& cfg, const SimSpec& spec) {
  const size_t n = real.transmitters.size();
  std::vector<double> weights;
  weights.reserve(n - 1);
  const double s0 = std::pow(cfg.r, -cfg.alpha);
  for (size_t i = 0; i < n; ++i) {
    if (static_cast<int>(i) == real.typical_index) continue;
    weights.push_back(cfg.theta * std::pow(real.dist_to_origin[i], -cfg.alpha) / s0);
  }
  return run_core(weights, p.eta, p.frame_size, 1.0, spec,
                  derive_seed(real.seed ^ spec.seed, 0, kSaltTemporal));
}

RunResult run_fsa(const NetworkRealization& real, const ProtocolParams& p,
                  const cellular::CellularConfig& cfg, const SimSpec& spec) {
  if (real.typical_index < 0)
    throw std::invalid_argument("run_fsa: realization has no typical link");
  const PowerModel pm = PowerModel::for_config(cfg);
  const size_t n = real.transmitters.size();
  const double r = real.dist_to_origin[static_cast<size_t>(real.typical_index)];
  const double p0 = pm.power(r, cfg.alpha);
  const double s0 = p0 * std::pow(r, -cfg.alpha);
  std::vector<double> weights;
  weights.reserve(n - 1);
  for (size_t i = 0; i < n; ++i) {
    if (static_cast<int>(i) == real.typical_index) continue;
    const double pi = pm.power(real.link_distances[i], cfg.alpha);
    weights.push_back(cfg.theta * pi * std::pow(real.dist_to_origin[i], -cfg.alpha) / s0);
  }
  return run_core(weights, p.eta, p.frame_size, p0, spec,
                  derive_seed(real.seed ^ spec.seed, 0, kSaltTemporal));
}

EstimateResult estimate(const bipolar::BipolarConfig& cfg, const ProtocolParams& p,
                        const SimSpec& spec) {
  const double w = spec.window_halfwidth > 0.0 ? spec.window_halfwidth
                                               : auto_window(cfg.lambda, 10.0 * cfg.r);
  return estimate_impl(
      spec,
      [&](std::uint64_t s) { return sample_bipolar(cfg, w, s, spec.torus_wrap); },
      [&](const NetworkRealization& real, std::uint64_t ts) {
        SimSpec rs = spec;
        rs.seed = ts;
        return run_fsa(real, p, cfg, rs);
      });
}

EstimateResult estimate(const cellular::CellularConfig& cfg, const ProtocolParams& p,
                        const SimSpec& spec) {
  const double w = spec.window_halfwidth > 0.0
                       ? spec.window_halfwidth
                       : auto_window(cfg.lambda_s, 7.5 / std::sqrt(cfg.lambda_d));
  return estimate_impl(
      spec,
      [&](std::uint64_t s) { return sample_cellular(cfg, w, s, spec.torus_wrap); },
      [&](const NetworkRealization& real, std::uint64_t ts) {
        SimSpec rs = spec;
        rs.seed = ts;
        return run_fsa(real, p, cfg, rs);
      });
}

}  // namespace aoifsa::simulator
