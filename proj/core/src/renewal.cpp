#include "aoifsa/renewal.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace aoifsa::renewal {

double cond_avg_aoi(const ProtocolParams& p, const CondSuccessProb& mu) {
  const double F = p.frame_size;
  const double em = p.eta * mu.mu;
  return (F * F - 1.0) / (12.0 * F) * em + F / em + (1.0 - F) / 2.0;
}

double cond_quad_aoi(const ProtocolParams& p, const CondSuccessProb& mu) {
  const double F = p.frame_size;
  const double em = p.eta * mu.mu;
  return 2.0 * F * F / (em * em) - F * (2.0 * F - 1.0) / em +
         (F * F - 1.0) / (12.0 * F) * em + F * (F - 1.0) / 2.0;
}

double cond_var_aoi(const ProtocolParams& p, const CondSuccessProb& mu) {
  const double m = cond_avg_aoi(p, mu);
  return cond_quad_aoi(p, mu) - m * m;
}

GeometricMoments geometric_moments(double p_succ) {
  if (!(p_succ > 0.0 && p_succ <= 1.0))
    throw std::invalid_argument("geometric_moments: p must be in (0, 1]");
  const double p = p_succ;
  return {1.0 / p, (2.0 - p) / (p * p), (p * p - 6.0 * p + 6.0) / (p * p * p)};
}

namespace {

// Accumulates sum(u - s_prev) and sum((u - s_prev)^2) for u in [lo, hi].
struct AgeWindowSums {
  double sum = 0.0;
  double sum_sq = 0.0;
  void add(std::int64_t lo, std::int64_t hi, std::int64_t s_prev) {
    if (hi < lo) return;
    const double a = static_cast<double>(lo - s_prev);
    const double b = static_cast<double>(hi - s_prev);
    const double n = b - a + 1.0;
    sum += 0.5 * n * (a + b);
    // sum of squares a^2 + ... + b^2 via the cube difference formula
    auto sq = [](double m) { return m * (m + 1.0) * (2.0 * m + 1.0) / 6.0; };
    sum_sq += sq(b) - sq(a - 1.0);
  }
};

}  // namespace

AoiStats renewal_oracle_sim(const ProtocolParams& p, const CondSuccessProb& mu,
                            std::int64_t num_slots, std::uint64_t seed) {
  const int F = p.frame_size;
  if (num_slots < 10.0 * F / (p.eta * mu.mu))
    throw std::invalid_argument("renewal_oracle_sim: num_slots too small for meaningful stats");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> slot_pick(1, F);

  constexpr int kBurnInSuccesses = 100;
  constexpr int kBatches = 100;

  // First pass over frames: collect delivery slots during burn-in, then
  // stream interval contributions into batches.
  const std::int64_t total_frames = num_slots / F;
  const std::int64_t horizon = total_frames * F;

  std::int64_t deliveries_seen = 0;
  std::int64_t window_start = 0;  // first slot included in stats (set after burn-in)
  std::int64_t last_delivery = 0;
  std::int64_t post_burn_successes = 0;

  std::vector<AgeWindowSums> batch(kBatches);
  AgeWindowSums total;
  std::int64_t batch_len = 0;

  auto add_window = [&](std::int64_t lo, std::int64_t hi, std::int64_t s_prev) {
    // Clamp to the stats window and split across batch boundaries.
    lo = std::max(lo, window_start);
    hi = std::min(hi, horizon);
    if (hi < lo) return;
    total.add(lo, hi, s_prev);
    std::int64_t u = lo;
    while (u <= hi) {
      const std::int64_t bi = std::min<std::int64_t>((u - window_start) / batch_len, kBatches - 1);
      const std::int64_t bhi = std::min(hi, window_start + (bi + 1) * batch_len - 1);
      batch[static_cast<size_t>(bi)].add(u, bhi, s_prev);
      u = bhi + 1;
    }
  };

  for (std::int64_t w = 0; w < total_frames; ++w) {
    if (unif(rng) >= p.eta) continue;
    const int n = slot_pick(rng);
    const bool ok = unif(rng) < mu.mu;
    if (!ok) continue;
    const std::int64_t s = w * F + n;  // delivery slot (1-based)
    ++deliveries_seen;
    if (deliveries_seen == kBurnInSuccesses) {
      window_start = s + 1;
      if (window_start <= horizon) {
        batch_len = std::max<std::int64_t>(1, (horizon - window_start + 1) / kBatches);
      }
      last_delivery = s;
      continue;
    }
    if (deliveries_seen > kBurnInSuccesses && batch_len > 0) {
      add_window(last_delivery + 1, s, last_delivery);
      last_delivery = s;
      ++post_burn_successes;
    }
  }

  AoiStats stats;
  if (batch_len == 0) {
    // Burn-in never completed: report the raw prefix average with a warning.
    stats.low_sample_warning = true;
    AgeWindowSums all;
    all.add(1, horizon, 0);
    stats.sample_count = horizon;
    stats.mean = all.sum / static_cast<double>(horizon);
    stats.second_moment = all.sum_sq / static_cast<double>(horizon);
    stats.variance = std::max(0.0, stats.second_moment - stats.mean * stats.mean);
    return stats;
  }

  // Tail stretch after the last delivery still counts toward the average.
  add_window(last_delivery + 1, horizon, last_delivery);

  const double n_slots = static_cast<double>(horizon - window_start + 1);
  stats.sample_count = horizon - window_start + 1;
  stats.mean = total.sum / n_slots;
  stats.second_moment = total.sum_sq / n_slots;
  stats.variance = std::max(0.0, stats.second_moment - stats.mean * stats.mean);
  stats.low_sample_warning = post_burn_successes < 100;

  // Batch-means CI (renewal structure makes batches nearly independent).
  double bm_mean = 0.0;
  std::vector<double> bm(kBatches);
  for (int b = 0; b < kBatches; ++b) {
    const double len = static_cast<double>(
        b == kBatches - 1 ? (horizon - window_start + 1) - batch_len * (kBatches - 1)
                          : batch_len);
    bm[static_cast<size_t>(b)] = batch[static_cast<size_t>(b)].sum / len;
    bm_mean += bm[static_cast<size_t>(b)];
  }
  bm_mean /= kBatches;
  double var_bm = 0.0;
  for (double v : bm) var_bm += (v - bm_mean) * (v - bm_mean);
  var_bm /= (kBatches - 1);
  stats.ci_halfwidth_mean = 1.96 * std::sqrt(var_bm / kBatches);
  return stats;
}

}  // namespace aoifsa::renewal
