#ifndef AOIFSA_RENEWAL_HPP
#define AOIFSA_RENEWAL_HPP

#include <cstdint>
#include <stdexcept>

namespace aoifsa::renewal {

/// Frame-slotted-ALOHA schedule: each source decides once per frame, with
/// probability eta, to generate-and-transmit in a uniformly chosen slot of
/// that frame. frame_size = 1 is plain slotted ALOHA.
struct ProtocolParams {
  double eta;
  int frame_size;

  ProtocolParams(double eta_, int frame_size_) : eta(eta_), frame_size(frame_size_) {
    if (!(eta > 0.0 && eta <= 1.0))
      throw std::invalid_argument("ProtocolParams: eta must be in (0, 1]");
    if (frame_size < 1) throw std::invalid_argument("ProtocolParams: frame_size must be >= 1");
  }

  /// Effective per-slot updating rate beta = eta / F.
  double beta() const { return eta / frame_size; }
};

/// Per-attempt success probability of the typical link for a fixed topology.
/// mu = 0 would make every AoI moment infinite and is rejected here; the
/// analytic modules expose that limit through their own typed results.
struct CondSuccessProb {
  double mu;

  explicit CondSuccessProb(double mu_) : mu(mu_) {
    if (!(mu > 0.0 && mu <= 1.0))
      throw std::invalid_argument("CondSuccessProb: mu must be in (0, 1]");
  }
};

/// Time-averaged AoI statistics (slots). CI fields are filled by simulations
/// only; analytic paths leave them at zero.
struct AoiStats {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
  double ci_halfwidth_mean = 0.0;
  std::int64_t sample_count = 0;
  bool low_sample_warning = false;
};

/// Average AoI given the topology-conditioned success probability:
///   (F^2-1)/(12F) * eta*mu + F/(eta*mu) + (1-F)/2.
double cond_avg_aoi(const ProtocolParams& p, const CondSuccessProb& mu);

/// Second moment of AoI under the same conditioning:
///   2F^2/(eta*mu)^2 - F(2F-1)/(eta*mu) + (F^2-1)/(12F)*eta*mu + F(F-1)/2.
double cond_quad_aoi(const ProtocolParams& p, const CondSuccessProb& mu);

/// cond_quad_aoi - cond_avg_aoi^2; non-negative.
double cond_var_aoi(const ProtocolParams& p, const CondSuccessProb& mu);

/// First three raw moments of the geometric distribution on {1,2,...}:
/// 1/p, (2-p)/p^2, (p^2-6p+6)/p^3.
struct GeometricMoments {
  double m1, m2, m3;
};
GeometricMoments geometric_moments(double p_succ);

/// Discrete-time Monte Carlo of the per-frame protocol with a fixed success
/// probability: per frame, Bernoulli(eta) activation, uniform slot pick,
/// Bernoulli(mu) delivery; AoI climbs one per slot and restarts at 1 on the
/// slot after a delivery. Returns the time average over num_slots after a
/// burn-in of the first 100 deliveries, with a 100-batch batch-means CI.
AoiStats renewal_oracle_sim(const ProtocolParams& p, const CondSuccessProb& mu,
                            std::int64_t num_slots, std::uint64_t seed);

}  // namespace aoifsa::renewal

#endif  // AOIFSA_RENEWAL_HPP
