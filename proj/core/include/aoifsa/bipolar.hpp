#ifndef AOIFSA_BIPOLAR_HPP
#define AOIFSA_BIPOLAR_HPP

#include <span>
#include <stdexcept>

#include "aoifsa/common.hpp"
#include "aoifsa/numerics.hpp"
#include "aoifsa/renewal.hpp"

namespace aoifsa::bipolar {

using renewal::CondSuccessProb;
using renewal::ProtocolParams;

/// Poisson bipolar network: transmitter PPP of density lambda, each paired
/// with a dedicated receiver at fixed distance r. theta is the linear SIR
/// decoding threshold.
struct BipolarConfig {
  double lambda;  // transmitters per m^2
  double r;       // pair distance, meters
  double alpha;   // path-loss exponent, > 2
  double theta;   // linear SIR threshold

  BipolarConfig(double lambda_, double r_, double alpha_, double theta_)
      : lambda(lambda_), r(r_), alpha(alpha_), theta(theta_) {
    if (lambda < 0.0) throw std::invalid_argument("BipolarConfig: lambda must be >= 0");
    if (!(r > 0.0)) throw std::invalid_argument("BipolarConfig: r must be > 0");
    if (!(alpha > 2.0)) throw std::invalid_argument("BipolarConfig: alpha must be > 2");
    if (!(theta > 0.0)) throw std::invalid_argument("BipolarConfig: theta must be > 0");
  }

  double delta() const { return 2.0 / alpha; }
};

/// Spatial contention coefficient C = lambda*pi*r^2*theta^delta*
/// Gamma(1-delta)*Gamma(1+delta); the exponent scale in every closed form.
struct SpatialContention {
  double c;
};

SpatialContention contention(const BipolarConfig& cfg);

/// Conditional success probability for a fixed set of interferer distances:
/// prod_i (1 - (eta/F) / (1 + d_i^alpha / (theta r^alpha))).
CondSuccessProb cond_success_prob_bipolar(std::span<const double> interferer_distances,
                                          const ProtocolParams& p, const BipolarConfig& cfg);

/// Spatial moments of the conditional success probability.
double mean_mu(const BipolarConfig& cfg, const ProtocolParams& p);
AoiOutcome mean_inv_mu(const BipolarConfig& cfg, const ProtocolParams& p);
AoiOutcome mean_inv_mu_sq(const BipolarConfig& cfg, const ProtocolParams& p,
                          const numerics::SeriesSpec& spec = {});

/// Spatially averaged mean AoI. Infinite at the eta = F = 1 boundary when
/// interference is present.
AoiOutcome avg_aoi_bipolar(const BipolarConfig& cfg, const ProtocolParams& p);

/// Slotted-ALOHA special case (F = 1).
AoiOutcome avg_aoi_sa(const BipolarConfig& cfg, double eta);

/// Excess of the FSA mean over SA run at the effective rate beta = eta/F:
/// ((F^2-1)/12) beta exp(-C beta) + (1-F)/2. FSA beats SA iff this is < 0.
double q1(const BipolarConfig& cfg, const ProtocolParams& p);

/// Parameter-free lower bound on the mean AoI: 2 sqrt((F^2-1)/12) + (1-F)/2.
double aoi_lower_bound(int frame_size);

/// Derivative of the mean AoI with respect to a real-valued framesize;
/// the optimal framesize solves y(F) = 0.
double y_of_f(const BipolarConfig& cfg, double eta, double f);

/// Integer framesize minimizing the mean AoI: root of y on [1, f_max] rounded
/// to the better of floor/ceil, or 1 when y never changes sign.
int optimal_frame(const BipolarConfig& cfg, double eta, int f_max = 200);

/// Spatial throughput (eta/F) exp(-C eta/F) log(1+theta), nats/slot/link.
double spatial_throughput(const BipolarConfig& cfg, const ProtocolParams& p);

/// Mean transmit power consumption eta * p_tx / F.
double tx_power(const ProtocolParams& p, double p_tx);

/// Spatially averaged variance of AoI, assembled from the deconditioned
/// moments of mu (series-backed second inverse moment).
AoiOutcome var_aoi_bipolar(const BipolarConfig& cfg, const ProtocolParams& p,
                           const numerics::SeriesSpec& spec = {});

AoiOutcome var_aoi_sa(const BipolarConfig& cfg, double eta,
                      const numerics::SeriesSpec& spec = {});

/// Excess of the FSA variance over SA at rate beta; FSA stabilizes age
/// only when this is < 0.
AoiOutcome q2_bipolar(const BipolarConfig& cfg, const ProtocolParams& p,
                      const numerics::SeriesSpec& spec = {});

}  // namespace aoifsa::bipolar

#endif  // AOIFSA_BIPOLAR_HPP
