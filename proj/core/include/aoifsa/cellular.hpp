#ifndef AOIFSA_CELLULAR_HPP
#define AOIFSA_CELLULAR_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>

#include "aoifsa/common.hpp"
#include "aoifsa/numerics.hpp"
#include "aoifsa/renewal.hpp"

namespace aoifsa::cellular {

using renewal::CondSuccessProb;
using renewal::ProtocolParams;

/// Poisson cellular uplink: sensor PPP of density lambda_s, fusion-center PPP
/// of density lambda_d, nearest-center association, fractional power control
/// P = P_tx * R^(alpha*epsilon). All closed forms depend on the densities only
/// through the ratio lambda_s/lambda_d. p_max_ratio = P_max/P_tx is present
/// only for the capped-power model.
struct CellularConfig {
  double lambda_s;
  double lambda_d;
  double alpha;
  double theta;
  double epsilon;
  std::optional<double> p_max_ratio;

  CellularConfig(double lambda_s_, double lambda_d_, double alpha_, double theta_,
                 double epsilon_, std::optional<double> p_max_ratio_ = std::nullopt)
      : lambda_s(lambda_s_),
        lambda_d(lambda_d_),
        alpha(alpha_),
        theta(theta_),
        epsilon(epsilon_),
        p_max_ratio(p_max_ratio_) {
    if (!(lambda_s > 0.0 && lambda_d > 0.0))
      throw std::invalid_argument("CellularConfig: densities must be > 0");
    if (!(alpha > 2.0)) throw std::invalid_argument("CellularConfig: alpha must be > 2");
    if (!(theta > 0.0)) throw std::invalid_argument("CellularConfig: theta must be > 0");
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
      throw std::invalid_argument("CellularConfig: epsilon must be in [0, 1]");
    if (p_max_ratio && !(*p_max_ratio > 0.0))
      throw std::invalid_argument("CellularConfig: p_max_ratio must be > 0");
  }

  double delta() const { return 2.0 / alpha; }
  double ratio() const { return lambda_s / lambda_d; }
};

/// Interference kernel
///   g(m, z) = (4/5) z^2 int_0^inf int_0^1 q exp(-z q s) ds dq /
///             ((m + q^(alpha(1-eps)/2) / (theta s^(alpha eps/2))) (1 - e^(-zq))),
/// where z carries the typical-link distance in units of (5/4) lambda_d pi r^2.
/// The removable q -> 0 singularity of q/(1-e^(-zq)) is evaluated via expm1.
double g_theta(double m, double z, const CellularConfig& cfg,
               const numerics::QuadratureSpec& spec = {});

/// Six-parameter generalization used by the variance kernels: the integrand
/// denominator (m + Q) of g_theta becomes (a + Q)^b / (c (d + Q)^l + rho),
/// with Q = q^(alpha(1-eps)/2) / (theta s^(alpha eps/2)). g_theta is the
/// special case (m, 1, 0, 0, 0, 1). All kernel variants share one engine.
struct BigGCoeffs {
  double a, b, c, d, l, rho;
};
double big_g_theta(const BigGCoeffs& k, double z, const CellularConfig& cfg,
                   const numerics::QuadratureSpec& spec = {});

/// Conditional success probability for fixed interferer geometry. Each pair is
/// (D_i, R_i): distance to the typical center and own association distance;
/// the association rule requires R_i <= D_i.
CondSuccessProb cond_success_prob_cellular(std::span<const std::pair<double, double>> pairs,
                                           const ProtocolParams& p, const CellularConfig& cfg,
                                           double r);

/// Spatial moments of the conditional success probability (outer integral over
/// the typical-link distance, kernels by quadrature).
AoiOutcome mean_mu_cellular(const CellularConfig& cfg, const ProtocolParams& p,
                            const numerics::QuadratureSpec& spec = {});
AoiOutcome mean_inv_mu_cellular(const CellularConfig& cfg, const ProtocolParams& p,
                                const numerics::QuadratureSpec& spec = {});
AoiOutcome mean_inv_mu_sq_cellular(const CellularConfig& cfg, const ProtocolParams& p,
                                   const numerics::QuadratureSpec& spec = {});

/// Mean AoI over the typical uplink under fractional power control.
AoiOutcome avg_aoi_cellular(const CellularConfig& cfg, const ProtocolParams& p,
                            const numerics::QuadratureSpec& spec = {});

/// Series approximation of the mean (marked-PPP independence approximation).
/// Exact at epsilon = 0; diverges exactly when the closed form does.
AoiOutcome avg_aoi_cellular_approx(const CellularConfig& cfg, const ProtocolParams& p,
                                   const numerics::SeriesSpec& spec = {});

/// Slotted-ALOHA special case (F = 1).
AoiOutcome avg_aoi_sa_cellular(const CellularConfig& cfg, double eta,
                               const numerics::QuadratureSpec& spec = {});

/// FSA-minus-SA(beta) gap for the cellular mean; FSA helps only when < 0.
double q2_cellular(const CellularConfig& cfg, const ProtocolParams& p,
                   const numerics::QuadratureSpec& spec = {});

/// Constant-power special case (epsilon = 0), in closed form with an explicit
/// infinite branch.
AoiOutcome avg_aoi_no_power_control(const CellularConfig& cfg, const ProtocolParams& p);

/// Full path inversion (epsilon = 1): the kernel loses its z dependence, so
/// the outer integral collapses and the mean is a closed exponential of one
/// double integral.
AoiOutcome avg_aoi_full_inversion(const CellularConfig& cfg, const ProtocolParams& p,
                                  const numerics::QuadratureSpec& spec = {});
AoiOutcome avg_aoi_full_inversion_approx(const CellularConfig& cfg, const ProtocolParams& p);

/// Maximum-power-constraint model: P_i = P_tx R_i^(alpha eps) below the cap
/// radius p^(1/(alpha eps)) and P_max above it. The cap radius in z units is
/// c_eps = (5/4) lambda_d pi p^(delta/eps) (p^(delta/eps) is the squared cap
/// radius, so c_eps is dimensionless like z; the bare p^(1/(alpha eps)) is
/// read as meters). Requires epsilon > 0.
AoiOutcome avg_aoi_max_power(const CellularConfig& cfg, const ProtocolParams& p,
                             const numerics::QuadratureSpec& spec = {});

/// Variance of AoI over the typical uplink, via the deconditioned moments.
AoiOutcome var_aoi_cellular(const CellularConfig& cfg, const ProtocolParams& p,
                            const numerics::QuadratureSpec& spec = {});
AoiOutcome var_aoi_sa_cellular(const CellularConfig& cfg, double eta,
                               const numerics::QuadratureSpec& spec = {});

/// The three association-distance densities: f_r is the 5/4-corrected
/// own-link distance law, f_x the exact nearest-center law, and
/// f_r_conditional the own-link law truncated to [0, D].
struct DistancePdfs {
  double lambda_d;
  double f_r(double u) const;
  double f_x(double u) const;
  double f_r_conditional(double u, double d_i) const;
};
DistancePdfs distance_pdfs(const CellularConfig& cfg);

}  // namespace aoifsa::cellular

#endif  // AOIFSA_CELLULAR_HPP
