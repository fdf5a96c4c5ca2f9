#include "aoifsa/bipolar.hpp"

#include <algorithm>
#include <cmath>

namespace aoifsa::bipolar {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Exponent of E[1/mu]: C*beta*(1-beta)^(delta-1). Infinite at beta = 1 with
// interference present; exactly 0 when C = 0.
bool inv_mu_exponent(const BipolarConfig& cfg, double beta, double* out) {
  const double c = contention(cfg).c;
  if (c == 0.0) {
    *out = 0.0;
    return true;
  }
  if (beta >= 1.0) return false;
  *out = c * beta * std::pow(1.0 - beta, cfg.delta() - 1.0);
  return true;
}

// Series sum_{k>=1} (k+1) binom(delta-1, k-1) (-beta)^k appearing in the
// exponent of E[1/mu^2]. Negative for beta in (0,1); diverges at beta = 1.
numerics::SeriesResult inv_mu_sq_series(double delta, double beta,
                                        const numerics::SeriesSpec& spec) {
  return numerics::sum_series(
      [delta, beta](int i) {
        const int k = i + 1;
        return (k + 1) * numerics::gen_binomial(delta - 1.0, k - 1) *
               std::pow(-beta, k);
      },
      spec);
}

}  // namespace

SpatialContention contention(const BipolarConfig& cfg) {
  const double d = cfg.delta();
  const double c = cfg.lambda * kPi * cfg.r * cfg.r * std::pow(cfg.theta, d) *
                   numerics::gamma_fn(1.0 - d) * numerics::gamma_fn(1.0 + d);
  return {c};
}

CondSuccessProb cond_success_prob_bipolar(std::span<const double> interferer_distances,
                                          const ProtocolParams& p, const BipolarConfig& cfg) {
  const double beta = p.beta();
  const double theta_r_alpha = cfg.theta * std::pow(cfg.r, cfg.alpha);
  double mu = 1.0;
  for (double d : interferer_distances) {
    if (!(d > 0.0))
      throw std::invalid_argument("cond_success_prob_bipolar: distances must be > 0");
    mu *= 1.0 - beta / (1.0 + std::pow(d, cfg.alpha) / theta_r_alpha);
  }
  return CondSuccessProb(mu);
}

double mean_mu(const BipolarConfig& cfg, const ProtocolParams& p) {
  return std::exp(-contention(cfg).c * p.beta());
}

AoiOutcome mean_inv_mu(const BipolarConfig& cfg, const ProtocolParams& p) {
  double e;
  if (!inv_mu_exponent(cfg, p.beta(), &e))
    return AoiOutcome::infinite(DivergenceCause::EtaEqualsFrame);
  return AoiOutcome::finite(std::exp(e));
}

AoiOutcome mean_inv_mu_sq(const BipolarConfig& cfg, const ProtocolParams& p,
                          const numerics::SeriesSpec& spec) {
  const double c = contention(cfg).c;
  if (c == 0.0) return AoiOutcome::finite(1.0);
  const auto s = inv_mu_sq_series(cfg.delta(), p.beta(), spec);
  if (s.diverged) return AoiOutcome::infinite(DivergenceCause::DivergentSeries);
  return AoiOutcome::finite(std::exp(-c * s.value));
}

AoiOutcome avg_aoi_bipolar(const BipolarConfig& cfg, const ProtocolParams& p) {
  const double F = p.frame_size;
  const double beta = p.beta();
  double inv_exp;
  if (!inv_mu_exponent(cfg, beta, &inv_exp))
    return AoiOutcome::infinite(DivergenceCause::EtaEqualsFrame);
  const double value = F / p.eta * std::exp(inv_exp) +
                       (F * F - 1.0) * p.eta / (12.0 * F) * mean_mu(cfg, p) +
                       (1.0 - F) / 2.0;
  return AoiOutcome::finite(value);
}

AoiOutcome avg_aoi_sa(const BipolarConfig& cfg, double eta) {
  return avg_aoi_bipolar(cfg, ProtocolParams(eta, 1));
}

double q1(const BipolarConfig& cfg, const ProtocolParams& p) {
  const double F = p.frame_size;
  const double beta = p.beta();
  return (F * F - 1.0) / 12.0 * beta * std::exp(-contention(cfg).c * beta) +
         (1.0 - F) / 2.0;
}

double aoi_lower_bound(int frame_size) {
  const double F = frame_size;
  return 2.0 * std::sqrt((F * F - 1.0) / 12.0) + (1.0 - F) / 2.0;
}

double y_of_f(const BipolarConfig& cfg, double eta, double f) {
  if (!(f >= 1.0)) throw std::invalid_argument("y_of_f: F must be >= 1");
  const double c = contention(cfg).c;
  const double d = cfg.delta();
  const double beta = eta / f;
  const double one_m = 1.0 - beta;
  const double inv_exp = c * beta * std::pow(one_m, d - 1.0);
  const double first =
      (1.0 / eta + c * std::pow(one_m, d - 2.0) * (eta * d - f) / (f * f)) * std::exp(inv_exp);
  const double second = ((f * f + 1.0) * f + (f * f - 1.0) * c * eta) /
                        (12.0 * f * f * f) * eta * std::exp(-c * beta);
  return first + second - 0.5;
}

int optimal_frame(const BipolarConfig& cfg, double eta, int f_max) {
  auto y = [&](double f) { return y_of_f(cfg, eta, f); };

  // Coarse scan for a sign change, then refine; the mean at eta = F = 1 may
  // be infinite, so comparisons use value_or_inf.
  double lo = 1.0;
  double ylo = y(lo);
  double root = -1.0;
  if (ylo == 0.0) root = lo;
  for (int f = 2; f <= f_max && root < 0.0; ++f) {
    const double yhi = y(f);
    if (ylo * yhi <= 0.0) {
      auto r = numerics::find_root_bracketed(y, lo, f, 1e-9);
      if (r) root = *r;
      break;
    }
    lo = f;
    ylo = yhi;
  }
  if (root < 0.0) return 1;

  const int fl = std::max(1, static_cast<int>(std::floor(root)));
  const int fc = std::min(f_max, static_cast<int>(std::ceil(root)));
  const double vl = avg_aoi_bipolar(cfg, ProtocolParams(eta, fl)).value_or_inf();
  const double vc = avg_aoi_bipolar(cfg, ProtocolParams(eta, fc)).value_or_inf();
  return vl <= vc ? fl : fc;
}

double spatial_throughput(const BipolarConfig& cfg, const ProtocolParams& p) {
  const double beta = p.beta();
  return beta * std::exp(-contention(cfg).c * beta) * std::log1p(cfg.theta);
}

double tx_power(const ProtocolParams& p, double p_tx) { return p.eta * p_tx / p.frame_size; }

AoiOutcome var_aoi_bipolar(const BipolarConfig& cfg, const ProtocolParams& p,
                           const numerics::SeriesSpec& spec) {
  const double F = p.frame_size;
  const double eta = p.eta;

  const AoiOutcome m_inv = mean_inv_mu(cfg, p);
  if (m_inv.is_infinite()) return m_inv;
  const AoiOutcome m_inv_sq = mean_inv_mu_sq(cfg, p, spec);
  if (m_inv_sq.is_infinite()) return m_inv_sq;
  const double m1 = mean_mu(cfg, p);

  const double second = 2.0 * F * F / (eta * eta) * m_inv_sq.value() -
                        F * (2.0 * F - 1.0) / eta * m_inv.value() +
                        (F * F - 1.0) * eta / (12.0 * F) * m1 + F * (F - 1.0) / 2.0;
  const double mean = (F * F - 1.0) * eta / (12.0 * F) * m1 + F / eta * m_inv.value() +
                      (1.0 - F) / 2.0;
  return AoiOutcome::finite(second - mean * mean);
}

AoiOutcome var_aoi_sa(const BipolarConfig& cfg, double eta, const numerics::SeriesSpec& spec) {
  return var_aoi_bipolar(cfg, ProtocolParams(eta, 1), spec);
}

AoiOutcome q2_bipolar(const BipolarConfig& cfg, const ProtocolParams& p,
                      const numerics::SeriesSpec& spec) {
  (void)spec;
  const double F = p.frame_size;
  const double beta = p.beta();

  const AoiOutcome m_inv = mean_inv_mu(cfg, p);
  if (m_inv.is_infinite()) return m_inv;
  const double m1 = mean_mu(cfg, p);

  // FSA-minus-SA(beta) variance gap; the inverse-square moments cancel
  // because they depend on (eta, F) only through beta.
  const double a = (F * F - 1.0) * beta / 12.0;
  const double value = -(a * m1) * (a * m1) - (F * F - 1.0) / 6.0 * m1 * m_inv.value() +
                       a * F * m1 - (F - 1.0) / beta * m_inv.value() +
                       (F * F - 1.0) / 4.0;
  return AoiOutcome::finite(value);
}

}  // namespace aoifsa::bipolar
