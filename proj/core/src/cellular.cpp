#include "aoifsa/cellular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace aoifsa::cellular {

namespace {

constexpr double kPi = 3.14159265358979323846;

double omega_delta(const CellularConfig& cfg) {
  const double d = cfg.delta();
  return std::pow(cfg.theta, d) * numerics::gamma_fn(1.0 - d) * numerics::gamma_fn(1.0 + d);
}

// The kernels integrate the typical-link distance in z = (5/4) lambda_d pi r^2
// units, i.e. against the 5/4-corrected distance law; mapping the exact
// Rayleigh law into the same units folds a 4/5 onto the density ratio, which
// is what makes the epsilon = 0 closed form and the kernel route coincide.
double folded_ratio(const CellularConfig& cfg) { return 0.8 * cfg.ratio(); }

// q/(1 - e^(-zq)); expm1 keeps the q -> 0 limit (1/z + q/2 + ...) stable.
double q_over_one_minus_exp(double q, double z) {
  const double x = z * q;
  if (x < 1e-12) return 1.0 / z + 0.5 * q;
  return q / (-std::expm1(-x));
}

double int_pow(double base, double expo) {
  if (expo == 0.0) return 1.0;
  if (expo == 1.0) return base;
  if (expo == 2.0) return base * base;
  if (expo == -1.0) return 1.0 / base;
  return std::pow(base, expo);
}

// Breakpoint mesh for the inner s integral: graded toward 0 (kernel
// structure) and truncated at the e^(-Zs) scale so the mass stays visible to
// the panels at any Z = zq. extra < 0 means no extra breakpoint.
std::vector<double> inner_mesh(double big_z, double extra) {
  const double s_max = std::min(1.0, 45.0 / std::max(big_z, 1e-12));
  std::vector<double> bps;
  for (double f : {0.0, 1e-6, 1e-4, 1e-2, 0.1, 0.4, 0.7, 1.0}) bps.push_back(s_max * f);
  for (double s : {1e-6, 1e-4, 1e-2, 0.1, 0.5}) {
    if (s < s_max) bps.push_back(s);
  }
  if (extra > 0.0 && extra < s_max) bps.push_back(extra);
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  return bps;
}

// The kernels are positive with scales varying over many orders of q, so the
// nested integrals run on relative tolerance alone.
numerics::QuadratureSpec relative_only(const numerics::QuadratureSpec& spec, double rel,
                                       int max_sub) {
  numerics::QuadratureSpec s = spec;
  s.abs_tol = 1e-300;
  s.rel_tol = rel;
  s.max_subdivisions = max_sub;
  return s;
}

// Shared engine for every interference kernel:
//   (4/5) z^2 int dq int ds  q e^(-zqs) num(Q) / (den(Q) (1 - e^(-zq)))
// with Q = q^(alpha(1-eps)/2) / (theta s^(alpha eps/2)),
//      den = (a + Q)^b, num = c (d + Q)^l + rho.
double kernel_engine(const BigGCoeffs& k, double z, const CellularConfig& cfg,
                     const numerics::QuadratureSpec& spec) {
  const double eps = cfg.epsilon;
  const double qexp = cfg.alpha * (1.0 - eps) / 2.0;
  const double sexp = cfg.alpha * eps / 2.0;

  // a = 0 arises only at the eta = F = 1 boundary; the q -> 0 behavior
  // num/Q^b ~ q^(-b*qexp) then decides integrability outright.
  if (k.a <= 0.0) {
    const double num0 = k.c * ((k.d > 0.0 || k.l == 0.0) ? int_pow(k.d, k.l) : 0.0) + k.rho;
    if (num0 > 0.0 && k.b * qexp >= 1.0) return std::numeric_limits<double>::infinity();
  }

  const numerics::QuadratureSpec inner =
      relative_only(spec, spec.rel_tol / 8.0, std::max(64, spec.max_subdivisions / 8));
  const numerics::QuadratureSpec outer_spec =
      relative_only(spec, spec.rel_tol, spec.max_subdivisions);

  auto outer = [&](double q) {
    const double cq = int_pow(q, qexp) / cfg.theta;
    auto inner_f = [&](double s) {
      const double Q = (sexp == 0.0) ? cq : cq / int_pow(s, sexp);
      const double num = k.c * int_pow(k.d + Q, k.l) + k.rho;
      const double den = int_pow(k.a + Q, k.b);
      return std::exp(-z * q * s) * num / den;
    };
    const std::vector<double> mesh = inner_mesh(z * q, -1.0);
    double j = 0.0;
    for (size_t i = 0; i + 1 < mesh.size(); ++i)
      j += numerics::quad_finite(inner_f, mesh[i], mesh[i + 1], inner).value;
    return q_over_one_minus_exp(q, z) * j;
  };

  const numerics::QuadResult r = numerics::quad_semi_infinite_algebraic(outer, outer_spec);
  if (r.diverged) return std::numeric_limits<double>::infinity();
  return 0.8 * z * z * r.value;
}

// z integral of exp(-z + sign * mult * kernel(z)). For the growing-exponent
// sign the tail is probed on a geometric z grid first; an exponent that does
// not eventually decay faster than -1e-6 per unit z is reported divergent
// rather than returned as an astronomically large number.
AoiOutcome z_moment_integral(double mult, int sign,
                             const std::function<double(double)>& kernel,
                             const numerics::QuadratureSpec& spec) {
  if (sign > 0 && mult > 0.0) {
    double z1 = 32.0;
    double phi1 = -z1 + mult * kernel(z1);
    if (!std::isfinite(phi1)) return AoiOutcome::infinite(DivergenceCause::DivergentIntegral);
    bool decays = false;
    for (int i = 0; i < 16; ++i) {
      const double z2 = z1 * 2.0;
      const double phi2 = -z2 + mult * kernel(z2);
      if (!std::isfinite(phi2)) return AoiOutcome::infinite(DivergenceCause::DivergentIntegral);
      const double slope = (phi2 - phi1) / (z2 - z1);
      if (slope < -0.01) {
        decays = true;
        break;
      }
      if (z2 > 1e6 && slope >= -1e-6)
        return AoiOutcome::infinite(DivergenceCause::DivergentIntegral);
      z1 = z2;
      phi1 = phi2;
    }
    if (!decays && !(phi1 < 0.0))
      return AoiOutcome::infinite(DivergenceCause::DivergentIntegral);
  }

  auto f = [&](double z) {
    const double kv = kernel(z);
    if (!std::isfinite(kv))
      return sign > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    return std::exp(-z + sign * mult * kv);
  };
  const numerics::QuadResult r = numerics::quad_semi_infinite(f, spec);
  if (r.diverged || !std::isfinite(r.value))
    return AoiOutcome::infinite(DivergenceCause::DivergentIntegral);
  return AoiOutcome::finite(r.value);
}

AoiOutcome moment_from_kernel(const CellularConfig& cfg, const ProtocolParams& p, int sign,
                              const BigGCoeffs& coeffs, const numerics::QuadratureSpec& spec) {
  const double mult = cfg.ratio() * p.beta();
  auto kern = [&](double z) { return kernel_engine(coeffs, z, cfg, spec); };
  return z_moment_integral(mult, sign, kern, spec);
}

}  // namespace

double g_theta(double m, double z, const CellularConfig& cfg,
               const numerics::QuadratureSpec& spec) {
  if (z < 0.0) throw std::invalid_argument("g_theta: z must be >= 0");
  if (z == 0.0) return 0.0;
  return kernel_engine({m, 1.0, 0.0, 0.0, 0.0, 1.0}, z, cfg, spec);
}

double big_g_theta(const BigGCoeffs& k, double z, const CellularConfig& cfg,
                   const numerics::QuadratureSpec& spec) {
  if (z < 0.0) throw std::invalid_argument("big_g_theta: z must be >= 0");
  if (z == 0.0) return 0.0;
  return kernel_engine(k, z, cfg, spec);
}

CondSuccessProb cond_success_prob_cellular(std::span<const std::pair<double, double>> pairs,
                                           const ProtocolParams& p, const CellularConfig& cfg,
                                           double r) {
  if (!(r > 0.0)) throw std::invalid_argument("cond_success_prob_cellular: r must be > 0");
  const double beta = p.beta();
  const double sig = cfg.theta * std::pow(r, cfg.alpha * (1.0 - cfg.epsilon));
  double mu = 1.0;
  for (const auto& [d_i, r_i] : pairs) {
    if (!(r_i > 0.0 && d_i > 0.0))
      throw std::invalid_argument("cond_success_prob_cellular: distances must be > 0");
    if (r_i > d_i * (1.0 + 1e-12))
      throw std::invalid_argument(
          "cond_success_prob_cellular: association requires R_i <= D_i");
    const double t = std::pow(d_i, cfg.alpha) / (sig * std::pow(r_i, cfg.alpha * cfg.epsilon));
    mu *= 1.0 - beta / (1.0 + t);
  }
  return CondSuccessProb(mu);
}

AoiOutcome mean_mu_cellular(const CellularConfig& cfg, const ProtocolParams& p,
                            const numerics::QuadratureSpec& spec) {
  return moment_from_kernel(cfg, p, -1, {1.0, 1.0, 0.0, 0.0, 0.0, 1.0}, spec);
}

AoiOutcome mean_inv_mu_cellular(const CellularConfig& cfg, const ProtocolParams& p,
                                const numerics::QuadratureSpec& spec) {
  const double m = 1.0 - p.beta();
  return moment_from_kernel(cfg, p, +1, {m, 1.0, 0.0, 0.0, 0.0, 1.0}, spec);
}

AoiOutcome mean_inv_mu_sq_cellular(const CellularConfig& cfg, const ProtocolParams& p,
                                   const numerics::QuadratureSpec& spec) {
  const double m = 1.0 - p.beta();
  // num = 2 (m + Q) + beta = 2 - beta + 2Q over den (m + Q)^2.
  return moment_from_kernel(cfg, p, +1, {m, 2.0, 2.0, m, 1.0, p.beta()}, spec);
}

AoiOutcome avg_aoi_cellular(const CellularConfig& cfg, const ProtocolParams& p,
                            const numerics::QuadratureSpec& spec) {
  const double F = p.frame_size;
  const AoiOutcome inv = mean_inv_mu_cellular(cfg, p, spec);
  if (inv.is_infinite()) return inv;
  const AoiOutcome m1 = mean_mu_cellular(cfg, p, spec);
  const double value = (F * F - 1.0) * p.eta / (12.0 * F) * m1.value() +
                       F / p.eta * inv.value() + (1.0 - F) / 2.0;
  return AoiOutcome::finite(value);
}

AoiOutcome avg_aoi_cellular_approx(const CellularConfig& cfg, const ProtocolParams& p,
                                   const numerics::SeriesSpec& spec) {
  const double F = p.frame_size;
  const double beta = p.beta();
  const double eps = cfg.epsilon;
  const double A = (F * F - 1.0) * p.eta / (12.0 * F);
  const double B = F / p.eta;

  if (beta >= 1.0) return AoiOutcome::infinite(DivergenceCause::EtaEqualsFrame);
  const double c1 = folded_ratio(cfg) * beta * omega_delta(cfg) *
                    numerics::gamma_fn(1.0 + eps);
  const double c2 = c1 * std::pow(1.0 - beta, cfg.delta() - 1.0);
  const double log_c1 = c1 > 0.0 ? std::log(c1) : -std::numeric_limits<double>::infinity();
  const double log_c2 = c2 > 0.0 ? std::log(c2) : -std::numeric_limits<double>::infinity();

  auto term = [&](int n) {
    if (n == 0) return A + B;
    const double lg = std::lgamma(1.0 + (1.0 - eps) * n) - std::lgamma(n + 1.0);
    const double ta = std::exp(lg + n * log_c1) * ((n % 2 == 0) ? A : -A);
    const double tb = std::exp(lg + n * log_c2) * B;
    return ta + tb;
  };
  const numerics::SeriesResult s = numerics::sum_series(term, spec);
  if (s.diverged) return AoiOutcome::infinite(DivergenceCause::DivergentSeries);
  return AoiOutcome::finite(s.value + (1.0 - F) / 2.0);
}

AoiOutcome avg_aoi_sa_cellular(const CellularConfig& cfg, double eta,
                               const numerics::QuadratureSpec& spec) {
  return avg_aoi_cellular(cfg, ProtocolParams(eta, 1), spec);
}

double q2_cellular(const CellularConfig& cfg, const ProtocolParams& p,
                   const numerics::QuadratureSpec& spec) {
  const double F = p.frame_size;
  const double beta = p.beta();
  const AoiOutcome m1 = mean_mu_cellular(cfg, p, spec);
  return (F * F - 1.0) / 12.0 * beta * m1.value() + (1.0 - F) / 2.0;
}

AoiOutcome avg_aoi_no_power_control(const CellularConfig& cfg, const ProtocolParams& p) {
  if (cfg.epsilon != 0.0)
    throw std::invalid_argument("avg_aoi_no_power_control: requires epsilon = 0");
  const double F = p.frame_size;
  const double beta = p.beta();
  const double A = (F * F - 1.0) * p.eta / (12.0 * F);
  const double B = F / p.eta;
  const double contention = folded_ratio(cfg) * beta * omega_delta(cfg);

  if (beta >= 1.0) return AoiOutcome::infinite(DivergenceCause::EtaEqualsFrame);
  const double pole = contention * std::pow(1.0 - beta, cfg.delta() - 1.0);
  if (pole >= 1.0) return AoiOutcome::infinite(DivergenceCause::ContentionTooHigh);
  return AoiOutcome::finite(B / (1.0 - pole) + A / (1.0 + contention) + (1.0 - F) / 2.0);
}

AoiOutcome avg_aoi_full_inversion(const CellularConfig& cfg, const ProtocolParams& p,
                                  const numerics::QuadratureSpec& spec) {
  if (cfg.epsilon != 1.0)
    throw std::invalid_argument("avg_aoi_full_inversion: requires epsilon = 1");
  const double F = p.frame_size;
  const double beta = p.beta();
  const double mult = cfg.ratio() * beta;
  // At epsilon = 1 the kernel is z-free, so the outer distance integral
  // collapses; evaluate at z = 1.
  const double g_one = g_theta(1.0, 1.0, cfg, spec);
  const double g_inv = g_theta(1.0 - beta, 1.0, cfg, spec);
  if (!std::isfinite(g_inv) || !std::isfinite(g_one))
    return AoiOutcome::infinite(DivergenceCause::DivergentIntegral);
  const double value = (F * F - 1.0) * p.eta / (12.0 * F) * std::exp(-mult * g_one) +
                       F / p.eta * std::exp(mult * g_inv) + (1.0 - F) / 2.0;
  return AoiOutcome::finite(value);
}

AoiOutcome avg_aoi_full_inversion_approx(const CellularConfig& cfg, const ProtocolParams& p) {
  if (cfg.epsilon != 1.0)
    throw std::invalid_argument("avg_aoi_full_inversion_approx: requires epsilon = 1");
  const double F = p.frame_size;
  const double beta = p.beta();
  if (beta >= 1.0) return AoiOutcome::infinite(DivergenceCause::EtaEqualsFrame);
  const double c1 = folded_ratio(cfg) * beta * omega_delta(cfg);
  const double c2 = c1 * std::pow(1.0 - beta, cfg.delta() - 1.0);
  const double value = (F * F - 1.0) * p.eta / (12.0 * F) * std::exp(-c1) +
                       F / p.eta * std::exp(c2) + (1.0 - F) / 2.0;
  return AoiOutcome::finite(value);
}

AoiOutcome avg_aoi_max_power(const CellularConfig& cfg, const ProtocolParams& p,
                             const numerics::QuadratureSpec& spec) {
  if (!cfg.p_max_ratio)
    throw std::invalid_argument("avg_aoi_max_power: p_max_ratio not set");
  if (!(cfg.epsilon > 0.0))
    throw std::invalid_argument("avg_aoi_max_power: requires epsilon > 0");

  const double F = p.frame_size;
  const double beta = p.beta();
  const double eps = cfg.epsilon;
  const double qexp = cfg.alpha * (1.0 - eps) / 2.0;
  const double sexp = cfg.alpha * eps / 2.0;  // = eps/delta
  const double pr = *cfg.p_max_ratio;
  // Cap radius in z units: c_eps = (5/4) lambda_d pi p^(delta/eps) is the
  // image of the cap distance p^(1/(alpha*eps)) under z = (5/4) lambda_d pi r^2.
  const double c_eps = std::pow(pr, cfg.delta() / eps);
  const double mult = cfg.ratio() * beta;

  // Piecewise interference-to-signal ratio: the per-interferer power is
  // R^(alpha eps) below the cap distance and p above it, and the typical
  // link's own power follows the same rule (z above or below c_eps).
  auto kernel = [&](double z, double m) {
    const bool typical_capped = z >= c_eps;
    auto outer = [&](double q) {
      const double cq = int_pow(q, qexp) / cfg.theta;
      const double qa2 = std::pow(q, cfg.alpha / 2.0) / cfg.theta;
      const double s_star = std::clamp(c_eps / (z * q), 0.0, 1.0);
      auto t_eff = [&](double s) {
        const bool interferer_capped = s >= s_star;
        if (!typical_capped) {
          if (!interferer_capped) return (sexp == 0.0) ? cq : cq / int_pow(s, sexp);
          return qa2 * std::pow(z / c_eps, sexp);
        }
        if (!interferer_capped) return qa2 * std::pow(c_eps / (s * q * z), sexp);
        return qa2;
      };
      auto inner_f = [&](double s) { return std::exp(-z * q * s) / (m + t_eff(s)); };
      const numerics::QuadratureSpec inner =
          relative_only(spec, spec.rel_tol / 8.0, std::max(64, spec.max_subdivisions / 8));
      // Graded mesh with the cap kink s_star as an explicit breakpoint.
      const std::vector<double> mesh = inner_mesh(z * q, s_star);
      double j = 0.0;
      for (size_t i = 0; i + 1 < mesh.size(); ++i)
        j += numerics::quad_finite(inner_f, mesh[i], mesh[i + 1], inner).value;
      return q_over_one_minus_exp(q, z) * j;
    };
    const numerics::QuadResult r = numerics::quad_semi_infinite_algebraic(
        outer, relative_only(spec, spec.rel_tol, spec.max_subdivisions));
    if (r.diverged) return std::numeric_limits<double>::infinity();
    return 0.8 * z * z * r.value;
  };

  auto mean_kernel = [&](double z) { return kernel(z, 1.0); };
  auto inv_kernel = [&](double z) { return kernel(z, 1.0 - beta); };

  const AoiOutcome inv = z_moment_integral(mult, +1, inv_kernel, spec);
  if (inv.is_infinite()) return inv;
  const AoiOutcome m1 = z_moment_integral(mult, -1, mean_kernel, spec);
  const double value = (F * F - 1.0) * p.eta / (12.0 * F) * m1.value() +
                       F / p.eta * inv.value() + (1.0 - F) / 2.0;
  return AoiOutcome::finite(value);
}

AoiOutcome var_aoi_cellular(const CellularConfig& cfg, const ProtocolParams& p,
                            const numerics::QuadratureSpec& spec) {
  const double F = p.frame_size;
  const double eta = p.eta;

  const AoiOutcome inv = mean_inv_mu_cellular(cfg, p, spec);
  if (inv.is_infinite()) return inv;
  const AoiOutcome inv_sq = mean_inv_mu_sq_cellular(cfg, p, spec);
  if (inv_sq.is_infinite()) return inv_sq;
  const AoiOutcome m1o = mean_mu_cellular(cfg, p, spec);
  const double m1 = m1o.value();

  const double second = 2.0 * F * F / (eta * eta) * inv_sq.value() -
                        F * (2.0 * F - 1.0) / eta * inv.value() +
                        (F * F - 1.0) * eta / (12.0 * F) * m1 + F * (F - 1.0) / 2.0;
  const double mean = (F * F - 1.0) * eta / (12.0 * F) * m1 + F / eta * inv.value() +
                      (1.0 - F) / 2.0;
  return AoiOutcome::finite(second - mean * mean);
}

AoiOutcome var_aoi_sa_cellular(const CellularConfig& cfg, double eta,
                               const numerics::QuadratureSpec& spec) {
  return var_aoi_cellular(cfg, ProtocolParams(eta, 1), spec);
}

double DistancePdfs::f_r(double u) const {
  if (u < 0.0) return 0.0;
  return 2.5 * lambda_d * kPi * u * std::exp(-1.25 * lambda_d * kPi * u * u);
}

double DistancePdfs::f_x(double u) const {
  if (u < 0.0) return 0.0;
  return 2.0 * kPi * lambda_d * u * std::exp(-lambda_d * kPi * u * u);
}

double DistancePdfs::f_r_conditional(double u, double d_i) const {
  if (u < 0.0 || u > d_i) return 0.0;
  const double norm = -std::expm1(-1.25 * lambda_d * kPi * d_i * d_i);
  return f_r(u) / norm;
}

DistancePdfs distance_pdfs(const CellularConfig& cfg) { return DistancePdfs{cfg.lambda_d}; }

}  // namespace aoifsa::cellular
