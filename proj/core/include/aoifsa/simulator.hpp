#ifndef AOIFSA_SIMULATOR_HPP
#define AOIFSA_SIMULATOR_HPP

#include <cstdint>
#include <vector>

#include "aoifsa/bipolar.hpp"
#include "aoifsa/cellular.hpp"
#include "aoifsa/renewal.hpp"

namespace aoifsa::simulator {

using renewal::AoiStats;
using renewal::ProtocolParams;

enum class NetworkKind { Bipolar, Cellular };
enum class Fading { RayleighUnitMean };

struct PowerModel {
  enum class Kind { Constant, Fractional, Capped };
  Kind kind = Kind::Constant;
  double epsilon = 0.0;
  double p_max_ratio = 0.0;  // Capped only

  static PowerModel constant() { return {}; }
  static PowerModel fractional(double eps) { return {Kind::Fractional, eps, 0.0}; }
  static PowerModel capped(double eps, double p) { return {Kind::Capped, eps, p}; }
  static PowerModel for_config(const cellular::CellularConfig& cfg) {
    if (cfg.p_max_ratio) return capped(cfg.epsilon, *cfg.p_max_ratio);
    return cfg.epsilon == 0.0 ? constant() : fractional(cfg.epsilon);
  }

  /// Transmit power (P_tx units) of a node whose own-link distance is R,
  /// under path-loss exponent alpha.
  double power(double own_link_distance, double alpha) const;
};

struct Point {
  double x, y;
};

/// One sampled topology. The typical receiver sits at the origin; all
/// per-link randomness (fading, activity) unfolds conditioned on this.
/// Bipolar realizations follow the reduced-Palm convention (typical pair
/// added to an interferer PPP); cellular ones condition a fusion center at
/// the origin and pick one of its associated sensors uniformly.
struct NetworkRealization {
  NetworkKind kind;
  std::vector<Point> transmitters;
  std::vector<Point> receivers;        // bipolar: paired receivers; cellular: centers
  std::vector<int> association;        // transmitter -> receiver index
  std::vector<double> link_distances;  // own-link distance R_i per transmitter
  std::vector<double> dist_to_origin;  // torus distance to the typical receiver
  int typical_index = 0;
  double window_halfwidth = 0.0;
  std::uint64_t seed = 0;
  bool torus_wrap = true;
  int resample_count = 0;        // cellular: empty typical cell resamples
  bool low_count_warning = false;  // expected interferer count < 50
};

/// The power model is derived from the network config (constant for bipolar;
/// fractional or capped per CellularConfig), so it is not repeated here.
struct SimSpec {
  int num_realizations = 1000;
  std::int64_t slots_per_realization = 200000;  // rounded down to a frame multiple
  int burn_in_successes = 100;
  Fading fading = Fading::RayleighUnitMean;
  bool torus_wrap = true;
  double window_halfwidth = 0.0;  // 0 = 15x the mean nearest-interferer spacing
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = AOIFSA_THREADS env var, else hardware concurrency
};

/// Interferer PPP of density lambda on a torus window plus the typical pair
/// at distance r (receiver at the origin).
NetworkRealization sample_bipolar(const bipolar::BipolarConfig& cfg, double window_halfwidth,
                                  std::uint64_t seed, bool torus_wrap = true);

/// Independent center/sensor PPPs with nearest-center association; the
/// typical link is the origin center with one uniformly chosen associated
/// sensor (realizations whose typical cell is empty are resampled with an
/// incremented sub-seed and counted).
NetworkRealization sample_cellular(const cellular::CellularConfig& cfg, double window_halfwidth,
                                   std::uint64_t seed, bool torus_wrap = true,
                                   bool palm_center_at_origin = true);

/// Per-realization outcome of the slot-level protocol run.
struct RunResult {
  AoiStats stats;
  std::int64_t slots = 0;
  std::int64_t attempts = 0;   // typical-link transmissions
  std::int64_t successes = 0;  // post-burn-in deliveries
  double energy_per_slot = 0.0;  // P_tx units
  bool infinite_sample = false;  // burn-in never completed: AoI unbounded in budget
};

/// Runs the FSA protocol on a fixed topology: one generate-and-transmit
/// opportunity per active frame in a uniform slot, fresh unit-mean Rayleigh
/// fading per transmission, delivery iff SIR exceeds theta (interference
/// limited). AoI is the typical link's sawtooth sampled at slot boundaries.
RunResult run_fsa(const NetworkRealization& real, const ProtocolParams& p,
                  const bipolar::BipolarConfig& cfg, const SimSpec& spec);
RunResult run_fsa(const NetworkRealization& real, const ProtocolParams& p,
                  const cellular::CellularConfig& cfg, const SimSpec& spec);

/// Spatially averaged estimate over independent realizations.
struct EstimateResult {
  AoiStats stats;                 // across-realization averages, CI from batch means
  double ci_halfwidth_second = 0.0;
  double success_rate = 0.0;      // typical-link deliveries per slot
  double ci_halfwidth_success = 0.0;
  double energy_per_slot = 0.0;   // typical-link energy per slot, P_tx units
  double ci_halfwidth_energy = 0.0;
  double infinite_fraction = 0.0;
  bool non_comparable = false;    // infinite_fraction > 20%
  int realizations_used = 0;
};

EstimateResult estimate(const bipolar::BipolarConfig& cfg, const ProtocolParams& p,
                        const SimSpec& spec);
EstimateResult estimate(const cellular::CellularConfig& cfg, const ProtocolParams& p,
                        const SimSpec& spec);

/// Documented seed-splitting: one master seed derives independent streams per
/// (realization, purpose) so parallel runs are reproducible.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t salt);

}  // namespace aoifsa::simulator

#endif  // AOIFSA_SIMULATOR_HPP
