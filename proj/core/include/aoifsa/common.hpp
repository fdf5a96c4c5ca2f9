#ifndef AOIFSA_COMMON_HPP
#define AOIFSA_COMMON_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace aoifsa {

/// Why an analytic AoI quantity came out unbounded.
enum class DivergenceCause {
  None,
  EtaEqualsFrame,    // eta/F = 1 boundary: (1 - eta/F)^(delta-1) blows up
  DivergentSeries,   // truncated series detected growing partial sums
  DivergentIntegral, // semi-infinite integrand does not decay
  ContentionTooHigh, // closed-form pole: contention coefficient >= 1
};

/// Value-or-infinity result for AoI means and variances. Divergence is an
/// in-domain outcome here (several closed forms have a genuine infinite
/// branch), so it is carried as data rather than thrown.
class AoiOutcome {
 public:
  static AoiOutcome finite(double v) { return AoiOutcome(v, DivergenceCause::None); }
  static AoiOutcome infinite(DivergenceCause c) {
    return AoiOutcome(std::numeric_limits<double>::infinity(), c);
  }

  bool is_infinite() const { return std::isinf(value_); }
  DivergenceCause cause() const { return cause_; }

  /// Finite value; throws std::logic_error when infinite.
  double value() const {
    if (is_infinite()) throw std::logic_error("AoiOutcome: value() on infinite result");
    return value_;
  }
  /// Finite value, or +inf when divergent (for printing / comparisons).
  double value_or_inf() const { return value_; }

 private:
  AoiOutcome(double v, DivergenceCause c) : value_(v), cause_(c) {}
  double value_;
  DivergenceCause cause_;
};

inline const char* to_string(DivergenceCause c) {
  switch (c) {
    case DivergenceCause::None: return "none";
    case DivergenceCause::EtaEqualsFrame: return "eta-equals-frame";
    case DivergenceCause::DivergentSeries: return "divergent-series";
    case DivergenceCause::DivergentIntegral: return "divergent-integral";
    case DivergenceCause::ContentionTooHigh: return "contention-too-high";
  }
  return "unknown";
}

}  // namespace aoifsa

#endif  // AOIFSA_COMMON_HPP
