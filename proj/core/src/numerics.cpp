#include "aoifsa/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace aoifsa::numerics {

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double err;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  if (std::isnan(fc)) throw std::invalid_argument("quadrature: integrand returned NaN");

  double fv1[7], fv2[7];
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    fv1[j] = f(c - x);
    fv2[j] = f(c + x);
    if (std::isnan(fv1[j]) || std::isnan(fv2[j]))
      throw std::invalid_argument("quadrature: integrand returned NaN");
    const double fsum = fv1[j] + fv2[j];
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = resk * h;
  const double diff = std::abs((resk - resg) * h);
  // QUADPACK-style sharpened error estimate.
  p.err = diff;
  if (diff > 0.0) {
    const double mean = resk * 0.5;
    double resasc = std::abs(fc - mean) * kWgk[7];
    for (int j = 0; j < 7; ++j)
      resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    resasc *= std::abs(h);
    if (resasc != 0.0) p.err = resasc * std::min(1.0, std::pow(200.0 * diff / resasc, 1.5));
  }
  return p;
}

struct PanelCmp {
  bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

QuadResult adaptive(const std::function<double(double)>& f,
                    const std::vector<double>& breakpoints, const QuadratureSpec& spec) {
  std::priority_queue<Panel, std::vector<Panel>, PanelCmp> heap;
  double total = 0.0, err = 0.0;
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    Panel p = gk15(f, breakpoints[i], breakpoints[i + 1]);
    total += p.value;
    err += p.err;
    heap.push(p);
  }
  int splits = 0;
  while (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) &&
         splits < spec.max_subdivisions && !heap.empty()) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) continue;  // interval at rounding limit
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  QuadResult r;
  r.value = total;
  r.abs_err = err;
  r.converged = err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
  r.diverged = !std::isfinite(total);
  return r;
}

}  // namespace

double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x))
    throw std::domain_error("gamma_fn: pole at non-positive integer");
  return std::tgamma(x);
}

double gen_binomial(double a, int k) {
  if (k < 0) throw std::invalid_argument("gen_binomial: k must be >= 0");
  double result = 1.0;
  for (int j = 0; j < k; ++j) result *= (a - j) / (j + 1);
  return result;
}

QuadResult quad_semi_infinite(const std::function<double(double)>& f,
                              const QuadratureSpec& spec) {
  // Divergence probe: under the log map the transformed integrand is
  // f(z) e^z; if f decays slower than exponentially toward zero the panel
  // near t = 1 carries unbounded mass.
  {
    const double z1 = 40.0, z2 = 80.0;
    const double f1 = std::abs(f(z1)), f2 = std::abs(f(z2));
    if (f2 > spec.abs_tol && f2 >= f1 * std::exp(-1e-6 * (z2 - z1))) {
      QuadResult r;
      r.diverged = true;
      r.value = std::numeric_limits<double>::infinity();
      return r;
    }
  }
  auto g = [&f](double t) {
    const double omt = 1.0 - t;
    if (omt <= 0.0) return 0.0;
    const double z = -std::log(omt);
    return f(z) / omt;
  };
  // Breakpoints cluster toward t = 1 (large z).
  const std::vector<double> bp = {0.0, 0.5, 0.9, 0.99, 0.999, 1.0 - 1e-6, 1.0 - 1e-9, 1.0};
  return adaptive(g, bp, spec);
}

QuadResult quad_semi_infinite_algebraic(const std::function<double(double)>& f,
                                        const QuadratureSpec& spec) {
  {
    // Tail exponent probe: integrability over [0,inf) needs |f| ~ q^(-gamma)
    // with gamma > 1.
    const double q1 = 1e4, q2 = 1e6;
    const double f1 = std::abs(f(q1)), f2 = std::abs(f(q2));
    if (f2 * q2 > spec.abs_tol && f1 > 0.0) {
      const double gamma = std::log(f1 / f2) / std::log(q2 / q1);
      if (gamma <= 1.0 + 1e-9) {
        QuadResult r;
        r.diverged = true;
        r.value = std::numeric_limits<double>::infinity();
        return r;
      }
    }
  }
  auto g = [&f](double t) {
    const double omt = 1.0 - t;
    if (omt <= 0.0) return 0.0;
    const double q = (t * t) / (omt * omt);
    const double dq = 2.0 * t / (omt * omt * omt);
    return f(q) * dq;
  };
  const std::vector<double> bp = {0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0 - 1e-5, 1.0};
  return adaptive(g, bp, spec);
}

QuadResult quad_finite(const std::function<double(double)>& f, double a, double b,
                       const QuadratureSpec& spec) {
  return adaptive(f, {a, b}, spec);
}

QuadResult quad_2d_rect(const std::function<double(double, double)>& f,
                        const QuadratureSpec& spec) {
  QuadratureSpec inner = spec;
  inner.abs_tol = spec.abs_tol / 8.0;
  inner.rel_tol = spec.rel_tol / 8.0;
  inner.max_subdivisions = std::max(64, spec.max_subdivisions / 8);
  // Mesh graded toward s = 0 where the cellular kernels vary fastest.
  const std::vector<double> sbp = {0.0, 1e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0};

  bool inner_ok = true;
  auto inner_integral = [&](double q) {
    auto fs = [&f, q](double s) { return f(q, s); };
    QuadResult r = adaptive(fs, sbp, inner);
    if (!r.converged) inner_ok = false;
    return r.value;
  };
  QuadResult outer = quad_semi_infinite_algebraic(inner_integral, spec);
  if (!inner_ok) outer.converged = false;
  return outer;
}

SeriesResult sum_series(const std::function<double(int)>& term, const SeriesSpec& spec) {
  SeriesResult r;
  double sum = 0.0, comp = 0.0;  // Kahan
  double prev_abs_term = std::numeric_limits<double>::infinity();
  double min_abs_sum = std::numeric_limits<double>::infinity();
  int growing_streak = 0;
  for (int k = 0; k < spec.max_terms; ++k) {
    const double t = term(k);
    if (std::isnan(t)) throw std::invalid_argument("sum_series: term returned NaN");
    const double y = t - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    r.terms_used = k + 1;

    const double at = std::abs(t);
    if (k >= 1) {
      growing_streak = (at >= prev_abs_term && at > spec.term_tol) ? growing_streak + 1 : 0;
    }
    prev_abs_term = at;
    min_abs_sum = std::min(min_abs_sum, std::max(std::abs(sum), 1e-300));

    if (std::abs(sum) > spec.divergence_guard * std::max(1.0, min_abs_sum) ||
        growing_streak >= 8 || !std::isfinite(sum)) {
      r.value = sum;
      r.diverged = true;
      return r;
    }
    if (at <= spec.term_tol) {
      r.value = sum;
      r.converged = true;
      return r;
    }
  }
  r.value = sum;
  // Terms still not decreasing at the cap: classify as divergent rather than
  // merely unconverged.
  r.diverged = growing_streak > 0;
  return r;
}

std::optional<double> find_root_bracketed(const std::function<double(double)>& g,
                                          double lo, double hi, double tol) {
  double a = lo, b = hi;
  double fa = g(a), fb = g(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) return std::nullopt;

  double c = a, fc = fa;
  double d = b - a, e = d;
  const int kMaxIter = 200;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    if (fb * fc > 0.0) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double rr = fb / fc;
        p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
        q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = g(b);
  }
  return b;
}

}  // namespace aoifsa::numerics
