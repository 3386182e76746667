#pragma once

// Half-plane models: g_{a,b}(z) = a tan z + b and g_lambda(z) = z - (lambda/2) cot z.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "innerdyn/error.hpp"
#include "innerdyn/numerics.hpp"

namespace innerdyn {

/// |multiplier - 1| below this is reported as parabolic.
inline constexpr double kParabolicBand = 1e-6;

class TanFamily {
 public:
  TanFamily(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::DomainError, "TanFamily: a must be positive");
    if (!(b > -kHalfPi && b <= kHalfPi)) throw Error(ErrorCode::DomainError, "TanFamily: b must lie in (-pi/2, pi/2]");
  }

  /// Shift b by a multiple of pi into (-pi/2, pi/2] (conjugation by z -> z + k pi).
  static TanFamily normalized(double a, double b) {
    double nb = b - kPi * std::round(b / kPi);
    if (nb <= -kHalfPi) nb += kPi;
    if (nb > kHalfPi) nb -= kPi;
    return TanFamily(a, nb);
  }

  double a() const { return a_; }
  double b() const { return b_; }

  CPoint operator()(CPoint z) const { return a_ * stable_tan(z) + b_; }
  CPoint derivative(CPoint z) const {
    const CPoint t = stable_tan(z);
    return a_ * (1.0 + t * t);
  }

 private:
  double a_;
  double b_;
};

inline CPoint eval_tan_family(const TanFamily& g, CPoint z) { return g(z); }

class CotFamily {
 public:
  explicit CotFamily(double lambda) : lambda_(lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::DomainError, "CotFamily: lambda must be positive");
  }

  double lambda() const { return lambda_; }
  double nu() const { return 0.5 * lambda_; }

  CPoint operator()(CPoint z) const { return z - nu() * stable_cot(z); }
  CPoint derivative(CPoint z) const {
    const CPoint c = stable_cot(z);
    return 1.0 + nu() * (1.0 + c * c);
  }

 private:
  double lambda_;
};

inline CPoint eval_cot_family(const CotFamily& g, CPoint z) { return g(z); }

/// theta(a) = arccos(sqrt a) - sqrt(a) sqrt(1 - a).
inline double boundary_curve_theta(double a) {
  if (!(a > 0.0 && a <= 1.0)) throw Error(ErrorCode::DomainError, "boundary_curve_theta: a must lie in (0,1]");
  const double s = std::sqrt(a);
  return std::acos(s) - s * std::sqrt(1.0 - a);
}

/// The region law: g_{a,b} has an attracting fixed point in the half-plane.
inline bool in_attracting_region(double a, double b) {
  return a > 1.0 || std::abs(b) > boundary_curve_theta(std::min(a, 1.0));
}

enum class FixedPointClass { AttractingInterior, AttractingBoundary, Parabolic, Repelling };

inline std::string_view to_string(FixedPointClass c) {
  switch (c) {
    case FixedPointClass::AttractingInterior: return "attracting-interior";
    case FixedPointClass::AttractingBoundary: return "attracting-boundary";
    case FixedPointClass::Parabolic: return "parabolic";
    case FixedPointClass::Repelling: return "repelling";
  }
  return "unknown";
}

struct FixedPointRecord {
  CPoint location;
  CPoint multiplier;
  FixedPointClass cls = FixedPointClass::Repelling;
  int multiplicity = 1;  // > 1 only for parabolic points
  double residual = 0.0;
  bool on_boundary = false;  // location is a real boundary point
};

namespace detail {

inline FixedPointRecord real_fixed_point_record(const TanFamily& g, double alpha) {
  FixedPointRecord r;
  const double c = std::cos(alpha);
  const double m = g.a() / (c * c);
  r.location = alpha;
  r.multiplier = m;
  r.on_boundary = true;
  r.residual = std::abs(g.a() * std::tan(alpha) + g.b() - alpha);
  if (std::abs(m - 1.0) <= kParabolicBand) {
    r.cls = FixedPointClass::Parabolic;
    // h(x) = a tan x + b - x has h'' = 2 a tan x / cos^2 x, zero only at x = 0.
    const double h2 = 2.0 * g.a() * std::tan(alpha) / (c * c);
    r.multiplicity = std::abs(h2) <= 1e-3 ? 3 : 2;
  } else {
    r.cls = m < 1.0 ? FixedPointClass::AttractingBoundary : FixedPointClass::Repelling;
  }
  return r;
}

// Root of h(x) = a tan x + b - x on [lo, hi] given h(lo) >= 0 >= h(hi) or the reverse.
inline double bisect_real_fixed_point(const TanFamily& g, double lo, double hi) {
  auto h = [&](double x) { return g.a() * std::tan(x) + g.b() - x; };
  double flo = h(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = h(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Locates the fixed point of g_{a,b} that attracts the half-plane: a real
/// attracting or parabolic point when h(x) = a tan x + b - x has a root with
/// h' <= 0, otherwise the interior point by iteration of b + ai and Newton.
inline FixedPointRecord classify_tan_family(const TanFamily& g, const RootSolveConfig& cfg = {}) {
  const double a = g.a();
  const double b = g.b();
  auto h = [&](double x) { return a * std::tan(x) + b - x; };

  if (a < 1.0) {
    // h decreases on (-alpha_c, alpha_c) where a / cos^2 = 1.
    const double alpha_c = std::acos(std::sqrt(a));
    const double left = h(-alpha_c);
    const double right = h(alpha_c);
    if (left >= 0.0 && right <= 0.0) {
      const double alpha = detail::bisect_real_fixed_point(g, -alpha_c, alpha_c);
      return detail::real_fixed_point_record(g, alpha);
    }
  } else {
    // h is increasing; its unique real root is attracting only in the parabolic limit.
    const double edge = kHalfPi - 1e-9;
    const double alpha = detail::bisect_real_fixed_point(g, -edge, edge);
    FixedPointRecord r = detail::real_fixed_point_record(g, alpha);
    if (r.cls == FixedPointClass::Parabolic) return r;
  }

  // Interior: the singular value b + ai is attracted to the fixed point.
  CPoint z(b, a);
  for (int k = 0; k < 400; ++k) {
    const CPoint zn = g(z);
    const bool done = std::abs(zn - z) < 1e-10;
    z = zn;
    if (done) break;
  }
  auto f = [&](CPoint w) { return g(w) - w; };
  auto df = [&](CPoint w) { return g.derivative(w) - 1.0; };
  CPoint zeta;
  try {
    zeta = newton_holomorphic(f, df, z, cfg);
  } catch (const Error& e) {
    throw Error(ErrorCode::NoConvergence, std::string("classify_tan_family: interior solve failed (") + e.what() +
                                              "); last iterate " + std::to_string(z.real()) + "+" +
                                              std::to_string(z.imag()) + "i");
  }
  FixedPointRecord r;
  r.location = zeta;
  r.multiplier = g.derivative(zeta);
  r.residual = std::abs(f(zeta));
  r.cls = FixedPointClass::AttractingInterior;
  if (!(zeta.imag() > 0.0) || !(std::abs(r.multiplier) < 1.0)) {
    throw Error(ErrorCode::NoConvergence, "classify_tan_family: Newton limit is not an attracting interior point (|m| = " +
                                              std::to_string(std::abs(r.multiplier)) + ")");
  }
  return r;
}

/// Independent classifier: iterate the singular value b + ai and read the
/// class off the limit (interior when the imaginary part settles away from 0).
inline FixedPointClass classify_tan_family_by_iteration(const TanFamily& g, int max_iter = 5000) {
  CPoint z(g.b(), g.a());
  for (int k = 0; k < max_iter; ++k) {
    const CPoint zn = g(z);
    const double step = std::abs(zn - z);
    z = zn;
    if (step < 1e-13) break;
  }
  if (z.imag() > 1e-7) return FixedPointClass::AttractingInterior;
  const double c = std::cos(z.real());
  const double m = g.a() / (c * c);
  if (std::abs(m - 1.0) <= kParabolicBand) return FixedPointClass::Parabolic;
  return m < 1.0 ? FixedPointClass::AttractingBoundary : FixedPointClass::Repelling;
}

struct TanSolution {
  TanFamily family;
  FixedPointRecord fixed_point;
};

namespace detail {

// With zeta the fixed point, a = tau cos^2 zeta and b = zeta - tau sin zeta cos zeta
// must both be real. Newton on (Im A, Im B) in (Re zeta, Im zeta).
inline bool refine_multiplier_system(CPoint tau, CPoint& zeta) {
  for (int it = 0; it < 60; ++it) {
    const CPoint c = std::cos(zeta);
    const CPoint s = std::sin(zeta);
    const CPoint A = tau * c * c;
    const CPoint B = zeta - tau * s * c;
    const double r0 = A.imag();
    const double r1 = B.imag();
    if (std::abs(r0) + std::abs(r1) < 1e-15 * (1.0 + std::abs(A) + std::abs(B))) return true;
    const CPoint dA = -tau * std::sin(2.0 * zeta);
    const CPoint dB = 1.0 - tau * std::cos(2.0 * zeta);
    const double j00 = dA.imag(), j01 = dA.real();
    const double j10 = dB.imag(), j11 = dB.real();
    const double det = j00 * j11 - j01 * j10;
    if (!std::isfinite(det) || det == 0.0) return false;
    const double dx = (r0 * j11 - j01 * r1) / det;
    const double dy = (j00 * r1 - j10 * r0) / det;
    CPoint step(dx, dy);
    const double cap = 0.5 * zeta.imag();
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    const CPoint next = zeta - step;
    const bool small = std::abs(next - zeta) < 1e-15 * (1.0 + std::abs(zeta));
    zeta = next;
    if (small) return true;
  }
  const CPoint c = std::cos(zeta);
  const CPoint s = std::sin(zeta);
  return std::abs((tau * c * c).imag()) + std::abs((zeta - tau * s * c).imag()) < 1e-12;
}

}  // namespace detail

/// The unique (a, b) with an interior fixed point of multiplier tau, by
/// continuation from the real solution zeta = iy with sinh(2y)/(2y) = 1/r:
/// first in arg(tau) at modulus min(|tau|, 0.3), then radially in -log(1 - r).
inline TanSolution solve_ab_from_multiplier(CPoint tau) {
  const double r = std::abs(tau);
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::DomainError, "solve_ab_from_multiplier: need 0 < |tau| < 1");
  const double r0 = std::min(r, 0.3);
  // sinh(2y)/(2y) = 1/r0; u = 2y solved by Newton on log(sinh u / u) = -log r0.
  double u = std::max(1.0, std::asinh(1.0 / r0) * 1.5);
  for (int it = 0; it < 100; ++it) {
    const double fu = std::log(std::sinh(u) / u) + std::log(r0);
    const double dfu = 1.0 / std::tanh(u) - 1.0 / u;
    const double next = u - fu / dfu;
    const double nu = next > 0.0 ? next : 0.5 * u;
    if (std::abs(nu - u) < 1e-15 * u) {
      u = nu;
      break;
    }
    u = nu;
  }
  CPoint zeta(0.0, 0.5 * u);
  const double target = std::arg(tau);
  const int turns = std::max(1, static_cast<int>(std::ceil(std::abs(target) / 0.05)));
  for (int k = 1; k <= turns; ++k) {
    if (!detail::refine_multiplier_system(std::polar(r0, target * k / turns), zeta)) {
      throw Error(ErrorCode::NoConvergence, "solve_ab_from_multiplier: continuation in the argument failed");
    }
  }
  if (r > r0) {
    const double v0 = -std::log1p(-r0);
    const double v1 = -std::log1p(-r);
    const int radial = std::max(1, static_cast<int>(std::ceil((v1 - v0) / 0.05)));
    for (int k = 1; k <= radial; ++k) {
      const double rk = -std::expm1(-(v0 + (v1 - v0) * k / radial));
      if (!detail::refine_multiplier_system(std::polar(rk, target), zeta)) {
        throw Error(ErrorCode::NoConvergence, "solve_ab_from_multiplier: radial continuation failed");
      }
    }
  }
  if (!detail::refine_multiplier_system(tau, zeta) || !(zeta.imag() > 0.0)) {
    throw Error(ErrorCode::NoConvergence, "solve_ab_from_multiplier: final refinement failed");
  }
  const CPoint c = std::cos(zeta);
  const CPoint s = std::sin(zeta);
  const double a = (tau * c * c).real();
  const double b_raw = (zeta - tau * s * c).real();
  if (!(a > 0.0)) throw Error(ErrorCode::OutsideRegion, "solve_ab_from_multiplier: a is not positive");
  const TanFamily g = TanFamily::normalized(a, b_raw);
  const double shift = b_raw - g.b();  // multiple of pi
  zeta -= shift;
  if (!in_attracting_region(g.a(), g.b())) {
    throw Error(ErrorCode::OutsideRegion, "solve_ab_from_multiplier: solution outside the attracting region");
  }
  FixedPointRecord fp;
  fp.location = zeta;
  fp.multiplier = g.derivative(zeta);
  fp.residual = std::abs(g(zeta) - zeta);
  fp.cls = FixedPointClass::AttractingInterior;
  return {g, fp};
}

/// mu = 2(b + ai), the parameter of the disc model.
inline CPoint mu_from_ab(const TanFamily& g) { return 2.0 * CPoint(g.b(), g.a()); }

/// g_mu(w) = exp(i (mu + conj(mu) w)/(1 + w)); with mu = 2(b + ai) it satisfies
/// g_mu(e^{2iz}) = e^{2i g_{a,b}(z)}.
inline CPoint eval_disc_model(CPoint mu, CPoint w) {
  if (!(mu.imag() > 0.0)) throw Error(ErrorCode::DomainError, "eval_disc_model: mu must lie in the upper half-plane");
  return std::exp(kI * (mu + std::conj(mu) * w) / (1.0 + w));
}

// ---------------------------------------------------------------------------
// Denjoy-Wolff estimation

enum class LimitKind { Interior, Boundary, Infinity };

inline std::string_view to_string(LimitKind k) {
  switch (k) {
    case LimitKind::Interior: return "interior";
    case LimitKind::Boundary: return "boundary";
    case LimitKind::Infinity: return "infinity";
  }
  return "unknown";
}

struct DenjoyWolffConfig {
  double escape_radius = 1e8;
  double interior_step = 1e-9;
  double interior_min_im = 1e-6;
  double zero_step_threshold = 1e-3;
  std::size_t zero_step_min_iter = 10000;
};

struct DenjoyWolffResult {
  LimitKind kind = LimitKind::Boundary;
  CPoint point;              // interior point, or real boundary point
  bool zero_step = false;    // hyperbolic step decayed below the threshold
  double final_step = 0.0;   // last hyperbolic step (largest over samples)
  double im_drift = 0.0;     // mean increase of Im per step over the last tenth
  std::vector<CPoint> limits;
};

/// Hyperbolic steps dist_H(z_k, z_{k+1}) for k = 0..n-1.
template <class G>
std::vector<double> hyperbolic_steps(G&& g, CPoint z0, std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  CPoint z = z0;
  for (std::size_t k = 0; k < n; ++k) {
    const CPoint zn = g(z);
    out.push_back(hyperbolic_distance_halfplane(z, zn));
    z = zn;
  }
  return out;
}

/// Least-squares slope of log(step_k) against log(k) for k in [k0, k1] (1-based k).
inline double fit_step_exponent(const std::vector<double>& steps, std::size_t k0, std::size_t k1) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t k = k0; k <= k1 && k <= steps.size(); ++k) {
    if (!(steps[k - 1] > 0.0)) continue;
    const double x = std::log(static_cast<double>(k));
    const double y = std::log(steps[k - 1]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw Error(ErrorCode::DomainError, "fit_step_exponent: too few positive steps");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

template <class G>
DenjoyWolffResult denjoy_wolff_estimate(G&& g, const std::vector<CPoint>& samples, std::size_t n,
                                        const DenjoyWolffConfig& cfg = {}) {
  if (samples.empty()) throw Error(ErrorCode::DomainError, "denjoy_wolff_estimate: no samples");
  std::vector<LimitKind> kinds;
  DenjoyWolffResult res;
  double drift_sum = 0.0;
  double max_im = 0.0;
  for (const CPoint& s : samples) {
    if (!(s.imag() > 0.0)) throw Error(ErrorCode::DomainError, "denjoy_wolff_estimate: samples must lie in the upper half-plane");
    CPoint z = s;
    double last_step = 0.0;
    double last_euclid = 0.0;
    const std::size_t tail_start = n - n / 10;
    CPoint tail_z = z;
    bool escaped = false;
    std::size_t k = 0;
    for (; k < n; ++k) {
      if (k == tail_start) tail_z = z;
      const CPoint zn = g(z);
      last_step = hyperbolic_distance_halfplane(z, zn);
      last_euclid = std::abs(zn - z);
      z = zn;
      if (!is_finite(z) || std::abs(z) > cfg.escape_radius) {
        escaped = true;
        ++k;
        break;
      }
    }
    const std::size_t tail_len = k > tail_start ? k - tail_start : 1;
    const double drift = (z.imag() - tail_z.imag()) / static_cast<double>(tail_len);
    drift_sum += drift;
    LimitKind kind;
    if (escaped || (drift > 0.0 && z.imag() > 100.0)) {
      kind = LimitKind::Infinity;
    } else if (last_euclid < cfg.interior_step && z.imag() > cfg.interior_min_im) {
      kind = LimitKind::Interior;
    } else {
      kind = LimitKind::Boundary;
    }
    kinds.push_back(kind);
    res.limits.push_back(z);
    res.final_step = std::max(res.final_step, last_step);
    max_im = std::max(max_im, z.imag());
  }
  res.im_drift = drift_sum / static_cast<double>(samples.size());
  res.kind = kinds.front();
  for (LimitKind k : kinds) {
    if (k != res.kind) throw Error(ErrorCode::Inconclusive, "denjoy_wolff_estimate: samples reach different limit types");
  }
  const CPoint p0 = res.limits.front();
  if (res.kind == LimitKind::Interior) {
    for (const CPoint& p : res.limits) {
      if (std::abs(p - p0) > 1e-6) throw Error(ErrorCode::Inconclusive, "denjoy_wolff_estimate: interior limits disagree");
    }
    res.point = p0;
  } else if (res.kind == LimitKind::Boundary) {
    const double tol = 4.0 * max_im + 1e-6;
    for (const CPoint& p : res.limits) {
      if (std::abs(p.real() - p0.real()) > tol) {
        throw Error(ErrorCode::Inconclusive, "denjoy_wolff_estimate: boundary limits disagree");
      }
    }
    res.point = p0.real();
  } else {
    res.point = CPoint(std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
  }
  res.zero_step = n >= cfg.zero_step_min_iter && res.final_step < cfg.zero_step_threshold;
  return res;
}

// ---------------------------------------------------------------------------
// Parameter-plane classification

struct AtlasCell {
  double a = 0.0;
  double b = 0.0;
  FixedPointClass solver_class = FixedPointClass::Repelling;
  FixedPointClass iteration_class = FixedPointClass::Repelling;
  CPoint multiplier;
  bool region_law = false;      // a > 1 or |b| > theta(a)
  double boundary_distance = 0; // | |b| - theta(a) | for a <= 1, otherwise infinity
  bool solver_failed = false;
};

/// Cell-centred grid over (a, b) in [a0, a1] x [b0, b1].
inline std::vector<AtlasCell> classify_tan_grid(double a0, double a1, double b0, double b1, int na, int nb,
                                                int iteration_budget = 5000) {
  if (!(a1 > a0 && b1 > b0) || na <= 0 || nb <= 0 || a0 < 0.0 || b0 < -kHalfPi || b1 > kHalfPi) {
    throw Error(ErrorCode::DomainError, "classify_tan_grid: invalid parameter window");
  }
  std::vector<AtlasCell> cells;
  cells.reserve(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb));
  for (int j = 0; j < nb; ++j) {
    for (int i = 0; i < na; ++i) {
      AtlasCell c;
      c.a = a0 + (a1 - a0) * (i + 0.5) / na;
      c.b = b0 + (b1 - b0) * (j + 0.5) / nb;
      const TanFamily g(c.a, c.b);
      c.region_law = in_attracting_region(c.a, c.b);
      c.boundary_distance = c.a <= 1.0 ? std::abs(std::abs(c.b) - boundary_curve_theta(c.a))
                                       : std::numeric_limits<double>::infinity();
      try {
        const FixedPointRecord r = classify_tan_family(g);
        c.solver_class = r.cls;
        c.multiplier = r.multiplier;
      } catch (const Error&) {
        c.solver_failed = true;
      }
      c.iteration_class = classify_tan_family_by_iteration(g, iteration_budget);
      cells.push_back(c);
    }
  }
  return cells;
}

}  // namespace innerdyn
