#pragma once

// Shared complex-analytic numerics: overflow-safe tan/cot, damped Newton,
// orbits, hyperbolic distances and argument-principle zero location.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "innerdyn/error.hpp"

namespace innerdyn {

using CPoint = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr CPoint kI{0.0, 1.0};

/// Default distance to a pole below which tan/cot refuse to evaluate.
inline constexpr double kPoleTolerance = 1e-9;
/// Default escape radius for orbit iteration.
inline constexpr double kBailout = 1e10;

inline bool is_finite(CPoint z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Axis-aligned rectangle in the plane, re0 < re1 and im0 < im1.
struct Rect {
  double re0 = 0.0;
  double re1 = 0.0;
  double im0 = 0.0;
  double im1 = 0.0;

  double width() const { return re1 - re0; }
  double height() const { return im1 - im0; }
  CPoint center() const { return {0.5 * (re0 + re1), 0.5 * (im0 + im1)}; }
  bool contains(CPoint z, double margin = 0.0) const {
    return z.real() >= re0 - margin && z.real() <= re1 + margin && z.imag() >= im0 - margin &&
           z.imag() <= im1 + margin;
  }
  double distance_to_edge(CPoint z) const {
    return std::min({std::abs(z.real() - re0), std::abs(z.real() - re1), std::abs(z.imag() - im0),
                     std::abs(z.imag() - im1)});
  }
  /// Same center, both side lengths multiplied by `factor`.
  Rect scaled(double factor) const {
    const CPoint c = center();
    const double hw = 0.5 * width() * factor;
    const double hh = 0.5 * height() * factor;
    return {c.real() - hw, c.real() + hw, c.imag() - hh, c.imag() + hh};
  }
  bool valid() const { return re0 < re1 && im0 < im1; }
};

/// e^w - 1 without cancellation for small |w|.
inline CPoint complex_expm1(CPoint w) {
  const double u = w.real();
  const double v = w.imag();
  const double half_sin = std::sin(0.5 * v);
  const double re = std::expm1(u) * std::cos(v) - 2.0 * half_sin * half_sin;
  const double im = std::exp(u) * std::sin(v);
  return {re, im};
}

namespace detail {

// Distance from z to the nearest point of offset + k*pi on the real axis.
inline double distance_to_lattice(CPoint z, double offset) {
  const double k = std::round((z.real() - offset) / kPi);
  return std::abs(z - CPoint(offset + k * kPi, 0.0));
}

// tan z for Im z >= 0 via w = e^{2iz}, |w| <= 1.
inline CPoint tan_upper(CPoint z) {
  const CPoint em = complex_expm1(2.0 * kI * z);
  return -kI * em / (2.0 + em);
}

inline CPoint cot_upper(CPoint z) {
  const CPoint em = complex_expm1(2.0 * kI * z);
  return kI * (2.0 + em) / em;
}

}  // namespace detail

/// tan z, stable for any imaginary part (no overflow; for |Im z| large the
/// result is +-i up to an exponentially small correction).
inline CPoint stable_tan(CPoint z, double pole_tol = kPoleTolerance) {
  if (!is_finite(z)) throw Error(ErrorCode::DomainError, "stable_tan: non-finite argument");
  if (detail::distance_to_lattice(z, kHalfPi) < pole_tol) {
    throw Error(ErrorCode::PoleProximity, "tan evaluated within tolerance of a pole");
  }
  if (z.imag() >= 0.0) return detail::tan_upper(z);
  return std::conj(detail::tan_upper(std::conj(z)));
}

/// cot z with the same overflow protection as stable_tan; poles at k*pi.
inline CPoint stable_cot(CPoint z, double pole_tol = kPoleTolerance) {
  if (!is_finite(z)) throw Error(ErrorCode::DomainError, "stable_cot: non-finite argument");
  if (detail::distance_to_lattice(z, 0.0) < pole_tol) {
    throw Error(ErrorCode::PoleProximity, "cot evaluated within tolerance of a pole");
  }
  if (z.imag() >= 0.0) return detail::cot_upper(z);
  return std::conj(detail::cot_upper(std::conj(z)));
}

struct RootSolveConfig {
  double tol_residual = 1e-12;
  int max_iter = 100;
  double fd_step = 1e-6;
  double derivative_floor = 1e-14;
  int max_halvings = 30;

  void validate() const {
    if (!(tol_residual > 0.0 && tol_residual < 1.0)) {
      throw Error(ErrorCode::DomainError, "RootSolveConfig: tol_residual must lie in (0,1)");
    }
    if (max_iter <= 0) throw Error(ErrorCode::DomainError, "RootSolveConfig: max_iter must be positive");
    if (!(fd_step > 0.0 && fd_step < 1e-3)) {
      throw Error(ErrorCode::DomainError, "RootSolveConfig: fd_step must lie in (0,1e-3)");
    }
  }
};

/// Tag selecting the finite-difference derivative in newton_holomorphic.
struct FiniteDifference {};
inline constexpr FiniteDifference finite_difference{};

/// Central difference (f(z+h) - f(z-h)) / 2h along the real direction; for a
/// holomorphic f this is the complex derivative.
template <class F>
CPoint central_difference(F&& f, CPoint z, double h = 1e-6) {
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

namespace detail {

template <class F>
bool try_eval(F& f, CPoint z, CPoint& out) {
  try {
    out = f(z);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PoleProximity) return false;
    throw;
  }
  return is_finite(out);
}

}  // namespace detail

/// Damped Newton iteration for a zero of a holomorphic map. Returns a point
/// whose residual |f(z)| is at most cfg.tol_residual.
template <class F, class DF>
CPoint newton_holomorphic(F&& f, DF&& df, CPoint z0, const RootSolveConfig& cfg = {}) {
  cfg.validate();
  CPoint z = z0;
  CPoint fz;
  if (!detail::try_eval(f, z, fz)) {
    throw Error(ErrorCode::NoConvergence, "newton: map not finite at the seed");
  }
  for (int it = 0;; ++it) {
    if (std::abs(fz) <= cfg.tol_residual) return z;
    if (it == cfg.max_iter) break;
    const CPoint d = df(z);
    if (!is_finite(d) || std::abs(d) < cfg.derivative_floor) {
      throw Error(ErrorCode::DerivativeVanishes, "newton: derivative below floor");
    }
    const CPoint step = fz / d;
    double t = 1.0;
    CPoint zn = z - step;
    CPoint fn;
    bool ok = detail::try_eval(f, zn, fn);
    for (int k = 0; k < cfg.max_halvings && !(ok && std::abs(fn) < std::abs(fz)); ++k) {
      t *= 0.5;
      zn = z - t * step;
      ok = detail::try_eval(f, zn, fn);
    }
    if (!ok) throw Error(ErrorCode::NoConvergence, "newton: no admissible damped step");
    z = zn;
    fz = fn;
  }
  throw Error(ErrorCode::NoConvergence,
              "newton: residual " + std::to_string(std::abs(fz)) + " after " +
                  std::to_string(cfg.max_iter) + " iterations");
}

template <class F>
CPoint newton_holomorphic(F&& f, FiniteDifference, CPoint z0, const RootSolveConfig& cfg = {}) {
  const double h = cfg.fd_step;
  return newton_holomorphic(f, [&](CPoint z) { return central_difference(f, z, h); }, z0, cfg);
}

struct OrbitConfig {
  double bailout = kBailout;
};

struct Orbit {
  std::vector<CPoint> points;
  bool escaped = false;

  CPoint back() const { return points.back(); }
};

/// (z0, f(z0), ..., f^n(z0)), cut short with `escaped` set once an iterate
/// leaves the bailout disc. Pole proximity of a meromorphic map is PoleHit.
template <class F>
Orbit orbit(F&& f, CPoint z0, std::size_t n, const OrbitConfig& cfg = {}) {
  Orbit out;
  out.points.reserve(n + 1);
  out.points.push_back(z0);
  CPoint z = z0;
  for (std::size_t k = 0; k < n; ++k) {
    try {
      z = f(z);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PoleProximity) {
        throw Error(ErrorCode::PoleHit, "orbit: iterate " + std::to_string(k + 1) + " hit a pole");
      }
      throw;
    }
    if (!is_finite(z) || std::abs(z) > cfg.bailout) {
      out.escaped = true;
      if (is_finite(z)) out.points.push_back(z);
      break;
    }
    out.points.push_back(z);
  }
  return out;
}

/// Hyperbolic distance in the unit disc for the metric 2|dz|/(1-|z|^2).
template <class T>
T hyperbolic_distance_disc(std::complex<T> z, std::complex<T> w) {
  const T r = std::abs((z - w) / (T(1) - std::conj(w) * z));
  return T(2) * std::atanh(r);
}

/// Hyperbolic distance in the upper half-plane for the metric |dz|/Im z.
template <class T>
T hyperbolic_distance_halfplane(std::complex<T> z, std::complex<T> w) {
  const T r = std::abs(z - w) / std::abs(z - std::conj(w));
  return T(2) * std::atanh(r);
}

/// Cayley map H -> D, z -> (z - i)/(z + i).
inline CPoint cayley_to_disc(CPoint z) { return (z - kI) / (z + kI); }
/// Inverse Cayley map D -> H.
inline CPoint cayley_to_halfplane(CPoint w) { return kI * (1.0 + w) / (1.0 - w); }

// ---------------------------------------------------------------------------
// Argument principle

struct ZeroSearchConfig {
  int samples_per_edge = 64;
  double max_ratio_step = 0.3;      // accept a boundary step when |h(b)/h(a) - 1| is below this
  double max_rate = 1.0;            // and |b - a| |h'/h| at both ends is below this
  int max_edge_depth = 40;
  double min_box = 1e-7;            // boxes this small are not split further
  int max_box_depth = 60;
  int polish_iter = 60;
};

struct ZeroWithMultiplicity {
  CPoint location;
  int multiplicity = 1;
};

namespace detail {

template <class H>
CPoint eval_boundary(H& h, CPoint z) {
  CPoint v;
  try {
    v = h(z);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PoleProximity) {
      throw Error(ErrorCode::WindowBoundaryZero, "pole on the contour");
    }
    throw;
  }
  if (!is_finite(v)) throw Error(ErrorCode::WindowBoundaryZero, "non-finite value on the contour");
  if (std::abs(v) == 0.0) throw Error(ErrorCode::WindowBoundaryZero, "zero on the contour");
  return v;
}

// Relative change of h over a fraction of the segment next to an endpoint,
// scaled to the full segment: a one-sided estimate of |b - a| |h'/h|.
template <class H>
double local_rate(H& h, CPoint from, CPoint hfrom, CPoint toward) {
  constexpr double s = 1e-3;
  const CPoint v = eval_boundary(h, from + s * (toward - from));
  return std::abs(v / hfrom - 1.0) / s;
}

template <class H>
double arg_change(H& h, CPoint a, CPoint ha, CPoint b, CPoint hb, int depth, const ZeroSearchConfig& cfg) {
  // Bounding the ratio, not only its argument, and the endpoint log-derivatives
  // keeps fast rotation from aliasing into a small argument step.
  const CPoint ratio = hb / ha;
  if (std::abs(ratio - 1.0) <= cfg.max_ratio_step && local_rate(h, a, ha, b) <= cfg.max_rate &&
      local_rate(h, b, hb, a) <= cfg.max_rate) {
    return std::arg(ratio);
  }
  if (depth >= cfg.max_edge_depth) {
    throw Error(ErrorCode::WindowBoundaryZero, "argument not resolvable: zero within tolerance of the window edge");
  }
  const CPoint m = 0.5 * (a + b);
  const CPoint hm = eval_boundary(h, m);
  return arg_change(h, a, ha, m, hm, depth + 1, cfg) + arg_change(h, m, hm, b, hb, depth + 1, cfg);
}

}  // namespace detail

/// Number of zeros minus poles of h inside r, counted with multiplicity, by
/// tracking the argument of h along the boundary with adaptive refinement.
template <class H>
int winding_number(H&& h, const Rect& r, const ZeroSearchConfig& cfg = {}) {
  const std::array<CPoint, 5> corners{CPoint(r.re0, r.im0), CPoint(r.re1, r.im0), CPoint(r.re1, r.im1),
                                      CPoint(r.re0, r.im1), CPoint(r.re0, r.im0)};
  double total = 0.0;
  CPoint prev = corners[0];
  CPoint hprev = detail::eval_boundary(h, prev);
  for (int e = 0; e < 4; ++e) {
    for (int k = 1; k <= cfg.samples_per_edge; ++k) {
      const double t = static_cast<double>(k) / cfg.samples_per_edge;
      const CPoint z = corners[e] + t * (corners[e + 1] - corners[e]);
      const CPoint hz = detail::eval_boundary(h, z);
      total += detail::arg_change(h, prev, hprev, z, hz, 0, cfg);
      prev = z;
      hprev = hz;
    }
  }
  const double turns = total / (2.0 * kPi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 0.05) {
    throw Error(ErrorCode::NoConvergence, "winding number not integral: " + std::to_string(turns));
  }
  return static_cast<int>(rounded);
}

namespace detail {

// Newton with multiplicity m; returns true when the step has shrunk to
// rounding level.
template <class H, class DH>
bool polish_zero(H& h, DH& dh, CPoint& z, int m, int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    const CPoint v = h(z);
    if (std::abs(v) == 0.0) return true;
    const CPoint d = dh(z);
    if (!is_finite(d) || std::abs(d) == 0.0) return false;
    const CPoint step = static_cast<double>(m) * v / d;
    z -= step;
    if (!is_finite(z)) return false;
    if (std::abs(step) <= 4e-15 * (1.0 + std::abs(z))) return true;
  }
  return false;
}

template <class H, class DH>
void search_box(H& h, DH& dh, const Rect& box, int count, int depth, const ZeroSearchConfig& cfg,
                std::vector<ZeroWithMultiplicity>& out) {
  if (count == 0) return;
  const double size = std::max(box.width(), box.height());
  if (count == 1 || size < cfg.min_box || depth >= cfg.max_box_depth) {
    CPoint z = box.center();
    const bool converged = polish_zero(h, dh, z, count, cfg.polish_iter);
    const double margin = 1e-9 * (1.0 + std::abs(z));
    if (converged && box.contains(z, margin)) {
      out.push_back({z, count});
      return;
    }
    if (size < cfg.min_box || depth >= cfg.max_box_depth) {
      out.push_back({box.center(), count});
      return;
    }
  }
  // Split slightly off-centre; retry with another offset if a zero sits on a
  // split line.
  static constexpr std::array<double, 4> kOffsets{0.5123, 0.4377, 0.5791, 0.4613};
  for (double t : kOffsets) {
    const double xm = box.re0 + t * box.width();
    const double ym = box.im0 + (1.0 - t) * box.height();
    const std::array<Rect, 4> quads{Rect{box.re0, xm, box.im0, ym}, Rect{xm, box.re1, box.im0, ym},
                                    Rect{box.re0, xm, ym, box.im1}, Rect{xm, box.re1, ym, box.im1}};
    std::array<int, 4> counts{};
    try {
      int sum = 0;
      for (int q = 0; q < 4; ++q) {
        counts[q] = winding_number(h, quads[q], cfg);
        sum += counts[q];
      }
      if (sum != count) continue;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::WindowBoundaryZero || e.code() == ErrorCode::NoConvergence) continue;
      throw;
    }
    for (int q = 0; q < 4; ++q) search_box(h, dh, quads[q], counts[q], depth + 1, cfg, out);
    return;
  }
  throw Error(ErrorCode::NoConvergence, "zero search: could not subdivide box consistently");
}

}  // namespace detail

/// All zeros of a holomorphic h inside the window, with multiplicities.
/// Throws WindowBoundaryZero if a zero lies on (or numerically at) the edge.
template <class H, class DH>
std::vector<ZeroWithMultiplicity> zeros_in_rectangle(H&& h, DH&& dh, const Rect& window,
                                                     const ZeroSearchConfig& cfg = {}) {
  if (!window.valid()) throw Error(ErrorCode::DomainError, "zeros_in_rectangle: empty window");
  const int total = winding_number(h, window, cfg);
  if (total < 0) throw Error(ErrorCode::DomainError, "zeros_in_rectangle: map has poles in the window");
  std::vector<ZeroWithMultiplicity> out;
  detail::search_box(h, dh, window, total, 0, cfg, out);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  return out;
}

template <class H>
std::vector<ZeroWithMultiplicity> zeros_in_rectangle(H&& h, FiniteDifference, const Rect& window,
                                                     const ZeroSearchConfig& cfg = {}, double fd_step = 1e-6) {
  auto dh = [&](CPoint z) { return central_difference(h, z, fd_step); };
  return zeros_in_rectangle(h, dh, window, cfg);
}

/// Derivatives 0..order of a holomorphic f at z0 from the Cauchy integral on
/// a circle of radius rho (trapezoid rule, spectrally accurate).
template <class F>
std::vector<CPoint> cauchy_derivatives(F&& f, CPoint z0, double rho, int order, int nodes = 128) {
  std::vector<CPoint> coeffs(static_cast<std::size_t>(order) + 1, CPoint{});
  for (int j = 0; j < nodes; ++j) {
    const double t = 2.0 * kPi * j / nodes;
    const CPoint u = std::polar(1.0, t);
    const CPoint v = f(z0 + rho * u);
    CPoint u_pow_inv = 1.0;
    for (int k = 0; k <= order; ++k) {
      coeffs[static_cast<std::size_t>(k)] += v * u_pow_inv;
      u_pow_inv /= u;
    }
  }
  double factorial = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) factorial *= k;
    coeffs[static_cast<std::size_t>(k)] *= factorial / (nodes * std::pow(rho, k));
  }
  return coeffs;
}

}  // namespace innerdyn
