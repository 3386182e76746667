#pragma once

// Transcendental entire families: lambda e^z, lambda sin z, lambda + z + e^{-z},
// lambda z e^z, lambda e^{z^q}, alpha_d, rho_d, the C* map -z^2 exp(p(z) - c) and its lift.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "innerdyn/error.hpp"
#include "innerdyn/halfplane.hpp"
#include "innerdyn/numerics.hpp"

namespace innerdyn {

enum class FamilyTag { ExpLambda, SineLambda, FatouLambda, ZExp, PowerExp, AlphaD, RhoD, CstarMap, CstarLift };

inline std::string_view to_string(FamilyTag t) {
  switch (t) {
    case FamilyTag::ExpLambda: return "exp";
    case FamilyTag::SineLambda: return "sine";
    case FamilyTag::FatouLambda: return "fatou";
    case FamilyTag::ZExp: return "zexp";
    case FamilyTag::PowerExp: return "powerexp";
    case FamilyTag::AlphaD: return "alpha";
    case FamilyTag::RhoD: return "rho";
    case FamilyTag::CstarMap: return "cstar";
    case FamilyTag::CstarLift: return "cstar-lift";
  }
  return "unknown";
}

inline FamilyTag family_from_string(std::string_view s) {
  for (FamilyTag t : {FamilyTag::ExpLambda, FamilyTag::SineLambda, FamilyTag::FatouLambda, FamilyTag::ZExp,
                      FamilyTag::PowerExp, FamilyTag::AlphaD, FamilyTag::RhoD, FamilyTag::CstarMap,
                      FamilyTag::CstarLift}) {
    if (to_string(t) == s) return t;
  }
  throw Error(ErrorCode::DomainError, "unknown family '" + std::string(s) + "'");
}

struct ValueAndDerivative {
  CPoint value;
  CPoint derivative;
};

namespace detail {

// (1 - cos sqrt(s))/2 and sin(sqrt s)/sqrt s as entire functions of s. Near 0
// the even cosine series; elsewhere half-angle forms, which do not depend on
// the branch of the square root.
inline CPoint half_versine_of_square(CPoint s) {
  if (std::abs(s) <= 1.0) {
    CPoint term = 0.5 * s;  // k = 1: s/(2 * 2!)
    term /= 2.0;
    CPoint sum = term;
    for (int k = 2; k < 20; ++k) {
      term *= -s / static_cast<double>((2 * k - 1) * (2 * k));
      sum += term;
    }
    return sum;
  }
  const CPoint h = std::sin(0.5 * std::sqrt(s));
  return h * h;
}

inline CPoint sinc_of_square(CPoint s) {
  if (std::abs(s) <= 1.0) {
    CPoint term = 1.0;
    CPoint sum = 1.0;
    for (int k = 1; k < 20; ++k) {
      term *= -s / static_cast<double>((2 * k) * (2 * k + 1));
      sum += term;
    }
    return sum;
  }
  const CPoint w = std::sqrt(s);
  return std::sin(w) / w;
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace detail

/// alpha_d(z) = ((1 - cos(pi sqrt z))/2)^d and its derivative.
inline ValueAndDerivative eval_alpha(int d, CPoint z) {
  const double pi2 = kPi * kPi;
  const CPoint u = detail::half_versine_of_square(pi2 * z);
  const CPoint du = 0.25 * pi2 * detail::sinc_of_square(pi2 * z);
  const CPoint ud1 = d > 1 ? std::pow(u, d - 1) : CPoint(1.0);
  return {ud1 * u, static_cast<double>(d) * ud1 * du};
}

/// Real restriction of alpha_d to [0, inf) with its derivative (fast path for orbits).
inline void eval_alpha_real(int d, double x, double& value, double& derivative) {
  const double w = kPi * std::sqrt(x);
  const double h = std::sin(0.5 * w);
  const double u = h * h;
  const double sinc = w < 1e-4 ? 1.0 - w * w / 6.0 : std::sin(w) / w;
  const double du = 0.25 * kPi * kPi * sinc;
  const double ud1 = std::pow(u, d - 1);
  value = ud1 * u;
  derivative = d * ud1 * du;
}

/// p(z) = 2 sum_{j=1}^{d-1} C(d-1, j) z^j / j and p'(z).
inline ValueAndDerivative eval_cstar_polynomial(int d, CPoint z) {
  CPoint p = 0.0;
  CPoint dp = 0.0;
  CPoint zj1 = 1.0;  // z^{j-1}
  for (int j = 1; j <= d - 1; ++j) {
    const double c = 2.0 * detail::binomial(d - 1, j);
    dp += c * zj1;
    zj1 *= z;
    p += c * zj1 / static_cast<double>(j);
  }
  return {p, dp};
}

class EntireFamilyInstance {
 public:
  EntireFamilyInstance(FamilyTag tag, CPoint lambda, int d = 2, int q = 1) : tag_(tag), lambda_(lambda), d_(d), q_(q) {
    validate();
    if (tag_ == FamilyTag::CstarMap || tag_ == FamilyTag::CstarLift) c_ = eval_cstar_polynomial(d_, -1.0).value;
  }

  static EntireFamilyInstance exp_lambda(CPoint lambda) { return {FamilyTag::ExpLambda, lambda}; }
  static EntireFamilyInstance sine(double lambda) { return {FamilyTag::SineLambda, lambda}; }
  static EntireFamilyInstance fatou(double lambda) { return {FamilyTag::FatouLambda, lambda}; }
  static EntireFamilyInstance zexp(CPoint lambda) { return {FamilyTag::ZExp, lambda}; }
  static EntireFamilyInstance powerexp(CPoint lambda, int q) { return {FamilyTag::PowerExp, lambda, 2, q}; }
  static EntireFamilyInstance alpha(int d) { return {FamilyTag::AlphaD, 0.0, d}; }
  static EntireFamilyInstance rho(int d, double lambda) { return {FamilyTag::RhoD, lambda, d}; }
  static EntireFamilyInstance cstar(int d) { return {FamilyTag::CstarMap, 0.0, d}; }
  static EntireFamilyInstance cstar_lift(int d) { return {FamilyTag::CstarLift, 0.0, d}; }

  FamilyTag tag() const { return tag_; }
  CPoint lambda() const { return lambda_; }
  int d() const { return d_; }
  int q() const { return q_; }
  /// c = p(-1) for the C* map and its lift.
  double cstar_constant() const { return c_.real(); }

  ValueAndDerivative eval(CPoint z) const {
    switch (tag_) {
      case FamilyTag::ExpLambda: {
        const CPoint v = lambda_ * std::exp(z);
        return {v, v};
      }
      case FamilyTag::SineLambda:
        return {lambda_ * std::sin(z), lambda_ * std::cos(z)};
      case FamilyTag::FatouLambda: {
        const CPoint e = std::exp(-z);
        return {lambda_ + z + e, 1.0 - e};
      }
      case FamilyTag::ZExp: {
        const CPoint e = lambda_ * std::exp(z);
        return {z * e, (1.0 + z) * e};
      }
      case FamilyTag::PowerExp: {
        const CPoint zq1 = q_ > 1 ? std::pow(z, q_ - 1) : CPoint(1.0);
        const CPoint v = lambda_ * std::exp(zq1 * z);
        return {v, static_cast<double>(q_) * zq1 * v};
      }
      case FamilyTag::AlphaD:
        return eval_alpha(d_, z);
      case FamilyTag::RhoD: {
        const ValueAndDerivative a = eval_alpha(d_, z);
        return {(a.value + lambda_) / (1.0 + lambda_), a.derivative / (1.0 + lambda_)};
      }
      case FamilyTag::CstarMap: {
        const CPoint e = std::exp(eval_cstar_polynomial(d_, z).value - c_);
        return {-z * z * e, -e * 2.0 * z * std::pow(z + 1.0, d_ - 1)};
      }
      case FamilyTag::CstarLift: {
        const CPoint ew = std::exp(z);
        const ValueAndDerivative p = eval_cstar_polynomial(d_, ew);
        return {2.0 * z + p.value - c_ + kPi * kI, 2.0 + p.derivative * ew};
      }
    }
    throw Error(ErrorCode::DomainError, "unknown family");
  }

  CPoint operator()(CPoint z) const { return eval(z).value; }
  CPoint derivative(CPoint z) const { return eval(z).derivative; }

 private:
  void validate() const {
    if (!is_finite(lambda_)) throw Error(ErrorCode::DomainError, "family parameter must be finite");
    switch (tag_) {
      case FamilyTag::ExpLambda:
      case FamilyTag::ZExp:
        if (lambda_ == CPoint{}) throw Error(ErrorCode::DomainError, "lambda must be nonzero");
        break;
      case FamilyTag::SineLambda:
        if (lambda_.imag() != 0.0 || !(lambda_.real() > 0.0 && lambda_.real() < 1.0)) {
          throw Error(ErrorCode::DomainError, "sine family needs real lambda in (0,1)");
        }
        break;
      case FamilyTag::FatouLambda:
        if (lambda_.imag() != 0.0 || !(lambda_.real() > 0.0)) {
          throw Error(ErrorCode::DomainError, "Fatou family needs real lambda > 0");
        }
        break;
      case FamilyTag::PowerExp:
        if (lambda_ == CPoint{} || q_ < 1) throw Error(ErrorCode::DomainError, "power-exp family needs lambda != 0, q >= 1");
        break;
      case FamilyTag::AlphaD:
      case FamilyTag::CstarMap:
      case FamilyTag::CstarLift:
        if (d_ < 2) throw Error(ErrorCode::DomainError, "degree d must be at least 2");
        break;
      case FamilyTag::RhoD:
        if (d_ < 2) throw Error(ErrorCode::DomainError, "degree d must be at least 2");
        if (lambda_.imag() != 0.0 || !(lambda_.real() > 0.0)) throw Error(ErrorCode::DomainError, "rho needs real lambda > 0");
        break;
    }
  }

  FamilyTag tag_;
  CPoint lambda_;
  int d_;
  int q_;
  CPoint c_ = 0.0;
};

inline ValueAndDerivative eval_family(const EntireFamilyInstance& f, CPoint z) { return f.eval(z); }

/// lambda = tau e^{-tau}: lambda e^z has the fixed point tau with multiplier tau.
inline CPoint exp_multiplier_map(CPoint tau) {
  if (tau == CPoint{}) throw Error(ErrorCode::DomainError, "exp_multiplier_map: tau must be nonzero");
  return tau * std::exp(-tau);
}

/// h(w) = 2w + p(e^w) - c + pi i, the lift of the C* map under exp.
inline CPoint cstar_lift(int d, CPoint w) { return EntireFamilyInstance::cstar_lift(d)(w); }

/// Zeros of f' in the window with multiplicities.
inline std::vector<ZeroWithMultiplicity> critical_points(const EntireFamilyInstance& f, const Rect& window,
                                                         const ZeroSearchConfig& cfg = {}) {
  auto df = [&](CPoint z) { return f.derivative(z); };
  return zeros_in_rectangle(df, finite_difference, window, cfg);
}

/// Critical points known in closed form, inside the window (empty tag list for
/// families without a lattice formula). Returns false if the family has none on record.
inline bool known_critical_points(const EntireFamilyInstance& f, const Rect& window, std::vector<ZeroWithMultiplicity>& out) {
  out.clear();
  auto add = [&](CPoint z, int m) {
    if (window.contains(z)) out.push_back({z, m});
  };
  switch (f.tag()) {
    case FamilyTag::ExpLambda:
      return true;
    case FamilyTag::SineLambda: {
      const int k0 = static_cast<int>(std::floor(window.re0 / kPi - 0.5)) - 1;
      const int k1 = static_cast<int>(std::ceil(window.re1 / kPi - 0.5)) + 1;
      for (int k = k0; k <= k1; ++k) add((2 * k + 1) * kHalfPi, 1);
      break;
    }
    case FamilyTag::FatouLambda: {
      const int k0 = static_cast<int>(std::floor(window.im0 / (2 * kPi))) - 1;
      const int k1 = static_cast<int>(std::ceil(window.im1 / (2 * kPi))) + 1;
      for (int k = k0; k <= k1; ++k) add(CPoint(0.0, 2 * kPi * k), 1);
      break;
    }
    case FamilyTag::ZExp:
      add(-1.0, 1);
      break;
    case FamilyTag::PowerExp:
      if (f.q() > 1) add(0.0, f.q() - 1);
      break;
    case FamilyTag::CstarMap:
      add(0.0, 1);
      add(-1.0, f.d() - 1);
      break;
    default:
      return false;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  return true;
}

inline FixedPointClass classify_multiplier(CPoint m) {
  if (std::abs(m - 1.0) <= kParabolicBand) return FixedPointClass::Parabolic;
  return std::abs(m) < 1.0 ? FixedPointClass::AttractingInterior : FixedPointClass::Repelling;
}

/// Zeros of f(z) - z in the window, each with its multiplier.
inline std::vector<FixedPointRecord> fixed_points(const EntireFamilyInstance& f, const Rect& window,
                                                  const ZeroSearchConfig& cfg = {}) {
  auto g = [&](CPoint z) { return f(z) - z; };
  auto dg = [&](CPoint z) { return f.derivative(z) - 1.0; };
  std::vector<FixedPointRecord> out;
  for (const ZeroWithMultiplicity& z : zeros_in_rectangle(g, dg, window, cfg)) {
    FixedPointRecord r;
    r.location = z.location;
    r.multiplier = f.derivative(z.location);
    r.cls = classify_multiplier(r.multiplier);
    r.multiplicity = z.multiplicity;
    r.residual = std::abs(g(z.location));
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Koenigs linearization

struct KoenigsConfig {
  double tolerance = 1e-14;     // relative change that ends the refinement
  std::size_t max_depth = 10000;
  double entry_radius = 1e-2;   // orbit must come this close to z* before estimates start
};

struct KoenigsValue {
  CPoint value;
  std::size_t depth = 0;
  double change = 0.0;  // last successive difference of the Richardson estimates
};

/// kappa(z) = lim tau^{-n} (f^n(z) - z*), normalized by kappa(z*) = 0 and
/// kappa'(z*) = 1. Estimates E_n are combined as (E_{n+1} - tau E_n)/(1 - tau),
/// which removes the leading quadratic error; refinement stops once successive
/// values agree to the tolerance or start to drift from rounding.
class KoenigsChart {
 public:
  using Map = std::function<CPoint(CPoint)>;

  KoenigsChart(Map f, CPoint z_star, CPoint tau, KoenigsConfig cfg = {})
      : f_(std::move(f)), z_star_(z_star), tau_(tau), cfg_(cfg) {
    if (!(std::abs(tau) > 0.0 && std::abs(tau) < 1.0)) {
      throw Error(ErrorCode::DomainError, "KoenigsChart: multiplier must satisfy 0 < |tau| < 1");
    }
  }

  CPoint fixed_point() const { return z_star_; }
  CPoint multiplier() const { return tau_; }

  KoenigsValue evaluate(CPoint z) const {
    CPoint w = z;
    CPoint scale = 1.0;  // tau^{-n}
    std::size_t n = 0;
    for (; n < cfg_.max_depth && std::abs(w - z_star_) > cfg_.entry_radius; ++n) {
      w = f_(w);
      scale /= tau_;
      if (!is_finite(w) || !is_finite(scale)) break;
    }
    if (!(std::abs(w - z_star_) <= cfg_.entry_radius)) {
      throw Error(ErrorCode::NotInBasin, "Koenigs chart: orbit does not approach the fixed point");
    }
    CPoint e_prev = scale * (w - z_star_);
    CPoint r_prev = e_prev;
    bool have_r = false;
    double best_change = std::numeric_limits<double>::infinity();
    CPoint best = e_prev;
    std::size_t best_depth = n;
    for (; n < cfg_.max_depth; ++n) {
      w = f_(w);
      scale /= tau_;
      if (w == z_star_ || !is_finite(scale)) break;
      const CPoint e = scale * (w - z_star_);
      const CPoint r = (e - tau_ * e_prev) / (1.0 - tau_);
      e_prev = e;
      if (have_r) {
        const double change = std::abs(r - r_prev);
        if (change < best_change) {
          best_change = change;
          best = r;
          best_depth = n + 1;
        } else if (change > 4.0 * best_change && best_change < 1e-6 * std::abs(best)) {
          break;  // rounding floor reached
        }
        if (change <= cfg_.tolerance * std::abs(r)) {
          return {r, n + 1, change};
        }
      }
      r_prev = r;
      have_r = true;
    }
    if (!(best_change < 1e-6 * std::max(std::abs(best), 1e-300))) {
      throw Error(ErrorCode::NotInBasin, "Koenigs chart: estimates did not settle");
    }
    return {best, best_depth, best_change};
  }

  CPoint operator()(CPoint z) const { return evaluate(z).value; }

 private:
  Map f_;
  CPoint z_star_;
  CPoint tau_;
  KoenigsConfig cfg_;
};

/// Chart for a family instance at a verified attracting fixed point.
inline KoenigsChart koenigs_chart(const EntireFamilyInstance& f, CPoint z_star, CPoint tau, KoenigsConfig cfg = {}) {
  const double residual = std::abs(f(z_star) - z_star);
  if (residual > 1e-10 * (1.0 + std::abs(z_star))) {
    throw Error(ErrorCode::DomainError, "koenigs_chart: z* is not a fixed point");
  }
  if (std::abs(f.derivative(z_star) - tau) > 1e-8 * (1.0 + std::abs(tau))) {
    throw Error(ErrorCode::DomainError, "koenigs_chart: tau is not the multiplier at z*");
  }
  return KoenigsChart([f](CPoint z) { return f(z); }, z_star, tau, cfg);
}

// ---------------------------------------------------------------------------
// The rho_d bifurcation

struct BifurcationResult {
  double lambda0 = 0.0;        // tangency solve
  double tangency_point = 0.0; // x with f(x) = x, f'(x) = 1
  double lambda_orbit = 0.0;   // independent orbit bisection
};

namespace detail {

// F(x) = alpha(x) + (1 - x) alpha'(x) - 1 vanishes where f_lambda is tangent to
// the diagonal, lambda = alpha'(x) - 1.
inline double tangency_residual(int d, double x) {
  double a, da;
  eval_alpha_real(d, x, a, da);
  return a + (1.0 - x) * da - 1.0;
}

// true when the orbit of 0 under (alpha + lambda)/(1 + lambda) reaches 1.
inline bool orbit_reaches_one(int d, double lambda, std::size_t budget) {
  double x = 0.0;
  for (std::size_t k = 0; k < budget; ++k) {
    double a, da;
    eval_alpha_real(d, x, a, da);
    const double xn = (a + lambda) / (1.0 + lambda);
    if (xn > 0.999) return true;
    if (std::abs(xn - x) < 1e-16) return false;
    x = xn;
  }
  return false;
}

}  // namespace detail

/// lambda_0 from the tangency system f(x) = x, f'(x) = 1 on (0,1): the first
/// sign change of F on a grid, bisection, then Newton with a numerical F'.
inline double rho_tangency_point(int d) {
  if (d < 2) throw Error(ErrorCode::DomainError, "rho_bifurcation_lambda0: d must be at least 2");
  const int n = 2000;
  double lo = -1.0, hi = -1.0;
  double prev = detail::tangency_residual(d, 1e-9);
  for (int i = 1; i < n; ++i) {
    const double x = static_cast<double>(i) / n;
    const double v = detail::tangency_residual(d, x);
    if (prev < 0.0 && v >= 0.0) {
      lo = static_cast<double>(i - 1) / n;
      hi = x;
      break;
    }
    prev = v;
  }
  if (lo < 0.0) throw Error(ErrorCode::NoConvergence, "rho_bifurcation_lambda0: no tangency in (0,1)");
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (detail::tangency_residual(d, mid) < 0.0) lo = mid;
    else hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const double h = 1e-6;
    const double fx = detail::tangency_residual(d, x);
    const double dfx = (detail::tangency_residual(d, x + h) - detail::tangency_residual(d, x - h)) / (2 * h);
    const double next = x - fx / dfx;
    if (!(next > lo - 1e-3 && next < hi + 1e-3)) break;
    const bool done = std::abs(next - x) < 1e-16;
    x = next;
    if (done) break;
  }
  return x;
}

inline double rho_bifurcation_lambda0(int d) {
  const double x = rho_tangency_point(d);
  double a, da;
  eval_alpha_real(d, x, a, da);
  const double lambda0 = da - 1.0;
  if (!(lambda0 > 0.0)) throw Error(ErrorCode::NoConvergence, "rho_bifurcation_lambda0: tangency gives lambda <= 0");
  return lambda0;
}

/// lambda_0 by bisection on the fate of the orbit of 0, independent of the tangency solve.
inline double rho_bifurcation_by_orbit(int d, double width = 1e-8, std::size_t budget = 200000) {
  if (d < 2) throw Error(ErrorCode::DomainError, "rho_bifurcation_by_orbit: d must be at least 2");
  double lo = 0.0;
  double hi = 1.0;
  if (!detail::orbit_reaches_one(d, hi, budget)) throw Error(ErrorCode::NoConvergence, "orbit bisection: no upper bracket");
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (detail::orbit_reaches_one(d, mid, budget)) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

inline BifurcationResult rho_bifurcation(int d) {
  BifurcationResult r;
  r.tangency_point = rho_tangency_point(d);
  r.lambda0 = rho_bifurcation_lambda0(d);
  r.lambda_orbit = rho_bifurcation_by_orbit(d);
  return r;
}

}  // namespace innerdyn
