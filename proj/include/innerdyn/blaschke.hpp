#pragma once

// Finite and truncated infinite Blaschke products, the sine-family product
// g_tau(z) = z * prod (a_n^2 - z^2) / (1 - a_n^2 z^2) with a_n = (tau^n - 1)/(tau^n + 1),
// and the degree-two parabolic (Toepfer) product.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "innerdyn/error.hpp"
#include "innerdyn/numerics.hpp"

namespace innerdyn {

/// Zeros must satisfy |a| < 1 - kZeroMargin.
inline constexpr double kZeroMargin = 1e-15;
/// Above this degree the product is accumulated in log space.
inline constexpr std::size_t kLogSpaceDegree = 64;

namespace detail {

// Blaschke factor (|a|/a)(a - z)/(1 - conj(a) z), or z when a = 0.
inline CPoint blaschke_factor(CPoint a, CPoint z) {
  if (a == CPoint{}) return z;
  const double m = std::abs(a);
  return (m / a) * (a - z) / (1.0 - std::conj(a) * z);
}

inline CPoint blaschke_factor_derivative(CPoint a, CPoint z) {
  if (a == CPoint{}) return 1.0;
  const double m = std::abs(a);
  const CPoint den = 1.0 - std::conj(a) * z;
  return (m / a) * (m * m - 1.0) / (den * den);
}

}  // namespace detail

class FiniteBlaschke {
 public:
  FiniteBlaschke() = default;

  /// Zeros are stored by increasing modulus, ties broken by argument.
  FiniteBlaschke(double phase, std::vector<CPoint> zeros) : phase_(phase), zeros_(std::move(zeros)) {
    if (!std::isfinite(phase_)) throw Error(ErrorCode::DomainError, "FiniteBlaschke: non-finite phase");
    for (const CPoint& a : zeros_) {
      if (!is_finite(a) || !(std::abs(a) < 1.0 - kZeroMargin)) {
        throw Error(ErrorCode::DomainError, "FiniteBlaschke: zero outside the open unit disc");
      }
    }
    std::stable_sort(zeros_.begin(), zeros_.end(), [](CPoint x, CPoint y) {
      const double mx = std::abs(x);
      const double my = std::abs(y);
      if (mx != my) return mx < my;
      return std::arg(x) < std::arg(y);
    });
  }

  double phase() const { return phase_; }
  const std::vector<CPoint>& zeros() const { return zeros_; }
  std::size_t degree() const { return zeros_.size(); }

  CPoint operator()(CPoint z) const {
    const CPoint rotation = std::polar(1.0, phase_);
    if (zeros_.size() <= kLogSpaceDegree) {
      CPoint p = rotation;
      for (const CPoint& a : zeros_) p *= detail::blaschke_factor(a, z);
      return p;
    }
    double log_modulus = 0.0;
    double angle = phase_;
    for (const CPoint& a : zeros_) {
      const CPoint f = detail::blaschke_factor(a, z);
      if (f == CPoint{}) return CPoint{};
      log_modulus += std::log(std::abs(f));
      angle += std::arg(f);
    }
    return std::polar(std::exp(log_modulus), angle);
  }

  CPoint derivative(CPoint z) const {
    CPoint p = std::polar(1.0, phase_);
    CPoint dp = 0.0;
    for (const CPoint& a : zeros_) {
      const CPoint f = detail::blaschke_factor(a, z);
      const CPoint df = detail::blaschke_factor_derivative(a, z);
      dp = dp * f + p * df;
      p *= f;
    }
    return dp;
  }

  friend bool operator==(const FiniteBlaschke&, const FiniteBlaschke&) = default;

 private:
  double phase_ = 0.0;
  std::vector<CPoint> zeros_;
};

inline CPoint eval_finite(const FiniteBlaschke& b, CPoint z) { return b(z); }

/// (3z^2 + 1)/(3 + z^2) written with zeros +-i/sqrt(3) and phase 0.
inline FiniteBlaschke parabolic_blaschke() {
  const double s = 1.0 / std::sqrt(3.0);
  return FiniteBlaschke(0.0, {CPoint(0.0, s), CPoint(0.0, -s)});
}

/// Value and first two derivatives of a map at a point.
struct Jet2 {
  CPoint value;
  CPoint first;
  CPoint second;
};

/// The Toepfer family (z^2 + k)/(k z^2 + 1) with derivatives by the quotient rule.
inline Jet2 topfer_map(double k, CPoint z) {
  const CPoint n = z * z + k;
  const CPoint d = k * z * z + 1.0;
  const CPoint dn = 2.0 * z;
  const CPoint dd = 2.0 * k * z;
  const double ddn = 2.0;
  const double ddd = 2.0 * k;
  const CPoint cross = dn * d - n * dd;
  Jet2 out;
  out.value = n / d;
  out.first = cross / (d * d);
  out.second = ((ddn * d - n * ddd) * d - 2.0 * dd * cross) / (d * d * d);
  return out;
}

struct TopferSolution {
  double k = 0.0;
  Jet2 at_one;  // g_k and its derivatives at z = 1
};

/// The k in (0,1) for which (z^2 + k)/(k z^2 + 1) has a parabolic fixed point
/// at 1, found by bisection on g_k'(1) - 1. The triple-fixed-point condition
/// g_k''(1) = 0 is checked at the solution.
inline TopferSolution solve_topfer_k() {
  auto excess = [](double k) { return topfer_map(k, 1.0).first.real() - 1.0; };
  double lo = 1e-12;
  double hi = 1.0 - 1e-12;
  double flo = excess(lo);
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = excess(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  TopferSolution sol;
  sol.k = 0.5 * (lo + hi);
  sol.at_one = topfer_map(sol.k, 1.0);
  if (std::abs(sol.at_one.value - 1.0) > 1e-12 || std::abs(sol.at_one.second) > 1e-10) {
    throw Error(ErrorCode::NoConvergence, "solve_topfer_k: solution is not a triple fixed point");
  }
  return sol;
}

/// sup over the circle of |B1 - B2|: uniform grid followed by golden-section
/// refinement around the largest samples. By the maximum principle this is
/// also the sup over the closed disc.
inline double uniform_circle_distance(const FiniteBlaschke& b1, const FiniteBlaschke& b2,
                                      int samples = 4096, int refine = 8) {
  auto gap = [&](double t) {
    const CPoint z = std::polar(1.0, t);
    return std::abs(b1(z) - b2(z));
  };
  std::vector<std::pair<double, int>> values;
  values.reserve(static_cast<std::size_t>(samples));
  const double h = 2.0 * kPi / samples;
  for (int j = 0; j < samples; ++j) values.emplace_back(gap(j * h), j);
  const int keep = std::min(refine, samples);
  std::partial_sort(values.begin(), values.begin() + keep, values.end(),
                    [](const auto& x, const auto& y) { return x.first > y.first; });
  double best = values.front().first;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int c = 0; c < keep; ++c) {
    double lo = (values[static_cast<std::size_t>(c)].second - 1) * h;
    double hi = (values[static_cast<std::size_t>(c)].second + 1) * h;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = gap(x1);
    double f2 = gap(x2);
    for (int it = 0; it < 80; ++it) {
      if (f1 > f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = gap(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = gap(x2);
      }
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

// ---------------------------------------------------------------------------
// Infinite products given by a closed-form zero generator.

/// Blaschke product whose zeros come from a generator n -> a_n (n >= 1),
/// evaluated with the first N factors. `tail_sum(N)` must bound
/// sum_{n > N} (1 - |a_n|); with |1 - b_a(z)| <= (1 - |a|)(1 + |z|)/(1 - |z|)
/// this certifies the relative truncation error on |z| <= r.
class TruncatedInfiniteBlaschke {
 public:
  using ZeroRule = std::function<CPoint(std::size_t)>;
  using TailSum = std::function<double(std::size_t)>;

  TruncatedInfiniteBlaschke(ZeroRule zero_rule, TailSum tail_sum, std::size_t truncation, double radius,
                            double phase = 0.0)
      : zero_rule_(std::move(zero_rule)), tail_sum_(std::move(tail_sum)), phase_(phase) {
    if (!(radius > 0.0 && radius < 1.0)) {
      throw Error(ErrorCode::DomainError, "TruncatedInfiniteBlaschke: radius must lie in (0,1)");
    }
    radius_ = radius;
    set_truncation(truncation);
  }

  std::size_t truncation() const { return truncation_; }
  double radius() const { return radius_; }
  double tail_bound() const { return tail_bound_; }
  CPoint zero(std::size_t n) const { return zero_rule_(n); }

  /// Relative error bound of dropping n > N, uniformly on |z| <= r.
  double tail_bound_for(std::size_t n_terms, double r) const {
    const double e = tail_sum_(n_terms) * (1.0 + r) / (1.0 - r);
    if (!(e <= 0.5)) return std::numeric_limits<double>::infinity();
    return std::expm1(2.0 * e);
  }

  void set_truncation(std::size_t n) {
    truncation_ = n;
    tail_bound_ = tail_bound_for(n, radius_);
  }

  CPoint operator()(CPoint z) const {
    if (std::abs(z) > radius_) throw Error(ErrorCode::DomainError, "evaluation outside the working radius");
    CPoint p = std::polar(1.0, phase_);
    for (std::size_t n = 1; n <= truncation_; ++n) p *= detail::blaschke_factor(zero_rule_(n), z);
    return p;
  }

 private:
  ZeroRule zero_rule_;
  TailSum tail_sum_;
  double phase_ = 0.0;
  std::size_t truncation_ = 0;
  double radius_ = 0.999;
  double tail_bound_ = 0.0;
};

/// a_n(tau) = (tau^n - 1)/(tau^n + 1), evaluated in T.
template <class T = double>
T sine_zero(double tau, std::size_t n) {
  const T p = std::pow(static_cast<T>(tau), static_cast<T>(n));
  if (!std::isfinite(static_cast<double>(p))) return T(1);
  return (p - T(1)) / (p + T(1));
}

/// 1 - a_n(tau) = 2/(tau^n + 1), free of cancellation.
inline double sine_zero_complement(double tau, std::size_t n) {
  const double p = std::pow(tau, static_cast<double>(n));
  return 2.0 / (p + 1.0);
}

inline constexpr double kDefaultWorkingRadius = 0.999;
inline constexpr std::size_t kMaxSineTerms = 200000;

/// g_tau with zeros {0, +-a_n}. N counts the pairs +-a_n kept.
class SineFamilyProduct {
 public:
  explicit SineFamilyProduct(double tau, double radius = kDefaultWorkingRadius, double target_tail = 1e-14)
      : tau_(tau), radius_(radius) {
    if (!(tau > 1.0) || !std::isfinite(tau)) throw Error(ErrorCode::DomainError, "SineFamilyProduct: tau must exceed 1");
    if (!(radius > 0.0 && radius < 1.0)) throw Error(ErrorCode::DomainError, "SineFamilyProduct: radius must lie in (0,1)");
    truncation_ = terms_for(target_tail, radius_);
    tail_bound_ = tail_bound(truncation_, radius_);
  }

  double tau() const { return tau_; }
  double radius() const { return radius_; }
  std::size_t truncation() const { return truncation_; }
  double tail_bound() const { return tail_bound_; }
  double zero(std::size_t n) const { return sine_zero(tau_, n); }

  /// Certified relative error of keeping n pairs, uniformly on |z| <= r.
  /// Uses |1 - (a^2 - z^2)/(1 - a^2 z^2)| <= (1 - a^2)(1 + r^2)/(1 - r^2),
  /// 1 - a_n^2 <= 4/(tau^n + 1) and sum_{n>N} 4/(tau^n + 1) <= 4/(tau^N (tau - 1)).
  double tail_bound(std::size_t n_pairs, double r) const {
    const double geometric = 4.0 / (std::pow(tau_, static_cast<double>(n_pairs)) * (tau_ - 1.0));
    const double e = geometric * (1.0 + r * r) / (1.0 - r * r);
    if (!(e <= 0.5)) return std::numeric_limits<double>::infinity();
    return std::expm1(2.0 * e);
  }

  /// Smallest number of pairs whose tail bound on |z| <= r is <= accuracy.
  std::size_t terms_for(double accuracy, double r) const {
    // Solve 4/(tau^N (tau - 1)) * C_r <= accuracy/2 approximately, then walk.
    const double c = (1.0 + r * r) / (1.0 - r * r);
    const double want = std::log(8.0 * c / ((tau_ - 1.0) * accuracy)) / std::log(tau_);
    std::size_t n = want > 1.0 ? static_cast<std::size_t>(want) : 1;
    if (n > kMaxSineTerms) {
      throw Error(ErrorCode::AccuracyUnreachable, "sine product: truncation would exceed the term cap");
    }
    while (n > 1 && tail_bound(n - 1, r) <= accuracy) --n;
    while (tail_bound(n, r) > accuracy) {
      if (++n > kMaxSineTerms) {
        throw Error(ErrorCode::AccuracyUnreachable, "sine product: truncation would exceed the term cap");
      }
    }
    return n;
  }

  struct Evaluation {
    CPoint value;
    CPoint derivative;
    double error_bound;  // absolute, on the value
    std::size_t pairs;
  };

  /// Value and derivative at z (|z| <= r) with the truncation raised until the
  /// pointwise tail bound is <= accuracy. |g_N| <= 1, so the relative bound is
  /// also an absolute one.
  Evaluation evaluate(CPoint z, double accuracy = 1e-15) const {
    const double m = std::abs(z);
    if (m > radius_) throw Error(ErrorCode::DomainError, "sine product evaluated outside the working radius");
    const std::size_t pairs = std::max<std::size_t>(terms_for(accuracy, m), 1);
    CPoint p = z;
    CPoint dp = 1.0;
    const CPoint z2 = z * z;
    for (std::size_t n = 1; n <= pairs; ++n) {
      const double a = sine_zero(tau_, n);
      const double a2 = a * a;
      const CPoint den = 1.0 - a2 * z2;
      const CPoint f = (a2 - z2) / den;
      const CPoint df = 2.0 * z * (a2 * a2 - 1.0) / (den * den);
      dp = dp * f + p * df;
      p *= f;
    }
    return {p, dp, tail_bound(pairs, m), pairs};
  }

  CPoint operator()(CPoint z) const { return evaluate(z).value; }
  CPoint derivative(CPoint z) const { return evaluate(z).derivative; }

  /// Generic zero-generator view: zeros 0, a_1, -a_1, a_2, -a_2, ...
  TruncatedInfiniteBlaschke as_truncated() const {
    const double tau = tau_;
    auto rule = [tau](std::size_t n) -> CPoint {
      if (n == 1) return 0.0;
      const std::size_t k = n / 2;
      const double a = sine_zero(tau, k);
      return (n % 2 == 0) ? CPoint(a) : CPoint(-a);
    };
    auto tail = [tau](std::size_t zeros_kept) {
      const std::size_t k = zeros_kept >= 1 ? (zeros_kept - 1) / 2 : 0;
      // sum over pairs beyond k of 2(1 - a_n) = 4/(tau^n + 1); an odd count
      // keeps +a_{k+1} without its partner, bounded by the same sum.
      return 4.0 / (std::pow(tau, static_cast<double>(k)) * (tau - 1.0));
    };
    return TruncatedInfiniteBlaschke(rule, tail, 2 * truncation_ + 1, radius_);
  }

  /// The k-th critical point of g_tau on (0,1): the zero of the logarithmic
  /// derivative between a_{k-1} and a_k (a_0 = 0), by bisection.
  double positive_critical_point(std::size_t k) const {
    if (k == 0) throw Error(ErrorCode::DomainError, "critical point index starts at 1");
    const double lo0 = k == 1 ? 0.0 : sine_zero(tau_, k - 1);
    const double hi0 = sine_zero(tau_, k);
    const std::size_t pairs = std::max(truncation_, k + 8);
    auto log_derivative = [&](double x) {
      double s = 1.0 / x;
      for (std::size_t n = 1; n <= pairs; ++n) {
        const double a = sine_zero(tau_, n);
        const double a2 = a * a;
        s += -2.0 * x / (a2 - x * x) + 2.0 * a2 * x / (1.0 - a2 * x * x);
      }
      return s;
    };
    double lo = lo0 + (hi0 - lo0) * 1e-12;
    double hi = hi0 - (hi0 - lo0) * 1e-12;
    if (!(log_derivative(lo) > 0.0 && log_derivative(hi) < 0.0)) {
      throw Error(ErrorCode::NoConvergence, "sine product: no sign change between consecutive zeros");
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (log_derivative(mid) > 0.0) lo = mid;
      else hi = mid;
    }
    return 0.5 * (lo + hi);
  }

 private:
  double tau_;
  double radius_;
  std::size_t truncation_ = 0;
  double tail_bound_ = 0.0;
};

inline CPoint eval_sine_product(const SineFamilyProduct& g, CPoint z, double accuracy = 1e-15) {
  return g.evaluate(z, accuracy).value;
}

struct CertifiedValue {
  double value;
  double error_bound;
};

/// prod a_n(tau)^2, summed in log space with the tail
/// |sum_{n>N} log a_n^2| <= 8/(tau^N (tau - 1)) once tau^N >= 3.
inline CertifiedValue lambda_of_tau_certified(double tau) {
  if (!(tau > 1.0 + 1e-9) || !std::isfinite(tau)) {
    throw Error(ErrorCode::DomainError, "lambda_of_tau: tau must exceed 1");
  }
  constexpr double kTarget = 1e-14;
  long double log_lambda = 0.0L;
  long double power = 1.0L;
  const long double t = tau;
  for (std::size_t n = 1; n < 10000000; ++n) {
    power *= t;
    const long double x = 2.0L / (power + 1.0L);
    log_lambda += 2.0L * std::log1p(-x);
    const double partial = static_cast<double>(std::exp(log_lambda));
    if (partial <= kTarget) return {partial, partial};
    if (power >= 3.0L) {
      const double tail = static_cast<double>(8.0L / (power * (t - 1.0L)));
      const double bound = partial * tail;
      if (bound <= kTarget) {
        // The partial product overestimates; centre on the midpoint of
        // [partial * e^{-tail}, partial].
        return {partial * (1.0 - 0.5 * tail), 0.5 * bound + 1e-16};
      }
    }
  }
  throw Error(ErrorCode::AccuracyUnreachable, "lambda_of_tau: series did not reach the target accuracy");
}

inline double lambda_of_tau(double tau) { return lambda_of_tau_certified(tau).value; }

/// Inverse of lambda_of_tau by bisection in log(tau) (lambda is strictly
/// increasing in tau).
inline double tau_of_lambda(double lambda) {
  if (!(lambda > 1e-12 && lambda < 1.0 - 1e-12)) {
    throw Error(ErrorCode::DomainError, "tau_of_lambda: lambda must lie in (1e-12, 1 - 1e-12)");
  }
  double lo = std::log1p(1e-8);
  double hi = std::log(2.0);
  while (lambda_of_tau(std::exp(hi)) < lambda) {
    lo = hi;
    hi *= 2.0;
    if (hi > 40.0) throw Error(ErrorCode::NoConvergence, "tau_of_lambda: bracket search failed");
  }
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (lambda_of_tau(std::exp(mid)) < lambda) lo = mid;
    else hi = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace innerdyn
