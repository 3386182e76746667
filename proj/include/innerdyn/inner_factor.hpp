#pragma once

// Atomic singular inner functions S(z) = exp(-sum c_j (e^{i theta_j} + z)/(e^{i theta_j} - z)),
// products B * S with a finite Blaschke factor, and Frostman transforms.

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "innerdyn/blaschke.hpp"
#include "innerdyn/error.hpp"
#include "innerdyn/numerics.hpp"

namespace innerdyn {

inline constexpr double kAtomTolerance = 1e-12;

struct Atom {
  double theta = 0.0;  // radians
  double mass = 0.0;   // c > 0

  friend bool operator==(const Atom&, const Atom&) = default;
};

class AtomicMeasure {
 public:
  AtomicMeasure() = default;

  explicit AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const Atom& a = atoms_[i];
      if (!std::isfinite(a.theta) || !(a.mass > 0.0) || !std::isfinite(a.mass)) {
        throw Error(ErrorCode::DomainError, "AtomicMeasure: masses must be positive and finite");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (std::abs(std::polar(1.0, a.theta) - std::polar(1.0, atoms_[j].theta)) < kAtomTolerance) {
          throw Error(ErrorCode::DomainError, "AtomicMeasure: atoms must be distinct mod 2pi");
        }
      }
    }
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t count() const { return atoms_.size(); }
  double total_mass() const {
    double m = 0.0;
    for (const Atom& a : atoms_) m += a.mass;
    return m;
  }

  friend bool operator==(const AtomicMeasure&, const AtomicMeasure&) = default;

 private:
  std::vector<Atom> atoms_;
};

/// The Herglotz sum sum c_j (e^{i theta_j} + z)/(e^{i theta_j} - z), S = exp(-sum).
inline CPoint herglotz_sum(const AtomicMeasure& mu, CPoint z) {
  CPoint s = 0.0;
  for (const Atom& a : mu.atoms()) {
    const CPoint e = std::polar(1.0, a.theta);
    if (std::abs(e - z) < kAtomTolerance) throw Error(ErrorCode::AtomProximity, "evaluation at an atom");
    s += a.mass * (e + z) / (e - z);
  }
  return s;
}

inline CPoint eval_singular(const AtomicMeasure& mu, CPoint z) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::DomainError, "eval_singular: |z| must be < 1");
  return std::exp(-herglotz_sum(mu, z));
}

/// Derivative of S: S' = -S * sum 2 c_j e^{i theta_j}/(e^{i theta_j} - z)^2.
inline CPoint eval_singular_derivative(const AtomicMeasure& mu, CPoint z) {
  CPoint ds = 0.0;
  for (const Atom& a : mu.atoms()) {
    const CPoint e = std::polar(1.0, a.theta);
    const CPoint d = e - z;
    ds += 2.0 * a.mass * e / (d * d);
  }
  return -eval_singular(mu, z) * ds;
}

/// g = e^{i sigma} B S. The phase sigma sits in the Blaschke part.
class AtomicInnerFunction {
 public:
  AtomicInnerFunction() = default;
  AtomicInnerFunction(FiniteBlaschke blaschke, AtomicMeasure singular)
      : blaschke_(std::move(blaschke)), singular_(std::move(singular)) {}

  const FiniteBlaschke& blaschke_part() const { return blaschke_; }
  const AtomicMeasure& singular_part() const { return singular_; }
  std::size_t p() const { return blaschke_.degree(); }
  std::size_t q() const { return singular_.count(); }

  CPoint operator()(CPoint z) const { return blaschke_(z) * eval_singular(singular_, z); }

  CPoint derivative(CPoint z) const {
    return blaschke_.derivative(z) * eval_singular(singular_, z) +
           blaschke_(z) * eval_singular_derivative(singular_, z);
  }

  friend bool operator==(const AtomicInnerFunction&, const AtomicInnerFunction&) = default;

 private:
  FiniteBlaschke blaschke_;
  AtomicMeasure singular_;
};

inline CPoint eval_atomic_inner(const AtomicInnerFunction& g, CPoint z) { return g(z); }

/// (g(z) - zeta)/(1 - conj(zeta) g(z)).
template <class G>
CPoint frostman_transform(G&& g, CPoint zeta, CPoint z) {
  if (!(std::abs(zeta) < 1.0)) throw Error(ErrorCode::DomainError, "frostman_transform: |zeta| must be < 1");
  const CPoint w = g(z);
  if (zeta == CPoint{}) return w;
  return (w - zeta) / (1.0 - std::conj(zeta) * w);
}

// Model forms of the unisingular examples. sigma is a free phase.

/// e^{i sigma} exp(c (z - 1)/(z + 1)): one atom at theta = pi.
inline AtomicInnerFunction exp_example(double c, double sigma = 0.0) {
  return {FiniteBlaschke(sigma, {}), AtomicMeasure({{kPi, c}})};
}

/// e^{i sigma} z exp(c (z - 1)/(z + 1)).
inline AtomicInnerFunction zexp_example(double c, double sigma = 0.0) {
  return {FiniteBlaschke(sigma, {0.0}), AtomicMeasure({{kPi, c}})};
}

/// q atoms of equal mass c at the q-th roots of unity, rotated by theta0.
inline AtomicInnerFunction powerexp_example(int q, double c, double sigma = 0.0, double theta0 = 0.0) {
  if (q < 1) throw Error(ErrorCode::DomainError, "powerexp_example: q must be positive");
  std::vector<Atom> atoms;
  for (int j = 0; j < q; ++j) atoms.push_back({theta0 + 2.0 * kPi * j / q, c});
  return {FiniteBlaschke(sigma, {}), AtomicMeasure(std::move(atoms))};
}

}  // namespace innerdyn
