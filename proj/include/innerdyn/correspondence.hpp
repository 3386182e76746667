#pragma once

// Pairing checks between entire families and their associated inner functions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "innerdyn/blaschke.hpp"
#include "innerdyn/entire.hpp"
#include "innerdyn/error.hpp"
#include "innerdyn/halfplane.hpp"
#include "innerdyn/inner_factor.hpp"
#include "innerdyn/numerics.hpp"
#include "innerdyn/raster.hpp"

namespace innerdyn {

struct PairingRow {
  std::string name;
  CPoint left;
  CPoint right;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct PairingReport {
  std::string family;
  std::string inner;
  std::vector<PairingRow> rows;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::string> notes;

  void add(std::string name, CPoint left, CPoint right, double tol, std::string note = {}) {
    const bool ok = is_finite(left) && is_finite(right) && std::abs(left - right) <= tol;
    rows.push_back({std::move(name), left, right, tol, ok, std::move(note)});
  }
  void add_flag(std::string name, bool ok, std::string note = {}) {
    add(std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, std::move(note));
  }

  bool all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const PairingRow& r) { return r.pass; });
  }
  const PairingRow* find(const std::string& name) const {
    for (const auto& r : rows) {
      if (r.name == name) return &r;
    }
    return nullptr;
  }
  double parameter(const std::string& key) const {
    for (const auto& [k, v] : parameters) {
      if (k == key) return v;
    }
    throw Error(ErrorCode::DomainError, "report has no parameter '" + key + "'");
  }
};

struct PairingOptions {
  bool swap_sides = false;  // evaluate the right-hand computation first and store it on the left
  double kappa_g_scale = 1.0;  // multiplies every inner-side Koenigs value (scale-freeness probe)
  bool with_raster = true;
};

namespace detail {

template <class L, class R>
void add_pair(PairingReport& rep, const PairingOptions& opt, std::string name, L&& left, R&& right, double tol,
              std::string note = {}) {
  if (opt.swap_sides) {
    const CPoint r = right();
    const CPoint l = left();
    rep.add(std::move(name), r, l, tol, std::move(note));
  } else {
    const CPoint l = left();
    const CPoint r = right();
    rep.add(std::move(name), l, r, tol, std::move(note));
  }
}

inline std::string complex_text(CPoint z) {
  return std::to_string(z.real()) + (z.imag() < 0 ? "-" : "+") + std::to_string(std::abs(z.imag())) + "i";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tract counting cases

struct TractCase {
  std::string name;
  EntireFamilyInstance family;
  GridSpec grid;
  RasterCriteria criteria;
  std::size_t expected = 0;
};

/// The three desk-scale cases: lambda sin z, lambda e^z and lambda e^{z^3}.
/// D is a disc about the attracting fixed point holding the singular values.
inline std::vector<TractCase> standard_tract_cases(int width = 800, int height = 800) {
  std::vector<TractCase> out;
  {
    RasterCriteria c;
    c.attractor = 0.0;
    c.preimage_of = Disc{0.0, 0.8};
    out.push_back({"sine", EntireFamilyInstance::sine(0.5), {{-4 * kPi, 4 * kPi, -4 * kPi, 4 * kPi}, width, height}, c, 2});
  }
  {
    RasterCriteria c;
    c.attractor = 0.5;
    c.preimage_of = Disc{0.4, 0.5};
    out.push_back({"exp", EntireFamilyInstance::exp_lambda(exp_multiplier_map(0.5)), {{-5.0, 1.3, -5.0, 5.0}, width, height},
                   c, 1});
  }
  {
    const double lambda = 0.01;
    const auto f = EntireFamilyInstance::powerexp(lambda, 3);
    CPoint z = lambda;
    for (int i = 0; i < 200; ++i) z = f(z);
    RasterCriteria c;
    c.attractor = z;
    c.preimage_of = Disc{0.0, 1.5 * lambda};
    out.push_back({"powerexp3", f, {{-1.0, 1.0, -1.0, 1.0}, width, height}, c, 3});
  }
  return out;
}

struct TractCount {
  std::size_t base = 0;
  std::size_t doubled = 0;   // 2x resolution
  std::size_t enlarged = 0;  // window x1.25
  ComponentStats base_stats;
  bool stable() const { return base == doubled && base == enlarged; }
};

inline std::size_t tract_count(const TractCase& c, const GridSpec& spec, ComponentStats* stats = nullptr) {
  const auto& f = c.family;
  const Grid g = classify_grid([&f](CPoint z) { return f(z); }, spec, c.criteria);
  const ComponentStats s = count_unbounded_components(g, PixelLabel::Basin);
  if (stats) *stats = s;
  return s.unbounded;
}

inline TractCount tract_count_with_stability(const TractCase& c) {
  TractCount t;
  t.base = tract_count(c, c.grid, &t.base_stats);
  t.doubled = tract_count(c, c.grid.doubled_resolution());
  t.enlarged = tract_count(c, c.grid.scaled_window(1.25));
  return t;
}

// ---------------------------------------------------------------------------
// lambda e^z and a tan z + b

inline PairingReport verify_exp_pairing(CPoint tau, const PairingOptions& opt = {}) {
  if (!(std::abs(tau) > 0.0 && std::abs(tau) < 1.0)) throw Error(ErrorCode::DomainError, "verify_exp_pairing: need 0 < |tau| < 1");
  PairingReport rep;
  const CPoint lambda = exp_multiplier_map(tau);
  const auto f = EntireFamilyInstance::exp_lambda(lambda);
  const TanSolution sol = solve_ab_from_multiplier(tau);
  const TanFamily& g = sol.family;
  rep.family = "exp lambda=" + detail::complex_text(lambda);
  rep.inner = "tan a=" + std::to_string(g.a()) + " b=" + std::to_string(g.b());
  rep.parameters = {{"a", g.a()}, {"b", g.b()}, {"lambda_re", lambda.real()}, {"lambda_im", lambda.imag()}};

  const bool near_parabolic = std::abs(1.0 - tau) < 0.05;
  const double tol = near_parabolic ? 1e-4 : 1e-8;
  if (near_parabolic) rep.notes.push_back("multiplier close to 1: rows checked at 1e-4");

  // f side: the singular value 0 lies in the immediate basin; iterate, then polish.
  auto f_multiplier = [&]() -> CPoint {
    CPoint z = 0.0;
    for (int i = 0; i < 2000 && std::abs(f(z) - z) > 1e-6; ++i) z = f(z);
    const CPoint zs = newton_holomorphic([&](CPoint w) { return f(w) - w; }, [&](CPoint w) { return f.derivative(w) - 1.0; },
                                         z, RootSolveConfig{1e-13, 100});
    return f.derivative(zs);
  };
  // g side: fixed point located afresh from (a, b) by the classifier.
  auto g_multiplier = [&]() -> CPoint {
    const FixedPointRecord r = classify_tan_family(g);
    if (r.cls != FixedPointClass::AttractingInterior) throw Error(ErrorCode::OutsideRegion, "tan map has no interior fixed point");
    return r.multiplier;
  };
  const CPoint mf = f_multiplier();
  const CPoint mg = g_multiplier();
  detail::add_pair(rep, opt, "f multiplier = tau", [&] { return mf; }, [&] { return tau; }, tol);
  detail::add_pair(rep, opt, "g multiplier = tau", [&] { return mg; }, [&] { return tau; }, tol);
  detail::add_pair(rep, opt, "f multiplier = g multiplier", f_multiplier, g_multiplier, tol);

  detail::add_pair(
      rep, opt, "f critical points in [-5,5]^2",
      [&] { return static_cast<double>(critical_points(f, Rect{-5.0, 5.0, -5.0, 5.0}).size()); }, [] { return 0.0; }, 0.0,
      "f is unisingular: asymptotic value 0 only");
  detail::add_pair(
      rep, opt, "g critical points in [-pi,pi]x[0.05,4]",
      [&] {
        auto dg = [&](CPoint z) { return g.derivative(z); };
        return static_cast<double>(zeros_in_rectangle(dg, finite_difference, Rect{-kPi, kPi, 0.05, 4.0}).size());
      },
      [] { return 0.0; }, 0.0);

  const CPoint mu = mu_from_ab(g);
  rep.parameters.push_back({"mu_re", mu.real()});
  rep.parameters.push_back({"mu_im", mu.imag()});
  const CPoint w = std::exp(2.0 * kI * sol.fixed_point.location);
  detail::add_pair(
      rep, opt, "disc model mu = 2(b+ai) fixes e^{2i zeta}", [&] { return eval_disc_model(mu, w); }, [&] { return w; }, tol);
  return rep;
}

// ---------------------------------------------------------------------------
// tan on H and e^{z-1}

inline PairingReport verify_parabolic_tan(const PairingOptions& opt = {}) {
  PairingReport rep;
  rep.family = "exp lambda=1/e";
  rep.inner = "tan";
  auto tan_f = [](CPoint z) { return stable_tan(z); };
  const std::vector<CPoint> d = cauchy_derivatives(tan_f, 0.0, 0.5, 3);
  const double expect[] = {0.0, 1.0, 0.0, 2.0};
  const char* names[] = {"tan(0)", "tan'(0)", "tan''(0)", "tan'''(0)"};
  for (int k = 0; k < 4; ++k) {
    detail::add_pair(rep, opt, names[k], [&] { return d[static_cast<std::size_t>(k)]; }, [&] { return CPoint(expect[k]); },
                     1e-10);
  }
  const TanFamily t(1.0, 0.0);
  const std::vector<double> steps = hyperbolic_steps(t, CPoint(0.0, 1.0), 10000);
  const double slope = fit_step_exponent(steps, 100, 10000);
  rep.parameters.push_back({"step_exponent", slope});
  rep.add("hyperbolic step exponent over k in [100,1e4]", slope, -1.0, 0.2, "zero hyperbolic step, O(1/k)");

  const auto f = EntireFamilyInstance::exp_lambda(std::exp(-1.0));
  detail::add_pair(rep, opt, "e^{z-1} fixes 1", [&] { return f(1.0); }, [] { return CPoint(1.0); }, 1e-15);
  detail::add_pair(rep, opt, "(e^{z-1})'(1) = 1", [&] { return f.derivative(1.0); }, [] { return CPoint(1.0); }, 1e-15);
  return rep;
}

// ---------------------------------------------------------------------------
// lambda sin z and the product with zeros +-a_n

struct SinePairingDetail {
  double tau = 0.0;
  std::vector<double> inner_critical_points;  // b_1, b_2, b_3
  std::vector<CPoint> kappa_f;                // at (2k-1) pi/2
  std::vector<CPoint> kappa_g;                // at b_k, scaled by kappa_g_scale
};

namespace detail {

inline CPoint koenigs_or_escape(const KoenigsChart& k, CPoint z, const char* what) {
  try {
    return k(z);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotInBasin) throw Error(ErrorCode::BasinEscape, std::string(what) + ": " + e.what());
    throw;
  }
}

inline std::vector<CPoint> sine_inner_kappa(double tau, double multiplier, const std::vector<double>& points, double scale) {
  double reach = kDefaultWorkingRadius;
  for (double b : points) reach = std::max(reach, 0.5 * (1.0 + std::abs(b)));
  const SineFamilyProduct g(tau, reach);
  const KoenigsChart kg([g](CPoint z) { return g(z); }, 0.0, multiplier);
  std::vector<CPoint> out;
  for (double b : points) out.push_back(scale * koenigs_or_escape(kg, b, "inner critical point"));
  return out;
}

}  // namespace detail

inline PairingReport verify_sine_pairing(double lambda, const PairingOptions& opt = {}, SinePairingDetail* detail_out = nullptr) {
  if (!(lambda > 0.05 && lambda < 0.95)) throw Error(ErrorCode::DomainError, "verify_sine_pairing: lambda must lie in (0.05, 0.95)");
  PairingReport rep;
  const auto f = EntireFamilyInstance::sine(lambda);
  const double tau = tau_of_lambda(lambda);
  const SineFamilyProduct g(tau);
  rep.family = "sine lambda=" + std::to_string(lambda);
  rep.inner = "sine product tau=" + std::to_string(tau);
  rep.parameters = {{"tau", tau}, {"truncation", static_cast<double>(g.truncation())}};

  detail::add_pair(rep, opt, "g'(0) = lambda", [&] { return g.derivative(0.0); }, [&] { return CPoint(lambda); }, 1e-10);
  detail::add_pair(rep, opt, "g'(0) = f'(0)", [&] { return g.derivative(0.0); }, [&] { return f.derivative(0.0); }, 1e-10);

  for (std::size_t n = 1; n <= 5; ++n) {
    detail::add_pair(
        rep, opt, "dist_D(0, a_" + std::to_string(n) + ") = n log tau",
        [&] {
          using LC = std::complex<long double>;
          return CPoint(static_cast<double>(hyperbolic_distance_disc(LC(0.0L), LC(sine_zero<long double>(tau, n)))));
        },
        [&] { return CPoint(static_cast<double>(n) * std::log(tau)); }, 1e-12);
  }

  // Singularities of g on the circle: limits of the zero sequences +-a_n.
  auto singularities = [&]() {
    std::vector<double> limits;
    for (double s : {1.0, -1.0}) {
      const double lim = s * sine_zero(tau, 400);
      if (std::none_of(limits.begin(), limits.end(), [&](double x) { return std::abs(x - lim) < 1e-9; })) limits.push_back(lim);
    }
    return static_cast<double>(limits.size());
  };
  if (opt.with_raster) {
    detail::add_pair(
        rep, opt, "tracts of f = singularities of g",
        [&] {
          TractCase c = standard_tract_cases(400, 400)[0];
          c.family = f;
          return static_cast<double>(tract_count(c, c.grid));
        },
        [&] { return singularities(); }, 0.0);
  }

  // Koenigs ratios: kappa_g(b_{k+1})/kappa_g(b_k) against kappa_f at (2k+1)pi/2, (2k-1)pi/2.
  SinePairingDetail det;
  det.tau = tau;
  for (std::size_t k = 1; k <= 3; ++k) det.inner_critical_points.push_back(g.positive_critical_point(k));
  const KoenigsChart kf = koenigs_chart(f, 0.0, lambda);
  for (int k = 1; k <= 3; ++k) det.kappa_f.push_back(detail::koenigs_or_escape(kf, (2 * k - 1) * kHalfPi, "critical point"));
  const double g_multiplier = g.derivative(0.0).real();
  det.kappa_g = detail::sine_inner_kappa(tau, g_multiplier, det.inner_critical_points, opt.kappa_g_scale);
  for (std::size_t k = 0; k < 2; ++k) {
    detail::add_pair(
        rep, opt, "Koenigs ratio k=" + std::to_string(k + 1), [&] { return det.kappa_g[k + 1] / det.kappa_g[k]; },
        [&] { return det.kappa_f[k + 1] / det.kappa_f[k]; }, 1e-5);
  }
  rep.add_flag("critical points ordered along (0,1)",
               det.inner_critical_points[0] < det.inner_critical_points[1] &&
                   det.inner_critical_points[1] < det.inner_critical_points[2],
               "matched in order to (2k-1)pi/2");

  // Negative control: perturbed tau. Reported, not asserted.
  try {
    const double tau_bad = tau * 1.05;
    const SineFamilyProduct gb(tau_bad);
    std::vector<double> cps{gb.positive_critical_point(1), gb.positive_critical_point(2)};
    const auto kb = detail::sine_inner_kappa(tau_bad, gb.derivative(0.0).real(), cps, 1.0);
    const CPoint ratio = kb[1] / kb[0];
    const double gap = std::abs(ratio - det.kappa_f[1] / det.kappa_f[0]);
    rep.parameters.push_back({"negative_control_gap", gap});
    rep.notes.push_back("negative control tau*1.05: ratio gap " + std::to_string(gap) + " (not asserted)");
  } catch (const Error& e) {
    rep.notes.push_back(std::string("negative control failed to evaluate: ") + e.what());
  }
  if (detail_out) *detail_out = det;
  return rep;
}

// ---------------------------------------------------------------------------
// lambda + z + e^{-z} and z - (lambda/2) cot z

inline PairingReport verify_fatou_pairing(double lambda, const PairingOptions& opt = {}) {
  if (!(lambda > 0.1 && lambda < 10.0)) throw Error(ErrorCode::DomainError, "verify_fatou_pairing: lambda must lie in (0.1, 10)");
  PairingReport rep;
  const CotFamily h(lambda);
  const auto f = EntireFamilyInstance::fatou(lambda);
  rep.family = "fatou lambda=" + std::to_string(lambda);
  rep.inner = "cot nu=" + std::to_string(h.nu());
  rep.parameters = {{"nu", h.nu()}};

  // Poles: zeros of 1/h = sin z/(z sin z - nu cos z) near n pi.
  auto inv_h = [&](CPoint z) { return std::sin(z) / (z * std::sin(z) - h.nu() * std::cos(z)); };
  for (int n = -1; n <= 2; ++n) {
    detail::add_pair(
        rep, opt, "pole at " + std::to_string(n) + " pi",
        [&] { return newton_holomorphic(inv_h, finite_difference, CPoint(n * kPi + 0.01, 0.0), RootSolveConfig{1e-13, 100}); },
        [&] { return CPoint(n * kPi); }, 1e-10);
  }
  // Fixed points: h(z) - z = -nu cot z.
  auto fix = [&](CPoint z) { return h(z) - z; };
  auto dfix = [&](CPoint z) { return h.derivative(z) - 1.0; };
  for (int n = -1; n <= 1; ++n) {
    const double x = (2 * n + 1) * kHalfPi;
    detail::add_pair(
        rep, opt, "fixed point at " + std::to_string(2 * n + 1) + " pi/2",
        [&] { return newton_holomorphic(fix, dfix, CPoint(x + 0.05, 0.0), RootSolveConfig{1e-13, 100}); },
        [&] { return CPoint(x); }, 1e-10);
    detail::add_pair(rep, opt, "h' at " + std::to_string(2 * n + 1) + " pi/2", [&] { return h.derivative(x); },
                     [&] { return CPoint(1.0 + h.nu()); }, 1e-12, "repelling boundary fixed point");
  }
  for (int n = 0; n <= 1; ++n) {
    const Rect box{n * kPi + 1e-2, (n + 1) * kPi - 1e-2, -0.5, 0.5};
    detail::add_pair(rep, opt, "fixed points between poles " + std::to_string(n) + " pi, " + std::to_string(n + 1) + " pi",
                     [&] { return CPoint(winding_number(fix, box)); }, [] { return CPoint(1.0); }, 0.0);
  }
  {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> v(0.01, 3.0);
    double worst = 0.0;
    std::size_t outside = 0;
    for (int i = 0; i < 200; ++i) {
      const CPoint z(u(rng), v(rng));
      worst = std::max(worst, std::abs(h(z + kPi) - (h(z) + kPi)));
      outside += h(z).imag() > 0.0 ? 0 : 1;
    }
    rep.add("pi-commutation residual", worst, 0.0, 1e-12);
    rep.add("half-plane violations", static_cast<double>(outside), 0.0, 0.0);
  }
  {
    CPoint z(0.3, 40.0);
    const std::size_t n = 200;
    const double y0 = z.imag();
    for (std::size_t k = 0; k < n; ++k) z = h(z);
    rep.add("upward drift per step (nu = lambda/2)", (z.imag() - y0) / n, 0.5 * lambda, 1e-9);
  }
  // f side
  const double x0 = -std::log(lambda);
  const auto fps = fixed_points(f, Rect{x0 - 1.0, x0 + 1.0, -4.0 * kPi, 4.0 * kPi});
  rep.add("f fixed points in |Im| < 4 pi", static_cast<double>(fps.size()), 4.0, 0.0);
  for (const auto& r : fps) {
    const double k = std::round((r.location.imag() / kPi - 1.0) / 2.0);
    rep.add("f fixed point n=" + std::to_string(static_cast<int>(k)), r.location, CPoint(x0, (2 * k + 1) * kPi), 1e-10);
  }
  {
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 400; ++i) {
      const double x = -20.0 + 0.1 * i;
      min_gap = std::min(min_gap, (f(x) - x).real());
    }
    rep.add_flag("f(x) > x on the real line", min_gap > 0.0);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Finite cases

inline PairingReport check_unisingular_form(std::size_t p, std::size_t q, const AtomicInnerFunction& g, std::string label = {}) {
  PairingReport rep;
  rep.family = label;
  rep.inner = "p=" + std::to_string(g.p()) + " q=" + std::to_string(g.q());
  rep.add("Blaschke degree", static_cast<double>(g.p()), static_cast<double>(p), 0.0);
  rep.add("atom count", static_cast<double>(g.q()), static_cast<double>(q), 0.0);
  return rep;
}

/// The three model forms with their expected (p, q), plus the symmetry of the q = 3 atoms.
inline PairingReport verify_unisingular_forms() {
  PairingReport rep;
  rep.family = "unisingular forms";
  rep.inner = "atomic inner functions";
  const struct {
    const char* name;
    AtomicInnerFunction g;
    std::size_t p, q;
  } cases[] = {{"exp", exp_example(1.0), 0, 1}, {"zexp", zexp_example(1.0), 1, 1}, {"powerexp q=3", powerexp_example(3, 1.0), 0, 3}};
  for (const auto& c : cases) {
    const PairingReport r = check_unisingular_form(c.p, c.q, c.g, c.name);
    for (const auto& row : r.rows) rep.rows.push_back({std::string(c.name) + ": " + row.name, row.left, row.right, row.tolerance, row.pass, {}});
  }
  const AtomicInnerFunction g3 = powerexp_example(3, 1.0);
  const auto& atoms = g3.singular_part().atoms();
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    rep.add("powerexp q=3: atom " + std::to_string(j) + " at a cube root of unity", std::pow(std::polar(1.0, atoms[j].theta), 3), 1.0,
            1e-12);
    rep.add("powerexp q=3: mass " + std::to_string(j), atoms[j].mass, atoms[0].mass, 0.0);
  }
  return rep;
}

inline PairingReport verify_topfer() {
  PairingReport rep;
  rep.family = "Toepfer (z^2+k)/(kz^2+1)";
  rep.inner = "(3z^2+1)/(3+z^2)";
  const TopferSolution s = solve_topfer_k();
  rep.parameters = {{"k", s.k}};
  rep.add("k = 1/3", s.k, 1.0 / 3.0, 1e-12);
  rep.add("g_k(1) = 1", s.at_one.value, 1.0, 1e-12);
  rep.add("g_k'(1) = 1", s.at_one.first, 1.0, 1e-12);
  rep.add("g_k''(1) = 0", s.at_one.second, 0.0, 1e-12);

  const FiniteBlaschke b = parabolic_blaschke();
  const std::vector<CPoint> d = cauchy_derivatives([&](CPoint z) { return b(z); }, 1.0, 0.5, 2);
  rep.add("B(1) = 1", b(1.0), 1.0, 1e-12);
  rep.add("B'(1) = 1", b.derivative(1.0), 1.0, 1e-12);
  rep.add("B''(1) = 0", d[2], 0.0, 1e-12);
  // (3z^2 + 1)/(z^2 + 3) against (z^2 + k)/(k z^2 + 1) scaled by 3: coefficients of z^0, z^2.
  const double k = 1.0 / 3.0;
  rep.add("numerator z^0", 3.0 * k, 1.0, 1e-15);
  rep.add("numerator z^2", 3.0 * 1.0, 3.0, 1e-15);
  rep.add("denominator z^0", 3.0 * 1.0, 3.0, 1e-15);
  rep.add("denominator z^2", 3.0 * k, 1.0, 1e-15);
  double worst = 0.0;
  for (int j = 0; j < 64; ++j) {
    const CPoint z = std::polar(0.9, 2.0 * kPi * j / 64);
    worst = std::max(worst, std::abs(b(z) - topfer_map(k, z).value));
  }
  rep.add("B = g_{1/3} on |z| = 0.9", worst, 0.0, 1e-14);
  return rep;
}

inline PairingReport verify_lambda0(int d) {
  PairingReport rep;
  rep.family = "rho_d, d=" + std::to_string(d);
  rep.inner = "-";
  const BifurcationResult r = rho_bifurcation(d);
  rep.parameters = {{"lambda0", r.lambda0}, {"tangency_x", r.tangency_point}, {"lambda0_orbit", r.lambda_orbit}};
  if (d == 2) rep.add("lambda0 = 0.0548", r.lambda0, 0.0548, 5e-4);
  rep.add("orbit bisection agrees", r.lambda_orbit, r.lambda0, 1e-6);
  rep.add_flag("lambda0/2: orbit of 0 stays below 1", !detail::orbit_reaches_one(d, 0.5 * r.lambda0, 200000));
  rep.add_flag("2 lambda0: orbit of 0 reaches 1", detail::orbit_reaches_one(d, 2.0 * r.lambda0, 200000));
  return rep;
}

}  // namespace innerdyn
