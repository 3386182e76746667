// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "innerdyn/innerdyn.hpp"

using namespace innerdyn;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_ms;  // <= 0: no runtime bound
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string failed_rows(const PairingReport& r) {
  std::string s;
  for (const auto& row : r.rows) {
    if (!row.pass) s += (s.empty() ? "" : "; ") + row.name;
  }
  return s;
}

Outcome ac1() {
  const auto t0 = std::chrono::steady_clock::now();
  const TopferSolution s = solve_topfer_k();
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const double err = std::abs(s.k - 1.0 / 3.0);
  return {err <= 1e-12 && ms < 1.0, fmt("|k - 1/3| = %.2e", err) + fmt(", solve %.3f ms", ms)};
}

Outcome ac2() {
  const BifurcationResult r = rho_bifurcation(2);
  const bool ok = std::abs(r.lambda0 - 0.0548) <= 5e-4 && std::abs(r.lambda_orbit - r.lambda0) <= 1e-6;
  return {ok, fmt("lambda0 = %.10f", r.lambda0) + fmt(", orbit gap %.2e", std::abs(r.lambda_orbit - r.lambda0))};
}

Outcome ac3() {
  const FiniteBlaschke b = parabolic_blaschke();
  const std::vector<CPoint> d = cauchy_derivatives([&](CPoint z) { return b(z); }, 1.0, 0.5, 2);
  const double e0 = std::abs(b(1.0) - 1.0);
  const double e1 = std::abs(b.derivative(1.0) - 1.0);
  const double e2 = std::abs(d[2]);
  const PairingReport t = verify_topfer();
  const bool ok = e0 <= 1e-12 && e1 <= 1e-12 && e2 <= 1e-12 && t.all_pass();
  return {ok, fmt("errors g(1) %.1e", e0) + fmt(" g'(1) %.1e", e1) + fmt(" g''(1) %.1e", e2) +
                  (t.all_pass() ? ", Toepfer identity rows pass" : ", failing: " + failed_rows(t))};
}

Outcome ac4() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> mod(0.1, 0.9);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  int passed = 0;
  double worst = 0.0;
  std::string bad;
  for (int i = 0; i < 20; ++i) {
    const CPoint tau = std::polar(mod(rng), ang(rng));
    try {
      const PairingReport r = verify_exp_pairing(tau);
      const PairingRow* row = r.find("f multiplier = g multiplier");
      if (row) worst = std::max(worst, std::abs(row->left - row->right));
      if (r.all_pass()) ++passed;
      else bad += " " + detail::complex_text(tau);
    } catch (const Error& e) {
      bad += " " + detail::complex_text(tau) + "(" + e.what() + ")";
    }
  }
  return {passed == 20 && worst <= 1e-8, std::to_string(passed) + "/20 reports pass" + fmt(", worst multiplier gap %.1e", worst) + bad};
}

Outcome ac5() {
  const int n = 200;
  const std::vector<AtlasCell> cells = classify_tan_grid(0.0, kPi, -kHalfPi, kHalfPi, n, n);
  std::size_t checked = 0, law = 0, pair = 0;
  for (const AtlasCell& c : cells) {
    const bool attracting = !c.solver_failed && c.solver_class == FixedPointClass::AttractingInterior;
    if (c.boundary_distance > kParabolicBand) {
      ++checked;
      law += attracting == c.region_law ? 1 : 0;
    }
    pair += c.solver_class == c.iteration_class ? 1 : 0;
  }
  const double pair_frac = static_cast<double>(pair) / cells.size();
  return {law == checked && pair_frac >= 0.99,
          "region law " + std::to_string(law) + "/" + std::to_string(checked) + fmt(", classifiers agree on %.4f", pair_frac)};
}

Outcome ac6() {
  const PairingReport r = verify_sine_pairing(0.5);
  double dist_worst = 0.0;
  for (const auto& row : r.rows) {
    if (row.name.rfind("dist_D", 0) == 0) dist_worst = std::max(dist_worst, std::abs(row.left - row.right));
  }
  const PairingRow* m = r.find("g'(0) = lambda");
  const PairingRow* k1 = r.find("Koenigs ratio k=1");
  const PairingRow* k2 = r.find("Koenigs ratio k=2");
  const double merr = m ? std::abs(m->left - m->right) : 1.0;
  const double kerr = (k1 && k2) ? std::max(std::abs(k1->left - k1->right), std::abs(k2->left - k2->right)) : 1.0;
  return {r.all_pass() && merr <= 1e-10 && kerr <= 1e-5 && dist_worst <= 1e-12,
          fmt("tau = %.12f", r.parameter("tau")) + fmt(", |g'(0)-0.5| %.1e", merr) + fmt(", Koenigs %.1e", kerr) +
              fmt(", dist %.1e", dist_worst) + (r.all_pass() ? "" : ", failing: " + failed_rows(r))};
}

Outcome ac7() {
  bool ok = true;
  std::string d;
  for (const TractCase& c : standard_tract_cases(800, 800)) {
    const TractCount t = tract_count_with_stability(c);
    ok = ok && t.stable() && t.base == c.expected;
    d += c.name + " " + std::to_string(t.base) + "/" + std::to_string(t.doubled) + "/" + std::to_string(t.enlarged) +
         " (want " + std::to_string(c.expected) + ") ";
  }
  return {ok, d + "[base/2x res/1.25x window]"};
}

Outcome ac8() {
  bool ok = true;
  std::string d;
  for (double lambda : {0.5, 1.0, 2.0}) {
    const PairingReport r = verify_fatou_pairing(lambda);
    ok = ok && r.all_pass();
    d += fmt("lambda %.1f ", lambda) + (r.all_pass() ? "ok " : "failing: " + failed_rows(r) + " ");
  }
  return {ok, d};
}

Outcome ac9() {
  const PairingReport r = verify_parabolic_tan();
  const double slope = r.parameter("step_exponent");
  return {r.all_pass() && slope >= -1.2 && slope <= -0.8,
          fmt("step exponent %.4f", slope) + (r.all_pass() ? ", Taylor data rows pass" : ", failing: " + failed_rows(r))};
}

// --- AC10 property suites ---------------------------------------------------

struct Tally {
  int cases = 0;
  int failures = 0;
  void check(bool ok) {
    ++cases;
    failures += ok ? 0 : 1;
  }
};

Tally unimodularity() {
  Tally t;
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> deg(0, 12);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> rad(0.0, 0.999);
  for (int i = 0; i < 1000; ++i) {
    std::vector<CPoint> zs;
    const int d = deg(rng);
    for (int j = 0; j < d; ++j) zs.push_back(std::polar(rad(rng), ang(rng)));
    const FiniteBlaschke b(ang(rng), zs);
    t.check(std::abs(std::abs(b(std::polar(1.0, ang(rng)))) - 1.0) <= 1e-10);
  }
  // atomic inner functions, radial limits away from the atoms
  const double r = 1.0 - 1e-8;
  while (t.cases < 2000) {
    std::vector<Atom> atoms;
    const int q = 1 + t.cases % 3;
    for (int j = 0; j < q; ++j) atoms.push_back({ang(rng), 0.4 / q});
    const AtomicInnerFunction g(FiniteBlaschke(ang(rng), {std::polar(0.5 * rad(rng), ang(rng))}), AtomicMeasure(atoms));
    const double th = ang(rng);
    bool far = true;
    for (const Atom& a : atoms) far = far && std::abs(std::polar(1.0, th) - std::polar(1.0, a.theta)) >= 2.0 * std::sin(0.05);
    if (!far) continue;
    t.check(std::abs(std::abs(g(std::polar(r, th))) - 1.0) <= 1e-6);
  }
  return t;
}

Tally halfplane_preservation() {
  Tally t;
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> re(-20.0, 20.0);
  std::uniform_real_distribution<double> lim(-8.0, 2.0);
  std::uniform_real_distribution<double> ua(0.01, 5.0);
  std::uniform_real_distribution<double> ub(-kHalfPi + 1e-9, kHalfPi);
  for (int i = 0; i < 1000; ++i) {
    const CPoint z(re(rng), std::pow(10.0, lim(rng)));
    const TanFamily g(ua(rng), ub(rng));
    const CotFamily h(ua(rng));
    t.check(g(z).imag() > 0.0);
    t.check(h(z).imag() > 0.0);
  }
  return t;
}

Tally koenigs_residuals() {
  Tally t;
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> ul(0.1, 0.9);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 500; ++i) {
    // lambda sin z on a strip about the real axis
    const double lambda = ul(rng);
    const auto f = EntireFamilyInstance::sine(lambda);
    const KoenigsChart k = koenigs_chart(f, 0.0, lambda);
    const CPoint z(1.5 * u(rng), 0.2 * u(rng));
    try {
      const CPoint rhs = lambda * k(z);
      t.check(std::abs(k(f(z)) - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
    } catch (const Error&) {
      t.check(false);
    }
  }
  for (int i = 0; i < 500; ++i) {
    // lambda e^z in a disc about tau on which |f'| < 1
    const CPoint tau = std::polar(ul(rng), ang(rng));
    const auto f = EntireFamilyInstance::exp_lambda(exp_multiplier_map(tau));
    const KoenigsChart k = koenigs_chart(f, tau, tau);
    const CPoint z = tau + std::polar(0.9 * -std::log(std::abs(tau)) * std::abs(u(rng)), ang(rng));
    try {
      const CPoint rhs = tau * k(z);
      t.check(std::abs(k(f(z)) - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
    } catch (const Error&) {
      t.check(false);
    }
  }
  return t;
}

Tally derivative_vs_fd() {
  Tally t;
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::vector<EntireFamilyInstance> fams{EntireFamilyInstance::exp_lambda(CPoint(0.3, 0.1)),
                                               EntireFamilyInstance::sine(0.7),
                                               EntireFamilyInstance::fatou(1.5),
                                               EntireFamilyInstance::zexp(CPoint(-0.4, 0.2)),
                                               EntireFamilyInstance::powerexp(0.5, 3),
                                               EntireFamilyInstance::alpha(3),
                                               EntireFamilyInstance::rho(3, 0.2),
                                               EntireFamilyInstance::cstar(2),
                                               EntireFamilyInstance::cstar_lift(3)};
  for (const auto& f : fams) {
    for (int i = 0; i < 1000; ++i) {
      const CPoint z(u(rng), u(rng));
      const CPoint exact = f.derivative(z);
      const CPoint fd = central_difference([&](CPoint w) { return f(w); }, z, 1e-5);
      t.check(std::abs(fd - exact) <= 1e-6 * (std::abs(exact) + std::abs(f(z))) + 1e-8);
    }
  }
  std::uniform_real_distribution<double> ua(0.01, 5.0);
  std::uniform_real_distribution<double> ub(-kHalfPi + 1e-9, kHalfPi);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> rad(0.0, 0.9);
  for (int i = 0; i < 1000; ++i) {
    const TanFamily g(ua(rng), ub(rng));
    const CPoint z(3.0 * u(rng), 0.05 + std::abs(u(rng)));
    const CPoint e = g.derivative(z);
    t.check(std::abs(central_difference(g, z) - e) <= 1e-6 * std::abs(e) + 1e-9);
    const FiniteBlaschke b(ang(rng), {std::polar(rad(rng), ang(rng)), std::polar(rad(rng), ang(rng))});
    const CPoint w = std::polar(rad(rng), ang(rng));
    const CPoint eb = b.derivative(w);
    t.check(std::abs(central_difference(b, w) - eb) <= 1e-6 * std::abs(eb) + 1e-9);
  }
  return t;
}

Outcome ac10() {
  const std::pair<const char*, Tally> suites[] = {{"unimodularity", unimodularity()},
                                                  {"half-plane", halfplane_preservation()},
                                                  {"Koenigs", koenigs_residuals()},
                                                  {"derivative/FD", derivative_vs_fd()}};
  bool ok = true;
  std::string d;
  for (const auto& [name, t] : suites) {
    ok = ok && t.failures == 0 && t.cases >= 1000;
    d += std::string(name) + " " + std::to_string(t.cases - t.failures) + "/" + std::to_string(t.cases) + " ";
  }
  return {ok, d};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Toepfer constant k = 1/3", 0.0, ac1},
      {2, "rho_2 bifurcation lambda0 = 0.0548", 1000.0, ac2},
      {3, "parabolic Blaschke (3z^2+1)/(3+z^2)", 0.0, ac3},
      {4, "exp pairing, 20 random tau", 5000.0, ac4},
      {5, "region law on a 200x200 atlas", 60000.0, ac5},
      {6, "sine pairing at lambda = 0.5", 10000.0, ac6},
      {7, "tract counts, 800x800, stable", 120000.0, ac7},
      {8, "Fatou family structure, lambda in {0.5,1,2}", 1000.0, ac8},
      {9, "parabolic tan", 0.0, ac9},
      {10, "property suites", 0.0, ac10},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::string time = fmt("%.1f ms", ms);
    if (c.budget_ms > 0.0) {
      time += fmt(" of %.0f", c.budget_ms);
      if (ms >= c.budget_ms) {
        o.pass = false;
        o.detail += " [over time budget]";
      }
    }
    failed += o.pass ? 0 : 1;
    std::cout << "AC" << c.id << (c.id < 10 ? "  " : " ") << (o.pass ? "PASS" : "FAIL") << "  " << c.title << "  (" << time
              << ")  " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
  return failed == 0 ? 0 : 1;
}
