#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "innerdyn/inner_factor.hpp"

using namespace innerdyn;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

AtomicInnerFunction random_inner(std::mt19937_64& rng, double max_mass = 2.0, double max_zero = 0.95) {
  std::uniform_int_distribution<int> count(0, 4);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> rad(0.0, max_zero);
  std::uniform_real_distribution<double> mass(0.01, max_mass);
  std::vector<CPoint> zeros;
  const int p = count(rng);
  for (int i = 0; i < p; ++i) zeros.push_back(std::polar(rad(rng), ang(rng)));
  std::vector<Atom> atoms;
  const int q = count(rng);
  for (int j = 0; j < q; ++j) atoms.push_back({ang(rng), mass(rng)});
  return {FiniteBlaschke(ang(rng), zeros), AtomicMeasure(atoms)};
}

}  // namespace

TEST_CASE("eval_singular examples", "[inner_factor]") {
  const AtomicMeasure none;
  CHECK(eval_singular(none, CPoint(0.3, -0.2)) == CPoint(1.0));

  const double c = 1.7;
  const AtomicMeasure one({{kPi, c}});
  CHECK_THAT(eval_singular(one, 0.0).real(), WithinRel(std::exp(-c), 1e-15));
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int i = 0; i < 100; ++i) {
    const CPoint z(u(rng), u(rng));
    const CPoint ref = std::exp(c * (z - 1.0) / (z + 1.0));
    CHECK(std::abs(eval_singular(one, z) - ref) <= 1e-14 * std::abs(ref));
  }

  const AtomicMeasure pair({{0.0, 0.01}, {kPi, 0.01}});
  double prev = 1.0;
  for (double x : {0.9, 0.99, 0.999, 0.9999}) {
    const double s = std::abs(eval_singular(pair, x));
    CHECK(s < prev);
    prev = s;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("eval_singular errors", "[inner_factor]") {
  const AtomicMeasure one({{0.0, 1.0}});
  CHECK_THROWS_MATCHES(herglotz_sum(one, CPoint(1.0 - 1e-13, 0.0)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::AtomProximity;
                       }));
  CHECK_THROWS_AS(eval_singular(one, 1.0), Error);
  CHECK_THROWS_AS(AtomicMeasure({{0.0, 1.0}, {2.0 * kPi, 1.0}}), Error);
  CHECK_THROWS_AS(AtomicMeasure({{0.0, -1.0}}), Error);
  CHECK_THROWS_AS(AtomicMeasure({{0.0, 0.0}}), Error);
}

TEST_CASE("eval_atomic_inner model forms", "[inner_factor]") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-0.7, 0.7);

  const AtomicInnerFunction g = exp_example(2.0);
  CHECK(g.p() == 0);
  CHECK(g.q() == 1);
  for (int i = 0; i < 50; ++i) {
    const CPoint w(u(rng), u(rng));
    const CPoint ref = std::exp(2.0 * (w - 1.0) / (w + 1.0));
    CHECK(std::abs(eval_atomic_inner(g, w) - ref) <= 1e-14 * std::abs(ref));
  }

  const double sigma = 0.4;
  const AtomicInnerFunction h = zexp_example(1.3, sigma);
  CHECK(h.p() == 1);
  CHECK(h.q() == 1);
  for (int i = 0; i < 50; ++i) {
    const CPoint z(u(rng), u(rng));
    const CPoint ref = std::polar(1.0, sigma) * z * std::exp(1.3 * (z - 1.0) / (z + 1.0));
    CHECK(std::abs(eval_atomic_inner(h, z) - ref) <= 1e-14 * std::abs(ref) + 1e-16);
  }
  CHECK(eval_atomic_inner(h, 0.0) == CPoint(0.0));
}

TEST_CASE("powerexp instances are rotation invariant", "[inner_factor]") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> rad(0.0, 0.95);
  for (int q : {2, 3, 4}) {
    const AtomicInnerFunction g = powerexp_example(q, 0.8, 0.3);
    const CPoint omega = std::polar(1.0, 2.0 * kPi / q);
    for (int i = 0; i < 200; ++i) {
      const CPoint z = std::polar(rad(rng), ang(rng));
      const CPoint a = g(omega * z);
      const CPoint b = g(z);
      CHECK(std::abs(a - b) <= 1e-12 * std::abs(b) + 1e-300);
    }
  }
  CHECK_THROWS_AS(powerexp_example(0, 1.0), Error);
}

TEST_CASE("frostman_transform", "[inner_factor]") {
  auto id = [](CPoint z) { return z; };
  CHECK(frostman_transform(id, 0.0, CPoint(0.2, 0.1)) == CPoint(0.2, 0.1));
  CHECK(std::abs(frostman_transform(id, 0.5, 0.5)) == 0.0);
  const FiniteBlaschke b(0.3, {CPoint(0.1, 0.4), CPoint(-0.5, 0.2)});
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    const CPoint z = std::polar(1.0, ang(rng));
    const CPoint zeta = std::polar(0.8, ang(rng));
    CHECK_THAT(std::abs(frostman_transform(b, zeta, z)), WithinAbs(1.0, 1e-12));
  }
  CHECK_THROWS_AS(frostman_transform(id, 1.0, 0.0), Error);
}

TEST_CASE("property: contraction and nonvanishing singular part", "[inner_factor][property]") {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> rad(0.0, 0.99);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const AtomicInnerFunction g = random_inner(rng);
    if (g.p() + g.q() == 0) continue;  // unimodular constant
    const CPoint z = std::polar(rad(rng), ang(rng));
    try {
      const double m = std::abs(g(z));
      CHECK(m < 1.0);
      CHECK(std::abs(eval_singular(g.singular_part(), z)) > 0.0);
      ++checked;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::AtomProximity);
    }
  }
  CHECK(checked > 900);
}

TEST_CASE("property: zero set equals the Blaschke zero set", "[inner_factor][property]") {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 200; ++i) {
    const AtomicInnerFunction g = random_inner(rng, 1.0, 0.65);
    for (const CPoint& a : g.blaschke_part().zeros()) CHECK(std::abs(g(a)) < 1e-15);
    // argument principle on a box: zeros of g equal zeros of B
    auto f = [&](CPoint z) { return g(z); };
    const Rect box{-0.7, 0.7, -0.7, 0.7};
    int inside = 0;
    for (const CPoint& a : g.blaschke_part().zeros()) inside += box.contains(a) ? 1 : 0;
    bool clean = true;
    for (const CPoint& a : g.blaschke_part().zeros()) clean = clean && box.distance_to_edge(a) > 0.02;
    if (clean) CHECK(winding_number(f, box) == inside);
  }
}

TEST_CASE("property: radial limits have modulus one away from atoms", "[inner_factor][property]") {
  // 1 - |S(r e^{it})| ~ c (1 - r^2)/|e^{i theta} - r e^{it}|^2, about 2e-6 c at
  // angular distance 0.1 and r = 1 - 1e-8, so masses are kept to total <= 0.4.
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> rad(0.0, 0.5);
  const double r = 1.0 - 1e-8;
  int tested = 0;
  for (int i = 0; tested < 500; ++i) {
    std::vector<Atom> atoms;
    const int q = 1 + i % 3;
    for (int j = 0; j < q; ++j) atoms.push_back({ang(rng), 0.4 / q});
    const AtomicInnerFunction g(FiniteBlaschke(ang(rng), {std::polar(rad(rng), ang(rng))}), AtomicMeasure(atoms));
    const double t = ang(rng);
    bool far = true;
    for (const Atom& a : atoms) far = far && std::abs(std::polar(1.0, t) - std::polar(1.0, a.theta)) >= 2.0 * std::sin(0.05);
    if (!far) continue;
    ++tested;
    CHECK_THAT(std::abs(g(std::polar(r, t))), WithinAbs(1.0, 1e-6));
  }
}

TEST_CASE("property: inner function derivative agrees with central differences", "[inner_factor][property]") {
  std::mt19937_64 rng(38);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> rad(0.0, 0.8);
  for (int i = 0; i < 1000; ++i) {
    const AtomicInnerFunction g = random_inner(rng, 1.0);
    const CPoint z = std::polar(rad(rng), ang(rng));
    const CPoint exact = g.derivative(z);
    const CPoint fd = central_difference(g, z);
    CHECK(std::abs(fd - exact) <= 1e-6 * std::abs(exact) + 1e-9);
  }
}
