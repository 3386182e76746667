#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "innerdyn/numerics.hpp"

using namespace innerdyn;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("stable_tan reference values", "[numerics]") {
  CHECK(stable_tan(0.0) == CPoint(0.0, 0.0));
  CHECK_THAT(stable_tan(kPi / 4).real(), WithinAbs(1.0, 1e-15));
  CHECK_THAT(stable_tan(kPi / 4).imag(), WithinAbs(0.0, 1e-15));

  // tan(40i) = i tanh 40 = i (1 - 2e^{-80} + ...)
  const CPoint t = stable_tan(CPoint(0.0, 40.0));
  CHECK(t.real() == 0.0);
  CHECK_THAT(t.imag(), WithinAbs(1.0, 1e-16));
  const CPoint tn = stable_tan(CPoint(0.0, -40.0));
  CHECK_THAT(tn.imag(), WithinAbs(-1.0, 1e-16));
}

TEST_CASE("stable_tan matches std::tan where the latter is reliable", "[numerics]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(-10.0, 10.0);
  std::uniform_real_distribution<double> im(-15.0, 15.0);
  for (int i = 0; i < 1000; ++i) {
    const CPoint z(re(rng), im(rng));
    if (detail::distance_to_lattice(z, kHalfPi) < 1e-3) continue;
    const CPoint ref = std::tan(z);
    CHECK(std::abs(stable_tan(z) - ref) <= 1e-12 * std::abs(ref) + 1e-15);
  }
}

TEST_CASE("stable_tan far from the real axis keeps full relative accuracy", "[numerics]") {
  // Re tan(x+iy) = sin 2x / (cos 2x + cosh 2y) is exponentially small and must
  // keep its relative accuracy; Im tan = sinh 2y / (cos 2x + cosh 2y).
  for (double y : {21.0, 30.0, 45.0, 50.0}) {
    for (double x : {0.3, 1.1, -2.5}) {
      const double den = std::cos(2 * x) + std::cosh(2 * y);
      const double re_ref = std::sin(2 * x) / den;
      const double im_ref = std::sinh(2 * y) / den;
      const CPoint up = stable_tan(CPoint(x, y));
      CHECK_THAT(up.real(), WithinRel(re_ref, 1e-12));
      CHECK_THAT(up.imag(), WithinRel(im_ref, 1e-12));
      const CPoint down = stable_tan(CPoint(x, -y));
      CHECK_THAT(down.real(), WithinRel(re_ref, 1e-12));
      CHECK_THAT(down.imag(), WithinRel(-im_ref, 1e-12));
    }
  }
  const CPoint huge = stable_tan(CPoint(0.4, 800.0));
  CHECK(is_finite(huge));
  CHECK(huge.imag() == 1.0);
}

TEST_CASE("stable_tan and stable_cot reject poles", "[numerics]") {
  CHECK_THROWS_MATCHES(stable_tan(kHalfPi), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::PoleProximity;
                       }));
  CHECK_THROWS_AS(stable_tan(-3 * kHalfPi), Error);
  CHECK_THROWS_AS(stable_cot(0.0), Error);
  CHECK_THROWS_AS(stable_cot(2 * kPi), Error);
  CHECK_NOTHROW(stable_tan(kHalfPi + 1e-6));
  CHECK_NOTHROW(stable_cot(CPoint(0.0, 1e-6)));
}

TEST_CASE("property: tan is pi-periodic", "[numerics][property]") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> re(-20.0, 20.0);
  std::uniform_real_distribution<double> im(-50.0, 50.0);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const CPoint z(re(rng), im(rng));
    if (detail::distance_to_lattice(z, kHalfPi) < 1e-2) continue;
    const CPoint a = stable_tan(z);
    const CPoint b = stable_tan(z + kPi);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)) * (1.0 + std::abs(z.real())));
    ++checked;
  }
  CHECK(checked > 950);
}

TEST_CASE("property: tan and cot derivatives agree with central differences", "[numerics][property]") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> re(-6.0, 6.0);
  std::uniform_real_distribution<double> im(-4.0, 4.0);
  auto tan_fn = [](CPoint z) { return stable_tan(z); };
  auto cot_fn = [](CPoint z) { return stable_cot(z); };
  for (int i = 0; i < 1000; ++i) {
    const CPoint z(re(rng), im(rng));
    if (detail::distance_to_lattice(z, kHalfPi) > 0.1) {
      const CPoint t = stable_tan(z);
      const CPoint exact = 1.0 + t * t;
      CHECK(std::abs(central_difference(tan_fn, z) - exact) <= 1e-6 * std::abs(exact));
    }
    if (detail::distance_to_lattice(z, 0.0) > 0.1) {
      const CPoint c = stable_cot(z);
      const CPoint exact = -(1.0 + c * c);
      CHECK(std::abs(central_difference(cot_fn, z) - exact) <= 1e-6 * std::abs(exact));
    }
  }
}

TEST_CASE("newton_holomorphic examples", "[numerics]") {
  RootSolveConfig cfg;
  auto sq = [](CPoint z) { return z * z - 1.0; };
  auto dsq = [](CPoint z) { return 2.0 * z; };
  const CPoint r1 = newton_holomorphic(sq, dsq, 0.5, cfg);
  CHECK_THAT(r1.real(), WithinAbs(1.0, 1e-12));
  CHECK(std::abs(sq(r1)) <= cfg.tol_residual);

  const double lambda = 0.5 * std::exp(-0.5);
  auto fix = [lambda](CPoint z) { return lambda * std::exp(z) - z; };
  auto dfix = [lambda](CPoint z) { return lambda * std::exp(z) - 1.0; };
  const CPoint r2 = newton_holomorphic(fix, dfix, 0.0, cfg);
  CHECK_THAT(r2.real(), WithinAbs(0.5, 1e-11));
  CHECK_THAT(r2.imag(), WithinAbs(0.0, 1e-12));
  CHECK(std::abs(fix(r2)) <= cfg.tol_residual);

  const CPoint r2fd = newton_holomorphic(fix, finite_difference, 0.0, cfg);
  CHECK_THAT(r2fd.real(), WithinAbs(0.5, 1e-11));

  cfg.max_iter = 1;
  auto id = [](CPoint z) { return z; };
  auto one = [](CPoint) { return CPoint(1.0); };
  CHECK(newton_holomorphic(id, one, 1.0, cfg) == CPoint(0.0));
}

TEST_CASE("newton_holomorphic error paths", "[numerics]") {
  RootSolveConfig cfg;
  auto flat = [](CPoint z) { return z * z + 1.0; };
  auto dflat = [](CPoint z) { return 2.0 * z; };
  CHECK_THROWS_MATCHES(newton_holomorphic(flat, dflat, 0.0, cfg), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::DerivativeVanishes;
                       }));
  // exp has no zeros: Newton walks left forever.
  auto e = [](CPoint z) { return std::exp(z); };
  cfg.max_iter = 20;
  CHECK_THROWS_MATCHES(newton_holomorphic(e, e, 0.0, cfg), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& err) {
                         return err.code() == ErrorCode::NoConvergence;
                       }));
  RootSolveConfig bad;
  bad.fd_step = 1e-2;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = {};
  bad.tol_residual = 2.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("property: Newton success paths meet the residual tolerance", "[numerics][property]") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  RootSolveConfig cfg;
  int successes = 0;
  for (int i = 0; i < 1000; ++i) {
    const CPoint c(u(rng), u(rng));
    auto f = [c](CPoint z) { return z * z * z - c; };
    auto df = [](CPoint z) { return 3.0 * z * z; };
    try {
      const CPoint z = newton_holomorphic(f, df, CPoint(u(rng), u(rng)), cfg);
      CHECK(std::abs(f(z)) <= cfg.tol_residual);
      ++successes;
    } catch (const Error&) {
    }
  }
  CHECK(successes > 950);
}

TEST_CASE("orbit examples", "[numerics]") {
  auto id = [](CPoint z) { return z; };
  const Orbit o1 = orbit(id, 1.0, 3);
  REQUIRE(o1.points.size() == 4);
  for (const CPoint& z : o1.points) CHECK(z == CPoint(1.0));
  CHECK_FALSE(o1.escaped);

  auto half = [](CPoint z) { return z / 2.0; };
  const Orbit o2 = orbit(half, 1.0, 2);
  REQUIRE(o2.points.size() == 3);
  CHECK(o2.points[1] == CPoint(0.5));
  CHECK(o2.points[2] == CPoint(0.25));

  const double lambda = 0.5 * std::exp(-0.5);
  auto f = [lambda](CPoint z) { return lambda * std::exp(z); };
  const Orbit o3 = orbit(f, 0.0, 200);
  CHECK_THAT(o3.back().real(), WithinAbs(0.5, 1e-12));

  auto dbl = [](CPoint z) { return 10.0 * z; };
  const Orbit o4 = orbit(dbl, 1.0, 100);
  CHECK(o4.escaped);
  CHECK(o4.points.size() == 12);

  auto tan_orbit = [](CPoint z) { return stable_tan(z); };
  CHECK_THROWS_MATCHES(orbit(tan_orbit, std::atan(kHalfPi), 3), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::PoleHit;
                       }));
}

TEST_CASE("hyperbolic distances and Cayley maps", "[numerics]") {
  CHECK_THAT(hyperbolic_distance_disc<double>(0.0, 0.5), WithinRel(std::log(3.0), 1e-14));
  CHECK_THAT(hyperbolic_distance_halfplane<double>(CPoint(0, 1), CPoint(0, std::exp(2.0))), WithinRel(2.0, 1e-14));
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> re(-3.0, 3.0);
  std::uniform_real_distribution<double> im(0.05, 3.0);
  for (int i = 0; i < 200; ++i) {
    const CPoint z(re(rng), im(rng));
    const CPoint w(re(rng), im(rng));
    const double dh = hyperbolic_distance_halfplane(z, w);
    const double dd = hyperbolic_distance_disc(cayley_to_disc(z), cayley_to_disc(w));
    CHECK_THAT(dd, WithinRel(dh, 1e-9));
    CHECK(std::abs(cayley_to_halfplane(cayley_to_disc(z)) - z) < 1e-12 * (1 + std::abs(z)));
  }
}

TEST_CASE("winding numbers and zero location", "[numerics]") {
  auto p = [](CPoint z) { return (z - 0.3) * (z - 0.3) * (z + CPoint(0.2, 0.7)); };
  auto dp = [](CPoint z) {
    return 2.0 * (z - 0.3) * (z + CPoint(0.2, 0.7)) + (z - 0.3) * (z - 0.3);
  };
  const Rect w{-1.0, 1.0, -1.0, 1.0};
  CHECK(winding_number(p, w) == 3);
  CHECK(winding_number(p, Rect{0.5, 1.0, -1.0, 1.0}) == 0);
  const auto zs = zeros_in_rectangle(p, dp, w);
  REQUIRE(zs.size() == 2);
  CHECK(std::abs(zs[0].location - CPoint(-0.2, -0.7)) < 1e-10);
  CHECK(zs[0].multiplicity == 1);
  CHECK(std::abs(zs[1].location - 0.3) < 1e-8);
  CHECK(zs[1].multiplicity == 2);

  const auto zfd = zeros_in_rectangle(p, finite_difference, w);
  REQUIRE(zfd.size() == 2);

  auto s = [](CPoint z) { return std::sin(z); };
  CHECK_THROWS_MATCHES(winding_number(s, Rect{0.0, 1.0, -1.0, 1.0}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::WindowBoundaryZero;
                       }));
  auto c = [](CPoint z) { return std::cos(z); };
  auto dc = [](CPoint z) { return -std::sin(z); };
  const auto cz = zeros_in_rectangle(c, dc, Rect{-2 * kPi, 2 * kPi, -1.0, 1.0});
  REQUIRE(cz.size() == 4);
  CHECK_THAT(cz[0].location.real(), WithinAbs(-3 * kHalfPi, 1e-12));
  CHECK_THAT(cz[3].location.real(), WithinAbs(3 * kHalfPi, 1e-12));
}

TEST_CASE("Cauchy derivatives reproduce Taylor data", "[numerics]") {
  auto e = [](CPoint z) { return std::exp(z); };
  const auto d = cauchy_derivatives(e, 0.0, 0.5, 4);
  for (const CPoint& v : d) CHECK(std::abs(v - 1.0) < 1e-12);
  auto t = [](CPoint z) { return stable_tan(z); };
  const auto dt = cauchy_derivatives(t, 0.0, 0.5, 3);
  CHECK(std::abs(dt[0]) < 1e-14);
  CHECK(std::abs(dt[1] - 1.0) < 1e-12);
  CHECK(std::abs(dt[2]) < 1e-12);
  CHECK(std::abs(dt[3] - 2.0) < 1e-11);
}

TEST_CASE("Rect helpers", "[numerics]") {
  const Rect r{-1.0, 3.0, -2.0, 2.0};
  CHECK(r.valid());
  CHECK(r.width() == 4.0);
  CHECK(r.center() == CPoint(1.0, 0.0));
  CHECK(r.contains(CPoint(0.0, 0.0)));
  CHECK(r.contains(CPoint(3.05, 0.0), 0.1));
  CHECK_FALSE(r.contains(CPoint(3.2, 0.0), 0.1));
  CHECK_THAT(r.distance_to_edge(CPoint(0.0, 0.0)), WithinAbs(1.0, 1e-15));
  const Rect s = r.scaled(1.25);
  CHECK_THAT(s.width(), WithinAbs(5.0, 1e-15));
  CHECK(s.center() == r.center());
}
