#include <catch_amalgamated.hpp>

#include <cmath>

#include "innerdyn/correspondence.hpp"
#include "innerdyn/raster.hpp"

using namespace innerdyn;

namespace {

Grid from_ascii(const std::vector<std::string>& rows) {
  GridSpec spec{{0.0, 1.0, 0.0, 1.0}, static_cast<int>(rows[0].size()), static_cast<int>(rows.size())};
  std::vector<PixelLabel> labels;
  for (const auto& r : rows) {
    for (char c : r) labels.push_back(c == '#' ? PixelLabel::Basin : PixelLabel::Escaping);
  }
  return Grid(spec, labels);
}

}  // namespace

TEST_CASE("classify_point examples", "[raster]") {
  const auto f = EntireFamilyInstance::exp_lambda(exp_multiplier_map(0.5));
  RasterCriteria c;
  c.attractor = 0.5;
  auto fz = [&](CPoint z) { return f(z); };
  CHECK(classify_point(fz, 0.5, c) == PixelLabel::Basin);
  CHECK(classify_point(fz, 0.0, c) == PixelLabel::Basin);
  CHECK(classify_point(fz, 30.0, c) == PixelLabel::Escaping);
  c.max_iter = 2;
  CHECK(classify_point(fz, -3.0, c) == PixelLabel::Undecided);
}

TEST_CASE("sine real axis is in the basin", "[raster]") {
  const auto f = EntireFamilyInstance::sine(0.5);
  RasterCriteria c;
  c.attractor = 0.0;
  const Grid g = classify_grid([&](CPoint z) { return f(z); }, GridSpec{{-4 * kPi, 4 * kPi, -1e-3, 1e-3}, 2000, 1}, c);
  CHECK(g.count(PixelLabel::Basin) == 2000);
  CHECK(g.spec().pixel(0, 0).imag() == 0.0);
}

TEST_CASE("preimage criterion matches its definition", "[raster]") {
  const auto f = EntireFamilyInstance::sine(0.5);
  RasterCriteria c;
  c.attractor = 0.0;
  c.preimage_of = Disc{0.0, 0.8};
  const GridSpec spec{{-7.0, 7.0, -3.0, 3.0}, 140, 60};
  const Grid g = classify_grid([&](CPoint z) { return f(z); }, spec, c);
  for (int j = 0; j < spec.height; ++j) {
    for (int i = 0; i < spec.width; ++i) {
      const bool inside = std::abs(f(spec.pixel(i, j))) < 0.8;
      CHECK((g.at(i, j) == PixelLabel::InPreimage) == inside);
    }
  }
}

TEST_CASE("grid validation", "[raster]") {
  auto id = [](CPoint z) { return z; };
  CHECK_THROWS_AS(classify_grid(id, GridSpec{{0, 1, 0, 1}, 20000, 20000}, {}), Error);
  CHECK_THROWS_AS(classify_grid(id, GridSpec{{1, 0, 0, 1}, 10, 10}, {}), Error);
  CHECK_THROWS_AS(classify_grid(id, GridSpec{{0, 1, 0, 1}, 0, 10}, {}), Error);
  RasterCriteria bad;
  bad.attract_radius = 0.0;
  CHECK_THROWS_AS(classify_grid(id, GridSpec{{0, 1, 0, 1}, 4, 4}, bad), Error);
  CHECK_THROWS_AS(Grid(GridSpec{{0, 1, 0, 1}, 2, 2}, std::vector<PixelLabel>(3)), Error);
}

TEST_CASE("component counting on hand-made grids", "[raster]") {
  SECTION("two bars touching the frame") {
    const Grid g = from_ascii({"############", "............", "............", "............", "............",
                               "............", "............", "............", "............", "############"});
    const auto s = count_unbounded_components(g, PixelLabel::Basin);
    CHECK(s.unbounded == 2);
    CHECK(s.total == 2);
    CHECK_FALSE(s.resolution_warning);
    CHECK(s.unbounded_sizes == std::vector<std::size_t>{12, 12});
  }
  SECTION("interior blob is bounded") {
    const Grid g = from_ascii({"........", ".####...", ".####...", ".####...", "........", "........"});
    const auto s = count_unbounded_components(g, PixelLabel::Basin);
    CHECK(s.unbounded == 0);
    CHECK(s.total == 1);
    CHECK(s.smallest == 12);
  }
  SECTION("diagonal contact does not join under 4-connectivity") {
    const Grid g = from_ascii({"#.", ".#"});
    const auto s = count_unbounded_components(g, PixelLabel::Basin);
    CHECK(s.total == 2);
    CHECK(s.unbounded == 2);
    CHECK(s.resolution_warning);
  }
  SECTION("other label") {
    const Grid g = from_ascii({"#.#", "#.#", "###"});
    CHECK(count_unbounded_components(g, PixelLabel::Basin).unbounded == 1);
    CHECK(count_unbounded_components(g, PixelLabel::Escaping).unbounded == 1);
    CHECK(count_unbounded_components(g, PixelLabel::Undecided).total == 0);
  }
}

TEST_CASE("property: grids are deterministic across thread counts", "[raster][property]") {
  const auto f = EntireFamilyInstance::sine(0.5);
  RasterCriteria c;
  c.attractor = 0.0;
  c.preimage_of = Disc{0.0, 0.8};
  const GridSpec spec{{-6.0, 6.0, -4.0, 4.0}, 120, 80};
  auto fz = [&](CPoint z) { return f(z); };
  const Grid a = classify_grid(fz, spec, c, 1);
  const Grid b = classify_grid(fz, spec, c, 3);
  const Grid d = classify_grid(fz, spec, c, 7);
  CHECK(a == b);
  CHECK(a == d);
}

TEST_CASE("property: sine grids are symmetric", "[raster][property]") {
  const auto f = EntireFamilyInstance::sine(0.5);
  RasterCriteria c;
  c.attractor = 0.0;
  c.preimage_of = Disc{0.0, 0.8};
  const Grid g = classify_grid([&](CPoint z) { return f(z); }, GridSpec{{-4 * kPi, 4 * kPi, -6.0, 6.0}, 400, 200}, c);
  CHECK(symmetry_mismatch(g, true, true) < 1e-3);   // z -> -z
  CHECK(symmetry_mismatch(g, false, true) < 1e-3);  // z -> conj z
}

TEST_CASE("tract counts are resolution and window stable", "[raster][slow]") {
  for (const TractCase& c : standard_tract_cases(400, 400)) {
    INFO(c.name);
    const TractCount t = tract_count_with_stability(c);
    CHECK(t.base == c.expected);
    CHECK(t.doubled == c.expected);
    CHECK(t.enlarged == c.expected);
    CHECK(t.stable());
  }
}
