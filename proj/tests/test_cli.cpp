#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "cli_app.hpp"

using namespace innerdyn;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "innerdyn_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "innerdyn_test_cli";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("argument parsers", "[cli]") {
  const Rect r = cli::parse_window("-1:2:-3:4.5");
  CHECK(r.re0 == -1.0);
  CHECK(r.im1 == 4.5);
  CHECK_THROWS_AS(cli::parse_window("0:1:0"), Error);
  CHECK_THROWS_AS(cli::parse_window("1:0:0:1"), Error);
  CHECK_THROWS_AS(cli::parse_window("a:1:0:1"), Error);
  CHECK(cli::parse_resolution("640x480") == std::pair<int, int>{640, 480});
  CHECK_THROWS_AS(cli::parse_resolution("640"), Error);
  CHECK_THROWS_AS(cli::parse_resolution("0x10"), Error);
  CHECK_THROWS_AS(cli::parse_resolution("10x10x"), Error);
  CHECK(cli::parse_complex("0.5") == CPoint(0.5, 0.0));
  CHECK(cli::parse_complex("0.5,-2") == CPoint(0.5, -2.0));
  CHECK_THROWS_AS(cli::parse_complex("0.5i"), Error);
  const Disc d = cli::parse_disc("1,2,0.5");
  CHECK(d.center == CPoint(1.0, 2.0));
  CHECK(d.radius == 0.5);
  CHECK_THROWS_AS(cli::parse_disc("1,2,-1"), Error);
}

TEST_CASE("exit code mapping", "[cli]") {
  CHECK(cli::exit_code_for(Error(ErrorCode::DomainError, "x")) == 2);
  CHECK(cli::exit_code_for(Error(ErrorCode::NoConvergence, "x")) == 3);
  CHECK(cli::exit_code_for(Error(ErrorCode::BasinEscape, "x")) == 3);
}

TEST_CASE("help and rejected input", "[cli]") {
  Run h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("render") != std::string::npos);
  h = run({"render", "--help"});
  CHECK(h.code == 0);
  for (const char* flag : {"--family", "--lambda", "--window", "--res", "--max-iter", "--bailout", "--attract-radius", "--attractor",
                           "--preimage", "--out", "--threads"}) {
    CHECK(h.out.find(flag) != std::string::npos);
  }
  CHECK(run({}).code == 2);
  CHECK(run({"render", "--bogus"}).code == 2);
  CHECK(run({"render", "--res", "ten"}).code == 2);
  CHECK(run({"render", "--window", "1:0:0:1"}).code == 2);
  CHECK(run({"render", "--family", "nope"}).code == 2);
  CHECK(run({"render", "--family", "sine", "--lambda", "auto"}).code == 2);
  CHECK(run({"render", "--res", "20000x20000"}).code == 2);
  CHECK(run({"verify", "nope"}).code == 2);
  CHECK(run({"verify", "sine", "--lambda", "0.99"}).code == 2);
}

TEST_CASE("render writes deterministic images and statistics", "[cli]") {
  const auto dir = scratch();
  const std::string a = (dir / "a").string(), b = (dir / "b").string();
  const Run r1 = run({"render", "--family", "sine", "--lambda", "0.5", "--window", "-6:6:-3:3", "--res", "60x30", "--out", a,
                      "--threads", "1"});
  REQUIRE(r1.code == 0);
  CHECK(r1.out.find("attractor 0,0") != std::string::npos);
  const Run r2 = run({"render", "--family", "sine", "--lambda", "0.5", "--window", "-6:6:-3:3", "--res", "60x30", "--out", b,
                      "--threads", "3"});
  REQUIRE(r2.code == 0);
  for (const char* ext : {".pgm", ".ppm", ".csv"}) CHECK(read_file(a + ext) == read_file(b + ext));
  const DecodedImage img = decode_pnm(read_file(a + ".pgm"));
  CHECK(img.width == 60);
  CHECK(img.height == 30);
  CHECK(read_file(a + ".csv").rfind("label,pixels", 0) == 0);
}

TEST_CASE("render with a preimage disc and rho auto", "[cli]") {
  const auto dir = scratch();
  Run r = run({"render", "--family", "exp", "--window", "-5:1:-3:3", "--res", "40x40", "--preimage", "0.4,0,0.5", "--out",
               (dir / "p").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("in-preimage 0\n") == std::string::npos);
  r = run({"render", "--family", "rho", "--lambda", "auto", "--d", "2", "--window", "-0.5:1.5:-1:1", "--res", "20x20", "--out",
           (dir / "r").string()});
  CHECK(r.code == 0);
  r = run({"render", "--family", "fatou", "--res", "10x10", "--out", (dir / "f").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("attractor none") != std::string::npos);
}

TEST_CASE("config file gives the same output as flags", "[cli]") {
  const auto dir = scratch();
  const std::string cfg = (dir / "render.toml").string();
  write_file_atomic(cfg, "[render]\nfamily = \"exp\"\nwindow = \"-5:1:-3:3\"\nres = \"30x30\"\nout = \"" + (dir / "c").string() +
                             "\"\n");
  const Run r1 = run({"--config", cfg, "render"});
  REQUIRE(r1.code == 0);
  const Run r2 = run({"render", "--family", "exp", "--window", "-5:1:-3:3", "--res", "30x30", "--out", (dir / "d").string()});
  REQUIRE(r2.code == 0);
  CHECK(read_file((dir / "c.pgm").string()) == read_file((dir / "d.pgm").string()));
}

TEST_CASE("atlas and verify", "[cli]") {
  const auto dir = scratch();
  Run r = run({"atlas", "--res", "20x20", "--out", (dir / "atlas").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("region law agreement") != std::string::npos);
  CHECK(decode_pnm(read_file((dir / "atlas.ppm").string())).width == 20);

  const std::string json = (dir / "topfer.json").string();
  r = run({"verify", "topfer", "--out", json});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS k = 1/3") != std::string::npos);
  const auto j = nlohmann::json::parse(read_file(json));
  CHECK(j["all_pass"] == true);

  r = run({"verify", "exp", "--tau", "0.3,0.4", "--out", (dir / "exp.json").string()});
  CHECK(r.code == 0);
  r = run({"verify", "fatou", "--lambda", "2", "--out", (dir / "fatou.json").string()});
  CHECK(r.code == 0);
  r = run({"verify", "lambda0", "--d", "3", "--out", (dir / "l.json").string()});
  CHECK(r.code == 0);
  CHECK(run({"verify", "lambda0", "--d", "1", "--out", (dir / "l1.json").string()}).code == 2);
}

TEST_CASE("atlas overlay marks the boundary curve and the a > 1 columns are attracting", "[cli]") {
  const auto dir = scratch();
  const int n = 40;
  REQUIRE(run({"atlas", "--res", "40x40", "--out", (dir / "overlay").string()}).code == 0);
  const DecodedImage img = decode_pnm(read_file((dir / "overlay.ppm").string()));
  const auto cells = classify_tan_grid(0.0, kPi, -kHalfPi, kHalfPi, n, n);
  const double half_cell = 0.5 * kPi / n;
  std::size_t black = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const AtlasCell& c = cells[static_cast<std::size_t>(j) * n + i];
      const std::size_t p = 3 * (static_cast<std::size_t>(n - 1 - j) * n + i);
      const bool is_black = img.data[p] == 0 && img.data[p + 1] == 0 && img.data[p + 2] == 0;
      if (is_black) {
        ++black;
        CHECK(std::abs(std::abs(c.b) - boundary_curve_theta(c.a)) <= half_cell + 1e-12);
      } else if (c.a > 1.0) {
        CHECK(static_cast<std::uint8_t>(img.data[p]) == 160);
      }
    }
  }
  CHECK(black > 0);
}
