#pragma once

// Command-line front end: render, atlas, verify.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "innerdyn/innerdyn.hpp"

namespace innerdyn::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kNumericError = 3 };

inline int exit_code_for(const Error& e) { return e.code() == ErrorCode::DomainError ? kConfigError : kNumericError; }

inline Rect parse_window(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ':')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorCode::DomainError, "window '" + s + "': expected re0:re1:im0:im1");
    }
  }
  if (v.size() != 4) throw Error(ErrorCode::DomainError, "window '" + s + "': expected re0:re1:im0:im1");
  const Rect r{v[0], v[1], v[2], v[3]};
  if (!r.valid()) throw Error(ErrorCode::DomainError, "window '" + s + "' is empty");
  return r;
}

inline std::pair<int, int> parse_resolution(const std::string& s) {
  const auto x = s.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(s);
    std::size_t u1 = 0, u2 = 0;
    const std::string a = s.substr(0, x), b = s.substr(x + 1);
    const int w = std::stoi(a, &u1);
    const int h = std::stoi(b, &u2);
    if (u1 != a.size() || u2 != b.size() || w <= 0 || h <= 0) throw std::invalid_argument(s);
    return {w, h};
  } catch (const std::exception&) {
    throw Error(ErrorCode::DomainError, "resolution '" + s + "': expected WIDTHxHEIGHT");
  }
}

/// "x" or "x,y".
inline CPoint parse_complex(const std::string& s) {
  const auto c = s.find(',');
  try {
    std::size_t u = 0;
    if (c == std::string::npos) {
      const double x = std::stod(s, &u);
      if (u != s.size()) throw std::invalid_argument(s);
      return x;
    }
    const std::string a = s.substr(0, c), b = s.substr(c + 1);
    std::size_t u2 = 0;
    const double x = std::stod(a, &u);
    const double y = std::stod(b, &u2);
    if (u != a.size() || u2 != b.size()) throw std::invalid_argument(s);
    return {x, y};
  } catch (const std::exception&) {
    throw Error(ErrorCode::DomainError, "'" + s + "': expected a number or re,im");
  }
}

/// "re,im,r".
inline Disc parse_disc(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      v.push_back(std::stod(part));
    } catch (const std::exception&) {
      v.clear();
      break;
    }
  }
  if (v.size() != 3 || !(v[2] > 0.0)) throw Error(ErrorCode::DomainError, "disc '" + s + "': expected re,im,radius");
  return {CPoint(v[0], v[1]), v[2]};
}

inline CPoint default_lambda(FamilyTag t) {
  switch (t) {
    case FamilyTag::ExpLambda: return exp_multiplier_map(0.5);
    case FamilyTag::SineLambda: return 0.5;
    case FamilyTag::FatouLambda: return 1.0;
    case FamilyTag::ZExp: return 0.5;
    case FamilyTag::PowerExp: return 0.01;
    default: return 0.0;
  }
}

struct FamilyArgs {
  std::string family = "sine";
  std::string lambda = "default";
  int d = 2;
  int q = 3;
};

inline EntireFamilyInstance make_family(const FamilyArgs& a) {
  const FamilyTag tag = family_from_string(a.family);
  CPoint lambda = default_lambda(tag);
  if (tag == FamilyTag::RhoD) {
    lambda = (a.lambda == "default" || a.lambda == "auto") ? CPoint(rho_bifurcation_lambda0(a.d)) : parse_complex(a.lambda);
  } else if (a.lambda == "auto") {
    throw Error(ErrorCode::DomainError, "--lambda auto is only meaningful for --family rho");
  } else if (a.lambda != "default") {
    lambda = parse_complex(a.lambda);
  }
  return EntireFamilyInstance(tag, lambda, a.d, a.q);
}

/// Seed whose orbit finds the attracting cycle of interest (a singular value where possible).
inline std::optional<CPoint> attractor_seed(const EntireFamilyInstance& f) {
  switch (f.tag()) {
    case FamilyTag::ExpLambda: return CPoint(0.0);
    case FamilyTag::SineLambda: return f.lambda();
    case FamilyTag::ZExp: return f(-1.0);
    case FamilyTag::PowerExp: return f.lambda();
    case FamilyTag::AlphaD: return CPoint(0.0);
    case FamilyTag::RhoD: return CPoint(0.0);
    case FamilyTag::CstarMap: return CPoint(-1.0);
    default: return std::nullopt;
  }
}

inline std::optional<CPoint> find_attractor(const EntireFamilyInstance& f) {
  const auto seed = attractor_seed(f);
  if (!seed) return std::nullopt;
  CPoint z = *seed;
  for (int i = 0; i < 5000; ++i) {
    z = f(z);
    if (!is_finite(z) || std::abs(z) > kBailout) return std::nullopt;
  }
  if (std::abs(f(z) - z) < 1e-9 && std::abs(f.derivative(z)) < 1.0) return z;
  return std::nullopt;
}

struct RenderArgs {
  FamilyArgs fam;
  std::string window = "-12.566370614359172:12.566370614359172:-12.566370614359172:12.566370614359172";
  std::string res = "800x800";
  int max_iter = 256;
  double bailout = kBailout;
  double attract_radius = 1e-6;
  std::string attractor = "auto";
  std::string preimage = "none";
  std::string out = "render";
  unsigned threads = 0;
};

inline int cmd_render(const RenderArgs& a, std::ostream& out) {
  const EntireFamilyInstance f = make_family(a.fam);
  const auto [w, h] = parse_resolution(a.res);
  GridSpec spec{parse_window(a.window), w, h};
  spec.validate();
  RasterCriteria c;
  c.max_iter = a.max_iter;
  c.bailout = a.bailout;
  c.attract_radius = a.attract_radius;
  if (a.max_iter < 0 || !(a.bailout > 0.0) || !(a.attract_radius > 0.0)) throw Error(ErrorCode::DomainError, "invalid iteration criteria");
  if (a.attractor == "auto") c.attractor = find_attractor(f);
  else if (a.attractor != "none") c.attractor = parse_complex(a.attractor);
  if (a.preimage != "none") c.preimage_of = parse_disc(a.preimage);

  const Grid g = classify_grid([&f](CPoint z) { return f(z); }, spec, c, a.threads);
  write_file_atomic(a.out + ".pgm", grid_to_pgm(g));
  write_file_atomic(a.out + ".ppm", grid_to_ppm(g));
  write_file_atomic(a.out + ".csv", component_stats_csv(g));
  out << "family " << to_string(f.tag()) << " lambda " << f.lambda().real();
  if (f.lambda().imag() != 0.0) out << "," << f.lambda().imag();
  out << " d " << f.d() << " q " << f.q() << '\n';
  if (c.attractor) out << "attractor " << c.attractor->real() << "," << c.attractor->imag() << '\n';
  else out << "attractor none\n";
  if (c.preimage_of) out << "preimage disc radius " << c.preimage_of->radius << '\n';
  for (PixelLabel l : {PixelLabel::Basin, PixelLabel::Escaping, PixelLabel::InPreimage, PixelLabel::Undecided}) {
    out << to_string(l) << " " << g.count(l) << '\n';
  }
  const ComponentStats s = count_unbounded_components(g, PixelLabel::Basin);
  out << "unbounded basin components " << s.unbounded << (s.resolution_warning ? " (resolution warning)" : "") << '\n';
  out << "wrote " << a.out << ".pgm " << a.out << ".ppm " << a.out << ".csv\n";
  return kOk;
}

struct AtlasArgs {
  std::string window = "0:3.141592653589793:-1.5707963267948966:1.5707963267948966";
  std::string res = "200x200";
  int budget = 5000;
  std::string out = "atlas";
};

inline int cmd_atlas(const AtlasArgs& a, std::ostream& out) {
  const Rect win = parse_window(a.window);
  const auto [na, nb] = parse_resolution(a.res);
  if (a.budget <= 0) throw Error(ErrorCode::DomainError, "--budget must be positive");
  const std::vector<AtlasCell> cells = classify_tan_grid(win.re0, win.re1, win.im0, win.im1, na, nb, a.budget);
  const double half_cell = 0.5 * win.height() / nb;
  std::vector<Rgb> px(cells.size());
  std::size_t law_checked = 0, law_agree = 0, pair_agree = 0;
  for (int j = 0; j < nb; ++j) {
    for (int i = 0; i < na; ++i) {
      const AtlasCell& c = cells[static_cast<std::size_t>(j) * na + i];
      const bool attracting = !c.solver_failed && c.solver_class == FixedPointClass::AttractingInterior;
      Rgb color = attracting ? Rgb{160, 160, 160} : Rgb{255, 255, 255};
      if (c.solver_failed) color = {200, 40, 40};
      if (c.boundary_distance <= half_cell) color = {0, 0, 0};
      px[static_cast<std::size_t>(nb - 1 - j) * na + i] = color;  // top row = largest b
      if (c.boundary_distance > kParabolicBand) {
        ++law_checked;
        law_agree += attracting == c.region_law ? 1 : 0;
      }
      pair_agree += c.solver_class == c.iteration_class ? 1 : 0;
    }
  }
  write_file_atomic(a.out + ".ppm", encode_ppm(na, nb, px));
  write_file_atomic(a.out + ".csv", atlas_csv(cells));
  out << "cells " << cells.size() << '\n';
  out << "region law agreement " << law_agree << "/" << law_checked << '\n';
  out << "solver/iteration agreement " << pair_agree << "/" << cells.size() << '\n';
  out << "wrote " << a.out << ".ppm " << a.out << ".csv\n";
  return kOk;
}

struct VerifyArgs {
  std::string name;
  std::string tau = "0.5";
  std::string lambda = "default";
  int d = 2;
  bool no_raster = false;
  std::string out;
};

inline const std::vector<std::string>& verify_names() {
  static const std::vector<std::string> names{"exp", "parabolic-tan", "sine", "fatou", "topfer", "lambda0", "unisingular-forms"};
  return names;
}

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  PairingReport r;
  auto lambda_or = [&](double fallback) {
    if (a.lambda == "default") return fallback;
    const CPoint l = parse_complex(a.lambda);
    if (l.imag() != 0.0) throw Error(ErrorCode::DomainError, "--lambda must be real here");
    return l.real();
  };
  PairingOptions opt;
  opt.with_raster = !a.no_raster;
  if (a.name == "exp") r = verify_exp_pairing(parse_complex(a.tau), opt);
  else if (a.name == "parabolic-tan") r = verify_parabolic_tan(opt);
  else if (a.name == "sine") r = verify_sine_pairing(lambda_or(0.5), opt);
  else if (a.name == "fatou") r = verify_fatou_pairing(lambda_or(1.0), opt);
  else if (a.name == "topfer") r = verify_topfer();
  else if (a.name == "lambda0") {
    if (a.d < 2) throw Error(ErrorCode::DomainError, "--d must be at least 2");
    r = verify_lambda0(a.d);
  } else if (a.name == "unisingular-forms") r = verify_unisingular_forms();
  else throw Error(ErrorCode::DomainError, "unknown verification '" + a.name + "'");
  out << report_table(r);
  const std::string path = a.out.empty() ? "verify-" + a.name + ".json" : a.out;
  write_file_atomic(path, report_to_json(r).dump(2) + "\n");
  out << "wrote " << path << '\n';
  return r.all_pass() ? kOk : kVerifyFailed;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"innerdyn: entire maps, inner functions and their pairings"};
  app.set_config("--config", "", "Read flags from a TOML/INI file");
  app.require_subcommand(1);

  RenderArgs ra;
  auto* render = app.add_subcommand("render", "Rasterize basins, escape sets and preimages of a family");
  render->add_option("--family", ra.fam.family, "exp|sine|fatou|zexp|powerexp|alpha|rho|cstar")->capture_default_str();
  render->add_option("--lambda", ra.fam.lambda, "Parameter: x or re,im; 'auto' (rho only) uses lambda_0")->capture_default_str();
  render->add_option("--d", ra.fam.d, "Degree for alpha, rho, cstar")->capture_default_str();
  render->add_option("--q", ra.fam.q, "Exponent for powerexp")->capture_default_str();
  render->add_option("--window", ra.window, "re0:re1:im0:im1")->capture_default_str();
  render->add_option("--res", ra.res, "WIDTHxHEIGHT")->capture_default_str();
  render->add_option("--max-iter", ra.max_iter, "Iteration budget per pixel")->capture_default_str();
  render->add_option("--bailout", ra.bailout, "Escape radius")->capture_default_str();
  render->add_option("--attract-radius", ra.attract_radius, "Capture distance to the attractor")->capture_default_str();
  render->add_option("--attractor", ra.attractor, "auto | none | re,im")->capture_default_str();
  render->add_option("--preimage", ra.preimage, "none | re,im,radius: label f^{-1}(D)")->capture_default_str();
  render->add_option("--out", ra.out, "Output prefix (.pgm, .ppm, .csv)")->capture_default_str();
  render->add_option("--threads", ra.threads, "Worker threads, 0 = all cores")->capture_default_str();

  AtlasArgs aa;
  auto* atlas = app.add_subcommand("atlas", "Classify a tan z + b over a parameter window");
  atlas->add_option("--window", aa.window, "a0:a1:b0:b1")->capture_default_str();
  atlas->add_option("--res", aa.res, "NAxNB cells")->capture_default_str();
  atlas->add_option("--budget", aa.budget, "Iteration budget of the second classifier")->capture_default_str();
  atlas->add_option("--out", aa.out, "Output prefix (.ppm, .csv)")->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a pairing verification and print its table");
  verify->add_option("name", va.name, "exp|parabolic-tan|sine|fatou|topfer|lambda0|unisingular-forms")
      ->required()
      ->check(CLI::IsMember(verify_names()));
  verify->add_option("--tau", va.tau, "Multiplier for exp: x or re,im")->capture_default_str();
  verify->add_option("--lambda", va.lambda, "Parameter for sine (0.5) and fatou (1)")->capture_default_str();
  verify->add_option("--d", va.d, "Degree for lambda0")->capture_default_str();
  verify->add_flag("--no-raster", va.no_raster, "Skip the tract count row of the sine report");
  verify->add_option("--out", va.out, "JSON report path (default verify-NAME.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  try {
    if (render->parsed()) return cmd_render(ra, out);
    if (atlas->parsed()) return cmd_atlas(aa, out);
    return cmd_verify(va, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericError;
  }
}

}  // namespace innerdyn::cli
