#pragma once

// Images (binary PGM/PPM), CSV, JSON reports, family (de)serialization and atomic writes.

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "innerdyn/correspondence.hpp"
#include "innerdyn/entire.hpp"
#include "innerdyn/error.hpp"
#include "innerdyn/halfplane.hpp"
#include "innerdyn/raster.hpp"

namespace innerdyn {

/// Write to a sibling temporary, then rename over the target.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Images

using Rgb = std::array<std::uint8_t, 3>;

inline std::uint8_t label_gray(PixelLabel l) {
  switch (l) {
    case PixelLabel::Undecided: return 64;
    case PixelLabel::Basin: return 170;
    case PixelLabel::Escaping: return 0;
    case PixelLabel::InPreimage: return 230;
  }
  return 0;
}

inline Rgb label_color(PixelLabel l) {
  switch (l) {
    case PixelLabel::Undecided: return {200, 40, 40};
    case PixelLabel::Basin: return {150, 150, 150};
    case PixelLabel::Escaping: return {0, 0, 0};
    case PixelLabel::InPreimage: return {120, 170, 230};
  }
  return {0, 0, 0};
}

inline std::string encode_pgm(int width, int height, const std::vector<std::uint8_t>& gray) {
  if (gray.size() != static_cast<std::size_t>(width) * height) throw Error(ErrorCode::DomainError, "encode_pgm: size mismatch");
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(gray.data()), gray.size());
  return out;
}

inline std::string encode_ppm(int width, int height, const std::vector<Rgb>& rgb) {
  if (rgb.size() != static_cast<std::size_t>(width) * height) throw Error(ErrorCode::DomainError, "encode_ppm: size mismatch");
  std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.reserve(out.size() + 3 * rgb.size());
  for (const Rgb& c : rgb) out.append(reinterpret_cast<const char*>(c.data()), 3);
  return out;
}

inline std::string grid_to_pgm(const Grid& g) {
  std::vector<std::uint8_t> px;
  px.reserve(g.labels().size());
  for (PixelLabel l : g.labels()) px.push_back(label_gray(l));
  return encode_pgm(g.width(), g.height(), px);
}

inline std::string grid_to_ppm(const Grid& g) {
  std::vector<Rgb> px;
  px.reserve(g.labels().size());
  for (PixelLabel l : g.labels()) px.push_back(label_color(l));
  return encode_ppm(g.width(), g.height(), px);
}

struct DecodedImage {
  std::string magic;
  int width = 0;
  int height = 0;
  std::string data;
};

/// Reads the images this module writes (no comments in the header).
inline DecodedImage decode_pnm(const std::string& bytes) {
  std::istringstream in(bytes);
  DecodedImage img;
  int maxval = 0;
  in >> img.magic >> img.width >> img.height >> maxval;
  if (!in || (img.magic != "P5" && img.magic != "P6") || maxval != 255) throw Error(ErrorCode::DomainError, "decode_pnm: bad header");
  in.get();
  const std::size_t channels = img.magic == "P6" ? 3 : 1;
  img.data = bytes.substr(static_cast<std::size_t>(in.tellg()));
  if (img.data.size() != channels * static_cast<std::size_t>(img.width) * img.height) {
    throw Error(ErrorCode::DomainError, "decode_pnm: truncated pixel data");
  }
  return img;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string format_double(double x) {
  std::ostringstream ss;
  ss << std::setprecision(17) << x;
  return ss.str();
}

inline std::string component_stats_csv(const Grid& g) {
  std::ostringstream out;
  out << "label,pixels,components,unbounded,smallest,resolution_warning,unbounded_sizes\n";
  for (PixelLabel l : {PixelLabel::Basin, PixelLabel::Escaping, PixelLabel::InPreimage, PixelLabel::Undecided}) {
    const ComponentStats s = count_unbounded_components(g, l);
    out << to_string(l) << ',' << g.count(l) << ',' << s.total << ',' << s.unbounded << ',' << s.smallest << ','
        << (s.resolution_warning ? 1 : 0) << ',';
    for (std::size_t i = 0; i < s.unbounded_sizes.size(); ++i) out << (i ? ";" : "") << s.unbounded_sizes[i];
    out << '\n';
  }
  return out.str();
}

inline std::string atlas_csv(const std::vector<AtlasCell>& cells) {
  std::ostringstream out;
  out << "a,b,region_law,solver_class,iteration_class,multiplier_re,multiplier_im,boundary_distance,solver_failed\n";
  for (const AtlasCell& c : cells) {
    out << format_double(c.a) << ',' << format_double(c.b) << ',' << (c.region_law ? 1 : 0) << ',' << to_string(c.solver_class)
        << ',' << to_string(c.iteration_class) << ',' << format_double(c.multiplier.real()) << ','
        << format_double(c.multiplier.imag()) << ',' << format_double(c.boundary_distance) << ',' << (c.solver_failed ? 1 : 0)
        << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json complex_json(CPoint z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline nlohmann::json report_to_json(const PairingReport& r) {
  nlohmann::json j;
  j["family"] = r.family;
  j["inner"] = r.inner;
  j["all_pass"] = r.all_pass();
  j["rows"] = nlohmann::json::array();
  for (const PairingRow& row : r.rows) {
    j["rows"].push_back({{"name", row.name},
                         {"left", complex_json(row.left)},
                         {"right", complex_json(row.right)},
                         {"tolerance", row.tolerance},
                         {"pass", row.pass},
                         {"note", row.note}});
  }
  j["parameters"] = nlohmann::json::object();
  for (const auto& [k, v] : r.parameters) j["parameters"][k] = v;
  j["notes"] = r.notes;
  return j;
}

inline std::string report_table(const PairingReport& r) {
  std::ostringstream out;
  out << r.family << "  <->  " << r.inner << '\n';
  std::size_t w = 4;
  for (const auto& row : r.rows) w = std::max(w, row.name.size());
  auto num = [](CPoint z) {
    std::ostringstream s;
    s << std::setprecision(12) << z.real();
    if (z.imag() != 0.0) s << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return s.str();
  };
  for (const auto& row : r.rows) {
    out << (row.pass ? "PASS " : "FAIL ") << std::left << std::setw(static_cast<int>(w)) << row.name << "  " << num(row.left)
        << "  vs  " << num(row.right) << "  (tol " << row.tolerance << ")";
    if (!row.note.empty()) out << "  [" << row.note << "]";
    out << '\n';
  }
  for (const auto& n : r.notes) out << "note: " << n << '\n';
  return out.str();
}

inline nlohmann::json family_to_json(const EntireFamilyInstance& f) {
  return {{"tag", std::string(to_string(f.tag()))}, {"lambda", complex_json(f.lambda())}, {"d", f.d()}, {"q", f.q()}};
}

inline EntireFamilyInstance family_from_json(const nlohmann::json& j) {
  try {
    const FamilyTag tag = family_from_string(j.at("tag").get<std::string>());
    const auto& l = j.at("lambda");
    return EntireFamilyInstance(tag, CPoint(l.at(0).get<double>(), l.at(1).get<double>()), j.at("d").get<int>(),
                                j.at("q").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::DomainError, std::string("family_from_json: ") + e.what());
  }
}

}  // namespace innerdyn
