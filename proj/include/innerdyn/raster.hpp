#pragma once

// Escape/attraction rasters and frame-touching component counts.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

#include "innerdyn/error.hpp"
#include "innerdyn/numerics.hpp"

namespace innerdyn {

enum class PixelLabel : std::uint8_t { Undecided = 0, Basin = 1, Escaping = 2, InPreimage = 3 };

inline std::string_view to_string(PixelLabel l) {
  switch (l) {
    case PixelLabel::Undecided: return "undecided";
    case PixelLabel::Basin: return "basin";
    case PixelLabel::Escaping: return "escaping";
    case PixelLabel::InPreimage: return "in-preimage";
  }
  return "unknown";
}

inline constexpr std::size_t kMaxPixels = 100000000;

struct Disc {
  CPoint center;
  double radius = 0.0;
};

struct GridSpec {
  Rect window;
  int width = 0;
  int height = 0;

  void validate() const {
    if (!window.valid()) throw Error(ErrorCode::DomainError, "grid window is empty");
    if (width <= 0 || height <= 0) throw Error(ErrorCode::DomainError, "grid resolution must be positive");
    if (static_cast<std::size_t>(width) * static_cast<std::size_t>(height) > kMaxPixels) {
      throw Error(ErrorCode::DomainError, "grid exceeds 1e8 pixels");
    }
  }

  /// Pixel centre; row 0 is the top edge (largest imaginary part).
  CPoint pixel(int i, int j) const {
    const double x = window.re0 + (i + 0.5) * window.width() / width;
    const double y = window.im1 - (j + 0.5) * window.height() / height;
    return {x, y};
  }

  /// Same window scaled about its centre.
  GridSpec scaled_window(double factor) const { return {window.scaled(factor), width, height}; }
  GridSpec doubled_resolution() const { return {window, 2 * width, 2 * height}; }
};

struct RasterCriteria {
  std::optional<CPoint> attractor;  // label Basin when the orbit comes within attract_radius
  std::optional<Disc> preimage_of;  // label InPreimage when f(z) lies in this disc
  int max_iter = 256;
  double bailout = kBailout;
  double attract_radius = 1e-6;
};

/// Preimage membership is tested first, then attraction, then escape.
template <class F>
PixelLabel classify_point(const F& f, CPoint z, const RasterCriteria& c) {
  if (c.preimage_of) {
    const CPoint v = f(z);
    if (is_finite(v) && std::abs(v - c.preimage_of->center) < c.preimage_of->radius) return PixelLabel::InPreimage;
  }
  CPoint w = z;
  for (int n = 0; n <= c.max_iter; ++n) {
    if (c.attractor && std::abs(w - *c.attractor) < c.attract_radius) return PixelLabel::Basin;
    if (n == c.max_iter) break;
    w = f(w);
    if (!is_finite(w) || std::abs(w) > c.bailout) return PixelLabel::Escaping;
  }
  return PixelLabel::Undecided;
}

class Grid {
 public:
  Grid(GridSpec spec, std::vector<PixelLabel> labels) : spec_(spec), labels_(std::move(labels)) {
    if (labels_.size() != static_cast<std::size_t>(spec_.width) * spec_.height) {
      throw Error(ErrorCode::DomainError, "Grid: label count does not match resolution");
    }
  }

  const GridSpec& spec() const { return spec_; }
  int width() const { return spec_.width; }
  int height() const { return spec_.height; }
  PixelLabel at(int i, int j) const { return labels_[static_cast<std::size_t>(j) * spec_.width + i]; }
  const std::vector<PixelLabel>& labels() const { return labels_; }

  std::size_t count(PixelLabel l) const { return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), l)); }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.spec_.width == b.spec_.width && a.spec_.height == b.spec_.height && a.labels_ == b.labels_;
  }

 private:
  GridSpec spec_;
  std::vector<PixelLabel> labels_;
};

/// Rows are split across threads; each pixel is a pure function of its centre,
/// so the result does not depend on the thread count.
template <class F>
Grid classify_grid(const F& f, const GridSpec& spec, const RasterCriteria& criteria, unsigned threads = 0) {
  spec.validate();
  if (criteria.max_iter < 0 || !(criteria.attract_radius > 0.0) || !(criteria.bailout > 0.0)) {
    throw Error(ErrorCode::DomainError, "classify_grid: invalid criteria");
  }
  std::vector<PixelLabel> labels(static_cast<std::size_t>(spec.width) * spec.height, PixelLabel::Undecided);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(spec.height));
  auto work = [&](unsigned t) {
    for (int j = static_cast<int>(t); j < spec.height; j += static_cast<int>(threads)) {
      for (int i = 0; i < spec.width; ++i) {
        labels[static_cast<std::size_t>(j) * spec.width + i] = classify_point(f, spec.pixel(i, j), criteria);
      }
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return Grid(spec, std::move(labels));
}

inline constexpr std::size_t kSmallComponent = 10;

struct ComponentStats {
  std::size_t unbounded = 0;               // components touching the frame
  std::vector<std::size_t> unbounded_sizes;
  std::size_t total = 0;                   // all components of the label
  std::size_t smallest = 0;
  bool resolution_warning = false;         // some component has fewer than 10 pixels
};

/// 4-connected components of the pixels carrying the label. Frame contact
/// stands in for unboundedness.
inline ComponentStats count_unbounded_components(const Grid& g, PixelLabel label) {
  const int w = g.width();
  const int h = g.height();
  std::vector<std::int32_t> comp(static_cast<std::size_t>(w) * h, -1);
  ComponentStats s;
  s.smallest = std::numeric_limits<std::size_t>::max();
  std::vector<std::pair<int, int>> stack;
  std::int32_t next = 0;
  for (int j0 = 0; j0 < h; ++j0) {
    for (int i0 = 0; i0 < w; ++i0) {
      const std::size_t k0 = static_cast<std::size_t>(j0) * w + i0;
      if (comp[k0] >= 0 || g.at(i0, j0) != label) continue;
      std::size_t size = 0;
      bool frame = false;
      comp[k0] = next;
      stack.assign(1, {i0, j0});
      while (!stack.empty()) {
        const auto [i, j] = stack.back();
        stack.pop_back();
        ++size;
        if (i == 0 || j == 0 || i == w - 1 || j == h - 1) frame = true;
        const int di[] = {1, -1, 0, 0};
        const int dj[] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          const int ni = i + di[d];
          const int nj = j + dj[d];
          if (ni < 0 || nj < 0 || ni >= w || nj >= h) continue;
          const std::size_t nk = static_cast<std::size_t>(nj) * w + ni;
          if (comp[nk] >= 0 || g.at(ni, nj) != label) continue;
          comp[nk] = next;
          stack.push_back({ni, nj});
        }
      }
      ++next;
      ++s.total;
      s.smallest = std::min(s.smallest, size);
      if (size < kSmallComponent) s.resolution_warning = true;
      if (frame) {
        ++s.unbounded;
        s.unbounded_sizes.push_back(size);
      }
    }
  }
  if (s.total == 0) s.smallest = 0;
  return s;
}

/// Fraction of pixels whose label differs from the label at the mirrored pixel.
/// mirror_re: i -> w-1-i, mirror_im: j -> h-1-j.
inline double symmetry_mismatch(const Grid& g, bool mirror_re, bool mirror_im) {
  std::size_t bad = 0;
  for (int j = 0; j < g.height(); ++j) {
    for (int i = 0; i < g.width(); ++i) {
      const int mi = mirror_re ? g.width() - 1 - i : i;
      const int mj = mirror_im ? g.height() - 1 - j : j;
      bad += g.at(i, j) != g.at(mi, mj) ? 1 : 0;
    }
  }
  return static_cast<double>(bad) / (static_cast<double>(g.width()) * g.height());
}

}  // namespace innerdyn
