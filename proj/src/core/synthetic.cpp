#include "core/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "core/error.hpp"

namespace svdc::synthetic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// mt19937_64 output is fully specified by the standard; distributions are
// not, so uniform draws are derived from the raw bits here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

double to_byte(double x) { return std::floor(std::clamp(x, 0.0, 255.0) + 0.5); }

RgbImage from_function(std::size_t width, std::size_t height, auto&& pixel) {
  Matrix r(height, width);
  Matrix g(height, width);
  Matrix b(height, width);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const auto [rv, gv, bv] = pixel(x, y);
      r(y, x) = to_byte(rv);
      g(y, x) = to_byte(gv);
      b(y, x) = to_byte(bv);
    }
  }
  return RgbImage(std::move(r), std::move(g), std::move(b));
}

struct Rgb {
  double r, g, b;
};

RgbImage smooth_gradient(std::size_t w, std::size_t h) {
  const double wd = static_cast<double>(w);
  const double hd = static_cast<double>(h);
  return from_function(w, h, [&](std::size_t x, std::size_t y) {
    const double u = (static_cast<double>(x) + 0.5) / wd;
    const double v = (static_cast<double>(y) + 0.5) / hd;
    const double dx = u - 0.35;
    const double dy = v - 0.4;
    const double glow = std::exp(-(dx * dx + dy * dy) / 0.08);
    return Rgb{40.0 + 170.0 * u + 30.0 * std::sin(kTwoPi * v) + 15.0 * glow,
               60.0 + 120.0 * v + 35.0 * std::cos(std::numbers::pi * u) * std::sin(std::numbers::pi * v),
               210.0 - 140.0 * 0.5 * (u + v) + 30.0 * glow};
  });
}

RgbImage noise_texture(std::size_t w, std::size_t h) {
  Rng rng(0x5eed'7e47'0001ULL);
  const double wd = static_cast<double>(w);
  const double hd = static_cast<double>(h);
  return from_function(w, h, [&](std::size_t x, std::size_t y) {
    const double u = static_cast<double>(x) / wd;
    const double v = static_cast<double>(y) / hd;
    const double xf = static_cast<double>(x);
    const double yf = static_cast<double>(y);
    const double base = 40.0 * std::sin(kTwoPi * 3.0 * u) * std::cos(kTwoPi * 2.0 * v);
    const double grating = 22.0 * std::sin(kTwoPi * (0.11 * xf + 0.07 * yf)) +
                           14.0 * std::sin(kTwoPi * (0.23 * xf - 0.19 * yf));
    const double nr = rng.uniform(-32.0, 32.0);
    const double ng = rng.uniform(-32.0, 32.0);
    const double nb = rng.uniform(-32.0, 32.0);
    return Rgb{150.0 + base + grating + nr, 120.0 + 0.6 * base - 0.5 * grating + ng,
               100.0 - 0.4 * base + 0.8 * grating + nb};
  });
}

RgbImage piecewise_flat(std::size_t w, std::size_t h) {
  Rng rng(0x5eed'f1a7'0002ULL);
  const double wd = static_cast<double>(w);
  const double hd = static_cast<double>(h);
  Matrix r(h, w, 70.0);
  Matrix g(h, w, 110.0);
  Matrix b(h, w, 160.0);
  const auto paint = [&](std::size_t y, std::size_t x, const Rgb& c) {
    r(y, x) = c.r;
    g(y, x) = c.g;
    b(y, x) = c.b;
  };
  const auto color = [&] {
    return Rgb{std::floor(rng.uniform(0.0, 256.0)), std::floor(rng.uniform(0.0, 256.0)),
               std::floor(rng.uniform(0.0, 256.0))};
  };
  for (int i = 0; i < 24; ++i) {
    const double x0 = rng.uniform(0.0, 0.85) * wd;
    const double y0 = rng.uniform(0.0, 0.85) * hd;
    const double x1 = std::min(wd, x0 + rng.uniform(0.05, 0.35) * wd);
    const double y1 = std::min(hd, y0 + rng.uniform(0.05, 0.35) * hd);
    const Rgb c = color();
    for (auto y = static_cast<std::size_t>(y0); y < static_cast<std::size_t>(y1); ++y)
      for (auto x = static_cast<std::size_t>(x0); x < static_cast<std::size_t>(x1); ++x) paint(y, x, c);
  }
  for (int i = 0; i < 16; ++i) {
    const double cx = rng.uniform(0.0, 1.0) * wd;
    const double cy = rng.uniform(0.0, 1.0) * hd;
    const double radius = rng.uniform(0.03, 0.15) * std::min(wd, hd);
    const Rgb c = color();
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) {
        const double dx = static_cast<double>(x) + 0.5 - cx;
        const double dy = static_cast<double>(y) + 0.5 - cy;
        if (dx * dx + dy * dy <= radius * radius) paint(y, x, c);
      }
    }
  }
  return RgbImage(std::move(r), std::move(g), std::move(b));
}

}  // namespace

std::string_view kind_name(Kind kind) noexcept {
  switch (kind) {
    case Kind::smooth_gradient: return "gradient";
    case Kind::noise_texture: return "texture";
    case Kind::piecewise_flat: return "shapes";
  }
  return "unknown";
}

std::optional<Kind> parse_kind(std::string_view name) noexcept {
  for (Kind k : kAllKinds)
    if (kind_name(k) == name) return k;
  return std::nullopt;
}

RgbImage generate(Kind kind, std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) throw Error(Errc::invalid_argument, "synthetic image must be non-empty");
  switch (kind) {
    case Kind::smooth_gradient: return smooth_gradient(width, height);
    case Kind::noise_texture: return noise_texture(width, height);
    case Kind::piecewise_flat: return piecewise_flat(width, height);
  }
  throw Error(Errc::invalid_argument, "unknown synthetic image kind");
}

}  // namespace svdc::synthetic
