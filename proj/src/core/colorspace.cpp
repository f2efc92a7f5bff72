#include "core/colorspace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace svdc {

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

constexpr Mat3 kForward = {{
    {0.299, 0.587, 0.114},
    {-0.168736, -0.331264, 0.5},
    {0.5, -0.418688, -0.081312},
}};
constexpr double kChromaOffset = 128.0;

constexpr Mat3 invert(const Mat3& m) {
  const double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  const double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  const double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
  Mat3 inv{};
  inv[0][0] = c00 / det;
  inv[1][0] = c01 / det;
  inv[2][0] = c02 / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return inv;
}

constexpr Mat3 kInverse = invert(kForward);

double clamp_byte(double x) noexcept { return std::clamp(x, 0.0, 255.0); }

void check_byte_plane(const Matrix& p) {
  for (double x : p.entries()) {
    if (!(x >= 0.0 && x <= 255.0) || x != std::floor(x))
      throw Error(Errc::invalid_argument, "rgb plane entries must be integers in [0, 255]");
  }
}

}  // namespace

RgbImage::RgbImage(std::size_t width, std::size_t height)
    : r_(height, width), g_(height, width), b_(height, width) {}

RgbImage::RgbImage(Matrix r, Matrix g, Matrix b) : r_(std::move(r)), g_(std::move(g)), b_(std::move(b)) {
  if (r_.rows() != g_.rows() || r_.rows() != b_.rows() || r_.cols() != g_.cols() || r_.cols() != b_.cols())
    throw Error(Errc::dimension_mismatch, "rgb planes must share dimensions");
  check_byte_plane(r_);
  check_byte_plane(g_);
  check_byte_plane(b_);
}

RgbImage RgbImage::from_interleaved(std::size_t width, std::size_t height, std::span<const std::uint8_t> rgb) {
  if (rgb.size() != width * height * 3)
    throw Error(Errc::dimension_mismatch, "interleaved buffer holds " + std::to_string(rgb.size()) +
                                              " bytes, expected " + std::to_string(width * height * 3));
  RgbImage img(width, height);
  auto r = img.r_.entries();
  auto g = img.g_.entries();
  auto b = img.b_.entries();
  for (std::size_t i = 0; i < width * height; ++i) {
    r[i] = rgb[3 * i];
    g[i] = rgb[3 * i + 1];
    b[i] = rgb[3 * i + 2];
  }
  return img;
}

std::vector<std::uint8_t> RgbImage::to_interleaved() const {
  const std::size_t n = width() * height();
  std::vector<std::uint8_t> out(n * 3);
  const auto r = r_.entries();
  const auto g = g_.entries();
  const auto b = b_.entries();
  for (std::size_t i = 0; i < n; ++i) {
    out[3 * i] = static_cast<std::uint8_t>(r[i]);
    out[3 * i + 1] = static_cast<std::uint8_t>(g[i]);
    out[3 * i + 2] = static_cast<std::uint8_t>(b[i]);
  }
  return out;
}

const Matrix& RgbImage::plane(std::size_t channel) const {
  switch (channel) {
    case 0: return r_;
    case 1: return g_;
    case 2: return b_;
    default: throw Error(Errc::invalid_argument, "channel index out of range");
  }
}

YcbcrPlanes rgb_to_ycbcr(const RgbImage& img) {
  const std::size_t rows = img.height();
  const std::size_t cols = img.width();
  YcbcrPlanes out{Matrix(rows, cols), Matrix(rows, cols), Matrix(rows, cols)};
  const auto r = img.r().entries();
  const auto g = img.g().entries();
  const auto b = img.b().entries();
  auto y = out.y.entries();
  auto cb = out.cb.entries();
  auto cr = out.cr.entries();
  for (std::size_t i = 0; i < r.size(); ++i) {
    y[i] = clamp_byte(kForward[0][0] * r[i] + kForward[0][1] * g[i] + kForward[0][2] * b[i]);
    cb[i] = clamp_byte(kForward[1][0] * r[i] + kForward[1][1] * g[i] + kForward[1][2] * b[i] + kChromaOffset);
    cr[i] = clamp_byte(kForward[2][0] * r[i] + kForward[2][1] * g[i] + kForward[2][2] * b[i] + kChromaOffset);
  }
  return out;
}

RgbImage ycbcr_to_rgb(const Matrix& y, const Matrix& cb, const Matrix& cr) {
  if (y.rows() != cb.rows() || y.rows() != cr.rows() || y.cols() != cb.cols() || y.cols() != cr.cols())
    throw Error(Errc::dimension_mismatch, "luma and chroma planes must share dimensions");
  Matrix r(y.rows(), y.cols());
  Matrix g(y.rows(), y.cols());
  Matrix b(y.rows(), y.cols());
  const auto ys = y.entries();
  const auto cbs = cb.entries();
  const auto crs = cr.entries();
  auto rs = r.entries();
  auto gs = g.entries();
  auto bs = b.entries();
  const auto to_byte = [](double x) { return std::floor(clamp_byte(x) + 0.5); };
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double l = ys[i];
    const double u = cbs[i] - kChromaOffset;
    const double v = crs[i] - kChromaOffset;
    rs[i] = to_byte(kInverse[0][0] * l + kInverse[0][1] * u + kInverse[0][2] * v);
    gs[i] = to_byte(kInverse[1][0] * l + kInverse[1][1] * u + kInverse[1][2] * v);
    bs[i] = to_byte(kInverse[2][0] * l + kInverse[2][1] * u + kInverse[2][2] * v);
  }
  return RgbImage(std::move(r), std::move(g), std::move(b));
}

std::size_t subsampled_extent(std::size_t extent, std::size_t s) noexcept { return (extent + s - 1) / s; }

Matrix downsample(const Matrix& plane, std::size_t s) {
  if (s < 1) throw Error(Errc::invalid_argument, "subsample factor must be at least 1");
  if (s == 1) return plane;
  const std::size_t out_rows = subsampled_extent(plane.rows(), s);
  const std::size_t out_cols = subsampled_extent(plane.cols(), s);
  Matrix out(out_rows, out_cols);
  for (std::size_t br = 0; br < out_rows; ++br) {
    const std::size_t r_end = std::min(plane.rows(), (br + 1) * s);
    for (std::size_t bc = 0; bc < out_cols; ++bc) {
      const std::size_t c_end = std::min(plane.cols(), (bc + 1) * s);
      double sum = 0.0;
      for (std::size_t r = br * s; r < r_end; ++r)
        for (std::size_t c = bc * s; c < c_end; ++c) sum += plane(r, c);
      out(br, bc) = sum / static_cast<double>((r_end - br * s) * (c_end - bc * s));
    }
  }
  return out;
}

Matrix upsample(const Matrix& plane, std::size_t target_rows, std::size_t target_cols, std::size_t s) {
  if (s < 1) throw Error(Errc::invalid_argument, "subsample factor must be at least 1");
  if (plane.rows() != subsampled_extent(target_rows, s) || plane.cols() != subsampled_extent(target_cols, s))
    throw Error(Errc::dimension_mismatch, "plane " + std::to_string(plane.rows()) + "x" +
                                              std::to_string(plane.cols()) + " cannot upsample to " +
                                              std::to_string(target_rows) + "x" + std::to_string(target_cols));
  Matrix out(target_rows, target_cols);
  for (std::size_t r = 0; r < target_rows; ++r)
    for (std::size_t c = 0; c < target_cols; ++c) out(r, c) = plane(r / s, c / s);
  return out;
}

void clamp_to_byte_range(Matrix& plane) noexcept {
  for (double& x : plane.entries()) x = clamp_byte(x);
}

}  // namespace svdc
