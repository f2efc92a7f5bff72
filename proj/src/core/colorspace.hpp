#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "core/linalg.hpp"

namespace svdc {

// 8-bit RGB raster held as three real-valued planes (height x width) whose
// entries are integers in [0, 255].
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(std::size_t width, std::size_t height);
  // Throws dimension_mismatch / invalid_argument if the planes disagree in
  // shape or carry non-integer or out-of-range entries.
  RgbImage(Matrix r, Matrix g, Matrix b);

  static RgbImage from_interleaved(std::size_t width, std::size_t height, std::span<const std::uint8_t> rgb);
  std::vector<std::uint8_t> to_interleaved() const;

  std::size_t width() const noexcept { return r_.cols(); }
  std::size_t height() const noexcept { return r_.rows(); }

  const Matrix& r() const noexcept { return r_; }
  const Matrix& g() const noexcept { return g_; }
  const Matrix& b() const noexcept { return b_; }
  const Matrix& plane(std::size_t channel) const;

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  Matrix r_;
  Matrix g_;
  Matrix b_;
};

struct YcbcrPlanes {
  Matrix y;
  Matrix cb;
  Matrix cr;
};

// BT.601 full-range (JFIF) forward transform; results clamped to [0, 255].
YcbcrPlanes rgb_to_ycbcr(const RgbImage& img);

// Exact inverse of the forward matrix, then clamp and round half-up.
RgbImage ycbcr_to_rgb(const Matrix& y, const Matrix& cb, const Matrix& cr);

// Box mean over s x s blocks; ragged edge blocks average the pixels present.
Matrix downsample(const Matrix& plane, std::size_t s);

// Nearest-neighbour replication back to target_rows x target_cols.
Matrix upsample(const Matrix& plane, std::size_t target_rows, std::size_t target_cols, std::size_t s);

std::size_t subsampled_extent(std::size_t extent, std::size_t s) noexcept;

void clamp_to_byte_range(Matrix& plane) noexcept;

}  // namespace svdc
