#include "core/codec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/metrics.hpp"

namespace svdc {

const char* scheme_name(Scheme s) noexcept {
  switch (s) {
    case Scheme::ycbcr_dual_rank: return "ycbcr";
    case Scheme::rgb_uniform_rank: return "rgb";
  }
  return "unknown";
}

std::array<std::size_t, 3> CompressedImage::plane_rows() const noexcept {
  const std::size_t chroma = scheme == Scheme::ycbcr_dual_rank ? subsampled_extent(height, subsample) : height;
  return {height, chroma, chroma};
}

std::array<std::size_t, 3> CompressedImage::plane_cols() const noexcept {
  const std::size_t chroma = scheme == Scheme::ycbcr_dual_rank ? subsampled_extent(width, subsample) : width;
  return {width, chroma, chroma};
}

std::array<std::size_t, 3> CompressedImage::plane_ranks() const noexcept {
  if (scheme != Scheme::ycbcr_dual_rank) return {k, k, k};
  // Chroma planes are smaller than luma; k' beyond their rank keeps them whole.
  const auto rows = plane_rows();
  const auto cols = plane_cols();
  const std::size_t chroma = std::min(k_prime, std::min(rows[1], cols[1]));
  return {k, chroma, chroma};
}

std::size_t CompressedImage::coefficient_count() const noexcept {
  std::size_t total = 0;
  for (const auto& p : planes) total += p.coefficient_count();
  return total;
}

void CompressedImage::validate() const {
  if (width == 0 || height == 0) throw Error(Errc::inconsistent_data, "image dimensions must be positive");
  if (scheme != Scheme::ycbcr_dual_rank && scheme != Scheme::rgb_uniform_rank)
    throw Error(Errc::inconsistent_data, "unknown scheme tag");
  if (subsample < 1) throw Error(Errc::inconsistent_data, "subsample factor must be at least 1");
  if (k_prime > k)
    throw Error(Errc::rank_order, "chroma rank k'=" + std::to_string(k_prime) + " exceeds luma rank k=" +
                                      std::to_string(k));
  if (k_prime < 1) throw Error(Errc::inconsistent_data, "ranks must be at least 1");
  if (scheme == Scheme::rgb_uniform_rank && (k_prime != k || subsample != 1))
    throw Error(Errc::inconsistent_data, "rgb scheme requires k'=k and subsample factor 1");

  const auto rows = plane_rows();
  const auto cols = plane_cols();
  const auto ranks = plane_ranks();
  for (std::size_t i = 0; i < 3; ++i) {
    if (ranks[i] > std::min(rows[i], cols[i]))
      throw Error(Errc::inconsistent_data, "plane " + std::to_string(i) + " rank exceeds its dimensions");
    const TruncatedPlane& p = planes[i];
    if (p.rows() != rows[i] || p.cols() != cols[i] || p.rank() != ranks[i])
      throw Error(Errc::inconsistent_data, "plane " + std::to_string(i) + " shape disagrees with header");
    p.validate();
  }
}

namespace {

void check_ranks(const RgbImage& img, std::size_t k, std::size_t k_prime) {
  const std::size_t limit = std::min(img.height(), img.width());
  if (img.width() == 0 || img.height() == 0) throw Error(Errc::invalid_argument, "image is empty");
  if (k < 1 || k > limit)
    throw Error(Errc::invalid_rank, "k=" + std::to_string(k) + " outside [1, " + std::to_string(limit) + "]");
  if (k_prime > k)
    throw Error(Errc::rank_order, "k'=" + std::to_string(k_prime) + " exceeds k=" + std::to_string(k));
  if (k_prime < 1) throw Error(Errc::invalid_rank, "k' must be at least 1");
}

}  // namespace

Encoder::Encoder(const RgbImage& img, Scheme scheme, const EncodeOptions& options)
    : width_(img.width()), height_(img.height()), scheme_(scheme), subsample_(options.subsample) {
  if (img.width() == 0 || img.height() == 0) throw Error(Errc::invalid_argument, "image is empty");
  if (options.subsample < 1) throw Error(Errc::invalid_argument, "subsample factor must be at least 1");
  if (scheme == Scheme::rgb_uniform_rank) {
    subsample_ = 1;
    for (std::size_t c = 0; c < 3; ++c) factors_[c] = svd(img.plane(c));
    return;
  }
  if (options.convert_colorspace) {
    YcbcrPlanes ycc = rgb_to_ycbcr(img);
    factors_[0] = svd(ycc.y);
    factors_[1] = svd(downsample(ycc.cb, subsample_));
    factors_[2] = svd(downsample(ycc.cr, subsample_));
  } else {
    factors_[0] = svd(img.r());
    factors_[1] = svd(downsample(img.g(), subsample_));
    factors_[2] = svd(downsample(img.b(), subsample_));
  }
}

CompressedImage Encoder::truncate(std::size_t k, std::size_t k_prime) const {
  CompressedImage c;
  c.width = width_;
  c.height = height_;
  c.scheme = scheme_;
  c.subsample = subsample_;
  if (scheme_ == Scheme::rgb_uniform_rank) {
    if (k < 1 || k > std::min(width_, height_))
      throw Error(Errc::invalid_rank, "k=" + std::to_string(k) + " outside [1, " +
                                          std::to_string(std::min(width_, height_)) + "]");
    k_prime = k;
  } else {
    const std::size_t limit = std::min(width_, height_);
    if (k < 1 || k > limit)
      throw Error(Errc::invalid_rank, "k=" + std::to_string(k) + " outside [1, " + std::to_string(limit) + "]");
    if (k_prime > k)
      throw Error(Errc::rank_order, "k'=" + std::to_string(k_prime) + " exceeds k=" + std::to_string(k));
    if (k_prime < 1) throw Error(Errc::invalid_rank, "k' must be at least 1");
  }
  c.k = k;
  c.k_prime = k_prime;
  const auto ranks = c.plane_ranks();
  for (std::size_t i = 0; i < 3; ++i) c.planes[i] = svdc::truncate(factors_[i], ranks[i]);
  return c;
}

CompressedImage compress(const RgbImage& img, std::size_t k, std::size_t k_prime, const EncodeOptions& options) {
  if (options.subsample < 1) throw Error(Errc::invalid_argument, "subsample factor must be at least 1");
  check_ranks(img, k, k_prime);
  return Encoder(img, Scheme::ycbcr_dual_rank, options).truncate(k, k_prime);
}

CompressedImage compress_rgb_baseline(const RgbImage& img, std::size_t k) {
  if (img.width() == 0 || img.height() == 0) throw Error(Errc::invalid_argument, "image is empty");
  const std::size_t limit = std::min(img.height(), img.width());
  if (k < 1 || k > limit)
    throw Error(Errc::invalid_rank, "k=" + std::to_string(k) + " outside [1, " + std::to_string(limit) + "]");
  CompressedImage c;
  c.width = img.width();
  c.height = img.height();
  c.scheme = Scheme::rgb_uniform_rank;
  c.k = k;
  c.k_prime = k;
  c.subsample = 1;
  for (std::size_t ch = 0; ch < 3; ++ch) c.planes[ch] = svdc::truncate(svd(img.plane(ch)), k);
  return c;
}

RgbImage decompress(const CompressedImage& c) {
  c.validate();
  std::array<Matrix, 3> planes;
  for (std::size_t i = 0; i < 3; ++i) {
    planes[i] = reconstruct(c.planes[i]);
    clamp_to_byte_range(planes[i]);
  }
  if (c.scheme == Scheme::rgb_uniform_rank) {
    for (auto& p : planes)
      for (double& x : p.entries()) x = std::floor(x + 0.5);
    return RgbImage(std::move(planes[0]), std::move(planes[1]), std::move(planes[2]));
  }
  const Matrix cb = upsample(planes[1], c.height, c.width, c.subsample);
  const Matrix cr = upsample(planes[2], c.height, c.width, c.subsample);
  return ycbcr_to_rgb(planes[0], cb, cr);
}

bool exceeds_break_even(const CompressedImage& c) noexcept {
  return static_cast<double>(c.k) >= k_seuil(c.height, c.width);
}

}  // namespace svdc
