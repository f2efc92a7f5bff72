#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "core/colorspace.hpp"
#include "core/linalg.hpp"

namespace svdc {

enum class Scheme : std::uint8_t {
  ycbcr_dual_rank = 0,   // Y at rank k, subsampled Cb/Cr at rank k'
  rgb_uniform_rank = 1,  // R, G, B each at rank k, full resolution
};

const char* scheme_name(Scheme s) noexcept;

inline constexpr std::size_t kDefaultSubsample = 2;

struct CompressedImage {
  std::size_t width = 0;
  std::size_t height = 0;
  Scheme scheme = Scheme::ycbcr_dual_rank;
  std::size_t k = 0;
  std::size_t k_prime = 0;  // equals k for the rgb scheme; capped per plane by the chroma rank
  std::size_t subsample = kDefaultSubsample;  // 1 for the rgb scheme
  std::array<TruncatedPlane, 3> planes;       // Y, Cb, Cr or R, G, B

  // Rows/cols each plane must have according to the header fields.
  std::array<std::size_t, 3> plane_rows() const noexcept;
  std::array<std::size_t, 3> plane_cols() const noexcept;
  std::array<std::size_t, 3> plane_ranks() const noexcept;

  // Sum over planes of k_p (m_p + n_p + 1).
  std::size_t coefficient_count() const noexcept;

  // Throws rank_order when k' > k, inconsistent_data for any other
  // header/plane disagreement.
  void validate() const;
};

struct EncodeOptions {
  std::size_t subsample = kDefaultSubsample;
  // Off: the three planes are R, G, B (still subsampled on planes 2 and 3).
  // Only used for cross-checking against the baseline path.
  bool convert_colorspace = true;
};

// Full factorizations of the three prepared planes of one image. Truncating
// at several (k, k') pairs reuses the same factors.
class Encoder {
 public:
  Encoder(const RgbImage& img, Scheme scheme, const EncodeOptions& options = {});

  CompressedImage truncate(std::size_t k, std::size_t k_prime) const;

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  Scheme scheme() const noexcept { return scheme_; }
  std::size_t subsample() const noexcept { return subsample_; }
  const std::array<SvdFactorization, 3>& factors() const noexcept { return factors_; }

 private:
  std::size_t width_;
  std::size_t height_;
  Scheme scheme_;
  std::size_t subsample_;
  std::array<SvdFactorization, 3> factors_;
};

// RGB -> YCbCr, chroma box-downsampled by options.subsample, planes factored
// in Y, Cb, Cr order and truncated at k (luma) and k_prime (chroma).
CompressedImage compress(const RgbImage& img, std::size_t k, std::size_t k_prime, const EncodeOptions& options = {});

// Independent per-channel SVD-k of R, G and B.
CompressedImage compress_rgb_baseline(const RgbImage& img, std::size_t k);

RgbImage decompress(const CompressedImage& c);

// True when k is at or above the break-even rank m n / (m + n + 1).
bool exceeds_break_even(const CompressedImage& c) noexcept;

}  // namespace svdc
