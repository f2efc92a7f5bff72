#pragma once

#include <cstddef>

#include "core/codec.hpp"
#include "core/colorspace.hpp"

namespace svdc {

// Mean squared error pooled over all 3 m n samples.
double eqm(const RgbImage& original, const RgbImage& restored);

enum class PeakMode {
  image_max,  // Max over the original's entries
  fixed_255,
};

struct Psnr {
  double db = 0.0;         // +inf when identical
  bool identical = false;  // EQM == 0
};

Psnr psnr(const RgbImage& original, const RgbImage& restored, PeakMode peak = PeakMode::image_max);

// Sum restored^2 / sum original^2 over all three channels.
double energy_ratio(const RgbImage& original, const RgbImage& restored);

double ratio_rgb(std::size_t m, std::size_t n, std::size_t k) noexcept;
double ratio_ycbcr(std::size_t m, std::size_t n, std::size_t k, std::size_t k_prime) noexcept;
double k_seuil(std::size_t m, std::size_t n) noexcept;

// 3 m n raw samples over the stored coefficient count of c.
double coefficient_ratio(const CompressedImage& c) noexcept;

struct QualityReport {
  Psnr psnr;
  double eqm = 0.0;
  double energy_ratio = 0.0;
  double ratio_g = 0.0;
  std::size_t k = 0;
  std::size_t k_prime = 0;
  Scheme scheme = Scheme::ycbcr_dual_rank;
};

QualityReport assess(const RgbImage& original, const RgbImage& restored, const CompressedImage& c,
                     PeakMode peak = PeakMode::image_max);

struct SpeedMeasurement {
  double ratio = 0.0;
  double baseline_ms = 0.0;  // median
  double proposed_ms = 0.0;  // median
};

// Median baseline encode time over median proposed encode time. One untimed
// warm-up per path, then `trials` timed runs of each, strictly sequential.
// subsample = 1 with k_prime = k makes both paths do equal work.
SpeedMeasurement speed_ratio(const RgbImage& img, std::size_t k, std::size_t k_prime, std::size_t trials,
                             std::size_t subsample = kDefaultSubsample);

}  // namespace svdc
