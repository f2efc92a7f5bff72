#include "core/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace svdc {

namespace {

void check_same_shape(const RgbImage& a, const RgbImage& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw Error(Errc::dimension_mismatch, "images differ in size: " + std::to_string(a.width()) + "x" +
                                              std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                                              "x" + std::to_string(b.height()));
  if (a.width() == 0 || a.height() == 0) throw Error(Errc::invalid_argument, "images are empty");
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

template <typename F>
double time_ms(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

double eqm(const RgbImage& original, const RgbImage& restored) {
  check_same_shape(original, restored);
  double sum = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    const auto a = original.plane(c).entries();
    const auto b = restored.plane(c).entries();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      sum += d * d;
    }
  }
  return sum / (3.0 * static_cast<double>(original.width() * original.height()));
}

Psnr psnr(const RgbImage& original, const RgbImage& restored, PeakMode peak) {
  const double mse = eqm(original, restored);
  if (mse == 0.0) return {std::numeric_limits<double>::infinity(), true};
  double max_value = 255.0;
  if (peak == PeakMode::image_max) {
    max_value = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
      const auto e = original.plane(c).entries();
      max_value = std::max(max_value, *std::max_element(e.begin(), e.end()));
    }
    if (max_value == 0.0)
      throw Error(Errc::undefined_value, "psnr undefined: original image peak is zero (use the 255 peak)");
  }
  return {10.0 * std::log10(max_value * max_value / mse), false};
}

double energy_ratio(const RgbImage& original, const RgbImage& restored) {
  check_same_shape(original, restored);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    num += frobenius_energy(restored.plane(c));
    den += frobenius_energy(original.plane(c));
  }
  if (den == 0.0) throw Error(Errc::undefined_value, "energy ratio undefined for an all-zero original");
  return num / den;
}

double ratio_rgb(std::size_t m, std::size_t n, std::size_t k) noexcept {
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  return md * nd / (static_cast<double>(k) * (md + nd + 1.0));
}

double ratio_ycbcr(std::size_t m, std::size_t n, std::size_t k, std::size_t k_prime) noexcept {
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  return 3.0 * md * nd /
         (static_cast<double>(k) * (md + nd + 1.0) + static_cast<double>(k_prime) * (md + nd + 2.0));
}

double k_seuil(std::size_t m, std::size_t n) noexcept {
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  return md * nd / (md + nd + 1.0);
}

double coefficient_ratio(const CompressedImage& c) noexcept {
  return 3.0 * static_cast<double>(c.width * c.height) / static_cast<double>(c.coefficient_count());
}

QualityReport assess(const RgbImage& original, const RgbImage& restored, const CompressedImage& c, PeakMode peak) {
  QualityReport r;
  r.eqm = eqm(original, restored);
  r.psnr = psnr(original, restored, peak);
  r.energy_ratio = energy_ratio(original, restored);
  r.ratio_g = coefficient_ratio(c);
  r.k = c.k;
  r.k_prime = c.k_prime;
  r.scheme = c.scheme;
  return r;
}

SpeedMeasurement speed_ratio(const RgbImage& img, std::size_t k, std::size_t k_prime, std::size_t trials,
                             std::size_t subsample) {
  if (trials < 3) throw Error(Errc::invalid_argument, "speed ratio needs at least 3 trials");
  const EncodeOptions options{subsample, true};

  // Warm-up, also validates the ranks before any timing.
  (void)compress(img, k, k_prime, options);
  (void)compress_rgb_baseline(img, k);

  std::vector<double> baseline;
  std::vector<double> proposed;
  for (std::size_t t = 0; t < trials; ++t) {
    baseline.push_back(time_ms([&] { (void)compress_rgb_baseline(img, k); }));
    proposed.push_back(time_ms([&] { (void)compress(img, k, k_prime, options); }));
  }
  SpeedMeasurement m;
  m.baseline_ms = median(baseline);
  m.proposed_ms = median(proposed);
  if (m.proposed_ms < 1.0 || m.baseline_ms < 1.0)
    throw Error(Errc::unreliable_timing, "encode finished in under 1 ms; timing is unreliable");
  m.ratio = m.baseline_ms / m.proposed_ms;
  return m;
}

}  // namespace svdc
