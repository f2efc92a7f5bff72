// extern "C" surface over the C++ core. Each entry point translates
// exceptions into svdc_status codes and records the message per thread.

#include "svdc/svdc.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <utility>

#include "core/codec.hpp"
#include "core/container.hpp"
#include "core/error.hpp"
#include "core/metrics.hpp"
#include "core/ppm.hpp"
#include "core/synthetic.hpp"

struct svdc_image {
  svdc::RgbImage value;
};

struct svdc_compressed {
  svdc::CompressedImage value;
};

struct svdc_encoder {
  svdc::Encoder value;
};

namespace {

thread_local std::string g_last_error;

svdc_status to_status(svdc::Errc code) noexcept {
  using svdc::Errc;
  switch (code) {
    case Errc::invalid_argument: return SVDC_ERR_INVALID_ARGUMENT;
    case Errc::invalid_rank: return SVDC_ERR_INVALID_RANK;
    case Errc::rank_order: return SVDC_ERR_RANK_ORDER;
    case Errc::dimension_mismatch: return SVDC_ERR_DIMENSION_MISMATCH;
    case Errc::no_convergence: return SVDC_ERR_NO_CONVERGENCE;
    case Errc::undefined_value: return SVDC_ERR_UNDEFINED;
    case Errc::unreliable_timing: return SVDC_ERR_UNRELIABLE_TIMING;
    case Errc::io: return SVDC_ERR_IO;
    case Errc::unsupported_format: return SVDC_ERR_UNSUPPORTED_FORMAT;
    case Errc::bad_magic: return SVDC_ERR_BAD_MAGIC;
    case Errc::unsupported_version: return SVDC_ERR_UNSUPPORTED_VERSION;
    case Errc::inconsistent_data: return SVDC_ERR_INCONSISTENT;
    case Errc::short_read: return SVDC_ERR_SHORT_READ;
    case Errc::trailing_data: return SVDC_ERR_TRAILING_DATA;
  }
  return SVDC_ERR_INTERNAL;
}

svdc_status fail(svdc_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
svdc_status guarded(F&& body) noexcept {
  try {
    g_last_error.clear();
    return body();
  } catch (const svdc::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SVDC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SVDC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SVDC_ERR_INTERNAL, "unknown failure");
  }
}

#define SVDC_REQUIRE(cond)                                                       \
  do {                                                                           \
    if (!(cond)) return fail(SVDC_ERR_INVALID_ARGUMENT, "null or invalid argument: " #cond); \
  } while (0)

svdc_status publish(svdc::CompressedImage c, svdc_compressed** out) {
  const bool warn = svdc::exceeds_break_even(c);
  *out = new svdc_compressed{std::move(c)};
  if (warn) {
    g_last_error = "k is at or above the break-even rank m n / (m + n + 1); the encoding does not compress";
    return SVDC_WARN_BREAK_EVEN;
  }
  return SVDC_OK;
}

svdc::PeakMode to_peak(svdc_peak peak) {
  switch (peak) {
    case SVDC_PEAK_IMAGE_MAX: return svdc::PeakMode::image_max;
    case SVDC_PEAK_255: return svdc::PeakMode::fixed_255;
  }
  throw svdc::Error(svdc::Errc::invalid_argument, "unknown peak mode");
}

}  // namespace

extern "C" {

SVDC_API const char* svdc_version(void) { return "1.0.0"; }

SVDC_API const char* svdc_status_name(svdc_status status) {
  switch (status) {
    case SVDC_OK: return "ok";
    case SVDC_WARN_BREAK_EVEN: return "warning: k at or above break-even rank";
    case SVDC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SVDC_ERR_INVALID_RANK: return "invalid rank";
    case SVDC_ERR_RANK_ORDER: return "rank ordering (k' > k)";
    case SVDC_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case SVDC_ERR_NO_CONVERGENCE: return "svd did not converge";
    case SVDC_ERR_UNDEFINED: return "undefined value";
    case SVDC_ERR_UNRELIABLE_TIMING: return "unreliable timing";
    case SVDC_ERR_IO: return "i/o error";
    case SVDC_ERR_UNSUPPORTED_FORMAT: return "unsupported format";
    case SVDC_ERR_BAD_MAGIC: return "bad magic";
    case SVDC_ERR_UNSUPPORTED_VERSION: return "unsupported version";
    case SVDC_ERR_INCONSISTENT: return "inconsistent data";
    case SVDC_ERR_SHORT_READ: return "short read";
    case SVDC_ERR_TRAILING_DATA: return "trailing data";
    case SVDC_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case SVDC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

SVDC_API const char* svdc_last_error_message(void) { return g_last_error.c_str(); }

SVDC_API svdc_status svdc_image_from_rgb(uint32_t width, uint32_t height, const uint8_t* rgb, size_t len,
                                         svdc_image** out) {
  return guarded([&] {
    SVDC_REQUIRE(rgb != nullptr && out != nullptr && width > 0 && height > 0);
    *out = new svdc_image{svdc::RgbImage::from_interleaved(width, height, {rgb, len})};
    return SVDC_OK;
  });
}

SVDC_API svdc_status svdc_image_read_ppm(const char* path, svdc_image** out) {
  return guarded([&] {
    SVDC_REQUIRE(path != nullptr && out != nullptr);
    *out = new svdc_image{svdc::ppm::read(path)};
    return SVDC_OK;
  });
}

SVDC_API svdc_status svdc_image_write_ppm(const svdc_image* img, const char* path) {
  return guarded([&] {
    SVDC_REQUIRE(img != nullptr && path != nullptr);
    svdc::ppm::write(img->value, path);
    return SVDC_OK;
  });
}

SVDC_API svdc_status svdc_image_synthetic(svdc_standin kind, uint32_t width, uint32_t height, svdc_image** out) {
  return guarded([&] {
    SVDC_REQUIRE(out != nullptr);
    svdc::synthetic::Kind k{};
    switch (kind) {
      case SVDC_STANDIN_GRADIENT: k = svdc::synthetic::Kind::smooth_gradient; break;
      case SVDC_STANDIN_TEXTURE: k = svdc::synthetic::Kind::noise_texture; break;
      case SVDC_STANDIN_SHAPES: k = svdc::synthetic::Kind::piecewise_flat; break;
      default: return fail(SVDC_ERR_INVALID_ARGUMENT, "unknown stand-in kind");
    }
    *out = new svdc_image{svdc::synthetic::generate(k, width, height)};
    return SVDC_OK;
  });
}

SVDC_API uint32_t svdc_image_width(const svdc_image* img) {
  return img ? static_cast<uint32_t>(img->value.width()) : 0;
}

SVDC_API uint32_t svdc_image_height(const svdc_image* img) {
  return img ? static_cast<uint32_t>(img->value.height()) : 0;
}

SVDC_API svdc_status svdc_image_copy_rgb(const svdc_image* img, uint8_t* dst, size_t len) {
  return guarded([&] {
    SVDC_REQUIRE(img != nullptr && dst != nullptr);
    const auto bytes = img->value.to_interleaved();
    if (len < bytes.size())
      return fail(SVDC_ERR_BUFFER_TOO_SMALL, "destination holds " + std::to_string(len) + " bytes, need " +
                                                 std::to_string(bytes.size()));
    std::memcpy(dst, bytes.data(), bytes.size());
    return SVDC_OK;
  });
}

SVDC_API void svdc_image_destroy(svdc_image* img) { delete img; }

SVDC_API svdc_status svdc_compress(const svdc_image* img, uint32_t k, uint32_t k_prime, uint32_t subsample,
                                   svdc_compressed** out) {
  return guarded([&] {
    SVDC_REQUIRE(img != nullptr && out != nullptr);
    return publish(svdc::compress(img->value, k, k_prime, {subsample, true}), out);
  });
}

SVDC_API svdc_status svdc_compress_rgb_baseline(const svdc_image* img, uint32_t k, svdc_compressed** out) {
  return guarded([&] {
    SVDC_REQUIRE(img != nullptr && out != nullptr);
    return publish(svdc::compress_rgb_baseline(img->value, k), out);
  });
}

SVDC_API svdc_status svdc_decompress(const svdc_compressed* c, svdc_image** out) {
  return guarded([&] {
    SVDC_REQUIRE(c != nullptr && out != nullptr);
    *out = new svdc_image{svdc::decompress(c->value)};
    return SVDC_OK;
  });
}

SVDC_API svdc_status svdc_compressed_info(const svdc_compressed* c, svdc_info* out) {
  return guarded([&] {
    SVDC_REQUIRE(c != nullptr && out != nullptr);
    const auto& v = c->value;
    svdc_info info{};
    info.width = static_cast<uint32_t>(v.width);
    info.height = static_cast<uint32_t>(v.height);
    info.scheme = v.scheme == svdc::Scheme::rgb_uniform_rank ? SVDC_SCHEME_RGB : SVDC_SCHEME_YCBCR;
    info.k = static_cast<uint32_t>(v.k);
    info.k_prime = static_cast<uint32_t>(v.k_prime);
    info.subsample = static_cast<uint32_t>(v.subsample);
    info.coefficient_count = v.coefficient_count();
    info.coefficient_ratio = svdc::coefficient_ratio(v);
    info.serialized_size = svdc::container::serialized_size(v);
    info.byte_ratio = 3.0 * static_cast<double>(v.width * v.height) / static_cast<double>(info.serialized_size);
    info.exceeds_break_even = svdc::exceeds_break_even(v) ? 1 : 0;
    *out = info;
    return SVDC_OK;
  });
}

SVDC_API void svdc_compressed_destroy(svdc_compressed* c) { delete c; }

SVDC_API svdc_status svdc_encoder_create(const svdc_image* img, svdc_scheme scheme, uint32_t subsample,
                                         svdc_encoder** out) {
  return guarded([&] {
    SVDC_REQUIRE(img != nullptr && out != nullptr);
    if (scheme != SVDC_SCHEME_YCBCR && scheme != SVDC_SCHEME_RGB)
      return fail(SVDC_ERR_INVALID_ARGUMENT, "unknown scheme");
    const auto s = scheme == SVDC_SCHEME_RGB ? svdc::Scheme::rgb_uniform_rank : svdc::Scheme::ycbcr_dual_rank;
    *out = new svdc_encoder{svdc::Encoder(img->value, s, {scheme == SVDC_SCHEME_RGB ? 1u : subsample, true})};
    return SVDC_OK;
  });
}

SVDC_API svdc_status svdc_encoder_truncate(const svdc_encoder* enc, uint32_t k, uint32_t k_prime,
                                           svdc_compressed** out) {
  return guarded([&] {
    SVDC_REQUIRE(enc != nullptr && out != nullptr);
    return publish(enc->value.truncate(k, k_prime), out);
  });
}

SVDC_API void svdc_encoder_destroy(svdc_encoder* enc) { delete enc; }

SVDC_API svdc_status svdc_serialize(const svdc_compressed* c, uint8_t* buf, size_t cap, size_t* size) {
  return guarded([&] {
    SVDC_REQUIRE(c != nullptr && size != nullptr);
    const std::size_t need = svdc::container::serialized_size(c->value);
    *size = need;
    if (buf == nullptr) return SVDC_OK;
    if (cap < need)
      return fail(SVDC_ERR_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(cap) + " bytes, need " +
                                                 std::to_string(need));
    const auto bytes = svdc::container::serialize(c->value);
    std::memcpy(buf, bytes.data(), bytes.size());
    return SVDC_OK;
  });
}

SVDC_API svdc_status svdc_deserialize(const uint8_t* bytes, size_t len, svdc_compressed** out) {
  return guarded([&] {
    SVDC_REQUIRE(out != nullptr && (bytes != nullptr || len == 0));
    *out = new svdc_compressed{svdc::container::deserialize({bytes, len})};
    return SVDC_OK;
  });
}

SVDC_API svdc_status svdc_write_file(const svdc_compressed* c, const char* path) {
  return guarded([&] {
    SVDC_REQUIRE(c != nullptr && path != nullptr);
    svdc::container::write_file(c->value, path);
    return SVDC_OK;
  });
}

SVDC_API svdc_status svdc_read_file(const char* path, svdc_compressed** out) {
  return guarded([&] {
    SVDC_REQUIRE(path != nullptr && out != nullptr);
    *out = new svdc_compressed{svdc::container::read_file(path)};
    return SVDC_OK;
  });
}

SVDC_API svdc_status svdc_eqm(const svdc_image* original, const svdc_image* restored, double* out) {
  return guarded([&] {
    SVDC_REQUIRE(original != nullptr && restored != nullptr && out != nullptr);
    *out = svdc::eqm(original->value, restored->value);
    return SVDC_OK;
  });
}

SVDC_API svdc_status svdc_psnr(const svdc_image* original, const svdc_image* restored, svdc_peak peak,
                               double* db, int* identical) {
  return guarded([&] {
    SVDC_REQUIRE(original != nullptr && restored != nullptr && db != nullptr);
    const svdc::Psnr p = svdc::psnr(original->value, restored->value, to_peak(peak));
    *db = p.db;
    if (identical) *identical = p.identical ? 1 : 0;
    return SVDC_OK;
  });
}

SVDC_API svdc_status svdc_energy_ratio(const svdc_image* original, const svdc_image* restored, double* out) {
  return guarded([&] {
    SVDC_REQUIRE(original != nullptr && restored != nullptr && out != nullptr);
    *out = svdc::energy_ratio(original->value, restored->value);
    return SVDC_OK;
  });
}

SVDC_API svdc_status svdc_assess(const svdc_image* original, const svdc_image* restored,
                                 const svdc_compressed* c, svdc_peak peak, svdc_quality* out) {
  return guarded([&] {
    SVDC_REQUIRE(original != nullptr && restored != nullptr && c != nullptr && out != nullptr);
    const svdc::QualityReport r = svdc::assess(original->value, restored->value, c->value, to_peak(peak));
    *out = svdc_quality{r.eqm, r.psnr.db, r.psnr.identical ? 1 : 0, r.energy_ratio, r.ratio_g};
    return SVDC_OK;
  });
}

SVDC_API double svdc_ratio_rgb(uint32_t m, uint32_t n, uint32_t k) { return svdc::ratio_rgb(m, n, k); }

SVDC_API double svdc_ratio_ycbcr(uint32_t m, uint32_t n, uint32_t k, uint32_t k_prime) {
  return svdc::ratio_ycbcr(m, n, k, k_prime);
}

SVDC_API double svdc_k_seuil(uint32_t m, uint32_t n) { return svdc::k_seuil(m, n); }

SVDC_API svdc_status svdc_speed_ratio(const svdc_image* img, uint32_t k, uint32_t k_prime, uint32_t subsample,
                                      uint32_t trials, svdc_speed* out) {
  return guarded([&] {
    SVDC_REQUIRE(img != nullptr && out != nullptr);
    const svdc::SpeedMeasurement m = svdc::speed_ratio(img->value, k, k_prime, trials, subsample);
    *out = svdc_speed{m.ratio, m.baseline_ms, m.proposed_ms};
    return SVDC_OK;
  });
}

}  // extern "C"
