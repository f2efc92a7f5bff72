/*
 * svdc: color image codec built on truncated SVD.
 *
 * The luma plane is kept at rank k; the two chroma planes are box-subsampled
 * and kept at rank k' <= k. A per-channel RGB rank-k baseline is provided for
 * comparison.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns an svdc_status;
 * negative values are errors, SVDC_OK (0) is success and positive values are
 * success with a warning. On error, svdc_last_error_message() describes the
 * failure for the calling thread.
 */
#ifndef SVDC_SVDC_H
#define SVDC_SVDC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SVDC_BUILDING_LIBRARY)
#    define SVDC_API __declspec(dllexport)
#  else
#    define SVDC_API __declspec(dllimport)
#  endif
#else
#  define SVDC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum svdc_status {
  SVDC_OK = 0,
  /* Success, but k >= m n / (m + n + 1): the encoding does not compress. */
  SVDC_WARN_BREAK_EVEN = 1,

  SVDC_ERR_INVALID_ARGUMENT = -1,
  SVDC_ERR_INVALID_RANK = -2,
  SVDC_ERR_RANK_ORDER = -3, /* k' > k */
  SVDC_ERR_DIMENSION_MISMATCH = -4,
  SVDC_ERR_NO_CONVERGENCE = -5,
  SVDC_ERR_UNDEFINED = -6, /* e.g. energy ratio of an all-zero original */
  SVDC_ERR_UNRELIABLE_TIMING = -7,
  SVDC_ERR_IO = -8,
  SVDC_ERR_UNSUPPORTED_FORMAT = -9,

  /* Container decoding failures. */
  SVDC_ERR_BAD_MAGIC = -10,
  SVDC_ERR_UNSUPPORTED_VERSION = -11,
  SVDC_ERR_INCONSISTENT = -12,
  SVDC_ERR_SHORT_READ = -13,
  SVDC_ERR_TRAILING_DATA = -14,

  SVDC_ERR_BUFFER_TOO_SMALL = -15,
  SVDC_ERR_INTERNAL = -99
} svdc_status;

typedef enum svdc_scheme {
  SVDC_SCHEME_YCBCR = 0, /* Y at rank k, subsampled Cb/Cr at rank k' */
  SVDC_SCHEME_RGB = 1    /* R, G, B each at rank k */
} svdc_scheme;

typedef enum svdc_peak {
  SVDC_PEAK_IMAGE_MAX = 0, /* peak = max entry of the original image */
  SVDC_PEAK_255 = 1
} svdc_peak;

typedef enum svdc_standin {
  SVDC_STANDIN_GRADIENT = 0,
  SVDC_STANDIN_TEXTURE = 1,
  SVDC_STANDIN_SHAPES = 2
} svdc_standin;

typedef struct svdc_image svdc_image;
typedef struct svdc_compressed svdc_compressed;
typedef struct svdc_encoder svdc_encoder;

typedef struct svdc_info {
  uint32_t width;
  uint32_t height;
  svdc_scheme scheme;
  uint32_t k;
  uint32_t k_prime;
  uint32_t subsample;
  uint64_t coefficient_count;
  double coefficient_ratio; /* 3 m n / coefficient_count */
  uint64_t serialized_size; /* bytes in the .svdc encoding */
  double byte_ratio;        /* 3 m n raw bytes / serialized_size */
  int exceeds_break_even;   /* k >= m n / (m + n + 1) */
} svdc_info;

typedef struct svdc_quality {
  double eqm;
  double psnr_db; /* +inf when identical */
  int identical;
  double energy_ratio;
  double ratio_g;
} svdc_quality;

typedef struct svdc_speed {
  double ratio;       /* baseline_ms / proposed_ms */
  double baseline_ms; /* median over trials */
  double proposed_ms; /* median over trials */
} svdc_speed;

SVDC_API const char* svdc_version(void);
SVDC_API const char* svdc_status_name(svdc_status status);
SVDC_API const char* svdc_last_error_message(void);

/* Images ---------------------------------------------------------------- */

/* rgb holds width * height interleaved R, G, B bytes, row-major. */
SVDC_API svdc_status svdc_image_from_rgb(uint32_t width, uint32_t height, const uint8_t* rgb, size_t len,
                                         svdc_image** out);
SVDC_API svdc_status svdc_image_read_ppm(const char* path, svdc_image** out);
SVDC_API svdc_status svdc_image_write_ppm(const svdc_image* img, const char* path);
SVDC_API svdc_status svdc_image_synthetic(svdc_standin kind, uint32_t width, uint32_t height, svdc_image** out);
SVDC_API uint32_t svdc_image_width(const svdc_image* img);
SVDC_API uint32_t svdc_image_height(const svdc_image* img);
SVDC_API svdc_status svdc_image_copy_rgb(const svdc_image* img, uint8_t* dst, size_t len);
SVDC_API void svdc_image_destroy(svdc_image* img);

/* Encoding / decoding --------------------------------------------------- */

/* Requires 1 <= k_prime <= k <= min(height, width). Chroma planes are kept at
 * rank min(k_prime, their smaller dimension). subsample = 2 is the 4:2:0
 * layout. */
SVDC_API svdc_status svdc_compress(const svdc_image* img, uint32_t k, uint32_t k_prime, uint32_t subsample,
                                   svdc_compressed** out);
SVDC_API svdc_status svdc_compress_rgb_baseline(const svdc_image* img, uint32_t k, svdc_compressed** out);
SVDC_API svdc_status svdc_decompress(const svdc_compressed* c, svdc_image** out);
SVDC_API svdc_status svdc_compressed_info(const svdc_compressed* c, svdc_info* out);
SVDC_API void svdc_compressed_destroy(svdc_compressed* c);

/* Full factorizations of one image, truncated on demand. subsample is
 * ignored for SVDC_SCHEME_RGB. */
SVDC_API svdc_status svdc_encoder_create(const svdc_image* img, svdc_scheme scheme, uint32_t subsample,
                                         svdc_encoder** out);
SVDC_API svdc_status svdc_encoder_truncate(const svdc_encoder* enc, uint32_t k, uint32_t k_prime,
                                           svdc_compressed** out);
SVDC_API void svdc_encoder_destroy(svdc_encoder* enc);

/* Container ------------------------------------------------------------- */

/* Writes the .svdc encoding into buf. With buf == NULL only *size is set.
 * If cap is too small, *size receives the required size and
 * SVDC_ERR_BUFFER_TOO_SMALL is returned. */
SVDC_API svdc_status svdc_serialize(const svdc_compressed* c, uint8_t* buf, size_t cap, size_t* size);
SVDC_API svdc_status svdc_deserialize(const uint8_t* bytes, size_t len, svdc_compressed** out);
SVDC_API svdc_status svdc_write_file(const svdc_compressed* c, const char* path);
SVDC_API svdc_status svdc_read_file(const char* path, svdc_compressed** out);

/* Metrics --------------------------------------------------------------- */

SVDC_API svdc_status svdc_eqm(const svdc_image* original, const svdc_image* restored, double* out);
SVDC_API svdc_status svdc_psnr(const svdc_image* original, const svdc_image* restored, svdc_peak peak,
                               double* db, int* identical);
SVDC_API svdc_status svdc_energy_ratio(const svdc_image* original, const svdc_image* restored, double* out);
SVDC_API svdc_status svdc_assess(const svdc_image* original, const svdc_image* restored,
                                 const svdc_compressed* c, svdc_peak peak, svdc_quality* out);

SVDC_API double svdc_ratio_rgb(uint32_t m, uint32_t n, uint32_t k);
SVDC_API double svdc_ratio_ycbcr(uint32_t m, uint32_t n, uint32_t k, uint32_t k_prime);
SVDC_API double svdc_k_seuil(uint32_t m, uint32_t n);

/* Sequential timing of baseline vs proposed encode; trials >= 3. */
SVDC_API svdc_status svdc_speed_ratio(const svdc_image* img, uint32_t k, uint32_t k_prime, uint32_t subsample,
                                      uint32_t trials, svdc_speed* out);

#ifdef __cplusplus
}
#endif

#endif /* SVDC_SVDC_H */
