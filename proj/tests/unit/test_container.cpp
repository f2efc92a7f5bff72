#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>

#include "core/codec.hpp"
#include "core/container.hpp"
#include "core/error.hpp"
#include "core/metrics.hpp"
#include "core/synthetic.hpp"
#include "doctest.h"
#include "support/test_support.hpp"

using namespace svdc;
using namespace svdc::test;
namespace fs = std::filesystem;

namespace {

Errc decode_error(const std::vector<std::uint8_t>& bytes) {
  try {
    container::deserialize(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a decode error");
  return Errc::invalid_argument;
}

void put_u16(std::vector<std::uint8_t>& b, std::size_t at, std::uint16_t v) {
  b[at] = static_cast<std::uint8_t>(v & 0xff);
  b[at + 1] = static_cast<std::uint8_t>(v >> 8);
}

void put_f32(std::vector<std::uint8_t>& b, std::size_t at, float v) {
  const auto bits = std::bit_cast<std::uint32_t>(v);
  for (std::size_t i = 0; i < 4; ++i) b[at + i] = static_cast<std::uint8_t>(bits >> (8 * i));
}

float read_f32(const std::vector<std::uint8_t>& b, std::size_t at) {
  std::uint32_t bits = 0;
  for (int i = 3; i >= 0; --i) bits = (bits << 8) | b[at + static_cast<std::size_t>(i)];
  return std::bit_cast<float>(bits);
}

CompressedImage sample(std::size_t w = 2, std::size_t h = 2, std::size_t k = 1, std::size_t kp = 1) {
  std::mt19937_64 rng(w * 131 + h);
  return compress(random_image(rng, w, h), k, kp);
}

}  // namespace

TEST_CASE("2x2 image at k = k' = 1 stores 11 coefficients") {
  const CompressedImage c = sample();
  CHECK(c.coefficient_count() == 11);
  const auto bytes = container::serialize(c);
  CHECK(bytes.size() == 22 + 3 * 2 + 11 * 4);
  CHECK(bytes.size() == 72);
  CHECK(container::serialized_size(c) == 72);
}

TEST_CASE("header layout") {
  const CompressedImage c = sample(5, 3, 3, 2);
  const auto b = container::serialize(c);
  CHECK(std::memcmp(b.data(), "SVDC", 4) == 0);
  CHECK(b[4] == 1);
  CHECK(b[5] == 0);
  CHECK((b[6] | b[7] << 8 | b[8] << 16 | b[9] << 24) == 5);
  CHECK((b[10] | b[11] << 8 | b[12] << 16 | b[13] << 24) == 3);
  CHECK((b[14] | b[15] << 8) == 3);
  CHECK((b[16] | b[17] << 8) == 2);
  CHECK(b[18] == 2);
  CHECK(b[19] == 0);
  CHECK(b[20] == 0);
  CHECK(b[21] == 0);
  // First plane: rank prefix, sigma, then U column-major.
  CHECK((b[22] | b[23] << 8) == 3);
  CHECK(read_f32(b, 24) == static_cast<float>(c.planes[0].sigma[0]));
  CHECK(read_f32(b, 24 + 3 * 4) == static_cast<float>(c.planes[0].u(0, 0)));
  CHECK(read_f32(b, 24 + 3 * 4 + 4) == static_cast<float>(c.planes[0].u(1, 0)));
  CHECK(read_f32(b, 24 + 3 * 4 + 3 * 3 * 4) == static_cast<float>(c.planes[0].v(0, 0)));
}

TEST_CASE("round trip keeps header fields and narrows factors to f32") {
  std::mt19937_64 rng(1);
  const CompressedImage rgb = compress_rgb_baseline(random_image(rng, 9, 7), 4);
  for (const CompressedImage& c : {sample(), sample(17, 11, 6, 3), rgb}) {
    const CompressedImage d = container::deserialize(container::serialize(c));
    CHECK(d.width == c.width);
    CHECK(d.height == c.height);
    CHECK(d.scheme == c.scheme);
    CHECK(d.k == c.k);
    CHECK(d.k_prime == c.k_prime);
    CHECK(d.subsample == c.subsample);
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t i = 0; i < c.planes[p].rank(); ++i)
        CHECK(d.planes[p].sigma[i] == static_cast<double>(static_cast<float>(c.planes[p].sigma[i])));
      for (std::size_t i = 0; i < c.planes[p].u.size(); ++i)
        CHECK(d.planes[p].u.entries()[i] == static_cast<double>(static_cast<float>(c.planes[p].u.entries()[i])));
      for (std::size_t i = 0; i < c.planes[p].v.size(); ++i)
        CHECK(d.planes[p].v.entries()[i] == static_cast<double>(static_cast<float>(c.planes[p].v.entries()[i])));
    }
  }
}

TEST_CASE("serialized size depends only on the header") {
  std::mt19937_64 rng(8);
  const CompressedImage a = compress(random_image(rng, 20, 16), 5, 2);
  const CompressedImage b = compress(constant_image(20, 16, 9, 9, 9), 5, 2);
  CHECK(container::serialize(a).size() == container::serialize(b).size());
  CHECK(container::serialized_size(a) == container::serialize(a).size());
  const std::size_t payload = 4 * a.coefficient_count() + 3 * 2;
  CHECK(container::serialize(a).size() == 22 + payload);
}

TEST_CASE("truncation by any amount is a short read") {
  const auto bytes = container::serialize(sample(6, 4, 2, 1));
  for (std::size_t cut = 1; cut < bytes.size(); ++cut) {
    CAPTURE(cut);
    const std::vector<std::uint8_t> shorter(bytes.begin(), bytes.end() - static_cast<std::ptrdiff_t>(cut));
    CHECK(decode_error(shorter) == Errc::short_read);
  }
  CHECK(decode_error({}) == Errc::short_read);
}

TEST_CASE("corruption categories") {
  const auto good = container::serialize(sample(6, 4, 2, 1));

  auto b = good;
  std::memcpy(b.data(), "XXXX", 4);
  CHECK(decode_error(b) == Errc::bad_magic);

  b = good;
  b[4] = 2;
  CHECK(decode_error(b) == Errc::unsupported_version);

  b = good;
  put_u16(b, 16, 3);  // k' = 3 > k = 2
  CHECK(decode_error(b) == Errc::rank_order);

  b = good;
  b.push_back(0);
  CHECK(decode_error(b) == Errc::trailing_data);

  b = good;
  b[5] = 7;  // unknown scheme
  CHECK(decode_error(b) == Errc::inconsistent_data);

  b = good;
  b[20] = 1;  // reserved byte
  CHECK(decode_error(b) == Errc::inconsistent_data);

  b = good;
  put_u16(b, 22, 1);  // plane rank prefix disagrees with k
  CHECK(decode_error(b) == Errc::inconsistent_data);

  b = good;
  put_u16(b, 14, 5);  // k beyond the 4 x 6 luma plane
  CHECK(decode_error(b) == Errc::inconsistent_data);

  b = good;
  b[18] = 0;  // zero subsample factor
  CHECK(decode_error(b) == Errc::inconsistent_data);

  b = good;
  put_f32(b, 24, std::nanf(""));  // first sigma
  CHECK(decode_error(b) == Errc::inconsistent_data);

  b = good;
  put_f32(b, 28, 1e30f);  // second sigma above the first
  CHECK(decode_error(b) == Errc::inconsistent_data);
}

TEST_CASE("rgb containers require k' = k and s = 1") {
  std::mt19937_64 rng(3);
  const auto good = container::serialize(compress_rgb_baseline(random_image(rng, 5, 5), 2));
  CHECK_NOTHROW(container::deserialize(good));
  auto b = good;
  b[18] = 2;
  CHECK(decode_error(b) == Errc::inconsistent_data);
  b = good;
  put_u16(b, 16, 1);
  CHECK(decode_error(b) == Errc::inconsistent_data);
}

TEST_CASE("file round trip keeps psnr within 0.1 dB") {
  const RgbImage img = synthetic::generate(synthetic::Kind::piecewise_flat, 64, 64);
  const CompressedImage c = compress(img, 12, 3);
  const fs::path path = fs::temp_directory_path() / "svdc_container_test.svdc";
  container::write_file(c, path);
  const CompressedImage d = container::read_file(path);
  fs::remove(path);
  const double direct = psnr(img, decompress(c)).db;
  const double stored = psnr(img, decompress(d)).db;
  CHECK(std::abs(direct - stored) <= 0.1);
  CHECK_THROWS_AS(container::read_file(fs::temp_directory_path() / "svdc_missing_file.svdc"), Error);
}
