#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "core/codec.hpp"

namespace svdc::container {

inline constexpr std::array<std::uint8_t, 4> kMagic = {'S', 'V', 'D', 'C'};
inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kHeaderSize = 22;
inline constexpr std::size_t kRankPrefixSize = 2;
inline constexpr std::size_t kCoefficientSize = 4;

// Layout (all little-endian):
//   0  magic "SVDC"          4 bytes
//   4  version               u8  (= 1)
//   5  scheme                u8  (0 ycbcr, 1 rgb)
//   6  width                 u32
//  10  height                u32
//  14  k                     u16
//  16  k_prime               u16
//  18  subsample factor      u8
//  19  reserved              3 bytes, zero
// then three planes, each: u16 rank, rank x f32 sigma, U columns, V columns
// (column-major, f32).
std::vector<std::uint8_t> serialize(const CompressedImage& c);

// Errc::short_read, bad_magic, unsupported_version, rank_order,
// inconsistent_data and trailing_data report the distinct failure modes.
CompressedImage deserialize(std::span<const std::uint8_t> bytes);

// Depends only on the header fields, never on factor values.
std::size_t serialized_size(const CompressedImage& c) noexcept;

void write_file(const CompressedImage& c, const std::filesystem::path& path);
CompressedImage read_file(const std::filesystem::path& path);

}  // namespace svdc::container
