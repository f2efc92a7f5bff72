#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "core/colorspace.hpp"

namespace svdc::ppm {

// Binary PPM (P6, maxval 255). Header comments are skipped.
RgbImage decode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode(const RgbImage& img);

RgbImage read(const std::filesystem::path& path);
void write(const RgbImage& img, const std::filesystem::path& path);

}  // namespace svdc::ppm
