#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "core/colorspace.hpp"

namespace svdc::synthetic {

// Deterministic stand-ins for the usual photographic test images.
enum class Kind {
  smooth_gradient,  // slowly varying color ramps
  noise_texture,    // high-frequency gratings plus uniform noise
  piecewise_flat,   // flat rectangles and disks on a flat background
};

inline constexpr Kind kAllKinds[] = {Kind::smooth_gradient, Kind::noise_texture, Kind::piecewise_flat};

std::string_view kind_name(Kind kind) noexcept;
std::optional<Kind> parse_kind(std::string_view name) noexcept;

RgbImage generate(Kind kind, std::size_t width, std::size_t height);

}  // namespace svdc::synthetic
