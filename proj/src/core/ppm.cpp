#include "core/ppm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "core/error.hpp"

namespace svdc::ppm {

namespace {

class HeaderParser {
 public:
  explicit HeaderParser(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t number(const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_]))
      throw Error(Errc::unsupported_format, std::string("malformed PPM header: expected ") + what);
    std::size_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
      if (v > (1u << 24)) throw Error(Errc::unsupported_format, std::string("PPM ") + what + " too large");
      ++pos_;
    }
    return v;
  }

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) noexcept { pos_ += n; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

RgbImage decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P')
    throw Error(Errc::unsupported_format, "not a PPM file");
  if (bytes[1] != '6')
    throw Error(Errc::unsupported_format, std::string("unsupported PNM variant P") + static_cast<char>(bytes[1]) +
                                              " (only binary P6 is supported)");
  HeaderParser h(bytes);
  h.advance(2);
  const std::size_t width = h.number("width");
  const std::size_t height = h.number("height");
  const std::size_t maxval = h.number("maxval");
  if (width == 0 || height == 0) throw Error(Errc::unsupported_format, "PPM has zero width or height");
  if (maxval != 255)
    throw Error(Errc::unsupported_format,
                "unsupported PPM maxval " + std::to_string(maxval) + " (only 8-bit, maxval 255)");
  if (h.pos() >= bytes.size() || !std::isspace(bytes[h.pos()]))
    throw Error(Errc::unsupported_format, "malformed PPM header");
  h.advance(1);

  const std::size_t need = width * height * 3;
  if (bytes.size() - h.pos() < need)
    throw Error(Errc::io, "PPM pixel data truncated: need " + std::to_string(need) + " bytes, have " +
                              std::to_string(bytes.size() - h.pos()));
  return RgbImage::from_interleaved(width, height, bytes.subspan(h.pos(), need));
}

std::vector<std::uint8_t> encode(const RgbImage& img) {
  const std::string header =
      "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const auto pixels = img.to_interleaved();
  out.insert(out.end(), pixels.begin(), pixels.end());
  return out;
}

RgbImage read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode(bytes);
}

void write(const RgbImage& img, const std::filesystem::path& path) {
  const auto bytes = encode(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::io, "failed writing " + path.string());
}

}  // namespace svdc::ppm
