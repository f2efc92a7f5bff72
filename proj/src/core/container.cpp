#include "core/container.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "core/error.hpp"

namespace svdc::container {

namespace {

class Writer {
 public:
  explicit Writer(std::size_t reserve) { out_.reserve(reserve); }

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v));
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int shift = 0; shift < 32; shift += 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
  }
  void f32(double v) { u32(std::bit_cast<std::uint32_t>(static_cast<float>(v))); }

  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

  void require(std::size_t n, const char* what) const {
    if (remaining() < n)
      throw Error(Errc::short_read, std::string("stream ends inside ") + what + " (need " + std::to_string(n) +
                                        " bytes, have " + std::to_string(remaining()) + ")");
  }
  std::uint8_t u8() { return bytes_[pos_++]; }
  std::uint16_t u16() {
    const auto v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  double f32() { return static_cast<double>(std::bit_cast<float>(u32())); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::size_t plane_bytes(std::size_t rows, std::size_t cols, std::size_t rank) noexcept {
  return kRankPrefixSize + kCoefficientSize * rank * (rows + cols + 1);
}

}  // namespace

std::size_t serialized_size(const CompressedImage& c) noexcept {
  const auto rows = c.plane_rows();
  const auto cols = c.plane_cols();
  const auto ranks = c.plane_ranks();
  std::size_t total = kHeaderSize;
  for (std::size_t i = 0; i < 3; ++i) total += plane_bytes(rows[i], cols[i], ranks[i]);
  return total;
}

std::vector<std::uint8_t> serialize(const CompressedImage& c) {
  c.validate();
  constexpr auto u16_max = std::numeric_limits<std::uint16_t>::max();
  constexpr auto u32_max = std::numeric_limits<std::uint32_t>::max();
  if (c.width > u32_max || c.height > u32_max || c.k > u16_max || c.subsample > 255)
    throw Error(Errc::invalid_argument, "header field does not fit the container format");

  Writer w(serialized_size(c));
  for (auto b : kMagic) w.u8(b);
  w.u8(kVersion);
  w.u8(static_cast<std::uint8_t>(c.scheme));
  w.u32(static_cast<std::uint32_t>(c.width));
  w.u32(static_cast<std::uint32_t>(c.height));
  w.u16(static_cast<std::uint16_t>(c.k));
  w.u16(static_cast<std::uint16_t>(c.k_prime));
  w.u8(static_cast<std::uint8_t>(c.subsample));
  w.u8(0);
  w.u8(0);
  w.u8(0);

  for (const TruncatedPlane& p : c.planes) {
    w.u16(static_cast<std::uint16_t>(p.rank()));
    for (double s : p.sigma) w.f32(s);
    for (std::size_t j = 0; j < p.rank(); ++j)
      for (std::size_t r = 0; r < p.rows(); ++r) w.f32(p.u(r, j));
    for (std::size_t j = 0; j < p.rank(); ++j)
      for (std::size_t r = 0; r < p.cols(); ++r) w.f32(p.v(r, j));
  }
  return w.take();
}

CompressedImage deserialize(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  in.require(kMagic.size(), "magic");
  std::array<std::uint8_t, 4> magic{};
  for (auto& b : magic) b = in.u8();
  if (magic != kMagic) throw Error(Errc::bad_magic, "not an SVDC container (bad magic)");

  in.require(kHeaderSize - kMagic.size(), "header");
  const std::uint8_t version = in.u8();
  if (version != kVersion)
    throw Error(Errc::unsupported_version, "unsupported container version " + std::to_string(version));

  CompressedImage c;
  const std::uint8_t scheme = in.u8();
  c.width = in.u32();
  c.height = in.u32();
  c.k = in.u16();
  c.k_prime = in.u16();
  c.subsample = in.u8();
  const bool reserved_zero = (in.u8() | in.u8() | in.u8()) == 0;

  if (c.k_prime > c.k)
    throw Error(Errc::rank_order, "header claims k'=" + std::to_string(c.k_prime) + " > k=" + std::to_string(c.k));
  if (scheme > 1) throw Error(Errc::inconsistent_data, "unknown scheme tag " + std::to_string(scheme));
  if (!reserved_zero) throw Error(Errc::inconsistent_data, "reserved header bytes are not zero");
  c.scheme = static_cast<Scheme>(scheme);
  if (c.width == 0 || c.height == 0 || c.k == 0 || c.k_prime == 0 || c.subsample == 0)
    throw Error(Errc::inconsistent_data, "header has a zero dimension, rank or subsample factor");
  if (c.scheme == Scheme::rgb_uniform_rank && (c.k_prime != c.k || c.subsample != 1))
    throw Error(Errc::inconsistent_data, "rgb scheme requires k'=k and subsample factor 1");

  const auto rows = c.plane_rows();
  const auto cols = c.plane_cols();
  const auto ranks = c.plane_ranks();
  for (std::size_t i = 0; i < 3; ++i) {
    if (ranks[i] > std::min(rows[i], cols[i]))
      throw Error(Errc::inconsistent_data, "rank exceeds plane dimensions in header");
  }

  for (std::size_t i = 0; i < 3; ++i) {
    in.require(kRankPrefixSize, "plane rank prefix");
    const std::size_t rank = in.u16();
    if (rank != ranks[i])
      throw Error(Errc::inconsistent_data, "plane " + std::to_string(i) + " stores rank " + std::to_string(rank) +
                                               ", header implies " + std::to_string(ranks[i]));
    in.require(plane_bytes(rows[i], cols[i], rank) - kRankPrefixSize, "plane factors");
    TruncatedPlane& p = c.planes[i];
    p.sigma.resize(rank);
    p.u = Matrix(rows[i], rank);
    p.v = Matrix(cols[i], rank);
    for (double& s : p.sigma) s = in.f32();
    for (std::size_t j = 0; j < rank; ++j)
      for (std::size_t r = 0; r < rows[i]; ++r) p.u(r, j) = in.f32();
    for (std::size_t j = 0; j < rank; ++j)
      for (std::size_t r = 0; r < cols[i]; ++r) p.v(r, j) = in.f32();
    p.validate();
  }
  if (in.remaining() != 0)
    throw Error(Errc::trailing_data, std::to_string(in.remaining()) + " unexpected bytes after the last plane");
  return c;
}

void write_file(const CompressedImage& c, const std::filesystem::path& path) {
  const auto bytes = serialize(c);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::io, "failed writing " + path.string());
}

CompressedImage read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace svdc::container
