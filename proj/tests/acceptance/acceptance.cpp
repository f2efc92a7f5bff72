// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
//
// Standard 512x512 photographs are read from $SVDC_STANDARD_DIR or
// <source>/data/standard (see scripts/fetch_test_images.sh). Without them the
// distortion and energy criteria run on the synthetic stand-ins and say so.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/codec.hpp"
#include "core/container.hpp"
#include "core/error.hpp"
#include "core/linalg.hpp"
#include "core/metrics.hpp"
#include "core/ppm.hpp"
#include "support/test_support.hpp"

namespace fs = std::filesystem;
using namespace svdc;
using namespace svdc::test;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int g_failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title;
  if (!o.detail.empty()) std::cout << " | " << o.detail;
  std::cout << std::endl;
  if (!o.pass) ++g_failures;
}

void run_criterion(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  report(id, title, o);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

struct NamedImage {
  std::string name;
  RgbImage image;
};

std::vector<NamedImage> load_dir(const fs::path& dir, bool require_512) {
  std::vector<NamedImage> out;
  if (!fs::is_directory(dir)) return out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".ppm") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    RgbImage img = ppm::read(f);
    if (require_512 && (img.width() != 512 || img.height() != 512)) {
      std::cout << "note: skipping " << f.filename().string() << " (not 512x512)\n";
      continue;
    }
    out.push_back({f.filename().string(), std::move(img)});
  }
  return out;
}

fs::path standard_dir() {
  if (const char* env = std::getenv("SVDC_STANDARD_DIR")) return env;
  return fs::path(SVDC_SOURCE_DIR) / "data" / "standard";
}

std::vector<NamedImage> standins() {
  std::vector<NamedImage> out;
  for (const char* name : {"gradient.ppm", "texture.ppm", "shapes.ppm"})
    out.push_back({name, ppm::read(fs::path(SVDC_STANDIN_DIR) / name)});
  return out;
}

std::size_t k_prime_for(std::size_t k, std::size_t v) { return (k + v - 1) / v; }

// ---------------------------------------------------------------------------

Outcome svd_correctness() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> dim(1, 64);
  double worst_rec = 0.0;
  double worst_orth = 0.0;
  double worst_energy = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = dim(rng);
    const std::size_t n = dim(rng);
    // Mix of scales, including image-like ranges.
    const double scale = t % 3 == 0 ? 255.0 : (t % 3 == 1 ? 1.0 : 1e-3);
    const Matrix a = random_matrix(rng, m, n, t % 2 ? 0.0 : -scale, scale);
    const SvdFactorization f = svd(a);
    for (std::size_t i = 1; i < f.rank(); ++i)
      if (f.sigma[i] > f.sigma[i - 1] || f.sigma[i] < 0) return {false, "singular values out of order"};
    worst_rec = std::max(worst_rec, frobenius_distance(compose(f.u, f.sigma, f.v), a) / std::max(frobenius(a), 1.0));
    worst_orth = std::max({worst_orth, orthonormality_residual(f.u), orthonormality_residual(f.v)});
    long double entrywise = 0.0L;
    for (double x : a.entries()) entrywise += static_cast<long double>(x) * x;
    long double spectral = 0.0L;
    for (double s : f.sigma) spectral += static_cast<long double>(s) * s;
    worst_energy = std::max(worst_energy, static_cast<double>(std::abs(entrywise - spectral) / entrywise));
  }
  const bool pass = worst_rec <= 1e-8 && worst_orth <= 1e-8 && worst_energy <= 1e-10;
  return {pass, "max reconstruction " + fmt("%.2e", worst_rec) + " (<= 1e-8), orthonormality " +
                    fmt("%.2e", worst_orth) + " (<= 1e-8), energy " + fmt("%.2e", worst_energy) + " (<= 1e-10)"};
}

Outcome eckart_young() {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> noise;
  std::size_t comparisons = 0;
  std::size_t violations = 0;
  double min_margin = INFINITY;
  for (int t = 0; t < 20; ++t) {
    const Matrix a = random_matrix(rng, 16, 16);
    const SvdFactorization f = svd(a);
    for (std::size_t k : {1, 2, 4, 8}) {
      const TruncatedPlane best = truncate(f, k);
      const double best_err = frobenius_distance(a, reconstruct(best));
      for (int c = 0; c < 200; ++c) {
        Matrix candidate;
        if (c % 2 == 0) {
          // Random subspaces with the optimal core for them.
          const Matrix u = random_orthonormal(rng, 16, k);
          const Matrix v = random_orthonormal(rng, 16, k);
          candidate = multiply(multiply(u, multiply(multiply(u.transposed(), a), v)), v.transposed());
        } else {
          // Small perturbation of the truncated factors; still rank k.
          const double eps = std::pow(10.0, -1.0 - (c % 6));
          TruncatedPlane p = best;
          for (double& x : p.u.entries()) x += eps * noise(rng);
          for (double& x : p.v.entries()) x += eps * noise(rng);
          for (double& s : p.sigma) s *= 1.0 + eps * noise(rng);
          candidate = compose(p.u, p.sigma, p.v);
        }
        const double err = frobenius_distance(a, candidate);
        ++comparisons;
        min_margin = std::min(min_margin, err - best_err);
        if (best_err > err) ++violations;
      }
    }
  }
  return {violations == 0, std::to_string(comparisons) + " candidates, " + std::to_string(violations) +
                               " beat the truncation, smallest margin " + fmt("%.3e", min_margin)};
}

Outcome ratio_formulas() {
  const double rgb = ratio_rgb(512, 512, 40);
  const double ycc = ratio_ycbcr(512, 512, 40, 10);
  const double rgb3 = std::round(rgb * 1000.0) / 1000.0;
  const double ycc3 = std::round(ycc * 1000.0) / 1000.0;
  const bool pass = rgb3 == 6.394 && ycc3 == 15.342;
  return {pass, "ratio_rgb(512,512,40) = " + fmt("%.6f", rgb) + ", ratio_ycbcr(512,512,40,10) = " + fmt("%.6f", ycc)};
}

Outcome distortion(const std::vector<NamedImage>& standard) {
  Outcome o;
  std::ostringstream detail;
  if (!standard.empty()) {
    double sum = 0.0;
    int count = 0;
    for (const auto& img : standard) {
      const auto start = std::chrono::steady_clock::now();
      const Encoder enc(img.image, Scheme::ycbcr_dual_rank);
      detail << img.name << ":";
      for (std::size_t v : {1, 2, 4}) {
        const double db = psnr(img.image, decompress(enc.truncate(40, k_prime_for(40, v)))).db;
        detail << " v" << v << "=" << fmt("%.2f", db);
        if (db < 27.0 || db > 33.0) o.pass = false;
        sum += db;
        ++count;
      }
      const double secs = seconds_since(start);
      if (secs >= 60.0) o.pass = false;
      detail << " (" << fmt("%.1f", secs) << " s); ";
    }
    detail << "mean " << fmt("%.2f", sum / count) << " dB, band [27, 33]";
    o.detail = detail.str();
    return o;
  }

  detail << "no standard images found, property substitute on stand-ins: ";
  for (const auto& img : standins()) {
    const auto start = std::chrono::steady_clock::now();
    const Encoder enc(img.image, Scheme::ycbcr_dual_rank);
    bool monotone = true;
    double at40[3] = {};
    int vi = 0;
    for (std::size_t v : {1, 2, 4}) {
      double previous = -INFINITY;
      for (std::size_t k : {10, 20, 40, 80}) {
        const Psnr p = psnr(img.image, decompress(enc.truncate(k, k_prime_for(k, v))));
        const double db = p.identical ? INFINITY : p.db;
        if (db < previous) monotone = false;
        previous = db;
        if (k == 40) at40[vi] = db;
      }
      ++vi;
    }
    const bool order = at40[0] >= at40[2] - 3.0;
    const double secs = seconds_since(start);
    if (!monotone || !order || secs >= 60.0) o.pass = false;
    detail << img.name << " monotone=" << (monotone ? "yes" : "no") << " psnr@40 v1/v2/v4="
           << fmt("%.2f", at40[0]) << "/" << fmt("%.2f", at40[1]) << "/" << fmt("%.2f", at40[2]) << " ("
           << fmt("%.1f", secs) << " s); ";
  }
  o.detail = detail.str();
  return o;
}

Outcome energy(const std::vector<NamedImage>& standard) {
  Outcome o;
  std::ostringstream detail;
  const bool substitute = standard.empty();
  if (substitute) detail << "no standard images found, evaluated on stand-ins: ";
  double lowest = INFINITY;
  for (const auto& img : substitute ? standins() : standard) {
    const Encoder enc(img.image, Scheme::ycbcr_dual_rank);
    detail << img.name << ":";
    for (std::size_t v : {1, 2, 4, 8, 16}) {
      const double e = energy_ratio(img.image, decompress(enc.truncate(40, k_prime_for(40, v))));
      lowest = std::min(lowest, e);
      if (e < 0.97) o.pass = false;
      detail << " v" << v << "=" << fmt("%.4f", e);
    }
    detail << "; ";
  }
  detail << "minimum " << fmt("%.4f", lowest) << " (>= 0.97)";
  o.detail = detail.str();
  return o;
}

Outcome speed(const std::vector<NamedImage>& standard) {
  Outcome o;
  std::ostringstream detail;
  const bool substitute = standard.empty();
  if (substitute) detail << "stand-ins: ";
  double log_sum = 0.0;
  int count = 0;
  for (const auto& img : substitute ? standins() : standard) {
    const SpeedMeasurement m = speed_ratio(img.image, 40, 10, 5);
    if (m.ratio < 2.0) o.pass = false;
    log_sum += std::log(m.ratio);
    ++count;
    detail << img.name << " " << fmt("%.2f", m.ratio) << " (" << fmt("%.0f", m.baseline_ms) << " / "
           << fmt("%.0f", m.proposed_ms) << " ms); ";
  }
  detail << "geometric mean " << fmt("%.2f", std::exp(log_sum / count)) << " (>= 2.0 each)";
  o.detail = detail.str();
  return o;
}

// ---------------------------------------------------------------------------

TruncatedPlane random_plane(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t rank) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> mag(0.0, 1e4);
  TruncatedPlane p;
  p.u = Matrix(rows, rank);
  p.v = Matrix(cols, rank);
  for (double& x : p.u.entries()) x = unit(rng);
  for (double& x : p.v.entries()) x = unit(rng);
  p.sigma.resize(rank);
  for (double& s : p.sigma) s = mag(rng);
  std::sort(p.sigma.begin(), p.sigma.end(), std::greater<>());
  if (rank > 1 && rng() % 4 == 0) p.sigma.back() = 0.0;
  return p;
}

CompressedImage random_compressed(std::mt19937_64& rng) {
  CompressedImage c;
  c.width = 1 + rng() % 40;
  c.height = 1 + rng() % 40;
  c.scheme = rng() % 2 ? Scheme::rgb_uniform_rank : Scheme::ycbcr_dual_rank;
  const std::size_t limit = std::min(c.width, c.height);
  c.k = 1 + rng() % limit;
  if (c.scheme == Scheme::rgb_uniform_rank) {
    c.k_prime = c.k;
    c.subsample = 1;
  } else {
    c.k_prime = 1 + rng() % c.k;
    c.subsample = 1 + rng() % 3;
  }
  const auto rows = c.plane_rows();
  const auto cols = c.plane_cols();
  const auto ranks = c.plane_ranks();
  for (std::size_t i = 0; i < 3; ++i) c.planes[i] = random_plane(rng, rows[i], cols[i], ranks[i]);
  return c;
}

bool within_f32_ulp(double original, double decoded) {
  const float f = static_cast<float>(original);
  const double ulp = static_cast<double>(std::nextafter(std::abs(f), INFINITY) - std::abs(f));
  return std::abs(decoded - original) <= ulp;
}

Errc decode_error(const std::vector<std::uint8_t>& bytes, bool& threw) {
  threw = false;
  try {
    container::deserialize(bytes);
  } catch (const Error& e) {
    threw = true;
    return e.code();
  }
  return Errc::invalid_argument;
}

Outcome format_round_trip() {
  std::mt19937_64 rng(4242);
  std::size_t header_mismatch = 0;
  std::size_t factor_mismatch = 0;
  std::size_t size_mismatch = 0;
  std::size_t wrong_category = 0;
  std::size_t corruptions = 0;
  std::string first_problem;

  auto expect = [&](const std::vector<std::uint8_t>& bytes, Errc want, const char* label) {
    ++corruptions;
    bool threw = false;
    const Errc got = decode_error(bytes, threw);
    if (!threw || got != want) {
      ++wrong_category;
      if (first_problem.empty())
        first_problem = std::string(label) + " gave " + (threw ? errc_name(got) : "no error");
    }
  };

  for (int t = 0; t < 1000; ++t) {
    const CompressedImage c = random_compressed(rng);
    const auto bytes = container::serialize(c);
    if (bytes.size() != container::serialized_size(c) ||
        bytes.size() != container::kHeaderSize + 3 * container::kRankPrefixSize + 4 * c.coefficient_count())
      ++size_mismatch;
    const CompressedImage d = container::deserialize(bytes);
    if (d.width != c.width || d.height != c.height || d.scheme != c.scheme || d.k != c.k || d.k_prime != c.k_prime ||
        d.subsample != c.subsample)
      ++header_mismatch;
    for (std::size_t p = 0; p < 3; ++p) {
      const auto check = [&](std::span<const double> a, std::span<const double> b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
          if (!within_f32_ulp(a[i], b[i])) return false;
        return true;
      };
      if (!check(c.planes[p].sigma, d.planes[p].sigma) || !check(c.planes[p].u.entries(), d.planes[p].u.entries()) ||
          !check(c.planes[p].v.entries(), d.planes[p].v.entries()))
        ++factor_mismatch;
    }

    // Corruptions, one of each category per instance.
    std::vector<std::uint8_t> b(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(rng() % bytes.size()));
    expect(b, Errc::short_read, "truncation");

    b = bytes;
    b[rng() % 4] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    expect(b, Errc::bad_magic, "magic");

    b = bytes;
    b[4] = static_cast<std::uint8_t>(2 + rng() % 254);
    expect(b, Errc::unsupported_version, "version");

    b = bytes;
    const auto kp = static_cast<std::uint16_t>(c.k + 1 + rng() % 100);
    b[16] = static_cast<std::uint8_t>(kp & 0xff);
    b[17] = static_cast<std::uint8_t>(kp >> 8);
    expect(b, Errc::rank_order, "k' > k");

    b = bytes;
    b.push_back(static_cast<std::uint8_t>(rng()));
    expect(b, Errc::trailing_data, "trailing byte");

    b = bytes;
    b[19 + rng() % 3] = static_cast<std::uint8_t>(1 + rng() % 255);
    expect(b, Errc::inconsistent_data, "reserved byte");

    b = bytes;
    b[22] ^= 0x01;  // luma rank prefix
    expect(b, Errc::inconsistent_data, "rank prefix");
  }
  const bool pass = header_mismatch == 0 && factor_mismatch == 0 && size_mismatch == 0 && wrong_category == 0;
  std::string detail = "1000 instances: header mismatches " + std::to_string(header_mismatch) +
                       ", factor mismatches " + std::to_string(factor_mismatch) + ", size mismatches " +
                       std::to_string(size_mismatch) + "; " + std::to_string(corruptions) + " corruptions, " +
                       std::to_string(wrong_category) + " with the wrong category";
  if (!first_problem.empty()) detail += " (first: " + first_problem + ")";
  return {pass, detail};
}

// ---------------------------------------------------------------------------

int run_command(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> strip_column(const fs::path& csv, const std::string& column) {
  std::ifstream in(csv, std::ios::binary);
  std::vector<std::string> lines;
  std::string line;
  std::size_t drop = std::string::npos;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (lines.empty())
      for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i] == column) drop = i;
    std::string kept;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (i != drop) kept += cells[i] + ",";
    lines.push_back(kept);
  }
  return lines;
}

Outcome sweep_determinism() {
  const fs::path dir = fs::temp_directory_path() / "svdc_acceptance_sweep";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string images;
  for (const char* name : {"gradient.ppm", "texture.ppm", "shapes.ppm"})
    images += " \"" + (fs::path(SVDC_STANDIN_DIR) / name).string() + "\"";
  const auto start = std::chrono::steady_clock::now();
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path csv = dir / ("run" + std::to_string(i) + ".csv");
    codes[i] = run_command(std::string("\"") + SVDC_CLI_PATH + "\" sweep" + images + " --csv \"" + csv.string() +
                           "\" > /dev/null");
  }
  const auto a = strip_column(dir / "run0.csv", "encode_ms");
  const auto b = strip_column(dir / "run1.csv", "encode_ms");
  const bool same = !a.empty() && a == b;
  Outcome o{codes[0] == 0 && codes[1] == 0 && same,
            std::to_string(a.size() > 0 ? a.size() - 1 : 0) + " rows per run, exit codes " +
                std::to_string(codes[0]) + "/" + std::to_string(codes[1]) + ", identical without encode_ms: " +
                (same ? "yes" : "no") + " (" + fmt("%.0f", seconds_since(start)) + " s)"};
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  std::vector<NamedImage> standard;
  try {
    standard = load_dir(standard_dir(), true);
  } catch (const std::exception& e) {
    std::cout << "note: could not load standard images: " << e.what() << "\n";
  }
  std::cout << "standard images: "
            << (standard.empty() ? "none (" + standard_dir().string() + ")" : std::to_string(standard.size()))
            << std::endl;

  run_criterion(1, "SVD correctness on 100 random matrices", svd_correctness);
  run_criterion(2, "Eckart-Young oracle, 20 matrices x k in {1,2,4,8} x 200 candidates", eckart_young);
  run_criterion(3, "compression ratio formulas to 3 decimals", ratio_formulas);
  run_criterion(4, "distortion at k=40", [&] { return distortion(standard); });
  run_criterion(5, "energy ratio >= 0.97 at k=40 for v <= 16", [&] { return energy(standard); });
  run_criterion(6, "speed ratio >= 2.0 at k=40, v=4, median of 5", [&] { return speed(standard); });
  run_criterion(7, "container round trip and corruption categories", format_round_trip);
  run_criterion(8, "sweep CSV determinism excluding timing", sweep_determinism);

  std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) + " criteria failed")
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
