// svdc command-line tool. Everything goes through the C API in svdc/svdc.h.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "svdc/svdc.h"
#include "svg_plot.hpp"

namespace {

struct ImageDeleter {
  void operator()(svdc_image* p) const { svdc_image_destroy(p); }
};
struct CompressedDeleter {
  void operator()(svdc_compressed* p) const { svdc_compressed_destroy(p); }
};
struct EncoderDeleter {
  void operator()(svdc_encoder* p) const { svdc_encoder_destroy(p); }
};
using ImagePtr = std::unique_ptr<svdc_image, ImageDeleter>;
using CompressedPtr = std::unique_ptr<svdc_compressed, CompressedDeleter>;
using EncoderPtr = std::unique_ptr<svdc_encoder, EncoderDeleter>;

class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Errors throw; warnings pass through to the caller.
svdc_status check(svdc_status status, const std::string& context) {
  if (status < 0) {
    throw CommandError(context + ": " + svdc_status_name(status) + ": " + svdc_last_error_message());
  }
  return status;
}

ImagePtr load_image(const std::string& path) {
  svdc_image* raw = nullptr;
  check(svdc_image_read_ppm(path.c_str(), &raw), path);
  return ImagePtr(raw);
}

std::string format(const char* fmt, double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

uint32_t k_prime_from_v(uint32_t k, uint32_t v) {
  if (v == 0) throw CommandError("--v must be at least 1");
  return (k + v - 1) / v;
}

svdc_peak parse_peak(const std::string& s) { return s == "255" ? SVDC_PEAK_255 : SVDC_PEAK_IMAGE_MAX; }

void warn_break_even(uint32_t k, uint32_t width, uint32_t height) {
  std::cerr << "warning: k=" << k << " >= k_seuil=" << format("%.2f", svdc_k_seuil(height, width))
            << " for a " << width << "x" << height << " image; the encoding does not compress\n";
}

// ---------------------------------------------------------------------------

struct CompressArgs {
  std::string input;
  std::string output;
  uint32_t k = 0;
  std::optional<uint32_t> k_prime;
  std::optional<uint32_t> v;
  std::string scheme = "ycbcr";
  bool no_subsample = false;
};

int run_compress(const CompressArgs& a) {
  const ImagePtr img = load_image(a.input);
  const uint32_t width = svdc_image_width(img.get());
  const uint32_t height = svdc_image_height(img.get());

  svdc_compressed* raw = nullptr;
  svdc_status status = SVDC_OK;
  if (a.scheme == "rgb") {
    status = check(svdc_compress_rgb_baseline(img.get(), a.k, &raw), "compress");
  } else {
    const uint32_t kp = a.k_prime ? *a.k_prime : a.v ? k_prime_from_v(a.k, *a.v) : a.k;
    status = check(svdc_compress(img.get(), a.k, kp, a.no_subsample ? 1 : 2, &raw), "compress");
  }
  const CompressedPtr c(raw);
  if (status == SVDC_WARN_BREAK_EVEN) warn_break_even(a.k, width, height);

  check(svdc_write_file(c.get(), a.output.c_str()), a.output);
  svdc_info info{};
  check(svdc_compressed_info(c.get(), &info), "info");
  std::cout << "scheme=" << (info.scheme == SVDC_SCHEME_RGB ? "rgb" : "ycbcr") << " k=" << info.k
            << " k_prime=" << info.k_prime << " subsample=" << info.subsample
            << " ratio_g=" << format("%.3f", info.coefficient_ratio)
            << " byte_ratio=" << format("%.3f", info.byte_ratio) << " bytes=" << info.serialized_size << "\n";
  return 0;
}

int run_decompress(const std::string& input, const std::string& output) {
  svdc_compressed* raw = nullptr;
  check(svdc_read_file(input.c_str(), &raw), input);
  const CompressedPtr c(raw);
  svdc_image* out = nullptr;
  check(svdc_decompress(c.get(), &out), "decompress");
  const ImagePtr img(out);
  check(svdc_image_write_ppm(img.get(), output.c_str()), output);
  return 0;
}

int run_metrics(const std::string& original, const std::string& restored, const std::string& peak) {
  const ImagePtr a = load_image(original);
  const ImagePtr b = load_image(restored);
  double eqm = 0.0;
  double db = 0.0;
  int identical = 0;
  double energy = 0.0;
  check(svdc_eqm(a.get(), b.get(), &eqm), "eqm");
  check(svdc_psnr(a.get(), b.get(), parse_peak(peak), &db, &identical), "psnr");
  check(svdc_energy_ratio(a.get(), b.get(), &energy), "energy ratio");
  const std::string psnr_text = identical ? "inf" : format("%.4f", db);
  std::cout << "eqm: " << format("%.6f", eqm) << "\n"
            << "psnr_db: " << psnr_text << "\n"
            << "energy_pct: " << format("%.4f", 100.0 * energy) << "\n"
            << "eqm,psnr_db,energy_ratio\n"
            << format("%.6f", eqm) << "," << psnr_text << "," << format("%.6f", energy) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::vector<std::string> images;
  std::vector<uint32_t> k_values = {10, 20, 40, 80};
  std::vector<uint32_t> v_values = {1, 2, 4, 8, 16};
  std::vector<std::string> schemes = {"ycbcr", "rgb"};
  std::string csv;
  std::string svg_dir;
  std::string peak = "image-max";
  bool no_subsample = false;
};

struct SweepRow {
  std::string image;
  std::string scheme;
  uint32_t k = 0;
  uint32_t v = 0;
  uint32_t k_prime = 0;
  double ratio_g = NAN;
  double psnr_db = NAN;
  double eqm = NAN;
  double energy_ratio = NAN;
  double encode_ms = NAN;
  std::string status = "ok";
};

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

void write_sweep_charts(const std::vector<SweepRow>& rows, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::map<std::string, svdc_tools::Series> groups;
  std::vector<std::string> order;
  for (const auto& r : rows) {
    if (r.status != "ok" && r.status.rfind("warning", 0) != 0) continue;
    const std::string key = r.image + " " + r.scheme + (r.scheme == "rgb" ? "" : " v=" + std::to_string(r.v));
    if (!groups.count(key)) order.push_back(key);
    groups[key].label = key;
  }
  struct Metric {
    const char* file;
    const char* title;
    const char* y_label;
    double SweepRow::*field;
    double scale;
  };
  const Metric metrics[] = {
      {"psnr_vs_k.svg", "PSNR versus k", "PSNR (dB)", &SweepRow::psnr_db, 1.0},
      {"ratio_vs_k.svg", "Compression ratio G versus k", "G", &SweepRow::ratio_g, 1.0},
      {"energy_vs_k.svg", "Energy ratio versus k", "energy (%)", &SweepRow::energy_ratio, 100.0},
  };
  for (const Metric& m : metrics) {
    svdc_tools::Chart chart{m.title, "k", m.y_label, {}};
    for (const auto& key : order) {
      svdc_tools::Series s{key, {}, {}};
      for (const auto& r : rows) {
        const std::string rk = r.image + " " + r.scheme + (r.scheme == "rgb" ? "" : " v=" + std::to_string(r.v));
        if (rk != key || std::isnan(r.*m.field)) continue;
        s.x.push_back(r.k);
        s.y.push_back(r.*m.field * m.scale);
      }
      chart.series.push_back(std::move(s));
    }
    std::ofstream out(dir / m.file);
    if (!out) throw CommandError("cannot write " + (dir / m.file).string());
    out << svdc_tools::render_svg(chart);
  }
}

int run_sweep(const SweepArgs& a) {
  std::vector<SweepRow> rows;
  const svdc_peak peak = parse_peak(a.peak);
  const uint32_t subsample = a.no_subsample ? 1 : 2;

  for (const auto& path : a.images) {
    const std::string name = std::filesystem::path(path).filename().string();
    ImagePtr img;
    try {
      img = load_image(path);
    } catch (const CommandError& e) {
      SweepRow row;
      row.image = name;
      row.status = std::string("error: ") + e.what();
      rows.push_back(row);
      continue;
    }
    const uint32_t width = svdc_image_width(img.get());
    const uint32_t height = svdc_image_height(img.get());

    for (const auto& scheme_name : a.schemes) {
      const svdc_scheme scheme = scheme_name == "rgb" ? SVDC_SCHEME_RGB : SVDC_SCHEME_YCBCR;
      EncoderPtr enc;
      double factor_ms = 0.0;
      std::string encoder_error;
      {
        svdc_encoder* raw = nullptr;
        const auto start = std::chrono::steady_clock::now();
        const svdc_status st = svdc_encoder_create(img.get(), scheme, subsample, &raw);
        factor_ms = elapsed_ms(start);
        if (st < 0)
          encoder_error = std::string("error: ") + svdc_status_name(st) + ": " + svdc_last_error_message();
        enc.reset(raw);
      }
      const std::vector<uint32_t> v_values = scheme == SVDC_SCHEME_RGB ? std::vector<uint32_t>{1} : a.v_values;

      for (uint32_t k : a.k_values) {
        for (uint32_t v : v_values) {
          SweepRow row;
          row.image = name;
          row.scheme = scheme_name;
          row.k = k;
          row.v = v;
          row.k_prime = scheme == SVDC_SCHEME_RGB ? k : (v == 0 ? 0 : k_prime_from_v(k, v));
          if (!encoder_error.empty()) {
            row.status = encoder_error;
            rows.push_back(row);
            continue;
          }
          const auto start = std::chrono::steady_clock::now();
          svdc_compressed* raw = nullptr;
          const svdc_status st = svdc_encoder_truncate(enc.get(), k, row.k_prime, &raw);
          const CompressedPtr c(raw);
          row.encode_ms = factor_ms + elapsed_ms(start);
          if (st < 0) {
            row.status = std::string("error: ") + svdc_status_name(st) + ": " + svdc_last_error_message();
            row.encode_ms = NAN;
            rows.push_back(row);
            continue;
          }
          if (st == SVDC_WARN_BREAK_EVEN)
            row.status = "warning: k >= k_seuil " + format("%.2f", svdc_k_seuil(height, width));

          svdc_image* restored_raw = nullptr;
          svdc_quality q{};
          svdc_status qs = svdc_decompress(c.get(), &restored_raw);
          const ImagePtr restored(restored_raw);
          if (qs >= 0) qs = svdc_assess(img.get(), restored.get(), c.get(), peak, &q);
          if (qs < 0) {
            row.status = std::string("error: ") + svdc_status_name(qs) + ": " + svdc_last_error_message();
          } else {
            row.ratio_g = q.ratio_g;
            row.psnr_db = q.psnr_db;
            row.eqm = q.eqm;
            row.energy_ratio = q.energy_ratio;
          }
          rows.push_back(row);
        }
      }
    }
  }

  std::ofstream csv(a.csv, std::ios::binary | std::ios::trunc);
  if (!csv) throw CommandError("cannot write " + a.csv);
  csv << "image,scheme,k,v,k_prime,ratio_g,psnr_db,eqm,energy_ratio,encode_ms,status\n";
  const auto num = [](double x, const char* fmt) { return std::isnan(x) ? std::string() : format(fmt, x); };
  bool any_error = false;
  for (const auto& r : rows) {
    const bool has_ranks = r.k != 0;
    csv << csv_field(r.image) << "," << r.scheme << "," << (has_ranks ? std::to_string(r.k) : "") << ","
        << (has_ranks ? std::to_string(r.v) : "") << "," << (has_ranks ? std::to_string(r.k_prime) : "") << ","
        << num(r.ratio_g, "%.6f") << "," << num(r.psnr_db, "%.6f") << "," << num(r.eqm, "%.6f") << ","
        << num(r.energy_ratio, "%.8f") << "," << num(r.encode_ms, "%.3f") << "," << csv_field(r.status) << "\n";
    if (r.status.rfind("error", 0) == 0) any_error = true;
  }
  csv.close();
  if (!a.svg_dir.empty()) write_sweep_charts(rows, a.svg_dir);
  std::cout << "wrote " << rows.size() << " rows to " << a.csv << (any_error ? " (with error rows)" : "") << "\n";
  return any_error ? 1 : 0;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::vector<std::string> images;
  uint32_t k = 40;
  uint32_t v = 4;
  std::optional<uint32_t> k_prime;
  uint32_t trials = 5;
  bool no_subsample = false;
  std::string csv;
};

int run_bench(const BenchArgs& a) {
  if (a.trials < 3) throw CommandError("--trials must be at least 3 (got " + std::to_string(a.trials) + ")");
  const uint32_t kp = a.k_prime ? *a.k_prime : k_prime_from_v(a.k, a.v);
  const uint32_t subsample = a.no_subsample ? 1 : 2;

  std::ofstream csv;
  if (!a.csv.empty()) {
    csv.open(a.csv, std::ios::binary | std::ios::trunc);
    if (!csv) throw CommandError("cannot write " + a.csv);
    csv << "image,k,k_prime,subsample,trials,baseline_ms,proposed_ms,speed_ratio\n";
  }
  double log_sum = 0.0;
  for (const auto& path : a.images) {
    const ImagePtr img = load_image(path);
    svdc_speed speed{};
    check(svdc_speed_ratio(img.get(), a.k, kp, subsample, a.trials, &speed), path);
    const std::string name = std::filesystem::path(path).filename().string();
    std::cout << name << ": speed_ratio=" << format("%.3f", speed.ratio)
              << " baseline_ms=" << format("%.1f", speed.baseline_ms)
              << " proposed_ms=" << format("%.1f", speed.proposed_ms) << "\n";
    if (csv.is_open())
      csv << csv_field(name) << "," << a.k << "," << kp << "," << subsample << "," << a.trials << ","
          << format("%.3f", speed.baseline_ms) << "," << format("%.3f", speed.proposed_ms) << ","
          << format("%.6f", speed.ratio) << "\n";
    log_sum += std::log(speed.ratio);
  }
  std::cout << "geometric_mean=" << format("%.3f", std::exp(log_sum / static_cast<double>(a.images.size())))
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"svdc: truncated-SVD color image codec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(svdc_version()));

  CompressArgs compress;
  auto* cmd_compress = app.add_subcommand("compress", "Compress a PPM image into a .svdc file");
  cmd_compress->add_option("input", compress.input, "Input PPM (P6)")->required();
  cmd_compress->add_option("output", compress.output, "Output .svdc file")->required();
  cmd_compress->add_option("--k", compress.k, "Luma rank (shared rank for --scheme rgb)")->required();
  auto* kp_opt = cmd_compress->add_option("--k-prime", compress.k_prime, "Chroma rank k'");
  cmd_compress->add_option("--v", compress.v, "Chroma divisor, k' = ceil(k / v)")->excludes(kp_opt);
  cmd_compress->add_option("--scheme", compress.scheme, "ycbcr or rgb")
      ->check(CLI::IsMember({"ycbcr", "rgb"}));
  cmd_compress->add_flag("--no-subsample", compress.no_subsample, "Keep chroma at full resolution");

  std::string dec_in;
  std::string dec_out;
  auto* cmd_decompress = app.add_subcommand("decompress", "Decode a .svdc file to PPM");
  cmd_decompress->add_option("input", dec_in, "Input .svdc file")->required();
  cmd_decompress->add_option("output", dec_out, "Output PPM")->required();

  std::string met_a;
  std::string met_b;
  std::string met_peak = "image-max";
  auto* cmd_metrics = app.add_subcommand("metrics", "EQM, PSNR and energy ratio between two images");
  cmd_metrics->add_option("original", met_a, "Original PPM")->required();
  cmd_metrics->add_option("restored", met_b, "Restored PPM")->required();
  cmd_metrics->add_option("--peak", met_peak, "PSNR peak: image-max or 255")
      ->check(CLI::IsMember({"image-max", "255"}));

  SweepArgs sweep;
  auto* cmd_sweep = app.add_subcommand("sweep", "Rate/distortion sweep over k and v");
  cmd_sweep->add_option("images", sweep.images, "Input PPM images")->required();
  cmd_sweep->add_option("--k", sweep.k_values, "Luma ranks")->delimiter(',');
  cmd_sweep->add_option("--v", sweep.v_values, "Chroma divisors")->delimiter(',');
  cmd_sweep->add_option("--scheme", sweep.schemes, "Schemes to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"ycbcr", "rgb"}));
  cmd_sweep->add_option("--csv", sweep.csv, "Output CSV")->required();
  cmd_sweep->add_option("--svg-dir", sweep.svg_dir, "Directory for SVG charts");
  cmd_sweep->add_option("--peak", sweep.peak, "PSNR peak: image-max or 255")
      ->check(CLI::IsMember({"image-max", "255"}));
  cmd_sweep->add_flag("--no-subsample", sweep.no_subsample, "Keep chroma at full resolution");

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "Encode speed of the proposed scheme vs the RGB baseline");
  cmd_bench->add_option("images", bench.images, "Input PPM images")->required();
  cmd_bench->add_option("--k", bench.k, "Luma rank");
  auto* bench_kp = cmd_bench->add_option("--k-prime", bench.k_prime, "Chroma rank k'");
  cmd_bench->add_option("--v", bench.v, "Chroma divisor, k' = ceil(k / v)")->excludes(bench_kp);
  cmd_bench->add_option("--trials", bench.trials, "Timed trials per path (>= 3)");
  cmd_bench->add_flag("--no-subsample", bench.no_subsample, "Keep chroma at full resolution");
  cmd_bench->add_option("--csv", bench.csv, "Output CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_compress->parsed()) return run_compress(compress);
    if (cmd_decompress->parsed()) return run_decompress(dec_in, dec_out);
    if (cmd_metrics->parsed()) return run_metrics(met_a, met_b, met_peak);
    if (cmd_sweep->parsed()) return run_sweep(sweep);
    if (cmd_bench->parsed()) return run_bench(bench);
  } catch (const CommandError& e) {
    std::cerr << "svdc: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "svdc: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
