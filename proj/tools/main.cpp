// Command-line front end for the imgshare library: split an image into n
// share images, reconstruct from any t of them, inspect sidecars, and
// benchmark the pipeline on synthetic images. Talks to the library purely
// through its C API.

#include <imgshare/imgshare.h>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ImagePtr = std::unique_ptr<imgshare_image, decltype(&imgshare_image_free)>;
using ParamsPtr = std::unique_ptr<imgshare_params, decltype(&imgshare_params_free)>;
using BundlePtr = std::unique_ptr<imgshare_bundle, decltype(&imgshare_bundle_free)>;

void require_ok(imgshare_status status) {
  if (status != IMGSHARE_OK) {
    throw std::runtime_error(std::string(imgshare_last_error()));
  }
}

bool g_verbose = false;

void note(const std::string &message) {
  if (g_verbose) std::cerr << message << "\n";
}

struct ShareOptions {
  std::string input;
  std::string output_dir = ".";
  std::uint32_t t = 0;
  std::uint32_t n = 0;
  std::string mode = "cbc";
  std::string iv_derivation = "sha";
  std::uint64_t key_position = 0;
  std::string format = "png";
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::uint32_t jobs = 1;
};

ParamsPtr build_params(const ShareOptions &options) {
  imgshare_params *raw = nullptr;
  require_ok(imgshare_params_create(options.t, options.n, &raw));
  ParamsPtr params(raw, &imgshare_params_free);
  require_ok(imgshare_params_set_mode(params.get(), options.mode.c_str()));
  require_ok(imgshare_params_set_iv_derivation(params.get(), options.iv_derivation.c_str()));
  require_ok(imgshare_params_set_key_position(params.get(), options.key_position));
  require_ok(imgshare_params_set_jobs(params.get(), options.jobs));
  if (options.has_seed) {
    require_ok(imgshare_params_set_seed(params.get(), options.seed));
  }
  return params;
}

std::string share_stem(const fs::path &input) {
  fs::path stem = input.filename();
  stem.replace_extension();
  return stem.string();
}

fs::path meta_path_for(const fs::path &share_path) {
  fs::path meta = share_path;
  meta.replace_extension(".meta");
  return meta;
}

int cmd_share(const ShareOptions &options) {
  if (options.t < 1 || options.t > options.n) {
    throw UsageError("threshold must satisfy 1 <= t <= n (got t=" + std::to_string(options.t) +
                     ", n=" + std::to_string(options.n) + ")");
  }

  imgshare_image *raw_image = nullptr;
  require_ok(imgshare_image_read_file(options.input.c_str(), &raw_image));
  ImagePtr image(raw_image, &imgshare_image_free);
  note("read " + options.input + " (" + std::to_string(imgshare_image_width(image.get())) +
       "x" + std::to_string(imgshare_image_height(image.get())) + ")");

  ParamsPtr params = build_params(options);
  std::vector<imgshare_bundle *> raw_bundles(options.n, nullptr);
  require_ok(imgshare_generate_shares(image.get(), params.get(), raw_bundles.data()));
  std::vector<BundlePtr> bundles;
  for (imgshare_bundle *b : raw_bundles) bundles.emplace_back(b, &imgshare_bundle_free);

  const std::string stem = share_stem(options.input);
  std::vector<fs::path> written;
  try {
    for (std::uint32_t i = 0; i < options.n; ++i) {
      const fs::path image_path = fs::path(options.output_dir) /
                                  (stem + ".share" + std::to_string(i + 1) + "." +
                                   options.format);
      const fs::path meta = meta_path_for(image_path);
      require_ok(imgshare_bundle_write(bundles[i].get(), image_path.string().c_str(),
                                       meta.string().c_str(), options.format.c_str()));
      written.push_back(image_path);
      written.push_back(meta);
      note("wrote " + image_path.string());
    }
  } catch (...) {
    // No partial sessions on disk.
    for (const fs::path &p : written) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    throw;
  }

  std::cout << "wrote " << options.n << " shares (threshold " << options.t << ") to "
            << options.output_dir << "\n";
  return kExitOk;
}

struct ReconstructOptions {
  std::vector<std::string> shares;
  std::string output;
};

int cmd_reconstruct(const ReconstructOptions &options) {
  std::vector<BundlePtr> bundles;
  std::vector<const imgshare_bundle *> raw;
  for (const std::string &path : options.shares) {
    imgshare_bundle *bundle = nullptr;
    require_ok(
        imgshare_bundle_read(path.c_str(), meta_path_for(path).string().c_str(), &bundle));
    bundles.emplace_back(bundle, &imgshare_bundle_free);
    raw.push_back(bundle);
    note("loaded " + path);
  }

  imgshare_image *raw_image = nullptr;
  char *warning = nullptr;
  require_ok(imgshare_reconstruct(raw.data(), raw.size(), &raw_image, &warning));
  ImagePtr image(raw_image, &imgshare_image_free);
  if (warning != nullptr) {
    std::cerr << "warning: " << warning << "\n";
    imgshare_string_free(warning);
  }

  fs::path output = options.output;
  if (output.empty()) {
    fs::path first(options.shares.front());
    std::string stem = first.filename().replace_extension().string();
    if (const auto pos = stem.rfind(".share"); pos != std::string::npos) {
      stem.erase(pos);
    }
    output = first.parent_path() / (stem + ".reconstructed.png");
  }
  const std::string format = output.extension() == ".ppm" ? "ppm" : "png";
  require_ok(imgshare_image_write_file(image.get(), output.string().c_str(), format.c_str()));

  std::cout << "reconstructed " << imgshare_image_width(image.get()) << "x"
            << imgshare_image_height(image.get()) << " image, checksum verified: "
            << output.string() << "\n";
  return kExitOk;
}

int cmd_inspect(const std::vector<std::string> &paths) {
  for (const std::string &path : paths) {
    fs::path meta(path);
    if (meta.extension() != ".meta") meta = meta_path_for(meta);
    char *summary = nullptr;
    require_ok(imgshare_meta_summary(meta.string().c_str(), &summary));
    std::cout << meta.string() << "\n" << summary;
    imgshare_string_free(summary);
  }
  return kExitOk;
}

// ---- bench ---------------------------------------------------------

struct BenchOptions {
  std::vector<double> sizes_mb = {1, 2, 4, 8};
  std::vector<std::string> grid = {"2,3", "3,5", "5,5", "6,10"};
  std::uint32_t runs = 3;
  std::string report = "table";
  std::string share_format = "png";
  std::string dir;
  std::uint64_t seed = 1;
  std::uint32_t jobs = 1;
};

struct BenchRow {
  double size_mb;
  std::uint32_t t, n;
  double share_seconds;
  double reconstruct_seconds;
};

struct LinearFit {
  double slope = 0, intercept = 0, r2 = 0;
};

LinearFit fit_line(const std::vector<double> &x, const std::vector<double> &y) {
  const double count = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LinearFit fit;
  const double denom = count * sxx - sx * sx;
  fit.slope = (count * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / count;
  double ss_res = 0, ss_tot = 0;
  const double mean = sy / count;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double predicted = fit.slope * x[i] + fit.intercept;
    ss_res += (y[i] - predicted) * (y[i] - predicted);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

ImagePtr synthetic_image(double size_mb, std::uint64_t seed) {
  // Width fixed at 1024; height chosen to hit the byte budget, rounded to
  // a multiple of 4 so timings are not disturbed by padding.
  const std::uint32_t width = 1024;
  const double bytes = size_mb * 1024.0 * 1024.0;
  std::uint32_t height = static_cast<std::uint32_t>(bytes / (3.0 * width));
  height = std::max<std::uint32_t>(4, (height + 3u) & ~3u);
  std::vector<std::uint8_t> rgb(std::size_t{3} * width * height);
  std::mt19937_64 rng(seed);
  for (auto &b : rgb) b = static_cast<std::uint8_t>(rng());
  imgshare_image *raw = nullptr;
  require_ok(imgshare_image_create(width, height, rgb.data(), rgb.size(), &raw));
  return ImagePtr(raw, &imgshare_image_free);
}

double actual_mb(const ImagePtr &image) {
  return std::size_t{3} * imgshare_image_width(image.get()) *
         imgshare_image_height(image.get()) / (1024.0 * 1024.0);
}

BenchRow bench_cell(const ImagePtr &image, std::uint32_t t, std::uint32_t n,
                    const BenchOptions &options, const fs::path &dir) {
  using Clock = std::chrono::steady_clock;

  ShareOptions share_options;
  share_options.t = t;
  share_options.n = n;
  share_options.has_seed = true;
  share_options.seed = options.seed;
  share_options.jobs = options.jobs;
  ParamsPtr params = build_params(share_options);

  std::vector<double> share_times, reconstruct_times;
  std::vector<fs::path> paths;
  for (std::uint32_t run = 0; run < options.runs; ++run) {
    // Timed share phase: generate the session and write every bundle.
    const auto share_start = Clock::now();
    std::vector<imgshare_bundle *> raw_bundles(n, nullptr);
    require_ok(imgshare_generate_shares(image.get(), params.get(), raw_bundles.data()));
    std::vector<BundlePtr> bundles;
    for (imgshare_bundle *b : raw_bundles) bundles.emplace_back(b, &imgshare_bundle_free);
    paths.clear();
    for (std::uint32_t i = 0; i < n; ++i) {
      const fs::path image_path =
          dir / ("bench_" + std::to_string(t) + "_" + std::to_string(n) + ".share" +
                 std::to_string(i + 1) + "." + options.share_format);
      require_ok(imgshare_bundle_write(bundles[i].get(), image_path.string().c_str(),
                                       meta_path_for(image_path).string().c_str(),
                                       options.share_format.c_str()));
      paths.push_back(image_path);
    }
    share_times.push_back(std::chrono::duration<double>(Clock::now() - share_start).count());
    bundles.clear();

    // Timed reconstruct phase: load t bundles from disk and reconstruct.
    const auto reconstruct_start = Clock::now();
    std::vector<BundlePtr> loaded;
    std::vector<const imgshare_bundle *> raw;
    for (std::uint32_t i = 0; i < t; ++i) {
      imgshare_bundle *b = nullptr;
      require_ok(imgshare_bundle_read(paths[i].string().c_str(),
                                      meta_path_for(paths[i]).string().c_str(), &b));
      loaded.emplace_back(b, &imgshare_bundle_free);
      raw.push_back(b);
    }
    imgshare_image *result = nullptr;
    require_ok(imgshare_reconstruct(raw.data(), raw.size(), &result, nullptr));
    reconstruct_times.push_back(
        std::chrono::duration<double>(Clock::now() - reconstruct_start).count());
    imgshare_image_free(result);
  }
  for (const fs::path &p : paths) {
    std::error_code ec;
    fs::remove(p, ec);
    fs::remove(meta_path_for(p), ec);
  }
  return BenchRow{actual_mb(image), t, n, median(share_times), median(reconstruct_times)};
}

int cmd_bench(const BenchOptions &options) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> grid;
  for (const std::string &cell : options.grid) {
    unsigned t = 0, n = 0;
    if (std::sscanf(cell.c_str(), "%u,%u", &t, &n) != 2 || t < 1 || t > n) {
      throw UsageError("bad grid entry '" + cell + "', expected t,n with 1 <= t <= n");
    }
    grid.emplace_back(t, n);
  }

  fs::path dir = options.dir;
  bool temp_dir = dir.empty();
  if (temp_dir) {
    dir = fs::temp_directory_path() /
          ("imgshare_bench_" + std::to_string(std::random_device{}()));
  }
  fs::create_directories(dir);

  const bool tsv = options.report == "tsv";
  std::vector<BenchRow> rows;
  if (tsv) {
    std::cout << "size_mb\tt\tn\tshare_s\treconstruct_s\n";
  } else {
    std::printf("%10s %4s %4s %12s %16s\n", "size_mb", "t", "n", "share_s", "reconstruct_s");
  }
  for (double size : options.sizes_mb) {
    const ImagePtr image = synthetic_image(size, options.seed + std::llround(size * 16));
    for (auto [t, n] : grid) {
      note("bench: " + std::to_string(size) + " MB, (" + std::to_string(t) + "," +
           std::to_string(n) + ")");
      const BenchRow row = bench_cell(image, t, n, options, dir);
      rows.push_back(row);
      if (tsv) {
        std::printf("%.3f\t%u\t%u\t%.6f\t%.6f\n", row.size_mb, row.t, row.n,
                    row.share_seconds, row.reconstruct_seconds);
      } else {
        std::printf("%10.3f %4u %4u %12.3f %16.3f\n", row.size_mb, row.t, row.n,
                    row.share_seconds, row.reconstruct_seconds);
      }
    }
  }

  // Per-cell linear fit of time against raw image size.
  for (auto [t, n] : grid) {
    std::vector<double> x, share_y, reconstruct_y;
    for (const BenchRow &row : rows) {
      if (row.t != t || row.n != n) continue;
      x.push_back(row.size_mb);
      share_y.push_back(row.share_seconds);
      reconstruct_y.push_back(row.reconstruct_seconds);
    }
    if (x.size() < 2) continue;
    const LinearFit share_fit = fit_line(x, share_y);
    const LinearFit reconstruct_fit = fit_line(x, reconstruct_y);
    if (tsv) {
      std::printf("fit\tshare\t%u\t%u\t%.6f\t%.6f\t%.6f\n", t, n, share_fit.slope,
                  share_fit.intercept, share_fit.r2);
      std::printf("fit\treconstruct\t%u\t%u\t%.6f\t%.6f\t%.6f\n", t, n,
                  reconstruct_fit.slope, reconstruct_fit.intercept, reconstruct_fit.r2);
    } else {
      std::printf("fit (%u,%u): share %.3f s/MB + %.3f s (r2 %.4f); reconstruct %.3f s/MB + "
                  "%.3f s (r2 %.4f)\n",
                  t, n, share_fit.slope, share_fit.intercept, share_fit.r2,
                  reconstruct_fit.slope, reconstruct_fit.intercept, reconstruct_fit.r2);
    }
  }

  if (temp_dir) {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Threshold secret sharing for images: any t of n share images recover the "
               "original bit-exactly."};
  app.require_subcommand(1);
  app.add_flag("-v,--verbose", g_verbose, "Progress output on stderr");

  ShareOptions share_options;
  CLI::App *share = app.add_subcommand("share", "Split an image into n share images");
  share->add_option("image", share_options.input, "Input image (PPM or PNG)")->required();
  share->add_option("-t,--threshold", share_options.t, "Shares needed to reconstruct")
      ->required();
  share->add_option("-n,--shares", share_options.n, "Total shares to produce")->required();
  share->add_option("-o,--output-dir", share_options.output_dir, "Output directory");
  share->add_option("--mode", share_options.mode, "Cipher mode: cbc or ofb")
      ->check(CLI::IsMember({"cbc", "ofb"}));
  share->add_option("--iv-derivation", share_options.iv_derivation,
                    "IV derivation: sha or concat")
      ->check(CLI::IsMember({"sha", "concat"}));
  share->add_option("--key-position", share_options.key_position,
                    "Bit offset of the key inside the image stream (multiple of 8)");
  share->add_option("--format", share_options.format, "Share image format")
      ->check(CLI::IsMember({"png", "ppm"}));
  auto *seed_option = share->add_option("--seed", share_options.seed,
                                        "Deterministic entropy (testing only, not secure)");
  share->add_option("--jobs", share_options.jobs, "Worker threads for share assembly");

  ReconstructOptions reconstruct_options;
  CLI::App *reconstruct =
      app.add_subcommand("reconstruct", "Reconstruct the original from t or more shares");
  reconstruct->add_option("shares", reconstruct_options.shares, "Share images (sidecars are "
                          "found next to them)")
      ->required();
  reconstruct->add_option("-o,--output", reconstruct_options.output,
                          "Output image path (.png or .ppm)");

  std::vector<std::string> inspect_paths;
  CLI::App *inspect = app.add_subcommand("inspect", "Print share sidecar metadata");
  inspect->add_option("paths", inspect_paths, "Share images or .meta files")->required();

  BenchOptions bench_options;
  CLI::App *bench = app.add_subcommand("bench", "Time sharing/reconstruction on synthetic "
                                                "images");
  bench->add_option("--sizes", bench_options.sizes_mb, "Image sizes in MB");
  bench->add_option("--grid", bench_options.grid, "Threshold grid entries t,n");
  bench->add_option("--runs", bench_options.runs, "Runs per cell (median is reported)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--format", bench_options.report, "Report format")
      ->check(CLI::IsMember({"table", "tsv"}));
  bench->add_option("--share-format", bench_options.share_format, "Share image format")
      ->check(CLI::IsMember({"png", "ppm"}));
  bench->add_option("--dir", bench_options.dir, "Working directory for share files");
  bench->add_option("--seed", bench_options.seed, "Synthetic image seed");
  bench->add_option("--jobs", bench_options.jobs, "Worker threads for share assembly");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    share_options.has_seed = seed_option->count() > 0;
    if (share->parsed()) return cmd_share(share_options);
    if (reconstruct->parsed()) return cmd_reconstruct(reconstruct_options);
    if (inspect->parsed()) return cmd_inspect(inspect_paths);
    if (bench->parsed()) return cmd_bench(bench_options);
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
