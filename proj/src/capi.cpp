#include <imgshare/imgshare.h>

#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "entropy.hpp"
#include "errors.hpp"
#include "image.hpp"
#include "imagecodec.hpp"
#include "metadata.hpp"
#include "scheme.hpp"

struct imgshare_image {
  imgshare::ImagePayload payload;
};

struct imgshare_params {
  imgshare::SchemeParams params;
  std::optional<std::uint64_t> seed;
};

struct imgshare_bundle {
  imgshare::ShareBundle bundle;
};

namespace {

thread_local std::string g_last_error;

void set_last_error(const char *message) { g_last_error = message; }

// Runs fn, translating core exceptions into status codes.
template <typename Fn>
imgshare_status guarded(Fn &&fn) {
  try {
    fn();
    return IMGSHARE_OK;
  } catch (const imgshare::Error &e) {
    set_last_error(e.what());
    return e.code();
  } catch (const std::bad_alloc &) {
    set_last_error("out of memory");
    return IMGSHARE_ERROR_INTERNAL;
  } catch (const std::exception &e) {
    set_last_error(e.what());
    return IMGSHARE_ERROR_INTERNAL;
  }
}

imgshare_status require(bool condition, const char *message) {
  if (!condition) {
    set_last_error(message);
    return IMGSHARE_ERROR_INVALID_ARGUMENT;
  }
  return IMGSHARE_OK;
}

char *copy_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::unique_ptr<imgshare::EntropySource> make_entropy(const imgshare_params *params) {
  if (params->seed.has_value()) {
    return std::make_unique<imgshare::SeededEntropy>(*params->seed);
  }
  return std::make_unique<imgshare::SystemEntropy>();
}

}  // namespace

extern "C" {

const char *imgshare_version(void) { return "0.1.0"; }

const char *imgshare_status_name(imgshare_status status) {
  switch (status) {
    case IMGSHARE_OK:
      return "ok";
    case IMGSHARE_ERROR_INVALID_ARGUMENT:
      return "invalid argument";
    case IMGSHARE_ERROR_UNSUPPORTED:
      return "unsupported";
    case IMGSHARE_ERROR_PARSE:
      return "parse error";
    case IMGSHARE_ERROR_IO:
      return "i/o error";
    case IMGSHARE_ERROR_INSUFFICIENT_SHARES:
      return "insufficient shares";
    case IMGSHARE_ERROR_INCONSISTENT_SHARES:
      return "inconsistent shares";
    case IMGSHARE_ERROR_VERIFICATION:
      return "verification failed";
    case IMGSHARE_ERROR_ENTROPY:
      return "entropy failure";
    case IMGSHARE_ERROR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char *imgshare_last_error(void) { return g_last_error.c_str(); }

imgshare_status imgshare_image_create(uint32_t width, uint32_t height, const uint8_t *rgb,
                                      size_t rgb_len, imgshare_image **out) {
  if (auto s = require(out != nullptr && rgb != nullptr, "null argument")) return s;
  return guarded([&] {
    std::vector<std::uint8_t> pixels(rgb, rgb + rgb_len);
    auto image = std::make_unique<imgshare_image>();
    image->payload = imgshare::make_payload(width, height, std::move(pixels));
    *out = image.release();
  });
}

imgshare_status imgshare_image_read_file(const char *path, imgshare_image **out) {
  if (auto s = require(path != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] {
    auto image = std::make_unique<imgshare_image>();
    image->payload = imgshare::read_image(path);
    *out = image.release();
  });
}

imgshare_status imgshare_image_write_file(const imgshare_image *image, const char *path,
                                          const char *format) {
  if (auto s = require(image != nullptr && path != nullptr && format != nullptr,
                       "null argument")) {
    return s;
  }
  return guarded([&] {
    imgshare::write_image(image->payload, path, imgshare::image_format_from_string(format));
  });
}

uint32_t imgshare_image_width(const imgshare_image *image) {
  return image != nullptr ? image->payload.width : 0;
}

uint32_t imgshare_image_height(const imgshare_image *image) {
  return image != nullptr ? image->payload.height : 0;
}

imgshare_status imgshare_image_pixels(const imgshare_image *image, const uint8_t **data,
                                      size_t *len) {
  if (auto s = require(image != nullptr && data != nullptr && len != nullptr, "null argument")) {
    return s;
  }
  *data = image->payload.pixels.data();
  *len = image->payload.pixels.size();
  return IMGSHARE_OK;
}

void imgshare_image_free(imgshare_image *image) { delete image; }

imgshare_status imgshare_params_create(uint32_t t, uint32_t n, imgshare_params **out) {
  if (auto s = require(out != nullptr, "null argument")) return s;
  if (auto s = require(t >= 1 && t <= n, "threshold must satisfy 1 <= t <= n")) return s;
  return guarded([&] {
    auto params = std::make_unique<imgshare_params>();
    params->params.t = t;
    params->params.n = n;
    *out = params.release();
  });
}

imgshare_status imgshare_params_set_mode(imgshare_params *params, const char *mode) {
  if (auto s = require(params != nullptr && mode != nullptr, "null argument")) return s;
  return guarded([&] { params->params.mode = imgshare::cipher_mode_from_string(mode); });
}

imgshare_status imgshare_params_set_iv_derivation(imgshare_params *params,
                                                  const char *derivation) {
  if (auto s = require(params != nullptr && derivation != nullptr, "null argument")) return s;
  return guarded(
      [&] { params->params.iv_derivation = imgshare::iv_derivation_from_string(derivation); });
}

imgshare_status imgshare_params_set_key_position(imgshare_params *params, uint64_t bit_offset) {
  if (auto s = require(params != nullptr, "null argument")) return s;
  if (auto s = require(bit_offset % 8 == 0, "key position must be a multiple of 8 bits")) {
    return s;
  }
  params->params.key_position = bit_offset;
  return IMGSHARE_OK;
}

imgshare_status imgshare_params_set_seed(imgshare_params *params, uint64_t seed) {
  if (auto s = require(params != nullptr, "null argument")) return s;
  params->seed = seed;
  return IMGSHARE_OK;
}

imgshare_status imgshare_params_set_jobs(imgshare_params *params, uint32_t jobs) {
  if (auto s = require(params != nullptr, "null argument")) return s;
  if (auto s = require(jobs >= 1, "jobs must be at least 1")) return s;
  params->params.jobs = jobs;
  return IMGSHARE_OK;
}

void imgshare_params_free(imgshare_params *params) { delete params; }

imgshare_status imgshare_generate_shares(const imgshare_image *image,
                                         const imgshare_params *params,
                                         imgshare_bundle **out_bundles) {
  if (auto s = require(image != nullptr && params != nullptr && out_bundles != nullptr,
                       "null argument")) {
    return s;
  }
  return guarded([&] {
    auto entropy = make_entropy(params);
    std::vector<imgshare::ShareBundle> bundles =
        imgshare::generate_shares(image->payload, params->params, *entropy);
    std::vector<std::unique_ptr<imgshare_bundle>> handles;
    handles.reserve(bundles.size());
    for (imgshare::ShareBundle &b : bundles) {
      handles.push_back(std::make_unique<imgshare_bundle>(imgshare_bundle{std::move(b)}));
    }
    for (std::size_t i = 0; i < handles.size(); ++i) {
      out_bundles[i] = handles[i].release();
    }
  });
}

imgshare_status imgshare_reconstruct(const imgshare_bundle *const *bundles, size_t count,
                                     imgshare_image **out_image, char **out_warning) {
  if (auto s = require(bundles != nullptr && out_image != nullptr, "null argument")) return s;
  return guarded([&] {
    std::vector<imgshare::ShareBundle> native;
    native.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (bundles[i] == nullptr) {
        imgshare::raise(IMGSHARE_ERROR_INVALID_ARGUMENT, "null bundle in input");
      }
      native.push_back(bundles[i]->bundle);
    }
    std::vector<std::string> warnings;
    auto image = std::make_unique<imgshare_image>();
    image->payload = imgshare::reconstruct(native, &warnings);
    if (out_warning != nullptr) {
      *out_warning = nullptr;
      if (!warnings.empty()) {
        std::string joined;
        for (const std::string &w : warnings) {
          if (!joined.empty()) joined += "\n";
          joined += w;
        }
        *out_warning = copy_string(joined);
      }
    }
    *out_image = image.release();
  });
}

imgshare_status imgshare_bundle_write(const imgshare_bundle *bundle, const char *image_path,
                                      const char *meta_path, const char *format) {
  if (auto s = require(bundle != nullptr && image_path != nullptr && meta_path != nullptr &&
                           format != nullptr,
                       "null argument")) {
    return s;
  }
  return guarded([&] {
    imgshare::write_bundle(bundle->bundle, image_path, meta_path,
                           imgshare::image_format_from_string(format));
  });
}

imgshare_status imgshare_bundle_read(const char *image_path, const char *meta_path,
                                     imgshare_bundle **out) {
  if (auto s = require(image_path != nullptr && meta_path != nullptr && out != nullptr,
                       "null argument")) {
    return s;
  }
  return guarded([&] {
    auto bundle = std::make_unique<imgshare_bundle>();
    bundle->bundle = imgshare::read_bundle(image_path, meta_path);
    *out = bundle.release();
  });
}

imgshare_status imgshare_bundle_identifier_hex(const imgshare_bundle *bundle, char out[17]) {
  if (auto s = require(bundle != nullptr && out != nullptr, "null argument")) return s;
  const std::string hex = imgshare::identifier_hex(bundle->bundle.metadata.identifier);
  std::memcpy(out, hex.c_str(), 17);
  return IMGSHARE_OK;
}

imgshare_status imgshare_bundle_threshold(const imgshare_bundle *bundle, uint32_t *t,
                                          uint32_t *n) {
  if (auto s = require(bundle != nullptr, "null argument")) return s;
  if (t != nullptr) *t = bundle->bundle.metadata.t;
  if (n != nullptr) *n = bundle->bundle.metadata.n;
  return IMGSHARE_OK;
}

imgshare_status imgshare_bundle_summary(const imgshare_bundle *bundle, char **out_text) {
  if (auto s = require(bundle != nullptr && out_text != nullptr, "null argument")) return s;
  return guarded([&] { *out_text = copy_string(imgshare::inspect(bundle->bundle.metadata)); });
}

imgshare_status imgshare_meta_summary(const char *meta_path, char **out_text) {
  if (auto s = require(meta_path != nullptr && out_text != nullptr, "null argument")) return s;
  return guarded([&] {
    const std::vector<std::uint8_t> bytes = imgshare::read_file(meta_path);
    imgshare::SidecarMetadata meta;
    try {
      meta = imgshare::parse_metadata(
          std::string_view(reinterpret_cast<const char *>(bytes.data()), bytes.size()));
    } catch (const imgshare::Error &e) {
      throw imgshare::Error(e.code(), std::string(meta_path) + ": " + e.what());
    }
    *out_text = copy_string(imgshare::inspect(meta));
  });
}

void imgshare_bundle_free(imgshare_bundle *bundle) { delete bundle; }

void imgshare_string_free(char *text) { std::free(text); }

}  // extern "C"
