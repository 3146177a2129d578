#include "scheme.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "errors.hpp"
#include "gf64.hpp"
#include "shamir.hpp"
#include "sha256.hpp"

namespace imgshare {

namespace {

constexpr std::size_t kIdentifierRetries = 1000;

std::vector<Gf64> draw_identifiers(std::size_t n, EntropySource &entropy) {
  std::vector<Gf64> ids;
  ids.reserve(n);
  std::size_t attempts = 0;
  while (ids.size() < n) {
    if (++attempts > kIdentifierRetries * (n + 1)) {
      raise(IMGSHARE_ERROR_ENTROPY, "could not draw distinct nonzero identifiers");
    }
    Gf64 candidate{entropy.next_u64()};
    if (candidate.is_zero()) continue;
    if (std::find(ids.begin(), ids.end(), candidate) != ids.end()) continue;
    ids.push_back(candidate);
  }
  return ids;
}

void validate_params(const SchemeParams &params, const ImagePayload &image) {
  if (params.t < 1 || params.t > params.n) {
    raise(IMGSHARE_ERROR_INVALID_ARGUMENT,
          "threshold must satisfy 1 <= t <= n (got t=" + std::to_string(params.t) +
              ", n=" + std::to_string(params.n) + ")");
  }
  if (image.width == 0 || image.height == 0 || image.pixels.empty()) {
    raise(IMGSHARE_ERROR_INVALID_ARGUMENT, "cannot share an empty image");
  }
  if (params.key_position % 8 != 0) {
    raise(IMGSHARE_ERROR_INVALID_ARGUMENT,
          "key position must be a multiple of 8 bits");
  }
}

Gf64 chunk_at(std::span<const std::uint8_t> bytes, std::size_t offset) {
  return Gf64::from_bytes(std::span<const std::uint8_t, 8>(bytes.data() + offset, 8));
}

}  // namespace

std::vector<ShareBundle> generate_shares(const ImagePayload &image, const SchemeParams &params,
                                         EntropySource &entropy) {
  validate_params(params, image);

  auto padded_result = pad_to_alignment(image, entropy);
  const ImagePayload &padded = padded_result.first;
  const PaddingRecord &record = padded_result.second;
  const std::size_t total_bits = padded.bit_count();
  if (params.key_position + SchemeParams::kKeyBits > total_bits) {
    raise(IMGSHARE_ERROR_INVALID_ARGUMENT,
          "key position " + std::to_string(params.key_position) + " leaves no room for " +
              std::to_string(SchemeParams::kKeyBits) + " key bits in " +
              std::to_string(total_bits) + " total");
  }

  // K = the M key bits of B; the remaining N - M bits are the plaintext.
  const std::size_t key_byte = params.key_position / 8;
  const std::vector<std::uint8_t> &stream = padded.pixels;
  std::array<std::uint8_t, SchemeParams::kKeyBytes> key;
  std::copy_n(stream.begin() + key_byte, key.size(), key.begin());
  std::vector<std::uint8_t> tail;
  tail.reserve(stream.size() - key.size());
  tail.insert(tail.end(), stream.begin(), stream.begin() + key_byte);
  tail.insert(tail.end(), stream.begin() + key_byte + key.size(), stream.end());

  const std::vector<Gf64> identifiers = draw_identifiers(params.n, entropy);

  // One Shamir instance per 64-bit key chunk.
  std::array<std::vector<shamir::Share<Gf64>>, SchemeParams::kKeyChunks> chunk_shares;
  for (std::uint32_t j = 0; j < SchemeParams::kKeyChunks; ++j) {
    chunk_shares[j] = shamir::split(chunk_at(key, 8 * j), params.t, params.n,
                                    std::span<const Gf64>(identifiers), entropy);
  }

  SidecarMetadata session;
  session.t = params.t;
  session.n = params.n;
  session.key_bits = SchemeParams::kKeyBits;
  session.mode = params.mode;
  session.iv_derivation = params.iv_derivation;
  session.key_position = params.key_position;
  session.original_width = image.width;
  session.original_height = image.height;
  session.pad_right = record.pad_right;
  session.pad_bottom = record.pad_bottom;
  session.checksum = Sha256::digest(image.pixels);

  auto assemble = [&](std::uint32_t i) -> ShareBundle {
    const Block iv = derive_iv(identifiers[i], params.iv_derivation);
    std::vector<std::uint8_t> body =
        encrypt(tail, std::span<const std::uint8_t, 16>(key.data(), 16), iv, params.mode);

    std::vector<std::uint8_t> share_stream;
    share_stream.reserve(stream.size());
    for (std::uint32_t j = 0; j < SchemeParams::kKeyChunks; ++j) {
      const auto value_bytes = chunk_shares[j][i].value.to_bytes();
      share_stream.insert(share_stream.end(), value_bytes.begin(), value_bytes.end());
    }
    share_stream.insert(share_stream.end(), body.begin(), body.end());

    ShareBundle bundle;
    bundle.metadata = session;
    bundle.metadata.identifier = identifiers[i];
    bundle.share_image = make_payload(padded.width, padded.height, std::move(share_stream));
    return bundle;
  };

  std::vector<ShareBundle> bundles(params.n);
  if (params.jobs > 1 && params.n > 1) {
    std::vector<std::future<ShareBundle>> futures;
    futures.reserve(params.n);
    for (std::uint32_t i = 0; i < params.n; ++i) {
      futures.push_back(std::async(std::launch::async, assemble, i));
    }
    for (std::uint32_t i = 0; i < params.n; ++i) bundles[i] = futures[i].get();
  } else {
    for (std::uint32_t i = 0; i < params.n; ++i) bundles[i] = assemble(i);
  }
  return bundles;
}

ImagePayload reconstruct(std::span<const ShareBundle> bundles,
                         std::vector<std::string> *warnings) {
  if (bundles.empty()) {
    raise(IMGSHARE_ERROR_INSUFFICIENT_SHARES, "no shares given");
  }
  const SidecarMetadata &session = bundles[0].metadata;
  const std::size_t t = session.t;
  if (bundles.size() < t) {
    raise(IMGSHARE_ERROR_INSUFFICIENT_SHARES,
          "insufficient shares: this session needs " + std::to_string(t) + ", got " +
              std::to_string(bundles.size()));
  }
  for (std::size_t i = 1; i < bundles.size(); ++i) {
    if (!same_session(session, bundles[i].metadata)) {
      raise(IMGSHARE_ERROR_INCONSISTENT_SHARES,
            "shares come from different sessions (share " + std::to_string(i + 1) +
                " disagrees on session parameters)");
    }
  }

  const std::uint32_t padded_w = session.original_width + session.pad_right;
  const std::uint32_t padded_h = session.original_height + session.pad_bottom;
  const std::size_t expected_bytes = std::size_t{3} * padded_w * padded_h;
  for (const ShareBundle &b : bundles) {
    if (b.share_image.width != padded_w || b.share_image.height != padded_h ||
        b.share_image.byte_count() != expected_bytes) {
      raise(IMGSHARE_ERROR_INCONSISTENT_SHARES,
            "share image dimensions do not match the session metadata");
    }
  }

  // Slice each share prefix into the two Shamir values and interpolate
  // the key chunks.
  std::array<std::uint8_t, SchemeParams::kKeyBytes> key;
  for (std::uint32_t j = 0; j < SchemeParams::kKeyChunks; ++j) {
    std::vector<shamir::Share<Gf64>> shares;
    shares.reserve(bundles.size());
    for (const ShareBundle &b : bundles) {
      shares.push_back({b.metadata.identifier, chunk_at(b.share_image.pixels, 8 * j)});
    }
    const auto result = shamir::reconstruct(std::span<const shamir::Share<Gf64>>(shares), t);
    if (!result.surplus_consistent && warnings != nullptr) {
      warnings->push_back("surplus shares disagree with the reconstruction polynomial for "
                          "key chunk " +
                          std::to_string(j + 1));
    }
    const auto chunk_bytes = result.secret.to_bytes();
    std::copy(chunk_bytes.begin(), chunk_bytes.end(), key.begin() + 8 * j);
  }

  // One participant's ciphertext suffices; take the first and verify the
  // result against the session checksum.
  const ShareBundle &source = bundles[0];
  const Block iv = derive_iv(source.metadata.identifier, session.iv_derivation);
  std::span<const std::uint8_t> body(source.share_image.pixels.data() + SchemeParams::kKeyBytes,
                                     source.share_image.byte_count() -
                                         SchemeParams::kKeyBytes);
  std::vector<std::uint8_t> tail =
      decrypt(body, std::span<const std::uint8_t, 16>(key.data(), 16), iv, session.mode);

  // Reinsert the key bits at their position in B.
  const std::size_t key_byte = session.key_position / 8;
  std::vector<std::uint8_t> stream;
  stream.reserve(tail.size() + key.size());
  stream.insert(stream.end(), tail.begin(), tail.begin() + key_byte);
  stream.insert(stream.end(), key.begin(), key.end());
  stream.insert(stream.end(), tail.begin() + key_byte, tail.end());

  ImagePayload padded = make_payload(padded_w, padded_h, std::move(stream));
  PaddingRecord record{session.pad_right, session.pad_bottom, session.original_width,
                       session.original_height};
  ImagePayload original = crop_padding(padded, record);

  if (Sha256::digest(original.pixels) != session.checksum) {
    raise(IMGSHARE_ERROR_VERIFICATION,
          "reconstruction failed - wrong or corrupted shares (checksum mismatch)");
  }
  return original;
}

std::string inspect(const SidecarMetadata &meta) {
  std::ostringstream out;
  out << "identifier       : " << identifier_hex(meta.identifier) << "\n";
  out << "threshold        : " << meta.t << " of " << meta.n << " shares\n";
  out << "cipher           : aes-128-" << to_string(meta.mode) << ", iv derivation "
      << to_string(meta.iv_derivation) << "\n";
  out << "key bits         : " << meta.key_bits << " at bit position " << meta.key_position
      << "\n";
  out << "original size    : " << meta.original_width << " x " << meta.original_height << "\n";
  out << "padded size      : " << meta.original_width + meta.pad_right << " x "
      << meta.original_height + meta.pad_bottom << " (pad right " << meta.pad_right
      << ", bottom " << meta.pad_bottom << ")\n";
  out << "format version   : " << meta.version << "\n";
  std::string checksum;
  for (std::uint8_t b : meta.checksum) {
    checksum.push_back("0123456789abcdef"[b >> 4]);
    checksum.push_back("0123456789abcdef"[b & 0xF]);
  }
  out << "original sha-256 : " << checksum << "\n";
  return out.str();
}

void write_bundle(const ShareBundle &bundle, const std::filesystem::path &image_path,
                  const std::filesystem::path &meta_path, ImageFormat format) {
  write_image(bundle.share_image, image_path, format);
  const std::string text = serialize_metadata(bundle.metadata);
  write_file(meta_path, std::span<const std::uint8_t>(
                            reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
}

ShareBundle read_bundle(const std::filesystem::path &image_path,
                        const std::filesystem::path &meta_path) {
  ShareBundle bundle;
  bundle.share_image = read_image(image_path);
  const std::vector<std::uint8_t> meta_bytes = read_file(meta_path);
  try {
    bundle.metadata = parse_metadata(
        std::string_view(reinterpret_cast<const char *>(meta_bytes.data()), meta_bytes.size()));
  } catch (const Error &e) {
    throw Error(e.code(), meta_path.string() + ": " + e.what());
  }
  return bundle;
}

}  // namespace imgshare
