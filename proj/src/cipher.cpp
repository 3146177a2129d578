#include "cipher.hpp"

#include <cstring>

#include "aes128.hpp"
#include "errors.hpp"
#include "sha256.hpp"

namespace imgshare {

std::string to_string(CipherMode mode) { return mode == CipherMode::kCbc ? "cbc" : "ofb"; }

std::string to_string(IvDerivation derivation) {
  return derivation == IvDerivation::kSha ? "sha" : "concat";
}

CipherMode cipher_mode_from_string(const std::string &s) {
  if (s == "cbc") return CipherMode::kCbc;
  if (s == "ofb") return CipherMode::kOfb;
  raise(IMGSHARE_ERROR_INVALID_ARGUMENT, "unknown cipher mode '" + s + "' (expected cbc or ofb)");
}

IvDerivation iv_derivation_from_string(const std::string &s) {
  if (s == "sha") return IvDerivation::kSha;
  if (s == "concat") return IvDerivation::kConcat;
  raise(IMGSHARE_ERROR_INVALID_ARGUMENT,
        "unknown iv derivation '" + s + "' (expected sha or concat)");
}

Block derive_iv(Gf64 identifier, IvDerivation derivation) {
  const auto id_bytes = identifier.to_bytes();
  Block iv;
  if (derivation == IvDerivation::kSha) {
    const auto digest = Sha256::digest(id_bytes);
    std::memcpy(iv.data(), digest.data(), iv.size());
  } else {
    std::memcpy(iv.data(), id_bytes.data(), 8);
    std::memcpy(iv.data() + 8, id_bytes.data(), 8);
  }
  return iv;
}

namespace {

void check_aligned(std::size_t size, const char *what) {
  if (size % Aes128::kBlockSize != 0) {
    raise(IMGSHARE_ERROR_INVALID_ARGUMENT,
          std::string(what) + " not block-aligned: " + std::to_string(size) +
              " bytes is not a multiple of 16");
  }
}

std::vector<std::uint8_t> ofb_xor(std::span<const std::uint8_t> input, const Aes128 &aes,
                                  const Block &iv) {
  std::vector<std::uint8_t> out(input.size());
  Block feedback = iv;
  for (std::size_t off = 0; off < input.size(); off += 16) {
    aes.encrypt_block(feedback.data(), feedback.data());
    for (std::size_t i = 0; i < 16; ++i) out[off + i] = input[off + i] ^ feedback[i];
  }
  return out;
}

}  // namespace

std::vector<std::uint8_t> encrypt(std::span<const std::uint8_t> plaintext,
                                  std::span<const std::uint8_t, 16> key, const Block &iv,
                                  CipherMode mode) {
  check_aligned(plaintext.size(), "plaintext");
  Aes128 aes(key);
  if (mode == CipherMode::kOfb) return ofb_xor(plaintext, aes, iv);

  std::vector<std::uint8_t> out(plaintext.size());
  Block chain = iv;
  for (std::size_t off = 0; off < plaintext.size(); off += 16) {
    for (std::size_t i = 0; i < 16; ++i) chain[i] ^= plaintext[off + i];
    aes.encrypt_block(chain.data(), chain.data());
    std::memcpy(out.data() + off, chain.data(), 16);
  }
  return out;
}

std::vector<std::uint8_t> decrypt(std::span<const std::uint8_t> ciphertext,
                                  std::span<const std::uint8_t, 16> key, const Block &iv,
                                  CipherMode mode) {
  check_aligned(ciphertext.size(), "ciphertext");
  Aes128 aes(key);
  if (mode == CipherMode::kOfb) return ofb_xor(ciphertext, aes, iv);

  std::vector<std::uint8_t> out(ciphertext.size());
  Block chain = iv;
  Block plain;
  for (std::size_t off = 0; off < ciphertext.size(); off += 16) {
    aes.decrypt_block(ciphertext.data() + off, plain.data());
    for (std::size_t i = 0; i < 16; ++i) out[off + i] = plain[i] ^ chain[i];
    std::memcpy(chain.data(), ciphertext.data() + off, 16);
  }
  return out;
}

}  // namespace imgshare
