#include "metadata.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "errors.hpp"

namespace imgshare {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0xF]);
  }
  return out;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

std::vector<std::uint8_t> from_hex(std::string_view hex, std::size_t expected_bytes,
                                   const std::string &field) {
  if (hex.size() != expected_bytes * 2) {
    raise(IMGSHARE_ERROR_PARSE, "sidecar field '" + field + "' must be " +
                                    std::to_string(expected_bytes * 2) + " hex characters");
  }
  std::vector<std::uint8_t> out(expected_bytes);
  for (std::size_t i = 0; i < expected_bytes; ++i) {
    int hi = hex_value(hex[2 * i]);
    int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      raise(IMGSHARE_ERROR_PARSE, "sidecar field '" + field + "' has non-hex characters");
    }
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::uint64_t parse_number(std::string_view value, const std::string &field) {
  std::uint64_t result = 0;
  const char *begin = value.data();
  const char *end = begin + value.size();
  auto [ptr, ec] = std::from_chars(begin, end, result);
  if (ec != std::errc{} || ptr != end || value.empty()) {
    raise(IMGSHARE_ERROR_PARSE, "sidecar field '" + field + "' is not a valid number");
  }
  return result;
}

std::uint32_t parse_u32(std::string_view value, const std::string &field) {
  std::uint64_t v = parse_number(value, field);
  if (v > 0xFFFFFFFFull) {
    raise(IMGSHARE_ERROR_PARSE, "sidecar field '" + field + "' out of range");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

bool same_session(const SidecarMetadata &a, const SidecarMetadata &b) {
  return a.version == b.version && a.t == b.t && a.n == b.n && a.key_bits == b.key_bits &&
         a.mode == b.mode && a.iv_derivation == b.iv_derivation &&
         a.key_position == b.key_position && a.original_width == b.original_width &&
         a.original_height == b.original_height && a.pad_right == b.pad_right &&
         a.pad_bottom == b.pad_bottom && a.checksum == b.checksum;
}

std::string identifier_hex(Gf64 identifier) { return to_hex(identifier.to_bytes()); }

std::string serialize_metadata(const SidecarMetadata &meta) {
  std::ostringstream out;
  out << "version = " << meta.version << "\n";
  out << "identifier = " << identifier_hex(meta.identifier) << "\n";
  out << "t = " << meta.t << "\n";
  out << "n = " << meta.n << "\n";
  out << "key_bits = " << meta.key_bits << "\n";
  out << "mode = " << to_string(meta.mode) << "\n";
  out << "iv_derivation = " << to_string(meta.iv_derivation) << "\n";
  out << "key_position = " << meta.key_position << "\n";
  out << "original_width = " << meta.original_width << "\n";
  out << "original_height = " << meta.original_height << "\n";
  out << "pad_right = " << meta.pad_right << "\n";
  out << "pad_bottom = " << meta.pad_bottom << "\n";
  out << "checksum_sha256 = " << to_hex(meta.checksum) << "\n";
  return out.str();
}

SidecarMetadata parse_metadata(std::string_view text) {
  std::map<std::string, std::string, std::less<>> fields;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      raise(IMGSHARE_ERROR_PARSE, "sidecar line without '=': '" + std::string(line) + "'");
    }
    std::string key{trim(line.substr(0, eq))};
    std::string value{trim(line.substr(eq + 1))};
    if (key.empty()) raise(IMGSHARE_ERROR_PARSE, "sidecar line with empty key");
    if (!fields.emplace(key, value).second) {
      raise(IMGSHARE_ERROR_PARSE, "duplicate sidecar key '" + key + "'");
    }
  }

  static const char *kKnownKeys[] = {
      "version",        "identifier",      "t",          "n",
      "key_bits",       "mode",            "iv_derivation", "key_position",
      "original_width", "original_height", "pad_right",  "pad_bottom",
      "checksum_sha256"};
  for (const auto &[key, value] : fields) {
    bool known = false;
    for (const char *k : kKnownKeys) {
      if (key == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      raise(IMGSHARE_ERROR_PARSE, "unknown sidecar key '" + key + "'");
    }
  }
  auto get = [&](const char *key) -> const std::string & {
    auto it = fields.find(key);
    if (it == fields.end()) {
      raise(IMGSHARE_ERROR_PARSE, std::string("missing sidecar key '") + key + "'");
    }
    return it->second;
  };

  SidecarMetadata meta;
  meta.version = parse_u32(get("version"), "version");
  if (meta.version != SidecarMetadata::kCurrentVersion) {
    raise(IMGSHARE_ERROR_UNSUPPORTED,
          "unsupported sidecar version " + std::to_string(meta.version) + " (expected " +
              std::to_string(SidecarMetadata::kCurrentVersion) + ")");
  }
  const auto id_bytes = from_hex(get("identifier"), 8, "identifier");
  meta.identifier = Gf64::from_bytes(std::span<const std::uint8_t, 8>(id_bytes.data(), 8));
  meta.t = parse_u32(get("t"), "t");
  meta.n = parse_u32(get("n"), "n");
  meta.key_bits = parse_u32(get("key_bits"), "key_bits");
  try {
    meta.mode = cipher_mode_from_string(get("mode"));
    meta.iv_derivation = iv_derivation_from_string(get("iv_derivation"));
  } catch (const Error &e) {
    raise(IMGSHARE_ERROR_PARSE, std::string("sidecar: ") + e.what());
  }
  meta.key_position = parse_number(get("key_position"), "key_position");
  meta.original_width = parse_u32(get("original_width"), "original_width");
  meta.original_height = parse_u32(get("original_height"), "original_height");
  meta.pad_right = parse_u32(get("pad_right"), "pad_right");
  meta.pad_bottom = parse_u32(get("pad_bottom"), "pad_bottom");
  const auto checksum = from_hex(get("checksum_sha256"), 32, "checksum_sha256");
  std::copy(checksum.begin(), checksum.end(), meta.checksum.begin());

  if (meta.t < 1 || meta.t > meta.n) {
    raise(IMGSHARE_ERROR_PARSE, "sidecar has invalid threshold parameters");
  }
  if (meta.key_bits != 128) {
    raise(IMGSHARE_ERROR_UNSUPPORTED,
          "unsupported key size " + std::to_string(meta.key_bits) + " bits");
  }
  if (meta.identifier.is_zero()) {
    raise(IMGSHARE_ERROR_PARSE, "sidecar identifier must be nonzero");
  }
  if (meta.original_width == 0 || meta.original_height == 0) {
    raise(IMGSHARE_ERROR_PARSE, "sidecar has zero original dimensions");
  }
  return meta;
}

}  // namespace imgshare
