#include "blockcerts/bytes.hpp"

#include "blockcerts/errors.hpp"

#include <sodium.h>

namespace blockcerts {

std::string to_hex(std::span<const std::uint8_t> bytes) {
    std::string out(bytes.size() * 2 + 1, '\0');
    sodium_bin2hex(out.data(), out.size(), bytes.data(), bytes.size());
    out.pop_back();
    return out;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) {
        throw ParseError("hex string has odd length");
    }
    Bytes out(hex.size() / 2);
    std::size_t written = 0;
    const char* end = nullptr;
    if (sodium_hex2bin(out.data(), out.size(), hex.data(), hex.size(), nullptr, &written, &end) != 0 ||
        written != out.size() || end != hex.data() + hex.size()) {
        throw ParseError("invalid hex string");
    }
    return out;
}

Digest digest_from_hex(std::string_view hex) {
    if (hex.size() != 64) {
        throw ParseError("digest must be 64 hex characters, got " + std::to_string(hex.size()));
    }
    const Bytes raw = from_hex(hex);
    Digest d{};
    std::copy(raw.begin(), raw.end(), d.begin());
    return d;
}

Digest sha256(std::span<const std::uint8_t> data) {
    Digest d{};
    crypto_hash_sha256(d.data(), data.data(), data.size());
    return d;
}

Digest sha256(std::string_view data) { return sha256(as_bytes(data)); }

} // namespace blockcerts
