#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blockcerts {

using Bytes = std::vector<std::uint8_t>;

/// SHA-256 output.
using Digest = std::array<std::uint8_t, 32>;

/// UTC seconds since the epoch. Every timestamp in the protocol uses this.
using EpochSeconds = std::int64_t;

std::string to_hex(std::span<const std::uint8_t> bytes);

/// Parses lowercase or uppercase hex. Throws ParseError on odd length or
/// non-hex characters.
Bytes from_hex(std::string_view hex);

/// Parses exactly 64 hex characters.
Digest digest_from_hex(std::string_view hex);

inline std::string to_hex(const Digest& d) { return to_hex(std::span<const std::uint8_t>(d)); }

Digest sha256(std::span<const std::uint8_t> data);
Digest sha256(std::string_view data);

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

} // namespace blockcerts
