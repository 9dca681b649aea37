#pragma once

#include "blockcerts/bytes.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace blockcerts {

/// The one signature scheme used repo-wide; recorded in every transaction.
inline constexpr std::string_view kSignatureScheme = "ed25519";

inline constexpr std::size_t kPublicKeySize = 32;
inline constexpr std::size_t kSignatureSize = 64;

struct Keypair {
    std::array<std::uint8_t, 32> private_key{}; ///< Ed25519 seed
    std::array<std::uint8_t, kPublicKeySize> public_key{};

    bool operator==(const Keypair&) const = default;
};

/// Hashed-down public identifier of a key: last 20 bytes of SHA-256(public key).
class ChainAddress {
public:
    static constexpr std::size_t kSize = 20;

    ChainAddress() = default;
    explicit ChainAddress(std::array<std::uint8_t, kSize> raw) : raw_(raw) {}

    /// Throws ParseError unless `hex` is exactly 40 hex characters.
    static ChainAddress parse(std::string_view hex);

    std::string hex() const { return to_hex(raw_); }
    const std::array<std::uint8_t, kSize>& bytes() const { return raw_; }

    auto operator<=>(const ChainAddress&) const = default;

private:
    std::array<std::uint8_t, kSize> raw_{};
};

/// Deterministic when `seed` is given (any length; it is hashed to 32 bytes),
/// otherwise drawn from the OS CSPRNG.
Keypair generate_keypair(std::optional<std::span<const std::uint8_t>> seed = std::nullopt);

/// Throws MalformedKey unless `public_key` is a valid 32-byte Ed25519 point.
ChainAddress derive_address(std::span<const std::uint8_t> public_key);
inline ChainAddress address_of(const Keypair& kp) { return derive_address(kp.public_key); }

Bytes sign(const Keypair& kp, std::span<const std::uint8_t> message);
bool verify_signature(std::span<const std::uint8_t> public_key, std::span<const std::uint8_t> message,
                      std::span<const std::uint8_t> signature);

nlohmann::json to_json(const Keypair& kp);
Keypair keypair_from_json(const nlohmann::json& j);

struct LedgerTransaction {
    std::string transaction_id;
    EpochSeconds timestamp = 0;
    ChainAddress from_address;
    ChainAddress to_address;
    Digest payload{}; ///< the anchored Merkle root
    std::string scheme{kSignatureScheme};
    Bytes signature;
    Bytes signer_public_key;

    bool operator==(const LedgerTransaction&) const = default;
};

/// Bytes covered by the signature: timestamp (8 bytes, big endian) ||
/// from || to || payload.
Bytes signing_message(EpochSeconds timestamp, const ChainAddress& from, const ChainAddress& to,
                      const Digest& payload);

/// Hex SHA-256 of signing_message || signature || signer_public_key.
std::string compute_transaction_id(const LedgerTransaction& tx);

/// Checks signature, from-address binding and id. Returns an empty string
/// when consistent, otherwise a description of the first problem.
std::string check_transaction(const LedgerTransaction& tx);

nlohmann::json to_json(const LedgerTransaction& tx);
LedgerTransaction transaction_from_json(const nlohmann::json& j);

/// The anchoring seam. A client for a real chain would implement this; the
/// verifiers only ever call get_transaction.
class AnchorLedger {
public:
    virtual ~AnchorLedger() = default;

    virtual LedgerTransaction submit_anchor(const Keypair& issuer, const ChainAddress& recipient,
                                            const Digest& merkle_root, EpochSeconds timestamp) = 0;

    /// Throws TransactionNotFound.
    virtual LedgerTransaction get_transaction(std::string_view transaction_id) const = 0;
};

/// Append-only in-memory chain. When opened on a file, existing transactions
/// are replayed (and checked) and each new one is appended as a JSON line.
class SimulatedLedger final : public AnchorLedger {
public:
    SimulatedLedger() = default;
    static SimulatedLedger open(const std::filesystem::path& path);

    SimulatedLedger(SimulatedLedger&& other) noexcept;
    SimulatedLedger& operator=(SimulatedLedger&&) = delete;

    LedgerTransaction submit_anchor(const Keypair& issuer, const ChainAddress& recipient, const Digest& merkle_root,
                                    EpochSeconds timestamp) override;
    LedgerTransaction get_transaction(std::string_view transaction_id) const override;

    /// Appends an externally built transaction after checking it.
    void append(const LedgerTransaction& tx);

    std::size_t size() const;
    std::vector<LedgerTransaction> transactions() const;

private:
    mutable std::shared_mutex mutex_;
    std::vector<LedgerTransaction> chain_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::optional<std::filesystem::path> file_;
};

} // namespace blockcerts
