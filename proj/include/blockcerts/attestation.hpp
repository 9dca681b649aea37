#pragma once

// Identity attestations: a certification authority's signed statement that a
// given issuer profile URL and chain address belong to a named institution.
// Hardened verification (hardened.hpp) refuses any issuer without one.

#include "blockcerts/bytes.hpp"
#include "blockcerts/ledger.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace blockcerts {

struct IdentityAttestation {
    std::string subject_name;
    std::string subject_profile_url; ///< the issuer_id this attestation authorizes
    ChainAddress subject_key_address;
    std::string issuer_ca_name;
    EpochSeconds valid_from = 0;
    EpochSeconds valid_to = 0;
    Bytes signature;

    bool operator==(const IdentityAttestation&) const = default;
};

struct TrustAnchor {
    std::string name;
    std::array<std::uint8_t, kPublicKeySize> public_key{};

    bool operator==(const TrustAnchor&) const = default;
};

struct SubjectIdentity {
    std::string name;
    std::string profile_url;
    ChainAddress key_address;
};

/// Sorted-key minified JSON of every attestation field except the signature.
std::string attestation_signed_bytes(const IdentityAttestation& a);

/// Throws InvalidValidityWindow unless valid_from < valid_to.
IdentityAttestation issue_attestation(const Keypair& ca_key, const std::string& ca_name, const SubjectIdentity& subject,
                                      EpochSeconds valid_from, EpochSeconds valid_to);

bool verify_attestation_signature(const IdentityAttestation& a, std::span<const std::uint8_t> ca_public_key);

nlohmann::json to_json(const IdentityAttestation& a);
IdentityAttestation attestation_from_json(const nlohmann::json& j);

class TrustStore {
public:
    TrustStore() = default;

    /// Throws Error if an anchor with the same name already exists.
    void add(TrustAnchor anchor);

    const TrustAnchor* find(std::string_view name) const;
    const std::vector<TrustAnchor>& anchors() const { return anchors_; }
    bool empty() const { return anchors_.empty(); }

    nlohmann::json to_json() const;
    static TrustStore from_json(const nlohmann::json& j);

    static TrustStore load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

private:
    std::vector<TrustAnchor> anchors_;
};

} // namespace blockcerts
