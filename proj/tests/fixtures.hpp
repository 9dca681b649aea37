#pragma once

#include "blockcerts/attack.hpp"
#include "blockcerts/attestation.hpp"
#include "blockcerts/credential.hpp"
#include "blockcerts/hardened.hpp"
#include "blockcerts/issuance.hpp"
#include "blockcerts/ledger.hpp"
#include "blockcerts/registry.hpp"
#include "blockcerts/verifier.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace fixtures {

using namespace blockcerts;

inline constexpr EpochSeconds kNow = 1'700'000'000;
inline constexpr EpochSeconds kDay = 86'400;

Keypair seeded_keypair(std::string_view label);

IssuerIdentity university_identity(const std::string& base = "mock://university.example");
DiplomaSupplement sample_supplement();
BadgeClass sample_badge(const IssuerIdentity& issuer);
RecipientProfile sample_recipient(std::string_view label);

/// Unsigned certificate that satisfies every model rule, with every optional
/// part populated.
BlockcertsCertificate sample_certificate(const std::string& assertion_id = "urn:uuid:0f6d1c9a-demo-0001",
                                         const IssuerIdentity& issuer = university_identity());

/// A complete honest environment: ledger, hosted registry, a CA in the trust
/// store, and one issuer whose attested profile is published.
class World {
public:
    explicit World(std::string_view label = "world", EpochSeconds now = kNow,
                   const std::string& issuer_base = "mock://university.example");

    /// Profile with the issuer key created 30 days ago and, when `attested`,
    /// an attestation valid for a year either side of now.
    void publish_issuer(bool attested = true);

    /// Issues n fresh certificates in one batch anchored at `at` (default now).
    IssuedBatch issue(std::size_t n, std::optional<EpochSeconds> at = std::nullopt);

    VerificationReport baseline(const BlockcertsCertificate& cert) const;
    VerificationReport hardened(const BlockcertsCertificate& cert) const;

    IssuerProfileDocument profile() const { return registry.resolve_profile(issuer.profile_url); }
    void republish(const IssuerProfileDocument& doc) { registry.publish(issuer.profile_url, doc); }

    std::string label;
    EpochSeconds now;
    SimulatedLedger ledger;
    ProfileRegistry registry;
    Keypair ca;
    std::string ca_name = "Accredited Trust Service Provider";
    TrustStore trust;
    Keypair issuer_key;
    IssuerIdentity issuer;

private:
    std::size_t batches_ = 0;
};

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(std::string_view tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& p);

} // namespace fixtures
