#pragma once

// Issuer impersonation: an attacker with its own keypair and its own web
// hosting publishes a profile that copies a real institution's name, URL and
// email but lists the attacker's key, points a certificate's issuer_id at
// that profile, and anchors the certificate with the attacker's key. Every
// baseline step checks out because each check is internally consistent; none
// of them asks who owns the key.

#include "blockcerts/credential.hpp"
#include "blockcerts/issuance.hpp"
#include "blockcerts/ledger.hpp"
#include "blockcerts/registry.hpp"
#include "blockcerts/verifier.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace blockcerts {

struct VictimIdentity {
    std::string name;
    std::string url;
    std::string email;
    std::string profile_url; ///< the institution's genuine hosted profile

    bool operator==(const VictimIdentity&) const = default;
};

struct ForgeOptions {
    /// Seeds the attacker keys; random when absent.
    std::optional<Bytes> seed;
    /// 1 mirrors the original demonstration; larger batches show the attack
    /// does not depend on batching.
    std::size_t batch_size = 1;
    /// Defaults to a lookalike page on a free hosting domain.
    std::optional<std::string> fake_profile_url;
};

struct ForgeryScenario {
    std::string victim_name;
    std::string victim_real_profile_url;
    Keypair attacker_keypair;
    std::string fake_profile_url;
    std::string fake_revocation_url;
    BlockcertsCertificate forged_certificate;   ///< first certificate of the batch
    std::vector<BlockcertsCertificate> batch;   ///< every forged certificate
    LedgerTransaction anchor_tx;
};

std::string default_fake_profile_url(const VictimIdentity& victim);

/// Publishes the fake profile (and an empty revocation list next to it),
/// builds and anchors the forged certificate(s). Throws Error if the fake URL
/// equals the victim's real profile URL.
ForgeryScenario forge(const VictimIdentity& victim, const RecipientProfile& recipient, const BadgeClass& badge_template,
                      ProfileRegistry& registry, AnchorLedger& ledger, EpochSeconds timestamp,
                      const ForgeOptions& options = {});

/// Side-by-side step table for the two verifiers, naming where they diverge.
std::string report_differential(const ForgeryScenario& scenario, const VerificationReport& baseline,
                                const VerificationReport& hardened);

VictimIdentity victim_from_json(const nlohmann::json& j);
nlohmann::json to_json(const VictimIdentity& v);

} // namespace blockcerts
