#include "blockcerts/hardened.hpp"

namespace blockcerts {

StepOutcome check_attested_issuer(const AuthenticityContext& ctx, const TrustStore& trust_store) {
    const auto& attestation = ctx.profile.attestation;
    if (!attestation) {
        return {false, "issuer profile carries no identity attestation"};
    }
    const TrustAnchor* anchor = trust_store.find(attestation->issuer_ca_name);
    if (anchor == nullptr) {
        return {false, "attestation issued by '" + attestation->issuer_ca_name + "', which is not a trusted anchor"};
    }
    if (!verify_attestation_signature(*attestation, anchor->public_key)) {
        return {false, "attestation signature does not verify under '" + anchor->name + "'"};
    }
    const std::string& issuer_id = ctx.cert.assertion.badge.issuer.issuer_id;
    if (attestation->subject_profile_url != issuer_id) {
        return {false, "attestation covers profile " + attestation->subject_profile_url + ", certificate names " +
                           issuer_id};
    }
    if (attestation->subject_key_address != ctx.transaction.from_address) {
        return {false, "attestation binds key " + attestation->subject_key_address.hex() +
                           ", transaction was signed by " + ctx.transaction.from_address.hex()};
    }
    const EpochSeconds t = ctx.transaction.timestamp;
    if (t < attestation->valid_from || t >= attestation->valid_to) {
        return {false, "transaction at " + std::to_string(t) + " lies outside attestation validity [" +
                           std::to_string(attestation->valid_from) + ", " + std::to_string(attestation->valid_to) +
                           ")"};
    }

    StepOutcome key_check = check_profile_key_binding(ctx);
    if (!key_check.ok) {
        return key_check;
    }
    return {true, "issuer '" + attestation->subject_name + "' attested by '" + anchor->name + "'; " + key_check.detail};
}

VerificationReport verify_hardened(const BlockcertsCertificate& cert, const AnchorLedger& ledger,
                                   const ProfileResolver& registry, const TrustStore& trust_store, EpochSeconds now) {
    return run_verification(cert, ledger, registry, now,
                            [&](const AuthenticityContext& ctx) { return check_attested_issuer(ctx, trust_store); });
}

} // namespace blockcerts
