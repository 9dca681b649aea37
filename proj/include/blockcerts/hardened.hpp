#pragma once

#include "blockcerts/attestation.hpp"
#include "blockcerts/verifier.hpp"

namespace blockcerts {

/// Authenticity check that trusts an issuer only through a CA attestation:
/// the profile must embed an attestation signed by a trust-store anchor,
/// binding the certificate's issuer_id to the transaction signer, and valid
/// at the transaction time. The hosted-profile key check still runs after it.
StepOutcome check_attested_issuer(const AuthenticityContext& ctx, const TrustStore& trust_store);

/// Baseline steps with CheckAuthenticity replaced by check_attested_issuer.
VerificationReport verify_hardened(const BlockcertsCertificate& cert, const AnchorLedger& ledger,
                                   const ProfileResolver& registry, const TrustStore& trust_store, EpochSeconds now);

} // namespace blockcerts
