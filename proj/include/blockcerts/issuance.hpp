#pragma once

#include "blockcerts/credential.hpp"
#include "blockcerts/ledger.hpp"
#include "blockcerts/registry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace blockcerts {

struct IssuedBatch {
    std::vector<BlockcertsCertificate> certificates; ///< input order, receipts attached
    LedgerTransaction transaction;
};

/// Hashes every certificate, builds one Merkle tree, anchors its root in a
/// single transaction and attaches a receipt to each certificate. All
/// certificates are validated before anything is written to the ledger.
/// Throws EmptyBatch or InvalidCertificate.
IssuedBatch issue_batch(std::vector<BlockcertsCertificate> certificates, const Keypair& issuer,
                        const ChainAddress& recipient, AnchorLedger& ledger, EpochSeconds timestamp);

struct IssuerIdentity {
    std::string name;
    std::string url;
    std::string email;
    std::string profile_url;     ///< where the hosted profile lives (the issuer_id)
    std::string revocation_list; ///< where the revocation list lives
    std::optional<std::string> image;
};

/// Profile document publishing a single key created at `key_created`.
IssuerProfileDocument make_issuer_profile(const IssuerIdentity& identity, const ChainAddress& key,
                                          EpochSeconds key_created);

/// IssuerProfileRef for certificates issued under `identity`.
IssuerProfileRef issuer_ref(const IssuerIdentity& identity);

} // namespace blockcerts
