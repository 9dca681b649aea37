#include "blockcerts/issuance.hpp"

#include "blockcerts/errors.hpp"
#include "blockcerts/merkle.hpp"

namespace blockcerts {

IssuedBatch issue_batch(std::vector<BlockcertsCertificate> certificates, const Keypair& issuer,
                        const ChainAddress& recipient, AnchorLedger& ledger, EpochSeconds timestamp) {
    if (certificates.empty()) {
        throw EmptyBatch();
    }
    std::vector<Digest> leaves;
    leaves.reserve(certificates.size());
    for (auto& cert : certificates) {
        cert.receipt.reset();
        leaves.push_back(certificate_hash(cert));
    }
    const MerkleTree tree = build_tree(leaves);

    IssuedBatch out;
    out.transaction = ledger.submit_anchor(issuer, recipient, tree.root, timestamp);
    for (std::size_t i = 0; i < certificates.size(); ++i) {
        certificates[i].receipt = make_receipt(leaves[i], tree.proofs[i], out.transaction.transaction_id);
    }
    out.certificates = std::move(certificates);
    return out;
}

IssuerProfileDocument make_issuer_profile(const IssuerIdentity& identity, const ChainAddress& key,
                                          EpochSeconds key_created) {
    IssuerProfileDocument doc;
    doc.name = identity.name;
    doc.url = identity.url;
    doc.email = identity.email;
    doc.image = identity.image;
    doc.public_keys.push_back(ProfileKey{key, key_created, std::nullopt, std::nullopt});
    doc.revocation_list = identity.revocation_list;
    return doc;
}

IssuerProfileRef issuer_ref(const IssuerIdentity& identity) {
    IssuerProfileRef ref;
    ref.issuer_id = identity.profile_url;
    ref.issuer_name = identity.name;
    ref.issuer_url = identity.url;
    ref.issuer_email = identity.email;
    ref.revocation_list = identity.revocation_list;
    return ref;
}

} // namespace blockcerts
