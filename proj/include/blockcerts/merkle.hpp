#pragma once

#include "blockcerts/bytes.hpp"

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <vector>

namespace blockcerts {

/// Which side of the running hash the sibling sits on.
enum class Side { left, right };

struct MerkleProofStep {
    Side side;
    Digest sibling_hash;

    bool operator==(const MerkleProofStep&) const = default;
};

using MerkleProof = std::vector<MerkleProofStep>;

struct MerkleReceipt {
    Digest target_hash{};
    MerkleProof proof; ///< leaf to root; empty for a single-certificate batch
    Digest merkle_root{};
    std::string transaction_id;

    bool operator==(const MerkleReceipt&) const = default;
};

struct LeafProof {
    MerkleProof proof;
    Digest root{};
};

struct MerkleTree {
    Digest root{};
    std::vector<LeafProof> proofs; ///< one per leaf, input order
};

/// Internal node = SHA-256(left || right); an odd node at the end of a level
/// is promoted unchanged. Leaves are used as given. Throws EmptyBatch.
MerkleTree build_tree(std::span<const Digest> leaves);

/// Folds target_hash through the proof and compares with merkle_root.
bool verify_proof(const MerkleReceipt& receipt);

MerkleReceipt make_receipt(const Digest& leaf, const LeafProof& proof, std::string transaction_id);

nlohmann::json to_json(const MerkleReceipt& receipt);
MerkleReceipt receipt_from_json(const nlohmann::json& j);

} // namespace blockcerts
