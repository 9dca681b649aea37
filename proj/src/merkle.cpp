#include "blockcerts/merkle.hpp"

#include "blockcerts/errors.hpp"
#include "blockcerts/simd/pair_hash.hpp"

namespace blockcerts {

MerkleTree build_tree(std::span<const Digest> leaves) {
    if (leaves.empty()) {
        throw EmptyBatch();
    }

    MerkleTree tree;
    tree.proofs.resize(leaves.size());
    std::vector<std::size_t> position(leaves.size());
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        position[i] = i;
    }

    std::vector<Digest> level(leaves.begin(), leaves.end());
    std::vector<Digest> next;
    while (level.size() > 1) {
        const std::size_t pairs = level.size() / 2;
        const bool odd = level.size() % 2 == 1;

        for (std::size_t leaf = 0; leaf < leaves.size(); ++leaf) {
            const std::size_t idx = position[leaf];
            if (idx % 2 == 0 && idx + 1 < level.size()) {
                tree.proofs[leaf].proof.push_back({Side::right, level[idx + 1]});
            } else if (idx % 2 == 1) {
                tree.proofs[leaf].proof.push_back({Side::left, level[idx - 1]});
            }
            position[leaf] = idx / 2;
        }

        next.resize(pairs + (odd ? 1 : 0));
        simd::hash_pairs(std::span<const Digest>(level.data(), 2 * pairs), std::span<Digest>(next.data(), pairs));
        if (odd) {
            next.back() = level.back();
        }
        level.swap(next);
    }

    tree.root = level.front();
    for (auto& p : tree.proofs) {
        p.root = tree.root;
    }
    return tree;
}

bool verify_proof(const MerkleReceipt& receipt) {
    Digest running = receipt.target_hash;
    for (const auto& step : receipt.proof) {
        running = step.side == Side::left ? simd::hash_pair(step.sibling_hash, running)
                                          : simd::hash_pair(running, step.sibling_hash);
    }
    return running == receipt.merkle_root;
}

MerkleReceipt make_receipt(const Digest& leaf, const LeafProof& proof, std::string transaction_id) {
    return MerkleReceipt{leaf, proof.proof, proof.root, std::move(transaction_id)};
}

nlohmann::json to_json(const MerkleReceipt& receipt) {
    nlohmann::json proof = nlohmann::json::array();
    for (const auto& step : receipt.proof) {
        proof.push_back({{"side", step.side == Side::left ? "left" : "right"}, {"hash", to_hex(step.sibling_hash)}});
    }
    return {
        {"targetHash", to_hex(receipt.target_hash)},
        {"proof", std::move(proof)},
        {"merkleRoot", to_hex(receipt.merkle_root)},
        {"transactionId", receipt.transaction_id},
    };
}

MerkleReceipt receipt_from_json(const nlohmann::json& j) {
    try {
        MerkleReceipt r;
        r.target_hash = digest_from_hex(j.at("targetHash").get<std::string>());
        r.merkle_root = digest_from_hex(j.at("merkleRoot").get<std::string>());
        r.transaction_id = j.at("transactionId").get<std::string>();
        for (const auto& step : j.at("proof")) {
            const auto side = step.at("side").get<std::string>();
            if (side != "left" && side != "right") {
                throw ParseError("proof step side must be left or right, got " + side);
            }
            r.proof.push_back({side == "left" ? Side::left : Side::right,
                               digest_from_hex(step.at("hash").get<std::string>())});
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("receipt: ") + e.what());
    }
}

} // namespace blockcerts
