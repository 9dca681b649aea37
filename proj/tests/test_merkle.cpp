#include "blockcerts/errors.hpp"
#include "blockcerts/merkle.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace blockcerts;

namespace {

Digest random_digest(std::mt19937_64& rng) {
    Digest d{};
    for (auto& b : d) {
        b = static_cast<std::uint8_t>(rng());
    }
    return d;
}

std::vector<Digest> random_leaves(std::mt19937_64& rng, std::size_t n) {
    std::vector<Digest> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(random_digest(rng));
    }
    return out;
}

} // namespace

TEST(BuildTree, EmptyBatchThrows) {
    EXPECT_THROW(build_tree({}), EmptyBatch);
}

TEST(BuildTree, SingleLeafIsItsOwnRoot) {
    const Digest h = oracle::sha256("only certificate");
    const auto tree = build_tree(std::vector<Digest>{h});
    EXPECT_EQ(tree.root, h);
    ASSERT_EQ(tree.proofs.size(), 1u);
    EXPECT_TRUE(tree.proofs[0].proof.empty());
}

TEST(BuildTree, TwoLeaves) {
    const Digest a = oracle::sha256("a");
    const Digest b = oracle::sha256("b");
    const auto tree = build_tree(std::vector<Digest>{a, b});
    EXPECT_EQ(tree.root, oracle::node(a, b));
    EXPECT_EQ(tree.proofs[0].proof, (MerkleProof{{Side::right, b}}));
    EXPECT_EQ(tree.proofs[1].proof, (MerkleProof{{Side::left, a}}));
}

TEST(BuildTree, FiveLeavesMatchRecursiveOracle) {
    std::mt19937_64 rng(5);
    const auto leaves = random_leaves(rng, 5);
    const auto tree = build_tree(leaves);
    EXPECT_EQ(tree.root, oracle::merkle_root(leaves));
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        EXPECT_TRUE(verify_proof(make_receipt(leaves[i], tree.proofs[i], "tx")));
        EXPECT_EQ(oracle::fold(leaves[i], tree.proofs[i].proof), tree.root);
    }
    // The fifth leaf is promoted twice, then joins the root.
    EXPECT_EQ(tree.proofs[4].proof.size(), 1u);
    EXPECT_EQ(tree.proofs[4].proof[0].side, Side::left);
}

TEST(BuildTree, OddNodeIsPromotedNotDuplicated) {
    std::mt19937_64 rng(6);
    const auto leaves = random_leaves(rng, 3);
    EXPECT_EQ(build_tree(leaves).root, oracle::node(oracle::node(leaves[0], leaves[1]), leaves[2]));
}

TEST(BuildTree, Deterministic) {
    std::mt19937_64 rng(8);
    const auto leaves = random_leaves(rng, 13);
    const auto a = build_tree(leaves);
    const auto b = build_tree(leaves);
    EXPECT_EQ(a.root, b.root);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        EXPECT_EQ(a.proofs[i].proof, b.proofs[i].proof);
    }
}

TEST(VerifyProof, EmptyProofRequiresTargetEqualsRoot) {
    const Digest h = oracle::sha256("x");
    EXPECT_TRUE(verify_proof({h, {}, h, "tx"}));
    EXPECT_FALSE(verify_proof({h, {}, oracle::sha256("y"), "tx"}));
}

TEST(MerkleProperty, RoundTripTamperAndExclusion) {
    std::mt19937_64 rng(1234);
    for (std::size_t n = 1; n <= 32; ++n) {
        const auto leaves = random_leaves(rng, n);
        const auto tree = build_tree(leaves);
        ASSERT_EQ(tree.root, oracle::merkle_root(leaves)) << "n = " << n;
        const auto bound = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)))) + 1;
        for (std::size_t i = 0; i < n; ++i) {
            auto receipt = make_receipt(leaves[i], tree.proofs[i], "tx");
            ASSERT_TRUE(verify_proof(receipt)) << "n = " << n << ", leaf " << i;
            EXPECT_LE(receipt.proof.size(), bound);

            auto outsider = receipt;
            outsider.target_hash = random_digest(rng);
            EXPECT_FALSE(verify_proof(outsider));

            if (!receipt.proof.empty()) {
                auto flipped = receipt;
                auto& step = flipped.proof[rng() % flipped.proof.size()];
                step.sibling_hash[rng() % 32] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
                EXPECT_FALSE(verify_proof(flipped));

                auto swapped = receipt;
                auto& s = swapped.proof[rng() % swapped.proof.size()];
                s.side = s.side == Side::left ? Side::right : Side::left;
                EXPECT_FALSE(verify_proof(swapped));
            }
        }
    }
}

TEST(ReceiptJson, EncodingAndRoundTrip) {
    const Digest a = oracle::sha256("a");
    const Digest b = oracle::sha256("b");
    const auto tree = build_tree(std::vector<Digest>{a, b});
    const auto receipt = make_receipt(a, tree.proofs[0], "deadbeef");
    const auto j = to_json(receipt);
    EXPECT_EQ(j.at("targetHash"), to_hex(a));
    EXPECT_EQ(j.at("merkleRoot"), to_hex(tree.root));
    EXPECT_EQ(j.at("transactionId"), "deadbeef");
    EXPECT_EQ(j.at("proof")[0].at("side"), "right");
    EXPECT_EQ(j.at("proof")[0].at("hash"), to_hex(b));
    EXPECT_EQ(receipt_from_json(j), receipt);
}

TEST(ReceiptJson, RejectsMalformedDigestsAndSides) {
    auto j = to_json(MerkleReceipt{Digest{}, {{Side::left, Digest{}}}, Digest{}, "t"});
    auto short_hash = j;
    short_hash["targetHash"] = "abcd";
    EXPECT_THROW(receipt_from_json(short_hash), ParseError);
    auto bad_side = j;
    bad_side["proof"][0]["side"] = "up";
    EXPECT_THROW(receipt_from_json(bad_side), ParseError);
    auto upper = j;
    upper["merkleRoot"] = std::string(64, 'G');
    EXPECT_THROW(receipt_from_json(upper), ParseError);
}
