#include "blockcerts/simd/pair_hash.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace blockcerts;
using simd::Kernel;

namespace {

std::vector<Digest> random_digests(std::mt19937_64& rng, std::size_t n) {
    std::vector<Digest> out(n);
    for (auto& d : out) {
        for (auto& b : d) {
            b = static_cast<std::uint8_t>(rng());
        }
    }
    return out;
}

} // namespace

TEST(PairHash, ScalarMatchesReferenceSha256) {
    std::mt19937_64 rng(7);
    const auto children = random_digests(rng, 2 * 37);
    std::vector<Digest> parents(37);
    simd::hash_pairs(Kernel::scalar, children, parents);
    for (std::size_t i = 0; i < parents.size(); ++i) {
        EXPECT_EQ(parents[i], oracle::node(children[2 * i], children[2 * i + 1])) << "pair " << i;
    }
}

TEST(PairHash, KnownVectorOfZeroDigests) {
    // SHA-256 of 64 zero bytes.
    const Digest zero{};
    EXPECT_EQ(to_hex(simd::hash_pair(zero, zero)),
              "f5a5fd42d16a20302798ef6ed309979b43003d2320d9f0e8ea9831a92759fb4b");
}

TEST(PairHash, Avx2MatchesScalarForEveryTailLength) {
    if (!simd::kernel_supported(Kernel::avx2)) {
        GTEST_SKIP() << "AVX2 not available on this CPU";
    }
    std::mt19937_64 rng(11);
    for (std::size_t n = 0; n <= 41; ++n) {
        const auto children = random_digests(rng, 2 * n);
        std::vector<Digest> scalar(n), wide(n);
        simd::hash_pairs(Kernel::scalar, children, scalar);
        simd::hash_pairs(Kernel::avx2, children, wide);
        EXPECT_EQ(scalar, wide) << "n = " << n;
    }
}

TEST(PairHash, Avx2MatchesScalarOnLargeLevels) {
    if (!simd::kernel_supported(Kernel::avx2)) {
        GTEST_SKIP() << "AVX2 not available on this CPU";
    }
    std::mt19937_64 rng(13);
    const auto children = random_digests(rng, 2 * 4099);
    std::vector<Digest> scalar(4099), wide(4099);
    simd::hash_pairs(Kernel::scalar, children, scalar);
    simd::hash_pairs(Kernel::avx2, children, wide);
    EXPECT_EQ(scalar, wide);
}

TEST(PairHash, RejectsMismatchedSpans) {
    std::vector<Digest> children(3), parents(1);
    EXPECT_THROW(simd::hash_pairs(Kernel::scalar, children, parents), std::invalid_argument);
}

TEST(PairHash, ActiveKernelIsSupported) {
    EXPECT_TRUE(simd::kernel_supported(simd::active_kernel()));
    EXPECT_TRUE(simd::kernel_supported(Kernel::scalar));
    EXPECT_EQ(simd::kernel_name(Kernel::avx2), "avx2");
}
