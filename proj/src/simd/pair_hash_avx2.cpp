// Eight-lane SHA-256 over 64-byte messages. Each 32-bit lane of a __m256i
// carries the same state word for a different message. Compiled with a
// per-function target attribute so the rest of the library stays baseline
// x86-64; callers must check kernel_supported(Kernel::avx2) first.

#include "blockcerts/simd/pair_hash.hpp"

#include "sha256_constants.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define BLOCKCERTS_HAVE_AVX2_KERNEL 1
#endif

namespace blockcerts::simd::detail {

#if defined(BLOCKCERTS_HAVE_AVX2_KERNEL)

namespace {

#define AVX2_FN __attribute__((target("avx2"))) inline

AVX2_FN __m256i rotr(__m256i x, int n) {
    return _mm256_or_si256(_mm256_srli_epi32(x, n), _mm256_slli_epi32(x, 32 - n));
}

AVX2_FN __m256i add(__m256i a, __m256i b) { return _mm256_add_epi32(a, b); }

AVX2_FN __m256i add(__m256i a, __m256i b, __m256i c) { return add(add(a, b), c); }

AVX2_FN __m256i bxor(__m256i a, __m256i b, __m256i c) {
    return _mm256_xor_si256(_mm256_xor_si256(a, b), c);
}

AVX2_FN __m256i splat(std::uint32_t v) { return _mm256_set1_epi32(static_cast<int>(v)); }

AVX2_FN void compress8(__m256i state[8], __m256i w[64]) {
    for (int t = 16; t < 64; ++t) {
        const __m256i s0 = bxor(rotr(w[t - 15], 7), rotr(w[t - 15], 18), _mm256_srli_epi32(w[t - 15], 3));
        const __m256i s1 = bxor(rotr(w[t - 2], 17), rotr(w[t - 2], 19), _mm256_srli_epi32(w[t - 2], 10));
        w[t] = add(add(w[t - 16], s0), add(w[t - 7], s1));
    }

    __m256i a = state[0], b = state[1], c = state[2], d = state[3];
    __m256i e = state[4], f = state[5], g = state[6], h = state[7];
    for (int t = 0; t < 64; ++t) {
        const __m256i big1 = bxor(rotr(e, 6), rotr(e, 11), rotr(e, 25));
        const __m256i ch = _mm256_xor_si256(_mm256_and_si256(e, f), _mm256_andnot_si256(e, g));
        const __m256i t1 = add(add(h, big1, ch), add(splat(kSha256Round[t]), w[t]));
        const __m256i big0 = bxor(rotr(a, 2), rotr(a, 13), rotr(a, 22));
        const __m256i maj =
            bxor(_mm256_and_si256(a, b), _mm256_and_si256(a, c), _mm256_and_si256(b, c));
        const __m256i t2 = add(big0, maj);
        h = g;
        g = f;
        f = e;
        e = add(d, t1);
        d = c;
        c = b;
        b = a;
        a = add(t1, t2);
    }
    state[0] = add(state[0], a);
    state[1] = add(state[1], b);
    state[2] = add(state[2], c);
    state[3] = add(state[3], d);
    state[4] = add(state[4], e);
    state[5] = add(state[5], f);
    state[6] = add(state[6], g);
    state[7] = add(state[7], h);
}

// Hashes eight consecutive pairs starting at children[0].
AVX2_FN void hash8(const Digest* children, Digest* parents) {
    __m256i state[8];
    for (int i = 0; i < 8; ++i) {
        state[i] = splat(kSha256Init[i]);
    }

    __m256i w[64];
    for (int t = 0; t < 16; ++t) {
        // Word t of message j lives in child 2j (t < 8) or child 2j+1 (t >= 8).
        std::uint32_t lane[8];
        for (int j = 0; j < 8; ++j) {
            const Digest& half = children[2 * j + (t >> 3)];
            lane[j] = load_be32(half.data() + 4 * (t & 7));
        }
        w[t] = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lane));
    }
    compress8(state, w);

    for (int t = 0; t < 16; ++t) {
        w[t] = splat(kPairPaddingBlock[t]);
    }
    compress8(state, w);

    alignas(32) std::uint32_t words[8][8];
    for (int i = 0; i < 8; ++i) {
        _mm256_store_si256(reinterpret_cast<__m256i*>(words[i]), state[i]);
    }
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) {
            store_be32(parents[j].data() + 4 * i, words[i][j]);
        }
    }
}

#undef AVX2_FN

} // namespace

bool avx2_compiled() { return true; }

void hash_pairs_avx2(std::span<const Digest> children, std::span<Digest> parents) {
    std::size_t i = 0;
    for (; i + 8 <= parents.size(); i += 8) {
        hash8(children.data() + 2 * i, parents.data() + i);
    }
    if (i < parents.size()) {
        hash_pairs_scalar(children.subspan(2 * i), parents.subspan(i));
    }
}

#else

bool avx2_compiled() { return false; }

void hash_pairs_avx2(std::span<const Digest> children, std::span<Digest> parents) {
    hash_pairs_scalar(children, parents);
}

#endif

} // namespace blockcerts::simd::detail
