#include "blockcerts/simd/pair_hash.hpp"

#include "sha256_constants.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace blockcerts::simd {

namespace detail {

namespace {

constexpr std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

void compress(std::array<std::uint32_t, 8>& state, std::array<std::uint32_t, 64>& w) {
    for (int t = 16; t < 64; ++t) {
        const std::uint32_t s0 = rotr(w[t - 15], 7) ^ rotr(w[t - 15], 18) ^ (w[t - 15] >> 3);
        const std::uint32_t s1 = rotr(w[t - 2], 17) ^ rotr(w[t - 2], 19) ^ (w[t - 2] >> 10);
        w[t] = w[t - 16] + s0 + w[t - 7] + s1;
    }

    std::uint32_t a = state[0], b = state[1], c = state[2], d = state[3];
    std::uint32_t e = state[4], f = state[5], g = state[6], h = state[7];
    for (int t = 0; t < 64; ++t) {
        const std::uint32_t big1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
        const std::uint32_t ch = (e & f) ^ (~e & g);
        const std::uint32_t t1 = h + big1 + ch + kSha256Round[t] + w[t];
        const std::uint32_t big0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
        const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
        const std::uint32_t t2 = big0 + maj;
        h = g;
        g = f;
        f = e;
        e = d + t1;
        d = c;
        c = b;
        b = a;
        a = t1 + t2;
    }
    state[0] += a;
    state[1] += b;
    state[2] += c;
    state[3] += d;
    state[4] += e;
    state[5] += f;
    state[6] += g;
    state[7] += h;
}

Digest hash_one(const std::uint8_t* message64) {
    std::array<std::uint32_t, 8> state = kSha256Init;
    std::array<std::uint32_t, 64> w{};
    for (int t = 0; t < 16; ++t) {
        w[t] = load_be32(message64 + 4 * t);
    }
    compress(state, w);
    std::copy(kPairPaddingBlock.begin(), kPairPaddingBlock.end(), w.begin());
    compress(state, w);

    Digest out{};
    for (int i = 0; i < 8; ++i) {
        store_be32(out.data() + 4 * i, state[i]);
    }
    return out;
}

} // namespace

void hash_pairs_scalar(std::span<const Digest> children, std::span<Digest> parents) {
    for (std::size_t i = 0; i < parents.size(); ++i) {
        std::uint8_t message[64];
        std::memcpy(message, children[2 * i].data(), 32);
        std::memcpy(message + 32, children[2 * i + 1].data(), 32);
        parents[i] = hash_one(message);
    }
}

} // namespace detail

std::string_view kernel_name(Kernel k) {
    switch (k) {
    case Kernel::scalar:
        return "scalar";
    case Kernel::avx2:
        return "avx2";
    }
    return "unknown";
}

bool kernel_supported(Kernel k) {
    switch (k) {
    case Kernel::scalar:
        return true;
    case Kernel::avx2:
#if defined(__x86_64__) || defined(__i386__)
        return detail::avx2_compiled() && __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

namespace {

Kernel choose_kernel() {
    if (const char* forced = std::getenv("BLOCKCERTS_KERNEL")) {
        const std::string_view name(forced);
        if (name == "scalar") {
            return Kernel::scalar;
        }
        if (name == "avx2" && kernel_supported(Kernel::avx2)) {
            return Kernel::avx2;
        }
        return Kernel::scalar;
    }
    return kernel_supported(Kernel::avx2) ? Kernel::avx2 : Kernel::scalar;
}

} // namespace

Kernel active_kernel() {
    static const Kernel chosen = choose_kernel();
    return chosen;
}

void hash_pairs(Kernel k, std::span<const Digest> children, std::span<Digest> parents) {
    if (children.size() != 2 * parents.size()) {
        throw std::invalid_argument("hash_pairs: children must be exactly twice the parents");
    }
    if (k == Kernel::avx2 && kernel_supported(Kernel::avx2)) {
        detail::hash_pairs_avx2(children, parents);
        return;
    }
    detail::hash_pairs_scalar(children, parents);
}

void hash_pairs(std::span<const Digest> children, std::span<Digest> parents) {
    hash_pairs(active_kernel(), children, parents);
}

Digest hash_pair(const Digest& left, const Digest& right) {
    const std::array<Digest, 2> children{left, right};
    Digest out{};
    detail::hash_pairs_scalar(children, std::span<Digest>(&out, 1));
    return out;
}

} // namespace blockcerts::simd
