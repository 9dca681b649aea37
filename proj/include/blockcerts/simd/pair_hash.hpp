#pragma once

// Multi-buffer SHA-256 over 64-byte messages (two concatenated digests).
//
// Merkle levels hash many independent (left || right) pairs, which is the
// textbook case for running several SHA-256 instances side by side in SIMD
// lanes. The scalar kernel is the reference; the AVX2 kernel processes eight
// pairs per pass and must agree with it bit for bit.

#include "blockcerts/bytes.hpp"

#include <span>
#include <string_view>

namespace blockcerts::simd {

enum class Kernel { scalar, avx2 };

std::string_view kernel_name(Kernel k);

/// True when the running CPU (and this build) can execute `k`.
bool kernel_supported(Kernel k);

/// Kernel used by the dispatching overloads. Picks the widest supported
/// kernel at first use; the environment variable BLOCKCERTS_KERNEL=scalar|avx2
/// overrides (an unsupported request falls back to scalar).
Kernel active_kernel();

/// parents[i] = SHA-256(children[2i] || children[2i+1]).
/// Requires children.size() == 2 * parents.size().
void hash_pairs(Kernel k, std::span<const Digest> children, std::span<Digest> parents);
void hash_pairs(std::span<const Digest> children, std::span<Digest> parents);

Digest hash_pair(const Digest& left, const Digest& right);

namespace detail {
void hash_pairs_scalar(std::span<const Digest> children, std::span<Digest> parents);
void hash_pairs_avx2(std::span<const Digest> children, std::span<Digest> parents);
bool avx2_compiled();
} // namespace detail

} // namespace blockcerts::simd
