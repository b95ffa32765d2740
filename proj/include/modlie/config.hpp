#pragma once

#include <cstddef>

namespace modlie::config {

// Largest field order supported by the table-driven arithmetic.
inline constexpr unsigned kMaxFieldOrder = 1u << 16;

// Above this order additions are done digit-wise instead of by table.
inline constexpr unsigned kAddTableOrder = 1024;

// Largest p^N for which primitives() materializes the coproduct map.
inline constexpr std::size_t kPrimitivesGuard = 3000;

// Largest p^(N+1) for which block_decompose materializes u(l_chi).
inline constexpr std::size_t kBlockGuard = 3000;

// Largest module dimension the submodule machinery accepts.
inline constexpr std::size_t kModuleGuard = 1024;

// Largest GF(p)-dimension (dim M * k) handled by the enveloping-algebra
// radical; above it the radical is computed from homomorphisms into the
// composition factors.
inline constexpr std::size_t kAlgebraRadicalDim = 16;

// Brute-force submodule enumeration limits.
inline constexpr std::size_t kBruteForceVectors = std::size_t{1} << 21;
inline constexpr std::size_t kBruteForceLattice = 50000;

// Random algebra elements tried before the irreducibility test gives up.
inline constexpr int kSplitAttempts = 400;

}  // namespace modlie::config
