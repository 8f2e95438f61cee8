#pragma once

// Seeded random matrix generators. Everything is a pure function of the
// generator state, so equal seeds reproduce equal matrices.

#include "opsys/linalg.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace opsys {

using Rng = std::mt19937_64;

/// Mixes a base seed with a stream label and an index into a fresh seed.
std::uint64_t derive_seed(std::uint64_t base, std::string_view stream, std::uint64_t index);

/// Entries with independent standard normal real and imaginary parts.
ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// (G + G^*)/2, exactly Hermitian.
ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng);

/// G G^*, symmetrized to be exactly Hermitian.
ComplexMatrix random_psd(Eigen::Index n, Rng& rng);

/// G H^* with G, H of size n x rank.
ComplexMatrix random_rank_deficient(Eigen::Index n, Eigen::Index rank, Rng& rng);

/// Haar-distributed unitary via QR with phase correction.
ComplexMatrix random_unitary(Eigen::Index n, Rng& rng);

enum class MatrixKind { Ginibre, Hermitian, Psd, RankDeficient };

/// Parses "ginibre" | "hermitian" | "psd" | "rankdef"; throws Error(Parse).
MatrixKind parse_matrix_kind(std::string_view name);

/// Deterministic matrix for (kind, n, seed); rankdef has rank ceil(n/2).
ComplexMatrix generate(MatrixKind kind, Eigen::Index n, std::uint64_t seed);

}  // namespace opsys
