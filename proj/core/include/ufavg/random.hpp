#pragma once

// Seeded sampling helpers. Monte-Carlo loops draw sample i from its own
// engine derived from (seed, i), so results never depend on iteration order
// or thread count.

#include <cstdint>
#include <random>

#include "ufavg/numerics.hpp"

namespace ufavg {

using Engine = std::mt19937_64;

/// Independent engine for sample `index` of a run seeded with `seed`.
Engine substream(std::uint64_t seed, std::uint64_t index);

/// Complex Ginibre matrix with i.i.d. standard normal real and imaginary parts.
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Engine& rng);

/// Haar-distributed U(n): QR of a Ginibre matrix with R's diagonal made positive.
ComplexMatrix haar_unitary(std::size_t n, Engine& rng);

/// Haar-distributed SU(n): haar_unitary divided by an n-th root of its determinant.
ComplexMatrix haar_special_unitary(std::size_t n, Engine& rng);

/// Full-rank mixed state G G† / Tr(G G†) with G Ginibre.
ComplexMatrix random_density_matrix(std::size_t dim, Engine& rng);

/// Random pure state |ψ><ψ|.
ComplexMatrix random_pure_state(std::size_t dim, Engine& rng);

Complex determinant(const ComplexMatrix& a);

}  // namespace ufavg
