#pragma once

// Seeded generators for the randomized suites. Every trial draws from its
// own stream, derived from the root seed and the trial index.

#include <cstdint>
#include <random>

#include "projprod/hilbert.hpp"
#include "projprod/products.hpp"

namespace projprod {

using Rng = std::mt19937_64;

/// splitmix64 of (root, index).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

inline Rng trial_rng(std::uint64_t root, std::uint64_t index) {
  return Rng(derive_seed(root, index));
}

/// Entries i.i.d. standard complex Gaussian.
ComplexMatrix random_gaussian(Rng& rng, Index rows, Index cols);

/// Haar-distributed unitary (QR of a Gaussian matrix with phase correction).
ComplexMatrix random_unitary(Rng& rng, Index n);

/// Projection onto the span of `rank` Gaussian vectors.
ComplexMatrix random_projection(Rng& rng, Index n, Index rank);

/// Gaussian pair with a planted common subspace of random dimension, so that
/// ran P1 ∩ ran P2 is nontrivial in a good share of draws.
ProjectionPair random_gaussian_pair(Rng& rng, Index n, const Tolerances& tol);

/// Pair in Halmos two-subspace normal form, rotated by a Haar unitary:
/// random dimensions for ran∩ran, ran∩ker, ker∩ran, ker∩ker and for the
/// generic part, whose principal angles are drawn in [min_angle, π/2 - min_angle].
ProjectionPair random_halmos_pair(Rng& rng, Index n, double min_angle, const Tolerances& tol);

/// Contraction with norm in [0.2, 0.95] that is generally not a product of
/// two projections.
ComplexMatrix random_strict_contraction(Rng& rng, Index n);

}  // namespace projprod
