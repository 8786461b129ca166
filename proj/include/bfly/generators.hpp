#pragma once

#include "bfly/factorization.hpp"
#include "bfly/matrix.hpp"

#include <cstdint>

// Generators for the experimental targets: random orthogonal butterfly
// matrices, the DFT matrix, and permuted/noisy observations of them.
namespace bfly {

/// Random orthogonal butterfly factors: L factors of size N = 2^L, factor l
/// supported on S_l, built from N/2 independent 2x2 rotations with angles
/// uniform in [0, 2*pi).  Each factor is real orthogonal, so the product is
/// orthogonal too.
ButterflyFactors random_orthogonal_butterfly(int levels, std::uint64_t seed);

/// Unnormalized DFT matrix: entry (k, l) = exp(-2*pi*i*k*l / n), 0-based.
ComplexMatrix dft_matrix(int n);

/// Observation model: Q^T * A * P + eps * (||A||_F / ||G||_F) * G with G a
/// real standard Gaussian matrix drawn from the seed.  eps = 0 returns
/// Q^T * A * P exactly and does not touch the generator.
ComplexMatrix make_target(const ComplexMatrix& a, const Permutation& p, const Permutation& q,
                          double eps, std::uint64_t seed);

}  // namespace bfly
