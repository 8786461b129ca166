#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

// Core carriers for butterfly-structured matrices: dense complex matrices,
// index permutations, Kronecker-structured support masks and best rank-one
// approximation.
//
// Conventions used throughout the library:
//  - indices are 0-based in memory; file formats and JSON use 1-based indices.
//  - the permutation matrix of sigma has P[i, sigma(i)] = 1, so
//    (P*A)[i,:] = A[sigma(i),:] and (A*P^T)[:,j] = A[:,sigma(j)].
namespace bfly {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// log2 of a power of two; throws otherwise.
int log2_exact(int n);

/// Stable sub-stream seed: folds each path component into `base` with a
/// splitmix64 step, so (base, path) pairs map to well-separated seeds.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

/// Bijection of {0..n-1}, stored as the image sequence i -> sigma(i).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int n);
    static Permutation random(int n, std::uint64_t seed);
    /// sigma(i) = bit-reversal of i over log2(n) bits.
    static Permutation bit_reversal(int n);

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[i]; }
    std::span<const int> images() const { return images_; }

    Permutation inverse() const;
    /// Composition (this o other): i -> this(other(i)).
    Permutation compose(const Permutation& other) const;

    /// P * A, rows permuted: row i of the result is row sigma(i) of A.
    ComplexMatrix apply_rows(const ComplexMatrix& a) const;
    /// A * P^T, columns permuted: column j of the result is column sigma(j) of A.
    ComplexMatrix apply_cols(const ComplexMatrix& a) const;

    /// Dense permutation matrix with P[i, sigma(i)] = 1.
    ComplexMatrix matrix() const;

    bool operator==(const Permutation& other) const = default;

private:
    std::vector<int> images_;
};

/// Support constraint of the form "r and c agree on all bit positions outside
/// [lo_bit, hi_bit]".  Covers the butterfly factor supports S_l (a single free
/// bit) and their partial products S_p...S_q (a contiguous free range).
struct SupportMask {
    int n = 0;
    int lo_bit = 0;
    int hi_bit = 0;

    bool allowed(int r, int c) const {
        const unsigned free = ((1u << (hi_bit - lo_bit + 1)) - 1u) << lo_bit;
        return ((static_cast<unsigned>(r) ^ static_cast<unsigned>(c)) & ~free) == 0;
    }

    /// Number of allowed entries: n * 2^(width of the free range).
    std::int64_t cardinality() const {
        return static_cast<std::int64_t>(n) << (hi_bit - lo_bit + 1);
    }

    /// True iff every nonzero of m lies inside the mask.
    bool contains(const ComplexMatrix& m) const;

    /// Copy of m with every entry outside the mask set to zero.
    ComplexMatrix project(const ComplexMatrix& m) const;
};

/// Support of the butterfly factor at level l (1-based, 1 <= l <= L):
/// I_{2^{l-1}} (x) [[1,1],[1,1]] (x) I_{N/2^l}; exactly 2N allowed entries.
SupportMask butterfly_support(int n, int level);

/// Support of the product S_p ... S_q of consecutive butterfly factors.
SupportMask product_support(int n, int p, int q);

struct RankOneResult {
    ComplexVector u;
    double s = 0.0;
    ComplexVector v;
    double err2 = 0.0;  // squared Frobenius residual, sum of sigma_k^2 for k >= 2
};

/// Best rank-one approximation s*u*v^* of m by SVD, with a deterministic
/// phase: the first nonzero entry of u is real positive.  A zero matrix
/// yields s = 0 and canonical basis vectors.
RankOneResult best_rank_one(const ComplexMatrix& m);

double frobenius_norm(const ComplexMatrix& m);

}  // namespace bfly
