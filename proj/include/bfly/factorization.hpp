#pragma once

#include "bfly/matrix.hpp"

#include <utility>
#include <vector>

// Monarch-class projections and the hierarchical butterfly factorization with
// fixed row/column permutations.
namespace bfly {

/// L sparse factors, factor l (1-based) exactly zero outside S_l.
struct ButterflyFactors {
    std::vector<ComplexMatrix> factors;

    int levels() const { return static_cast<int>(factors.size()); }
    int size() const { return factors.empty() ? 0 : static_cast<int>(factors.front().rows()); }

    /// Dense product X^(1) ... X^(L).
    ComplexMatrix product() const;
};

/// Equal-cardinality row/column partitions for one level:
/// N/2^l row sets of size 2^l and 2^l column sets of size N/2^l.
struct LevelPartition {
    int level = 0;
    std::vector<std::vector<int>> row_sets;
    std::vector<std::vector<int>> col_sets;
};

/// The canonical level-l partition: row set i is the stride-N/2^l progression
/// starting at i, column set j is the j-th contiguous block.
LevelPartition canonical_level_partition(int n, int level);

/// Sum over all (row set, column set) blocks of the squared residual of the
/// best rank-one approximation.  Zero exactly on the l-th Monarch class.
double partition_objective(const ComplexMatrix& a, const LevelPartition& p);

struct MonarchSplit {
    ComplexMatrix x;  // supp(X) inside S_{1:l}
    ComplexMatrix y;  // supp(Y) inside S_{l+1:L}
    double err2 = 0.0;
};

/// Projection of m onto the l-th Monarch class by blockwise rank-one
/// approximation over the canonical level-l partition.  Column
/// c = (j-1)*N/2^l + i of X carries u*sqrt(s) on rows R_i and row c of Y
/// carries sqrt(s)*v^* on columns C_j; ||m - X*Y||_F^2 equals err2.
MonarchSplit monarch_two_factor(const ComplexMatrix& m, int level);

struct FactorizationResult {
    ButterflyFactors factors;
    double error = 0.0;  // E_bf = ||Q*A*P^T - X^(1)...X^(L)||_F
};

/// Hierarchical butterfly factorization of B = Q*A*P^T by recursive peeling:
/// split off X^(1) with a level-1 Monarch projection, then recurse on the two
/// diagonal blocks of the second factor.  Exact on noiseless butterfly B.
FactorizationResult hierarchical_factorize(const ComplexMatrix& a, const Permutation& p,
                                           const Permutation& q);

}  // namespace bfly
