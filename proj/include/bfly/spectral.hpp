#pragma once

#include "bfly/factorization.hpp"
#include "bfly/matrix.hpp"

#include <cstdint>
#include <vector>

// Alternating spectral refinement of balanced row/column partitions toward
// the blockwise rank-one structure measured by partition_objective.
namespace bfly {

/// Pairwise row similarity given a column grouping: for each column set, the
/// modulus of the cosine between the two restricted rows, raised to `alpha`,
/// summed over sets.  A row whose restriction is zero contributes nothing, so
/// diagonal entry k counts the sets on which row k is nonzero.
RealMatrix row_similarity(const ComplexMatrix& a, const std::vector<std::vector<int>>& col_sets,
                          double alpha);

/// The same graph over columns, given a row grouping.
RealMatrix col_similarity(const ComplexMatrix& a, const std::vector<std::vector<int>>& row_sets,
                          double alpha);

/// Unnormalized graph Laplacian D - W with D the diagonal of row sums.
RealMatrix graph_laplacian(const RealMatrix& w);

struct SpectralEmbedding {
    RealMatrix vectors;  // one embedded point per row, k coordinates
    RealVector values;   // the k smallest Laplacian eigenvalues, ascending
};

/// Eigenvectors of graph_laplacian(w) for the k smallest eigenvalues.  Each
/// column's sign is fixed so its entry of largest modulus is positive.
SpectralEmbedding spectral_embedding(const RealMatrix& w, int k);

/// Minimum total squared-distance assignment of points to centers under the
/// constraint that every center receives exactly rows(points)/rows(centers)
/// points; solved exactly as a min-cost flow.  Returns one center index per
/// point.
std::vector<int> balanced_assign(const RealMatrix& points, const RealMatrix& centers);

/// Lloyd iterations with k-means++ seeding in which every assignment step is
/// the optimal balanced assignment, so all clusters end up with exactly
/// rows(points)/clusters members.  Returns one label per point.
std::vector<int> balanced_kmeans(const RealMatrix& points, int clusters, std::uint64_t seed);

/// Labels to index sets, each sorted, sets ordered by smallest member.
std::vector<std::vector<int>> labels_to_sets(const std::vector<int>& labels, int clusters);

struct AlternatingOptions {
    double alpha = 1.0;
    int max_iterations = 50;
    std::uint64_t seed = 0;
};

struct AlternatingResult {
    LevelPartition partition;   // best pair seen, canonically ordered sets
    double objective = 0.0;     // partition_objective of that pair
    std::vector<double> trace;  // objective after each full iteration
    int iterations = 0;
    bool converged = false;     // reached a fixed point before the cap
};

/// Alternating spectral partitioning at one level (1 <= level <= L-1): the
/// column grouping starts from a seeded random balanced partition, then each
/// iteration re-clusters rows from the spectral embedding of their similarity
/// graph and columns likewise given the new rows.  Stops at a fixed point or
/// after max_iterations; the returned pair is the best seen, so its objective
/// never exceeds the first iteration's.
AlternatingResult alternating_partition(const ComplexMatrix& a, int level,
                                        const AlternatingOptions& options);

}  // namespace bfly
