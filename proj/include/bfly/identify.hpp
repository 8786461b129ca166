#pragma once

#include "bfly/cluster_tree.hpp"
#include "bfly/factorization.hpp"
#include "bfly/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

// End-to-end identification: recover the row/column cluster trees of a
// permuted butterfly matrix level by level, pick representative permutations
// and factorize.
namespace bfly {

/// Outcome of the (alpha, seed) sweep at one level.
struct LevelReport {
    int level = 0;              // swept level: row sets have 2^level members
    double objective = 0.0;     // winning E_level
    double alpha = 0.0;         // winning exponent
    std::uint64_t seed = 0;     // winning restart seed
    int iterations = 0;
    bool converged = false;
    LevelPartition partition;   // winning row/column pair
};

struct IdentifyOptions {
    std::vector<double> alpha_grid = {1e-2, 1e-1, 1.0, 1e1, 1e2};
    std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
    int max_iterations = 50;    // alternating iterations per run
};

struct IdentifyResult {
    bool success = false;
    std::string failure;        // empty on success; names tree and level otherwise
    int violated_level = -1;    // tree level that broke assembly, -1 on success

    std::vector<LevelReport> levels;  // one per swept level, in sweep order
    std::optional<ClusterTree> row_tree;
    std::optional<ClusterTree> col_tree;
    std::optional<Permutation> p;     // representative column permutation
    std::optional<Permutation> q;     // representative row permutation
    ButterflyFactors factors;
    double factorization_error = 0.0;  // E_bf = ||Q*A*P^T - product||_F
    double seconds = 0.0;
};

/// Sweeps levels 1..L-1, running alternating_partition for every (alpha,
/// seed) grid pair and keeping per level the run with the smallest objective
/// (ties keep the earliest grid entry).  The level-l row
/// sets give row-tree level L-l and the column sets give column-tree level l;
/// both trees are then assembled, and validity alone decides success — no
/// tolerance is applied.  On success the representative (P, Q) and the
/// hierarchical factorization of Q*A*P^T are filled in.
IdentifyResult identify(const ComplexMatrix& a, const IdentifyOptions& options = {});

/// JSON text of a result: status, per-level reports, trees as per-level index
/// sets, permutation images (all 1-based), E_bf and timing.
std::string identify_report_json(const IdentifyResult& result, int indent = 2);

}  // namespace bfly
