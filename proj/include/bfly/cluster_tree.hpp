#pragma once

#include "bfly/matrix.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

// Balanced binary cluster trees over {0..N-1}: the canonical butterfly pair,
// validity checking, relabeling, permutation-class representatives, counting
// and exhaustive enumeration.
namespace bfly {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {
struct TreeAccess;
}

/// Balanced binary hierarchy of index subsets.  Level m holds 2^m nodes of
/// cardinality N/2^m in heap order: node (m, p) has children (m+1, 2p) and
/// (m+1, 2p+1), the first child containing the parent's smallest element.
/// Node index lists are sorted, which makes the layout canonical: two trees
/// are equal iff their representations are.
class ClusterTree {
public:
    ClusterTree() = default;

    int size() const { return n_; }
    int depth() const { return levels_; }
    const std::vector<int>& node(int level, int slot) const { return nodes_[level][slot]; }
    int parent(int level, int slot) const { return parents_[level][slot]; }
    /// The element of the singleton leaf in slot p of level L.
    int leaf(int slot) const { return nodes_[levels_][slot][0]; }

    /// The nodes of one level, as a list of sorted index sets.
    const std::vector<std::vector<int>>& level_sets(int level) const { return nodes_[level]; }

    bool operator==(const ClusterTree& other) const { return nodes_ == other.nodes_; }
    bool operator<(const ClusterTree& other) const { return nodes_ < other.nodes_; }

private:
    int n_ = 0;
    int levels_ = 0;
    std::vector<std::vector<std::vector<int>>> nodes_;  // [level][slot] -> sorted indices
    std::vector<std::vector<int>> parents_;             // [level][slot] -> parent slot

    friend struct detail::TreeAccess;
};

/// The canonical butterfly pair: the row tree refines residues mod 2^m
/// (strided sets), the column tree refines contiguous dyadic blocks.
struct CanonicalTrees {
    ClusterTree rows;  // T^X_bf
    ClusterTree cols;  // T^Omega_bf
};
CanonicalTrees canonical_trees(int n);

struct TreeAssembly {
    std::optional<ClusterTree> tree;
    int violated_level = -1;  // first (coarsest) level that failed validation
    std::string message;

    bool valid() const { return tree.has_value(); }
};

/// Builds a tree from one partition per level m = 1..L-1 (list of index
/// sets, any order).  The root and the singleton level are implied.  Returns
/// an invalid result naming the first violated level if cardinalities are
/// wrong, a level is not a partition, or consecutive levels do not nest.
TreeAssembly assemble_tree(int n, const std::vector<std::vector<std::vector<int>>>& partitions);

/// Maps every node elementwise through sigma; the layout is re-canonicalized.
ClusterTree relabel(const ClusterTree& tree, const Permutation& sigma);

/// A representative (P, Q) with sigma_Q(T^X_bf) = rows and
/// sigma_P(T^Omega_bf) = cols: each leaf gets its root-to-leaf bit string
/// (first-listed child = 0); the canonical source position reads it
/// most-significant-first for columns and least-significant-first for rows.
std::pair<Permutation, Permutation> representative_permutations(const ClusterTree& rows,
                                                                const ClusterTree& cols);

/// Number of cluster trees over a root of cardinality n:
/// u_2 = 1, u_n = C(n, n/2)/2 * u_{n/2}^2.
BigInt count_trees(int n);

/// Visits every distinct cluster tree over {0..n-1} exactly once (n <= 16).
/// The visited reference points into enumeration scratch and is only valid
/// during the call; copy it to keep it.
void enumerate_trees(int n, const std::function<void(const ClusterTree&)>& visit);

/// Random member of the stabilizer of the canonical column tree (resp. row
/// tree): relabeling the canonical tree by the result leaves it unchanged.
/// Composing a representative with stabilizer samples walks its equivalence
/// class.
Permutation random_canonical_col_stabilizer(int n, std::uint64_t seed);
Permutation random_canonical_row_stabilizer(int n, std::uint64_t seed);

}  // namespace bfly
