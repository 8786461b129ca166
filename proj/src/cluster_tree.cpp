#include "bfly/cluster_tree.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

namespace bfly {

namespace detail {

struct TreeAccess {
    static ClusterTree shell(int n) {
        const int levels = log2_exact(n);
        ClusterTree t;
        t.n_ = n;
        t.levels_ = levels;
        t.nodes_.resize(levels + 1);
        t.parents_.resize(levels + 1);
        for (int m = 0; m <= levels; ++m) {
            t.nodes_[m].assign(std::size_t(1) << m, std::vector<int>(n >> m));
            t.parents_[m].resize(std::size_t(1) << m);
            for (int p = 0; p < (1 << m); ++p) t.parents_[m][p] = p / 2;
        }
        std::iota(t.nodes_[0][0].begin(), t.nodes_[0][0].end(), 0);
        return t;
    }

    static std::vector<int>& node(ClusterTree& t, int level, int slot) {
        return t.nodes_[level][slot];
    }
};

}  // namespace detail

namespace {

using detail::TreeAccess;

// Fills the children of every node at `level`, coarsest first, so a failure
// reports the first level whose sets do not nest into the one above.
// sets[m] lists the level-m sets, membership[m][v] the set index holding v.
bool place_level(ClusterTree& t, int level,
                 const std::vector<std::vector<std::vector<int>>>& sets,
                 const std::vector<std::vector<int>>& membership) {
    const auto& fine = sets[level];
    for (int slot = 0; slot < (1 << (level - 1)); ++slot) {
        const auto& parent = t.node(level - 1, slot);
        const int first = membership[level][parent[0]];
        int second = -1;
        for (int v : parent) {
            const int s = membership[level][v];
            if (s == first) continue;
            if (second == -1) second = s;
            if (s != second) return false;
        }
        if (second == -1 || fine[first].size() + fine[second].size() != parent.size()) {
            return false;
        }
        TreeAccess::node(t, level, 2 * slot) = fine[first];
        TreeAccess::node(t, level, 2 * slot + 1) = fine[second];
    }
    return true;
}

BigInt binomial(int n, int k) {
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

bool next_combination(std::array<int, 16>& comb, int h, int n) {
    int i = h - 1;
    while (i >= 0 && comb[i] == n - h + i) --i;
    if (i < 0) return false;
    ++comb[i];
    for (int j = i + 1; j < h; ++j) comb[j] = comb[j - 1] + 1;
    return true;
}

struct TreeEnumerator {
    ClusterTree scratch;
    const std::function<void(const ClusterTree&)>* visit = nullptr;
    std::vector<std::pair<int, int>> pending;

    void run(int n) {
        scratch = TreeAccess::shell(n);
        pending.reserve(2 * n);
        pending.emplace_back(0, 0);
        expand();
    }

    // Expands the top pending slot over all splits of its (already placed)
    // set, recursing on the rest of the stack; restores the stack on exit.
    void expand() {
        if (pending.empty()) {
            (*visit)(scratch);
            return;
        }
        const auto [m, p] = pending.back();
        pending.pop_back();
        const auto& s = scratch.node(m, p);
        const int sz = static_cast<int>(s.size());
        if (sz == 1) {
            expand();
        } else {
            const int h = sz / 2;
            auto& left = TreeAccess::node(scratch, m + 1, 2 * p);
            auto& right = TreeAccess::node(scratch, m + 1, 2 * p + 1);
            std::array<int, 16> comb{};
            std::iota(comb.begin(), comb.begin() + h, 0);
            do {
                // right child = chosen subset of s[1..]; left keeps s[0]
                int li = 1, ri = 0;
                for (int t = 0; t < sz - 1; ++t) {
                    if (ri < h && comb[ri] == t) {
                        right[ri++] = s[t + 1];
                    } else {
                        left[li++] = s[t + 1];
                    }
                }
                left[0] = s[0];
                pending.emplace_back(m + 1, 2 * p + 1);
                pending.emplace_back(m + 1, 2 * p);
                expand();
                pending.pop_back();
                pending.pop_back();
            } while (next_combination(comb, h, sz - 1));
        }
        pending.emplace_back(m, p);
    }
};

Permutation random_stabilizer(int n, std::uint64_t seed, bool lsb_first) {
    const int bits = log2_exact(n);
    std::mt19937_64 rng(seed);
    // flips[m]: one bit per level-m node, indexed by the path prefix
    std::vector<std::vector<std::uint8_t>> flips(bits);
    for (int m = 0; m < bits; ++m) {
        flips[m].resize(std::size_t(1) << m);
        for (auto& f : flips[m]) f = static_cast<std::uint8_t>(rng() & 1);
    }
    std::vector<int> images(n);
    for (int x = 0; x < n; ++x) {
        int prefix = 0;
        int y = 0;
        for (int m = 0; m < bits; ++m) {
            const int pos = lsb_first ? m : bits - 1 - m;
            const int b = ((x >> pos) & 1) ^ flips[m][prefix];
            y |= b << pos;
            prefix = (prefix << 1) | ((x >> pos) & 1);
        }
        images[x] = y;
    }
    return Permutation(std::move(images));
}

}  // namespace

CanonicalTrees canonical_trees(int n) {
    const int levels = log2_exact(n);
    CanonicalTrees out;
    out.rows = TreeAccess::shell(n);
    out.cols = TreeAccess::shell(n);
    for (int m = 1; m <= levels; ++m) {
        const int block = n >> m;  // node cardinality at level m
        for (int p = 0; p < (1 << m); ++p) {
            auto& col_node = TreeAccess::node(out.cols, m, p);
            for (int k = 0; k < block; ++k) col_node[k] = p * block + k;
            // row nodes fix the low m bits of the index to bitrev_m(p)
            int res = 0;
            for (int b = 0; b < m; ++b) res |= ((p >> (m - 1 - b)) & 1) << b;
            auto& row_node = TreeAccess::node(out.rows, m, p);
            for (int k = 0; k < block; ++k) row_node[k] = res + (k << m);
        }
    }
    return out;
}

TreeAssembly assemble_tree(int n, const std::vector<std::vector<std::vector<int>>>& partitions) {
    TreeAssembly out;
    const int levels = log2_exact(n);
    if (static_cast<int>(partitions.size()) != std::max(0, levels - 1)) {
        out.violated_level = 0;
        out.message = "expected one partition per level 1..L-1";
        return out;
    }

    // sets[m] for m = 0..L; membership[m][v] = index of the level-m set holding v
    std::vector<std::vector<std::vector<int>>> sets(levels + 1);
    std::vector<std::vector<int>> membership(levels + 1, std::vector<int>(n, -1));
    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    sets[0] = {root};
    std::fill(membership[0].begin(), membership[0].end(), 0);
    for (int v = 0; v < n; ++v) {
        sets[levels].push_back({v});
        membership[levels][v] = v;
    }
    for (int m = 1; m < levels; ++m) {
        sets[m] = partitions[m - 1];
        const std::size_t want = std::size_t(n) >> m;
        if (static_cast<int>(sets[m].size()) != (1 << m)) {
            out.violated_level = m;
            out.message = "level " + std::to_string(m) + " has wrong number of sets";
            return out;
        }
        for (std::size_t s = 0; s < sets[m].size(); ++s) {
            auto& set = sets[m][s];
            if (set.size() != want) {
                out.violated_level = m;
                out.message = "level " + std::to_string(m) + " has a set of wrong cardinality";
                return out;
            }
            std::sort(set.begin(), set.end());
            for (int v : set) {
                if (v < 0 || v >= n || membership[m][v] != -1) {
                    out.violated_level = m;
                    out.message = "level " + std::to_string(m) + " is not a partition";
                    return out;
                }
                membership[m][v] = static_cast<int>(s);
            }
        }
    }

    ClusterTree tree = TreeAccess::shell(n);
    for (int m = 1; m <= levels; ++m) {
        if (!place_level(tree, m, sets, membership)) {
            out.violated_level = m;
            out.message = "sets at level " + std::to_string(m) +
                          " do not nest into level " + std::to_string(m - 1);
            return out;
        }
    }
    out.tree = std::move(tree);
    return out;
}

ClusterTree relabel(const ClusterTree& tree, const Permutation& sigma) {
    if (sigma.size() != tree.size()) {
        throw std::invalid_argument("relabel: permutation size mismatch");
    }
    std::vector<std::vector<std::vector<int>>> partitions;
    for (int m = 1; m < tree.depth(); ++m) {
        auto level = tree.level_sets(m);
        for (auto& set : level) {
            for (int& v : set) v = sigma(v);
        }
        partitions.push_back(std::move(level));
    }
    auto assembled = assemble_tree(tree.size(), partitions);
    if (!assembled.valid()) {
        throw std::logic_error("relabel produced an invalid tree: " + assembled.message);
    }
    return std::move(*assembled.tree);
}

std::pair<Permutation, Permutation> representative_permutations(const ClusterTree& rows,
                                                                const ClusterTree& cols) {
    if (rows.size() != cols.size()) {
        throw std::invalid_argument("representative_permutations: tree size mismatch");
    }
    const int n = rows.size();
    const int bits = rows.depth();
    std::vector<int> q_images(n), p_images(n);
    for (int slot = 0; slot < n; ++slot) {
        p_images[slot] = cols.leaf(slot);
        int rev = 0;
        for (int b = 0; b < bits; ++b) rev |= ((slot >> b) & 1) << (bits - 1 - b);
        q_images[rev] = rows.leaf(slot);
    }
    return {Permutation(std::move(p_images)), Permutation(std::move(q_images))};
}

BigInt count_trees(int n) {
    log2_exact(n);
    if (n < 2) throw std::invalid_argument("count_trees: n must be at least 2");
    BigInt u = 1;
    for (int m = 4; m <= n; m *= 2) {
        u = binomial(m, m / 2) / 2 * u * u;
    }
    return u;
}

void enumerate_trees(int n, const std::function<void(const ClusterTree&)>& visit) {
    log2_exact(n);
    if (n < 2 || n > 16) {
        throw std::invalid_argument("enumerate_trees supports 2 <= n <= 16");
    }
    TreeEnumerator e;
    e.visit = &visit;
    e.run(n);
}

Permutation random_canonical_col_stabilizer(int n, std::uint64_t seed) {
    return random_stabilizer(n, seed, /*lsb_first=*/false);
}

Permutation random_canonical_row_stabilizer(int n, std::uint64_t seed) {
    return random_stabilizer(n, seed, /*lsb_first=*/true);
}

}  // namespace bfly
