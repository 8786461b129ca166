#pragma once

#include "bfly/matrix.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace testutil {

inline bfly::ComplexMatrix random_complex(int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist;
    bfly::ComplexMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            m(r, c) = std::complex<double>(dist(gen), dist(gen));
        }
    }
    return m;
}

inline double rel_err(const bfly::ComplexMatrix& got, const bfly::ComplexMatrix& want) {
    return (got - want).norm() / want.norm();
}

/// All partitions of {0..n-1} into unordered pairs (n even).
inline std::vector<std::vector<std::vector<int>>> all_pair_partitions(int n) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> current;
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self) -> void {
        int first = -1;
        for (int i = 0; i < n; ++i) {
            if (!used[i]) {
                first = i;
                break;
            }
        }
        if (first < 0) {
            out.push_back(current);
            return;
        }
        used[first] = true;
        for (int j = first + 1; j < n; ++j) {
            if (used[j]) continue;
            used[j] = true;
            current.push_back({first, j});
            self(self);
            current.pop_back();
            used[j] = false;
        }
        used[first] = false;
    };
    rec(rec);
    return out;
}

/// All ways to split {0..n-1} into two unordered halves of size n/2,
/// canonicalized so the half containing 0 comes first.
inline std::vector<std::vector<std::vector<int>>> all_half_splits(int n) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<int> half(n / 2);
    // choose n/2 - 1 companions for element 0
    std::vector<int> pick(n / 2 - 1);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == n / 2 - 1) {
            std::vector<int> a = {0};
            std::vector<bool> in(n, false);
            in[0] = true;
            for (int v : pick) {
                a.push_back(v);
                in[v] = true;
            }
            std::vector<int> b;
            for (int v = 1; v < n; ++v) {
                if (!in[v]) b.push_back(v);
            }
            out.push_back({a, b});
            return;
        }
        for (int v = start; v < n; ++v) {
            pick[depth] = v;
            self(self, v + 1, depth + 1);
        }
    };
    rec(rec, 1, 0);
    return out;
}

}  // namespace testutil
