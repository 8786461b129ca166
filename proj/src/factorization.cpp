#include "bfly/factorization.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace bfly {

namespace {

// Squared residual of the best rank-one approximation, as the sum of the
// trailing squared singular values.  Summing small singular values keeps the
// result accurate near zero, where the norm-minus-leading form would cancel.
double rank_one_residual2(const ComplexMatrix& block) {
    if (block.isZero(0.0)) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(block);
    const auto& sv = svd.singularValues();
    double err2 = 0.0;
    for (int k = 1; k < sv.size(); ++k) err2 += sv(k) * sv(k);
    return err2;
}

void check_partition(const std::vector<std::vector<int>>& sets, int n, int count,
                     std::size_t size) {
    if (static_cast<int>(sets.size()) != count) {
        throw std::invalid_argument("partition has wrong number of sets");
    }
    std::vector<char> seen(n, 0);
    for (const auto& s : sets) {
        if (s.size() != size) throw std::invalid_argument("partition set has wrong cardinality");
        for (int v : s) {
            if (v < 0 || v >= n || seen[v]) {
                throw std::invalid_argument("partition sets do not partition the index range");
            }
            seen[v] = 1;
        }
    }
}

ComplexMatrix submatrix(const ComplexMatrix& a, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
    ComplexMatrix out(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out(i, j) = a(rows[i], cols[j]);
        }
    }
    return out;
}

// Peels factors off the diagonal block of size `size` at `offset`, writing
// factor l of the block into the same diagonal position of factors[depth+l-1].
void peel(const ComplexMatrix& block, int offset, int depth,
          std::vector<ComplexMatrix>& factors) {
    const int size = static_cast<int>(block.rows());
    if (size == 2) {
        factors[depth].block(offset, offset, 2, 2) = block;
        return;
    }
    const MonarchSplit split = monarch_two_factor(block, 1);
    factors[depth].block(offset, offset, size, size) = split.x;
    const int half = size / 2;
    peel(split.y.topLeftCorner(half, half), offset, depth + 1, factors);
    peel(split.y.bottomRightCorner(half, half), offset + half, depth + 1, factors);
}

}  // namespace

ComplexMatrix ButterflyFactors::product() const {
    if (factors.empty()) return ComplexMatrix();
    ComplexMatrix out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out *= factors[i];
    return out;
}

LevelPartition canonical_level_partition(int n, int level) {
    const int l = log2_exact(n);
    if (level < 1 || level > l - 1) {
        throw std::invalid_argument("partition level out of range");
    }
    const int stride = n >> level;   // size of a column set, number of row sets
    const int groups = 1 << level;   // size of a row set, number of column sets

    LevelPartition out;
    out.level = level;
    out.row_sets.resize(stride);
    for (int i = 0; i < stride; ++i) {
        out.row_sets[i].resize(groups);
        for (int k = 0; k < groups; ++k) out.row_sets[i][k] = i + k * stride;
    }
    out.col_sets.resize(groups);
    for (int j = 0; j < groups; ++j) {
        out.col_sets[j].resize(stride);
        for (int k = 0; k < stride; ++k) out.col_sets[j][k] = j * stride + k;
    }
    return out;
}

double partition_objective(const ComplexMatrix& a, const LevelPartition& p) {
    const int n = static_cast<int>(a.rows());
    const int stride = n >> p.level;
    const int groups = 1 << p.level;
    check_partition(p.row_sets, n, stride, static_cast<std::size_t>(groups));
    check_partition(p.col_sets, n, groups, static_cast<std::size_t>(stride));

    double total = 0.0;
    for (const auto& rows : p.row_sets) {
        for (const auto& cols : p.col_sets) {
            total += rank_one_residual2(submatrix(a, rows, cols));
        }
    }
    return total;
}

MonarchSplit monarch_two_factor(const ComplexMatrix& m, int level) {
    const int n = static_cast<int>(m.rows());
    if (m.cols() != n) throw std::invalid_argument("monarch_two_factor: matrix must be square");
    const LevelPartition part = canonical_level_partition(n, level);
    const int stride = n >> level;

    MonarchSplit out;
    out.x = ComplexMatrix::Zero(n, n);
    out.y = ComplexMatrix::Zero(n, n);
    for (std::size_t j = 0; j < part.col_sets.size(); ++j) {
        for (std::size_t i = 0; i < part.row_sets.size(); ++i) {
            const auto& rows = part.row_sets[i];
            const auto& cols = part.col_sets[j];
            const RankOneResult r1 = best_rank_one(submatrix(m, rows, cols));
            out.err2 += r1.err2;
            const int c = static_cast<int>(j) * stride + static_cast<int>(i);
            const double scale = std::sqrt(r1.s);
            for (std::size_t k = 0; k < rows.size(); ++k) {
                out.x(rows[k], c) = scale * r1.u(k);
            }
            for (std::size_t k = 0; k < cols.size(); ++k) {
                out.y(c, cols[k]) = scale * std::conj(r1.v(k));
            }
        }
    }
    return out;
}

FactorizationResult hierarchical_factorize(const ComplexMatrix& a, const Permutation& p,
                                           const Permutation& q) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw std::invalid_argument("hierarchical_factorize: matrix must be square");
    const int levels = log2_exact(n);
    if (n != p.size() || n != q.size()) {
        throw std::invalid_argument("hierarchical_factorize: permutation size mismatch");
    }

    // B = Q A P^T
    const ComplexMatrix b = p.apply_cols(q.apply_rows(a));

    FactorizationResult res;
    res.factors.factors.assign(levels, ComplexMatrix::Zero(n, n));
    peel(b, 0, 0, res.factors.factors);
    res.error = (b - res.factors.product()).norm();
    return res;
}

}  // namespace bfly
