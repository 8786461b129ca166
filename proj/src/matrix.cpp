#include "bfly/matrix.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <numeric>
#include <random>

namespace bfly {

int log2_exact(int n) {
    if (!is_power_of_two(n)) {
        throw std::invalid_argument("size must be a power of two, got " + std::to_string(n));
    }
    int l = 0;
    while ((1 << l) < n) ++l;
    return l;
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
    // multiply-then-absorb keeps the state's role distinct from the
    // component's, so no commutative rearrangement of inputs collides
    std::uint64_t s = mix64(base);
    for (std::uint64_t part : path) s = mix64(s * 0x9e3779b97f4a7c15ULL ^ part);
    return s;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int n = static_cast<int>(images_.size());
    std::vector<char> seen(n, 0);
    for (int v : images_) {
        if (v < 0 || v >= n || seen[v]) {
            throw std::invalid_argument("permutation images are not a bijection");
        }
        seen[v] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img));
}

Permutation Permutation::random(int n, std::uint64_t seed) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation(std::move(img));
}

Permutation Permutation::bit_reversal(int n) {
    const int bits = log2_exact(n);
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) {
        int r = 0;
        for (int b = 0; b < bits; ++b) {
            r = (r << 1) | ((i >> b) & 1);
        }
        img[i] = r;
    }
    return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
    std::vector<int> img(images_.size());
    for (int i = 0; i < size(); ++i) img[images_[i]] = i;
    return Permutation(std::move(img));
}

Permutation Permutation::compose(const Permutation& other) const {
    if (size() != other.size()) {
        throw std::invalid_argument("permutation size mismatch in compose");
    }
    std::vector<int> img(images_.size());
    for (int i = 0; i < size(); ++i) img[i] = images_[other.images_[i]];
    return Permutation(std::move(img));
}

ComplexMatrix Permutation::apply_rows(const ComplexMatrix& a) const {
    if (a.rows() != size()) throw std::invalid_argument("row count does not match permutation");
    ComplexMatrix out(a.rows(), a.cols());
    for (int i = 0; i < size(); ++i) out.row(i) = a.row(images_[i]);
    return out;
}

ComplexMatrix Permutation::apply_cols(const ComplexMatrix& a) const {
    if (a.cols() != size()) throw std::invalid_argument("column count does not match permutation");
    ComplexMatrix out(a.rows(), a.cols());
    for (int j = 0; j < size(); ++j) out.col(j) = a.col(images_[j]);
    return out;
}

ComplexMatrix Permutation::matrix() const {
    ComplexMatrix p = ComplexMatrix::Zero(size(), size());
    for (int i = 0; i < size(); ++i) p(i, images_[i]) = 1.0;
    return p;
}

bool SupportMask::contains(const ComplexMatrix& m) const {
    for (int c = 0; c < m.cols(); ++c) {
        for (int r = 0; r < m.rows(); ++r) {
            if (m(r, c) != Complex(0.0, 0.0) && !allowed(r, c)) return false;
        }
    }
    return true;
}

ComplexMatrix SupportMask::project(const ComplexMatrix& m) const {
    ComplexMatrix out = m;
    for (int c = 0; c < m.cols(); ++c) {
        for (int r = 0; r < m.rows(); ++r) {
            if (!allowed(r, c)) out(r, c) = Complex(0.0, 0.0);
        }
    }
    return out;
}

SupportMask butterfly_support(int n, int level) {
    const int l = log2_exact(n);
    if (level < 1 || level > l) {
        throw std::invalid_argument("butterfly level out of range");
    }
    return SupportMask{n, l - level, l - level};
}

SupportMask product_support(int n, int p, int q) {
    const int l = log2_exact(n);
    if (p < 1 || q < p || q > l) {
        throw std::invalid_argument("invalid butterfly level range");
    }
    return SupportMask{n, l - q, l - p};
}

RankOneResult best_rank_one(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        throw std::invalid_argument("best_rank_one: empty matrix");
    }
    RankOneResult res;
    if (m.isZero(0.0)) {
        res.u = ComplexVector::Unit(m.rows(), 0);
        res.v = ComplexVector::Unit(m.cols(), 0);
        return res;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    res.s = sv(0);
    res.u = svd.matrixU().col(0);
    res.v = svd.matrixV().col(0);
    res.err2 = 0.0;
    for (int k = 1; k < sv.size(); ++k) res.err2 += sv(k) * sv(k);

    for (int i = 0; i < res.u.size(); ++i) {
        const double mag = std::abs(res.u(i));
        if (mag > 1e-12) {
            const Complex phase = res.u(i) / mag;
            res.u *= std::conj(phase);
            res.v *= std::conj(phase);
            break;
        }
    }
    return res;
}

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

}  // namespace bfly
