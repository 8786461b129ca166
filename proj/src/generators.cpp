#include "bfly/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace bfly {

ButterflyFactors random_orthogonal_butterfly(int levels, std::uint64_t seed) {
    if (levels < 2) throw std::invalid_argument("random_orthogonal_butterfly: levels must be >= 2");
    const int n = 1 << levels;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    ButterflyFactors out;
    out.factors.reserve(levels);
    for (int level = 1; level <= levels; ++level) {
        ComplexMatrix f = ComplexMatrix::Zero(n, n);
        const int bit = 1 << (levels - level);
        // one rotation per index pair {x, x | bit}
        for (int x = 0; x < n; ++x) {
            if (x & bit) continue;
            const int y = x | bit;
            const double t = angle(rng);
            const double c = std::cos(t), s = std::sin(t);
            f(x, x) = c;
            f(x, y) = -s;
            f(y, x) = s;
            f(y, y) = c;
        }
        out.factors.push_back(std::move(f));
    }
    return out;
}

ComplexMatrix dft_matrix(int n) {
    log2_exact(n);
    ComplexMatrix out(n, n);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            const int phase = static_cast<int>((static_cast<std::int64_t>(k) * l) % n);
            out(k, l) = std::polar(1.0, -2.0 * std::numbers::pi * phase / n);
        }
    }
    return out;
}

ComplexMatrix make_target(const ComplexMatrix& a, const Permutation& p, const Permutation& q,
                          double eps, std::uint64_t seed) {
    if (a.rows() != a.cols() || a.rows() != p.size() || a.rows() != q.size()) {
        throw std::invalid_argument("make_target: inconsistent shapes");
    }
    // Q^T A = rows moved through sigma_Q^{-1}; A P = columns through sigma_P^{-1}.
    ComplexMatrix out = p.inverse().apply_cols(q.inverse().apply_rows(a));
    if (eps == 0.0) return out;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    RealMatrix noise(a.rows(), a.cols());
    for (int r = 0; r < noise.rows(); ++r) {
        for (int c = 0; c < noise.cols(); ++c) noise(r, c) = gauss(rng);
    }
    out += (eps * a.norm() / noise.norm()) * noise.cast<Complex>();
    return out;
}

}  // namespace bfly
