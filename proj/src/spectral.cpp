#include "bfly/spectral.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <random>

namespace bfly {

namespace {

// Rows restricted to each column set are normalized, so the Gram modulus is
// the cosine; zero rows stay zero and thus contribute no edge weight.
RealMatrix similarity(const ComplexMatrix& a, const std::vector<std::vector<int>>& sets,
                      double alpha) {
    const int n = static_cast<int>(a.rows());
    RealMatrix w = RealMatrix::Zero(n, n);
    for (const auto& set : sets) {
        ComplexMatrix g(n, set.size());
        for (std::size_t c = 0; c < set.size(); ++c) g.col(c) = a.col(set[c]);
        for (int r = 0; r < n; ++r) {
            const double norm = g.row(r).norm();
            if (norm > 0.0) g.row(r) /= norm;
        }
        w += ((g * g.adjoint()).cwiseAbs().array().pow(alpha)).matrix();
    }
    return w;
}

struct MinCostFlow {
    struct Edge {
        int to;
        int cap;
        double cost;
        int rev;
    };

    std::vector<std::vector<Edge>> adj;

    explicit MinCostFlow(int nodes) : adj(nodes) {}

    void add(int u, int v, int cap, double cost) {
        adj[u].push_back({v, cap, cost, static_cast<int>(adj[v].size())});
        adj[v].push_back({u, 0, -cost, static_cast<int>(adj[u].size()) - 1});
    }

    // Successive shortest augmenting paths: Dijkstra on reduced costs with
    // node potentials.  Reduced costs are clamped at zero so rounding noise
    // from the potential updates can never stall the search or loop it.
    void run(int s, int t) {
        const int n = static_cast<int>(adj.size());
        std::vector<double> potential(n, 0.0);
        for (;;) {
            std::vector<double> dist(n, std::numeric_limits<double>::infinity());
            std::vector<int> prev_node(n, -1), prev_edge(n, -1);
            using Entry = std::pair<double, int>;
            std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
            dist[s] = 0.0;
            heap.push({0.0, s});
            while (!heap.empty()) {
                const auto [d, u] = heap.top();
                heap.pop();
                if (d != dist[u]) continue;
                for (std::size_t i = 0; i < adj[u].size(); ++i) {
                    const Edge& e = adj[u][i];
                    if (e.cap <= 0) continue;
                    const double reduced =
                        std::max(0.0, e.cost + potential[u] - potential[e.to]);
                    if (dist[u] + reduced < dist[e.to]) {
                        dist[e.to] = dist[u] + reduced;
                        prev_node[e.to] = u;
                        prev_edge[e.to] = static_cast<int>(i);
                        heap.push({dist[e.to], e.to});
                    }
                }
            }
            if (prev_edge[t] == -1) break;
            for (int v = 0; v < n; ++v) {
                if (dist[v] < std::numeric_limits<double>::infinity()) potential[v] += dist[v];
            }
            int bottleneck = std::numeric_limits<int>::max();
            for (int v = t; v != s; v = prev_node[v]) {
                bottleneck = std::min(bottleneck, adj[prev_node[v]][prev_edge[v]].cap);
            }
            for (int v = t; v != s; v = prev_node[v]) {
                Edge& e = adj[prev_node[v]][prev_edge[v]];
                e.cap -= bottleneck;
                adj[v][e.rev].cap += bottleneck;
            }
        }
    }
};

}  // namespace

RealMatrix row_similarity(const ComplexMatrix& a, const std::vector<std::vector<int>>& col_sets,
                          double alpha) {
    return similarity(a, col_sets, alpha);
}

RealMatrix col_similarity(const ComplexMatrix& a, const std::vector<std::vector<int>>& row_sets,
                          double alpha) {
    return similarity(a.transpose(), row_sets, alpha);
}

RealMatrix graph_laplacian(const RealMatrix& w) {
    RealMatrix l = -w;
    l.diagonal() += w.rowwise().sum();
    return l;
}

SpectralEmbedding spectral_embedding(const RealMatrix& w, int k) {
    if (k < 1 || k > w.rows()) throw std::invalid_argument("spectral_embedding: bad k");
    const Eigen::SelfAdjointEigenSolver<RealMatrix> solver(graph_laplacian(w));
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("spectral_embedding: eigensolver failed");
    }
    SpectralEmbedding out;
    out.vectors = solver.eigenvectors().leftCols(k);
    out.values = solver.eigenvalues().head(k);
    for (int c = 0; c < k; ++c) {
        int arg = 0;
        out.vectors.col(c).cwiseAbs().maxCoeff(&arg);
        if (out.vectors(arg, c) < 0.0) out.vectors.col(c) = -out.vectors.col(c);
    }
    return out;
}

std::vector<int> balanced_assign(const RealMatrix& points, const RealMatrix& centers) {
    const int n = static_cast<int>(points.rows());
    const int c = static_cast<int>(centers.rows());
    if (c < 1 || n % c != 0) {
        throw std::invalid_argument("balanced_assign: points not divisible among centers");
    }
    const int capacity = n / c;
    const int source = 0, sink = n + c + 1;
    MinCostFlow flow(n + c + 2);
    for (int i = 0; i < n; ++i) {
        flow.add(source, 1 + i, 1, 0.0);
        for (int j = 0; j < c; ++j) {
            flow.add(1 + i, 1 + n + j, 1, (points.row(i) - centers.row(j)).squaredNorm());
        }
    }
    for (int j = 0; j < c; ++j) flow.add(1 + n + j, sink, capacity, 0.0);
    flow.run(source, sink);

    std::vector<int> labels(n, -1);
    for (int i = 0; i < n; ++i) {
        for (const auto& e : flow.adj[1 + i]) {
            if (e.to >= 1 + n && e.to < 1 + n + c && e.cap == 0) {
                labels[i] = e.to - 1 - n;
                break;
            }
        }
        if (labels[i] < 0) throw std::logic_error("balanced_assign: point left unassigned");
    }
    return labels;
}

std::vector<int> balanced_kmeans(const RealMatrix& points, int clusters, std::uint64_t seed) {
    const int n = static_cast<int>(points.rows());
    if (clusters < 1 || n % clusters != 0) {
        throw std::invalid_argument("balanced_kmeans: cluster count must divide point count");
    }
    if (clusters == 1) return std::vector<int>(n, 0);

    std::mt19937_64 rng(seed);
    RealMatrix centers(clusters, points.cols());
    centers.row(0) = points.row(std::uniform_int_distribution<int>(0, n - 1)(rng));
    // k-means++: each later center drawn D^2-weighted from the points
    std::vector<double> d2(n);
    for (int i = 0; i < n; ++i) d2[i] = (points.row(i) - centers.row(0)).squaredNorm();
    for (int j = 1; j < clusters; ++j) {
        const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
        int chosen = 0;
        if (total > 0.0) {
            double r = std::uniform_real_distribution<double>(0.0, total)(rng);
            while (chosen < n - 1 && (r -= d2[chosen]) > 0.0) ++chosen;
        } else {
            chosen = std::uniform_int_distribution<int>(0, n - 1)(rng);
        }
        centers.row(j) = points.row(chosen);
        for (int i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], (points.row(i) - centers.row(j)).squaredNorm());
        }
    }

    const int capacity = n / clusters;
    std::vector<int> labels;
    for (int it = 0; it < 100; ++it) {
        auto next = balanced_assign(points, centers);
        if (next == labels) break;
        labels = std::move(next);
        centers.setZero();
        for (int i = 0; i < n; ++i) centers.row(labels[i]) += points.row(i);
        centers /= static_cast<double>(capacity);
    }
    return labels;
}

std::vector<std::vector<int>> labels_to_sets(const std::vector<int>& labels, int clusters) {
    std::vector<std::vector<int>> sets(clusters);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        sets[labels[i]].push_back(static_cast<int>(i));
    }
    std::sort(sets.begin(), sets.end());
    return sets;
}

AlternatingResult alternating_partition(const ComplexMatrix& a, int level,
                                        const AlternatingOptions& options) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw std::invalid_argument("alternating_partition: matrix not square");
    const int levels = log2_exact(n);
    if (level < 1 || level >= levels) {
        throw std::invalid_argument("alternating_partition: level out of range");
    }
    const int row_clusters = n >> level;
    const int col_clusters = 1 << level;

    std::mt19937_64 rng(options.seed);
    const auto random_cols = [&rng, n, col_clusters]() {
        std::vector<int> shuffled(n);
        std::iota(shuffled.begin(), shuffled.end(), 0);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i) labels[shuffled[i]] = i / (n / col_clusters);
        return labels_to_sets(labels, col_clusters);
    };

    AlternatingResult res;
    res.partition.level = level;
    std::vector<std::vector<int>> rows;
    std::vector<std::vector<int>> cols = random_cols();
    double best = std::numeric_limits<double>::infinity();
    int frozen = 0;
    // Consecutive iterations the pair must survive unchanged before a fresh
    // column draw replaces it.  One repeat is often just a stutter that the
    // advancing clustering seeds undo by themselves; only a pair that no
    // seed will move is worth abandoning.
    constexpr int kFrozenLimit = 3;
    for (int it = 1; it <= options.max_iterations; ++it) {
        const auto row_embed = spectral_embedding(row_similarity(a, cols, options.alpha),
                                                  row_clusters);
        auto new_rows = labels_to_sets(balanced_kmeans(row_embed.vectors, row_clusters, rng()),
                                       row_clusters);
        const auto col_embed = spectral_embedding(col_similarity(a, new_rows, options.alpha),
                                                  col_clusters);
        auto new_cols = labels_to_sets(balanced_kmeans(col_embed.vectors, col_clusters, rng()),
                                       col_clusters);

        LevelPartition candidate{level, new_rows, new_cols};
        const double objective = partition_objective(a, candidate);
        res.trace.push_back(objective);
        res.iterations = it;
        if (objective < best) {
            best = objective;
            res.partition = std::move(candidate);
            res.objective = objective;
        }
        const bool fixed_point = (new_rows == rows && new_cols == cols);
        if (fixed_point) {
            res.converged = true;
            ++frozen;
        } else {
            frozen = 0;
        }
        rows = std::move(new_rows);
        cols = std::move(new_cols);
        // An objective at the exact-recovery floor cannot be improved on, so
        // it is the only outcome that ends the run early.
        if (best <= 1e-30 * a.squaredNorm()) break;
        // A persistently frozen pair marks the basin as exhausted:
        // reinitialize the columns and keep iterating, returning the best
        // pair seen across all draws.  A run that keeps wandering is left
        // to wander — on noisy targets the objective keeps ratcheting down
        // for many iterations, and cutting that descent short loses the
        // deep minima.
        if (frozen >= kFrozenLimit) {
            cols = random_cols();
            rows.clear();
            frozen = 0;
        }
    }
    return res;
}

}  // namespace bfly
