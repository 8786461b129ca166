#include "bfly/identify.hpp"

#include "json.hpp"

#include <chrono>
#include <limits>

namespace bfly {

namespace {

// Ties keep the earliest (alpha, seed) grid position via strict improvement.
LevelReport sweep_level(const ComplexMatrix& a, int level, const IdentifyOptions& opt) {
    LevelReport best;
    best.level = level;
    best.objective = std::numeric_limits<double>::infinity();
    for (double alpha : opt.alpha_grid) {
        for (std::uint64_t seed : opt.seeds) {
            AlternatingOptions run{alpha, opt.max_iterations, seed};
            auto res = alternating_partition(a, level, run);
            if (res.objective < best.objective) {
                best.objective = res.objective;
                best.alpha = alpha;
                best.seed = seed;
                best.iterations = res.iterations;
                best.converged = res.converged;
                best.partition = std::move(res.partition);
            }
        }
    }
    return best;
}

nlohmann::json sets_json(const std::vector<std::vector<int>>& sets) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& set : sets) {
        nlohmann::json one = nlohmann::json::array();
        for (int v : set) one.push_back(v + 1);
        out.push_back(std::move(one));
    }
    return out;
}

nlohmann::json tree_json(const ClusterTree& tree) {
    nlohmann::json levels = nlohmann::json::array();
    for (int m = 0; m <= tree.depth(); ++m) levels.push_back(sets_json(tree.level_sets(m)));
    return {{"n", tree.size()}, {"levels", levels}};
}

nlohmann::json permutation_json(const Permutation& perm) {
    nlohmann::json images = nlohmann::json::array();
    for (int i = 0; i < perm.size(); ++i) images.push_back(perm(i) + 1);
    return images;
}

}  // namespace

IdentifyResult identify(const ComplexMatrix& a, const IdentifyOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw std::invalid_argument("identify: matrix not square");
    const int levels = log2_exact(n);
    if (levels < 2) throw std::invalid_argument("identify: matrix must be at least 4 x 4");

    IdentifyResult out;
    for (int level = 1; level < levels; ++level) {
        out.levels.push_back(sweep_level(a, level, options));
    }

    std::vector<std::vector<std::vector<int>>> row_partitions(std::max(0, levels - 1));
    std::vector<std::vector<std::vector<int>>> col_partitions(std::max(0, levels - 1));
    for (const auto& report : out.levels) {
        row_partitions[levels - report.level - 1] = report.partition.row_sets;
        col_partitions[report.level - 1] = report.partition.col_sets;
    }

    auto rows = assemble_tree(n, row_partitions);
    if (!rows.valid()) {
        out.violated_level = rows.violated_level;
        out.failure = "row tree: " + rows.message;
    } else {
        auto cols = assemble_tree(n, col_partitions);
        if (!cols.valid()) {
            out.violated_level = cols.violated_level;
            out.failure = "column tree: " + cols.message;
        } else {
            out.row_tree = std::move(rows.tree);
            out.col_tree = std::move(cols.tree);
            auto [p, q] = representative_permutations(*out.row_tree, *out.col_tree);
            auto factorized = hierarchical_factorize(a, p, q);
            out.p = std::move(p);
            out.q = std::move(q);
            out.factors = std::move(factorized.factors);
            out.factorization_error = factorized.error;
            out.success = true;
        }
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

std::string identify_report_json(const IdentifyResult& result, int indent) {
    nlohmann::json report;
    report["success"] = result.success;
    if (!result.success) {
        report["failure"] = result.failure;
        report["violated_level"] = result.violated_level;
    }
    report["seconds"] = result.seconds;
    report["levels"] = nlohmann::json::array();
    for (const auto& level : result.levels) {
        report["levels"].push_back({{"level", level.level},
                                    {"objective", level.objective},
                                    {"alpha", level.alpha},
                                    {"seed", level.seed},
                                    {"iterations", level.iterations},
                                    {"converged", level.converged},
                                    {"row_sets", sets_json(level.partition.row_sets)},
                                    {"col_sets", sets_json(level.partition.col_sets)}});
    }
    if (result.success) {
        report["row_tree"] = tree_json(*result.row_tree);
        report["col_tree"] = tree_json(*result.col_tree);
        report["p"] = permutation_json(*result.p);
        report["q"] = permutation_json(*result.q);
        report["factorization_error"] = result.factorization_error;
        report["factor_levels"] = result.factors.levels();
    }
    return report.dump(indent) + "\n";
}

}  // namespace bfly
