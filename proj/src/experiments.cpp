#include "bfly/experiments.hpp"

#include "bfly/cluster_tree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iostream>
#include <limits>
#include <random>

namespace bfly {

namespace {

// Shortest round-trip decimal, so CSV cells are byte-stable and readable.
std::string fmt(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

// Seed paths: instance streams hang off (family, n, index), with role tags
// 0..3 for base matrix, P, Q and noise; experiment-local streams use role
// tags >= 16 so they can never collide with instance streams.
std::uint64_t instance_seed(Family family, int n, int index, std::uint64_t base_seed) {
    return derive_seed(base_seed, {static_cast<std::uint64_t>(family), static_cast<std::uint64_t>(n),
                                   static_cast<std::uint64_t>(index)});
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size() / 2;
    return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

std::vector<std::vector<int>> random_balanced_sets(int n, int sets, std::mt19937_64& rng) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<int>> out(sets);
    const int size = n / sets;
    for (int s = 0; s < sets; ++s) {
        out[s].assign(perm.begin() + s * size, perm.begin() + (s + 1) * size);
        std::sort(out[s].begin(), out[s].end());
    }
    return out;
}

std::vector<std::vector<int>> mapped_sets(const std::vector<std::vector<int>>& sets,
                                          const Permutation& sigma) {
    std::vector<std::vector<int>> out = sets;
    for (auto& set : out) {
        for (int& v : set) v = sigma(v);
        std::sort(set.begin(), set.end());
    }
    return out;
}

}  // namespace

const char* family_name(Family family) {
    return family == Family::RandomButterfly ? "random-butterfly" : "dft";
}

PlantedInstance planted_instance(Family family, int n, double eps, std::uint64_t base_seed,
                                 int index) {
    const int levels = log2_exact(n);
    const std::uint64_t seed = instance_seed(family, n, index, base_seed);
    PlantedInstance out;
    if (family == Family::RandomButterfly) {
        out.base = random_orthogonal_butterfly(levels, derive_seed(seed, {0})).product();
    } else {
        out.base = Permutation::bit_reversal(n).apply_cols(dft_matrix(n));
    }
    out.p = Permutation::random(n, derive_seed(seed, {1}));
    out.q = Permutation::random(n, derive_seed(seed, {2}));
    out.target = make_target(out.base, out.p, out.q, eps, derive_seed(seed, {3}));
    return out;
}

std::vector<ExhaustiveRow> exhaustive_rows(int n, std::uint64_t seed) {
    if (n != 8) throw std::invalid_argument("exhaustive search is guarded to n = 8");
    const auto instance = planted_instance(Family::RandomButterfly, n, 0.0, seed, 0);
    const double norm = frobenius_norm(instance.target);

    std::vector<ClusterTree> trees;
    enumerate_trees(n, [&](const ClusterTree& t) { trees.push_back(t); });

    std::vector<ExhaustiveRow> rows;
    rows.reserve(trees.size() * trees.size());
    for (std::size_t xi = 0; xi < trees.size(); ++xi) {
        for (std::size_t oi = 0; oi < trees.size(); ++oi) {
            const auto [p, q] = representative_permutations(trees[xi], trees[oi]);
            const double err = hierarchical_factorize(instance.target, p, q).error;
            rows.push_back({static_cast<int>(xi) + 1, static_cast<int>(oi) + 1, err / norm});
        }
    }
    std::sort(rows.begin(), rows.end(), [](const ExhaustiveRow& a, const ExhaustiveRow& b) {
        return std::tie(a.relative_error, a.tree_x, a.tree_omega) <
               std::tie(b.relative_error, b.tree_x, b.tree_omega);
    });
    return rows;
}

std::string exhaustive_csv(const std::vector<ExhaustiveRow>& rows) {
    std::string out = "tree_x,tree_omega,relative_error\n";
    for (const auto& row : rows) {
        out += std::to_string(row.tree_x) + ',' + std::to_string(row.tree_omega) + ',' +
               fmt(row.relative_error) + '\n';
    }
    return out;
}

std::vector<SuccessRow> success_table_rows(const ExperimentConfig& config) {
    std::vector<SuccessRow> rows;
    IdentifyOptions options{config.alpha_grid, config.seeds, config.iterations};
    for (int n : config.sizes) {
        for (double eps : config.eps) {
            int successes = 0;
            double sum = 0.0;
            for (int index = 0; index < config.instances; ++index) {
                const auto instance =
                    planted_instance(config.family, n, eps, config.base_seed, index);
                const auto result = identify(instance.target, options);
                if (result.success) {
                    ++successes;
                    sum += result.factorization_error / frobenius_norm(instance.target);
                }
            }
            const double rate = static_cast<double>(successes) / config.instances;
            const double mean =
                successes > 0 ? sum / successes : std::numeric_limits<double>::quiet_NaN();
            rows.push_back({config.family, n, eps, rate, mean});
            std::cerr << family_name(config.family) << " n=" << n << " eps=" << fmt(eps) << ": "
                      << successes << "/" << config.instances << " identified\n";
        }
    }
    return rows;
}

std::string success_table_csv(const std::vector<SuccessRow>& rows) {
    std::string out = "family,n,eps,success_rate,mean_relative_error\n";
    for (const auto& row : rows) {
        out += std::string(family_name(row.family)) + ',' + std::to_string(row.n) + ',' +
               fmt(row.eps) + ',' + fmt(row.success_rate) + ',' + fmt(row.mean_relative_error) +
               '\n';
    }
    return out;
}

std::vector<NoiseRow> noise_curve_rows(const ExperimentConfig& config) {
    std::vector<NoiseRow> rows;
    IdentifyOptions options{config.alpha_grid, config.seeds, config.iterations};
    for (int n : config.sizes) {
        for (double eps : config.eps) {
            if (eps <= 0.0) continue;
            std::vector<double> ratios;
            for (int index = 0; index < config.instances; ++index) {
                const auto instance =
                    planted_instance(config.family, n, eps, config.base_seed, index);
                const auto result = identify(instance.target, options);
                if (result.success) {
                    ratios.push_back(result.factorization_error /
                                     frobenius_norm(instance.target) / eps);
                }
            }
            NoiseRow row{n, eps, std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN()};
            if (!ratios.empty()) {
                double mean = 0.0;
                for (double r : ratios) mean += r;
                mean /= static_cast<double>(ratios.size());
                double var = 0.0;
                for (double r : ratios) var += (r - mean) * (r - mean);
                var /= static_cast<double>(ratios.size());
                row.mean_ratio = mean;
                row.std_ratio = std::sqrt(var);
            }
            rows.push_back(row);
            std::cerr << family_name(config.family) << " n=" << n << " eps=" << fmt(eps) << ": "
                      << ratios.size() << "/" << config.instances << " identified\n";
        }
    }
    return rows;
}

std::string noise_curve_csv(const std::vector<NoiseRow>& rows) {
    std::string out = "n,eps,mean_relative_error_over_eps,std\n";
    for (const auto& row : rows) {
        out += std::to_string(row.n) + ',' + fmt(row.eps) + ',' + fmt(row.mean_ratio) + ',' +
               fmt(row.std_ratio) + '\n';
    }
    return out;
}

std::vector<PartitionQualityRow> partition_quality_rows(int n, double eps,
                                                        const ExperimentConfig& config) {
    const int levels = log2_exact(n);
    const auto instance = planted_instance(config.family, n, eps, config.base_seed, 0);

    std::vector<PartitionQualityRow> rows;
    for (int level = 1; level < levels; ++level) {
        PartitionQualityRow row;
        row.level = level;

        std::vector<double> objectives;
        for (double alpha : config.alpha_grid) {
            for (std::uint64_t seed : config.seeds) {
                AlternatingOptions run{alpha, config.iterations, seed};
                objectives.push_back(alternating_partition(instance.target, level, run).objective);
            }
        }
        row.alg_min = *std::min_element(objectives.begin(), objectives.end());
        row.alg_median = median_of(objectives);
        row.alg_max = *std::max_element(objectives.begin(), objectives.end());

        const auto canonical = canonical_level_partition(n, level);
        LevelPartition planted{level, mapped_sets(canonical.row_sets, instance.q),
                               mapped_sets(canonical.col_sets, instance.p)};
        row.oracle = partition_objective(instance.target, planted);

        const std::uint64_t baseline_seed =
            derive_seed(instance_seed(config.family, n, 0, config.base_seed),
                        {16, static_cast<std::uint64_t>(level)});
        std::mt19937_64 rng(baseline_seed);
        double best = std::numeric_limits<double>::infinity();
        for (int draw = 0; draw < 1000; ++draw) {
            LevelPartition random_pair{level, random_balanced_sets(n, n >> level, rng),
                                       random_balanced_sets(n, 1 << level, rng)};
            best = std::min(best, partition_objective(instance.target, random_pair));
        }
        row.random_baseline = best;
        rows.push_back(row);
    }
    return rows;
}

std::string partition_quality_csv(const std::vector<PartitionQualityRow>& rows) {
    std::string out = "level,algorithm_min,algorithm_median,algorithm_max,oracle,random_baseline\n";
    for (const auto& row : rows) {
        out += std::to_string(row.level) + ',' + fmt(row.alg_min) + ',' + fmt(row.alg_median) +
               ',' + fmt(row.alg_max) + ',' + fmt(row.oracle) + ',' + fmt(row.random_baseline) +
               '\n';
    }
    return out;
}

}  // namespace bfly
