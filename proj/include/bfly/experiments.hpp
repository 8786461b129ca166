#pragma once

#include "bfly/generators.hpp"
#include "bfly/identify.hpp"

#include <cstdint>
#include <string>
#include <vector>

// Seeded experiment drivers behind the CLI: planted-instance generation,
// the exhaustive tree-pair search, success-rate tables, the noise-scaling
// curve and per-level partition quality.  Every driver derives its noise and
// permutation seeds from a base seed through a fixed path scheme, so any
// single instance can be regenerated in isolation and all emitted CSV text is
// byte-stable for a given configuration.
namespace bfly {

enum class Family { RandomButterfly, Dft };

const char* family_name(Family family);

struct ExperimentConfig {
    Family family = Family::RandomButterfly;
    std::vector<int> sizes = {4, 8, 16, 32, 64};
    std::vector<double> eps = {0.0, 0.01, 0.03, 0.1};
    int instances = 20;
    std::vector<double> alpha_grid = {1e-2, 1e-1, 1.0, 1e1, 1e2};
    std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
    int iterations = 50;
    std::uint64_t base_seed = 0;
};

struct PlantedInstance {
    ComplexMatrix base;    // the butterfly matrix itself
    Permutation p;         // planted column permutation
    Permutation q;         // planted row permutation
    ComplexMatrix target;  // Q^T * base * P, plus scaled Gaussian noise
};

/// Instance `index` of the (family, n, eps) cell: the base matrix and both
/// permutations depend on (family, n, index) only, so one instance is reused
/// across noise levels with the same Gaussian direction scaled by eps.
PlantedInstance planted_instance(Family family, int n, double eps, std::uint64_t base_seed,
                                 int index);

struct ExhaustiveRow {
    int tree_x = 0;      // row-tree id, 1-based enumeration order
    int tree_omega = 0;  // column-tree id, 1-based enumeration order
    double relative_error = 0.0;
};

/// Factorizes one noiseless permuted random butterfly (n = 8 only) under a
/// representative (P, Q) of every enumerated tree pair; rows sorted by error.
std::vector<ExhaustiveRow> exhaustive_rows(int n, std::uint64_t seed);
std::string exhaustive_csv(const std::vector<ExhaustiveRow>& rows);

struct SuccessRow {
    Family family = Family::RandomButterfly;
    int n = 0;
    double eps = 0.0;
    double success_rate = 0.0;           // successes / instances, exactly
    double mean_relative_error = 0.0;    // over successes; NaN when none
};

std::vector<SuccessRow> success_table_rows(const ExperimentConfig& config);
std::string success_table_csv(const std::vector<SuccessRow>& rows);

struct NoiseRow {
    int n = 0;
    double eps = 0.0;
    double mean_ratio = 0.0;  // mean over successes of (E_bf / ||A||_F) / eps
    double std_ratio = 0.0;   // population standard deviation of the same
};

/// Skips non-positive eps entries; callers warn about them.
std::vector<NoiseRow> noise_curve_rows(const ExperimentConfig& config);
std::string noise_curve_csv(const std::vector<NoiseRow>& rows);

struct PartitionQualityRow {
    int level = 0;
    double alg_min = 0.0;     // over the (alpha, seed) grid
    double alg_median = 0.0;
    double alg_max = 0.0;
    double oracle = 0.0;          // objective with the planted partitions
    double random_baseline = 0.0; // min objective over 1000 random pairs
};

/// Per-level objective quality on instance 0 of the (family, n, eps) cell.
std::vector<PartitionQualityRow> partition_quality_rows(int n, double eps,
                                                        const ExperimentConfig& config);
std::string partition_quality_csv(const std::vector<PartitionQualityRow>& rows);

}  // namespace bfly
